#include <doctest.h>

#include "dpchan/dp.hpp"
#include "dpchan/mechanisms.hpp"
#include "dpchan/oracle.hpp"
#include "dpchan/transforms.hpp"

#include <cmath>

using namespace dpchan;

namespace {

const double kLn2 = std::log(2.0);

ChannelMatrix mk(std::initializer_list<std::initializer_list<double>> rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index m = static_cast<Eigen::Index>(rows.begin()->size());
  Eigen::MatrixXd p(n, m);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) p(i, j++) = v;
    ++i;
  }
  return ChannelMatrix(Alphabet::numbered(n, "x"), Alphabet::numbered(m, "z"), std::move(p));
}

double colmax_sum(const ChannelMatrix& m) { return m.p.colwise().maxCoeff().sum(); }

}  // namespace

TEST_CASE("collapse_column") {
  const auto m = mk({{0.5, 0.3, 0.2}, {0.2, 0.3, 0.5}});
  const auto c = collapse_column(m, 2, 0);
  CHECK(c.p(0, 0) == doctest::Approx(0.7));
  CHECK(c.p(1, 0) == doctest::Approx(0.7));
  CHECK(c.p(0, 1) == doctest::Approx(0.3));
  CHECK(c.p(0, 2) == doctest::Approx(0.0));
  CHECK(validate(c).ok);
  CHECK(colmax_sum(c) <= colmax_sum(m) + 1e-12);

  // collapsing an all-zero column changes nothing
  const auto z = mk({{0.5, 0.5, 0.0}, {0.2, 0.8, 0.0}});
  const auto cz = collapse_column(z, 2, 0);
  CHECK((cz.p - z.p).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  CHECK_THROWS_AS(collapse_column(m, 1, 1), Error);
  CHECK_THROWS_AS(collapse_column(m, 0, 5), Error);
}

TEST_CASE("to_square_diagonal_max worked example") {
  const auto m = mk({{0.6, 0.3, 0.1}, {0.1, 0.3, 0.6}});
  const auto [sq, trace] = to_square_diagonal_max(m);
  REQUIRE(sq.rows() == 2);
  REQUIRE(sq.cols() == 2);
  CHECK(sq.p(0, 0) == doctest::Approx(0.9));
  CHECK(sq.p(0, 1) == doctest::Approx(0.1));
  CHECK(sq.p(1, 0) == doctest::Approx(0.4));
  CHECK(sq.p(1, 1) == doctest::Approx(0.6));
  CHECK(colmax_sum(sq) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(trace.merges.size() == 1);
  CHECK(trace.merges[0].first == 1);
  CHECK(trace.merges[0].second == 0);
  const std::string text = trace.to_text();
  CHECK(text.find("merge 1 -> 0") != std::string::npos);
  CHECK(text.find("assign 0 -> 0") != std::string::npos);
}

TEST_CASE("to_square_diagonal_max trivial cases") {
  const auto ident = mk({{1, 0}, {0, 1}});
  CHECK((to_square_diagonal_max(ident).first.p - ident.p).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));

  // distinct argmax rows: a pure column permutation
  const auto perm = mk({{0.2, 0.8}, {0.7, 0.3}});
  const auto sq = to_square_diagonal_max(perm).first;
  CHECK(sq.p(0, 0) == doctest::Approx(0.8));
  CHECK(sq.p(1, 1) == doctest::Approx(0.7));

  CHECK_THROWS_AS(to_square_diagonal_max(mk({{1, 0}, {0, 1}, {0.5, 0.5}})), Error);
}

TEST_CASE("to_square_diagonal_max puts column maxima on the diagonal") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = make_ring(4);
    oracle::SamplerConfig cfg;
    cfg.seed = seed;
    cfg.target_eps = 1.0;
    cfg.cols = 4 + static_cast<Eigen::Index>(seed % 4);
    const auto m = oracle::sample_dp_channel(cfg, g);
    const auto sq = to_square_diagonal_max(m).first;
    for (Eigen::Index j = 0; j < sq.cols(); ++j)
      CHECK(sq.p(j, j) == doctest::Approx(sq.p.col(j).maxCoeff()));
    CHECK(colmax_sum(sq) == doctest::Approx(colmax_sum(m)).epsilon(1e-9));
    CHECK(validate(sq).ok);
  }
}

TEST_CASE("hamming_symmetrize worked example") {
  const DatabaseUniverse uni = DatabaseUniverse::digits(1, 2);
  const ChannelMatrix m(uni.alphabet(), uni.alphabet(),
                        (Eigen::MatrixXd(2, 2) << 0.8, 0.2, 0.4, 0.6).finished());
  const auto s = hamming_symmetrize(m, uni);
  CHECK(s.p(0, 0) == doctest::Approx(0.7));
  CHECK(s.p(0, 1) == doctest::Approx(0.3));
  CHECK(s.p(1, 0) == doctest::Approx(0.3));
  CHECK(s.p(1, 1) == doctest::Approx(0.7));
  CHECK(colmax_sum(s) == doctest::Approx(1.4).epsilon(1e-12));
}

TEST_CASE("hamming_symmetrize fixpoint and hypothesis check") {
  const DatabaseUniverse uni = DatabaseUniverse::digits(2, 2);
  const auto dist_symmetric = build_tight_leakage(2, 2, kLn2);
  const auto s = hamming_symmetrize(dist_symmetric, uni);
  CHECK((s.p - dist_symmetric.p).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));

  // off-diagonal maximum violates the hypothesis
  const ChannelMatrix bad(uni.alphabet().labels().size() == 4 ? uni.alphabet() : uni.alphabet(),
                          uni.alphabet(),
                          (Eigen::MatrixXd(4, 4) << 0.1, 0.3, 0.3, 0.3, 0.25, 0.25, 0.25, 0.25,
                           0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25)
                              .finished());
  CHECK_THROWS_AS(hamming_symmetrize(bad, uni), HypothesisViolated);
}

TEST_CASE("hamming_symmetrize output depends only on distance") {
  const DatabaseUniverse uni = DatabaseUniverse::digits(2, 3);
  const auto g = uni.hamming_graph();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    oracle::SamplerConfig cfg;
    cfg.seed = seed;
    cfg.target_eps = 1.0;
    const auto m = oracle::sample_dp_channel(cfg, g);
    const auto sq = to_square_diagonal_max(m).first;
    const ChannelMatrix aligned(uni.alphabet(), uni.alphabet(), sq.p);
    const auto s = hamming_symmetrize(aligned, uni);
    for (Eigen::Index h = 0; h < s.rows(); ++h) {
      for (Eigen::Index k = 0; k < s.cols(); ++k) {
        for (Eigen::Index h2 = 0; h2 < s.rows(); ++h2) {
          for (Eigen::Index k2 = 0; k2 < s.cols(); ++k2) {
            if (uni.hamming_distance(h, k) == uni.hamming_distance(h2, k2))
              CHECK(s.p(h, k) == doctest::Approx(s.p(h2, k2)).epsilon(1e-12));
          }
        }
      }
    }
    CHECK(colmax_sum(s) == doctest::Approx(colmax_sum(aligned)).epsilon(1e-9));
    CHECK(validate(s).ok);
  }
}

TEST_CASE("automorphism_symmetrize worked example") {
  const auto clique = make_clique(3);
  const auto rot = canonical_single_orbit_automorphism(clique);
  REQUIRE(rot.has_value());
  const ChannelMatrix m(clique.nodes(), clique.nodes(),
                        (Eigen::MatrixXd(3, 3) << 0.6, 0.2, 0.2, 0.2, 0.5, 0.3, 0.25, 0.25, 0.5)
                            .finished());
  const auto s = automorphism_symmetrize(m, *rot);
  CHECK(s.p(0, 0) == doctest::Approx(1.6 / 3).epsilon(1e-12));
  CHECK(s.p(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(s.p(0, 2) == doctest::Approx(0.65 / 3).epsilon(1e-12));
  // constant diagonal equal to the mean of the original diagonal
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(s.p(i, i) == doctest::Approx(1.6 / 3).epsilon(1e-12));
  CHECK(validate(s).ok);
}

TEST_CASE("automorphism_symmetrize circulant fixpoint") {
  const auto ring = make_ring(5);
  const auto rot = canonical_single_orbit_automorphism(ring);
  const auto m = build_optimal_utility(ring, kLn2).matrix;
  const auto s = automorphism_symmetrize(m, *rot);
  CHECK((s.p - m.p).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("automorphism_symmetrize rejects bad hypotheses") {
  const auto ring = make_ring(6);
  const auto rot = canonical_single_orbit_automorphism(ring);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Constant(6, 6, 1.0 / 6);
  bad(0, 1) += 0.01;
  bad(0, 0) -= 0.01;
  const ChannelMatrix m(ring.nodes(), ring.nodes(), std::move(bad));
  CHECK_THROWS_AS(automorphism_symmetrize(m, *rot), HypothesisViolated);

  const Automorphism refl(ring, {0, 5, 4, 3, 2, 1});
  const auto good = build_optimal_utility(ring, kLn2).matrix;
  CHECK_THROWS_AS(automorphism_symmetrize(good, refl), HypothesisViolated);
}

TEST_CASE("reduce_range") {
  const auto m = mk({{0.6, 0.3, 0.1}, {0.1, 0.3, 0.6}});
  const auto full = reduce_range(m, 3);
  CHECK((full.p - m.p).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  const auto r2 = reduce_range(m, 2);
  Eigen::Index nonzero = 0;
  for (Eigen::Index j = 0; j < r2.cols(); ++j)
    if (r2.p.col(j).maxCoeff() > 0) ++nonzero;
  CHECK(nonzero == 2);
  CHECK(validate(r2).ok);
  CHECK(r2.cols() == 3);  // zero column physically retained

  const auto dropped = reduce_range(m, 2, true);
  CHECK(dropped.cols() == 2);

  CHECK_THROWS_AS(reduce_range(m, 0), Error);
  CHECK_THROWS_AS(reduce_range(m, 4), Error);
}

TEST_CASE("transforms preserve capacity and DP on sampled inputs") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = make_clique(4);
    oracle::SamplerConfig cfg;
    cfg.seed = seed;
    cfg.target_eps = 0.8;
    cfg.cols = 6;
    const auto m = oracle::sample_dp_channel(cfg, g);
    const double eps0 = verify_dp(m, g, 10.0).min_epsilon;

    const auto sq = to_square_diagonal_max(m).first;
    CHECK(capacity(sq) == doctest::Approx(capacity(m)).epsilon(1e-9));
    CHECK(verify_dp(sq, g, 10.0).min_epsilon <= eps0 + 1e-9);

    const auto rot = canonical_single_orbit_automorphism(g);
    const auto sym = automorphism_symmetrize(sq, *rot);
    CHECK(capacity(sym) == doctest::Approx(capacity(sq)).epsilon(1e-9));
    CHECK(verify_dp(sym, g, 10.0).min_epsilon <= eps0 + 1e-9);
    CHECK(validate(sym).ok);
    ++checked;
  }
  CHECK(checked == 100);
}
