#include "dpchan/mechanisms.hpp"

#include "dpchan/query.hpp"

#include <cmath>

namespace dpchan {

ChannelMatrix build_tight_leakage(int u, int v, double eps) {
  if (eps < 0) throw Error("eps must be nonnegative");
  DatabaseUniverse universe = DatabaseUniverse::digits(u, v);
  const long long n = universe.size();
  const double e = std::exp(eps);
  const double alpha = std::pow(e / (v - 1 + e), u);
  Eigen::MatrixXd m(n, n);
  for (long long x = 0; x < n; ++x) {
    for (long long z = 0; z < n; ++z) {
      m(x, z) = alpha / std::pow(e, universe.hamming_distance(x, z));
    }
  }
  const Alphabet labels = universe.alphabet();
  return ChannelMatrix(labels, labels, std::move(m));
}

namespace {

struct BorderProfile {
  int n = 0;                    // diameter
  std::vector<long long> size;  // size[d] for node 0, d = 0..n
  bool constant_c = false;      // every node, every d > 0: |Border_d| in {0, c}
  int c = 0;
};

BorderProfile profile_borders(const AdjacencyGraph& g) {
  BorderProfile bp;
  bp.n = g.diameter();
  bp.size.resize(static_cast<size_t>(bp.n) + 1);
  for (int d = 0; d <= bp.n; ++d)
    bp.size[static_cast<size_t>(d)] = static_cast<long long>(g.border(0, d).size());

  long long c = 0;
  bp.constant_c = true;
  for (Eigen::Index y = 0; y < g.node_count() && bp.constant_c; ++y) {
    for (int d = 1; d <= bp.n; ++d) {
      const long long b = static_cast<long long>(g.border(y, d).size());
      if (b == 0) continue;
      if (c == 0) c = b;
      if (b != c) {
        bp.constant_c = false;
        break;
      }
    }
  }
  bp.c = static_cast<int>(c);
  return bp;
}

ChannelMatrix distance_matrix(const AdjacencyGraph& g, const AdjacencyGraph& metric_graph,
                              double eps, bool double_antipodal, int n, double& alpha_out) {
  const Eigen::Index count = g.node_count();
  const double e = std::exp(eps);
  Eigen::MatrixXd m(count, count);
  for (Eigen::Index y = 0; y < count; ++y) {
    for (Eigen::Index z = 0; z < count; ++z) {
      const int d = metric_graph.dist(y, z);
      double w = 1.0 / std::pow(e, d);
      if (double_antipodal && d == n) w *= 2.0;
      m(y, z) = w;
    }
  }
  // Normalization-sum alpha; rows agree by symmetry, checked downstream.
  alpha_out = 1.0 / m.row(0).sum();
  m *= alpha_out;
  return ChannelMatrix(g.nodes(), g.nodes(), std::move(m));
}

}  // namespace

OptimalBuild build_optimal_utility(const AdjacencyGraph& g, double eps, bool augment,
                                   const std::optional<Automorphism>& automorphism) {
  if (eps < 0) throw Error("eps must be nonnegative");
  if (!g.connected()) throw HypothesisViolated("graph must be connected");

  OptimalBuild out;
  out.params.eps = eps;

  // eps = 0 collapses the closed form to 0/0; the normalization sum gives the
  // uniform row, which is the unique 0-DP utility level for any connected graph.
  if (eps == 0.0) {
    const Eigen::Index count = g.node_count();
    Eigen::MatrixXd m =
        Eigen::MatrixXd::Constant(count, count, 1.0 / static_cast<double>(count));
    out.matrix = ChannelMatrix(g.nodes(), g.nodes(), std::move(m));
    out.params.alpha = 1.0 / static_cast<double>(count);
    out.params.n = g.diameter();
    return out;
  }

  const BorderProfile bp = profile_borders(g);
  const bool even_ring = g.kind() == GraphKind::Ring && g.node_count() >= 4 &&
                         g.node_count() % 2 == 0;

  if (bp.constant_c) {
    std::optional<Automorphism> a =
        automorphism ? automorphism : canonical_single_orbit_automorphism(g);
    if (!a || !a->single_orbit())
      throw HypothesisViolated("no single-orbit automorphism available for this graph");
    out.matrix = distance_matrix(g, g, eps, false, bp.n, out.params.alpha);
    out.params.n = bp.n;
    out.params.c = bp.c;
    return out;
  }

  if (even_ring) {
    // Remark-1 path: |Border_n| = 1 instead of 2; double that entry, guarded
    // by (e^eps)^2 >= 2 so the doubled cell keeps the DP ratio.
    if (std::exp(eps) * std::exp(eps) < 2.0)
      throw Remark1Inapplicable("even ring needs (e^eps)^2 >= 2 for antipodal doubling");
    out.matrix = distance_matrix(g, g, eps, true, bp.n, out.params.alpha);
    out.params.n = bp.n;
    out.params.c = 2;
    out.params.remark1_applied = true;
    return out;
  }

  if (augment) {
    const AdjacencyGraph augmented = augment_to_regular_borders(g);
    OptimalBuild inner = build_optimal_utility(augmented, eps, false, automorphism);
    out.matrix = ChannelMatrix(g.nodes(), g.nodes(), inner.matrix.p);
    out.params = inner.params;
    out.params.remark2_applied = true;
    out.params.guaranteed_optimal = false;
    return out;
  }

  std::string reason = "border sizes are not constant:";
  for (int d = 1; d <= bp.n; ++d)
    reason += " d=" + std::to_string(d) + ":" + std::to_string(bp.size[static_cast<size_t>(d)]);
  throw HypothesisViolated(reason);
}

ChannelMatrix build_geometric(int n_max, double lambda) {
  if (n_max < 1) throw Error("geometric mechanism needs n_max >= 1");
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error("lambda must be in (0,1)");
  const Eigen::Index n = n_max + 1;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    for (Eigen::Index z = 0; z < n; ++z) {
      if (z == 0) {
        m(y, z) = std::pow(lambda, static_cast<double>(y)) / (1.0 + lambda);
      } else if (z == n - 1) {
        m(y, z) = std::pow(lambda, static_cast<double>(n - 1 - y)) / (1.0 + lambda);
      } else {
        m(y, z) =
            (1.0 - lambda) / (1.0 + lambda) * std::pow(lambda, std::abs(static_cast<double>(z - y)));
      }
    }
  }
  const Alphabet labels = Alphabet::numbered(n);
  return ChannelMatrix(labels, labels, std::move(m));
}

double alpha_closed_form(int n, int c, double eps) {
  if (eps <= 0) throw Error("closed form needs eps > 0; use the normalization sum at eps = 0");
  if (n < 1 || c < 1) throw Error("closed form needs n >= 1 and c >= 1");
  const double en = std::pow(std::exp(eps), n);
  const double num = en * (1.0 - std::exp(eps));
  return num / (num + c * (1.0 - en));
}

}  // namespace dpchan
