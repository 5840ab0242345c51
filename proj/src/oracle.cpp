#include "dpchan/oracle.hpp"

#include <cmath>
#include <random>

namespace dpchan::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double leakage_by_enumeration(const PriorDistribution& p, const ChannelMatrix& m) {
  if (p.alphabet() != m.input) throw AlphabetMismatch("prior does not match channel input");
  if (m.rows() * m.cols() > 4096) throw Error("enumeration oracle size guard exceeded");
  // Joint table, then explicit Bayes inversion per column.
  double success = 0.0;
  for (Eigen::Index z = 0; z < m.cols(); ++z) {
    double pz = 0.0;
    for (Eigen::Index x = 0; x < m.rows(); ++x) pz += p(x) * m.p(x, z);
    if (pz == 0.0) continue;
    double best_posterior = 0.0;
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
      best_posterior = std::max(best_posterior, p(x) * m.p(x, z) / pz);
    }
    success += pz * best_posterior;
  }
  const double h_post = -std::log2(success);
  return -std::log2(p.probs().maxCoeff()) - h_post;
}

DpVerdict dp_by_enumeration(const ChannelMatrix& m, const AdjacencyGraph& g, double eps) {
  if (g.nodes() != m.input) throw AlphabetMismatch("graph nodes do not match channel input");
  if (m.rows() * m.cols() > 4096) throw Error("enumeration oracle size guard exceeded");
  DpVerdict v;
  double max_ratio = 1.0;
  bool infinite = false;
  for (auto [a, b] : g.edges()) {
    for (Eigen::Index z = 0; z < m.cols(); ++z) {
      for (int dir = 0; dir < 2; ++dir) {
        const Eigen::Index ra = dir == 0 ? a : b;
        const Eigen::Index rb = dir == 0 ? b : a;
        const double num = m.p(ra, z);
        const double den = m.p(rb, z);
        if (num == 0.0) continue;
        if (den == 0.0) {
          infinite = true;
          v.witness = {ra, rb, z};
        } else if (num / den > max_ratio) {
          max_ratio = num / den;
          v.witness = {ra, rb, z};
        }
      }
    }
  }
  // For small ranges, confirm the singleton reduction over every subset S.
  if (!infinite && m.cols() <= 10) {
    for (auto [a, b] : g.edges()) {
      for (unsigned mask = 1; mask < (1u << m.cols()); ++mask) {
        double pa = 0.0;
        double pb = 0.0;
        for (Eigen::Index z = 0; z < m.cols(); ++z) {
          if (mask & (1u << z)) {
            pa += m.p(a, z);
            pb += m.p(b, z);
          }
        }
        if (pa == 0.0 && pb == 0.0) continue;
        if (pa == 0.0 || pb == 0.0) {
          infinite = true;
          break;
        }
        max_ratio = std::max({max_ratio, pa / pb, pb / pa});
      }
    }
  }
  v.min_epsilon = infinite ? kInf : std::log(max_ratio);
  v.satisfies = (eps >= v.min_epsilon - 1e-9);
  return v;
}

std::pair<std::vector<Eigen::Index>, double> best_remap_by_search(const PriorDistribution& p,
                                                                 const ChannelMatrix& h,
                                                                 const Eigen::MatrixXd& gain) {
  const Eigen::Index ny = h.rows();
  const Eigen::Index nz = h.cols();
  double combos = 1.0;
  for (Eigen::Index z = 0; z < nz; ++z) combos *= static_cast<double>(ny);
  if (combos > 1e7) throw Error("remap search size guard exceeded");

  const Eigen::MatrixXd j = joint(p, h);
  std::vector<Eigen::Index> current(static_cast<size_t>(nz), 0);
  std::vector<Eigen::Index> best = current;
  double best_value = -kInf;
  while (true) {
    double value = 0.0;
    for (Eigen::Index z = 0; z < nz; ++z)
      value += j.col(z).dot(gain.col(current[static_cast<size_t>(z)]));
    if (value > best_value) {
      best_value = value;
      best = current;
    }
    // odometer increment
    Eigen::Index pos = 0;
    while (pos < nz) {
      if (++current[static_cast<size_t>(pos)] < ny) break;
      current[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == nz) break;
  }
  return {best, best_value};
}

ChannelMatrix sample_dp_channel(const SamplerConfig& cfg, const AdjacencyGraph& g) {
  if (cfg.target_eps <= 0.0) throw Error("sampler needs target_eps > 0");
  const Eigen::Index rows = cfg.rows > 0 ? cfg.rows : g.node_count();
  const Eigen::Index cols = cfg.cols > 0 ? cfg.cols : rows;
  if (rows != g.node_count()) throw Error("sampler row count must match graph");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd base(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) base(i, j) = unit(rng);
    base.row(i) /= base.row(i).sum();
  }
  const double uniform_entry = 1.0 / static_cast<double>(cols);

  auto mixed = [&](double t) {
    Eigen::MatrixXd m = (1.0 - t) * base;
    m.array() += t * uniform_entry;
    return ChannelMatrix(g.nodes(), Alphabet::numbered(cols, "z"), std::move(m));
  };
  auto eps_of = [&](double t) { return verify_dp(mixed(t), g, cfg.target_eps).min_epsilon; };

  double t_hi = 1.0;  // uniform rows: eps 0
  if (eps_of(0.0) <= cfg.target_eps) {
    t_hi = 0.0;
  } else {
    double t_lo = 0.0;
    int iterations = 0;
    while (t_hi - t_lo > cfg.bisection_tol) {
      if (++iterations > cfg.max_iterations)
        throw Error("sampler bisection failed to converge");
      const double mid = 0.5 * (t_lo + t_hi);
      (eps_of(mid) <= cfg.target_eps ? t_hi : t_lo) = mid;
    }
  }
  ChannelMatrix out = mixed(t_hi);
  if (!verify_dp(out, g, cfg.target_eps).satisfies)
    throw Error("sampler output failed DP verification");
  return out;
}

}  // namespace dpchan::oracle
