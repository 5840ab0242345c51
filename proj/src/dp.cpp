#include "dpchan/dp.hpp"

#include <cmath>

namespace dpchan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DpVerdict verify_dp(const ChannelMatrix& m, const AdjacencyGraph& g, double eps) {
  if (g.nodes() != m.input)
    throw AlphabetMismatch("graph nodes do not match channel input");
  if (eps < 0) throw Error("eps must be nonnegative");
  DpVerdict v;
  double max_ratio = 1.0;  // zero leakage channels have ratio 1 everywhere
  for (auto [a, b] : g.edges()) {
    for (Eigen::Index z = 0; z < m.cols(); ++z) {
      const double pa = m.p(a, z);
      const double pb = m.p(b, z);
      if (pa == 0.0 && pb == 0.0) continue;  // 0/0: no constraint
      if (pa == 0.0 || pb == 0.0) {
        v.min_epsilon = kInf;
        v.witness = {pa > 0.0 ? a : b, pa > 0.0 ? b : a, z};
        v.satisfies = false;
        return v;
      }
      const double ratio = pa > pb ? pa / pb : pb / pa;
      if (ratio > max_ratio) {
        max_ratio = ratio;
        v.witness = {pa > pb ? a : b, pa > pb ? b : a, z};
      }
    }
  }
  v.min_epsilon = std::log(max_ratio);
  v.satisfies = (eps >= v.min_epsilon - 1e-9);
  return v;
}

BoundReport bound_whole_database(int u, int v, double eps) {
  if (v < 2) throw Error("bound requires v >= 2");
  if (u < 1) throw Error("bound requires u >= 1");
  if (eps < 0) throw Error("eps must be nonnegative");
  const double e = std::exp(eps);
  BoundReport r{BoundKind::WholeDatabase, u * std::log2(v * e / (v - 1 + e)), u, v, eps, 0};
  return r;
}

BoundReport bound_range_restricted(int u, int v, double eps, long long r) {
  if (v < 2) throw Error("bound requires v >= 2");
  if (u < 1) throw Error("bound requires u >= 1");
  if (r < 1) throw Error("bound requires r >= 1");
  if (eps < 0) throw Error("eps must be nonnegative");
  int l = 0;
  long long power = 1;
  while (power * v <= r) {
    power *= v;
    ++l;
  }
  const double e = std::exp(eps);
  const double denom =
      std::pow(v - 1 + e, l) - std::pow(e, l) + std::pow(e, u);
  BoundReport out{BoundKind::RangeRestricted,
                  std::log2(static_cast<double>(r) * std::pow(e, u) / denom), u, v, eps, r};
  return out;
}

BoundReport bound_individual(double eps) {
  if (eps < 0) throw Error("eps must be nonnegative");
  return BoundReport{BoundKind::Individual, eps * std::log2(std::exp(1.0)), 0, 0, eps, 0};
}

ChannelMatrix individual_channel(const ChannelMatrix& m, const DatabaseUniverse& universe,
                                 int target, const std::vector<int>& d_minus) {
  if (m.input != universe.alphabet())
    throw AlphabetMismatch("matrix input must enumerate the universe in canonical order");
  if (target < 0 || target >= universe.u()) throw Error("target individual out of range");
  if (static_cast<int>(d_minus.size()) != universe.u() - 1)
    throw Error("d_minus must have u-1 entries");
  Eigen::MatrixXd sub(universe.v(), m.cols());
  std::vector<std::string> labels;
  for (int w = 0; w < universe.v(); ++w) {
    std::vector<int> tuple(static_cast<size_t>(universe.u()));
    int src = 0;
    for (int pos = 0; pos < universe.u(); ++pos) {
      tuple[static_cast<size_t>(pos)] = (pos == target) ? w : d_minus[static_cast<size_t>(src++)];
    }
    const long long row = universe.encode(tuple);
    sub.row(w) = m.p.row(row);
    labels.push_back(universe.label(row));
  }
  return ChannelMatrix(Alphabet(std::move(labels)), m.output, std::move(sub));
}

RatioBoundVerdict check_epsilon_ratio_bound(const ChannelMatrix& m, const PriorDistribution& p,
                                            double eps) {
  RatioBoundVerdict verdict;
  const double factor = std::exp(eps);
  verdict.hypothesis_holds = true;
  for (Eigen::Index a = 0; a < m.rows() && verdict.hypothesis_holds; ++a) {
    for (Eigen::Index b = 0; b < m.rows() && verdict.hypothesis_holds; ++b) {
      for (Eigen::Index z = 0; z < m.cols(); ++z) {
        if (m.p(a, z) > factor * m.p(b, z) + 1e-12) {
          verdict.hypothesis_holds = false;
          break;
        }
      }
    }
  }
  verdict.leakage_bits = min_entropy_leakage(p, m).leakage;
  verdict.bound_bits = eps * std::log2(std::exp(1.0));
  verdict.conclusion_holds = verdict.leakage_bits <= verdict.bound_bits + 1e-9;
  return verdict;
}

std::vector<CurvePoint> curve_bound(int u, const std::vector<int>& vs,
                                    const std::vector<double>& eps_grid) {
  for (size_t i = 1; i < eps_grid.size(); ++i) {
    if (eps_grid[i] <= eps_grid[i - 1]) throw Error("eps grid must be ascending");
  }
  std::vector<CurvePoint> out;
  for (int v : vs) {
    for (double eps : eps_grid) {
      out.push_back({v, eps, bound_whole_database(u, v, eps).bound_bits});
    }
  }
  return out;
}

}  // namespace dpchan
