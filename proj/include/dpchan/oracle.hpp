#ifndef DPCHAN_ORACLE_HPP
#define DPCHAN_ORACLE_HPP

#include "dpchan/channel.hpp"
#include "dpchan/dp.hpp"
#include "dpchan/graph.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace dpchan::oracle {

/// Eq.-(2) leakage from first principles: joint table, per-column Bayes
/// inversion, then the expected posterior maximum. Size guard 4096 entries.
double leakage_by_enumeration(const PriorDistribution& p, const ChannelMatrix& m);

/// Definition-level DP check with every singleton output set; for matrices
/// with <= 10 columns also checks every subset S to confirm the singleton
/// reduction.
DpVerdict dp_by_enumeration(const ChannelMatrix& m, const AdjacencyGraph& g, double eps);

/// Exhaustive search over all |Y|^|Z| remaps. Guard: |Y|^|Z| <= 10^7.
std::pair<std::vector<Eigen::Index>, double> best_remap_by_search(const PriorDistribution& p,
                                                                 const ChannelMatrix& h,
                                                                 const Eigen::MatrixXd& gain);

struct SamplerConfig {
  std::uint64_t seed = 0;
  double target_eps = 1.0;   // natural-log scale, > 0
  Eigen::Index rows = 0;     // defaults to graph node count
  Eigen::Index cols = 0;     // defaults to rows
  double bisection_tol = 1e-10;
  int max_iterations = 200;
};

/// Deterministic sampler of eps-DP channels: a seeded random stochastic
/// matrix mixed toward the uniform row, with the mixing weight found by
/// bisection so that min_epsilon <= target_eps. The all-pairs entry ratio
/// decreases monotonically toward 1 as the uniform weight grows. The output
/// is re-verified by verify_dp; failure throws.
ChannelMatrix sample_dp_channel(const SamplerConfig& cfg, const AdjacencyGraph& g);

}  // namespace dpchan::oracle

#endif  // DPCHAN_ORACLE_HPP
