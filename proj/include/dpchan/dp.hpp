#ifndef DPCHAN_DP_HPP
#define DPCHAN_DP_HPP

#include "dpchan/channel.hpp"
#include "dpchan/graph.hpp"
#include "dpchan/query.hpp"

#include <limits>
#include <vector>

namespace dpchan {

struct DpWitness {
  Eigen::Index row_a = -1;
  Eigen::Index row_b = -1;
  Eigen::Index col = -1;
};

struct DpVerdict {
  bool satisfies = true;
  double min_epsilon = 0.0;  // natural-log scale; may be +infinity
  DpWitness witness;
};

enum class BoundKind { WholeDatabase, RangeRestricted, Individual };

struct BoundReport {
  BoundKind kind;
  double bound_bits;
  int u = 0;
  int v = 0;
  double eps = 0.0;
  long long r = 0;
};

/// Minimal epsilon such that m is eps-DP w.r.t. the adjacency of g.
/// Ratio conventions: 0/0 ignored, positive/0 -> +infinity.
DpVerdict verify_dp(const ChannelMatrix& m, const AdjacencyGraph& g, double eps);

/// B(u,v,eps) = u log2( v e^eps / (v-1+e^eps) ), bits.
BoundReport bound_whole_database(int u, int v, double eps);

/// log2( r (e^eps)^u / ((v-1+e^eps)^l - (e^eps)^l + (e^eps)^u) ), l = floor(log_v r).
BoundReport bound_range_restricted(int u, int v, double eps, long long r);

/// eps * log2 e, bits.
BoundReport bound_individual(double eps);

/// Sub-channel over the v databases where every individual except `target`
/// holds the values in d_minus. All selected rows are pairwise adjacent.
ChannelMatrix individual_channel(const ChannelMatrix& m, const DatabaseUniverse& universe,
                                 int target, const std::vector<int>& d_minus);

struct RatioBoundVerdict {
  bool hypothesis_holds = false;  // all row pairs within ratio e^eps
  double leakage_bits = 0.0;
  double bound_bits = 0.0;
  bool conclusion_holds = false;
};

/// All-pairs eps-ratio hypothesis check plus the leakage conclusion.
RatioBoundVerdict check_epsilon_ratio_bound(const ChannelMatrix& m, const PriorDistribution& p,
                                            double eps);

struct CurvePoint {
  int v;
  double eps;
  double bound_bits;
};

/// B(u,v,eps) sampled over an ascending eps grid, one series per v.
std::vector<CurvePoint> curve_bound(int u, const std::vector<int>& vs,
                                    const std::vector<double>& eps_grid);

}  // namespace dpchan

#endif  // DPCHAN_DP_HPP
