#ifndef DPCHAN_MECHANISMS_HPP
#define DPCHAN_MECHANISMS_HPP

#include "dpchan/channel.hpp"
#include "dpchan/graph.hpp"

#include <optional>

namespace dpchan {

struct OptimalMechanismParams {
  double eps = 0.0;
  double alpha = 0.0;            // diagonal value
  int n = 0;                     // graph diameter
  int c = 0;                     // border constant, 0 when borders are irregular
  bool remark1_applied = false;  // even-ring antipodal doubling
  bool remark2_applied = false;  // distances taken in an augmented graph
  bool guaranteed_optimal = true;
};

/// The tight-leakage matrix over Val^u: entry(x,z) = alpha / (e^eps)^d with
/// Hamming distance d and alpha = (e^eps / (v-1+e^eps))^u. Uniform-prior
/// leakage equals B(u,v,eps).
ChannelMatrix build_tight_leakage(int u, int v, double eps);

struct OptimalBuild {
  ChannelMatrix matrix;
  OptimalMechanismParams params;
};

/// The maximal-utility mechanism: entry(y,z) = alpha / (e^eps)^dist(y,z).
/// Requires a connected graph that is border-regular with a single-orbit
/// automorphism, or an even ring with (e^eps)^2 >= 2 (antipodal entries
/// doubled), or augment = true to take distances in the regular supergraph.
/// An explicit automorphism may be supplied for custom border-regular graphs.
OptimalBuild build_optimal_utility(const AdjacencyGraph& g, double eps, bool augment = false,
                                   const std::optional<Automorphism>& automorphism = std::nullopt);

/// Truncated geometric mechanism on {0..n_max}: interior entries
/// ((1-lambda)/(1+lambda)) lambda^|z-y|, boundary mass folded into z = 0 and
/// z = n_max. Minimal epsilon w.r.t. line adjacency is ln(1/lambda).
ChannelMatrix build_geometric(int n_max, double lambda);

/// alpha = (e^eps)^n (1-e^eps) / ((e^eps)^n (1-e^eps) + c (1-(e^eps)^n)).
/// Requires eps > 0; at eps = 0 use the normalization-sum form instead.
double alpha_closed_form(int n, int c, double eps);

}  // namespace dpchan

#endif  // DPCHAN_MECHANISMS_HPP
