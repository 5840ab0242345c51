#ifndef DPCHAN_CHANNEL_HPP
#define DPCHAN_CHANNEL_HPP

#include "dpchan/types.hpp"

namespace dpchan {

/// H_inf(X) = -log2 max_x p(x), in bits.
double min_entropy(const PriorDistribution& p);

/// H_inf(X|Z) = -log2 sum_z max_x p(x) p(z|x), in bits.
double conditional_min_entropy(const PriorDistribution& p, const ChannelMatrix& m);

/// I_inf = H_inf(X) - H_inf(X|Z) together with the channel capacity.
LeakageFigures min_entropy_leakage(const PriorDistribution& p, const ChannelMatrix& m);

/// C_inf = log2 of the sum of per-column maxima; leakage at the uniform prior.
double capacity(const ChannelMatrix& m);

/// Joint matrix: entry(i,j) = p(i) * m(i,j).
Eigen::MatrixXd joint(const PriorDistribution& p, const ChannelMatrix& m);

/// Row-stochasticity check. Nonnegativity is strict; row sums within tol of 1.
ValidationVerdict validate(const ChannelMatrix& m, double tol = kStochasticTol);

/// Appends zero columns so that cols >= rows (writer option for square-needing
/// transforms). Added column labels are "pad0", "pad1", ...
ChannelMatrix pad_to_square(const ChannelMatrix& m);

}  // namespace dpchan

#endif  // DPCHAN_CHANNEL_HPP
