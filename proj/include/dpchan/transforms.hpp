#ifndef DPCHAN_TRANSFORMS_HPP
#define DPCHAN_TRANSFORMS_HPP

#include "dpchan/channel.hpp"
#include "dpchan/graph.hpp"
#include "dpchan/query.hpp"

#include <map>
#include <utility>
#include <vector>

namespace dpchan {

/// Audit trail of a square-reduction: which row was assigned which original
/// column, and which columns were merged away.
struct CollapseTrace {
  std::map<Eigen::Index, Eigen::Index> assignment;                // row -> original column
  std::vector<std::pair<Eigen::Index, Eigen::Index>> merges;      // (source l, destination k)

  std::string to_text() const;
};

/// M[l->k]: column k becomes the sum of columns k and l; column l becomes zero.
ChannelMatrix collapse_column(const ChannelMatrix& m, Eigen::Index l, Eigen::Index k);

/// Square reduction with per-column maxima on the diagonal. Column-max sum is
/// preserved, so uniform-prior conditional min-entropy is too, and any DP
/// level w.r.t. a graph on the rows carries over (columns are sums of
/// original columns). Ties break to the smallest row index, columns processed
/// left to right.
std::pair<ChannelMatrix, CollapseTrace> to_square_diagonal_max(const ChannelMatrix& m);

/// Distance-class averaging over Val^u. Requires per-column maxima on the
/// diagonal. Output diagonal is constant (the mean of the input diagonal) and
/// entries depend only on the Hamming distance between row and column.
ChannelMatrix hamming_symmetrize(const ChannelMatrix& m, const DatabaseUniverse& universe);

/// Orbit averaging under a verified single-orbit automorphism. Requires
/// per-column maxima on the diagonal.
ChannelMatrix automorphism_symmetrize(const ChannelMatrix& m, const Automorphism& a);

/// Merges columns until exactly r remain nonzero: the t-th smallest-max
/// column folds into the t-th largest-max column, ordering by (max value,
/// column index). Zero columns are retained unless drop_zero_columns is set.
ChannelMatrix reduce_range(const ChannelMatrix& m, Eigen::Index r, bool drop_zero_columns = false);

/// Removes all-zero columns.
ChannelMatrix drop_zero_columns(const ChannelMatrix& m);

}  // namespace dpchan

#endif  // DPCHAN_TRANSFORMS_HPP
