#include "dpchan/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dpchan {

namespace {

constexpr double kDiagTol = 1e-9;

void require_diagonal_maxima(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw HypothesisViolated("matrix must be square");
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m(j, j) + kDiagTol < m.col(j).maxCoeff())
      throw HypothesisViolated("column " + std::to_string(j) + " maximum is off the diagonal");
  }
}

}  // namespace

std::string CollapseTrace::to_text() const {
  std::ostringstream out;
  for (auto [l, k] : merges) out << "merge " << l << " -> " << k << "\n";
  for (auto [row, col] : assignment) out << "assign " << row << " -> " << col << "\n";
  return out.str();
}

ChannelMatrix collapse_column(const ChannelMatrix& m, Eigen::Index l, Eigen::Index k) {
  if (l == k || l < 0 || k < 0 || l >= m.cols() || k >= m.cols())
    throw Error("collapse_column needs two distinct valid column indices");
  Eigen::MatrixXd out = m.p;
  out.col(k) += out.col(l);
  out.col(l).setZero();
  return ChannelMatrix(m.input, m.output, std::move(out));
}

std::pair<ChannelMatrix, CollapseTrace> to_square_diagonal_max(const ChannelMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n > m.cols()) throw Error("to_square_diagonal_max requires rows <= columns");

  CollapseTrace trace;
  Eigen::MatrixXd work = m.p;
  std::vector<Eigen::Index> assigned(static_cast<size_t>(n), -1);  // row -> column

  // Column by column: the argmax row of the *original* matrix either claims
  // the column or absorbs it into the column it already owns.
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index row = 0;
    m.p.col(j).maxCoeff(&row);  // ties to smallest row index
    if (assigned[static_cast<size_t>(row)] < 0) {
      assigned[static_cast<size_t>(row)] = j;
    } else {
      const Eigen::Index dest = assigned[static_cast<size_t>(row)];
      work.col(dest) += work.col(j);
      work.col(j).setZero();
      trace.merges.emplace_back(j, dest);
    }
  }
  // Leftover rows take the zeroed columns, left to right.
  std::vector<Eigen::Index> free_cols;
  {
    std::vector<bool> taken(static_cast<size_t>(m.cols()), false);
    for (Eigen::Index c : assigned) {
      if (c >= 0) taken[static_cast<size_t>(c)] = true;
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!taken[static_cast<size_t>(j)]) free_cols.push_back(j);
    }
  }
  size_t next_free = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (assigned[static_cast<size_t>(i)] < 0) assigned[static_cast<size_t>(i)] = free_cols[next_free++];
  }
  for (Eigen::Index i = 0; i < n; ++i) trace.assignment[i] = assigned[static_cast<size_t>(i)];

  // Keep only the assigned columns, ordered so row i's column lands at i.
  Eigen::MatrixXd square(n, n);
  std::vector<std::string> out_labels(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    square.col(i) = work.col(assigned[static_cast<size_t>(i)]);
    out_labels[static_cast<size_t>(i)] = m.output.label(assigned[static_cast<size_t>(i)]);
  }
  return {ChannelMatrix(m.input, Alphabet(std::move(out_labels)), std::move(square)), trace};
}

ChannelMatrix hamming_symmetrize(const ChannelMatrix& m, const DatabaseUniverse& universe) {
  if (m.rows() != universe.size() || m.cols() != universe.size())
    throw HypothesisViolated("matrix must be square over Val^u");
  require_diagonal_maxima(m.p);
  const long long n = universe.size();
  const int u = universe.u();
  const int v = universe.v();

  // Per-distance totals and class sizes; |Border_d| = C(u,d)(v-1)^d for all nodes.
  std::vector<double> total(static_cast<size_t>(u) + 1, 0.0);
  std::vector<double> class_size(static_cast<size_t>(u) + 1, 0.0);
  for (long long i = 0; i < n; ++i) {
    for (long long j = 0; j < n; ++j) {
      total[static_cast<size_t>(universe.hamming_distance(i, j))] += m.p(i, j);
    }
  }
  {
    double binom = 1.0;
    for (int d = 0; d <= u; ++d) {
      class_size[static_cast<size_t>(d)] = binom * std::pow(v - 1.0, d);
      binom = binom * (u - d) / (d + 1.0);
    }
  }
  Eigen::MatrixXd out(n, n);
  for (long long h = 0; h < n; ++h) {
    for (long long k = 0; k < n; ++k) {
      const auto d = static_cast<size_t>(universe.hamming_distance(h, k));
      out(h, k) = total[d] / (static_cast<double>(n) * class_size[d]);
    }
  }
  return ChannelMatrix(m.input, m.output, std::move(out));
}

ChannelMatrix automorphism_symmetrize(const ChannelMatrix& m, const Automorphism& a) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw HypothesisViolated("matrix must be square");
  if (static_cast<Eigen::Index>(a.perm().size()) != n)
    throw HypothesisViolated("automorphism size mismatch");
  if (!a.single_orbit()) throw HypothesisViolated("automorphism must have a single orbit");
  require_diagonal_maxima(m.p);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::Index> image(static_cast<size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  for (Eigen::Index step = 0; step < n; ++step) {
    for (Eigen::Index h = 0; h < n; ++h) {
      for (Eigen::Index k = 0; k < n; ++k) {
        out(h, k) += m.p(image[static_cast<size_t>(h)], image[static_cast<size_t>(k)]);
      }
    }
    for (auto& i : image) i = a(i);
  }
  out /= static_cast<double>(n);
  return ChannelMatrix(m.input, m.output, std::move(out));
}

ChannelMatrix reduce_range(const ChannelMatrix& m, Eigen::Index r, bool drop) {
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m.p.col(j).maxCoeff() > 0.0) nonzero.push_back(j);
  }
  const Eigen::Index nz = static_cast<Eigen::Index>(nonzero.size());
  if (r < 1 || r > nz) throw Error("reduce_range target out of range");
  const Eigen::Index merges = nz - r;
  if (merges > r) throw Error("reduce_range cannot merge more columns than remain");

  // Ascending by (column max, index); t-th smallest folds into t-th largest.
  std::sort(nonzero.begin(), nonzero.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = m.p.col(a).maxCoeff();
    const double mb = m.p.col(b).maxCoeff();
    return ma != mb ? ma < mb : a < b;
  });
  ChannelMatrix out = m;
  for (Eigen::Index t = 0; t < merges; ++t) {
    const Eigen::Index src = nonzero[static_cast<size_t>(t)];
    const Eigen::Index dst = nonzero[static_cast<size_t>(nz - 1 - t)];
    out = collapse_column(out, src, dst);
  }
  return drop ? drop_zero_columns(out) : out;
}

ChannelMatrix drop_zero_columns(const ChannelMatrix& m) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m.p.col(j).maxCoeff() > 0.0) keep.push_back(j);
  }
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(keep.size()));
  std::vector<std::string> labels;
  for (size_t t = 0; t < keep.size(); ++t) {
    out.col(static_cast<Eigen::Index>(t)) = m.p.col(keep[t]);
    labels.push_back(m.output.label(keep[t]));
  }
  return ChannelMatrix(m.input, Alphabet(std::move(labels)), std::move(out));
}

}  // namespace dpchan
