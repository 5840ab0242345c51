#include "dpchan/channel.hpp"

#include <cmath>

namespace dpchan {

namespace {

void require_same_input(const PriorDistribution& p, const ChannelMatrix& m) {
  if (p.alphabet() != m.input)
    throw AlphabetMismatch("prior alphabet does not match channel input");
}

}  // namespace

double min_entropy(const PriorDistribution& p) {
  return -std::log2(p.probs().maxCoeff());
}

double conditional_min_entropy(const PriorDistribution& p, const ChannelMatrix& m) {
  require_same_input(p, m);
  const Eigen::MatrixXd j = p.probs().asDiagonal() * m.p;
  return -std::log2(j.colwise().maxCoeff().sum());
}

LeakageFigures min_entropy_leakage(const PriorDistribution& p, const ChannelMatrix& m) {
  LeakageFigures f;
  f.h_inf_prior = min_entropy(p);
  f.h_inf_posterior = conditional_min_entropy(p, m);
  f.leakage = f.h_inf_prior - f.h_inf_posterior;
  f.capacity = capacity(m);
  return f;
}

double capacity(const ChannelMatrix& m) {
  return std::log2(m.p.colwise().maxCoeff().sum());
}

Eigen::MatrixXd joint(const PriorDistribution& p, const ChannelMatrix& m) {
  require_same_input(p, m);
  return p.probs().asDiagonal() * m.p;
}

ValidationVerdict validate(const ChannelMatrix& m, double tol) {
  ValidationVerdict v;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double dev = std::abs(m.p.row(i).sum() - 1.0);
    const bool neg = (m.p.row(i).array() < 0.0).any();
    if (dev > tol || neg) {
      v.ok = false;
      v.violations.push_back({i, dev, neg});
    }
  }
  return v;
}

ChannelMatrix pad_to_square(const ChannelMatrix& m) {
  if (m.cols() >= m.rows()) return m;
  const Eigen::Index extra = m.rows() - m.cols();
  Eigen::MatrixXd padded(m.rows(), m.rows());
  padded.leftCols(m.cols()) = m.p;
  padded.rightCols(extra).setZero();
  std::vector<std::string> labels = m.output.labels();
  for (Eigen::Index i = 0; i < extra; ++i) labels.push_back("pad" + std::to_string(i));
  return ChannelMatrix(m.input, Alphabet(std::move(labels)), std::move(padded));
}

}  // namespace dpchan
