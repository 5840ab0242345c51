#include "dpchan/types.hpp"

#include <cmath>
#include <unordered_set>

namespace dpchan {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error("alphabet must have at least one label");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw Error("duplicate alphabet label: " + l);
  }
}

Eigen::Index Alphabet::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<Eigen::Index>(i);
  }
  return -1;
}

Alphabet Alphabet::numbered(Eigen::Index n, const std::string& prefix) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return Alphabet(std::move(labels));
}

PriorDistribution::PriorDistribution(Alphabet alphabet, Eigen::VectorXd probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  if (probs_.size() != alphabet_.size())
    throw Error("prior length does not match alphabet size");
  if ((probs_.array() < 0.0).any()) throw Error("prior has a negative entry");
  if (std::abs(probs_.sum() - 1.0) > kStochasticTol)
    throw Error("prior entries do not sum to 1");
}

PriorDistribution PriorDistribution::uniform(const Alphabet& alphabet) {
  const Eigen::Index n = alphabet.size();
  return PriorDistribution(alphabet, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

ChannelMatrix::ChannelMatrix(Alphabet in, Alphabet out, Eigen::MatrixXd entries)
    : input(std::move(in)), output(std::move(out)), p(std::move(entries)) {
  if (p.rows() != input.size() || p.cols() != output.size())
    throw Error("matrix dimensions do not match alphabets");
}

}  // namespace dpchan
