#ifndef DPCHAN_TYPES_HPP
#define DPCHAN_TYPES_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpchan {

constexpr double kStochasticTol = 1e-9;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AlphabetMismatch : Error {
  using Error::Error;
};
struct NotAutomorphism : Error {
  using Error::Error;
};
struct HypothesisViolated : Error {
  using Error::Error;
};
struct Remark1Inapplicable : Error {
  using Error::Error;
};

/// Ordered list of distinct element names (the carrier of a random variable).
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  Eigen::Index size() const { return static_cast<Eigen::Index>(labels_.size()); }
  const std::string& label(Eigen::Index i) const { return labels_.at(static_cast<size_t>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }
  Eigen::Index index_of(const std::string& label) const;  // -1 when absent

  bool operator==(const Alphabet& other) const { return labels_ == other.labels_; }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

  static Alphabet numbered(Eigen::Index n, const std::string& prefix = "");

 private:
  std::vector<std::string> labels_;
};

/// Probability distribution over an alphabet; entries nonnegative, sum 1.
class PriorDistribution {
 public:
  PriorDistribution(Alphabet alphabet, Eigen::VectorXd probs);

  static PriorDistribution uniform(const Alphabet& alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  const Eigen::VectorXd& probs() const { return probs_; }
  double operator()(Eigen::Index i) const { return probs_(i); }

 private:
  Alphabet alphabet_;
  Eigen::VectorXd probs_;
};

/// Row-stochastic matrix of conditional probabilities p(output | input).
struct ChannelMatrix {
  Alphabet input;   // rows
  Alphabet output;  // columns
  Eigen::MatrixXd p;

  ChannelMatrix() = default;
  ChannelMatrix(Alphabet in, Alphabet out, Eigen::MatrixXd entries);

  Eigen::Index rows() const { return p.rows(); }
  Eigen::Index cols() const { return p.cols(); }
};

struct LeakageFigures {
  double h_inf_prior = 0.0;      // bits
  double h_inf_posterior = 0.0;  // bits
  double leakage = 0.0;          // bits
  double capacity = 0.0;         // bits
};

struct RowViolation {
  Eigen::Index row;
  double deviation;      // |row sum - 1|
  bool negative_entry;   // some entry < 0 in this row
};

struct ValidationVerdict {
  bool ok = true;
  std::vector<RowViolation> violations;
};

}  // namespace dpchan

#endif  // DPCHAN_TYPES_HPP
