#ifndef DPCHAN_QUERY_HPP
#define DPCHAN_QUERY_HPP

#include "dpchan/channel.hpp"
#include "dpchan/graph.hpp"

#include <optional>
#include <vector>

namespace dpchan {

/// The set Val^u with base-v index encoding; individual 0 is the least
/// significant digit, written first in database labels.
class DatabaseUniverse {
 public:
  DatabaseUniverse(int u, int v, std::vector<std::string> value_labels);

  static DatabaseUniverse digits(int u, int v);  // value labels "0".."v-1"

  int u() const { return u_; }
  int v() const { return v_; }
  const std::vector<std::string>& value_labels() const { return value_labels_; }
  long long size() const { return size_; }

  long long encode(const std::vector<int>& tuple) const;
  std::vector<int> decode(long long index) const;
  std::string label(long long index) const;

  /// All database labels in canonical order.
  Alphabet alphabet() const;

  /// The standard adjacency relation: tuples differing in one individual.
  AdjacencyGraph hamming_graph() const;

  int hamming_distance(long long a, long long b) const;

 private:
  int u_;
  int v_;
  std::vector<std::string> value_labels_;
  long long size_;
};

/// Deterministic query f: databases -> answers, answers onto.
class QueryModel {
 public:
  QueryModel(DatabaseUniverse universe, Alphabet answers, std::vector<Eigen::Index> map);

  const DatabaseUniverse& universe() const { return universe_; }
  const Alphabet& answers() const { return answers_; }
  Eigen::Index operator()(long long db) const { return map_[static_cast<size_t>(db)]; }
  const std::vector<Eigen::Index>& map() const { return map_; }

 private:
  DatabaseUniverse universe_;
  Alphabet answers_;
  std::vector<Eigen::Index> map_;
};

/// "How many individuals hold `target_value`?"  Answers {0..u}.
QueryModel counting_query(const DatabaseUniverse& universe, const std::string& target_value);

/// "Which city has the most votes for `candidate`?"  Value labels are
/// "CITY:CANDIDATE" pairs; ties go to the earliest-listed city.
QueryModel argmax_query(const DatabaseUniverse& universe, const std::string& candidate);

/// Answers y ~ y' iff some Hamming-adjacent database pair maps to (y, y').
/// Guard: v^u <= 10^6.
AdjacencyGraph induced_adjacency(const QueryModel& q);

/// K(x,z) = h(f(x), z): oblivious decomposition of the end-to-end channel.
ChannelMatrix compose(const QueryModel& q, const ChannelMatrix& h);

/// Pushes a prior on databases through f to a prior on answers.
PriorDistribution push_prior(const QueryModel& q, const PriorDistribution& on_databases);

struct UtilityFigures {
  double utility = 0.0;                // in [0,1]
  std::vector<Eigen::Index> remap;     // column -> answer index
  double neg_log2_utility = 0.0;       // = H_inf(Y|Z)
};

/// Binary-gain utility with the maximizing remap: U = sum_z max_y p(y,z).
UtilityFigures utility_binary(const PriorDistribution& p, const ChannelMatrix& h);

/// Expected gain under a per-column maximizing remap (or a supplied one).
double utility_general_gain(const PriorDistribution& p, const ChannelMatrix& h,
                            const Eigen::MatrixXd& gain,
                            const std::optional<std::vector<Eigen::Index>>& remap = std::nullopt);

/// Query spec strings: `count:U:V:TARGET`, `file:PATH`.
QueryModel build_query(const std::string& spec);

}  // namespace dpchan

#endif  // DPCHAN_QUERY_HPP
