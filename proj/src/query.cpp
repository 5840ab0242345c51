#include "dpchan/query.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dpchan {

namespace {

constexpr long long kUniverseGuard = 1'000'000;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

DatabaseUniverse::DatabaseUniverse(int u, int v, std::vector<std::string> value_labels)
    : u_(u), v_(v), value_labels_(std::move(value_labels)) {
  if (u_ < 1) throw Error("universe requires u >= 1");
  if (v_ < 2) throw Error("universe requires v >= 2");
  if (static_cast<int>(value_labels_.size()) != v_)
    throw Error("universe needs exactly v value labels");
  size_ = 1;
  for (int i = 0; i < u_; ++i) {
    size_ *= v_;
    if (size_ > kUniverseGuard) throw Error("universe too large");
  }
}

DatabaseUniverse DatabaseUniverse::digits(int u, int v) {
  std::vector<std::string> labels;
  for (int i = 0; i < v; ++i) labels.push_back(std::to_string(i));
  return DatabaseUniverse(u, v, std::move(labels));
}

long long DatabaseUniverse::encode(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != u_) throw Error("tuple arity mismatch");
  long long idx = 0;
  long long stride = 1;
  for (int pos = 0; pos < u_; ++pos) {
    const int w = tuple[static_cast<size_t>(pos)];
    if (w < 0 || w >= v_) throw Error("tuple value out of range");
    idx += stride * w;
    stride *= v_;
  }
  return idx;
}

std::vector<int> DatabaseUniverse::decode(long long index) const {
  if (index < 0 || index >= size_) throw Error("database index out of range");
  std::vector<int> tuple(static_cast<size_t>(u_));
  for (int pos = 0; pos < u_; ++pos) {
    tuple[static_cast<size_t>(pos)] = static_cast<int>(index % v_);
    index /= v_;
  }
  return tuple;
}

std::string DatabaseUniverse::label(long long index) const {
  const auto tuple = decode(index);
  std::string out;
  for (int pos = 0; pos < u_; ++pos) {
    if (!out.empty() && v_ > 10) out += ".";
    out += value_labels_[static_cast<size_t>(tuple[static_cast<size_t>(pos)])];
  }
  return out;
}

Alphabet DatabaseUniverse::alphabet() const {
  std::vector<std::string> labels(static_cast<size_t>(size_));
  for (long long i = 0; i < size_; ++i) labels[static_cast<size_t>(i)] = label(i);
  return Alphabet(std::move(labels));
}

AdjacencyGraph DatabaseUniverse::hamming_graph() const {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (long long idx = 0; idx < size_; ++idx) {
    long long stride = 1;
    for (int pos = 0; pos < u_; ++pos) {
      const int digit = static_cast<int>((idx / stride) % v_);
      for (int w = digit + 1; w < v_; ++w)
        edges.emplace_back(idx, idx + static_cast<long long>(w - digit) * stride);
      stride *= v_;
    }
  }
  AdjacencyGraph g(alphabet(), std::move(edges), GraphKind::Hamming);
  g.set_hamming_params(u_, v_);
  return g;
}

int DatabaseUniverse::hamming_distance(long long a, long long b) const {
  int d = 0;
  for (int pos = 0; pos < u_; ++pos) {
    if (a % v_ != b % v_) ++d;
    a /= v_;
    b /= v_;
  }
  return d;
}

QueryModel::QueryModel(DatabaseUniverse universe, Alphabet answers, std::vector<Eigen::Index> map)
    : universe_(std::move(universe)), answers_(std::move(answers)), map_(std::move(map)) {
  if (static_cast<long long>(map_.size()) != universe_.size())
    throw Error("query map must be total");
  std::vector<bool> used(static_cast<size_t>(answers_.size()), false);
  for (Eigen::Index a : map_) {
    if (a < 0 || a >= answers_.size()) throw Error("query map value out of range");
    used[static_cast<size_t>(a)] = true;
  }
  if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
    throw Error("query map must be onto the answer alphabet");
}

namespace {

/// Drops unused answers and renumbers the map.
QueryModel make_query(DatabaseUniverse universe, const std::vector<std::string>& answer_labels,
                      const std::vector<Eigen::Index>& raw_map) {
  std::vector<Eigen::Index> renumber(answer_labels.size(), -1);
  std::vector<std::string> used_labels;
  for (Eigen::Index a : raw_map) {
    if (renumber[static_cast<size_t>(a)] < 0) {
      renumber[static_cast<size_t>(a)] = -2;  // mark used, order fixed below
    }
  }
  for (size_t i = 0; i < answer_labels.size(); ++i) {
    if (renumber[i] == -2) {
      renumber[i] = static_cast<Eigen::Index>(used_labels.size());
      used_labels.push_back(answer_labels[i]);
    }
  }
  std::vector<Eigen::Index> map;
  map.reserve(raw_map.size());
  for (Eigen::Index a : raw_map) map.push_back(renumber[static_cast<size_t>(a)]);
  return QueryModel(std::move(universe), Alphabet(std::move(used_labels)), std::move(map));
}

}  // namespace

QueryModel counting_query(const DatabaseUniverse& universe, const std::string& target_value) {
  Eigen::Index target = -1;
  for (size_t i = 0; i < universe.value_labels().size(); ++i) {
    if (universe.value_labels()[i] == target_value) target = static_cast<Eigen::Index>(i);
  }
  if (target < 0) throw Error("unknown target value: " + target_value);
  std::vector<std::string> answer_labels;
  for (int k = 0; k <= universe.u(); ++k) answer_labels.push_back(std::to_string(k));
  std::vector<Eigen::Index> raw_map(static_cast<size_t>(universe.size()));
  for (long long db = 0; db < universe.size(); ++db) {
    const auto tuple = universe.decode(db);
    raw_map[static_cast<size_t>(db)] =
        std::count(tuple.begin(), tuple.end(), static_cast<int>(target));
  }
  return make_query(universe, answer_labels, raw_map);
}

QueryModel argmax_query(const DatabaseUniverse& universe, const std::string& candidate) {
  // Value labels are "CITY:CANDIDATE"; a bare label counts as a vote for no one.
  std::vector<std::string> cities;          // order of first appearance
  std::vector<Eigen::Index> vote_city(universe.value_labels().size(), -1);
  for (size_t i = 0; i < universe.value_labels().size(); ++i) {
    const auto& lbl = universe.value_labels()[i];
    const auto sep = lbl.find(':');
    if (sep == std::string::npos) continue;
    const std::string city = lbl.substr(0, sep);
    if (lbl.substr(sep + 1) != candidate) continue;
    auto it = std::find(cities.begin(), cities.end(), city);
    if (it == cities.end()) {
      cities.push_back(city);
      it = cities.end() - 1;
    }
    vote_city[i] = static_cast<Eigen::Index>(it - cities.begin());
  }
  if (cities.empty()) throw Error("no city votes for candidate " + candidate);
  std::vector<Eigen::Index> raw_map(static_cast<size_t>(universe.size()));
  for (long long db = 0; db < universe.size(); ++db) {
    const auto tuple = universe.decode(db);
    std::vector<int> counts(cities.size(), 0);
    for (int value : tuple) {
      const Eigen::Index city = vote_city[static_cast<size_t>(value)];
      if (city >= 0) ++counts[static_cast<size_t>(city)];
    }
    // Ties go to the earliest-listed city.
    raw_map[static_cast<size_t>(db)] =
        std::max_element(counts.begin(), counts.end()) - counts.begin();
  }
  return make_query(universe, cities, raw_map);
}

AdjacencyGraph induced_adjacency(const QueryModel& q) {
  const DatabaseUniverse& uni = q.universe();
  if (uni.size() > kUniverseGuard) throw Error("universe too large for exhaustive enumeration");
  std::set<std::pair<Eigen::Index, Eigen::Index>> edge_set;
  for (long long idx = 0; idx < uni.size(); ++idx) {
    long long stride = 1;
    for (int pos = 0; pos < uni.u(); ++pos) {
      const int digit = static_cast<int>((idx / stride) % uni.v());
      for (int w = digit + 1; w < uni.v(); ++w) {
        const long long other = idx + static_cast<long long>(w - digit) * stride;
        const Eigen::Index y = q(idx);
        const Eigen::Index y2 = q(other);
        if (y != y2) edge_set.insert({std::min(y, y2), std::max(y, y2)});
      }
      stride *= uni.v();
    }
  }
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges(edge_set.begin(), edge_set.end());
  return AdjacencyGraph(q.answers(), std::move(edges), GraphKind::Custom);
}

ChannelMatrix compose(const QueryModel& q, const ChannelMatrix& h) {
  if (h.input != q.answers())
    throw AlphabetMismatch("mechanism input does not match query answers");
  const long long n = q.universe().size();
  Eigen::MatrixXd k(n, h.cols());
  for (long long x = 0; x < n; ++x) k.row(x) = h.p.row(q(x));
  return ChannelMatrix(q.universe().alphabet(), h.output, std::move(k));
}

PriorDistribution push_prior(const QueryModel& q, const PriorDistribution& on_databases) {
  if (on_databases.alphabet() != q.universe().alphabet())
    throw AlphabetMismatch("prior alphabet does not match universe");
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(q.answers().size());
  for (long long x = 0; x < q.universe().size(); ++x) probs(q(x)) += on_databases(x);
  return PriorDistribution(q.answers(), std::move(probs));
}

UtilityFigures utility_binary(const PriorDistribution& p, const ChannelMatrix& h) {
  const Eigen::MatrixXd j = joint(p, h);
  UtilityFigures f;
  f.remap.resize(static_cast<size_t>(h.cols()));
  double total = 0.0;
  for (Eigen::Index z = 0; z < h.cols(); ++z) {
    Eigen::Index best = 0;
    j.col(z).maxCoeff(&best);  // ties to lowest index
    f.remap[static_cast<size_t>(z)] = best;
    total += j(best, z);
  }
  f.utility = total;
  f.neg_log2_utility = -std::log2(total);
  return f;
}

double utility_general_gain(const PriorDistribution& p, const ChannelMatrix& h,
                            const Eigen::MatrixXd& gain,
                            const std::optional<std::vector<Eigen::Index>>& remap) {
  const Eigen::Index ny = h.rows();
  if (gain.rows() != ny || gain.cols() != ny)
    throw Error("gain table must be |Y| x |Y|");
  const Eigen::MatrixXd j = joint(p, h);
  double total = 0.0;
  for (Eigen::Index z = 0; z < h.cols(); ++z) {
    Eigen::Index choice;
    if (remap) {
      choice = remap->at(static_cast<size_t>(z));
      if (choice < 0 || choice >= ny) throw Error("remap value out of range");
    } else {
      // Per-column maximizing guess: remaps decompose column by column.
      (gain.transpose() * j.col(z)).maxCoeff(&choice);
    }
    total += j.col(z).dot(gain.col(choice));
  }
  return total;
}

QueryModel build_query(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw Error("empty query spec");
  if (parts[0] == "count") {
    if (parts.size() != 4) throw Error("expected count:U:V:TARGET");
    const int u = std::stoi(parts[1]);
    const int v = std::stoi(parts[2]);
    return counting_query(DatabaseUniverse::digits(u, v), parts[3]);
  }
  if (parts[0] == "file") {
    // One `db_label,answer_label` line per database.
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw Error("cannot read query file: " + path);
    std::vector<std::string> db_labels;
    std::vector<std::string> ans_labels;
    std::map<std::string, Eigen::Index> ans_index;
    std::vector<std::string> answers_in_order;
    std::string line;
    std::vector<std::pair<std::string, std::string>> rows;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto sep = line.find(',');
      if (sep == std::string::npos) throw Error("bad query line: " + line);
      rows.emplace_back(line.substr(0, sep), line.substr(sep + 1));
    }
    // The database labels must enumerate some Val^u in canonical order; we
    // accept any u, v with matching count and rely on the label order given.
    const long long n = static_cast<long long>(rows.size());
    // Find v: number of distinct first characters is unreliable; require the
    // caller to list v^u rows of a digits universe.
    int v = 0;
    int u = 0;
    for (int tryv = 2; tryv <= 36 && v == 0; ++tryv) {
      long long s = 1;
      int tu = 0;
      while (s < n) {
        s *= tryv;
        ++tu;
      }
      if (s == n) {
        v = tryv;
        u = tu;
        break;
      }
    }
    if (v == 0) throw Error("query file row count is not v^u for any small v");
    DatabaseUniverse uni = DatabaseUniverse::digits(u, v);
    std::vector<Eigen::Index> raw_map(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].first != uni.label(static_cast<long long>(i)))
        throw Error("query file databases must be in canonical order; saw " + rows[i].first);
      auto [it, inserted] = ans_index.try_emplace(
          rows[i].second, static_cast<Eigen::Index>(answers_in_order.size()));
      if (inserted) answers_in_order.push_back(rows[i].second);
      raw_map[i] = it->second;
    }
    return QueryModel(std::move(uni), Alphabet(std::move(answers_in_order)), std::move(raw_map));
  }
  throw Error("unknown query spec kind: " + parts[0]);
}

}  // namespace dpchan
