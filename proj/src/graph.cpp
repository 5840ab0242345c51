#include "dpchan/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace dpchan {

namespace {

long long parse_int(const std::string& s, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(std::string("malformed ") + what + ": " + s);
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

AdjacencyGraph::AdjacencyGraph(Alphabet nodes,
                               std::vector<std::pair<Eigen::Index, Eigen::Index>> edges,
                               GraphKind kind)
    : nodes_(std::move(nodes)), kind_(kind) {
  const Eigen::Index n = nodes_.size();
  std::set<std::pair<Eigen::Index, Eigen::Index>> unique;
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw Error("edge endpoint out of range");
    if (a == b) throw Error("self-loop not allowed");
    unique.insert({std::min(a, b), std::max(a, b)});
  }
  edges_.assign(unique.begin(), unique.end());

  // Eager all-pairs BFS so distance queries stay lock-free.
  std::vector<std::vector<Eigen::Index>> adj(static_cast<size_t>(n));
  for (auto [a, b] : edges_) {
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  dist_.setConstant(n, n, kUnreachable);
  for (Eigen::Index s = 0; s < n; ++s) {
    dist_(s, s) = 0;
    std::deque<Eigen::Index> queue{s};
    while (!queue.empty()) {
      const Eigen::Index cur = queue.front();
      queue.pop_front();
      for (Eigen::Index next : adj[static_cast<size_t>(cur)]) {
        if (dist_(s, next) == kUnreachable) {
          dist_(s, next) = dist_(s, cur) + 1;
          queue.push_back(next);
        }
      }
    }
  }
  connected_ = (dist_.array() != kUnreachable).all();
}

bool AdjacencyGraph::adjacent(Eigen::Index a, Eigen::Index b) const {
  return a != b && dist_(a, b) == 1;
}

int AdjacencyGraph::dist(Eigen::Index a, Eigen::Index b) const { return dist_(a, b); }

std::vector<Eigen::Index> AdjacencyGraph::border(Eigen::Index y, int d) const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < node_count(); ++i) {
    if (dist_(y, i) == d) out.push_back(i);
  }
  return out;
}

int AdjacencyGraph::eccentricity(Eigen::Index y) const {
  int ecc = 0;
  for (Eigen::Index i = 0; i < node_count(); ++i) {
    if (dist_(y, i) == kUnreachable) throw Error("eccentricity on a disconnected graph");
    ecc = std::max(ecc, dist_(y, i));
  }
  return ecc;
}

int AdjacencyGraph::diameter() const {
  int d = 0;
  for (Eigen::Index i = 0; i < node_count(); ++i) d = std::max(d, eccentricity(i));
  return d;
}

Automorphism::Automorphism(const AdjacencyGraph& graph, std::vector<Eigen::Index> perm)
    : perm_(std::move(perm)) {
  const Eigen::Index n = graph.node_count();
  if (static_cast<Eigen::Index>(perm_.size()) != n) throw NotAutomorphism("permutation length mismatch");
  std::vector<bool> hit(static_cast<size_t>(n), false);
  for (Eigen::Index img : perm_) {
    if (img < 0 || img >= n || hit[static_cast<size_t>(img)])
      throw NotAutomorphism("not a permutation");
    hit[static_cast<size_t>(img)] = true;
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (graph.adjacent(a, b) != graph.adjacent(perm_[static_cast<size_t>(a)], perm_[static_cast<size_t>(b)]))
        throw NotAutomorphism("edge set not preserved");
    }
  }
  Eigen::Index cur = 0;
  Eigen::Index visited = 0;
  do {
    cur = perm_[static_cast<size_t>(cur)];
    ++visited;
  } while (cur != 0 && visited <= n);
  single_orbit_ = (cur == 0 && visited == n);
}

AdjacencyGraph make_hamming(int u, int v) {
  if (u < 1) throw Error("hamming graph requires u >= 1");
  if (v < 2) throw Error("hamming graph requires v >= 2");
  long long n = 1;
  for (int i = 0; i < u; ++i) {
    n *= v;
    if (n > 1'000'000) throw Error("hamming graph too large");
  }
  std::vector<std::string> labels(static_cast<size_t>(n));
  for (long long idx = 0; idx < n; ++idx) {
    std::string label;
    long long rest = idx;
    for (int pos = 0; pos < u; ++pos) {
      const int digit = static_cast<int>(rest % v);
      if (!label.empty()) label += v > 10 ? "." : "";
      label += std::to_string(digit);
      rest /= v;
    }
    labels[static_cast<size_t>(idx)] = label;
  }
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (long long idx = 0; idx < n; ++idx) {
    long long stride = 1;
    for (int pos = 0; pos < u; ++pos) {
      const int digit = static_cast<int>((idx / stride) % v);
      for (int w = digit + 1; w < v; ++w) {
        edges.emplace_back(idx, idx + static_cast<long long>(w - digit) * stride);
      }
      stride *= v;
    }
  }
  AdjacencyGraph g(Alphabet(std::move(labels)), std::move(edges), GraphKind::Hamming);
  g.set_hamming_params(u, v);
  return g;
}

AdjacencyGraph make_ring(Eigen::Index n) {
  if (n < 1) throw Error("ring requires n >= 1");
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (Eigen::Index i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  if (n <= 2) edges.resize(static_cast<size_t>(n) - 1);  // avoid loop/duplicate
  return AdjacencyGraph(Alphabet::numbered(n), std::move(edges), GraphKind::Ring);
}

AdjacencyGraph make_clique(Eigen::Index n) {
  if (n < 1) throw Error("clique requires n >= 1");
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return AdjacencyGraph(Alphabet::numbered(n), std::move(edges), GraphKind::Clique);
}

AdjacencyGraph make_line(Eigen::Index n) {
  if (n < 1) throw Error("line requires n >= 1");
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (Eigen::Index i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return AdjacencyGraph(Alphabet::numbered(n), std::move(edges), GraphKind::Line);
}

AdjacencyGraph build_graph(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw Error("empty graph spec");
  const std::string& kind = parts[0];
  if (kind == "hamming") {
    if (parts.size() != 3) throw Error("expected hamming:U:V");
    return make_hamming(static_cast<int>(parse_int(parts[1], "u")),
                        static_cast<int>(parse_int(parts[2], "v")));
  }
  if (kind == "ring" || kind == "clique" || kind == "line") {
    if (parts.size() != 2) throw Error("expected " + kind + ":N");
    const Eigen::Index n = parse_int(parts[1], "node count");
    if (kind == "ring") return make_ring(n);
    if (kind == "clique") return make_clique(n);
    return make_line(n);
  }
  if (kind == "file") {
    if (parts.size() < 2) throw Error("expected file:PATH");
    return read_graph_file(spec.substr(5));
  }
  throw Error("unknown graph spec kind: " + kind);
}

std::optional<Automorphism> canonical_single_orbit_automorphism(const AdjacencyGraph& g) {
  if (g.kind() != GraphKind::Ring && g.kind() != GraphKind::Clique) return std::nullopt;
  const Eigen::Index n = g.node_count();
  std::vector<Eigen::Index> rot(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) rot[static_cast<size_t>(i)] = (i + 1) % n;
  return Automorphism(g, std::move(rot));
}

AdjacencyGraph augment_to_regular_borders(const AdjacencyGraph& g) {
  if (g.kind() == GraphKind::Ring) return g;
  if (g.kind() == GraphKind::Line) {
    const Eigen::Index n = g.node_count();
    std::vector<std::pair<Eigen::Index, Eigen::Index>> edges = g.edges();
    if (n > 2) edges.emplace_back(n - 1, 0);
    return AdjacencyGraph(g.nodes(), std::move(edges), GraphKind::Ring);
  }
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (Eigen::Index i = 0; i < g.node_count(); ++i)
    for (Eigen::Index j = i + 1; j < g.node_count(); ++j) edges.emplace_back(i, j);
  return AdjacencyGraph(g.nodes(), std::move(edges), GraphKind::Clique);
}

AdjacencyGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read graph file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("nodes:", 0) != 0)
    throw Error("graph file must start with 'nodes: l1,l2,...'");
  std::string list = line.substr(6);
  list.erase(0, list.find_first_not_of(" \t"));
  Alphabet nodes((split(list, ',')));
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto sep = line.find(" -- ");
    if (sep == std::string::npos) throw Error("bad edge line: " + line);
    const Eigen::Index a = nodes.index_of(line.substr(0, sep));
    const Eigen::Index b = nodes.index_of(line.substr(sep + 4));
    if (a < 0 || b < 0) throw Error("unknown node in edge line: " + line);
    edges.emplace_back(a, b);
  }
  return AdjacencyGraph(std::move(nodes), std::move(edges), GraphKind::Custom);
}

}  // namespace dpchan
