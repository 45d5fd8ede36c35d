#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace scpm {

using VertexId = std::uint32_t;
using AttributeId = std::uint32_t;
using VertexSet = std::vector<VertexId>;

// Raised by the loaders; carries the 1-based line number of the offending line.
class InputFormatError : public std::runtime_error {
 public:
  InputFormatError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Bidirectional map between attribute tokens and dense ids, ids assigned in
// first-seen order.
class AttributeDictionary {
 public:
  AttributeId intern(std::string_view token) {
    auto it = ids_.find(std::string(token));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<AttributeId>(tokens_.size());
    tokens_.emplace_back(token);
    ids_.emplace(tokens_.back(), id);
    return id;
  }

  std::optional<AttributeId> find(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& token(AttributeId id) const { return tokens_.at(id); }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool contains(AttributeId id) const noexcept { return id < tokens_.size(); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, AttributeId> ids_;
};

struct LoadStats {
  std::size_t edge_lines = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t attribute_lines = 0;
};

/// Immutable undirected attributed graph G = (V, E, A, F).
///
/// Vertices are dense ids 0..|V|-1. The external (file) id of every vertex is
/// kept so output can be mapped back; dense ids preserve the ascending order of
/// external ids.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  /// Takes ownership of prepared adjacency and attribute lists and validates
  /// every structural invariant. Throws std::invalid_argument on violation.
  AttributedGraph(std::vector<std::vector<VertexId>> adjacency,
                  std::vector<std::vector<AttributeId>> attributes, AttributeDictionary dictionary,
                  std::vector<std::uint64_t> external_ids = {})
      : adjacency_(std::move(adjacency)),
        attributes_(std::move(attributes)),
        dictionary_(std::move(dictionary)),
        external_ids_(std::move(external_ids)) {
    const std::size_t n = adjacency_.size();
    if (attributes_.empty()) attributes_.resize(n);
    if (external_ids_.empty()) {
      external_ids_.resize(n);
      for (std::size_t v = 0; v < n; ++v) external_ids_[v] = v;
    }
    if (attributes_.size() != n || external_ids_.size() != n)
      throw std::invalid_argument("attributed graph: per-vertex arrays disagree on |V|");
    if (!std::is_sorted(external_ids_.begin(), external_ids_.end()) ||
        std::adjacent_find(external_ids_.begin(), external_ids_.end()) != external_ids_.end())
      throw std::invalid_argument("attributed graph: external ids must be strictly ascending");
    for (std::size_t v = 0; v < n; ++v) {
      const auto& nbrs = adjacency_[v];
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (nbrs[i] >= n) throw std::invalid_argument("attributed graph: neighbor out of range");
        if (nbrs[i] == v) throw std::invalid_argument("attributed graph: self-loop");
        if (i > 0 && nbrs[i - 1] >= nbrs[i])
          throw std::invalid_argument("attributed graph: neighbor list not strictly sorted");
        const auto& back = adjacency_[nbrs[i]];
        if (!std::binary_search(back.begin(), back.end(), static_cast<VertexId>(v)))
          throw std::invalid_argument("attributed graph: adjacency not symmetric");
      }
      edge_endpoints_ += nbrs.size();
      const auto& attrs = attributes_[v];
      for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (!dictionary_.contains(attrs[i]))
          throw std::invalid_argument("attributed graph: unknown attribute id");
        if (i > 0 && attrs[i - 1] >= attrs[i])
          throw std::invalid_argument("attributed graph: attribute list not strictly sorted");
      }
    }
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_endpoints_ / 2; }
  std::size_t attribute_count() const noexcept { return dictionary_.size(); }

  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
  std::span<const AttributeId> attributes(VertexId v) const { return attributes_[v]; }

  bool has_edge(VertexId u, VertexId v) const {
    const auto& nbrs = adjacency_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  const AttributeDictionary& dictionary() const noexcept { return dictionary_; }
  std::uint64_t external_id(VertexId v) const { return external_ids_[v]; }

  std::optional<VertexId> find_vertex(std::uint64_t external) const {
    auto it = std::lower_bound(external_ids_.begin(), external_ids_.end(), external);
    if (it == external_ids_.end() || *it != external) return std::nullopt;
    return static_cast<VertexId>(it - external_ids_.begin());
  }

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::vector<AttributeId>> attributes_;
  AttributeDictionary dictionary_;
  std::vector<std::uint64_t> external_ids_;
  std::size_t edge_endpoints_ = 0;
};

/// Accumulates edges and attributes keyed by external vertex ids and produces a
/// validated AttributedGraph. Duplicate edges collapse, self-loops are counted
/// and dropped.
class GraphBuilder {
 public:
  void add_vertex(std::uint64_t v) { ensure(v); }

  void add_edge(std::uint64_t u, std::uint64_t v) {
    ++stats_.edge_lines;
    ensure(u);
    ensure(v);
    if (u == v) {
      ++stats_.self_loops_dropped;
      return;
    }
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }

  void add_attribute(std::uint64_t v, std::string_view token) {
    ensure(v);
    vertex_attributes_[v].push_back(dictionary_.intern(token));
  }

  const LoadStats& stats() const noexcept { return stats_; }

  /// Consumes the accumulated state; the builder is empty afterwards.
  AttributedGraph build(LoadStats* stats_out = nullptr) {
    std::vector<std::uint64_t> ids;
    ids.reserve(known_.size());
    ids.assign(known_.begin(), known_.end());
    std::sort(ids.begin(), ids.end());
    const std::size_t n = ids.size();
    if (n > std::numeric_limits<VertexId>::max())
      throw std::overflow_error("graph builder: too many vertices");
    auto dense = [&](std::uint64_t ext) {
      return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), ext) - ids.begin());
    };

    std::sort(edges_.begin(), edges_.end());
    const auto unique_end = std::unique(edges_.begin(), edges_.end());
    stats_.duplicate_edges += static_cast<std::size_t>(edges_.end() - unique_end);
    edges_.erase(unique_end, edges_.end());

    std::vector<std::vector<VertexId>> adjacency(n);
    for (const auto& [u, v] : edges_) {
      const VertexId du = dense(u), dv = dense(v);
      adjacency[du].push_back(dv);
      adjacency[dv].push_back(du);
    }
    for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());

    std::vector<std::vector<AttributeId>> attributes(n);
    for (auto& [ext, attrs] : vertex_attributes_) {
      std::sort(attrs.begin(), attrs.end());
      attrs.erase(std::unique(attrs.begin(), attrs.end()), attrs.end());
      attributes[dense(ext)] = std::move(attrs);
    }
    AttributedGraph g(std::move(adjacency), std::move(attributes), std::move(dictionary_),
                      std::move(ids));
    if (stats_out) *stats_out = stats_;
    *this = GraphBuilder{};
    return g;
  }

 private:
  void ensure(std::uint64_t v) { known_.insert(v); }

  std::unordered_set<std::uint64_t> known_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges_;
  std::unordered_map<std::uint64_t, std::vector<AttributeId>> vertex_attributes_;
  AttributeDictionary dictionary_;
  LoadStats stats_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_vertex(std::string_view tok, const std::string& source,
                                  std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw InputFormatError(source, line, "vertex identifier overflow: '" + std::string(tok) + "'");
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw InputFormatError(source, line, "expected non-negative integer, got '" +
                                             std::string(tok) + "'");
  return value;
}

template <class Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    fn(number, tokens);
  }
}

}  // namespace detail

/// Reads an edge list and an attribute list (formats documented in README).
/// Throws InputFormatError on malformed content.
inline AttributedGraph load_graph(std::istream& edges, std::istream& attributes, LoadStats& stats,
                                  const std::string& edge_name = "edges",
                                  const std::string& attribute_name = "attributes") {
  GraphBuilder builder;
  detail::for_each_data_line(edges, [&](std::size_t line, const auto& tokens) {
    if (tokens.size() != 2)
      throw InputFormatError(edge_name, line, "expected two vertex ids per edge line");
    builder.add_edge(detail::parse_vertex(tokens[0], edge_name, line),
                     detail::parse_vertex(tokens[1], edge_name, line));
  });
  std::size_t attribute_lines = 0;
  detail::for_each_data_line(attributes, [&](std::size_t line, const auto& tokens) {
    ++attribute_lines;
    const auto v = detail::parse_vertex(tokens[0], attribute_name, line);
    builder.add_vertex(v);
    for (std::size_t i = 1; i < tokens.size(); ++i) builder.add_attribute(v, tokens[i]);
  });
  auto g = builder.build(&stats);
  stats.attribute_lines = attribute_lines;
  return g;
}

inline AttributedGraph load_graph(std::istream& edges, std::istream& attributes) {
  LoadStats stats;
  return load_graph(edges, attributes, stats);
}

// Degree distribution p(alpha) over all vertices, isolated ones included.
class DegreeHistogram {
 public:
  DegreeHistogram() = default;
  explicit DegreeHistogram(std::vector<std::size_t> counts) : counts_(std::move(counts)) {
    while (counts_.size() > 1 && counts_.back() == 0) counts_.pop_back();
    for (auto c : counts_) total_ += c;
  }

  std::size_t max_degree() const noexcept { return counts_.empty() ? 0 : counts_.size() - 1; }
  std::size_t vertex_count() const noexcept { return total_; }

  std::size_t count(std::size_t degree) const noexcept {
    return degree < counts_.size() ? counts_[degree] : 0;
  }

  double probability(std::size_t degree) const noexcept {
    if (total_ == 0) return 0.0;
    return static_cast<double>(count(degree)) / static_cast<double>(total_);
  }

  std::span<const std::size_t> counts() const noexcept { return counts_; }

 private:
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

inline DegreeHistogram degree_distribution(const AttributedGraph& g) {
  std::vector<std::size_t> counts(1, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto d = g.degree(v);
    if (d >= counts.size()) counts.resize(d + 1, 0);
    ++counts[d];
  }
  return DegreeHistogram(std::move(counts));
}

/// Induced subgraph G(S) over a sorted vertex subset. Local index i refers to
/// members()[i]; local adjacency lists hold local indices, sorted ascending.
class GraphView {
 public:
  GraphView() = default;
  GraphView(VertexSet members, std::vector<std::vector<VertexId>> local_adjacency)
      : members_(std::move(members)), adjacency_(std::move(local_adjacency)) {}

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const VertexSet& members() const noexcept { return members_; }
  VertexId member(std::size_t local) const { return members_[local]; }
  std::span<const VertexId> local_neighbors(std::size_t local) const { return adjacency_[local]; }
  std::size_t degree(std::size_t local) const { return adjacency_[local].size(); }

  std::size_t edge_count() const noexcept {
    std::size_t ends = 0;
    for (const auto& a : adjacency_) ends += a.size();
    return ends / 2;
  }

  std::optional<std::size_t> local_index(VertexId global) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), global);
    if (it == members_.end() || *it != global) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
  }

  /// View induced by a sorted subset of local indices.
  GraphView subview(std::span<const VertexId> locals) const {
    std::vector<std::int64_t> position(members_.size(), -1);
    for (std::size_t i = 0; i < locals.size(); ++i) position[locals[i]] = static_cast<std::int64_t>(i);
    VertexSet members;
    members.reserve(locals.size());
    std::vector<std::vector<VertexId>> adjacency(locals.size());
    for (std::size_t i = 0; i < locals.size(); ++i) {
      members.push_back(members_[locals[i]]);
      for (auto u : adjacency_[locals[i]])
        if (position[u] >= 0) adjacency[i].push_back(static_cast<VertexId>(position[u]));
    }
    return GraphView(std::move(members), std::move(adjacency));
  }

  bool operator==(const GraphView&) const = default;

 private:
  VertexSet members_;
  std::vector<std::vector<VertexId>> adjacency_;
};

/// Builds G(S) for a sorted, duplicate-free subset of V. Throws
/// std::out_of_range for a member outside V and std::invalid_argument for an
/// unsorted member list.
inline GraphView induced_view(const AttributedGraph& g, std::span<const VertexId> members) {
  const std::size_t n = g.vertex_count();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= n) throw std::out_of_range("induced_view: vertex not in graph");
    if (i > 0 && members[i - 1] >= members[i])
      throw std::invalid_argument("induced_view: members must be strictly ascending");
  }
  std::vector<std::vector<VertexId>> adjacency(members.size());
  // Dense position table when the view is a sizeable fraction of V, binary
  // search otherwise.
  if (members.size() * 16 >= n) {
    std::vector<std::int64_t> position(n, -1);
    for (std::size_t i = 0; i < members.size(); ++i) position[members[i]] = static_cast<std::int64_t>(i);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (auto u : g.neighbors(members[i]))
        if (position[u] >= 0) adjacency[i].push_back(static_cast<VertexId>(position[u]));
  } else {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (auto u : g.neighbors(members[i])) {
        auto it = std::lower_bound(members.begin(), members.end(), u);
        if (it != members.end() && *it == u)
          adjacency[i].push_back(static_cast<VertexId>(it - members.begin()));
      }
  }
  return GraphView(VertexSet(members.begin(), members.end()), std::move(adjacency));
}

inline GraphView full_view(const AttributedGraph& g) {
  VertexSet all(g.vertex_count());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<VertexId>(v);
  return induced_view(g, all);
}

}  // namespace scpm
