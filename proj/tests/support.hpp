#pragma once

// Fixtures, generators and brute-force oracles shared by the test binaries.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "scpm/scpm.hpp"

namespace scpm::testing {

inline std::string data_path(const std::string& name) { return std::string(SCPM_TEST_DATA_DIR) + "/" + name; }

inline AttributedGraph load_toy() {
  std::ifstream edges(data_path("toy_edges.txt"));
  std::ifstream attrs(data_path("toy_attributes.txt"));
  return load_graph(edges, attrs);
}

inline VertexSet ids(const AttributedGraph& g, std::initializer_list<std::uint64_t> external) {
  VertexSet out;
  for (auto e : external) out.push_back(*g.find_vertex(e));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::uint64_t> external(const AttributedGraph& g, const VertexSet& vs) {
  std::vector<std::uint64_t> out;
  for (auto v : vs) out.push_back(g.external_id(v));
  return out;
}

struct RandomGraphSpec {
  std::size_t n = 20;
  double edge_prob = 0.3;
  std::size_t attributes = 0;
  double attribute_prob = 0.5;
};

// Vertices 0..n-1 all present; attribute tokens a0, a1, ...
inline AttributedGraph random_graph(const RandomGraphSpec& spec, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(spec.edge_prob), attr(spec.attribute_prob);
  GraphBuilder b;
  for (std::size_t v = 0; v < spec.n; ++v) b.add_vertex(v);
  for (std::size_t u = 0; u < spec.n; ++u)
    for (std::size_t v = u + 1; v < spec.n; ++v)
      if (edge(rng)) b.add_edge(u, v);
  for (std::size_t a = 0; a < spec.attributes; ++a)
    for (std::size_t v = 0; v < spec.n; ++v)
      if (attr(rng)) b.add_attribute(v, "a" + std::to_string(a));
  return b.build();
}

// Graph on vertices 0..n-1 from a bitmask over the n(n-1)/2 pairs (u < v,
// row-major).
inline AttributedGraph graph_from_mask(std::size_t n, std::uint64_t mask) {
  GraphBuilder b;
  for (std::size_t v = 0; v < n; ++v) b.add_vertex(v);
  std::size_t bit = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) b.add_edge(u, v);
  return b.build();
}

// Same pair encoding, built straight into a view (members 0..n-1).
inline GraphView view_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<std::vector<VertexId>> adj(n);
  std::size_t bit = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) {
        adj[u].push_back(static_cast<VertexId>(v));
        adj[v].push_back(static_cast<VertexId>(u));
      }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  VertexSet members(n);
  for (std::size_t v = 0; v < n; ++v) members[v] = static_cast<VertexId>(v);
  return GraphView(std::move(members), std::move(adj));
}

// ---------------------------------------------------------------------------
// Brute-force quasi-clique oracle over all subsets of a view (<= 20 vertices).

inline std::vector<std::uint32_t> local_masks(const GraphView& view) {
  std::vector<std::uint32_t> adj(view.size(), 0);
  for (std::size_t i = 0; i < view.size(); ++i)
    for (auto j : view.local_neighbors(i)) adj[i] |= 1u << j;
  return adj;
}

// need[k]: minimum internal degree for a dense set of k vertices, through the
// same exact rational the engine uses.
inline std::vector<std::size_t> degree_needs(std::size_t n, double gamma, std::size_t min_size) {
  const QuasiCliqueParams params(gamma, min_size);
  std::vector<std::size_t> need(n + 1, 0);
  for (std::size_t k = 1; k <= n; ++k) need[k] = params.degree_floor(k);
  return need;
}

inline bool dense_mask(const std::vector<std::uint32_t>& adj, std::uint32_t s,
                       const std::vector<std::size_t>& need, std::size_t min_size) {
  const auto size = static_cast<std::size_t>(std::popcount(s));
  if (size < min_size) return false;
  for (std::uint32_t rest = s; rest; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    if (static_cast<std::size_t>(std::popcount(adj[v] & s)) < need[size]) return false;
  }
  return true;
}

// Maximal dense subsets (no dense proper superset), sorted by ranks_before.
inline std::vector<QuasiClique> brute_force_maximal(const GraphView& view, double gamma,
                                                    std::size_t min_size) {
  const std::size_t n = view.size();
  const std::uint32_t full = (1u << n) - 1;
  const auto adj = local_masks(view);
  std::vector<char> dense(full + 1, 0), above(full + 1, 0);
  const auto need = degree_needs(n, gamma, min_size);
  for (std::uint32_t s = 1; s <= full; ++s) dense[s] = dense_mask(adj, s, need, min_size);
  // above[s]: some proper superset of s is dense. Supersets have larger masks.
  for (std::uint32_t s = full; s-- > 0;)
    for (std::uint32_t out = full & ~s; out; out &= out - 1) {
      const std::uint32_t t = s | (out & -out);
      if (dense[t] || above[t]) {
        above[s] = 1;
        break;
      }
    }
  std::vector<QuasiClique> result;
  for (std::uint32_t s = 1; s <= full; ++s) {
    if (!dense[s] || above[s]) continue;
    QuasiClique q;
    q.min_degree = n;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      q.vertices.push_back(view.member(v));
      q.min_degree = std::min<std::size_t>(q.min_degree, std::popcount(adj[v] & s));
    }
    std::sort(q.vertices.begin(), q.vertices.end());
    result.push_back(std::move(q));
  }
  std::sort(result.begin(), result.end(), ranks_before);
  return result;
}

inline VertexSet union_of(const std::vector<QuasiClique>& qs) {
  VertexSet out;
  for (const auto& q : qs) out.insert(out.end(), q.vertices.begin(), q.vertices.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic instance with planted dense groups sharing one attribute.

struct PlantedSpec {
  std::size_t n = 2000;
  std::size_t groups = 20;
  std::size_t group_size = 12;
  double group_gamma = 0.6;
  double background_degree = 4.0;
  std::size_t extra_tagged = 60;  // untagged-group vertices that also carry the shared attribute
  std::size_t noise_attributes = 50;
  double noise_prob = 0.25;
  std::uint64_t seed = 7;
};

struct PlantedInstance {
  std::string edges;       // edge-list file text
  std::string attributes;  // attribute file text
  std::vector<std::vector<std::uint64_t>> groups;
};

inline PlantedInstance planted_instance(const PlantedSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<std::uint64_t> order(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::bernoulli_distribution background(spec.background_degree / static_cast<double>(spec.n - 1));
  for (std::uint64_t u = 1; u <= spec.n; ++u)
    for (std::uint64_t v = u + 1; v <= spec.n; ++v)
      if (background(rng)) edges.emplace_back(u, v);

  PlantedInstance out;
  const std::size_t need =
      QuasiCliqueParams(spec.group_gamma, 2).degree_floor(spec.group_size);
  std::bernoulli_distribution inner(0.55);
  for (std::size_t g = 0; g < spec.groups; ++g) {
    std::vector<std::uint64_t> members(order.begin() + g * spec.group_size,
                                       order.begin() + (g + 1) * spec.group_size);
    std::sort(members.begin(), members.end());
    const std::size_t m = members.size();
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    std::vector<std::size_t> deg(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (inner(rng)) adj[i][j] = adj[j][i] = 1, ++deg[i], ++deg[j];
    // Top up low-degree members until every member reaches the floor.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < m; ++i) {
        while (deg[i] < need) {
          std::size_t best = m;
          for (std::size_t j = 0; j < m; ++j)
            if (j != i && !adj[i][j] && (best == m || deg[j] < deg[best])) best = j;
          adj[i][best] = adj[best][i] = 1;
          ++deg[i], ++deg[best];
          changed = true;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (adj[i][j]) edges.emplace_back(members[i], members[j]);
    out.groups.push_back(members);
  }

  std::ostringstream e;
  e << "# planted instance, seed " << spec.seed << "\n";
  for (auto [u, v] : edges) e << u << ' ' << v << '\n';
  out.edges = e.str();

  std::vector<std::vector<std::string>> tags(spec.n + 1);
  for (const auto& group : out.groups)
    for (auto v : group) tags[v].push_back("planted");
  for (std::size_t i = spec.groups * spec.group_size;
       i < std::min(spec.n, spec.groups * spec.group_size + spec.extra_tagged); ++i)
    tags[order[i]].push_back("planted");
  std::bernoulli_distribution noise(spec.noise_prob);
  for (std::size_t a = 0; a < spec.noise_attributes; ++a)
    for (std::uint64_t v = 1; v <= spec.n; ++v)
      if (noise(rng)) tags[v].push_back("noise" + std::to_string(a));
  std::ostringstream a;
  for (std::uint64_t v = 1; v <= spec.n; ++v) {
    if (tags[v].empty()) continue;
    a << v;
    for (const auto& t : tags[v]) a << ' ' << t;
    a << '\n';
  }
  out.attributes = a.str();
  return out;
}

inline AttributedGraph load_text(const std::string& edges, const std::string& attributes) {
  std::istringstream e(edges), a(attributes);
  return load_graph(e, a);
}

}  // namespace scpm::testing
