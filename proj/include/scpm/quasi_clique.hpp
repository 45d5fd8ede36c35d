#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scpm/graph.hpp"

namespace scpm {

/// Density threshold held as an exact fraction so that degree floors such as
/// ceil(0.6 * 5) = 3 are computed without floating-point drift.
class Density {
 public:
  constexpr Density() = default;
  constexpr Density(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("density: zero denominator");
    const auto g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  /// Nearest fraction with denominator 10^9, reduced.
  static Density from_double(double value) {
    if (!(value > 0.0) || value > 1.0 + 1e-12)
      throw std::invalid_argument("density must lie in (0, 1]");
    constexpr std::uint64_t scale = 1'000'000'000;
    auto num = static_cast<std::uint64_t>(std::llround(value * static_cast<double>(scale)));
    num = std::clamp<std::uint64_t>(num, 1, scale);
    return Density(num, scale);
  }

  constexpr std::uint64_t numerator() const noexcept { return num_; }
  constexpr std::uint64_t denominator() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// ceil(gamma * k)
  constexpr std::size_t ceil_times(std::size_t k) const noexcept {
    return static_cast<std::size_t>((num_ * k + den_ - 1) / den_);
  }

  /// Largest k with gamma * k <= degree.
  constexpr std::size_t max_span(std::size_t degree) const noexcept {
    return static_cast<std::size_t>(degree * den_ / num_);
  }

  constexpr bool at_least_half() const noexcept { return 2 * num_ >= den_; }
  constexpr bool is_one() const noexcept { return num_ == den_; }

  constexpr bool operator==(const Density&) const = default;

 private:
  std::uint64_t num_ = 1;
  std::uint64_t den_ = 1;
};

struct QuasiCliqueParams {
  Density gamma;
  std::size_t min_size = 2;

  QuasiCliqueParams() = default;
  QuasiCliqueParams(Density g, std::size_t size) : gamma(g), min_size(size) {
    if (gamma.numerator() == 0 || gamma.numerator() > gamma.denominator())
      throw std::invalid_argument("gamma_min must lie in (0, 1]");
    if (min_size < 2) throw std::invalid_argument("min_size must be at least 2");
  }
  QuasiCliqueParams(double g, std::size_t size) : QuasiCliqueParams(Density::from_double(g), size) {}

  /// Minimum internal degree of every member of a set of `size` vertices.
  std::size_t degree_floor(std::size_t size) const noexcept {
    return size <= 1 ? 0 : gamma.ceil_times(size - 1);
  }

  /// z: degree every quasi-clique member needs, whatever the set size.
  std::size_t member_degree_floor() const noexcept { return degree_floor(min_size); }
};

enum class SearchStrategy { breadth_first, depth_first };

struct QuasiClique {
  VertexSet vertices;          // sorted, view-global ids
  std::size_t min_degree = 0;  // min over members of internal degree

  std::size_t size() const noexcept { return vertices.size(); }
  double density() const noexcept {
    return vertices.size() < 2 ? 1.0
                               : static_cast<double>(min_degree) / static_cast<double>(vertices.size() - 1);
  }
  bool operator==(const QuasiClique&) const = default;
};

/// Pattern ranking: size desc, density desc, vertex list asc.
inline bool ranks_before(const QuasiClique& a, const QuasiClique& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  // Same size, so density order is min-degree order.
  if (a.min_degree != b.min_degree) return a.min_degree > b.min_degree;
  return a.vertices < b.vertices;
}

class EngineOverflow : public std::runtime_error {
 public:
  explicit EngineOverflow(std::uint64_t limit)
      : std::runtime_error("quasi-clique search exceeded " + std::to_string(limit) +
                           " candidate expansions") {}
};

struct SearchOptions {
  std::uint64_t max_candidates = 50'000'000;
  // Receives the number of candidates processed; may be null.
  std::uint64_t* candidate_counter = nullptr;
};

namespace detail {

// Graph relabelled into canonical search order: ascending degree, ties by the
// original local index.
struct OrderedGraph {
  std::vector<std::vector<VertexId>> adj;
  VertexSet to_global;

  std::size_t size() const noexcept { return adj.size(); }
};

inline OrderedGraph canonical_order(const GraphView& view) {
  const std::size_t n = view.size();
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return view.degree(a) < view.degree(b); });
  std::vector<VertexId> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<VertexId>(i);
  OrderedGraph out;
  out.adj.resize(n);
  out.to_global.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto old = order[i];
    out.to_global[i] = view.member(old);
    auto& nbrs = out.adj[i];
    for (auto u : view.local_neighbors(old)) nbrs.push_back(rank[u]);
    std::sort(nbrs.begin(), nbrs.end());
  }
  return out;
}

struct Candidate {
  std::vector<VertexId> chosen;
  std::vector<VertexId> ext;
};

/// Set-enumeration-tree search over an OrderedGraph. The sink decides what a
/// reported dense set means (coverage, enumeration, ranking, existence).
///
/// Sink interface:
///   std::size_t size_floor() const;           smallest set size still of interest
///   bool skip_covered(span chosen, span ext); coverage pruning hook
///   void report(VertexSet&& set, std::size_t min_degree);
///   bool done() const;                        stop the whole search
class CandidateSearch {
 public:
  CandidateSearch(const OrderedGraph& graph, const QuasiCliqueParams& params,
                  const SearchOptions& options, std::uint64_t& counter)
      : g_(graph),
        params_(params),
        options_(options),
        counter_(counter),
        in_u_(graph.size(), 0),
        near_(graph.size(), 0),
        deg_(graph.size(), 0),
        outside_links_(graph.size(), 0) {}

  template <class Sink>
  void run(Candidate root, SearchStrategy strategy, Sink& sink) {
    restrict_to_diameter(root);
    if (strategy == SearchStrategy::depth_first) {
      std::vector<Candidate> stack;
      stack.push_back(std::move(root));
      std::vector<Candidate> children;
      while (!stack.empty() && !sink.done()) {
        Candidate c = std::move(stack.back());
        stack.pop_back();
        children.clear();
        expand(c, sink, children);
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
      }
    } else {
      std::deque<Candidate> queue;
      queue.push_back(std::move(root));
      std::vector<Candidate> children;
      while (!queue.empty() && !sink.done()) {
        Candidate c = std::move(queue.front());
        queue.pop_front();
        children.clear();
        expand(c, sink, children);
        for (auto& child : children) queue.push_back(std::move(child));
      }
    }
  }

  // Internal degree of every member of `set` (indexed like `set`).
  std::vector<std::size_t> internal_degrees(std::span<const VertexId> set) {
    const auto s = next_stamp();
    for (auto v : set) in_u_[v] = s;
    std::vector<std::size_t> out(set.size(), 0);
    for (std::size_t i = 0; i < set.size(); ++i)
      for (auto u : g_.adj[set[i]])
        if (in_u_[u] == s) ++out[i];
    return out;
  }

  bool is_dense(std::span<const VertexId> set, std::size_t* min_degree = nullptr) {
    if (set.size() < params_.min_size) return false;
    const auto degs = internal_degrees(set);
    const auto lowest = *std::min_element(degs.begin(), degs.end());
    if (min_degree) *min_degree = lowest;
    return lowest >= params_.degree_floor(set.size());
  }

  /// True when some single vertex outside `set` keeps set + {w} gamma-dense.
  bool extends_by_one(std::span<const VertexId> set) {
    const auto s = next_stamp();
    for (auto v : set) in_u_[v] = s;
    const std::size_t need = params_.degree_floor(set.size() + 1);
    std::vector<std::size_t> inner(set.size(), 0);
    std::vector<VertexId> touched;
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (auto u : g_.adj[set[i]]) {
        if (in_u_[u] == s) {
          ++inner[i];
        } else {
          if (outside_links_[u]++ == 0) touched.push_back(u);
        }
      }
    }
    bool found = false;
    for (auto w : touched) {
      if (!found && outside_links_[w] >= need) {
        bool ok = true;
        for (std::size_t i = 0; i < set.size() && ok; ++i) {
          const auto& nbrs = g_.adj[set[i]];
          const bool adjacent = std::binary_search(nbrs.begin(), nbrs.end(), w);
          ok = inner[i] + (adjacent ? 1 : 0) >= need;
        }
        found = ok;
      }
      outside_links_[w] = 0;
    }
    return found;
  }

  const OrderedGraph& graph() const noexcept { return g_; }

 private:
  std::uint32_t next_stamp() {
    if (++stamp_ == 0) {
      std::fill(in_u_.begin(), in_u_.end(), 0);
      stamp_ = 1;
    }
    return stamp_;
  }

  // For gamma >= 1/2 every quasi-clique has diameter <= 2 (diameter 1 when
  // gamma = 1), so extensions must be that close to every chosen vertex.
  void restrict_to_diameter(Candidate& c) {
    if (!params_.gamma.at_least_half()) return;
    const auto s = next_stamp();
    for (auto v : c.chosen) in_u_[v] = s;
    for (auto v : c.ext) in_u_[v] = s;
    for (auto x : c.chosen) keep_near(x, c.ext.begin(), c.ext);
  }

  // Filters ext[from..] down to vertices within reach of x inside the current
  // U (marked with the current stamp in in_u_).
  void keep_near(VertexId x, std::vector<VertexId>::iterator from, std::vector<VertexId>& ext) {
    const auto s = stamp_;
    const auto ns = ++near_stamp_ == 0 ? (reset_near(), near_stamp_) : near_stamp_;
    for (auto u : g_.adj[x])
      if (in_u_[u] == s) near_[u] = ns;
    const bool clique_only = params_.gamma.is_one();
    auto keep = [&](VertexId w) {
      if (near_[w] == ns) return true;
      if (clique_only) return false;
      for (auto y : g_.adj[w])
        if (near_[y] == ns) return true;
      return false;
    };
    ext.erase(std::remove_if(from, ext.end(), [&](VertexId w) { return !keep(w); }), ext.end());
  }

  void reset_near() {
    std::fill(near_.begin(), near_.end(), 0);
    near_stamp_ = 1;
  }

  template <class Sink>
  void expand(Candidate& c, Sink& sink, std::vector<Candidate>& children) {
    if (++counter_ > options_.max_candidates) throw EngineOverflow(options_.max_candidates);
    auto& chosen = c.chosen;
    auto& ext = c.ext;

    // Degree-based pruning of the candidate and its extensions, to fixpoint.
    std::uint32_t s = 0;
    for (;;) {
      const std::size_t lower = std::max({params_.min_size, chosen.size(), sink.size_floor()});
      const std::size_t total = chosen.size() + ext.size();
      if (total < lower) return;
      if (sink.skip_covered(chosen, ext)) return;
      const std::size_t need = params_.degree_floor(lower);
      s = next_stamp();
      for (auto v : chosen) in_u_[v] = s;
      for (auto v : ext) in_u_[v] = s;
      auto degree_in_u = [&](VertexId v) {
        std::size_t d = 0;
        for (auto u : g_.adj[v])
          if (in_u_[u] == s) ++d;
        deg_[v] = d;
        return d;
      };
      std::size_t upper = total;
      for (auto v : chosen) {
        const auto d = degree_in_u(v);
        if (d < need) return;
        upper = std::min(upper, params_.gamma.max_span(d) + 1);
      }
      if (upper < lower) return;
      const auto before = ext.size();
      ext.erase(std::remove_if(ext.begin(), ext.end(),
                               [&](VertexId u) { return degree_in_u(u) < need; }),
                ext.end());
      if (ext.size() == before) break;
    }

    // Lookahead: the whole candidate is already dense.
    const std::size_t total = chosen.size() + ext.size();
    if (total >= params_.min_size) {
      const std::size_t floor_u = params_.degree_floor(total);
      std::size_t lowest = std::numeric_limits<std::size_t>::max();
      for (auto v : chosen) lowest = std::min(lowest, deg_[v]);
      for (auto v : ext) lowest = std::min(lowest, deg_[v]);
      if (lowest >= floor_u) {
        VertexSet all;
        all.reserve(total);
        all.insert(all.end(), chosen.begin(), chosen.end());
        all.insert(all.end(), ext.begin(), ext.end());
        std::sort(all.begin(), all.end());
        sink.report(std::move(all), lowest);
        return;
      }
    }

    if (chosen.size() >= std::max(params_.min_size, sink.size_floor())) {
      std::size_t lowest = 0;
      if (is_dense(chosen, &lowest)) {
        VertexSet x(chosen.begin(), chosen.end());
        std::sort(x.begin(), x.end());
        sink.report(std::move(x), lowest);
        if (sink.done()) return;
      }
      // is_dense reused the stamp arrays; restore the U marking.
      s = next_stamp();
      for (auto v : chosen) in_u_[v] = s;
      for (auto v : ext) in_u_[v] = s;
    }

    const bool diameter_bound = params_.gamma.at_least_half();
    children.reserve(ext.size());
    for (std::size_t i = 0; i < ext.size(); ++i) {
      Candidate child;
      child.chosen.reserve(chosen.size() + 1);
      child.chosen = chosen;
      child.chosen.push_back(ext[i]);
      child.ext.assign(ext.begin() + static_cast<std::ptrdiff_t>(i) + 1, ext.end());
      if (diameter_bound) keep_near(ext[i], child.ext.begin(), child.ext);
      children.push_back(std::move(child));
    }
  }

  const OrderedGraph& g_;
  const QuasiCliqueParams& params_;
  const SearchOptions& options_;
  std::uint64_t& counter_;
  std::vector<std::uint32_t> in_u_;
  std::vector<std::uint32_t> near_;
  std::vector<std::size_t> deg_;
  std::vector<std::size_t> outside_links_;
  std::uint32_t stamp_ = 0;
  std::uint32_t near_stamp_ = 0;
};

struct CoverSink {
  std::vector<char> covered;
  std::size_t count = 0;

  explicit CoverSink(std::size_t n) : covered(n, 0) {}

  std::size_t size_floor() const noexcept { return 0; }
  bool skip_covered(std::span<const VertexId> chosen, std::span<const VertexId> ext) const {
    for (auto v : chosen)
      if (!covered[v]) return false;
    for (auto v : ext)
      if (!covered[v]) return false;
    return true;
  }
  void report(VertexSet&& set, std::size_t) {
    for (auto v : set)
      if (!covered[v]) {
        covered[v] = 1;
        ++count;
      }
  }
  bool done() const noexcept { return count == covered.size(); }
};

struct ExistsLargerSink {
  std::size_t floor;
  bool found = false;

  std::size_t size_floor() const noexcept { return floor; }
  bool skip_covered(std::span<const VertexId>, std::span<const VertexId>) const { return false; }
  void report(VertexSet&& set, std::size_t) {
    if (set.size() >= floor) found = true;
  }
  bool done() const noexcept { return found; }
};

struct CollectSink {
  CandidateSearch* search;
  std::vector<std::pair<VertexSet, std::size_t>> found;

  std::size_t size_floor() const noexcept { return 0; }
  bool skip_covered(std::span<const VertexId>, std::span<const VertexId>) const { return false; }
  void report(VertexSet&& set, std::size_t min_degree) {
    if (!search->extends_by_one(set)) found.emplace_back(std::move(set), min_degree);
  }
  bool done() const noexcept { return false; }
};

inline QuasiClique to_global(const OrderedGraph& g, const VertexSet& local, std::size_t min_degree) {
  QuasiClique q;
  q.vertices.reserve(local.size());
  for (auto v : local) q.vertices.push_back(g.to_global[v]);
  std::sort(q.vertices.begin(), q.vertices.end());
  q.min_degree = min_degree;
  return q;
}

// Keeps only sets not contained in another set of the list.
inline std::vector<std::pair<VertexSet, std::size_t>> drop_contained(
    std::vector<std::pair<VertexSet, std::size_t>> sets) {
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  sets.erase(std::unique(sets.begin(), sets.end(),
                         [](const auto& a, const auto& b) { return a.first == b.first; }),
             sets.end());
  std::vector<std::pair<VertexSet, std::size_t>> kept;
  for (auto& s : sets) {
    bool contained = false;
    for (const auto& k : kept) {
      if (k.first.size() <= s.first.size()) break;
      if (std::includes(k.first.begin(), k.first.end(), s.first.begin(), s.first.end())) {
        contained = true;
        break;
      }
    }
    if (!contained) kept.push_back(std::move(s));
  }
  return kept;
}

inline std::uint64_t& counter_for(const SearchOptions& options, std::uint64_t& local) {
  return options.candidate_counter ? *options.candidate_counter : local;
}

inline Candidate root_candidate(std::size_t n) {
  Candidate root;
  root.ext.resize(n);
  std::iota(root.ext.begin(), root.ext.end(), 0);
  return root;
}

}  // namespace detail

/// Degree test of Definition-style gamma density on a subset of the view
/// (global ids). Maximality is not checked.
inline bool is_gamma_dense(const GraphView& view, std::span<const VertexId> q,
                           const QuasiCliqueParams& params) {
  if (q.size() < params.min_size) return false;
  std::vector<VertexId> local;
  local.reserve(q.size());
  for (auto v : q) {
    auto idx = view.local_index(v);
    if (!idx) return false;
    local.push_back(static_cast<VertexId>(*idx));
  }
  std::sort(local.begin(), local.end());
  const std::size_t need = params.degree_floor(q.size());
  for (auto v : local) {
    std::size_t d = 0;
    for (auto u : view.local_neighbors(v))
      if (std::binary_search(local.begin(), local.end(), u)) ++d;
    if (d < need) return false;
  }
  return true;
}

/// Min-degree density of a subset of the view, min_v deg_Q(v) / (|Q| - 1).
inline QuasiClique describe(const GraphView& view, VertexSet q) {
  std::sort(q.begin(), q.end());
  std::vector<VertexId> local;
  for (auto v : q)
    if (auto idx = view.local_index(v)) local.push_back(static_cast<VertexId>(*idx));
  std::size_t lowest = q.empty() ? 0 : std::numeric_limits<std::size_t>::max();
  for (auto v : local) {
    std::size_t d = 0;
    for (auto u : view.local_neighbors(v))
      if (std::binary_search(local.begin(), local.end(), u)) ++d;
    lowest = std::min(lowest, d);
  }
  return QuasiClique{std::move(q), lowest};
}

/// Iterated removal of vertices whose degree is below z (a z-core). No
/// quasi-clique of the input loses a member.
inline GraphView vertex_prune(const GraphView& view, const QuasiCliqueParams& params) {
  const std::size_t n = view.size();
  const std::size_t z = params.member_degree_floor();
  std::vector<std::size_t> degree(n);
  std::vector<char> removed(n, 0);
  std::vector<VertexId> queue;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = view.degree(v);
    if (degree[v] < z) {
      removed[v] = 1;
      queue.push_back(static_cast<VertexId>(v));
    }
  }
  while (!queue.empty()) {
    const auto v = queue.back();
    queue.pop_back();
    for (auto u : view.local_neighbors(v)) {
      if (removed[u]) continue;
      if (--degree[u] < z) {
        removed[u] = 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<VertexId> keep;
  for (std::size_t v = 0; v < n; ++v)
    if (!removed[v]) keep.push_back(static_cast<VertexId>(v));
  if (keep.size() == n) return view;
  return view.subview(keep);
}

/// All maximal gamma-dense sets of size >= min_size, in ranking order.
/// Throws EngineOverflow when the candidate ceiling is hit.
inline std::vector<QuasiClique> enumerate_maximal(const GraphView& view,
                                                  const QuasiCliqueParams& params,
                                                  SearchStrategy strategy,
                                                  const SearchOptions& options = {}) {
  if (view.size() < params.min_size) return {};
  const auto pruned = vertex_prune(view, params);
  if (pruned.size() < params.min_size) return {};
  const auto graph = detail::canonical_order(pruned);
  std::uint64_t local_counter = 0;
  detail::CandidateSearch search(graph, params, options, detail::counter_for(options, local_counter));
  detail::CollectSink sink{&search, {}};
  search.run(detail::root_candidate(graph.size()), strategy, sink);
  std::vector<QuasiClique> out;
  for (auto& [set, min_degree] : detail::drop_contained(std::move(sink.found)))
    out.push_back(detail::to_global(graph, set, min_degree));
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

/// K: the union of all quasi-cliques of the view, found with coverage pruning
/// instead of full enumeration. Sorted global ids.
inline VertexSet covered_vertices(const GraphView& view, const QuasiCliqueParams& params,
                                  SearchStrategy strategy, const SearchOptions& options = {}) {
  if (view.size() < params.min_size) return {};
  const auto pruned = vertex_prune(view, params);
  if (pruned.size() < params.min_size) return {};
  const auto graph = detail::canonical_order(pruned);
  std::uint64_t local_counter = 0;
  detail::CandidateSearch search(graph, params, options, detail::counter_for(options, local_counter));
  detail::CoverSink sink(graph.size());
  search.run(detail::root_candidate(graph.size()), strategy, sink);
  VertexSet out;
  out.reserve(sink.count);
  for (std::size_t v = 0; v < graph.size(); ++v)
    if (sink.covered[v]) out.push_back(graph.to_global[v]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

class TopKSink {
 public:
  TopKSink(std::size_t k, CandidateSearch& main, const OrderedGraph& graph,
           const QuasiCliqueParams& params, const SearchOptions& options, std::uint64_t& counter)
      : k_(k), main_(main), graph_(graph), params_(params), options_(options), counter_(counter) {}

  std::size_t size_floor() const noexcept { return best_.size() == k_ ? best_.back().size() : 0; }
  bool skip_covered(std::span<const VertexId>, std::span<const VertexId>) const { return false; }
  bool done() const noexcept { return false; }

  void report(VertexSet&& set, std::size_t min_degree) {
    QuasiClique q = to_global(graph_, set, min_degree);
    if (best_.size() == k_ && !ranks_before(q, best_.back())) return;
    auto pos = std::lower_bound(best_.begin(), best_.end(), q, ranks_before);
    if (pos != best_.end() && *pos == q) return;
    if (main_.extends_by_one(set) || has_dense_superset(set)) return;
    best_.insert(pos, std::move(q));
    if (best_.size() > k_) best_.pop_back();
  }

  std::vector<QuasiClique> take() { return std::move(best_); }

 private:
  // Exhaustive search for a gamma-dense proper superset.
  bool has_dense_superset(const VertexSet& set) {
    if (!checker_) checker_.emplace(graph_, params_, options_, counter_);
    Candidate root;
    root.chosen = set;
    std::vector<char> in(graph_.size(), 0);
    for (auto v : set) in[v] = 1;
    for (VertexId v = 0; v < graph_.size(); ++v)
      if (!in[v]) root.ext.push_back(v);
    ExistsLargerSink sink{set.size() + 1};
    checker_->run(std::move(root), SearchStrategy::depth_first, sink);
    return sink.found;
  }

  std::size_t k_;
  CandidateSearch& main_;
  const OrderedGraph& graph_;
  const QuasiCliqueParams& params_;
  const SearchOptions& options_;
  std::uint64_t& counter_;
  std::optional<CandidateSearch> checker_;
  std::vector<QuasiClique> best_;
};

}  // namespace detail

/// The k best maximal quasi-cliques of the view under ranks_before, by
/// depth-first search with a size floor that rises as the result fills.
inline std::vector<QuasiClique> top_k_patterns(const GraphView& view,
                                               const QuasiCliqueParams& params, std::size_t k,
                                               const SearchOptions& options = {}) {
  if (k == 0) throw std::invalid_argument("top_k_patterns: k must be at least 1");
  if (view.size() < params.min_size) return {};
  const auto pruned = vertex_prune(view, params);
  if (pruned.size() < params.min_size) return {};
  const auto graph = detail::canonical_order(pruned);
  std::uint64_t local_counter = 0;
  auto& counter = detail::counter_for(options, local_counter);
  detail::CandidateSearch search(graph, params, options, counter);
  detail::TopKSink sink(k, search, graph, params, options, counter);
  search.run(detail::root_candidate(graph.size()), SearchStrategy::depth_first, sink);
  return sink.take();
}

}  // namespace scpm
