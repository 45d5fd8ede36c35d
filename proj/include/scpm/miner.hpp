#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scpm/attribute_index.hpp"
#include "scpm/graph.hpp"
#include "scpm/null_model.hpp"
#include "scpm/parallel.hpp"
#include "scpm/quasi_clique.hpp"

namespace scpm {

inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

struct MinerConfig {
  std::size_t sigma_min = 1;
  QuasiCliqueParams qc_params{Density(1, 2), 2};
  double eps_min = 0.0;
  double delta_min = 0.0;
  std::size_t k = 5;  // `unlimited` for every pattern
  SearchStrategy strategy = SearchStrategy::depth_first;
  NullModelConfig null_model;
  std::size_t max_set_size = unlimited;
  unsigned threads = 1;
  bool fail_fast = false;
  std::uint64_t max_candidates = 50'000'000;
  // Also computes K without the inherited restriction and throws
  // std::logic_error when the two differ. Testing aid; doubles the work.
  bool verify_restriction = false;

  void validate() const {
    if (sigma_min < 1) throw std::invalid_argument("sigma_min must be at least 1");
    if (eps_min < 0.0 || eps_min > 1.0) throw std::invalid_argument("eps_min must lie in [0, 1]");
    if (delta_min < 0.0) throw std::invalid_argument("delta_min must be non-negative");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (null_model.kind == NullModelKind::simulation && null_model.samples < 1)
      throw std::invalid_argument("simulation needs at least one sample");
    if (max_set_size < 1) throw std::invalid_argument("max_set_size must be at least 1");
  }
};

struct CorrelationRecord {
  AttributeSet attribute_set;
  std::size_t support = 0;
  VertexSet covered;  // K_S
  double eps = 0.0;
  ExpectedCorrelation eps_exp;
  double delta = 0.0;
};

struct PatternRecord {
  AttributeSet attribute_set;
  QuasiClique quasi_clique;
};

struct MiningStats {
  std::uint64_t attribute_sets_visited = 0;
  std::uint64_t candidates = 0;  // quasi-clique candidates processed
};

struct MiningResult {
  std::vector<CorrelationRecord> records;
  std::vector<PatternRecord> patterns;
  MiningStats stats;
  std::vector<std::string> diagnostics;  // attribute sets skipped on overflow
};

/// Shared read-only inputs of one mining run plus the memoized null model.
class MiningContext {
 public:
  MiningContext(const AttributedGraph& g, const AttributeIndex& index, const MinerConfig& cfg)
      : g_(g),
        index_(index),
        cfg_(cfg),
        model_(g, cfg.qc_params, cfg.null_model, simulation_options(cfg)) {
    cfg_.validate();
  }

  const AttributedGraph& graph() const noexcept { return g_; }
  const AttributeIndex& index() const noexcept { return index_; }
  const MinerConfig& config() const noexcept { return cfg_; }
  ExpectedCorrelationModel& model() noexcept { return model_; }

  SearchOptions search_options(std::uint64_t& counter) const {
    SearchOptions o;
    o.max_candidates = cfg_.max_candidates;
    o.candidate_counter = &counter;
    return o;
  }

  void add_candidates(std::uint64_t n) noexcept { candidates_ += n; }
  void add_visit() noexcept { ++visited_; }
  MiningStats stats() const noexcept { return {visited_.load(), candidates_.load()}; }

 private:
  static SimulationOptions simulation_options(const MinerConfig& cfg) {
    SimulationOptions sim;
    sim.threads = 1;
    sim.strategy = cfg.strategy;
    sim.search.max_candidates = cfg.max_candidates;
    return sim;
  }

  const AttributedGraph& g_;
  const AttributeIndex& index_;
  MinerConfig cfg_;
  ExpectedCorrelationModel model_;
  std::atomic<std::uint64_t> candidates_{0};
  std::atomic<std::uint64_t> visited_{0};
};

inline bool qualifies(const CorrelationRecord& rec, const MinerConfig& cfg) {
  return rec.eps >= cfg.eps_min && rec.delta >= cfg.delta_min;
}

/// Extension test derived from the coverage bound: keep S for extension iff
/// |K_S| >= eps_min * sigma_min and |K_S| >= delta_min * eps_exp(sigma_min) * sigma_min.
inline bool prune_extension(const CorrelationRecord& rec, const MinerConfig& cfg,
                            const ExpectedCorrelation& eps_exp_at_sigma_min) {
  // eps * sigma is the integer |K|; rounding removes the division error.
  const double mass = std::round(rec.eps * static_cast<double>(rec.support));
  const double sigma_min = static_cast<double>(cfg.sigma_min);
  return mass >= cfg.eps_min * sigma_min &&
         mass >= cfg.delta_min * eps_exp_at_sigma_min.value * sigma_min;
}

/// Record for S whose vertex set V(S) is already known. The search runs on
/// V(S) intersected with `restriction` when one is given.
inline CorrelationRecord structural_correlation(MiningContext& ctx, const AttributeSet& s,
                                                const PostingList& members,
                                                const VertexSet* restriction) {
  if (members.empty()) throw std::invalid_argument("structural_correlation: empty support");
  const auto& cfg = ctx.config();
  std::uint64_t counter = 0;
  const auto options = ctx.search_options(counter);
  const PostingList search_set = restriction ? intersect(members, *restriction) : members;
  CorrelationRecord rec;
  rec.attribute_set = s;
  rec.support = members.size();
  rec.covered = covered_vertices(induced_view(ctx.graph(), search_set), cfg.qc_params,
                                 cfg.strategy, options);
  if (cfg.verify_restriction && restriction) {
    std::uint64_t extra = 0;
    const auto full = covered_vertices(induced_view(ctx.graph(), members), cfg.qc_params,
                                       cfg.strategy, ctx.search_options(extra));
    if (full != rec.covered)
      throw std::logic_error("coverage of a child attribute set escaped its parents' coverage");
  }
  ctx.add_candidates(counter);
  rec.eps = static_cast<double>(rec.covered.size()) / static_cast<double>(rec.support);
  rec.eps_exp = ctx.model().at(rec.support);
  rec.delta = normalized_delta(rec.eps, rec.eps_exp);
  return rec;
}

/// Convenience form computing V(S) from the index.
inline CorrelationRecord structural_correlation(const AttributedGraph& g, const AttributeIndex& index,
                                                const AttributeSet& s, const MinerConfig& cfg,
                                                const VertexSet* restriction = nullptr) {
  MiningContext ctx(g, index, cfg);
  return structural_correlation(ctx, s, vertex_set(index, s), restriction);
}

namespace detail {

struct FrontierEntry {
  AttributeSet set;
  PostingList vertices;
  VertexSet covered;
};

struct Emitted {
  std::vector<CorrelationRecord> records;
  std::vector<PatternRecord> patterns;
  std::vector<std::string> diagnostics;

  void append(Emitted&& other) {
    for (auto& r : other.records) records.push_back(std::move(r));
    for (auto& p : other.patterns) patterns.push_back(std::move(p));
    for (auto& d : other.diagnostics) diagnostics.push_back(std::move(d));
  }
};

inline std::string describe_set(const AttributedGraph& g, const AttributeSet& s) {
  std::string out;
  for (auto a : s) {
    if (!out.empty()) out += '|';
    out += g.dictionary().token(a);
  }
  return out;
}

// Ascending support, ties by attribute set.
inline void sort_frontier(std::vector<FrontierEntry>& frontier) {
  std::sort(frontier.begin(), frontier.end(), [](const auto& a, const auto& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.set < b.set;
  });
}

/// The two mining modes share the traversal and differ only in how a single
/// attribute set is evaluated.
class Traversal {
 public:
  Traversal(MiningContext& ctx, bool baseline) : ctx_(ctx), baseline_(baseline) {
    const auto& cfg = ctx.config();
    const std::size_t n = ctx.graph().vertex_count();
    threshold_expectation_ = ctx.model().at(std::min(cfg.sigma_min, std::max<std::size_t>(n, 1)));
  }

  MiningResult run() {
    const auto& cfg = ctx_.config();
    auto singles = frequent_attributes(ctx_.index(), cfg.sigma_min);
    std::vector<FrontierEntry> level;
    level.reserve(singles.size());
    for (auto& f : singles) level.push_back({std::move(f.set), std::move(f.vertices), {}});
    sort_frontier(level);

    std::vector<std::optional<FrontierEntry>> kept(level.size());
    std::vector<Emitted> emitted(level.size());
    parallel_for(level.size(), cfg.threads, [&](std::size_t i) {
      kept[i] = visit(std::move(level[i]), nullptr, emitted[i]);
    });

    Emitted all;
    for (auto& e : emitted) all.append(std::move(e));
    std::vector<FrontierEntry> frontier;
    for (auto& k : kept)
      if (k) frontier.push_back(std::move(*k));

    // Each S_i subtree is independent; merge in frontier order.
    std::vector<Emitted> subtrees(frontier.size());
    parallel_for(frontier.size(), cfg.threads,
                 [&](std::size_t i) { extend_class(frontier, i, subtrees[i]); });
    for (auto& e : subtrees) all.append(std::move(e));

    MiningResult result;
    result.records = std::move(all.records);
    result.patterns = std::move(all.patterns);
    result.diagnostics = std::move(all.diagnostics);
    result.stats = ctx_.stats();
    return result;
  }

 private:
  // Children S_i u S_j (j < i), then recursion into the children kept.
  void extend_class(const std::vector<FrontierEntry>& frontier, std::size_t i, Emitted& out) {
    const auto& cfg = ctx_.config();
    const auto& left = frontier[i];
    std::vector<FrontierEntry> children;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& right = frontier[j];
      AttributeSet s = left.set.united(right.set);
      if (s.size() > cfg.max_set_size) continue;
      PostingList members = intersect(left.vertices, right.vertices);
      if (members.size() < cfg.sigma_min || members.empty()) continue;
      VertexSet restriction;
      const VertexSet* restrict_ptr = nullptr;
      if (!baseline_) {
        restriction = intersect(left.covered, right.covered);
        restrict_ptr = &restriction;
      }
      auto child = visit({std::move(s), std::move(members), {}}, restrict_ptr, out);
      if (child) children.push_back(std::move(*child));
    }
    sort_frontier(children);
    for (std::size_t c = 0; c < children.size(); ++c) extend_class(children, c, out);
  }

  // Evaluates one attribute set; emits its record and patterns when it
  // qualifies and returns it when it may be extended.
  std::optional<FrontierEntry> visit(FrontierEntry entry, const VertexSet* restriction, Emitted& out) {
    const auto& cfg = ctx_.config();
    ctx_.add_visit();
    try {
      if (baseline_) return visit_baseline(entry, out);
      CorrelationRecord rec = structural_correlation(ctx_, entry.set, entry.vertices, restriction);
      const bool keep = prune_extension(rec, cfg, threshold_expectation_);
      if (qualifies(rec, cfg)) {
        std::uint64_t counter = 0;
        const auto options = ctx_.search_options(counter);
        const auto view = induced_view(ctx_.graph(), rec.covered);
        std::vector<QuasiClique> top = cfg.k == unlimited
                                           ? enumerate_maximal(view, cfg.qc_params, SearchStrategy::depth_first, options)
                                           : top_k_patterns(view, cfg.qc_params, cfg.k, options);
        ctx_.add_candidates(counter);
        for (auto& q : top) out.patterns.push_back({rec.attribute_set, std::move(q)});
        out.records.push_back(rec);
      }
      if (!keep) return std::nullopt;
      entry.covered = std::move(rec.covered);
      return entry;
    } catch (const EngineOverflow& e) {
      if (cfg.fail_fast) throw;
      out.diagnostics.push_back(describe_set(ctx_.graph(), entry.set) + ": " + e.what());
      return std::nullopt;
    }
  }

  // No coverage pruning, no restriction, no extension pruning: full
  // enumeration of maximal quasi-cliques of every frequent set.
  std::optional<FrontierEntry> visit_baseline(FrontierEntry& entry, Emitted& out) {
    const auto& cfg = ctx_.config();
    std::uint64_t counter = 0;
    const auto options = ctx_.search_options(counter);
    auto all = enumerate_maximal(induced_view(ctx_.graph(), entry.vertices), cfg.qc_params,
                                 cfg.strategy, options);
    ctx_.add_candidates(counter);
    CorrelationRecord rec;
    rec.attribute_set = entry.set;
    rec.support = entry.vertices.size();
    for (const auto& q : all) {
      VertexSet merged;
      std::set_union(rec.covered.begin(), rec.covered.end(), q.vertices.begin(), q.vertices.end(),
                     std::back_inserter(merged));
      rec.covered = std::move(merged);
    }
    rec.eps = static_cast<double>(rec.covered.size()) / static_cast<double>(rec.support);
    rec.eps_exp = ctx_.model().at(rec.support);
    rec.delta = normalized_delta(rec.eps, rec.eps_exp);
    if (qualifies(rec, cfg)) {
      const std::size_t take = std::min(all.size(), cfg.k);
      for (std::size_t i = 0; i < take; ++i) out.patterns.push_back({rec.attribute_set, std::move(all[i])});
      out.records.push_back(rec);
    }
    entry.covered = std::move(rec.covered);
    return std::move(entry);
  }

  MiningContext& ctx_;
  bool baseline_;
  ExpectedCorrelation threshold_expectation_;
};

}  // namespace detail

/// Pruned structural correlation pattern mining. Records come out in
/// depth-first discovery order, patterns per set in ranking order.
inline MiningResult run_scpm(const AttributedGraph& g, const AttributeIndex& index,
                             const MinerConfig& cfg) {
  MiningContext ctx(g, index, cfg);
  return detail::Traversal(ctx, false).run();
}

/// Baseline: every frequent attribute set, full quasi-clique enumeration,
/// thresholds applied afterwards.
inline MiningResult run_naive(const AttributedGraph& g, const AttributeIndex& index,
                              const MinerConfig& cfg) {
  MiningContext ctx(g, index, cfg);
  return detail::Traversal(ctx, true).run();
}

}  // namespace scpm
