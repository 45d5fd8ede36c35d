#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "scpm/graph.hpp"

namespace scpm {

// Canonical attribute set: strictly ascending attribute ids.
class AttributeSet {
 public:
  AttributeSet() = default;
  AttributeSet(std::initializer_list<AttributeId> ids) : AttributeSet(std::vector<AttributeId>(ids)) {}
  explicit AttributeSet(std::vector<AttributeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  static AttributeSet single(AttributeId a) { return AttributeSet({a}); }

  std::span<const AttributeId> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  AttributeSet united(const AttributeSet& other) const {
    AttributeSet out;
    out.ids_.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
  }

  bool includes(const AttributeSet& other) const {
    return std::includes(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end());
  }

  auto operator<=>(const AttributeSet&) const = default;
  bool operator==(const AttributeSet&) const = default;

 private:
  std::vector<AttributeId> ids_;
};

// Sorted vertex list V(S); its length is the support sigma(S).
using PostingList = VertexSet;

namespace detail {

// Smallest index i >= lo with data[i] >= key, by exponential then binary search.
inline std::size_t gallop(std::span<const VertexId> data, std::size_t lo, VertexId key) {
  std::size_t step = 1;
  std::size_t hi = lo;
  while (hi < data.size() && data[hi] < key) {
    lo = hi + 1;
    hi += step;
    step <<= 1;
  }
  hi = std::min(hi, data.size());
  return static_cast<std::size_t>(std::lower_bound(data.begin() + static_cast<std::ptrdiff_t>(lo),
                                                   data.begin() + static_cast<std::ptrdiff_t>(hi), key) -
                                  data.begin());
}

}  // namespace detail

/// Intersection of two sorted lists. Switches to galloping search over the
/// longer list when the length ratio exceeds 32:1.
inline PostingList intersect(std::span<const VertexId> a, std::span<const VertexId> b) {
  if (a.size() > b.size()) std::swap(a, b);
  PostingList out;
  out.reserve(a.size());
  if (a.empty()) return out;
  if (b.size() / a.size() > 32) {
    std::size_t pos = 0;
    for (auto x : a) {
      pos = detail::gallop(b, pos, x);
      if (pos == b.size()) break;
      if (b[pos] == x) out.push_back(x);
    }
    return out;
  }
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Vertical index: attribute -> sorted list of vertices carrying it.
class AttributeIndex {
 public:
  AttributeIndex() = default;
  explicit AttributeIndex(std::vector<PostingList> lists) : lists_(std::move(lists)) {}

  std::size_t universe_size() const noexcept { return lists_.size(); }

  bool contains(AttributeId a) const noexcept { return a < lists_.size() && !lists_[a].empty(); }

  std::span<const VertexId> posting(AttributeId a) const noexcept {
    if (a >= lists_.size()) return {};
    return lists_[a];
  }

  std::size_t support(AttributeId a) const noexcept { return posting(a).size(); }

 private:
  std::vector<PostingList> lists_;
};

inline AttributeIndex build_index(const AttributedGraph& g) {
  std::vector<PostingList> lists(g.attribute_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (auto a : g.attributes(v)) lists[a].push_back(v);
  return AttributeIndex(std::move(lists));
}

/// V(S) as the intersection of the members' posting lists, smallest first.
/// Unknown attribute ids yield an empty list. `s` must be non-empty.
inline PostingList vertex_set(const AttributeIndex& index, const AttributeSet& s) {
  if (s.empty()) return {};
  std::vector<std::span<const VertexId>> lists;
  lists.reserve(s.size());
  for (auto a : s) lists.push_back(index.posting(a));
  std::sort(lists.begin(), lists.end(),
            [](const auto& x, const auto& y) { return x.size() < y.size(); });
  PostingList acc(lists.front().begin(), lists.front().end());
  for (std::size_t i = 1; i < lists.size() && !acc.empty(); ++i) acc = intersect(acc, lists[i]);
  return acc;
}

struct FrequentAttribute {
  AttributeSet set;
  PostingList vertices;
};

/// Singletons with support >= sigma_min, by ascending attribute id.
inline std::vector<FrequentAttribute> frequent_attributes(const AttributeIndex& index,
                                                          std::size_t sigma_min) {
  std::vector<FrequentAttribute> out;
  for (AttributeId a = 0; a < index.universe_size(); ++a) {
    auto list = index.posting(a);
    if (!list.empty() && list.size() >= sigma_min)
      out.push_back({AttributeSet::single(a), PostingList(list.begin(), list.end())});
  }
  return out;
}

}  // namespace scpm
