#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scpm/attribute_index.hpp"
#include "scpm/graph.hpp"
#include "scpm/miner.hpp"
#include "scpm/quasi_clique.hpp"

namespace scpm {

inline constexpr std::string_view records_columns =
    "attribute_set\tsupport\teps\teps_exp\tdelta\tcovered_count";
inline constexpr std::string_view patterns_columns = "attribute_set\tsize\tdensity\tvertices";

namespace detail {

inline std::string printf_string(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace detail

inline std::string format_attribute_set(const AttributedGraph& g, const AttributeSet& s) {
  return detail::describe_set(g, s);
}

inline std::string format_eps(double eps) { return detail::printf_string("%.6f", eps); }
inline std::string format_eps_exp(double v) { return detail::printf_string("%.5e", v); }
inline std::string format_delta(double delta) {
  if (std::isinf(delta)) return "inf";
  return detail::printf_string("%.6g", delta);
}
inline std::string format_density(double d) { return detail::printf_string("%.2f", d); }

inline void write_record_rows(std::ostream& out, const AttributedGraph& g,
                              const std::vector<CorrelationRecord>& records) {
  for (const auto& r : records) {
    out << format_attribute_set(g, r.attribute_set) << '\t' << r.support << '\t' << format_eps(r.eps)
        << '\t' << format_eps_exp(r.eps_exp.value) << '\t' << format_delta(r.delta) << '\t'
        << r.covered.size() << '\n';
  }
}

inline void write_pattern_rows(std::ostream& out, const AttributedGraph& g,
                               const std::vector<PatternRecord>& patterns) {
  for (const auto& p : patterns) {
    out << format_attribute_set(g, p.attribute_set) << '\t' << p.quasi_clique.size() << '\t'
        << format_density(p.quasi_clique.density()) << '\t';
    bool first = true;
    for (auto v : p.quasi_clique.vertices) {
      if (!first) out << ',';
      out << g.external_id(v);
      first = false;
    }
    out << '\n';
  }
}

/// One row of a records file as read back.
struct RecordRow {
  AttributeSet attribute_set;
  std::size_t support = 0;
  double eps = 0.0;
  double eps_exp = 0.0;
  double delta = 0.0;
  std::size_t covered_count = 0;
};

inline RecordRow to_row(const CorrelationRecord& r) {
  return {r.attribute_set, r.support, r.eps, r.eps_exp.value, r.delta, r.covered.size()};
}

/// Parses a records file. Comment lines ('#') and the column header are
/// skipped, so sweep files yield the rows of all blocks in order. eps is
/// recomputed exactly from covered_count / support.
inline std::vector<RecordRow> parse_records(std::istream& in, const AttributeDictionary& dict) {
  std::vector<RecordRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line.front() == '#' || line == records_columns) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 6) throw InputFormatError("records", number, "expected 6 columns");
    RecordRow row;
    std::vector<AttributeId> ids;
    for (auto token : detail::split(fields[0], '|')) {
      auto id = dict.find(token);
      if (!id) throw InputFormatError("records", number, "unknown attribute '" + std::string(token) + "'");
      ids.push_back(*id);
    }
    row.attribute_set = AttributeSet(std::move(ids));
    try {
      row.support = std::stoull(std::string(fields[1]));
      row.eps_exp = std::stod(std::string(fields[3]));
      row.delta = fields[4] == "inf" ? std::numeric_limits<double>::infinity()
                                     : std::stod(std::string(fields[4]));
      row.covered_count = std::stoull(std::string(fields[5]));
    } catch (const std::exception&) {
      throw InputFormatError("records", number, "malformed numeric field");
    }
    if (row.support == 0) throw InputFormatError("records", number, "zero support");
    row.eps = static_cast<double>(row.covered_count) / static_cast<double>(row.support);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Graphviz rendering of one pattern: members and the edges among them are
/// highlighted, the rest of `view` is drawn dimmed.
inline std::string export_pattern_dot(const PatternRecord& p, const GraphView& view,
                                      const AttributedGraph& g) {
  const auto& q = p.quasi_clique.vertices;
  auto in_pattern = [&](VertexId global) { return std::binary_search(q.begin(), q.end(), global); };
  std::ostringstream out;
  out << "graph pattern {\n";
  out << "  label=\"" << format_attribute_set(g, p.attribute_set) << "  size=" << q.size()
      << " density=" << format_density(p.quasi_clique.density()) << "\";\n";
  out << "  node [shape=circle, style=filled];\n";
  for (std::size_t i = 0; i < view.size(); ++i) {
    const auto v = view.member(i);
    out << "  \"" << g.external_id(v) << "\" ";
    if (in_pattern(v))
      out << "[fillcolor=\"#d62728\", fontcolor=white];\n";
    else
      out << "[fillcolor=\"#eeeeee\", color=\"#bbbbbb\", fontcolor=\"#999999\"];\n";
  }
  for (std::size_t i = 0; i < view.size(); ++i) {
    for (auto j : view.local_neighbors(i)) {
      if (j <= i) continue;
      const auto u = view.member(i), v = view.member(j);
      out << "  \"" << g.external_id(u) << "\" -- \"" << g.external_id(v) << "\" ";
      if (in_pattern(u) && in_pattern(v))
        out << "[color=\"#d62728\", penwidth=2];\n";
      else
        out << "[color=\"#cccccc\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace scpm
