#pragma once

// Command-line front end. Kept in a header so the test suites can drive it
// in-process.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scpm/scpm.hpp"

namespace scpm::cli {

inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int { ok = 0, usage_error = 1, input_error = 2, overflow_error = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph_path;
  std::string attributes_path;
  std::size_t sigma_min = 100;
  double gamma_min = 0.5;
  std::size_t min_size = 11;
  double eps_min = 0.0;
  double delta_min = 0.0;
  std::string top_k = "5";
  std::string strategy = "dfs";
  std::string null_model = "analytical";
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  bool baseline = false;
  std::size_t max_set_size = 0;  // 0 = unlimited
  unsigned threads = 0;          // 0 = hardware concurrency
  std::string sweep;
  std::string out_records;
  std::string out_patterns;
  std::string export_dot;
  bool fail_fast = false;
  std::uint64_t max_candidates = 50'000'000;
  std::string manifest_in;
  std::string manifest_out;
};

struct SweepSpec {
  std::string param;  // canonical flag name without dashes, e.g. "gamma-min"
  std::vector<double> values;
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("--sweep expects PARAM=START:END:STEP");
  std::string param = text.substr(0, eq);
  if (param == "gamma") param = "gamma-min";
  if (param == "eps") param = "eps-min";
  if (param == "delta") param = "delta-min";
  if (param == "sigma") param = "sigma-min";
  static const std::vector<std::string> known = {"gamma-min", "min-size", "sigma-min", "eps-min",
                                                 "delta-min"};
  if (std::find(known.begin(), known.end(), param) == known.end())
    throw UsageError("--sweep: unknown parameter '" + param + "'");
  const auto parts = detail::split(std::string_view(text).substr(eq + 1), ':');
  if (parts.size() != 3) throw UsageError("--sweep expects PARAM=START:END:STEP");
  double start = 0, end = 0, step = 0;
  try {
    start = std::stod(std::string(parts[0]));
    end = std::stod(std::string(parts[1]));
    step = std::stod(std::string(parts[2]));
  } catch (const std::exception&) {
    throw UsageError("--sweep: malformed number");
  }
  if (!(step > 0) || end < start) throw UsageError("--sweep: need START <= END and STEP > 0");
  SweepSpec spec{param, {}};
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    // Round away accumulated binary error so 0.3 + 3 * 0.1 prints as 0.6.
    const double v = std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9;
    spec.values.push_back(v);
  }
  return spec;
}

inline std::size_t as_count(double v, const std::string& what) {
  if (v < 0 || std::floor(v) != v) throw UsageError(what + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline MinerConfig make_config(const Options& o) {
  MinerConfig cfg;
  try {
    cfg.qc_params = QuasiCliqueParams(o.gamma_min, o.min_size);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.sigma_min = o.sigma_min;
  cfg.eps_min = o.eps_min;
  cfg.delta_min = o.delta_min;
  if (o.top_k == "all") {
    cfg.k = unlimited;
  } else {
    try {
      std::size_t pos = 0;
      cfg.k = std::stoull(o.top_k, &pos);
      if (pos != o.top_k.size()) throw std::invalid_argument("k");
    } catch (const std::exception&) {
      throw UsageError("--top-k expects a positive integer or 'all'");
    }
  }
  if (o.strategy == "dfs")
    cfg.strategy = SearchStrategy::depth_first;
  else if (o.strategy == "bfs")
    cfg.strategy = SearchStrategy::breadth_first;
  else
    throw UsageError("--strategy expects bfs or dfs");
  if (o.null_model == "analytical")
    cfg.null_model.kind = NullModelKind::analytical;
  else if (o.null_model == "simulation")
    cfg.null_model.kind = NullModelKind::simulation;
  else
    throw UsageError("--null-model expects analytical or simulation");
  cfg.null_model.samples = o.samples;
  cfg.null_model.seed = o.seed;
  cfg.max_set_size = o.max_set_size == 0 ? unlimited : o.max_set_size;
  cfg.threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
  cfg.fail_fast = o.fail_fast;
  cfg.max_candidates = o.max_candidates;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

inline Options with_sweep_value(Options o, const std::string& param, double v) {
  if (param == "gamma-min") o.gamma_min = v;
  else if (param == "min-size") o.min_size = as_count(v, "min-size");
  else if (param == "sigma-min") o.sigma_min = as_count(v, "sigma-min");
  else if (param == "eps-min") o.eps_min = v;
  else if (param == "delta-min") o.delta_min = v;
  return o;
}

// Deterministic description of a run; identical across thread counts.
inline std::string config_line(const Options& o) {
  std::ostringstream s;
  s << "# mode=" << (o.baseline ? "naive" : "scpm") << " null_model=" << o.null_model
    << " sigma_min=" << o.sigma_min << " gamma_min=" << format_number(o.gamma_min)
    << " min_size=" << o.min_size << " eps_min=" << format_number(o.eps_min)
    << " delta_min=" << format_number(o.delta_min) << " top_k=" << o.top_k
    << " strategy=" << o.strategy << " samples=" << o.samples << " seed=" << o.seed
    << " max_set_size=" << (o.max_set_size == 0 ? std::string("unlimited") : std::to_string(o.max_set_size));
  if (!o.sweep.empty()) s << " sweep=" << o.sweep;
  return s.str();
}

inline nlohmann::json options_to_json(const Options& o) {
  return {{"graph", o.graph_path},         {"attributes", o.attributes_path},
          {"sigma_min", o.sigma_min},      {"gamma_min", o.gamma_min},
          {"min_size", o.min_size},        {"eps_min", o.eps_min},
          {"delta_min", o.delta_min},      {"top_k", o.top_k},
          {"strategy", o.strategy},        {"null_model", o.null_model},
          {"samples", o.samples},          {"seed", o.seed},
          {"baseline", o.baseline},        {"max_set_size", o.max_set_size},
          {"sweep", o.sweep},              {"out_records", o.out_records},
          {"out_patterns", o.out_patterns}, {"export_dot", o.export_dot},
          {"fail_fast", o.fail_fast},      {"max_candidates", o.max_candidates}};
}

inline Options options_from_json(const nlohmann::json& j) {
  Options o;
  o.graph_path = j.at("graph").get<std::string>();
  o.attributes_path = j.at("attributes").get<std::string>();
  o.sigma_min = j.at("sigma_min").get<std::size_t>();
  o.gamma_min = j.at("gamma_min").get<double>();
  o.min_size = j.at("min_size").get<std::size_t>();
  o.eps_min = j.at("eps_min").get<double>();
  o.delta_min = j.at("delta_min").get<double>();
  o.top_k = j.at("top_k").get<std::string>();
  o.strategy = j.at("strategy").get<std::string>();
  o.null_model = j.at("null_model").get<std::string>();
  o.samples = j.at("samples").get<std::size_t>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.baseline = j.at("baseline").get<bool>();
  o.max_set_size = j.at("max_set_size").get<std::size_t>();
  o.sweep = j.at("sweep").get<std::string>();
  o.out_records = j.at("out_records").get<std::string>();
  o.out_patterns = j.at("out_patterns").get<std::string>();
  o.export_dot = j.at("export_dot").get<std::string>();
  o.fail_fast = j.at("fail_fast").get<bool>();
  o.max_candidates = j.at("max_candidates").get<std::uint64_t>();
  return o;
}

inline void export_dots(const std::string& dir, const std::string& prefix, const AttributedGraph& g,
                        const AttributeIndex& index, const std::vector<PatternRecord>& patterns) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    const auto members = vertex_set(index, p.attribute_set);
    // The pattern plus its neighbours inside G(S).
    std::vector<char> keep(g.vertex_count(), 0);
    for (auto v : p.quasi_clique.vertices) {
      keep[v] = 1;
      for (auto u : g.neighbors(v)) keep[u] = 1;
    }
    VertexSet shown;
    for (auto v : members)
      if (keep[v]) shown.push_back(v);
    const auto view = induced_view(g, shown);
    std::ofstream out(std::filesystem::path(dir) / (prefix + "pattern_" + std::to_string(i) + ".dot"));
    out << export_pattern_dot(p, view, g);
  }
}

inline Options parse_options(int argc, char** argv, CLI::App& app) {
  Options o;
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--graph", o.graph_path, "Edge list file");
  app.add_option("--attributes", o.attributes_path, "Vertex attribute file");
  app.add_option("--sigma-min", o.sigma_min, "Minimum support")->check(CLI::PositiveNumber);
  app.add_option("--gamma-min", o.gamma_min, "Minimum quasi-clique density in (0, 1]");
  app.add_option("--min-size", o.min_size, "Minimum quasi-clique size (>= 2)");
  app.add_option("--eps-min", o.eps_min, "Minimum structural correlation");
  app.add_option("--delta-min", o.delta_min, "Minimum normalized structural correlation");
  app.add_option("--top-k", o.top_k, "Patterns per attribute set, or 'all'");
  app.add_option("--strategy", o.strategy, "Coverage search order: bfs or dfs");
  app.add_option("--null-model", o.null_model, "analytical or simulation");
  app.add_option("--samples", o.samples, "Simulation samples per support value");
  app.add_option("--seed", o.seed, "Simulation seed");
  app.add_flag("--baseline", o.baseline, "Run the naive baseline miner");
  app.add_option("--max-set-size", o.max_set_size, "Largest attribute set explored (0 = unlimited)");
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  app.add_option("--sweep", o.sweep, "PARAM=START:END:STEP, one run per value");
  app.add_option("--out-records", o.out_records, "Records TSV (default: stdout)");
  app.add_option("--out-patterns", o.out_patterns, "Patterns TSV (default: stdout)");
  app.add_option("--export-dot", o.export_dot, "Directory for Graphviz pattern files");
  app.add_flag("--fail-fast", o.fail_fast, "Abort on the first search overflow");
  app.add_option("--max-candidates", o.max_candidates, "Search candidate ceiling per induced graph");
  app.add_option("--manifest", o.manifest_in, "Rerun from a manifest written by an earlier run");
  app.add_option("--write-manifest", o.manifest_out,
                 "Manifest path (default: <out-records>.manifest.json)");
  app.parse(argc, argv);
  return o;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Structural correlation pattern mining for attributed graphs", "scpm"};
  Options o;
  try {
    o = parse_options(argc, argv, app);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return usage_error;
  }

  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t) {
    return std::chrono::duration<double, std::milli>(clock::now() - t).count();
  };

  try {
    if (!o.manifest_in.empty()) {
      std::ifstream in(o.manifest_in);
      if (!in) throw UsageError("cannot open manifest " + o.manifest_in);
      nlohmann::json j;
      try {
        in >> j;
        Options from = options_from_json(j.at("config"));
        from.threads = o.threads;
        if (!o.out_records.empty()) from.out_records = o.out_records;
        if (!o.out_patterns.empty()) from.out_patterns = o.out_patterns;
        from.manifest_out = o.manifest_out;
        o = std::move(from);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed manifest: ") + e.what());
      }
    }
    if (o.graph_path.empty()) {
      err << "error: --graph is required\n" << app.help();
      return usage_error;
    }

    std::optional<SweepSpec> sweep;
    if (!o.sweep.empty()) sweep = parse_sweep(o.sweep);
    std::vector<Options> runs;
    if (sweep)
      for (double v : sweep->values) runs.push_back(with_sweep_value(o, sweep->param, v));
    else
      runs.push_back(o);
    std::vector<MinerConfig> configs;
    for (const auto& r : runs) configs.push_back(make_config(r));

    nlohmann::json manifest;
    manifest["tool"] = "scpm";
    manifest["version"] = tool_version;
    manifest["config"] = options_to_json(o);
    manifest["threads"] = configs.front().threads;

    auto t0 = clock::now();
    std::ifstream edges(o.graph_path);
    if (!edges) throw InputFormatError(o.graph_path, 0, "cannot open file");
    std::ifstream attrs_file;
    std::istringstream no_attrs;
    std::istream* attrs = &no_attrs;
    if (!o.attributes_path.empty()) {
      attrs_file.open(o.attributes_path);
      if (!attrs_file) throw InputFormatError(o.attributes_path, 0, "cannot open file");
      attrs = &attrs_file;
    }
    LoadStats load_stats;
    const auto g = load_graph(edges, *attrs, load_stats, o.graph_path,
                              o.attributes_path.empty() ? "attributes" : o.attributes_path);
    manifest["inputs"] = {{"graph_fnv1a64", hex64(fnv1a_file(o.graph_path))},
                          {"attributes_fnv1a64",
                           o.attributes_path.empty() ? "" : hex64(fnv1a_file(o.attributes_path))},
                          {"vertices", g.vertex_count()},
                          {"edges", g.edge_count()},
                          {"attributes", g.attribute_count()},
                          {"duplicate_edges", load_stats.duplicate_edges},
                          {"self_loops_dropped", load_stats.self_loops_dropped}};
    if (load_stats.self_loops_dropped > 0)
      err << "warning: dropped " << load_stats.self_loops_dropped << " self-loop(s)\n";
    manifest["timings_ms"]["load"] = ms_since(t0);

    t0 = clock::now();
    const auto index = build_index(g);
    manifest["timings_ms"]["index"] = ms_since(t0);

    std::ostringstream records_text, patterns_text;
    records_text << "# scpm records\n" << config_line(o) << "\n" << records_columns << "\n";
    patterns_text << "# scpm patterns\n" << config_line(o) << "\n" << patterns_columns << "\n";

    int status = ok;
    manifest["runs"] = nlohmann::json::array();
    for (std::size_t b = 0; b < runs.size(); ++b) {
      std::string block_label;
      if (sweep) {
        block_label = sweep->param + "=" + format_number(sweep->values[b]);
        records_text << "# block " << block_label << "\n";
        patterns_text << "# block " << block_label << "\n";
      }
      t0 = clock::now();
      MiningResult result;
      try {
        result = o.baseline ? run_naive(g, index, configs[b]) : run_scpm(g, index, configs[b]);
      } catch (const EngineOverflow& e) {
        err << "error: " << e.what() << "\n";
        return overflow_error;
      }
      const double mine_ms = ms_since(t0);
      for (const auto& d : result.diagnostics) err << "warning: skipped " << d << "\n";
      write_record_rows(records_text, g, result.records);
      write_pattern_rows(patterns_text, g, result.patterns);
      if (!o.export_dot.empty())
        export_dots(o.export_dot, sweep ? "block_" + std::to_string(b) + "_" : "", g, index,
                    result.patterns);
      err << (o.baseline ? "naive" : "scpm") << (block_label.empty() ? "" : " " + block_label)
          << ": " << result.records.size() << " records, " << result.patterns.size()
          << " patterns, " << result.stats.attribute_sets_visited << " attribute sets, "
          << result.stats.candidates << " candidates, " << format_number(mine_ms / 1000.0) << " s\n";
      manifest["runs"].push_back({{"block", block_label},
                                  {"mine_ms", mine_ms},
                                  {"records", result.records.size()},
                                  {"patterns", result.patterns.size()},
                                  {"attribute_sets_visited", result.stats.attribute_sets_visited},
                                  {"candidates", result.stats.candidates},
                                  {"skipped", result.diagnostics.size()}});
    }

    auto emit = [&](const std::string& path, const std::string& text) {
      if (path.empty()) {
        out << text;
        return;
      }
      std::ofstream f(path, std::ios::binary);
      if (!f) throw UsageError("cannot write " + path);
      f << text;
    };
    emit(o.out_records, records_text.str());
    emit(o.out_patterns, patterns_text.str());

    std::string manifest_path = o.manifest_out;
    if (manifest_path.empty() && !o.out_records.empty()) manifest_path = o.out_records + ".manifest.json";
    if (!manifest_path.empty()) {
      std::ofstream f(manifest_path);
      f << manifest.dump(2) << "\n";
    }
    return status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const InputFormatError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

}  // namespace scpm::cli
