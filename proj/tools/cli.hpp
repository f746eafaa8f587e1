#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zom/io.hpp"
#include "zom/zom.hpp"

namespace zom::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

struct RunConfig {
  std::string variant;
  std::string output;
  std::string matrix;
  std::string pattern;
  std::string grid;
  index_t b = 0, m = 0, t = 0, n = 0, h = 0;
  std::uint64_t big_n = 0;
  std::optional<std::uint64_t> zeta;
  std::optional<index_t> ex_m;
  std::optional<std::uint64_t> cell_cap;
  std::optional<std::uint64_t> ones_cap;
  std::uint64_t node_budget = SearchLimits{}.node_budget;
  std::uint64_t max_cells = ExLimits{}.max_cells;
  unsigned threads = 1;
  bool audit = false;
  bool exhaustive = false;
};

/// "file:<path>" reads a pattern file; anything else is a registry name.
inline Pattern resolve_pattern(const std::string& name) {
  if (name.rfind("file:", 0) == 0) return parse_pattern(read_text_file(name.substr(5)));
  return registry_pattern(name);
}

// "b:m[:t],b:m[:t],..."
inline std::vector<DensityParams> parse_grid(const std::string& text) {
  std::vector<DensityParams> grid;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    if (item.empty()) continue;
    std::vector<index_t> parts;
    std::stringstream fields(item);
    std::string field;
    while (std::getline(fields, field, ':')) {
      try {
        std::size_t used = 0;
        auto v = std::stoul(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        parts.push_back(static_cast<index_t>(v));
      } catch (const std::exception&) {
        throw invalid_input("bad grid entry '" + item + "'");
      }
    }
    if (parts.size() < 2 || parts.size() > 3) throw invalid_input("grid entries are b:m or b:m:t");
    grid.push_back({parts[0], parts[1], parts.size() == 3 ? std::optional<index_t>(parts[2]) : std::nullopt});
  }
  return grid;
}

inline void check_output_path(const std::string& path) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent))
    throw invalid_input("output directory '" + parent.string() + "' does not exist");
}

inline Caps caps_for(const RunConfig& cfg) {
  Caps caps = Caps::from_env();
  if (cfg.cell_cap) caps.cells = *cfg.cell_cap;
  if (cfg.ones_cap) caps.ones = *cfg.ones_cap;
  return caps;
}

inline int run_construct(const RunConfig& cfg, std::ostream& out) {
  check_output_path(cfg.output);
  const Caps caps = caps_for(cfg);
  LabeledMatrix lm;
  const Variant variant = parse_variant(cfg.variant);
  switch (variant) {
    case Variant::A: lm = build_A(cfg.b, cfg.m, caps); break;
    case Variant::At: lm = build_At(cfg.b, cfg.m, cfg.t, caps); break;
    case Variant::dense: lm = build_dense_S0t(cfg.b, cfg.t, caps); break;
  }
  save_labeled(lm, cfg.output);
  out << "wrote " << cfg.output << " (" << lm.matrix.rows() << " x " << lm.matrix.cols() << ", weight "
      << lm.matrix.weight() << ")\n";
  if (cfg.audit) {
    auto report = audit_simple_properties(lm);
    out << "audit: " << (report.pass ? "pass" : "fail: " + report.violation) << "\n";
    if (!report.pass) return kDomainError;
  }
  return kOk;
}

inline int run_check(const RunConfig& cfg, std::ostream& out) {
  auto p = resolve_pattern(cfg.pattern);
  auto a = load_matrix(cfg.matrix);
  auto result = find_occurrence(p, a, {cfg.node_budget, cfg.threads});
  switch (result.status) {
    case MatchStatus::free: out << "free\n"; return kOk;
    case MatchStatus::found: out << "found " << to_json(*result.occurrence).dump() << "\n"; return kOk;
    case MatchStatus::unknown: break;
  }
  throw budget_exceeded("containment search exceeded its node budget; the answer is unknown");
}

inline int run_audit(const RunConfig& cfg, std::ostream& out) {
  auto lm = load_labeled(cfg.matrix);
  auto report = audit_simple_properties(lm);
  out << to_json(report).dump(2) << "\n";
  return report.pass ? kOk : kDomainError;
}

inline int run_classify(const RunConfig& cfg, std::ostream& out) {
  out << to_json(classify(resolve_pattern(cfg.pattern), cfg.exhaustive)).dump(2) << "\n";
  return kOk;
}

inline int run_behrend(const RunConfig& cfg, std::ostream& out) {
  out << to_json(behrend_set(cfg.big_n, cfg.h)).dump(2) << "\n";
  return kOk;
}

inline int run_mark(const RunConfig& cfg, std::ostream& out) {
  auto a = load_matrix(cfg.matrix);
  auto report = run_marking(a, cfg.t, cfg.zeta);
  auto audit = audit_unmarked(a, cfg.t, report, {cfg.node_budget, cfg.threads});
  out << to_json(report, audit).dump(2) << "\n";
  return kOk;
}

inline int run_ex(const RunConfig& cfg, std::ostream& out) {
  auto p = resolve_pattern(cfg.pattern);
  auto result = exact_ex(p, cfg.n, cfg.ex_m.value_or(cfg.n), {cfg.node_budget, cfg.max_cells});
  out << to_json(result).dump(2) << "\n";
  return kOk;
}

inline int run_density(const RunConfig& cfg, std::ostream& out) {
  auto table = density_table(parse_variant(cfg.variant), parse_grid(cfg.grid), caps_for(cfg));
  if (cfg.output.empty()) {
    write_density_csv(out, table);
  } else {
    check_output_path(cfg.output);
    std::ostringstream csv;
    write_density_csv(csv, table);
    write_text_file(cfg.output, csv.str());
    out << "wrote " << cfg.output << "\n";
  }
  return kOk;
}

/// Parses and runs one command line. Exit status 0 on success, 1 on a domain
/// error, 2 on a usage error; every error message goes to err.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Forbidden 0-1 matrix toolkit", "zom"};
  app.set_help_flag("--help", "Print this help and exit");  // -h is taken by behrend --h
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default();
  app.add_option("--threads", cfg.threads, "Worker threads for containment search")->check(CLI::PositiveNumber);
  app.add_option("--cell-cap", cfg.cell_cap, "Cap on generated matrix cells")->check(CLI::PositiveNumber);
  app.add_option("--ones-cap", cfg.ones_cap, "Cap on generated ones")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.node_budget, "Search node budget")->check(CLI::PositiveNumber);

  auto* construct = app.add_subcommand("construct", "Build A, At or dense and write matrix + label sidecar");
  construct->add_option("variant", cfg.variant, "a | at | dense")->required()
      ->check(CLI::IsMember({"a", "at", "dense", "A", "At"}));
  construct->add_option("--b", cfg.b)->required()->check(CLI::PositiveNumber);
  construct->add_option("--m", cfg.m)->check(CLI::PositiveNumber);
  construct->add_option("--t", cfg.t)->check(CLI::PositiveNumber);
  construct->add_option("-o,--output", cfg.output)->required();
  construct->add_flag("--audit", cfg.audit, "Run the pair-property audit after building");

  auto* check = app.add_subcommand("check", "Search for a pattern in a matrix file");
  check->add_option("--pattern", cfg.pattern, "Registry name or file:<path>")->required();
  check->add_option("--matrix", cfg.matrix)->required()->check(CLI::ExistingFile);

  auto* audit = app.add_subcommand("audit", "Audit a labeled matrix file against its sidecar");
  audit->add_option("--matrix", cfg.matrix)->required()->check(CLI::ExistingFile);

  auto* classify_cmd = app.add_subcommand("classify", "Structural report for a pattern");
  classify_cmd->add_option("--pattern", cfg.pattern)->required();
  classify_cmd->add_flag("--exhaustive", cfg.exhaustive, "Search every reduction order (small patterns)");

  auto* behrend = app.add_subcommand("behrend", "Solution-free set in [1, N]");
  behrend->set_help_flag("--help", "Print this help and exit");
  behrend->add_option("--n", cfg.big_n)->required()->check(CLI::PositiveNumber);
  behrend->add_option("--h", cfg.h)->required()->check(CLI::PositiveNumber);

  auto* mark = app.add_subcommand("mark", "Run the marking procedure on a matrix file");
  mark->add_option("--matrix", cfg.matrix)->required()->check(CLI::ExistingFile);
  mark->add_option("--t", cfg.t)->required()->check(CLI::Range(2u, 64u));
  mark->add_option("--zeta", cfg.zeta)->check(CLI::PositiveNumber);

  auto* ex = app.add_subcommand("ex", "Exact extremal number on a small host");
  ex->add_option("--pattern", cfg.pattern)->required();
  ex->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  ex->add_option("--m", cfg.ex_m)->check(CLI::PositiveNumber);
  ex->add_option("--max-cells", cfg.max_cells)->check(CLI::PositiveNumber);

  auto* density = app.add_subcommand("density", "CSV of weights and lemma bounds over a grid");
  density->add_option("--variant", cfg.variant)->required()->check(CLI::IsMember({"a", "at", "dense", "A", "At"}));
  density->add_option("--grid", cfg.grid, "b:m[:t],...")->required();
  density->add_option("-o,--output", cfg.output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (construct->parsed()) {
      if ((cfg.variant != "dense" && cfg.m == 0) || (cfg.variant != "a" && cfg.variant != "A" && cfg.t == 0)) {
        err << "error: construct " << cfg.variant << " needs " << (cfg.variant == "dense" ? "--t" : "--m and --t")
            << "\n";
        return kUsageError;
      }
      return run_construct(cfg, out);
    }
    if (check->parsed()) return run_check(cfg, out);
    if (audit->parsed()) return run_audit(cfg, out);
    if (classify_cmd->parsed()) return run_classify(cfg, out);
    if (behrend->parsed()) return run_behrend(cfg, out);
    if (mark->parsed()) return run_mark(cfg, out);
    if (ex->parsed()) return run_ex(cfg, out);
    if (density->parsed()) return run_density(cfg, out);
  } catch (const zom::error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  err << "error: no subcommand\n";
  return kUsageError;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace zom::cli
