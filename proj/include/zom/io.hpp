#pragma once

// JSON reports and file I/O. Needs nlohmann/json ("json.hpp") on the include path.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "zom/behrend.hpp"
#include "zom/classifier.hpp"
#include "zom/constructions.hpp"
#include "zom/containment.hpp"
#include "zom/errors.hpp"
#include "zom/extremal.hpp"
#include "zom/marking.hpp"
#include "zom/matrix.hpp"
#include "zom/pattern.hpp"

namespace zom {

using json = nlohmann::ordered_json;

inline json token_array(const std::vector<Token>& tokens) {
  json out = json::array();
  for (const auto& x : tokens) out.push_back(x ? json(*x) : json(nullptr));
  return out;
}

inline json to_json(const Occurrence& w) { return {{"rowMap", w.row_map}, {"colMap", w.col_map}}; }

inline json to_json(const ConstructionParams& p) {
  json out = {{"variant", std::string(to_string(p.variant))}, {"b", p.b}, {"m", p.m}};
  out["t"] = p.t ? json(*p.t) : json(nullptr);
  if (p.variant == Variant::dense) out["sValues"] = p.s_values;
  return out;
}

inline Variant parse_variant(std::string_view name) {
  if (name == "A" || name == "a") return Variant::A;
  if (name == "At" || name == "at") return Variant::At;
  if (name == "dense") return Variant::dense;
  throw invalid_input("unknown construction variant '" + std::string(name) + "'");
}

inline ConstructionParams params_from_json(const json& j) {
  ConstructionParams p;
  p.variant = parse_variant(j.at("variant").get<std::string>());
  p.b = j.at("b").get<index_t>();
  p.m = j.at("m").get<index_t>();
  if (!j.at("t").is_null()) p.t = j.at("t").get<index_t>();
  if (j.contains("sValues")) p.s_values = j.at("sValues").get<std::vector<std::uint64_t>>();
  return p;
}

/// Sidecar: parameters plus every row label (s, r digits in base m) and
/// column label (c digits in base m, i digits in base 2 or t).
inline json labels_to_json(const LabeledMatrix& lm) {
  json rows = json::array(), cols = json::array();
  for (const auto& r : lm.row_labels) rows.push_back({{"s", r.s}, {"r", r.r}});
  for (const auto& c : lm.col_labels) cols.push_back({{"c", c.c}, {"i", c.i}});
  return {{"params", to_json(lm.params)},
          {"rows", lm.matrix.rows()},
          {"cols", lm.matrix.cols()},
          {"weight", lm.matrix.weight()},
          {"rowLabels", std::move(rows)},
          {"colLabels", std::move(cols)}};
}

inline std::string sidecar_path(const std::string& matrix_path) { return matrix_path + ".labels.json"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw invalid_input("failed writing '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void save_labeled(const LabeledMatrix& lm, const std::string& path) {
  write_text_file(path, to_matrix_text(lm.matrix));
  write_text_file(sidecar_path(path), labels_to_json(lm).dump(1) + "\n");
}

inline Matrix01 load_matrix(const std::string& path) { return parse_matrix(read_text_file(path)); }

/// Matrix file plus its sidecar, taken as written (no rebuilding), so audits see the file contents.
inline LabeledMatrix load_labeled(const std::string& path) {
  LabeledMatrix lm;
  lm.matrix = load_matrix(path);
  json side;
  try {
    side = json::parse(read_text_file(sidecar_path(path)));
    lm.params = params_from_json(side.at("params"));
    for (const auto& r : side.at("rowLabels"))
      lm.row_labels.push_back({r.at("s").get<std::uint64_t>(), r.at("r").get<std::vector<index_t>>()});
    for (const auto& c : side.at("colLabels"))
      lm.col_labels.push_back({c.at("c").get<std::vector<index_t>>(), c.at("i").get<std::vector<index_t>>()});
  } catch (const json::exception& e) {
    throw invalid_input(std::string("malformed label sidecar: ") + e.what());
  }
  if (lm.row_labels.size() != lm.matrix.rows() || lm.col_labels.size() != lm.matrix.cols())
    throw invalid_input("label sidecar does not match the matrix dimensions");
  return lm;
}

inline json to_json(const AuditReport& a) {
  return {{"pass", a.pass}, {"violation", a.pass ? json(nullptr) : json(a.violation)},
          {"columnPairs", a.column_pairs}, {"rowPairs", a.row_pairs}};
}

inline json to_json(const BehrendSet& s) {
  json out = {{"N", s.N}, {"h", s.h}};
  if (s.params)
    out["params"] = {{"d", s.params->d}, {"D", s.params->D}, {"base", s.params->base}};
  else
    out["params"] = "fallback";
  out["shellNorm"] = s.shell_norm ? json(*s.shell_norm) : json(nullptr);
  out["elements"] = s.elements;
  out["verified"] = s.verified;
  return out;
}

inline json to_json(const BehrendWitness& w) {
  return {{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}, {"s0", w.s0}, {"s1", w.s1}, {"s2", w.s2}};
}

inline json degeneracy_json(unsigned value) { return value == kNoDecomposition ? json(nullptr) : json(value); }

inline json to_json(const ReductionReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"rule", std::string(to_string(s.rule))},
                     {"transform", std::string(to_string(s.frame))},
                     {"removedColumns", s.removed},
                     {"result", to_text(s.after)}});
  return {{"steps", std::move(steps)},
          {"exponent", r.exponent},
          {"residual", to_text(r.residual)},
          {"outcome", r.success ? "success" : "stuck"}};
}

inline json to_json(const ClassifyReport& c) {
  json cov = nullptr;
  if (c.covering) {
    json spans = json::array();
    for (auto [first, last] : c.covering->intervals) spans.push_back({first, last});
    cov = {{"kStar", c.covering->k_star}, {"J", c.covering->J}, {"intervals", std::move(spans)}};
  }
  return {{"acyclic", c.acyclic},
          {"light", c.light},
          {"covering", std::move(cov)},
          {"degeneracy", degeneracy_json(c.degeneracy)},
          {"degeneracyTransposed", degeneracy_json(c.degeneracy_transposed)},
          {"reduction", to_json(c.reduction)},
          {"qFreeLight", c.q_free_light}};
}

inline json to_json(const MarkReport& r, const std::optional<UnmarkedAudit>& audit = std::nullopt) {
  json unmarked = json::array();
  for (auto x : r.unmarked) unmarked.push_back({x.row, x.col});
  json out = {{"params", {{"t", r.params.t}, {"zeta", r.params.zeta}, {"epsilon", "1/" + std::to_string(r.params.q)}}},
              {"weight", r.weight},
              {"perStepCounts", r.per_step},
              {"signatureTypeCounts", {{"sig0", r.signature_types[0]},
                                       {"sig1", r.signature_types[1]},
                                       {"sig2", r.signature_types[2]}}},
              {"structuralBound", r.structural_bound},
              {"unmarked", std::move(unmarked)}};
  if (audit)
    out["auditResult"] = audit->all_marked ? json("none-unmarked") : json({{"witness", to_json(*audit->witness)}});
  else
    out["auditResult"] = nullptr;
  return out;
}

inline json to_json(const ExResult& r) {
  return {{"pattern", to_text(r.pattern)},
          {"n", r.n},
          {"m", r.m},
          {"value", r.value},
          {"exact", r.exact},
          {"nodesExplored", r.nodes},
          {"witness", to_matrix_text(r.witness)}};
}

}  // namespace zom
