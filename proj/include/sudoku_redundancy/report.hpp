#pragma once

// JSON views of classification reports, catalogs and probe records.
// "seconds" is the only field that varies between identical runs.

#include <string>
#include <vector>

#include "json.hpp"
#include "sudoku_redundancy/enumeration.hpp"
#include "sudoku_redundancy/smallcon.hpp"

namespace sudoku_redundancy {

using Json = nlohmann::ordered_json;

inline Json stats_json(const SolverStats& s) {
  return {{"nodes", s.nodes}, {"propagations", s.propagations}, {"degenerate", s.degenerate}};
}

inline Json trace_json(const ClosureTrace& t) {
  Json steps = Json::array();
  for (const auto& step : t.steps) steps.push_back(step.to_string());
  return {{"steps", steps}, {"fixpoint_missing", t.fixpoint.missing_labels()}};
}

inline Json catalog_json(const Catalog& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    entries.push_back({{"missing", e.model.missing_labels()},
                       {"size", e.model.missing_count()},
                       {"first_reached_from", e.first_reached_from},
                       {"witness", e.witness.to_string()}});
  }
  Json unresolved = Json::array();
  for (const auto& m : c.unresolved) unresolved.push_back(m.missing_labels());
  return {{"order", c.order.n()}, {"max_missing", c.max_missing}, {"entries", entries}, {"unresolved", unresolved}};
}

inline Json record_json(const ClassificationRecord& r) {
  Json j = {{"missing", r.model.missing_labels()},
            {"orbit_size", r.orbit_size},
            {"verdict", verdict_name(r.verdict)},
            {"chute_line_pair", r.chute_line_pair},
            {"closure", trace_json(r.trace)}};
  j["catalog_match"] = r.catalog_match ? Json(*r.catalog_match) : Json(nullptr);
  j["witness"] = r.witness ? Json(r.witness->to_string()) : Json(nullptr);
  return j;
}

inline Json report_json(const ClassificationReport& r) {
  Json classes = Json::array();
  Json unresolved = Json::array();
  for (const auto& rec : r.records) {
    classes.push_back(record_json(rec));
    if (rec.verdict == VerdictKind::Stuck) unresolved.push_back(rec.model.missing_labels());
  }
  return {{"order", r.order.n()},
          {"n_missing", r.n_missing},
          {"raw_count", r.raw_count},
          {"class_count", r.class_count()},
          {"sudoku", r.sudoku_count()},
          {"not_sudoku", r.not_sudoku_count()},
          {"unresolved_count", r.unresolved_count()},
          {"reduced",
           {{"class_count", r.reduced().size()},
            {"sudoku", r.reduced_count(VerdictKind::Sudoku)},
            {"not_sudoku", r.reduced_count(VerdictKind::NotSudoku)}}},
          {"unresolved", unresolved},
          {"catalog", catalog_json(r.catalog)},
          {"classes", classes},
          {"seconds", r.seconds}};
}

inline Json probe_json(const ProbeRecord& p) {
  Json j = {{"pair", p.pair.label()}, {"verdict", probe_verdict_name(p.verdict)}};
  j["witness"] = p.witness ? Json(p.witness->to_string()) : Json(nullptr);
  j["seed_puzzle"] = p.seed_puzzle ? Json(*p.seed_puzzle) : Json(nullptr);
  j["seeds_tried"] = p.seeds_tried;
  j["stats"] = stats_json(p.stats);
  return j;
}

// Summary entry of one class as read back from a report file.
struct ReportClass {
  ConstraintSet model;
  VerdictKind verdict = VerdictKind::Stuck;
  bool chute_line_pair = false;
};

inline VerdictKind parse_verdict(const std::string& name) {
  for (auto v : {VerdictKind::Sudoku, VerdictKind::Stuck, VerdictKind::NotSudoku})
    if (name == verdict_name(v)) return v;
  throw std::invalid_argument("unknown verdict '" + name + "'");
}

inline std::vector<ReportClass> report_classes(const Json& report) {
  const BoardOrder order(report.at("order").get<int>());
  std::vector<ReportClass> out;
  for (const auto& c : report.at("classes")) {
    out.push_back({ConstraintSet::parse_missing(c.at("missing").get<std::string>(), order),
                   parse_verdict(c.at("verdict").get<std::string>()), c.at("chute_line_pair").get<bool>()});
  }
  return out;
}

}  // namespace sudoku_redundancy
