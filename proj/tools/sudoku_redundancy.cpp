// Command-line front end: closure, classify, catalog, probe, solve, figure.
//
// Exit codes: 0 success, 1 usage, 2 unresolved classification, 3 I/O.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sudoku_redundancy/corpus.hpp"
#include "sudoku_redundancy/enumeration.hpp"
#include "sudoku_redundancy/figure.hpp"
#include "sudoku_redundancy/report.hpp"

namespace fs = std::filesystem;
using namespace sudoku_redundancy;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitUnresolved = 2;
constexpr int kExitIo = 3;
constexpr const char* kCorpusEnv = "SUDOKU_REDUNDANCY_CORPUS";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int order = 3;
  int n_missing = 0;
  std::string missing;
  std::optional<fs::path> corpus;
  std::optional<fs::path> report;
  std::optional<fs::path> out;
  std::uint64_t budget = 10'000'000;
  std::size_t sample = 0;
  bool full = false;
  std::vector<std::string> pairs;
  std::vector<std::string> equal;
  std::string puzzle;
  std::uint64_t seed = 1;
  std::string format;
  bool witness_each = true;
  bool all_classes = false;
  bool unseeded_fallback = true;
  unsigned threads = 0;
};

void validate_paths(RunConfig& cfg) {
  if (!cfg.corpus && cfg.command == "probe") {
    if (const char* env = std::getenv(kCorpusEnv); env && *env) cfg.corpus = env;
  }
  for (const auto* input : {&cfg.corpus, &cfg.report}) {
    if (*input && !fs::is_regular_file(**input)) throw IoError("cannot read " + (*input)->string());
  }
  if (cfg.out) {
    const fs::path parent = fs::absolute(*cfg.out).parent_path();
    if (!fs::is_directory(parent)) throw IoError("output directory " + parent.string() + " does not exist");
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

// To --out when given, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out) write_file(*cfg.out, text);
  else std::cout << text;
}

ConstraintSet model_of(const RunConfig& cfg) {
  try {
    return ConstraintSet::parse_missing(cfg.missing, BoardOrder(cfg.order));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions o;
  o.node_budget = cfg.budget;
  return o;
}

Corpus read_corpus_checked(const fs::path& path, BoardOrder order) {
  Corpus corpus;
  try {
    corpus = load_corpus(path, order);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  for (const auto& d : corpus.diagnostics)
    std::cerr << path.string() << ':' << d.line << ": skipped: " << d.message << '\n';
  return corpus;
}

int cmd_closure(const RunConfig& cfg) {
  const ConstraintSet start = model_of(cfg);
  const ClosureTrace trace = closure(start);
  const VerdictKind verdict = trace.reaches_full() ? VerdictKind::Sudoku : VerdictKind::Stuck;
  if (cfg.format == "json") {
    Json j = {{"missing", start.missing_labels()}};
    j.update(trace_json(trace));
    j["verdict"] = verdict_name(verdict);
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream out;
  out << "model: " << start.model_string() << '\n' << trace.log();
  out << "steps: " << trace.steps.size() << '\n';
  if (!trace.reaches_full()) out << "fixpoint: " << trace.fixpoint.model_string() << '\n';
  out << "verdict: " << verdict_name(verdict) << '\n';
  emit(cfg, out.str());
  return 0;
}

std::string split_line(const std::string& head, std::size_t total, std::size_t sudoku, std::size_t not_sudoku) {
  std::ostringstream out;
  out << head << ": " << total << " (" << sudoku << " Sudoku";
  if (not_sudoku > 0 || sudoku == 0) out << ", " << not_sudoku << " not";
  out << ')';
  return out.str();
}

int cmd_classify(const RunConfig& cfg) {
  const BoardOrder order(cfg.order);
  if (cfg.n_missing < 0 || cfg.n_missing > order.regions())
    throw UsageError("-n must be in [0.." + std::to_string(order.regions()) + "], got " + std::to_string(cfg.n_missing));
  ClassificationOptions options{solver_options(cfg), cfg.witness_each, cfg.threads};
  const auto report = run_classification(order, cfg.n_missing, options);
  if (cfg.out) write_file(*cfg.out, report_json(report).dump(2) + "\n");

  std::cout << "order: " << order.n() << '\n'
            << "missing: " << report.n_missing << '\n'
            << "raw models: " << report.raw_count << '\n'
            << split_line("classes", report.reduced().size(), report.reduced_count(VerdictKind::Sudoku),
                          report.reduced_count(VerdictKind::NotSudoku))
            << '\n'
            << "Sudoku classes: " << report.sudoku_count() << '\n'
            << split_line("all orbits", report.class_count(), report.sudoku_count(), report.not_sudoku_count())
            << '\n'
            << "catalog: " << report.catalog.entries.size() << '\n';
  std::size_t unresolved = 0;
  for (const auto& rec : report.records) {
    if (rec.verdict != VerdictKind::Stuck) continue;
    std::cout << "UNRESOLVED " << rec.model.model_string() << '\n';
    ++unresolved;
  }
  for (const auto& m : report.catalog.unresolved) {
    std::cout << "UNRESOLVED catalog candidate " << m.model_string() << '\n';
    ++unresolved;
  }
  return unresolved ? kExitUnresolved : 0;
}

int cmd_catalog(const RunConfig& cfg) {
  if (cfg.n_missing < 2) throw UsageError("catalog needs -n >= 2, got " + std::to_string(cfg.n_missing));
  ClassificationOptions options{solver_options(cfg), false, cfg.threads};
  const Catalog catalog = minimal_catalog(BoardOrder(cfg.order), cfg.n_missing, options);
  if (cfg.out) write_file(*cfg.out, catalog_json(catalog).dump(2) + "\n");
  std::cout << "catalog entries: " << catalog.entries.size() << '\n';
  for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
    const auto& e = catalog.entries[i];
    std::cout << i + 1 << ". " << e.model.model_string() << " (size " << e.model.missing_count()
              << ", from Missing(" << e.first_reached_from << ")) witness " << e.witness.to_string() << '\n';
  }
  for (const auto& m : catalog.unresolved) std::cout << "UNRESOLVED " << m.model_string() << '\n';
  return catalog.unresolved.empty() ? 0 : kExitUnresolved;
}

int cmd_probe(const RunConfig& cfg) {
  const BoardOrder order(cfg.order);
  const SmallConstraintSet base = expand_small(model_of(cfg));
  const int modes = (cfg.full ? 1 : 0) + (cfg.sample > 0 ? 1 : 0) + (cfg.pairs.empty() ? 0 : 1);
  if (modes != 1) throw UsageError("probe needs exactly one of --sample K, --full, --pair");

  ProbeSelection selection = ProbeSelection::all();
  if (cfg.sample > 0) selection = ProbeSelection::sample(cfg.sample, cfg.seed);
  if (!cfg.pairs.empty()) {
    std::vector<SmallConstraint> pairs;
    try {
      for (const auto& p : cfg.pairs) pairs.push_back(SmallConstraint::parse(p, order));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    selection = ProbeSelection::only(std::move(pairs));
  }
  std::vector<SmallConstraint> chosen;
  try {
    chosen = selection.resolve(base);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Corpus corpus;
  if (cfg.corpus) corpus = read_corpus_checked(*cfg.corpus, order);
  ProbeOptions options;
  options.solver.node_budget = cfg.budget;
  options.solver.value_seed = cfg.seed;
  options.unseeded_fallback = cfg.unseeded_fallback;

  std::vector<ProbeRecord> records(chosen.size());
  parallel_for(chosen.size(), cfg.threads,
               [&](std::size_t i) { records[i] = probe_pair(base, chosen[i], corpus.puzzles, options); });

  std::ostringstream lines;
  std::size_t needed = 0, redundant = 0, inconclusive = 0;
  for (const auto& r : records) {
    lines << probe_json(r).dump() << '\n';
    needed += r.verdict == ProbeVerdict::Needed;
    redundant += r.verdict == ProbeVerdict::Redundant;
    inconclusive += r.verdict == ProbeVerdict::Inconclusive;
  }
  emit(cfg, lines.str());
  std::ostringstream summary;
  summary << "base " << base.size() << " pairs; needed " << needed << '/' << records.size() << ", redundant "
          << redundant << ", inconclusive " << inconclusive << '\n';
  (cfg.out ? std::cout : std::cerr) << summary.str();
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  const BoardOrder order(cfg.order);
  SolverProblem problem = SolverProblem::for_model(model_of(cfg));
  try {
    for (const auto& e : cfg.equal) {
      const auto pair = SmallConstraint::parse(e, order);
      problem.equalities.emplace_back(pair.a, pair.b);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<std::pair<std::string, Grid>> puzzles;
  if (!cfg.puzzle.empty()) {
    try {
      puzzles.emplace_back("puzzle", Grid::parse(cfg.puzzle, order));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else if (cfg.corpus) {
    const Corpus corpus = read_corpus_checked(*cfg.corpus, order);
    for (std::size_t i = 0; i < corpus.puzzles.size(); ++i)
      puzzles.emplace_back("puzzle " + std::to_string(i + 1), corpus.puzzles[i]);
  } else {
    puzzles.emplace_back("no givens", Grid(order));
  }

  SolverOptions options = solver_options(cfg);
  std::ostringstream out;
  Json all = Json::array();
  for (const auto& [name, givens] : puzzles) {
    SolverProblem p = problem;
    p.givens = givens;
    const auto outcome = solve(p, options);
    if (cfg.format == "json") {
      Json j = {{"input", name}, {"status", status_name(outcome.status)}};
      j["solution"] = outcome.solution ? Json(outcome.solution->to_string()) : Json(nullptr);
      j["stats"] = stats_json(outcome.stats);
      all.push_back(j);
      continue;
    }
    out << name << ": " << status_name(outcome.status);
    if (outcome.solution) out << ' ' << outcome.solution->to_string();
    out << " (nodes " << outcome.stats.nodes << (outcome.stats.degenerate ? ", degenerate" : "") << ")\n";
  }
  emit(cfg, cfg.format == "json" ? all.dump(2) + "\n" : out.str());
  return 0;
}

int cmd_figure(const RunConfig& cfg) {
  if (cfg.report) {
    if (!cfg.out) throw UsageError("figure --report needs --out PREFIX");
    Json report;
    std::vector<ReportClass> classes;
    try {
      std::ifstream in(*cfg.report);
      report = Json::parse(in);
      classes = report_classes(report);
    } catch (const std::exception& e) {
      throw IoError("cannot read report " + cfg.report->string() + ": " + e.what());
    }
    std::vector<ConstraintSet> sudoku, not_sudoku;
    for (const auto& c : classes) {
      if (c.chute_line_pair && !cfg.all_classes) continue;
      (c.verdict == VerdictKind::Sudoku ? sudoku : not_sudoku).push_back(c.model);
    }
    const std::string k = std::to_string(report.at("n_missing").get<int>());
    const fs::path first = cfg.out->string() + "_sudoku.svg";
    const fs::path second = cfg.out->string() + "_not_sudoku.svg";
    write_file(first, svg_sheet("Missing(" + k + ") Sudoku classes", sudoku));
    write_file(second, svg_sheet("Missing(" + k + ") non-Sudoku classes", not_sudoku));
    std::cout << "wrote " << first.string() << " (" << sudoku.size() << " boards)\n"
              << "wrote " << second.string() << " (" << not_sudoku.size() << " boards)\n";
    return 0;
  }
  const ConstraintSet model = model_of(cfg);
  if (cfg.format == "svg") {
    emit(cfg, svg_board(model));
  } else {
    emit(cfg, ascii_board(model) + "legend: # cell in a missing region; " +
                  (model.is_full() ? std::string("nothing missing") : model.model_string()) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Redundancy analysis of Sudoku region constraints"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_order = [&](CLI::App* sub) {
    sub->add_option("--order", cfg.order, "box size n; the board is n^2 x n^2")->check(CLI::Range(2, 4));
  };
  auto add_missing = [&](CLI::App* sub) {
    sub->add_option("--missing,-m", cfg.missing, "comma-separated absent constraints, e.g. R2,C5,B1; empty for none")
        ->expected(0, 1);
  };
  auto add_common = [&](CLI::App* sub) {
    add_order(sub);
    sub->add_option("--out,-o", cfg.out, "output file");
    sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "solver node budget per solve call")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  };

  auto* closure_cmd = app.add_subcommand("closure", "apply the chute lemmas until nothing changes");
  add_common(closure_cmd);
  add_missing(closure_cmd);
  closure_cmd->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* classify_cmd = app.add_subcommand("classify", "classify every model with n missing constraints");
  add_common(classify_cmd);
  classify_cmd->add_option("-n", cfg.n_missing, "number of missing constraints")->required();
  classify_cmd->add_flag("!--no-witness", cfg.witness_each, "only search witnesses for unmatched classes");

  auto* catalog_cmd = app.add_subcommand("catalog", "minimal stuck models with witness grids");
  add_common(catalog_cmd);
  catalog_cmd->add_option("-n,--max-missing", cfg.n_missing, "largest missing count to explore")->required();

  auto* probe_cmd = app.add_subcommand("probe", "check that each small constraint of a model is needed");
  add_common(probe_cmd);
  add_missing(probe_cmd);
  probe_cmd->add_option("--sample", cfg.sample, "probe K random pairs");
  probe_cmd->add_flag("--full", cfg.full, "probe every pair");
  probe_cmd->add_option("--pair", cfg.pairs, "probe this pair, e.g. r1c1-r1c2");
  probe_cmd->add_option("--corpus", cfg.corpus, std::string("puzzle file used as givens (default $") + kCorpusEnv + ")");
  probe_cmd->add_flag("!--no-fallback", cfg.unseeded_fallback, "skip the search without givens");

  auto* solve_cmd = app.add_subcommand("solve", "solve a model, optionally with givens and forced equalities");
  add_common(solve_cmd);
  add_missing(solve_cmd);
  solve_cmd->add_option("--puzzle", cfg.puzzle, "givens, one character per cell, 0 or . for blank");
  solve_cmd->add_option("--corpus", cfg.corpus, "solve every puzzle in this file");
  solve_cmd->add_option("--equal", cfg.equal, "force two cells equal, e.g. r5c1=r5c2");
  solve_cmd->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* figure_cmd = app.add_subcommand("figure", "draw a model, or sheets of all classes in a report");
  add_common(figure_cmd);
  add_missing(figure_cmd);
  figure_cmd->add_option("--format", cfg.format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
  figure_cmd->add_option("--report", cfg.report, "classification report written by classify --out");
  figure_cmd->add_flag("--all", cfg.all_classes, "include classes missing two lines of one chute");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    validate_paths(cfg);
    if (cfg.command == "closure") return cmd_closure(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "catalog") return cmd_catalog(cfg);
    if (cfg.command == "probe") return cmd_probe(cfg);
    if (cfg.command == "solve") return cmd_solve(cfg);
    return cmd_figure(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
