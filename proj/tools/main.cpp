// Command-line front end: formula checking, DP tracing, belief
// counterexamples, proof verification, randomized suites, and model
// validation.
//
// Exit codes: 0 success, 2 formula parse error, 3 model/proof file
// validation error (including rejected proofs), 4 semantic error (unknown
// world or variable, empty model, cap exceeded), 5 suite failure or engine
// disagreement.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "trustlogic/checker.hpp"
#include "trustlogic/harness.hpp"
#include "trustlogic/model.hpp"
#include "trustlogic/proofs.hpp"

using namespace trustlogic;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitFile = 3;
constexpr int kExitSemantic = 4;
constexpr int kExitSuite = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ModelError("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Dataset parse_announced(const std::string& list) {
  if (list.empty()) return {};
  std::vector<VarName> names;
  std::string cur;
  std::istringstream in(list);
  while (std::getline(in, cur, ',')) {
    if (!is_identifier(cur)) {
      throw SemanticError("'" + cur + "' is not a valid variable name");
    }
    names.push_back(cur);
  }
  return Dataset(std::move(names));
}

std::string braces(const Dataset& d) { return "{" + d.to_text() + "}"; }

int cmd_check(const std::string& model_path, const std::string& world,
              const std::string& announced, const std::string& formula,
              const std::string& engine, bool as_json) {
  TrustModel m = load_model(read_file(model_path));
  FormulaPtr f = parse_formula(formula);
  EvalPoint pt{world, parse_announced(announced)};
  bool result = false;
  if (engine == "oracle") {
    result = eval(m, pt, *f);
  } else if (engine == "dp") {
    result = check_dp(m, pt, *f);
  } else {
    const bool direct = eval(m, pt, *f);
    const bool dp = check_dp(m, pt, *f);
    if (direct != dp) {
      std::cerr << "engine disagreement: oracle=" << (direct ? "true" : "false")
                << " dp=" << (dp ? "true" : "false") << "\n";
      return kExitSuite;
    }
    result = direct;
  }
  if (as_json) {
    json out;
    out["result"] = result;
    out["engine"] = engine;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << (result ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int cmd_trace(const std::string& model_path, const std::string& world,
              const std::string& announced, const std::string& formula) {
  TrustModel m = load_model(read_file(model_path));
  FormulaPtr f = parse_formula(formula);
  EvalPoint pt{world, parse_announced(announced)};
  const int w = m.world_index(pt.world);
  SatTable t = check_dp_table(m, pt.announced, *f);
  std::cout << "H-list (" << t.entries.size() << " entries):\n";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    std::cout << "  " << (i + 1) << ": (" << braces(t.entries[i].env) << ", "
              << print_formula(*t.entries[i].node) << ")\n";
  }
  std::cout << "sat table (" << t.entries.size() * m.worlds.size()
            << " rows):\n";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    for (std::size_t v = 0; v < m.worlds.size(); ++v) {
      std::cout << "  sat[" << m.worlds[v] << ", (" << braces(t.entries[i].env)
                << ", " << print_formula(*t.entries[i].node) << ")] = "
                << (t.value[i][v] ? "true" : "false") << "\n";
    }
  }
  std::cout << "verdict: "
            << (t.value.back()[static_cast<std::size_t>(w)] ? "true" : "false")
            << "\n";
  return kExitOk;
}

int cmd_counterexample(const std::string& model_path, const std::string& world,
                       const std::string& announced,
                       const std::string& formula) {
  TrustModel m = load_model(read_file(model_path));
  FormulaPtr f = parse_formula(formula);
  EvalPoint pt{world, parse_announced(announced)};
  std::vector<WorldId> witnesses = belief_counterexamples(m, pt, *f);
  if (witnesses.empty()) {
    std::cout << "counterexamples: 0 (belief holds)\n";
    return kExitOk;
  }
  const Dataset via = f->data().union_with(pt.announced);
  std::cout << "counterexamples: " << witnesses.size() << "\n";
  for (const WorldId& v : witnesses) {
    std::cout << "  " << v << "  trust=" << braces(m.trust[static_cast<std::size_t>(
                                                  m.world_index(v))])
              << "  agrees_on=" << braces(via) << "\n";
  }
  return kExitOk;
}

int cmd_prove(const std::string& proof_path, const std::string& assumptions_path) {
  Proof pf = load_proof(read_file(proof_path));
  ProofVerdict v;
  if (assumptions_path.empty()) {
    v = check_proof(pf);
  } else {
    v = check_derivation(load_assumptions(read_file(assumptions_path)), pf);
  }
  if (v.accepted) {
    std::cout << "accepted: " << print_formula(*pf.conclusion) << "\n";
    return kExitOk;
  }
  std::cout << "rejected at line " << v.line << ": " << v.reason << "\n";
  return kExitFile;
}

int cmd_fuzz(const std::string& suite, long trials, std::uint64_t seed,
             bool as_json, bool inject_broken_truth, const GenParams& base) {
  GenParams params = base;
  params.seed = seed;
  std::vector<SuiteReport> reports;
  if (suite == "soundness" || suite == "all") {
    reports.push_back(soundness_suite(params, static_cast<int>(trials),
                                      inject_broken_truth));
  }
  if (suite == "equivalence" || suite == "all") {
    reports.push_back(equivalence_suite(params, static_cast<int>(trials)));
  }
  if (suite == "necessitation" || suite == "all") {
    reports.push_back(necessitation_suite(params, static_cast<int>(trials)));
  }
  bool ok = true;
  if (as_json) {
    json out = json::array();
    for (const SuiteReport& r : reports) {
      out.push_back(r.to_json());
      ok = ok && r.passed();
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const SuiteReport& r : reports) {
      std::cout << r.suite << ": " << r.trials << " trials";
      if (r.skipped) std::cout << " (" << r.skipped << " skipped)";
      std::cout << ", " << r.failures.size() << " failures  ["
                << static_cast<long>(r.wall_ms) << " ms]\n";
      for (const Failure& f : r.failures) {
        std::cout << "  seed=" << f.seed;
        if (!f.schema.empty()) std::cout << " schema=" << f.schema;
        std::cout << " world=" << f.world << " announced={" << f.announced
                  << "} formula=" << f.formula << "\n";
      }
      ok = ok && r.passed();
    }
  }
  return ok ? kExitOk : kExitSuite;
}

int cmd_validate(const std::string& model_path) {
  TrustModel m = load_model(read_file(model_path));
  std::cout << m.world_count() << (m.world_count() == 1 ? " world, " : " worlds, ")
            << m.variables.size()
            << (m.variables.size() == 1 ? " variable" : " variables") << "\n";
  for (const VarName& v : m.variables) {
    const std::vector<int>& block_of = m.partition_block.at(v);
    int blocks = 0;
    for (int b : block_of) blocks = std::max(blocks, b + 1);
    std::cout << "  " << v << ": " << blocks
              << (blocks == 1 ? " block" : " blocks") << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Model checking and proof checking for the dynamic logic of "
      "trust-based beliefs.\n"
      "Exit codes: 0 ok, 2 formula parse error, 3 file validation error or "
      "rejected proof,\n4 semantic error, 5 suite failure or engine "
      "disagreement."};
  app.require_subcommand(1);

  std::string model_path, world, announced, formula;
  std::string engine = "both";
  bool as_json = false;

  auto add_point_options = [&](CLI::App* cmd, bool with_engine) {
    cmd->add_option("model", model_path, "model JSON file")->required();
    cmd->add_option("--world", world, "world to evaluate at")->required();
    cmd->add_option("--announced", announced,
                    "comma-separated announced variables (default none)");
    cmd->add_option("--formula", formula, "formula text")->required();
    if (with_engine) {
      cmd->add_option("--engine", engine, "oracle|dp|both (default both)")
          ->check(CLI::IsMember({"oracle", "dp", "both"}));
      cmd->add_flag("--json", as_json, "machine-readable output");
    }
  };

  CLI::App* check = app.add_subcommand("check", "evaluate a formula at a world");
  add_point_options(check, true);

  CLI::App* trace =
      app.add_subcommand("trace", "dump the H-list and sat table of a check");
  add_point_options(trace, false);

  CLI::App* counter = app.add_subcommand(
      "counterexample", "list the worlds witnessing a belief failure");
  add_point_options(counter, false);

  std::string proof_path, assumptions_path;
  CLI::App* prove = app.add_subcommand("prove", "verify a proof file");
  prove->add_option("proof", proof_path, "proof JSON file")->required();
  prove->add_option("--assumptions", assumptions_path,
                    "JSON array of assumption formulas (switches to "
                    "derivation checking)");

  std::string suite = "all";
  long trials = 1000;
  std::uint64_t seed = 42;
  bool inject_broken_truth = false;
  GenParams base;
  CLI::App* fuzz = app.add_subcommand("fuzz", "run the randomized suites");
  fuzz->add_option("--suite", suite, "soundness|equivalence|necessitation|all")
      ->check(CLI::IsMember({"soundness", "equivalence", "necessitation", "all"}));
  fuzz->add_option("--trials", trials, "trials per suite (per schema for soundness)");
  fuzz->add_option("--seed", seed, "base seed");
  fuzz->add_flag("--json", as_json, "machine-readable report");
  fuzz->add_option("--max-worlds", base.max_worlds, "world cap per model");
  fuzz->add_option("--max-variables", base.max_variables, "variable cap per model");
  fuzz->add_option("--max-depth", base.max_depth, "formula depth cap");
  fuzz->add_flag("--inject-broken-truth", inject_broken_truth,
                 "replace the Truth schema with an unsound variant "
                 "(self-test of the suite)")
      ->group("");  // hidden

  CLI::App* validate =
      app.add_subcommand("validate", "validate a model file and print a summary");
  validate->add_option("model", model_path, "model JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      return cmd_check(model_path, world, announced, formula, engine, as_json);
    }
    if (trace->parsed()) {
      return cmd_trace(model_path, world, announced, formula);
    }
    if (counter->parsed()) {
      return cmd_counterexample(model_path, world, announced, formula);
    }
    if (prove->parsed()) {
      return cmd_prove(proof_path, assumptions_path);
    }
    if (fuzz->parsed()) {
      return cmd_fuzz(suite, trials, seed, as_json, inject_broken_truth, base);
    }
    if (validate->parsed()) {
      return cmd_validate(model_path);
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const ModelError& e) {
    std::cerr << e.what() << "\n";
    return kExitFile;
  } catch (const SemanticError& e) {
    std::cerr << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitOk;
}
