#include <doctest.h>

#include "trustlogic/checker.hpp"
#include "trustlogic/harness.hpp"

using namespace trustlogic;

TEST_CASE("generators are deterministic in the seed") {
  GenParams params;
  CHECK(model_to_json(gen_model(params, 42)) ==
        model_to_json(gen_model(params, 42)));
  CHECK(model_to_json(gen_model(params, 42)) !=
        model_to_json(gen_model(params, 43)));
  Dataset vars({"x1", "x2"});
  CHECK(*gen_formula(params, vars, 42) == *gen_formula(params, vars, 42));
}

TEST_CASE("generator contracts") {
  GenParams params;
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t seed = trial_seed(41, 13, trial);
    TrustModel m = gen_model(params, seed);
    CHECK(m.world_count() >= 1);
    CHECK(m.world_count() <= params.max_worlds);
    CHECK(static_cast<int>(m.variables.size()) <= params.max_variables);
    FormulaPtr f = gen_formula(params, m.variables, seed);
    CHECK(free_variables(*f).subset_of(m.variables));
    CHECK(node_count(*f) >= 1);
  }
}

TEST_CASE("boundary params give a single-world model with no variables") {
  GenParams params;
  params.max_worlds = 1;
  params.max_variables = 0;
  TrustModel m = gen_model(params, 7);
  CHECK(m.world_count() == 1);
  CHECK(m.variables.empty());
}

TEST_CASE("formula generator respects the depth cap") {
  GenParams params;
  params.max_depth = 3;
  Dataset vars({"x1"});
  std::function<int(const Formula&)> depth = [&](const Formula& f) -> int {
    switch (f.kind()) {
      case FormulaKind::Atom:
        return 1;
      case FormulaKind::Implies:
        return 1 + std::max(depth(*f.lhs()), depth(*f.rhs()));
      default:
        return 1 + depth(*f.body());
    }
  };
  for (int trial = 0; trial < 300; ++trial) {
    FormulaPtr f = gen_formula(params, vars, trial_seed(42, 14, trial));
    CHECK(depth(*f) <= 3);
  }
}

TEST_CASE("zero trials give an empty passing report") {
  GenParams params;
  SuiteReport r1 = soundness_suite(params, 0);
  CHECK(r1.passed());
  CHECK(r1.trials == 0);
  SuiteReport r2 = equivalence_suite(params, 0);
  CHECK(r2.passed());
  SuiteReport r3 = necessitation_suite(params, 0);
  CHECK(r3.passed());
  CHECK(r3.trials == 0);
}

TEST_CASE("small suite runs pass") {
  GenParams params;
  SuiteReport s = soundness_suite(params, 30);
  CHECK(s.passed());
  CHECK(s.trials == 30 * 11);
  SuiteReport e = equivalence_suite(params, 300);
  CHECK(e.passed());
  CHECK(e.trials == 300);
  SuiteReport n = necessitation_suite(params, 50);
  CHECK(n.passed());
  CHECK(n.trials == 50);
  CHECK(n.skipped >= 0);
}

TEST_CASE("suite reports are deterministic") {
  GenParams params;
  params.seed = 1234;
  CHECK(equivalence_suite(params, 200).to_json()["trials"] ==
        equivalence_suite(params, 200).to_json()["trials"]);
  SuiteReport a = necessitation_suite(params, 25);
  SuiteReport b = necessitation_suite(params, 25);
  CHECK(a.trials == b.trials);
  CHECK(a.skipped == b.skipped);
}

TEST_CASE("broken Truth schema is caught and shrunk") {
  GenParams params;
  params.seed = 99;
  SuiteReport report = soundness_suite(params, 200, /*inject_broken_truth=*/true);
  REQUIRE_FALSE(report.passed());
  for (const Failure& f : report.failures) {
    CHECK(f.schema == "Truth");
    CHECK(f.expected);
    CHECK_FALSE(f.got);
    // Replayable: the failing instance is embedded as a loadable model.
    TrustModel m = model_from_json(f.model);
    FormulaPtr formula = parse_formula(f.formula);
    Dataset announced(f.announced.empty()
                          ? std::vector<VarName>{}
                          : [&] {
                              std::vector<VarName> names;
                              std::string cur;
                              for (char c : f.announced) {
                                if (c == ',') {
                                  names.push_back(cur);
                                  cur.clear();
                                } else {
                                  cur += c;
                                }
                              }
                              names.push_back(cur);
                              return names;
                            }());
    CHECK_FALSE(eval(m, {f.world, announced}, *formula));
  }
}

TEST_CASE("the broken Truth schema fails on the flagship model") {
  // B{t}{t} decline -> decline at (w2, {}): w2 sees w3 via t, t is
  // trustworthy there and decline holds there, but decline fails at w2.
  TrustModel m = load_model(R"({
    "worlds": ["w1", "w2", "w3"],
    "variables": ["t"],
    "indistinguishability": {"t": [["w1"], ["w2", "w3"]]},
    "trustworthy": {"w1": ["t"], "w2": [], "w3": ["t"]},
    "valuation": {"decline": {"permanent": ["w3"], "announced": []}}})");
  FormulaPtr broken = parse_formula("B{t}{t} decline -> decline");
  CHECK_FALSE(eval(m, {"w2", {}}, *broken));
  CHECK(eval(m, {"w2", {}}, *parse_formula("B{}{t} decline -> decline")));
}

TEST_CASE("necessitation suite rejects oversized variable caps") {
  GenParams params;
  params.max_variables = 5;
  CHECK_THROWS_AS(necessitation_suite(params, 1), SemanticError);
}

TEST_CASE("sized formula generator hits the requested node count") {
  Dataset vars({"x1", "x2", "x3", "x4", "x5"});
  for (int nodes : {1, 2, 10, 100, 1000}) {
    FormulaPtr f = gen_sized_formula(17, vars, nodes, 3);
    CHECK(node_count(*f) == static_cast<std::size_t>(nodes));
  }
}
