#include <doctest.h>

#include "proof_fixtures.hpp"
#include "trustlogic/checker.hpp"
#include "trustlogic/harness.hpp"
#include "trustlogic/proofs.hpp"

using namespace trustlogic;
using namespace trustlogic::testing;

namespace {
const std::string kFixtures = FIXTURES_DIR;
}

TEST_CASE("instantiate produces the schema instances") {
  Substitution sub;
  sub.formulas["phi"] = parse_formula("p");
  sub.datasets["X"] = Dataset({"x"});
  CHECK(*instantiate(Schema::Truth, sub) == *parse_formula("B{}{x} p -> p"));

  Substitution ea;
  ea.formulas["phi"] = parse_formula("p");
  CHECK(*instantiate(Schema::EmptyAnnouncement, ea) ==
        *parse_formula("!(([] p -> p) -> !(p -> [] p))"));

  Substitution comm;
  comm.formulas["phi"] = parse_formula("p");
  comm.datasets["T"] = Dataset({"t"});
  comm.datasets["X"] = Dataset({"x"});
  comm.datasets["Y"] = Dataset({"y"});
  CHECK(*instantiate(Schema::Commutativity, comm) ==
        *parse_formula("[y] B{t}{x} p <-> B{t}{x,y} [y] p"));
}

TEST_CASE("instantiate enforces bindings and side conditions") {
  Substitution missing;
  missing.formulas["phi"] = parse_formula("p");
  CHECK_THROWS_AS(instantiate(Schema::Truth, missing), InstantiationError);

  Substitution extra;
  extra.formulas["phi"] = parse_formula("p");
  extra.datasets["X"] = Dataset{};
  CHECK_THROWS_AS(instantiate(Schema::EmptyAnnouncement, extra),
                  InstantiationError);

  Substitution mono;
  mono.formulas["phi"] = parse_formula("p");
  mono.datasets["T"] = Dataset({"t"});
  mono.datasets["T'"] = Dataset{};
  mono.datasets["X"] = Dataset({"x"});
  mono.datasets["X'"] = Dataset({"x"});
  CHECK_THROWS_AS(instantiate(Schema::Monotonicity, mono), InstantiationError);

  mono.datasets["T'"] = Dataset({"t"});
  CHECK(*instantiate(Schema::Monotonicity, mono) ==
        *parse_formula("B{t}{x} p -> B{t}{x} p"));

  CHECK_THROWS_AS(instantiate(Schema::Tautology, Substitution{}),
                  InstantiationError);
}

TEST_CASE("is_tautology") {
  CHECK(is_tautology(*parse_formula("p -> p")));
  CHECK_FALSE(is_tautology(*parse_formula("B{}{x} p -> p")));
  CHECK(is_tautology(*parse_formula("((p -> q) -> p) -> p")));  // Peirce
  CHECK(is_tautology(*parse_formula("false -> p")));
  CHECK_FALSE(is_tautology(*parse_formula("p -> q")));
  // The same belief subformula abstracts to the same atom on both sides.
  CHECK(is_tautology(*parse_formula("B{t}{x} p -> B{t}{x} p")));
  CHECK_FALSE(is_tautology(*parse_formula("B{t}{x} p -> B{t}{y} p")));
  CHECK(is_tautology(*parse_formula("!!p <-> p")));
}

TEST_CASE("tautology atom cap") {
  std::string big = "p1";
  for (int i = 2; i <= 21; ++i) {
    big += " -> p" + std::to_string(i);
  }
  CHECK_THROWS_AS(is_tautology(*parse_formula(big)), SemanticError);
}

TEST_CASE("fixture proofs are accepted") {
  Proof ea = load_fixture_proof(kFixtures, "proof_empty_announcement.json");
  ProofVerdict v1 = check_proof(ea);
  CHECK(v1.accepted);
  CHECK(*ea.conclusion == *parse_formula("[] p -> p"));

  Proof pi = load_fixture_proof(kFixtures, "proof_positive_introspection.json");
  ProofVerdict v2 = check_proof(pi);
  CAPTURE(v2.line);
  CAPTURE(v2.reason);
  CHECK(v2.accepted);
  CHECK(*pi.conclusion == *parse_formula("B{t}{x} p -> B{}{x} B{t}{x} p"));
}

TEST_CASE("every catalogued mutation is rejected at its line") {
  Proof ea = load_fixture_proof(kFixtures, "proof_empty_announcement.json");
  for (const ProofMutation& m : empty_announcement_mutations(ea)) {
    ProofVerdict v = check_proof(m.proof);
    CAPTURE(m.name);
    CHECK_FALSE(v.accepted);
    CHECK(v.line == m.expect_line);
  }
  Proof pi = load_fixture_proof(kFixtures, "proof_positive_introspection.json");
  for (const ProofMutation& m : positive_introspection_mutations(pi)) {
    ProofVerdict v = check_proof(m.proof);
    CAPTURE(m.name);
    CHECK_FALSE(v.accepted);
    CHECK(v.line == m.expect_line);
  }
}

TEST_CASE("conclusions of accepted proofs hold on random models") {
  Proof ea = load_fixture_proof(kFixtures, "proof_empty_announcement.json");
  Proof pi = load_fixture_proof(kFixtures, "proof_positive_introspection.json");
  GenParams params;
  params.max_variables = 3;
  for (int trial = 0; trial < 150; ++trial) {
    SplitRng r(trial_seed(31, 11, trial));
    TrustModel m = gen_model(params, r.next());
    for (const FormulaPtr& conclusion : {ea.conclusion, pi.conclusion}) {
      if (!free_variables(*conclusion).subset_of(m.variables)) continue;
      for (const auto& w : m.worlds) {
        CHECK(eval(m, {w, {}}, *conclusion));
      }
    }
  }
}

TEST_CASE("accepted tautologies stay true under formula substitution") {
  GenParams params;
  for (int trial = 0; trial < 150; ++trial) {
    SplitRng r(trial_seed(32, 12, trial));
    TrustModel m = gen_model(params, r.next());
    FormulaPtr a = gen_formula(params, m.variables, r.next());
    FormulaPtr b = gen_formula(params, m.variables, r.next());
    // (a -> b) -> (!b -> !a), contraposition with arbitrary formulas.
    FormulaPtr inst = Formula::implies(
        Formula::implies(a, b),
        Formula::implies(Formula::negation(b), Formula::negation(a)));
    CHECK(is_tautology(*inst));
    EvalPoint pt{m.worlds[r.below(m.worlds.size())], {}};
    CHECK(eval(m, pt, *inst));
  }
}

TEST_CASE("derivations allow assumptions and theorems but no necessitation") {
  std::vector<FormulaPtr> assumptions = {parse_formula("p"),
                                         parse_formula("p -> q")};
  Proof d;
  d.conclusion = parse_formula("q");
  {
    ProofLine l1;
    l1.kind = ProofLine::Kind::Assumption;
    l1.from = 1;
    l1.formula = parse_formula("p");
    ProofLine l2;
    l2.kind = ProofLine::Kind::Assumption;
    l2.from = 2;
    l2.formula = parse_formula("p -> q");
    ProofLine l3;
    l3.kind = ProofLine::Kind::ModusPonens;
    l3.from = 1;
    l3.implication = 2;
    l3.formula = parse_formula("q");
    d.lines = {l1, l2, l3};
  }
  CHECK(check_derivation(assumptions, d).accepted);

  // Assumption lines are rejected by the plain proof checker.
  CHECK_FALSE(check_proof(d).accepted);

  // Necessitation is not available under assumptions.
  Proof bad = d;
  ProofLine nec;
  nec.kind = ProofLine::Kind::NecBelief;
  nec.from = 3;
  nec.nec_trust = Dataset{};
  nec.nec_data = Dataset{};
  nec.formula = parse_formula("B{}{} q");
  bad.lines.push_back(nec);
  bad.conclusion = nec.formula;
  ProofVerdict v = check_derivation(assumptions, bad);
  CHECK_FALSE(v.accepted);
  CHECK(v.line == 4);
  CHECK(v.reason.find("Necessitation") != std::string::npos);

  // A derivation can cite an already checked theorem.
  Proof theorem = load_fixture_proof(kFixtures, "proof_empty_announcement.json");
  Proof cite;
  cite.conclusion = theorem.conclusion;
  ProofLine l;
  l.kind = ProofLine::Kind::Theorem;
  l.theorem = std::make_shared<Proof>(theorem);
  l.formula = theorem.conclusion;
  cite.lines = {l};
  CHECK(check_derivation({}, cite).accepted);

  // With no assumptions, axiom/MP derivations match the proof checker.
  Proof ea = load_fixture_proof(kFixtures, "proof_empty_announcement.json");
  CHECK(check_derivation({}, ea).accepted == check_proof(ea).accepted);

  // Out-of-range assumption index.
  Proof oob = d;
  oob.lines[1].from = 3;
  ProofVerdict v2 = check_derivation(assumptions, oob);
  CHECK_FALSE(v2.accepted);
  CHECK(v2.line == 2);
}

TEST_CASE("proof json round trips through the loader") {
  Proof pf = load_proof(R"({
    "conclusion": "[x] (p -> p)",
    "lines": [
      {"formula": "p -> p", "by": {"axiom": "Tautology"}},
      {"formula": "[x] (p -> p)", "by": {"necA": {"from": 1, "X": ["x"]}}}
    ]})");
  CHECK(check_proof(pf).accepted);

  CHECK_THROWS_AS(load_proof("{"), ModelError);
  CHECK_THROWS_AS(load_proof(R"({"conclusion": "p"})"), ModelError);
  CHECK_THROWS_AS(load_proof(R"({"conclusion": "p", "lines": [
    {"formula": "p ->", "by": {"axiom": "Tautology"}}]})"),
                  ModelError);
  CHECK_THROWS_AS(load_proof(R"({"conclusion": "p", "lines": [
    {"formula": "p", "by": {"axiom": "NoSuchSchema"}}]})"),
                  ModelError);
  CHECK_THROWS_AS(load_proof(R"({"conclusion": "p", "lines": [
    {"formula": "p", "by": {"wat": 1}}]})"),
                  ModelError);
}

TEST_CASE("empty proof is rejected") {
  Proof empty;
  empty.conclusion = parse_formula("p");
  ProofVerdict v = check_proof(empty);
  CHECK_FALSE(v.accepted);
  CHECK(v.line == 0);
}
