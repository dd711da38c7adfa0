#pragma once

// Fixture proofs and their catalogued single-line mutations, shared by the
// unit tests and the acceptance suite. Every mutation must be rejected at
// the listed line.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "trustlogic/proofs.hpp"

namespace trustlogic::testing {

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline Proof load_fixture_proof(const std::string& fixtures_dir,
                                const char* name) {
  return load_proof(slurp_file(fixtures_dir + "/" + name));
}

struct ProofMutation {
  std::string name;
  Proof proof;
  int expect_line;
};

namespace detail {

inline Proof with_claim(Proof p, int line, const char* text) {
  p.lines[static_cast<std::size_t>(line - 1)].formula = parse_formula(text);
  return p;
}

inline Proof with_negated_claim(Proof p, int line) {
  ProofLine& l = p.lines[static_cast<std::size_t>(line - 1)];
  l.formula = Formula::negation(l.formula);
  return p;
}

inline Proof with_mp(Proof p, int line, int from, int implication) {
  ProofLine& l = p.lines[static_cast<std::size_t>(line - 1)];
  l.kind = ProofLine::Kind::ModusPonens;
  l.from = from;
  l.implication = implication;
  return p;
}

inline Proof with_formula_binding(Proof p, int line, const char* var,
                                  const char* text) {
  p.lines[static_cast<std::size_t>(line - 1)].subst.formulas[var] =
      parse_formula(text);
  return p;
}

inline Proof with_dataset_binding(Proof p, int line, const char* var,
                                  Dataset value) {
  p.lines[static_cast<std::size_t>(line - 1)].subst.datasets[var] =
      std::move(value);
  return p;
}

inline Proof with_schema(Proof p, int line, Schema s) {
  p.lines[static_cast<std::size_t>(line - 1)].schema = s;
  return p;
}

inline Proof as_tautology(Proof p, int line) {
  ProofLine& l = p.lines[static_cast<std::size_t>(line - 1)];
  l.kind = ProofLine::Kind::Axiom;
  l.schema = Schema::Tautology;
  l.subst = Substitution{};
  return p;
}

inline Proof as_axiom(Proof p, int line, Schema s, Substitution sub) {
  ProofLine& l = p.lines[static_cast<std::size_t>(line - 1)];
  l.kind = ProofLine::Kind::Axiom;
  l.schema = s;
  l.subst = std::move(sub);
  return p;
}

inline Proof as_nec_announce(Proof p, int line, int from, Dataset x) {
  ProofLine& l = p.lines[static_cast<std::size_t>(line - 1)];
  l.kind = ProofLine::Kind::NecAnnounce;
  l.from = from;
  l.nec_data = std::move(x);
  return p;
}

inline Proof with_nec_from(Proof p, int line, int from) {
  p.lines[static_cast<std::size_t>(line - 1)].from = from;
  return p;
}

inline Proof with_nec_trust(Proof p, int line, Dataset t) {
  p.lines[static_cast<std::size_t>(line - 1)].nec_trust = std::move(t);
  return p;
}

inline Proof with_nec_data(Proof p, int line, Dataset x) {
  p.lines[static_cast<std::size_t>(line - 1)].nec_data = std::move(x);
  return p;
}

}  // namespace detail

// 20 single-line mutations of the three-line "[] p -> p" proof.
inline std::vector<ProofMutation> empty_announcement_mutations(const Proof& base) {
  using namespace detail;
  Substitution truth_sub;
  truth_sub.formulas["phi"] = parse_formula("p");
  truth_sub.datasets["X"] = Dataset{};
  Substitution ea_p;
  ea_p.formulas["phi"] = parse_formula("p");
  return {
      {"L1 phi bound to q", with_formula_binding(base, 1, "phi", "q"), 1},
      {"L1 schema changed to Duality", with_schema(base, 1, Schema::Duality), 1},
      {"L1 claims the unexpanded implication", with_claim(base, 1, "[] p -> p"), 1},
      {"L1 claims the q expansion", with_claim(base, 1, "!(([] q -> q) -> !(q -> [] q))"), 1},
      {"L2 consequent atom changed", with_claim(base, 2, "!(([] p -> p) -> !(p -> [] p)) -> ([] p -> q)"), 2},
      {"L2 rejustified as EmptyAnnouncement", as_axiom(base, 2, Schema::EmptyAnnouncement, ea_p), 2},
      {"L3 MP references swapped", with_mp(base, 3, 2, 1), 3},
      {"L3 MP cites line 1 twice", with_mp(base, 3, 1, 1), 3},
      {"L3 MP cites itself", with_mp(base, 3, 3, 2), 3},
      {"L3 MP cites line 0", with_mp(base, 3, 0, 2), 3},
      {"L3 claims the converse", with_claim(base, 3, "p -> [] p"), 3},
      {"L3 claim negated", with_claim(base, 3, "!([] p -> p)"), 3},
      {"L3 rejustified as announcement necessitation", as_nec_announce(base, 3, 1, Dataset{}), 3},
      {"L1 extra dataset binding", with_dataset_binding(base, 1, "X", Dataset({"x"})), 1},
      {"L2 rejustified as MP", with_mp(base, 2, 1, 1), 2},
      {"L1 rejustified as Tautology", as_tautology(base, 1), 1},
      {"L3 rejustified as Truth", as_axiom(base, 3, Schema::Truth, truth_sub), 3},
      {"L2 consequent reversed (still a tautology, breaks MP)", with_claim(base, 2, "!(([] p -> p) -> !(p -> [] p)) -> (p -> [] p)"), 3},
      {"L1 phi bound to !p", with_formula_binding(base, 1, "phi", "!p"), 1},
      {"L3 MP cites line 2 twice", with_mp(base, 3, 2, 2), 3},
  };
}

// 20 single-line mutations of the positive-introspection proof.
inline std::vector<ProofMutation> positive_introspection_mutations(const Proof& base) {
  using namespace detail;
  return {
      {"L1 phi bound to p", with_formula_binding(base, 1, "phi", "p"), 1},
      {"L1 X bound to {t}", with_dataset_binding(base, 1, "X", Dataset({"t"})), 1},
      {"L2 claim replaced by a non-tautology", with_claim(base, 2, "(B{}{x} !B{t}{x} p -> !B{t}{x} p) -> (!B{}{x} !B{t}{x} p -> B{t}{x} p)"), 2},
      {"L3 MP references swapped", with_mp(base, 3, 2, 1), 3},
      {"L4 T bound to {t}", with_dataset_binding(base, 4, "T", Dataset({"t"})), 4},
      {"L5 claim negated", with_negated_claim(base, 5), 5},
      {"L7 MP cites the wrong implication", with_mp(base, 7, 4, 5), 7},
      {"L8 phi bound to !p", with_formula_binding(base, 8, "phi", "!p"), 8},
      {"L9 claim negated", with_negated_claim(base, 9), 9},
      {"L10 MP cites line 8 twice", with_mp(base, 10, 8, 8), 10},
      {"L11 necessitation of the wrong line", with_nec_from(base, 11, 9), 11},
      {"L11 trust set changed", with_nec_trust(base, 11, Dataset({"t"})), 11},
      {"L11 data set emptied", with_nec_data(base, 11, Dataset{}), 11},
      {"L11 rejustified as announcement necessitation", as_nec_announce(base, 11, 10, Dataset({"x"})), 11},
      {"L12 psi bound to p", with_formula_binding(base, 12, "psi", "p"), 12},
      {"L13 MP references swapped", with_mp(base, 13, 12, 11), 13},
      {"L14 claim negated", with_negated_claim(base, 14), 14},
      {"L16 MP cites the wrong implication", with_mp(base, 16, 13, 14), 16},
      {"L16 claims the converse", with_claim(base, 16, "B{}{x} B{t}{x} p -> B{t}{x} p"), 16},
      {"L15 MP cites line 7 twice", with_mp(base, 15, 7, 7), 15},
  };
}

}  // namespace trustlogic::testing
