#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "trustlogic/model.hpp"
#include "trustlogic/syntax.hpp"

#include <json.hpp>

namespace trustlogic {

// The axiom schemas of the logic, plus Tautology for arbitrary propositional
// tautologies over the full language.
enum class Schema {
  Truth,             // B{}{X} phi -> phi
  DistributivityB,   // B{T}{X}(phi -> psi) -> (B{T}{X} phi -> B{T}{X} psi)
  DistributivityA,   // [X](phi -> psi) -> ([X] phi -> [X] psi)
  NegIntrospection,  // !B{T}{X} phi -> B{}{X} !B{T}{X} phi
  Monotonicity,      // B{T}{X} phi -> B{T'}{X'} phi   (T ⊆ T', X ⊆ X')
  Trust,             // B{T}{X}(B{T}{Y} phi -> phi)
  Combination,       // [X][Y] phi <-> [X∪Y] phi
  Commutativity,     // [Y]B{T}{X} phi <-> B{T}{Y∪X}[Y] phi
  Duality,           // ![X] phi <-> [X] !phi
  EmptyAnnouncement, // [] phi <-> phi
  Tautology
};

const char* schema_name(Schema s);
Schema schema_from_name(const std::string& name);  // throws ModelError

// Bindings for a schema's metavariables. Formula metavariables are "phi" and
// "psi"; dataset metavariables are "X", "Y", "T", "T'", "X'".
struct Substitution {
  std::map<std::string, FormulaPtr> formulas;
  std::map<std::string, Dataset> datasets;
};

// A substitution that does not fit its schema: missing or extra bindings, or
// a violated side condition.
class InstantiationError : public std::runtime_error {
 public:
  explicit InstantiationError(const std::string& message)
      : std::runtime_error(message) {}
};

// The concrete formula a schema yields under a substitution, with <->
// expanded into the primitive connectives. Monotonicity enforces T ⊆ T' and
// X ⊆ X'. Tautology is not instantiable.
FormulaPtr instantiate(Schema s, const Substitution& sub);

// Truth-table validity after abstracting each maximal Belief/Announce
// subformula into a propositional atom (structurally identical subtrees
// share one atom). Throws SemanticError if more than 20 distinct atoms
// remain after abstraction.
bool is_tautology(const Formula& f);

struct Proof;

struct ProofLine {
  enum class Kind { Axiom, ModusPonens, NecBelief, NecAnnounce, Assumption, Theorem };

  FormulaPtr formula;  // what the line claims
  Kind kind = Kind::Axiom;
  Schema schema = Schema::Tautology;  // Axiom
  Substitution subst;                 // Axiom
  int from = 0;                       // MP/Nec premise line, or assumption index (1-based)
  int implication = 0;                // MP implication line (1-based)
  Dataset nec_trust;                  // NecBelief T
  Dataset nec_data;                   // NecBelief/NecAnnounce X
  std::shared_ptr<const Proof> theorem;  // Theorem (derivations only)
};

struct Proof {
  std::vector<ProofLine> lines;
  FormulaPtr conclusion;
};

// `line` is 1-based and meaningful only when rejected.
struct ProofVerdict {
  bool accepted = false;
  int line = 0;
  std::string reason;
};

// Verifies a theorem derivation: axiom instances (including Tautology lines
// checked by truth table), Modus Ponens, and the two Necessitation rules.
// Rejection is a verdict, not an exception.
ProofVerdict check_proof(const Proof& pf);

// Verifies a derivation from assumptions: axiom instances, assumption
// citations, previously checked theorems (embedded proofs), and Modus Ponens
// only — Necessitation lines are rejected.
ProofVerdict check_derivation(const std::vector<FormulaPtr>& assumptions,
                              const Proof& pf);

// Proof file format:
//   {"conclusion": "<formula>",
//    "lines": [
//      {"formula": "...", "by": {"axiom": "Truth", "subst": {"phi": "p", "X": ["x"]}}},
//      {"formula": "...", "by": {"mp": [1, 2]}},
//      {"formula": "...", "by": {"necB": {"from": 3, "T": ["t"], "X": []}}},
//      {"formula": "...", "by": {"necA": {"from": 3, "X": ["x"]}}},
//      {"formula": "...", "by": {"assumption": 1}},
//      {"formula": "...", "by": {"theorem": {<proof object>}}}]}
// Line references are 1-based. Throws ModelError on malformed input.
Proof proof_from_json(const nlohmann::json& j);
Proof load_proof(const std::string& json_text);

// Assumptions file: a JSON array of formula strings.
std::vector<FormulaPtr> load_assumptions(const std::string& json_text);

}  // namespace trustlogic
