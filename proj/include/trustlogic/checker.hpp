#pragma once

#include <vector>

#include "trustlogic/model.hpp"
#include "trustlogic/syntax.hpp"

namespace trustlogic {

// One (environment, subformula) pair produced by the helper pass. `child_a`
// and `child_b` are indices of the entries holding the node's immediate
// subformulas (body, or lhs/rhs for implication); both strictly precede the
// entry itself.
struct HEntry {
  Dataset env;
  const Formula* node = nullptr;
  int child_a = -1;
  int child_b = -1;
};

// Children-first list of every subformula occurrence of `f` with the
// environment it will be evaluated under: Announce grows the environment for
// its body, everything else passes it through. Length equals node_count(f).
// Runs in time linear in the formula size. Entries borrow `f`'s nodes, so
// the tree must outlive the list.
std::vector<HEntry> hlist(const Dataset& u0, const Formula& f);

// The table the dynamic-programming checker fills: value[i][w] is the truth
// of entry i's subformula at world w under entry i's environment. Defined
// for every entry and world after a run.
struct SatTable {
  std::vector<HEntry> entries;
  std::vector<std::vector<char>> value;
};

// Rejects inputs the engines cannot answer: empty model, unknown world,
// announced set or formula variables outside the model's. Throws
// SemanticError.
void require_checkable(const TrustModel& m, const Dataset& announced,
                       const Formula& f);
void require_checkable(const TrustModel& m, const EvalPoint& pt,
                       const Formula& f);

// Direct recursive satisfaction: the reference implementation the DP engine
// is tested against. Belief ranges over all worlds indistinguishable by
// data-plus-announced in which the trust set is trustworthy; Announce
// evaluates its body with the announcement added.
bool eval(const TrustModel& m, const EvalPoint& pt, const Formula& f);

// Bottom-up table fill in hlist order. With `parallel` set, worlds within
// one entry are processed by OpenMP threads; entry order (the data
// dependency) is always sequential, so results are identical either way.
SatTable check_dp_table(const TrustModel& m, const Dataset& u0,
                        const Formula& f, bool parallel = true);
bool check_dp(const TrustModel& m, const EvalPoint& pt, const Formula& f,
              bool parallel = true);

// For a Belief formula: the worlds witnessing its failure at pt — reachable
// via the belief's data plus pt.announced, trusting its trust set, and
// falsifying its body. Empty iff the belief holds. Throws SemanticError if f
// is not a Belief node.
std::vector<WorldId> belief_counterexamples(const TrustModel& m,
                                            const EvalPoint& pt,
                                            const Formula& f);

}  // namespace trustlogic
