#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trustlogic/model.hpp"
#include "trustlogic/syntax.hpp"

#include <json.hpp>

namespace trustlogic {

// Caps for the random generators. Defaults keep the exhaustive sweep over
// announced sets feasible (at most 2^4 of them per model).
struct GenParams {
  int max_worlds = 6;
  int max_variables = 4;
  int max_depth = 6;
  int max_dataset = 3;
  int atom_pool = 3;
  std::uint64_t seed = 1;
};

struct Failure {
  std::uint64_t seed = 0;
  std::string schema;  // which axiom schema, when applicable
  nlohmann::json model;
  std::string formula;
  std::string world;
  std::string announced;
  bool expected = false;
  bool got = false;
  std::string detail;

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::string suite;
  long trials = 0;
  long skipped = 0;
  double wall_ms = 0;
  std::vector<Failure> failures;

  bool passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

// splitmix64; cheap, portable, and good enough for test-case generation.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n); 0 when n == 0
  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

// Fixed splittable scheme: every trial's generator state is a pure function
// of (base seed, stream, trial), so trials can run in any order or in
// parallel with identical outcomes.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t stream,
                         std::uint64_t trial);

// Random model: 1..max_worlds worlds, 0..max_variables variables, a random
// set partition per variable, random trust sets, and random permanent plus
// announced valuation entries. Deterministic in the seed.
TrustModel gen_model(const GenParams& params);
TrustModel gen_model(const GenParams& params, std::uint64_t seed);

// Random formula over `vars`, depth-capped by forcing atoms at the cap.
// Constructor weights: Atom 30%, Not 15%, Implies 20%, Belief 20%,
// Announce 15%.
FormulaPtr gen_formula(const GenParams& params, const Dataset& vars);
FormulaPtr gen_formula(const GenParams& params, const Dataset& vars,
                       std::uint64_t seed);

// Exact-size generators for the scaling benchmark: a model with the given
// counts (coarse partitions, at most max_blocks blocks per variable) and a
// modal-heavy formula with exactly `nodes` nodes.
TrustModel gen_model_exact(std::uint64_t seed, int worlds, int variables,
                           int atom_pool, int max_blocks);
FormulaPtr gen_sized_formula(std::uint64_t seed, const Dataset& vars,
                             int nodes, int max_dataset);

// Every axiom schema (plus positive introspection as a derived check)
// instantiated with random substitutions on random models and evaluated at
// every (world, announced-set) pair of each model. `inject_broken_truth`
// replaces the Truth schema with the unsound B{T}{X} phi -> phi variant to
// prove the suite can fail.
SuiteReport soundness_suite(const GenParams& params, int trials_per_schema,
                            bool inject_broken_truth = false);

// Random (model, point, formula) triples checked through the recursive
// oracle and both DP modes; any disagreement is a failure.
SuiteReport equivalence_suite(const GenParams& params, int trials);

// Samples formulas until `trials` of them are valid on their model (true at
// every world under every announced set), then checks that belief and
// announcement necessitations of each stay valid. Inapplicable samples are
// counted in `skipped`. Requires max_variables <= 4.
SuiteReport necessitation_suite(const GenParams& params, int trials);

}  // namespace trustlogic
