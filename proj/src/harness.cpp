#include "trustlogic/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>

#include "trustlogic/checker.hpp"
#include "trustlogic/proofs.hpp"

namespace trustlogic {

using nlohmann::json;

std::uint64_t SplitRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitRng::below(std::uint64_t n) { return n ? next() % n : 0; }

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t stream,
                         std::uint64_t trial) {
  SplitRng mix(base ^ (stream * 0xd1b54a32d192ed03ULL) ^
               (trial * 0x9e3779b97f4a7c15ULL));
  return mix.next();
}

json Failure::to_json() const {
  json j;
  j["seed"] = seed;
  if (!schema.empty()) j["schema"] = schema;
  j["model"] = model;
  j["formula"] = formula;
  j["world"] = world;
  j["announced"] = announced;
  j["expected"] = expected;
  j["got"] = got;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

json SuiteReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["trials"] = trials;
  j["skipped"] = skipped;
  j["wall_ms"] = wall_ms;
  json fails = json::array();
  for (const Failure& f : failures) fails.push_back(f.to_json());
  j["failures"] = std::move(fails);
  return j;
}

namespace {

std::string numbered(const char* prefix, int i) {
  return std::string(prefix) + std::to_string(i);
}

Dataset random_subset(SplitRng& r, const Dataset& pool, int max_size) {
  const int limit = std::min<int>(max_size, static_cast<int>(pool.size()));
  if (limit <= 0) return {};
  const int k = static_cast<int>(r.below(static_cast<std::uint64_t>(limit) + 1));
  std::vector<VarName> names(pool.begin(), pool.end());
  for (int i = 0; i < k; ++i) {
    std::swap(names[static_cast<std::size_t>(i)],
              names[i + static_cast<std::size_t>(r.below(names.size() -
                                                         static_cast<std::size_t>(i)))]);
  }
  names.resize(static_cast<std::size_t>(k));
  return Dataset(std::move(names));
}

Dataset random_nonempty_subset(SplitRng& r, const Dataset& pool, int max_size) {
  if (pool.empty()) return {};
  Dataset one({pool.names()[r.below(pool.size())]});
  return one.union_with(random_subset(r, pool, max_size - 1));
}

TrustModel gen_model_with(SplitRng& r, int n_worlds, int n_vars, int atom_pool,
                          int max_blocks, int max_dataset) {
  TrustModel m;
  for (int i = 1; i <= n_worlds; ++i) m.worlds.push_back(numbered("w", i));
  {
    std::vector<VarName> vars;
    for (int i = 1; i <= n_vars; ++i) vars.push_back(numbered("x", i));
    m.variables = Dataset(std::move(vars));
  }
  for (const VarName& v : m.variables) {
    const int blocks = 1 + static_cast<int>(r.below(
                               static_cast<std::uint64_t>(
                                   std::min(max_blocks, n_worlds))));
    std::vector<int> block_of(static_cast<std::size_t>(n_worlds));
    for (int w = 0; w < n_worlds; ++w) {
      block_of[static_cast<std::size_t>(w)] =
          static_cast<int>(r.below(static_cast<std::uint64_t>(blocks)));
    }
    m.partition_block[v] = std::move(block_of);
  }
  for (int w = 0; w < n_worlds; ++w) {
    std::vector<VarName> trusted;
    for (const VarName& v : m.variables) {
      if (r.coin()) trusted.push_back(v);
    }
    m.trust.push_back(Dataset(std::move(trusted)));
  }
  for (int a = 1; a <= atom_pool; ++a) {
    ValuationEntry entry;
    for (int w = 0; w < n_worlds; ++w) {
      if (r.coin()) entry.permanent.push_back(w);
    }
    const int announced =
        static_cast<int>(r.below(static_cast<std::uint64_t>(n_worlds) + 1));
    for (int i = 0; i < announced; ++i) {
      entry.announced.emplace_back(
          static_cast<int>(r.below(static_cast<std::uint64_t>(n_worlds))),
          random_subset(r, m.variables, max_dataset));
    }
    std::sort(entry.announced.begin(), entry.announced.end());
    entry.announced.erase(
        std::unique(entry.announced.begin(), entry.announced.end()),
        entry.announced.end());
    m.valuation[numbered("p", a)] = std::move(entry);
  }
  m.finalize();
  return m;
}

TrustModel gen_model_with(SplitRng& r, const GenParams& p) {
  const int n_worlds =
      1 + static_cast<int>(r.below(static_cast<std::uint64_t>(p.max_worlds)));
  const int n_vars = static_cast<int>(
      r.below(static_cast<std::uint64_t>(p.max_variables) + 1));
  return gen_model_with(r, n_worlds, n_vars, p.atom_pool, n_worlds,
                        p.max_dataset);
}

FormulaPtr gen_formula_with(SplitRng& r, const GenParams& p,
                            const Dataset& vars, int depth_left) {
  auto atom = [&] {
    return Formula::atom(
        numbered("p", 1 + static_cast<int>(r.below(
                             static_cast<std::uint64_t>(p.atom_pool)))));
  };
  if (depth_left <= 1) return atom();
  const std::uint64_t roll = r.below(100);
  if (roll < 30) return atom();
  if (roll < 45) {
    return Formula::negation(gen_formula_with(r, p, vars, depth_left - 1));
  }
  if (roll < 65) {
    FormulaPtr lhs = gen_formula_with(r, p, vars, depth_left - 1);
    return Formula::implies(std::move(lhs),
                            gen_formula_with(r, p, vars, depth_left - 1));
  }
  if (roll < 85) {
    Dataset trust = random_subset(r, vars, p.max_dataset);
    Dataset data = random_subset(r, vars, p.max_dataset);
    return Formula::belief(std::move(trust), std::move(data),
                           gen_formula_with(r, p, vars, depth_left - 1));
  }
  return Formula::announce(random_subset(r, vars, p.max_dataset),
                           gen_formula_with(r, p, vars, depth_left - 1));
}

std::vector<Dataset> all_subsets(const Dataset& vars) {
  if (vars.size() > 16) {
    throw SemanticError("too many variables for an exhaustive announced-set sweep");
  }
  const auto& names = vars.names();
  std::vector<Dataset> out;
  out.reserve(1u << names.size());
  for (std::uint64_t mask = 0; mask < (1ULL << names.size()); ++mask) {
    std::vector<VarName> members;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (mask & (1ULL << i)) members.push_back(names[i]);
    }
    out.push_back(Dataset(std::move(members)));
  }
  return out;
}

// True at every world of m under every announced set.
bool valid_on_model(const TrustModel& m, const Formula& f) {
  for (const Dataset& u : all_subsets(m.variables)) {
    SatTable t = check_dp_table(m, u, f, /*parallel=*/false);
    const std::vector<char>& row = t.value.back();
    for (char v : row) {
      if (!v) return false;
    }
  }
  return true;
}

using TrialFn = std::function<std::optional<Failure>(const GenParams&, std::uint64_t)>;

// Reruns a failing trial with smaller caps (same seed); the first reduced
// instance that still fails replaces the original, giving a smaller
// reproduction without a second search.
std::optional<Failure> run_with_shrink(const TrialFn& fn, const GenParams& params,
                                       std::uint64_t seed) {
  std::optional<Failure> failure = fn(params, seed);
  if (!failure) return failure;
  static constexpr int kLadder[][2] = {{1, 1}, {1, 2}, {2, 2}, {2, 3},
                                       {3, 3}, {3, 4}, {4, 5}, {5, 6}};
  for (const auto& step : kLadder) {
    if (step[0] >= params.max_worlds && step[1] >= params.max_depth) break;
    GenParams reduced = params;
    reduced.max_worlds = std::min(step[0], params.max_worlds);
    reduced.max_depth = std::min(step[1], params.max_depth);
    if (std::optional<Failure> smaller = fn(reduced, seed)) {
      smaller->detail += " (shrunk to max_worlds=" +
                         std::to_string(reduced.max_worlds) +
                         ", max_depth=" + std::to_string(reduced.max_depth) + ")";
      return smaller;
    }
  }
  return failure;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void run_trials(SuiteReport& report, long trials, const TrialFn& fn,
                const GenParams& params, std::uint64_t stream) {
  std::vector<std::optional<Failure>> results(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < trials; ++i) {
    results[static_cast<std::size_t>(i)] =
        run_with_shrink(fn, params, trial_seed(params.seed, stream,
                                               static_cast<std::uint64_t>(i)));
  }
  for (std::optional<Failure>& r : results) {
    ++report.trials;
    if (r) report.failures.push_back(std::move(*r));
  }
}

constexpr std::uint64_t kSoundnessStreamBase = 100;
constexpr std::uint64_t kEquivalenceStream = 1000;
constexpr std::uint64_t kNecessitationStream = 2000;

struct SoundnessCase {
  const char* name;
  // Builds a random instance of the schema over the model's variables.
  FormulaPtr (*build)(SplitRng&, const GenParams&, const Dataset&);
};

FormulaPtr rand_formula(SplitRng& r, const GenParams& p, const Dataset& vars) {
  return gen_formula_with(r, p, vars, p.max_depth);
}

FormulaPtr via_schema(Schema s, Substitution sub) { return instantiate(s, sub); }

const std::array<SoundnessCase, 11>& soundness_cases() {
  static const std::array<SoundnessCase, 11> cases = {{
      {"Truth",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         sub.datasets["X"] = random_subset(r, vars, p.max_dataset);
         return via_schema(Schema::Truth, std::move(sub));
       }},
      {"DistributivityB",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         sub.formulas["psi"] = rand_formula(r, p, vars);
         sub.datasets["T"] = random_subset(r, vars, p.max_dataset);
         sub.datasets["X"] = random_subset(r, vars, p.max_dataset);
         return via_schema(Schema::DistributivityB, std::move(sub));
       }},
      {"DistributivityA",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         sub.formulas["psi"] = rand_formula(r, p, vars);
         sub.datasets["X"] = random_subset(r, vars, p.max_dataset);
         return via_schema(Schema::DistributivityA, std::move(sub));
       }},
      {"NegIntrospection",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         sub.datasets["T"] = random_subset(r, vars, p.max_dataset);
         sub.datasets["X"] = random_subset(r, vars, p.max_dataset);
         return via_schema(Schema::NegIntrospection, std::move(sub));
       }},
      {"Monotonicity",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         Dataset tp = random_subset(r, vars, p.max_dataset);
         Dataset xp = random_subset(r, vars, p.max_dataset);
         sub.datasets["T"] = random_subset(r, tp, p.max_dataset);
         sub.datasets["T'"] = std::move(tp);
         sub.datasets["X"] = random_subset(r, xp, p.max_dataset);
         sub.datasets["X'"] = std::move(xp);
         return via_schema(Schema::Monotonicity, std::move(sub));
       }},
      {"Trust",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         sub.datasets["T"] = random_subset(r, vars, p.max_dataset);
         sub.datasets["X"] = random_subset(r, vars, p.max_dataset);
         sub.datasets["Y"] = random_subset(r, vars, p.max_dataset);
         return via_schema(Schema::Trust, std::move(sub));
       }},
      {"Combination",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         sub.datasets["X"] = random_subset(r, vars, p.max_dataset);
         sub.datasets["Y"] = random_subset(r, vars, p.max_dataset);
         return via_schema(Schema::Combination, std::move(sub));
       }},
      {"Commutativity",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         sub.datasets["T"] = random_subset(r, vars, p.max_dataset);
         sub.datasets["X"] = random_subset(r, vars, p.max_dataset);
         sub.datasets["Y"] = random_subset(r, vars, p.max_dataset);
         return via_schema(Schema::Commutativity, std::move(sub));
       }},
      {"Duality",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         sub.datasets["X"] = random_subset(r, vars, p.max_dataset);
         return via_schema(Schema::Duality, std::move(sub));
       }},
      {"EmptyAnnouncement",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         Substitution sub;
         sub.formulas["phi"] = rand_formula(r, p, vars);
         return via_schema(Schema::EmptyAnnouncement, std::move(sub));
       }},
      {"PositiveIntrospection",
       [](SplitRng& r, const GenParams& p, const Dataset& vars) {
         FormulaPtr phi = rand_formula(r, p, vars);
         Dataset t = random_subset(r, vars, p.max_dataset);
         Dataset x = random_subset(r, vars, p.max_dataset);
         FormulaPtr belief = Formula::belief(t, x, std::move(phi));
         return Formula::implies(belief,
                                 Formula::belief({}, x, belief));
       }},
  }};
  return cases;
}

// The unsound Truth variant with a nonempty trust set, used to demonstrate
// that the suite detects broken schemas.
FormulaPtr broken_truth_instance(SplitRng& r, const GenParams& p,
                                 const Dataset& vars) {
  FormulaPtr phi = rand_formula(r, p, vars);
  Dataset t = random_nonempty_subset(r, vars, std::max(1, p.max_dataset));
  Dataset x = random_subset(r, vars, p.max_dataset);
  return Formula::implies(Formula::belief(std::move(t), std::move(x), phi), phi);
}

std::optional<Failure> sweep_instance(const TrustModel& m, const Formula& inst,
                                      std::uint64_t seed, const char* schema) {
  for (const Dataset& u : all_subsets(m.variables)) {
    SatTable t = check_dp_table(m, u, inst, /*parallel=*/false);
    const std::vector<char>& row = t.value.back();
    for (int w = 0; w < m.world_count(); ++w) {
      if (!row[static_cast<std::size_t>(w)]) {
        Failure f;
        f.seed = seed;
        f.schema = schema;
        f.model = model_to_json(m);
        f.formula = print_formula(inst);
        f.world = m.worlds[static_cast<std::size_t>(w)];
        f.announced = u.to_text();
        f.expected = true;
        f.got = false;
        f.detail = "axiom instance is false";
        return f;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TrustModel gen_model(const GenParams& params, std::uint64_t seed) {
  SplitRng r(seed);
  return gen_model_with(r, params);
}

TrustModel gen_model(const GenParams& params) {
  return gen_model(params, params.seed);
}

FormulaPtr gen_formula(const GenParams& params, const Dataset& vars,
                       std::uint64_t seed) {
  SplitRng r(seed);
  return gen_formula_with(r, params, vars, params.max_depth);
}

FormulaPtr gen_formula(const GenParams& params, const Dataset& vars) {
  return gen_formula(params, vars, params.seed);
}

TrustModel gen_model_exact(std::uint64_t seed, int worlds, int variables,
                           int atom_pool, int max_blocks) {
  SplitRng r(seed);
  return gen_model_with(r, worlds, variables, atom_pool, max_blocks,
                        std::max(1, variables / 4));
}

namespace {

FormulaPtr gen_sized_rec(SplitRng& r, const Dataset& vars, int budget,
                         int max_dataset) {
  auto atom = [&] {
    return Formula::atom(numbered("p", 1 + static_cast<int>(r.below(4))));
  };
  if (budget <= 1) return atom();
  const std::uint64_t roll = r.below(100);
  if (roll < 15) {
    return Formula::negation(gen_sized_rec(r, vars, budget - 1, max_dataset));
  }
  if (roll < 40 && budget >= 3) {
    const int left = 1 + static_cast<int>(r.below(
                             static_cast<std::uint64_t>(budget - 2)));
    FormulaPtr lhs = gen_sized_rec(r, vars, left, max_dataset);
    return Formula::implies(std::move(lhs),
                            gen_sized_rec(r, vars, budget - 1 - left, max_dataset));
  }
  if (roll < 75) {
    Dataset trust = random_subset(r, vars, max_dataset);
    Dataset data = random_subset(r, vars, max_dataset);
    return Formula::belief(std::move(trust), std::move(data),
                           gen_sized_rec(r, vars, budget - 1, max_dataset));
  }
  return Formula::announce(random_subset(r, vars, max_dataset),
                           gen_sized_rec(r, vars, budget - 1, max_dataset));
}

}  // namespace

FormulaPtr gen_sized_formula(std::uint64_t seed, const Dataset& vars,
                             int nodes, int max_dataset) {
  SplitRng r(seed);
  return gen_sized_rec(r, vars, nodes, max_dataset);
}

SuiteReport soundness_suite(const GenParams& params, int trials_per_schema,
                            bool inject_broken_truth) {
  Timer timer;
  SuiteReport report;
  report.suite = "soundness";
  const auto& cases = soundness_cases();
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const bool broken = inject_broken_truth && c == 0;
    TrialFn trial = [&, c, broken](const GenParams& p, std::uint64_t seed)
        -> std::optional<Failure> {
      SplitRng r(seed);
      TrustModel m = gen_model_with(r, p);
      FormulaPtr inst = broken ? broken_truth_instance(r, p, m.variables)
                               : cases[c].build(r, p, m.variables);
      if (auto failure = sweep_instance(m, *inst, seed, cases[c].name)) {
        return failure;
      }
      // Spot check the two engines against each other at one random point.
      const int w = static_cast<int>(r.below(static_cast<std::uint64_t>(m.world_count())));
      const Dataset u = random_subset(r, m.variables, static_cast<int>(m.variables.size()));
      EvalPoint pt{m.worlds[static_cast<std::size_t>(w)], u};
      const bool direct = eval(m, pt, *inst);
      const bool dp = check_dp(m, pt, *inst, /*parallel=*/false);
      if (direct != dp) {
        Failure f;
        f.seed = seed;
        f.schema = cases[c].name;
        f.model = model_to_json(m);
        f.formula = print_formula(*inst);
        f.world = pt.world;
        f.announced = u.to_text();
        f.expected = direct;
        f.got = dp;
        f.detail = "oracle and DP disagree";
        return f;
      }
      return std::nullopt;
    };
    run_trials(report, trials_per_schema, trial, params,
               kSoundnessStreamBase + c);
  }
  report.wall_ms = timer.ms();
  return report;
}

SuiteReport equivalence_suite(const GenParams& params, int trials) {
  Timer timer;
  SuiteReport report;
  report.suite = "equivalence";
  TrialFn trial = [](const GenParams& p, std::uint64_t seed)
      -> std::optional<Failure> {
    SplitRng r(seed);
    TrustModel m = gen_model_with(r, p);
    FormulaPtr f = gen_formula_with(r, p, m.variables, p.max_depth);
    const int w = static_cast<int>(r.below(static_cast<std::uint64_t>(m.world_count())));
    const Dataset u = random_subset(r, m.variables, static_cast<int>(m.variables.size()));
    EvalPoint pt{m.worlds[static_cast<std::size_t>(w)], u};
    const bool direct = eval(m, pt, *f);
    const bool dp_par = check_dp(m, pt, *f, /*parallel=*/true);
    const bool dp_ser = check_dp(m, pt, *f, /*parallel=*/false);
    if (direct == dp_par && dp_par == dp_ser) return std::nullopt;
    Failure fail;
    fail.seed = seed;
    fail.model = model_to_json(m);
    fail.formula = print_formula(*f);
    fail.world = pt.world;
    fail.announced = u.to_text();
    fail.expected = direct;
    fail.got = dp_par;
    fail.detail = dp_par == dp_ser ? "oracle and DP disagree"
                                   : "serial and parallel DP disagree";
    return fail;
  };
  run_trials(report, trials, trial, params, kEquivalenceStream);
  report.wall_ms = timer.ms();
  return report;
}

SuiteReport necessitation_suite(const GenParams& params, int trials) {
  if (params.max_variables > 4) {
    throw SemanticError(
        "necessitation suite requires max_variables <= 4 for the exhaustive sweep");
  }
  Timer timer;
  SuiteReport report;
  report.suite = "necessitation";
  struct Outcome {
    bool applicable = false;
    std::optional<Failure> failure;
  };
  // Samples are processed in index order until `trials` applicable ones are
  // found, so the outcome is independent of thread count.
  const long max_attempts = static_cast<long>(trials) * 200 + 64;
  long attempted = 0;
  long applicable = 0;
  while (applicable < trials && attempted < max_attempts) {
    const long wave = std::min<long>(std::max<long>(64, (trials - applicable) * 4),
                                     max_attempts - attempted);
    std::vector<Outcome> outcomes(static_cast<std::size_t>(wave));
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < wave; ++i) {
      const std::uint64_t seed =
          trial_seed(params.seed, kNecessitationStream,
                     static_cast<std::uint64_t>(attempted + i));
      SplitRng r(seed);
      TrustModel m = gen_model_with(r, params);
      FormulaPtr f = gen_formula_with(r, params, m.variables, params.max_depth);
      Outcome& out = outcomes[static_cast<std::size_t>(i)];
      if (!valid_on_model(m, *f)) continue;
      out.applicable = true;
      Dataset trust = random_subset(r, m.variables, params.max_dataset);
      Dataset data = random_subset(r, m.variables, params.max_dataset);
      FormulaPtr lifted_b = Formula::belief(trust, data, f);
      FormulaPtr lifted_a = Formula::announce(data, f);
      for (const FormulaPtr& lifted : {lifted_b, lifted_a}) {
        for (const Dataset& u : all_subsets(m.variables)) {
          SatTable t = check_dp_table(m, u, *lifted, /*parallel=*/false);
          const std::vector<char>& row = t.value.back();
          for (int w = 0; w < m.world_count(); ++w) {
            if (row[static_cast<std::size_t>(w)]) continue;
            Failure fail;
            fail.seed = seed;
            fail.model = model_to_json(m);
            fail.formula = print_formula(*lifted);
            fail.world = m.worlds[static_cast<std::size_t>(w)];
            fail.announced = u.to_text();
            fail.expected = true;
            fail.got = false;
            fail.detail = "necessitation of a valid formula is not valid";
            out.failure = std::move(fail);
          }
        }
      }
    }
    for (long i = 0; i < wave && applicable < trials; ++i) {
      Outcome& out = outcomes[static_cast<std::size_t>(i)];
      if (!out.applicable) {
        ++report.skipped;
        continue;
      }
      ++applicable;
      if (out.failure) report.failures.push_back(std::move(*out.failure));
    }
    attempted += wave;
  }
  report.trials = applicable;
  report.wall_ms = timer.ms();
  return report;
}

}  // namespace trustlogic
