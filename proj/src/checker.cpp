#include "trustlogic/checker.hpp"

#include <cassert>

namespace trustlogic {

namespace {

// Worlds below this count run serially even when parallel mode is on; the
// fork/join overhead dwarfs the work.
constexpr int kParallelMinWorlds = 64;

int hlist_rec(std::vector<HEntry>& out, Dataset env, const Formula& f) {
  int a = -1;
  int b = -1;
  switch (f.kind()) {
    case FormulaKind::Atom:
      break;
    case FormulaKind::Not:
    case FormulaKind::Belief:
      a = hlist_rec(out, env, *f.body());
      break;
    case FormulaKind::Implies:
      a = hlist_rec(out, env, *f.lhs());
      b = hlist_rec(out, env, *f.rhs());
      break;
    case FormulaKind::Announce:
      a = hlist_rec(out, env.union_with(f.data()), *f.body());
      break;
  }
  out.push_back(HEntry{std::move(env), &f, a, b});
  return static_cast<int>(out.size()) - 1;
}

bool eval_rec(const TrustModel& m, int w, const Dataset& u, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return m.atom_idx(w, u, f.atom_name());
    case FormulaKind::Not:
      return !eval_rec(m, w, u, *f.body());
    case FormulaKind::Implies:
      return !eval_rec(m, w, u, *f.lhs()) || eval_rec(m, w, u, *f.rhs());
    case FormulaKind::Belief: {
      const Dataset key = f.data().union_with(u);
      for (int v = 0; v < m.world_count(); ++v) {
        if (m.indist_idx(w, v, key) && m.trusts_idx(v, f.trust()) &&
            !eval_rec(m, v, u, *f.body())) {
          return false;
        }
      }
      return true;
    }
    case FormulaKind::Announce:
      return eval_rec(m, w, u.union_with(f.data()), *f.body());
  }
  return false;
}

}  // namespace

std::vector<HEntry> hlist(const Dataset& u0, const Formula& f) {
  std::vector<HEntry> out;
  out.reserve(node_count(f));
  hlist_rec(out, u0, f);
  return out;
}

void require_checkable(const TrustModel& m, const Dataset& announced,
                       const Formula& f) {
  if (m.worlds.empty()) throw SemanticError("no worlds to evaluate");
  for (const VarName& v : announced) {
    if (!m.variables.contains(v)) {
      throw SemanticError("announced variable '" + v + "' is not in the model");
    }
  }
  for (const VarName& v : free_variables(f)) {
    if (!m.variables.contains(v)) {
      throw SemanticError("formula variable '" + v + "' is not in the model");
    }
  }
}

void require_checkable(const TrustModel& m, const EvalPoint& pt,
                       const Formula& f) {
  require_checkable(m, pt.announced, f);
  m.world_index(pt.world);
}

bool eval(const TrustModel& m, const EvalPoint& pt, const Formula& f) {
  require_checkable(m, pt, f);
  return eval_rec(m, m.world_index(pt.world), pt.announced, f);
}

SatTable check_dp_table(const TrustModel& m, const Dataset& u0,
                        const Formula& f, bool parallel) {
  require_checkable(m, u0, f);
  SatTable t;
  t.entries = hlist(u0, f);
  const int world_count = m.world_count();
  const bool par = parallel && world_count >= kParallelMinWorlds;
  t.value.assign(t.entries.size(), std::vector<char>(
                                       static_cast<std::size_t>(world_count), 0));

  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const HEntry& e = t.entries[i];
    std::vector<char>& row = t.value[i];
    switch (e.node->kind()) {
      case FormulaKind::Atom: {
        const std::string& prop = e.node->atom_name();
#pragma omp parallel for if (par) schedule(static)
        for (int w = 0; w < world_count; ++w) {
          row[static_cast<std::size_t>(w)] =
              static_cast<char>(m.atom_idx(w, e.env, prop));
        }
        break;
      }
      case FormulaKind::Not: {
        assert(e.child_a >= 0 && static_cast<std::size_t>(e.child_a) < i);
        const std::vector<char>& body = t.value[static_cast<std::size_t>(e.child_a)];
        for (int w = 0; w < world_count; ++w) {
          row[static_cast<std::size_t>(w)] = !body[static_cast<std::size_t>(w)];
        }
        break;
      }
      case FormulaKind::Implies: {
        assert(e.child_a >= 0 && static_cast<std::size_t>(e.child_a) < i);
        assert(e.child_b >= 0 && static_cast<std::size_t>(e.child_b) < i);
        const std::vector<char>& lhs = t.value[static_cast<std::size_t>(e.child_a)];
        const std::vector<char>& rhs = t.value[static_cast<std::size_t>(e.child_b)];
        for (int w = 0; w < world_count; ++w) {
          row[static_cast<std::size_t>(w)] =
              static_cast<char>(!lhs[static_cast<std::size_t>(w)] ||
                                rhs[static_cast<std::size_t>(w)]);
        }
        break;
      }
      case FormulaKind::Announce: {
        // The body entry was built under env ∪ X, so its row is this row.
        assert(e.child_a >= 0 && static_cast<std::size_t>(e.child_a) < i);
        row = t.value[static_cast<std::size_t>(e.child_a)];
        break;
      }
      case FormulaKind::Belief: {
        assert(e.child_a >= 0 && static_cast<std::size_t>(e.child_a) < i);
        const std::vector<char>& body = t.value[static_cast<std::size_t>(e.child_a)];
        const Dataset key = e.node->data().union_with(e.env);
        std::vector<const std::vector<int>*> blocks;
        blocks.reserve(key.size());
        for (const VarName& v : key) {
          blocks.push_back(&m.partition_block.at(v));
        }
        // Worlds that would falsify the belief if reachable; neither
        // condition depends on the world being checked.
        std::vector<int> falsifiers;
        for (int v = 0; v < world_count; ++v) {
          if (!body[static_cast<std::size_t>(v)] &&
              m.trusts_idx(v, e.node->trust())) {
            falsifiers.push_back(v);
          }
        }
#pragma omp parallel for if (par) schedule(static)
        for (int w = 0; w < world_count; ++w) {
          char value = 1;
          for (int v : falsifiers) {
            bool same = true;
            for (const std::vector<int>* block : blocks) {
              if ((*block)[static_cast<std::size_t>(w)] !=
                  (*block)[static_cast<std::size_t>(v)]) {
                same = false;
                break;
              }
            }
            if (same) {
              value = 0;
              break;
            }
          }
          row[static_cast<std::size_t>(w)] = value;
        }
        break;
      }
    }
  }
  return t;
}

bool check_dp(const TrustModel& m, const EvalPoint& pt, const Formula& f,
              bool parallel) {
  const int w = m.world_index(pt.world);
  SatTable t = check_dp_table(m, pt.announced, f, parallel);
  return t.value.back()[static_cast<std::size_t>(w)] != 0;
}

std::vector<WorldId> belief_counterexamples(const TrustModel& m,
                                            const EvalPoint& pt,
                                            const Formula& f) {
  if (f.kind() != FormulaKind::Belief) {
    throw SemanticError("counterexamples require a belief formula at top level");
  }
  require_checkable(m, pt, f);
  const int w = m.world_index(pt.world);
  const Dataset key = f.data().union_with(pt.announced);
  std::vector<WorldId> out;
  for (int v = 0; v < m.world_count(); ++v) {
    if (m.indist_idx(w, v, key) && m.trusts_idx(v, f.trust()) &&
        !eval_rec(m, v, pt.announced, *f.body())) {
      out.push_back(m.worlds[static_cast<std::size_t>(v)]);
    }
  }
  return out;
}

}  // namespace trustlogic
