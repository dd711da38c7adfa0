#include "trustlogic/proofs.hpp"

#include <algorithm>
#include <array>

namespace trustlogic {

using nlohmann::json;

namespace {

struct SchemaInfo {
  Schema schema;
  const char* name;
  std::vector<const char*> formula_vars;
  std::vector<const char*> dataset_vars;
};

const std::vector<SchemaInfo>& schema_table() {
  static const std::vector<SchemaInfo> table = {
      {Schema::Truth, "Truth", {"phi"}, {"X"}},
      {Schema::DistributivityB, "DistributivityB", {"phi", "psi"}, {"T", "X"}},
      {Schema::DistributivityA, "DistributivityA", {"phi", "psi"}, {"X"}},
      {Schema::NegIntrospection, "NegIntrospection", {"phi"}, {"T", "X"}},
      {Schema::Monotonicity, "Monotonicity", {"phi"}, {"T", "T'", "X", "X'"}},
      {Schema::Trust, "Trust", {"phi"}, {"T", "X", "Y"}},
      {Schema::Combination, "Combination", {"phi"}, {"X", "Y"}},
      {Schema::Commutativity, "Commutativity", {"phi"}, {"T", "X", "Y"}},
      {Schema::Duality, "Duality", {"phi"}, {"X"}},
      {Schema::EmptyAnnouncement, "EmptyAnnouncement", {"phi"}, {}},
      {Schema::Tautology, "Tautology", {}, {}},
  };
  return table;
}

const SchemaInfo& info_for(Schema s) {
  for (const SchemaInfo& i : schema_table()) {
    if (i.schema == s) return i;
  }
  throw std::logic_error("unknown schema");
}

FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
  return Formula::negation(Formula::implies(
      Formula::implies(a, b), Formula::negation(Formula::implies(b, a))));
}

}  // namespace

const char* schema_name(Schema s) { return info_for(s).name; }

Schema schema_from_name(const std::string& name) {
  for (const SchemaInfo& i : schema_table()) {
    if (name == i.name) return i.schema;
  }
  throw ModelError("unknown axiom schema '" + name + "'");
}

FormulaPtr instantiate(Schema s, const Substitution& sub) {
  const SchemaInfo& info = info_for(s);
  if (s == Schema::Tautology) {
    throw InstantiationError(
        "Tautology is checked semantically, not instantiated");
  }
  for (const char* v : info.formula_vars) {
    if (!sub.formulas.count(v)) {
      throw InstantiationError(std::string("missing formula binding '") + v + "'");
    }
  }
  for (const char* v : info.dataset_vars) {
    if (!sub.datasets.count(v)) {
      throw InstantiationError(std::string("missing dataset binding '") + v + "'");
    }
  }
  if (sub.formulas.size() != info.formula_vars.size() ||
      sub.datasets.size() != info.dataset_vars.size()) {
    throw InstantiationError("substitution binds metavariables the schema lacks");
  }
  auto f = [&](const char* v) { return sub.formulas.at(v); };
  auto d = [&](const char* v) { return sub.datasets.at(v); };

  switch (s) {
    case Schema::Truth:
      return Formula::implies(Formula::belief({}, d("X"), f("phi")), f("phi"));
    case Schema::DistributivityB:
      return Formula::implies(
          Formula::belief(d("T"), d("X"), Formula::implies(f("phi"), f("psi"))),
          Formula::implies(Formula::belief(d("T"), d("X"), f("phi")),
                           Formula::belief(d("T"), d("X"), f("psi"))));
    case Schema::DistributivityA:
      return Formula::implies(
          Formula::announce(d("X"), Formula::implies(f("phi"), f("psi"))),
          Formula::implies(Formula::announce(d("X"), f("phi")),
                           Formula::announce(d("X"), f("psi"))));
    case Schema::NegIntrospection: {
      FormulaPtr belief = Formula::belief(d("T"), d("X"), f("phi"));
      return Formula::implies(
          Formula::negation(belief),
          Formula::belief({}, d("X"), Formula::negation(belief)));
    }
    case Schema::Monotonicity: {
      if (!d("T").subset_of(d("T'"))) {
        throw InstantiationError("Monotonicity requires T ⊆ T'");
      }
      if (!d("X").subset_of(d("X'"))) {
        throw InstantiationError("Monotonicity requires X ⊆ X'");
      }
      return Formula::implies(Formula::belief(d("T"), d("X"), f("phi")),
                              Formula::belief(d("T'"), d("X'"), f("phi")));
    }
    case Schema::Trust:
      return Formula::belief(
          d("T"), d("X"),
          Formula::implies(Formula::belief(d("T"), d("Y"), f("phi")), f("phi")));
    case Schema::Combination:
      return iff(Formula::announce(d("X"), Formula::announce(d("Y"), f("phi"))),
                 Formula::announce(d("X").union_with(d("Y")), f("phi")));
    case Schema::Commutativity:
      return iff(
          Formula::announce(d("Y"), Formula::belief(d("T"), d("X"), f("phi"))),
          Formula::belief(d("T"), d("Y").union_with(d("X")),
                          Formula::announce(d("Y"), f("phi"))));
    case Schema::Duality:
      return iff(Formula::negation(Formula::announce(d("X"), f("phi"))),
                 Formula::announce(d("X"), Formula::negation(f("phi"))));
    case Schema::EmptyAnnouncement:
      return iff(Formula::announce({}, f("phi")), f("phi"));
    case Schema::Tautology:
      break;
  }
  throw std::logic_error("unreachable");
}

namespace {

constexpr int kTautologyAtomCap = 20;

// Propositional skeleton, children before parents.
struct PropNode {
  enum class Op { Var, Not, Imp } op;
  int var = -1;
  int a = -1;
  int b = -1;
};

int compile_prop(const Formula& f, std::vector<PropNode>& nodes,
                 std::map<std::string, int>& vars) {
  auto var_node = [&](const std::string& key) {
    auto [it, inserted] = vars.try_emplace(key, static_cast<int>(vars.size()));
    (void)inserted;
    nodes.push_back({PropNode::Op::Var, it->second, -1, -1});
    return static_cast<int>(nodes.size()) - 1;
  };
  switch (f.kind()) {
    case FormulaKind::Atom:
      return var_node("a:" + f.atom_name());
    case FormulaKind::Belief:
    case FormulaKind::Announce:
      // Maximal modal subformulas become opaque atoms; the canonical printed
      // form identifies structurally equal subtrees.
      return var_node("m:" + print_formula(f));
    case FormulaKind::Not: {
      int a = compile_prop(*f.body(), nodes, vars);
      nodes.push_back({PropNode::Op::Not, -1, a, -1});
      return static_cast<int>(nodes.size()) - 1;
    }
    case FormulaKind::Implies: {
      int a = compile_prop(*f.lhs(), nodes, vars);
      int b = compile_prop(*f.rhs(), nodes, vars);
      nodes.push_back({PropNode::Op::Imp, -1, a, b});
      return static_cast<int>(nodes.size()) - 1;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool is_tautology(const Formula& f) {
  std::vector<PropNode> nodes;
  std::map<std::string, int> vars;
  compile_prop(f, nodes, vars);
  const int k = static_cast<int>(vars.size());
  if (k > kTautologyAtomCap) {
    throw SemanticError("tautology check exceeds the cap of " +
                        std::to_string(kTautologyAtomCap) +
                        " distinct atoms (got " + std::to_string(k) + ")");
  }
  std::vector<char> value(nodes.size());
  for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const PropNode& n = nodes[i];
      switch (n.op) {
        case PropNode::Op::Var:
          value[i] = static_cast<char>((mask >> n.var) & 1);
          break;
        case PropNode::Op::Not:
          value[i] = !value[static_cast<std::size_t>(n.a)];
          break;
        case PropNode::Op::Imp:
          value[i] = static_cast<char>(!value[static_cast<std::size_t>(n.a)] ||
                                       value[static_cast<std::size_t>(n.b)]);
          break;
      }
    }
    if (!value.back()) return false;
  }
  return true;
}

namespace {

ProofVerdict rejected(int line, std::string reason) {
  return {false, line, std::move(reason)};
}

ProofVerdict check_lines(const Proof& pf,
                         const std::vector<FormulaPtr>* assumptions) {
  const bool derivation = assumptions != nullptr;
  if (pf.lines.empty()) return rejected(0, "proof has no lines");
  if (!pf.conclusion) return rejected(0, "proof has no conclusion");

  const int n = static_cast<int>(pf.lines.size());
  for (int i = 1; i <= n; ++i) {
    const ProofLine& line = pf.lines[static_cast<std::size_t>(i - 1)];
    if (!line.formula) return rejected(i, "line has no formula");
    auto earlier = [&](int ref) { return ref >= 1 && ref < i; };
    auto formula_at = [&](int ref) -> const Formula& {
      return *pf.lines[static_cast<std::size_t>(ref - 1)].formula;
    };

    switch (line.kind) {
      case ProofLine::Kind::Axiom: {
        if (line.schema == Schema::Tautology) {
          if (!line.subst.formulas.empty() || !line.subst.datasets.empty()) {
            return rejected(i, "Tautology lines take no substitution");
          }
          try {
            if (!is_tautology(*line.formula)) {
              return rejected(i, "claimed formula is not a propositional tautology");
            }
          } catch (const SemanticError& e) {
            return rejected(i, e.what());
          }
          break;
        }
        FormulaPtr instance;
        try {
          instance = instantiate(line.schema, line.subst);
        } catch (const InstantiationError& e) {
          return rejected(i, std::string(schema_name(line.schema)) + ": " + e.what());
        }
        if (*instance != *line.formula) {
          return rejected(i, std::string("claimed formula is not the ") +
                                 schema_name(line.schema) +
                                 " instance of the given substitution");
        }
        break;
      }
      case ProofLine::Kind::ModusPonens: {
        if (!earlier(line.from) || !earlier(line.implication)) {
          return rejected(i, "Modus Ponens references must point at earlier lines");
        }
        const Formula& imp = formula_at(line.implication);
        if (imp.kind() != FormulaKind::Implies) {
          return rejected(i, "second Modus Ponens reference is not an implication");
        }
        if (*imp.lhs() != formula_at(line.from)) {
          return rejected(i, "implication premise does not match the cited line");
        }
        if (*imp.rhs() != *line.formula) {
          return rejected(i, "claimed formula is not the implication's conclusion");
        }
        break;
      }
      case ProofLine::Kind::NecBelief: {
        if (derivation) {
          return rejected(i, "Necessitation not permitted under assumptions");
        }
        if (!earlier(line.from)) {
          return rejected(i, "Necessitation reference must point at an earlier line");
        }
        FormulaPtr expected = Formula::belief(line.nec_trust, line.nec_data,
                                              pf.lines[static_cast<std::size_t>(line.from - 1)].formula);
        if (*expected != *line.formula) {
          return rejected(i, "claimed formula is not the belief necessitation of the cited line");
        }
        break;
      }
      case ProofLine::Kind::NecAnnounce: {
        if (derivation) {
          return rejected(i, "Necessitation not permitted under assumptions");
        }
        if (!earlier(line.from)) {
          return rejected(i, "Necessitation reference must point at an earlier line");
        }
        FormulaPtr expected = Formula::announce(
            line.nec_data, pf.lines[static_cast<std::size_t>(line.from - 1)].formula);
        if (*expected != *line.formula) {
          return rejected(i, "claimed formula is not the announcement necessitation of the cited line");
        }
        break;
      }
      case ProofLine::Kind::Assumption: {
        if (!derivation) {
          return rejected(i, "assumption lines are only allowed in derivations");
        }
        if (line.from < 1 ||
            line.from > static_cast<int>(assumptions->size())) {
          return rejected(i, "assumption index out of range");
        }
        if (*(*assumptions)[static_cast<std::size_t>(line.from - 1)] !=
            *line.formula) {
          return rejected(i, "claimed formula does not match the cited assumption");
        }
        break;
      }
      case ProofLine::Kind::Theorem: {
        if (!derivation) {
          return rejected(i, "theorem lines are only allowed in derivations");
        }
        if (!line.theorem) return rejected(i, "theorem line has no embedded proof");
        ProofVerdict sub = check_proof(*line.theorem);
        if (!sub.accepted) {
          return rejected(i, "embedded theorem rejected at line " +
                                 std::to_string(sub.line) + ": " + sub.reason);
        }
        if (*line.theorem->conclusion != *line.formula) {
          return rejected(i, "claimed formula does not match the embedded theorem");
        }
        break;
      }
    }
  }
  if (*pf.lines.back().formula != *pf.conclusion) {
    return rejected(n, "last line does not match the stated conclusion");
  }
  return {true, 0, ""};
}

}  // namespace

ProofVerdict check_proof(const Proof& pf) { return check_lines(pf, nullptr); }

ProofVerdict check_derivation(const std::vector<FormulaPtr>& assumptions,
                              const Proof& pf) {
  return check_lines(pf, &assumptions);
}

namespace {

FormulaPtr parse_in_file(const json& j, const std::string& path) {
  if (!j.is_string()) throw ModelError(path + ": expected a formula string");
  try {
    return parse_formula(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ModelError(path + ": " + e.what());
  }
}

Dataset dataset_in_file(const json& j, const std::string& path) {
  if (!j.is_array()) throw ModelError(path + ": expected an array of variables");
  std::vector<VarName> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& item = j[i];
    if (!item.is_string() || !is_identifier(item.get<std::string>())) {
      throw ModelError(path + "[" + std::to_string(i) + "]: expected a variable name");
    }
    names.push_back(item.get<std::string>());
  }
  return Dataset(std::move(names));
}

int int_in_file(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ModelError(path + ": expected a line number");
  return j.get<int>();
}

ProofLine line_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ModelError(path + ": expected an object");
  ProofLine line;
  line.formula = parse_in_file(j.at("formula"), path + ".formula");
  auto it = j.find("by");
  if (it == j.end() || !it->is_object()) {
    throw ModelError(path + ".by: missing justification");
  }
  const json& by = *it;
  if (by.contains("axiom")) {
    line.kind = ProofLine::Kind::Axiom;
    const json& name = by.at("axiom");
    if (!name.is_string()) throw ModelError(path + ".by.axiom: expected a schema name");
    line.schema = schema_from_name(name.get<std::string>());
    if (by.contains("subst")) {
      const json& subst = by.at("subst");
      if (!subst.is_object()) throw ModelError(path + ".by.subst: expected an object");
      for (const auto& [var, value] : subst.items()) {
        std::string vpath = path + ".by.subst." + var;
        if (value.is_string()) {
          line.subst.formulas[var] = parse_in_file(value, vpath);
        } else if (value.is_array()) {
          line.subst.datasets[var] = dataset_in_file(value, vpath);
        } else {
          throw ModelError(vpath + ": expected a formula string or a variable array");
        }
      }
    }
  } else if (by.contains("mp")) {
    line.kind = ProofLine::Kind::ModusPonens;
    const json& mp = by.at("mp");
    if (!mp.is_array() || mp.size() != 2) {
      throw ModelError(path + ".by.mp: expected [premise, implication]");
    }
    line.from = int_in_file(mp[0], path + ".by.mp[0]");
    line.implication = int_in_file(mp[1], path + ".by.mp[1]");
  } else if (by.contains("necB")) {
    line.kind = ProofLine::Kind::NecBelief;
    const json& nec = by.at("necB");
    if (!nec.is_object()) throw ModelError(path + ".by.necB: expected an object");
    line.from = int_in_file(nec.at("from"), path + ".by.necB.from");
    line.nec_trust = dataset_in_file(nec.at("T"), path + ".by.necB.T");
    line.nec_data = dataset_in_file(nec.at("X"), path + ".by.necB.X");
  } else if (by.contains("necA")) {
    line.kind = ProofLine::Kind::NecAnnounce;
    const json& nec = by.at("necA");
    if (!nec.is_object()) throw ModelError(path + ".by.necA: expected an object");
    line.from = int_in_file(nec.at("from"), path + ".by.necA.from");
    line.nec_data = dataset_in_file(nec.at("X"), path + ".by.necA.X");
  } else if (by.contains("assumption")) {
    line.kind = ProofLine::Kind::Assumption;
    line.from = int_in_file(by.at("assumption"), path + ".by.assumption");
  } else if (by.contains("theorem")) {
    line.kind = ProofLine::Kind::Theorem;
    line.theorem = std::make_shared<Proof>(
        proof_from_json(by.at("theorem")));
  } else {
    throw ModelError(path + ".by: unknown justification");
  }
  return line;
}

}  // namespace

Proof proof_from_json(const json& j) {
  if (!j.is_object()) throw ModelError("$: proof file must be a JSON object");
  Proof pf;
  if (!j.contains("conclusion")) throw ModelError("$.conclusion: missing");
  pf.conclusion = parse_in_file(j.at("conclusion"), "$.conclusion");
  if (!j.contains("lines") || !j.at("lines").is_array()) {
    throw ModelError("$.lines: expected an array");
  }
  const json& lines = j.at("lines");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    pf.lines.push_back(
        line_from_json(lines[i], "$.lines[" + std::to_string(i) + "]"));
  }
  return pf;
}

Proof load_proof(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what());
  }
  return proof_from_json(j);
}

std::vector<FormulaPtr> load_assumptions(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_array()) throw ModelError("$: assumptions file must be a JSON array");
  std::vector<FormulaPtr> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_in_file(j[i], "$[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace trustlogic
