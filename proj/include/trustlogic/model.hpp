#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trustlogic/syntax.hpp"

#include <json.hpp>

namespace trustlogic {

// Model or proof file failed validation. The message carries a JSON-path-like
// location of the first violation.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& message)
      : std::runtime_error(message) {}
};

// A well-formed request that the model cannot answer: unknown world or
// variable, empty model, tautology atom cap exceeded.
class SemanticError : public std::runtime_error {
 public:
  explicit SemanticError(const std::string& message)
      : std::runtime_error(message) {}
};

using WorldId = std::string;

// Truth region of one atomic proposition: it holds at (w, U) if w is in the
// permanent set or the exact pair (w, U) was listed. Worlds are stored as
// indices into TrustModel::worlds; both vectors are sorted.
struct ValuationEntry {
  std::vector<int> permanent;
  std::vector<std::pair<int, Dataset>> announced;
};

// The point at which a formula is evaluated: a world together with the set
// of variables announced so far.
struct EvalPoint {
  WorldId world;
  Dataset announced;
};

// Finite trustworthiness model: worlds, one indistinguishability partition
// per data variable, a trusted-variable set per world, and an
// announcement-sensitive valuation. Immutable once built; every operation is
// const.
struct TrustModel {
  std::vector<WorldId> worlds;
  Dataset variables;
  // Per variable, the partition as a block id for each world index. Every
  // variable of `variables` has an entry; variables a file leaves out get
  // the identity partition (each world alone in its block).
  std::map<VarName, std::vector<int>> partition_block;
  std::vector<Dataset> trust;  // parallel to `worlds`
  std::map<std::string, ValuationEntry> valuation;

  int world_count() const { return static_cast<int>(worlds.size()); }

  // Index of a world name, or -1.
  int find_world(const WorldId& w) const;
  // Same, but throws SemanticError for unknown names.
  int world_index(const WorldId& w) const;

  // w ~_X u: true iff w and u share a block for every variable in X.
  // The empty dataset relates every pair.
  bool indistinguishable(const WorldId& w, const WorldId& u,
                         const Dataset& x) const;
  bool indist_idx(int w, int u, const Dataset& x) const;

  // T is a subset of the variables trustworthy in w.
  bool trusts(const WorldId& w, const Dataset& t) const;
  bool trusts_idx(int w, const Dataset& t) const {
    return t.subset_of(trust[static_cast<std::size_t>(w)]);
  }

  // Atomic satisfaction at (pt.world, pt.announced). Propositions without a
  // valuation entry are false everywhere.
  bool holds_atom(const EvalPoint& pt, const std::string& prop) const;
  bool atom_idx(int w, const Dataset& u, const std::string& prop) const;

  // Rebuilds the world index and fills identity partitions for variables
  // missing from partition_block. Call after populating fields by hand.
  void finalize();

 private:
  std::unordered_map<std::string, int> index_;
};

// Parses and validates the JSON model format:
//   {"worlds": [...], "variables": [...],
//    "indistinguishability": {"t": [["w1"], ["w2","w3"]]},
//    "trustworthy": {"w1": ["t"]},
//    "valuation": {"p": {"permanent": ["w1"], "announced": [["w2", ["t"]]]}}}
// Absent keys mean empty. Throws ModelError on the first violation.
TrustModel load_model(const std::string& json_text);
TrustModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const TrustModel& m);

}  // namespace trustlogic
