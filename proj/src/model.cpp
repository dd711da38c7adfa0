#include "trustlogic/model.hpp"

#include <algorithm>

namespace trustlogic {

using nlohmann::json;

int TrustModel::find_world(const WorldId& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

int TrustModel::world_index(const WorldId& w) const {
  int i = find_world(w);
  if (i < 0) {
    if (worlds.empty()) throw SemanticError("no worlds to evaluate");
    throw SemanticError("unknown world '" + w + "'");
  }
  return i;
}

bool TrustModel::indist_idx(int w, int u, const Dataset& x) const {
  for (const VarName& v : x) {
    auto it = partition_block.find(v);
    if (it == partition_block.end()) {
      throw SemanticError("unknown variable '" + v + "'");
    }
    const std::vector<int>& block = it->second;
    if (block[static_cast<std::size_t>(w)] !=
        block[static_cast<std::size_t>(u)]) {
      return false;
    }
  }
  return true;
}

bool TrustModel::indistinguishable(const WorldId& w, const WorldId& u,
                                   const Dataset& x) const {
  return indist_idx(world_index(w), world_index(u), x);
}

bool TrustModel::trusts(const WorldId& w, const Dataset& t) const {
  return trusts_idx(world_index(w), t);
}

bool TrustModel::atom_idx(int w, const Dataset& u,
                          const std::string& prop) const {
  auto it = valuation.find(prop);
  if (it == valuation.end()) return false;
  const ValuationEntry& entry = it->second;
  if (std::binary_search(entry.permanent.begin(), entry.permanent.end(), w)) {
    return true;
  }
  return std::binary_search(entry.announced.begin(), entry.announced.end(),
                            std::make_pair(w, u));
}

bool TrustModel::holds_atom(const EvalPoint& pt, const std::string& prop) const {
  return atom_idx(world_index(pt.world), pt.announced, prop);
}

void TrustModel::finalize() {
  index_.clear();
  index_.reserve(worlds.size());
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    index_.emplace(worlds[i], static_cast<int>(i));
  }
  for (const VarName& v : variables) {
    auto [it, inserted] = partition_block.try_emplace(v);
    if (inserted) {
      it->second.resize(worlds.size());
      for (std::size_t i = 0; i < worlds.size(); ++i) {
        it->second[i] = static_cast<int>(i);
      }
    }
  }
}

namespace {

const json& field(const json& j, const char* key, json::value_t type,
                  const std::string& path) {
  static const json empty_array = json::array();
  static const json empty_object = json::object();
  auto it = j.find(key);
  if (it == j.end()) {
    return type == json::value_t::array ? empty_array : empty_object;
  }
  if (it->type() != type) {
    throw ModelError(path + "." + key + ": wrong type, expected " +
                     (type == json::value_t::array ? "array" : "object"));
  }
  return *it;
}

std::string require_name(const json& j, const std::string& path) {
  if (!j.is_string()) throw ModelError(path + ": expected a string");
  std::string s = j.get<std::string>();
  if (!is_identifier(s)) {
    throw ModelError(path + ": '" + s + "' is not a valid identifier");
  }
  return s;
}

int require_world(const TrustModel& m, const json& j, const std::string& path) {
  std::string name = require_name(j, path);
  int idx = m.find_world(name);
  if (idx < 0) throw ModelError(path + ": unknown world '" + name + "'");
  return idx;
}

Dataset require_dataset(const TrustModel& m, const json& j,
                        const std::string& path) {
  if (!j.is_array()) throw ModelError(path + ": expected an array");
  std::vector<VarName> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string v = require_name(j[i], path + "[" + std::to_string(i) + "]");
    if (!m.variables.contains(v)) {
      throw ModelError(path + "[" + std::to_string(i) + "]: unknown variable '" +
                       v + "'");
    }
    names.push_back(std::move(v));
  }
  return Dataset(std::move(names));
}

}  // namespace

TrustModel model_from_json(const json& j) {
  if (!j.is_object()) throw ModelError("$: model file must be a JSON object");
  TrustModel m;

  const json& worlds = field(j, "worlds", json::value_t::array, "$");
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    std::string w =
        require_name(worlds[i], "$.worlds[" + std::to_string(i) + "]");
    if (std::find(m.worlds.begin(), m.worlds.end(), w) != m.worlds.end()) {
      throw ModelError("$.worlds[" + std::to_string(i) + "]: duplicate world '" +
                       w + "'");
    }
    m.worlds.push_back(std::move(w));
  }

  const json& variables = field(j, "variables", json::value_t::array, "$");
  {
    std::vector<VarName> names;
    for (std::size_t i = 0; i < variables.size(); ++i) {
      std::string v =
          require_name(variables[i], "$.variables[" + std::to_string(i) + "]");
      if (std::find(names.begin(), names.end(), v) != names.end()) {
        throw ModelError("$.variables[" + std::to_string(i) +
                         "]: duplicate variable '" + v + "'");
      }
      names.push_back(std::move(v));
    }
    m.variables = Dataset(std::move(names));
  }

  m.trust.assign(m.worlds.size(), Dataset{});
  m.finalize();  // world index needed below; identity partitions added last

  const json& parts = field(j, "indistinguishability", json::value_t::object, "$");
  for (const auto& [var, blocks] : parts.items()) {
    std::string path = "$.indistinguishability." + var;
    if (!m.variables.contains(var)) {
      throw ModelError(path + ": unknown variable '" + var + "'");
    }
    if (!blocks.is_array()) throw ModelError(path + ": expected an array of blocks");
    std::vector<int> block_of(m.worlds.size(), -1);
    int next_block = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const json& block = blocks[b];
      std::string bpath = path + "[" + std::to_string(b) + "]";
      if (!block.is_array()) throw ModelError(bpath + ": expected an array of worlds");
      if (block.empty()) continue;
      for (std::size_t k = 0; k < block.size(); ++k) {
        int w = require_world(m, block[k], bpath + "[" + std::to_string(k) + "]");
        if (block_of[static_cast<std::size_t>(w)] != -1) {
          throw ModelError(bpath + ": world '" + m.worlds[static_cast<std::size_t>(w)] +
                           "' appears in more than one block");
        }
        block_of[static_cast<std::size_t>(w)] = next_block;
      }
      ++next_block;
    }
    for (std::size_t w = 0; w < block_of.size(); ++w) {
      if (block_of[w] == -1) {
        throw ModelError(path + ": blocks do not cover world '" + m.worlds[w] + "'");
      }
    }
    m.partition_block[var] = std::move(block_of);
  }

  const json& trust = field(j, "trustworthy", json::value_t::object, "$");
  for (const auto& [world, vars] : trust.items()) {
    std::string path = "$.trustworthy." + world;
    int w = m.find_world(world);
    if (w < 0) throw ModelError(path + ": unknown world '" + world + "'");
    m.trust[static_cast<std::size_t>(w)] = require_dataset(m, vars, path);
  }

  const json& valuation = field(j, "valuation", json::value_t::object, "$");
  for (const auto& [prop, entry] : valuation.items()) {
    std::string path = "$.valuation." + prop;
    if (!is_identifier(prop)) {
      throw ModelError(path + ": '" + prop + "' is not a valid identifier");
    }
    if (!entry.is_object()) throw ModelError(path + ": expected an object");
    ValuationEntry v;
    const json& permanent = field(entry, "permanent", json::value_t::array, path);
    for (std::size_t i = 0; i < permanent.size(); ++i) {
      v.permanent.push_back(require_world(
          m, permanent[i], path + ".permanent[" + std::to_string(i) + "]"));
    }
    std::sort(v.permanent.begin(), v.permanent.end());
    v.permanent.erase(std::unique(v.permanent.begin(), v.permanent.end()),
                      v.permanent.end());
    const json& announced = field(entry, "announced", json::value_t::array, path);
    for (std::size_t i = 0; i < announced.size(); ++i) {
      std::string apath = path + ".announced[" + std::to_string(i) + "]";
      const json& pair = announced[i];
      if (!pair.is_array() || pair.size() != 2) {
        throw ModelError(apath + ": expected a [world, [variables]] pair");
      }
      int w = require_world(m, pair[0], apath + "[0]");
      v.announced.emplace_back(w, require_dataset(m, pair[1], apath + "[1]"));
    }
    std::sort(v.announced.begin(), v.announced.end());
    v.announced.erase(std::unique(v.announced.begin(), v.announced.end()),
                      v.announced.end());
    m.valuation[prop] = std::move(v);
  }

  m.finalize();
  return m;
}

TrustModel load_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what());
  }
  return model_from_json(j);
}

nlohmann::json model_to_json(const TrustModel& m) {
  json j;
  j["worlds"] = m.worlds;
  j["variables"] = m.variables.names();
  json parts = json::object();
  for (const auto& [var, block_of] : m.partition_block) {
    // Blocks ordered by their first world, worlds in model order.
    std::vector<std::vector<std::string>> blocks;
    std::map<int, std::size_t> seen;
    for (std::size_t w = 0; w < block_of.size(); ++w) {
      auto [it, inserted] = seen.try_emplace(block_of[w], blocks.size());
      if (inserted) blocks.emplace_back();
      blocks[it->second].push_back(m.worlds[w]);
    }
    parts[var] = blocks;
  }
  j["indistinguishability"] = std::move(parts);
  json trust = json::object();
  for (std::size_t w = 0; w < m.worlds.size(); ++w) {
    trust[m.worlds[w]] = m.trust[w].names();
  }
  j["trustworthy"] = std::move(trust);
  json valuation = json::object();
  for (const auto& [prop, entry] : m.valuation) {
    json e;
    json permanent = json::array();
    for (int w : entry.permanent) permanent.push_back(m.worlds[static_cast<std::size_t>(w)]);
    e["permanent"] = std::move(permanent);
    json announced = json::array();
    for (const auto& [w, ds] : entry.announced) {
      announced.push_back(json::array(
          {m.worlds[static_cast<std::size_t>(w)], ds.names()}));
    }
    e["announced"] = std::move(announced);
    valuation[prop] = std::move(e);
  }
  j["valuation"] = std::move(valuation);
  return j;
}

}  // namespace trustlogic
