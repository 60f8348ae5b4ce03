// Copyright 2026 The trsys Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trsys/serialize.hpp"

#include <sstream>

#include "trsys/error.hpp"

namespace trsys {

namespace {

Json pair_list(const std::vector<ElementPair>& pairs) {
  Json out = Json::array();
  for (const auto& [x, y] : pairs) out.push_back(Json::array({x, y}));
  return out;
}

std::vector<ElementPair> read_pairs(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::kParseError, std::string(what) + " must be an array");
  std::vector<ElementPair> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw Error(ErrorCode::kParseError, std::string(what) + " entries must be [x, y]");
    }
    const auto x = e[0].get<std::size_t>();
    const auto y = e[1].get<std::size_t>();
    if (x >= n || y >= n) throw Error(ErrorCode::kParseError, "element index out of range");
    out.push_back({x, y});
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kParseError, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void dot_nodes(std::ostringstream& os, const Poset& p) {
  for (Element x = 0; x < p.size(); ++x) os << "  n" << x << " [label=" << quote(p.name(x)) << "];\n";
}

std::string relation_label(const Poset& p, const std::vector<ElementPair>& pairs) {
  if (pairs.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) s += ", ";
    s += p.name(pairs[i].first) + "->" + p.name(pairs[i].second);
  }
  return s;
}

}  // namespace

Json poset_to_json(const Poset& p) {
  Json j;
  j["n"] = p.size();
  j["names"] = p.names();
  j["leq_pairs"] = pair_list(p.covers());
  return j;
}

Json lattice_to_json(const Lattice& p) { return poset_to_json(p.poset()); }

Json system_to_json(const TransferSystem& r) {
  Json j;
  j["lattice"] = poset_to_json(r.poset());
  j["pairs"] = pair_list(r.pairs());
  return j;
}

Json cover_to_json(const SaturatedCover& q) {
  Json j;
  j["lattice"] = poset_to_json(q.poset());
  j["edges"] = pair_list(q.edges());
  return j;
}

Json operator_to_json(const MonotoneEndomap& f) {
  Json j;
  j["image"] = f.image();
  return j;
}

Json fiber_to_json(const ChiFiber& fiber) {
  Json j;
  j["operator"] = fiber.op.image();
  j["least_pairs"] = pair_list(fiber.least.pairs());
  j["greatest_pairs"] = pair_list(fiber.greatest.pairs());
  j["size"] = fiber.members.size();
  return j;
}

Json map_to_json(const LatticeMap& f) {
  Json j;
  j["source"] = lattice_to_json(f.source());
  j["target"] = lattice_to_json(f.target());
  j["image"] = f.image();
  return j;
}

Lattice lattice_from_json(const Json& j) {
  try {
    const Json& jn = field(j, "n");
    if (!jn.is_number_unsigned()) throw Error(ErrorCode::kParseError, "\"n\" must be a natural number");
    const auto n = jn.get<std::size_t>();
    if (n == 0) throw Error(ErrorCode::kNotBounded, "empty order has no bottom");
    if (n > kMaxElements) {
      throw Error(ErrorCode::kSizeLimit, "at most " + std::to_string(kMaxElements) + " elements");
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
      names = j.at("names").get<std::vector<std::string>>();
      if (names.size() != n) throw Error(ErrorCode::kParseError, "\"names\" must have n entries");
    }
    const auto pairs = read_pairs(field(j, "leq_pairs"), n, "leq_pairs");
    return Lattice::from_order(n, pairs, std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

TransferSystem system_from_json(const Json& j, const Lattice& p) {
  try {
    const auto pairs = read_pairs(field(j, "pairs"), p.size(), "pairs");
    auto v = validate(p.poset_ptr(), Relation::from_pairs(p.size(), pairs));
    if (auto* bad = std::get_if<Violation>(&v)) {
      throw Error(ErrorCode::kInvalidArgument, "not a transfer system: " + bad->describe(p.poset()));
    }
    return std::get<TransferSystem>(std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

LatticeMap map_from_json(const Json& j) {
  try {
    return LatticeMap(lattice_from_json(field(j, "source")), lattice_from_json(field(j, "target")),
                      field(j, "image").get<std::vector<Element>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::string lattice_to_dot(const Poset& p, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  dot_nodes(os, p);
  for (const auto& [x, y] : p.covers()) os << "  n" << x << " -> n" << y << " [arrowhead=none];\n";
  os << "}\n";
  return os.str();
}

std::string system_to_dot(const TransferSystem& r, const std::string& name) {
  const Poset& p = r.poset();
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  dot_nodes(os, p);
  for (const auto& [x, y] : p.covers()) os << "  n" << x << " -> n" << y << " [style=invis];\n";
  for (const auto& [x, y] : r.pairs()) os << "  n" << x << " -> n" << y << " [arrowhead=none];\n";
  os << "}\n";
  return os.str();
}

std::string cover_to_dot(const SaturatedCover& q, const std::string& name) {
  const Poset& p = q.poset();
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  dot_nodes(os, p);
  for (const auto& [x, y] : p.covers()) {
    os << "  n" << x << " -> n" << y;
    if (q.contains(x, y)) os << " [arrowhead=none, penwidth=3, color=black];\n";
    else os << " [arrowhead=none, color=gray70];\n";
  }
  os << "}\n";
  return os.str();
}

std::string tr_lattice_to_dot(const TrLattice& tr, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    os << "  t" << i << " [label=" << quote(relation_label(tr[i].poset(), tr[i].pairs())) << "];\n";
  }
  for (const auto& [i, j] : tr.covers()) os << "  t" << i << " -> t" << j << " [arrowhead=none];\n";
  os << "}\n";
  return os.str();
}

}  // namespace trsys
