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

// JSON and Graphviz DOT encodings.
//
// Lattice:   {"n": 3, "names": [...], "leq_pairs": [[0,1],[1,2]]}
//            leq_pairs may be any generating set; covers are written.
// System:    {"lattice": <lattice>, "pairs": [[x,y],...]}  non-reflexive
// Cover:     {"lattice": <lattice>, "edges": [[x,y],...]}
// Operator:  {"image": [...]}
// Fiber:     {"operator": [...], "least_pairs": ..., "greatest_pairs": ..., "size": k}
// Map:       {"source": <lattice>, "target": <lattice>, "image": [...]}

#pragma once

#include <string>

#include <json.hpp>

#include "trsys/characteristic.hpp"
#include "trsys/functorial.hpp"
#include "trsys/lattice.hpp"
#include "trsys/matchstick.hpp"
#include "trsys/transfer.hpp"

namespace trsys {

using Json = nlohmann::ordered_json;

Json poset_to_json(const Poset& p);
Json lattice_to_json(const Lattice& p);
Json system_to_json(const TransferSystem& r);
Json cover_to_json(const SaturatedCover& q);
Json operator_to_json(const MonotoneEndomap& f);
Json fiber_to_json(const ChiFiber& fiber);
Json map_to_json(const LatticeMap& f);

// Throw ParseError on malformed input; lattice axioms surface as their own
// codes (CycleDetected, NotALattice, ...).
Lattice lattice_from_json(const Json& j);
// The system is validated against `p`; a violation throws InvalidArgument.
TransferSystem system_from_json(const Json& j, const Lattice& p);
LatticeMap map_from_json(const Json& j);

// Hasse diagram, drawn bottom to top.
std::string lattice_to_dot(const Poset& p, const std::string& name = "lattice");
// Every non-reflexive relation as an edge; the Hasse diagram is kept as
// invisible edges so the layout matches the lattice.
std::string system_to_dot(const TransferSystem& r, const std::string& name = "system");
// Chosen edges bold over a gray Hasse diagram.
std::string cover_to_dot(const SaturatedCover& q, const std::string& name = "cover");
// Hasse diagram of Tr(P); nodes are labelled by their non-reflexive pairs.
std::string tr_lattice_to_dot(const TrLattice& tr, const std::string& name = "tr");

}  // namespace trsys
