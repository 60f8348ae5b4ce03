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

// Saturated covers ("matchstick games") on finite modular lattices.
//
// A saturated cover is a set Q of covering edges such that
//   (1) if x Q (x v y) then (x ^ y) Q y, and
//   (2) no covering diamond has exactly three of its four edges in Q.
// On a modular lattice these are in bijection with saturated transfer
// systems via Q -> <Q> and R -> (covering edges of R).

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "trsys/lattice.hpp"
#include "trsys/transfer.hpp"

namespace trsys {

using EdgeSet = boost::dynamic_bitset<>;

// Bottom, left, right, top of a covering diamond and the indices of its
// four edges: (bottom,left), (bottom,right), (left,top), (right,top).
struct CoveringDiamond {
  Element bottom;
  Element left;
  Element right;
  Element top;
  std::array<std::size_t, 4> edges;
};

/// Per-lattice tables used by validation and enumeration. Edge indices
/// follow the order of Lattice::covers().
class CoverStructure {
 public:
  // Throws NotModular.
  explicit CoverStructure(const Lattice& p);

  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<ElementPair>& edges() const noexcept { return edges_; }
  std::optional<std::size_t> edge_index(Element lower, Element upper) const;

  // Rule (1) as an implication graph: forced(e) is every edge that e
  // forces, transitively, including e itself; forcers(e) is the reverse.
  const EdgeSet& forced(std::size_t e) const { return forced_[e]; }
  const EdgeSet& forcers(std::size_t e) const { return forcers_[e]; }
  const std::vector<CoveringDiamond>& diamonds() const noexcept { return diamonds_; }

 private:
  std::vector<ElementPair> edges_;
  std::vector<std::size_t> index_;  // n*n table, edge_count() when absent
  std::size_t n_ = 0;
  std::vector<EdgeSet> forced_;
  std::vector<EdgeSet> forcers_;
  std::vector<CoveringDiamond> diamonds_;
};

class SaturatedCover {
 public:
  const Poset& poset() const noexcept { return *poset_; }
  const PosetPtr& poset_ptr() const noexcept { return poset_; }
  const EdgeSet& edge_bits() const noexcept { return bits_; }
  std::vector<ElementPair> edges() const;
  bool contains(Element lower, Element upper) const;
  std::size_t size() const noexcept { return bits_.count(); }

  friend bool operator==(const SaturatedCover& a, const SaturatedCover& b) noexcept {
    return a.bits_ == b.bits_ && a.poset_->same_order(*b.poset_);
  }

 private:
  SaturatedCover(PosetPtr p, EdgeSet bits) : poset_(std::move(p)), bits_(std::move(bits)) {}
  friend SaturatedCover make_trusted_cover(PosetPtr p, EdgeSet bits);

  PosetPtr poset_;
  EdgeSet bits_;
};

SaturatedCover make_trusted_cover(PosetPtr p, EdgeSet bits);

struct CoverViolation {
  enum class Rule { kNotACover, kDiamond, kRestriction };
  Rule rule;
  // kNotACover: the offending pair. kDiamond: the four diamond edges with
  // the missing one last. kRestriction: the edge x Q (x v y), then the
  // required edge (x ^ y, y).
  std::vector<ElementPair> witness;
  std::string describe(const Poset& p) const;
};

using CoverValidation = std::variant<SaturatedCover, CoverViolation>;
// Throws NotModular.
CoverValidation validate_cover(const Lattice& p, std::span<const ElementPair> edges);

// All saturated covers in canonical order (fewer edges first, then edge
// lists). Throws NotModular, or SizeLimit past max_edges cover edges.
std::vector<SaturatedCover> enumerate_covers(const Lattice& p, std::size_t jobs = 1,
                                             std::size_t max_edges = 96);

// <Q>, asserted saturated.
TransferSystem cover_to_system(const SaturatedCover& q);
// Covering edges of a saturated system. Throws NotSaturated, NotModular.
SaturatedCover system_to_cover(const Lattice& p, const TransferSystem& r);

}  // namespace trsys
