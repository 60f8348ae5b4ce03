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

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "trsys/lattice.hpp"
#include "trsys/poset.hpp"

namespace trsys {

using PosetPtr = std::shared_ptr<const Poset>;

/// A binary relation on n <= 64 elements, stored by columns:
/// row(y) is the set of x with x R y.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : down_(n, 0) {}

  static Relation identity(std::size_t n);
  static Relation from_pairs(std::size_t n, std::span<const ElementPair> pairs);

  std::size_t size() const noexcept { return down_.size(); }
  bool test(Element x, Element y) const noexcept { return has(down_[y], x); }
  void set(Element x, Element y) noexcept { down_[y] |= bit(x); }
  void reset(Element x, Element y) noexcept { down_[y] &= ~bit(x); }

  Mask row(Element y) const noexcept { return down_[y]; }
  Mask& row(Element y) noexcept { return down_[y]; }
  // {y : x R y}
  Mask column_of(Element x) const noexcept;

  // Number of related pairs, reflexive ones included.
  std::size_t count() const noexcept;
  // Pairs sorted by (x, y); reflexive pairs only on request.
  std::vector<ElementPair> pairs(bool include_reflexive = false) const;

  bool subset_of(const Relation& other) const noexcept;
  bool intersects(const Relation& other) const noexcept;

  Relation& operator|=(const Relation& other) noexcept;
  Relation& operator&=(const Relation& other) noexcept;
  friend Relation operator|(Relation a, const Relation& b) noexcept { return a |= b; }
  friend Relation operator&(Relation a, const Relation& b) noexcept { return a &= b; }

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation&, const Relation&) = default;

 private:
  std::vector<Mask> down_;
};

/// A transfer system: a reflexive, transitive, restriction-closed
/// refinement of the ambient order. Values are immutable and are only
/// produced by validate(), generate() and the enumerators, so every
/// instance satisfies the axioms.
class TransferSystem {
 public:
  const Poset& poset() const noexcept { return *poset_; }
  const PosetPtr& poset_ptr() const noexcept { return poset_; }
  const Relation& relation() const noexcept { return rel_; }

  bool relates(Element x, Element y) const noexcept { return rel_.test(x, y); }
  // R-downset {y : y R x}.
  Mask downset(Element x) const noexcept { return rel_.row(x); }
  std::vector<ElementPair> pairs() const { return rel_.pairs(false); }
  std::size_t pair_count() const noexcept { return rel_.count() - rel_.size(); }

  // Refinement order on Tr(P).
  bool refines(const TransferSystem& other) const noexcept {
    return rel_.subset_of(other.rel_);
  }

  friend bool operator==(const TransferSystem& a, const TransferSystem& b) noexcept {
    return a.rel_ == b.rel_ && a.poset_->same_order(*b.poset_);
  }

  // Canonical output order: fewer pairs first, then lexicographic pairs.
  friend bool canonical_less(const TransferSystem& a, const TransferSystem& b);

 private:
  TransferSystem(PosetPtr poset, Relation rel) : poset_(std::move(poset)), rel_(std::move(rel)) {}
  friend TransferSystem make_trusted_system(PosetPtr poset, Relation rel);

  PosetPtr poset_;
  Relation rel_;
};

// Wraps a relation already known to satisfy the axioms. Internal use by
// modules that produce systems from verified constructions.
TransferSystem make_trusted_system(PosetPtr poset, Relation rel);

enum class Axiom { kRefinement, kReflexivity, kTransitivity, kRestriction };

struct Violation {
  Axiom axiom;
  // Witness pairs: the offending pair(s) and, for restriction and
  // transitivity, the pair that should have been present.
  std::vector<ElementPair> witness;
  std::string describe(const Poset& p) const;
};

std::optional<Violation> find_violation(const Poset& p, const Relation& rel);

using Validation = std::variant<TransferSystem, Violation>;
Validation validate(const PosetPtr& p, const Relation& rel);

// The three closure phases; each returns true when it added pairs.
bool close_reflexive(const Poset& p, Relation& rel);
bool close_restriction(const Poset& p, Relation& rel);
bool close_transitive(Relation& rel);

// Least transfer system containing q. On posets with all binary meets this
// is reflexive, then restriction, then transitive closure, in that order,
// and the result is asserted valid. Posets without all meets (a lattice
// with its bottom deleted) iterate the phases to a fixpoint.
// Throws InvalidArgument when q does not refine the order.
TransferSystem generate(const PosetPtr& p, const Relation& q);
TransferSystem generate(const Lattice& p, std::span<const ElementPair> q);

TransferSystem discrete_system(const PosetPtr& p);
TransferSystem complete_system(const PosetPtr& p);

// Throw AmbientMismatch for systems on different orders.
TransferSystem meet(const TransferSystem& a, const TransferSystem& b);
TransferSystem join(const TransferSystem& a, const TransferSystem& b);

// x R y <= z and x R z imply y R z.
bool is_saturated(const TransferSystem& r);
TransferSystem saturated_hull(const TransferSystem& r);

// Least element a with a R top; requires a top and all meets.
Element minimal_fibrant(const TransferSystem& r);

// Induced system on the poset with `removed` (a subset of {bottom, top})
// deleted. Throws UnsupportedSubposet for other subsets.
TransferSystem restrict_to_subposet(const TransferSystem& r, Mask removed);

// Inverse of restrict_to_subposet(., {bottom}) on systems where the bottom
// relates to everything.
TransferSystem extend_with_bottom(const PosetPtr& full, const TransferSystem& sub);

struct EnumerationOptions {
  std::size_t jobs = 1;
  // Guard on the number of strict order pairs for full enumeration.
  std::size_t max_pairs = 26;
};

// All transfer systems in canonical order. Throws SizeLimit past the guard.
std::vector<TransferSystem> enumerate_transfer_systems(const PosetPtr& p,
                                                       const EnumerationOptions& opts = {});
std::size_t count_transfer_systems(const PosetPtr& p, const EnumerationOptions& opts = {});

// Saturated systems only, searched directly with saturated-hull propagation.
// The pair guard does not apply; the 64-element limit does.
std::vector<TransferSystem> enumerate_saturated_systems(const PosetPtr& p,
                                                        const EnumerationOptions& opts = {});

/// Tr(P): every transfer system on P, ordered by refinement.
class TrLattice {
 public:
  // `systems` must be all of Tr(P), in any order and possibly repeated;
  // a proper subset throws InvariantViolation.
  explicit TrLattice(std::vector<TransferSystem> systems);

  std::size_t size() const noexcept { return systems_.size(); }
  const std::vector<TransferSystem>& systems() const noexcept { return systems_; }
  const TransferSystem& operator[](std::size_t i) const { return systems_[i]; }

  std::optional<std::size_t> index_of(const TransferSystem& r) const;
  bool leq(std::size_t i, std::size_t j) const { return systems_[i].refines(systems_[j]); }

  // Hasse edges (i, j): system j covers system i.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept {
    return covers_;
  }

  // Computed by scanning the enumerated set, not through generate().
  std::optional<std::size_t> meet(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> join(std::size_t i, std::size_t j) const;
  std::size_t bottom() const noexcept { return bottom_; }
  std::size_t top() const noexcept { return top_; }

  // Tr(P) as a poset; SizeLimit above 64 systems.
  Poset as_poset() const;

 private:
  std::vector<TransferSystem> systems_;
  std::map<Relation, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

TrLattice enumerate_all(const PosetPtr& p, const EnumerationOptions& opts = {});
inline TrLattice enumerate_all(const Lattice& p, const EnumerationOptions& opts = {}) {
  return enumerate_all(p.poset_ptr(), opts);
}

}  // namespace trsys
