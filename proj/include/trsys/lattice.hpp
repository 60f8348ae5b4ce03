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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trsys/poset.hpp"

namespace trsys {

/// A finite bounded lattice with explicit meet and join tables.
///
/// Lattices are immutable once built. The order is shared through a
/// `std::shared_ptr<const Poset>` so transfer systems and other derived
/// objects can keep their ambient order alive cheaply, and concurrent
/// readers need no synchronisation.
class Lattice {
 public:
  // Throws CycleDetected, NotBounded or NotALattice.
  explicit Lattice(Poset order);

  static Lattice from_order(std::size_t n, std::span<const ElementPair> pairs,
                            std::vector<std::string> names = {});

  std::size_t size() const noexcept { return order_->size(); }
  const Poset& poset() const noexcept { return *order_; }
  const std::shared_ptr<const Poset>& poset_ptr() const noexcept { return order_; }

  bool leq(Element x, Element y) const noexcept { return order_->leq(x, y); }
  bool less(Element x, Element y) const noexcept { return order_->less(x, y); }
  Element meet(Element x, Element y) const noexcept { return meet_[x * size() + y]; }
  Element join(Element x, Element y) const noexcept { return join_[x * size() + y]; }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }
  bool is_trivial() const noexcept { return size() == 1; }

  const std::vector<ElementPair>& covers() const noexcept { return order_->covers(); }
  bool is_cover(Element x, Element y) const noexcept { return order_->is_cover(x, y); }

  // Rank function; present only when the lattice is graded.
  const std::optional<std::vector<std::size_t>>& rank() const noexcept { return rank_; }

  const std::vector<std::string>& names() const noexcept { return order_->names(); }
  const std::string& name(Element x) const { return order_->name(x); }

  // Join of a set of elements; bottom for the empty set.
  Element join_all(Mask m) const noexcept;
  // Meet of a set of elements; top for the empty set.
  Element meet_all(Mask m) const noexcept;

 private:
  std::shared_ptr<const Poset> order_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  Element bottom_ = 0;
  Element top_ = 0;
  std::optional<std::vector<std::size_t>> rank_;
};

// Standard families ---------------------------------------------------------

Lattice chain(std::size_t m);                       // [m] = {0 < 1 < ... < m}
Lattice boolean_cube(std::size_t k);                // [1]^k, element = subset bitmask
Lattice product(const Lattice& p, const Lattice& q);  // element (a, b) at a*|q| + b
Lattice rectangle(std::size_t m, std::size_t n);    // [m] x [n]

// Glues p and q along their bottoms and tops; non-extremal elements of p
// and q become incomparable. Inputs are always relabelled, so fusing a
// lattice with itself is allowed. Element 0 is the bottom, then the interior
// of p, then the interior of q, and the top comes last. Bottom and top are
// distinct in the result even when an input has a single element.
Lattice fusion(const Lattice& p, const Lattice& q);

// k-fold fusion of p with itself. k = 0 gives the two-element chain [1].
Lattice iterated_fusion(const Lattice& p, std::size_t k);

// Sub(C_p x C_p) as [2]^{*(p+1)} with labels e, H1..H(p+1), G.
Lattice sub_cp_cp(std::uint64_t p);

Lattice opposite(const Lattice& p);

// Every lattice with exactly n elements up to isomorphism, ordered by
// canonical form. Throws SizeLimit above 8 elements.
std::vector<Lattice> all_lattices(std::size_t n);

bool is_prime(std::uint64_t n) noexcept;

// Exhaustive check of a <= b  =>  a v (x ^ b) = (a v x) ^ b.
bool is_modular(const Lattice& p);

// Rank by shortest cover path from the bottom, then both grading axioms are
// verified. Throws NotGraded.
std::vector<std::size_t> grade(const Lattice& p);

// Isomorphism --------------------------------------------------------------

// Lexicographically minimal row-major order matrix over the relabellings
// that respect an invariant signature (height, down/up-set sizes). Throws
// SizeLimit above 12 elements or when the search space is too large.
std::vector<std::uint8_t> canonical_form(const Poset& p);

// Order isomorphism a -> b, found by backtracking over signature classes.
std::optional<std::vector<Element>> find_isomorphism(const Poset& a, const Poset& b);
inline bool is_isomorphic(const Poset& a, const Poset& b) {
  return find_isomorphism(a, b).has_value();
}

}  // namespace trsys
