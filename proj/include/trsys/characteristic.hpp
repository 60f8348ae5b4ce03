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
#include <cstdint>
#include <vector>

#include "trsys/lattice.hpp"
#include "trsys/transfer.hpp"

namespace trsys {

/// A monotone self-map of a finite poset, given by its image array.
class MonotoneEndomap {
 public:
  // Throws NotMonotone, or InvalidArgument on a malformed image.
  MonotoneEndomap(PosetPtr p, std::vector<Element> image);

  const Poset& poset() const noexcept { return *poset_; }
  const PosetPtr& poset_ptr() const noexcept { return poset_; }
  const std::vector<Element>& image() const noexcept { return image_; }
  Element operator()(Element x) const { return image_[x]; }

  // f <= g iff f(x) <= g(x) everywhere.
  bool pointwise_leq(const MonotoneEndomap& other) const;
  bool is_idempotent() const noexcept;
  bool is_contractive() const noexcept;

  friend bool operator==(const MonotoneEndomap& a, const MonotoneEndomap& b) noexcept {
    return a.image_ == b.image_;
  }
  friend auto operator<=>(const MonotoneEndomap& a, const MonotoneEndomap& b) noexcept {
    return a.image_ <=> b.image_;
  }

 private:
  PosetPtr poset_;
  std::vector<Element> image_;
};

/// Idempotent, contractive, monotone map. Its fixed points form an interior
/// system: a join-closed subset containing the bottom.
class InteriorOperator : public MonotoneEndomap {
 public:
  // Throws InvalidArgument unless idempotent and contractive.
  InteriorOperator(PosetPtr p, std::vector<Element> image);

  Mask fixed_points() const noexcept;
};

// Characteristic function: x maps to the least element R-related to x,
// computed as the meet of the R-downset and checked to lie in it.
InteriorOperator chi(const TransferSystem& r);

// Join-closed subsets containing the bottom, as masks, in increasing order.
std::vector<Mask> interior_systems(const Lattice& p, std::size_t max_elements = 32);
// Number of interior operators without materialising them.
std::uint64_t count_interior_operators(const Lattice& p, std::size_t max_elements = 32);
// f(x) = join of {s in S : s <= x}.
InteriorOperator operator_from_interior_system(const Lattice& p, Mask system);
// All interior operators, sorted by image. Throws SizeLimit past max_elements.
std::vector<InteriorOperator> enumerate_interior_operators(const Lattice& p,
                                                           std::size_t max_elements = 32);

struct ChiImageReport {
  bool matches = false;          // chi(Tr(P)) == End°(P) as sets
  std::size_t image_size = 0;    // |chi(Tr(P))|
  std::size_t operator_count = 0;
};
ChiImageReport chi_image_check(const Lattice& p, const EnumerationOptions& opts = {});

// Least system in the fiber over f: generated by (f(y), y) for all y.
TransferSystem fiber_least(const InteriorOperator& f);

struct ChiFiber {
  InteriorOperator op;
  TransferSystem least;
  TransferSystem greatest;
  std::vector<TransferSystem> members;  // canonical order
};

// Groups Tr(P) by chi and verifies for every fiber: closure under meet and
// join (all pairs up to 256 members, a strided sample above), greatest = saturated hull of each member, least = fiber_least, and
// that the fiber is exactly the interval [least, greatest]. A failed check
// throws InvariantViolation. Fibers are ordered by operator image.
std::vector<ChiFiber> fiber_decomposition(const Lattice& p, const TrLattice& tr);
std::vector<ChiFiber> fiber_decomposition(const Lattice& p, const EnumerationOptions& opts = {});

// Galois pair between subsets of P and Tr(P).
TransferSystem galois_F(const Lattice& p, Mask subset);
Mask galois_G(const TransferSystem& r);
// Contains the top and is closed under binary meets.
bool is_moore_family(const Lattice& p, Mask subset);

}  // namespace trsys
