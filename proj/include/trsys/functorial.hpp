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

// Pushforward of transfer systems along monotone maps of lattices.

#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "trsys/lattice.hpp"
#include "trsys/transfer.hpp"

namespace trsys {

class LatticeMap {
 public:
  // Throws InvalidArgument on a malformed image, NotMonotone.
  LatticeMap(Lattice source, Lattice target, std::vector<Element> image);
  static LatticeMap identity(const Lattice& p);

  const Lattice& source() const noexcept { return source_; }
  const Lattice& target() const noexcept { return target_; }
  const std::vector<Element>& image() const noexcept { return image_; }
  Element operator()(Element x) const { return image_[x]; }
  // f(x ^ y) = f(x) ^ f(y) for all x, y.
  bool meet_preserving() const noexcept { return meet_preserving_; }

 private:
  Lattice source_;
  Lattice target_;
  std::vector<Element> image_;
  bool meet_preserving_ = false;
};

// g o f. Throws NotComposable unless f's target is g's source.
LatticeMap compose(const LatticeMap& g, const LatticeMap& f);

// <(f(x), f(y)) : x R y>. Throws AmbientMismatch.
TransferSystem pushforward(const LatticeMap& f, const TransferSystem& r);

struct FunctorialityWitness {
  std::size_t sample_index;
  TransferSystem composite;  // Tr(g o f)(R)
  TransferSystem stepwise;   // Tr(g)(Tr(f)(R))
};

struct FunctorialityReport {
  std::size_t checked = 0;
  std::size_t discrepancies = 0;
  bool composite_refines_stepwise = true;  // on every sample
  std::optional<FunctorialityWitness> first;
  bool holds() const noexcept { return discrepancies == 0; }
};

// Compares Tr(g o f) with Tr(g) o Tr(f) on each sample system. For
// meet-preserving f and g a discrepancy throws InvariantViolation.
// Throws NotComposable, AmbientMismatch.
FunctorialityReport check_functoriality(const LatticeMap& f, const LatticeMap& g,
                                        std::span<const TransferSystem> sample);

// psi(R, T) = {((p,q), (p',q')) : p R p', q T q'} on product(p, q). The
// result is validated. Throws AmbientMismatch.
TransferSystem product_split(const Lattice& p, const Lattice& q, const TransferSystem& r,
                             const TransferSystem& t);
// phi: pushforward along the two projections of product(p, q).
std::pair<TransferSystem, TransferSystem> product_factors(const Lattice& p, const Lattice& q,
                                                          const TransferSystem& s);
LatticeMap projection(const Lattice& p, const Lattice& q, int factor);

// Uniform choice, element by element in a linear extension, among the
// targets above the images of everything already placed below.
LatticeMap random_monotone_map(const Lattice& source, const Lattice& target, std::mt19937_64& rng);

// Two composable monotone maps whose pushforwards do not compose: f sends
// the diamond into a lattice where the images of its atoms meet above the
// image of its bottom, and g widens that gap again. `system` is the
// transfer system on the diamond that exposes the difference.
struct CompositionCounterexample {
  LatticeMap f;
  LatticeMap g;
  TransferSystem system;
};
CompositionCounterexample composition_counterexample();

}  // namespace trsys
