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

// Counting transfer systems on fusions, and the rank-two structure theorem
// for Tr([2]^{*n}).

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trsys/lattice.hpp"
#include "trsys/transfer.hpp"

namespace trsys {

using BigCount = boost::multiprecision::cpp_int;

struct MiddleTerm {
  Element element;          // in the factor it came from
  BigCount fibrant_count;   // |Tr_a(factor)|
  BigCount term;            // fibrant_count * |Tr(other \ {bottom, top})|
};

// |Tr(P*Q)| split by the minimal fibrant of a system on the fusion.
struct FusionCountBreakdown {
  BigCount top_term;     // |Tr(P \ top)| |Tr(Q \ top)|
  BigCount bottom_term;  // |Tr(P \ bottom)| |Tr(Q \ bottom)|
  std::vector<MiddleTerm> middle_terms_p;
  std::vector<MiddleTerm> middle_terms_q;
  BigCount total;
};

// Sub-counts come from enumerating the deleted-extreme subposets; the empty
// poset has exactly one transfer system. Throws SizeLimit.
FusionCountBreakdown count_tr_fusion(const Lattice& p, const Lattice& q,
                                     const EnumerationOptions& opts = {});

BigCount catalan(std::size_t n);

// |Tr([m]*[n])|. The Catalan closed form holds for m, n >= 1; when one side
// is [0] the fusion is the other chain (or [1]) and the count is read off
// directly, since no value of Cat(-1) repairs the closed form there.
BigCount count_tr_chain_fusion(std::size_t m, std::size_t n);

// |{R in Tr(P) : minimal_fibrant(R) = a}|. Throws SizeLimit.
BigCount tr_minimal_fibrant_count(const Lattice& p, Element a, const EnumerationOptions& opts = {});
// The same for every element at once, indexed by element.
std::vector<BigCount> tr_minimal_fibrant_census(const Lattice& p,
                                                const EnumerationOptions& opts = {});

// 2^{p+2} + p + 1. Throws NotPrime, or SizeLimit for p above 2^20.
BigCount tr_rank_two(std::uint64_t p);

/// Tr([2]^{*n}) split into a bottom cube, a middle antichain and a top cube.
struct BMTDecomposition {
  std::size_t n = 0;
  Lattice lattice;                   // [2]^{*n}
  TrLattice tr;
  std::vector<Element> middles;      // interior elements, position i <-> bit i
  // Indices into tr. bottom_cube[S] relates the bottom to exactly the
  // middles in S; top_cube[S] has exactly the middles in S related to the
  // top; middle[i] is the system with middles[i] related to the top.
  std::vector<std::size_t> bottom_cube;
  std::vector<std::size_t> middle;
  std::vector<std::size_t> top_cube;
};

// Enumerates, classifies and checks: block sizes, the cube isomorphisms,
// and that the Hasse covers of Tr are exactly the cube covers plus
//   (i)   bottom_cube[all \ {a}] < middle[a],
//   (ii)  middle[a] < top_cube[{a}],
//   (iii) bottom_cube[all] < top_cube[{}].
// Throws ClassificationGap for a system in no block, InvariantViolation on
// a failed check, SizeLimit past the guard.
BMTDecomposition bmt_decompose(std::size_t n, const EnumerationOptions& opts = {});

struct RankTwoChiReport {
  std::size_t n = 0;
  std::size_t fiber_count = 0;
  std::size_t saturated_count = 0;
  std::size_t top_fiber_size = 0;
  std::vector<std::size_t> fiber_sizes;  // ordered by operator image
};

// Checks that every bottom and middle system is a saturated singleton
// fiber, that the top cube is one fiber over the constant-bottom operator,
// that chi reverses order and is injective away from the top cube, and
// that there are 2^n + n + 1 saturated systems. Throws InvariantViolation.
RankTwoChiReport chi_structure_rank_two(std::size_t n, const EnumerationOptions& opts = {});

std::string to_string(const BigCount& c);

}  // namespace trsys
