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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "expect.hpp"
#include "oracles.hpp"
#include "trsys/characteristic.hpp"
#include "trsys/lattice.hpp"
#include "trsys/matchstick.hpp"
#include "trsys/transfer.hpp"
#include "trsys/verify.hpp"

using namespace trsys;

namespace {

Lattice pentagon() {
  const std::vector<ElementPair> pairs = {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  return Lattice::from_order(5, pairs);
}

}  // namespace

TEST_CASE("validate_cover reports the three-of-four diamond") {
  const Lattice sq = boolean_cube(2);  // bottom 0, a = 1, b = 2, top 3
  const std::vector<ElementPair> edges = {{0, 1}, {1, 3}, {2, 3}};
  const CoverValidation v = validate_cover(sq, edges);
  REQUIRE(std::holds_alternative<CoverViolation>(v));
  CHECK(std::get<CoverViolation>(v).rule == CoverViolation::Rule::kDiamond);
  CHECK_FALSE(oracle::is_saturated_cover(oracle::from_poset(sq.poset()), {{0, 1}, {1, 3}, {2, 3}}));
}

TEST_CASE("validate_cover reports restriction and non-cover edges") {
  const Lattice sq = boolean_cube(2);
  const std::vector<ElementPair> lone_top = {{1, 3}};
  const CoverValidation v = validate_cover(sq, lone_top);
  REQUIRE(std::holds_alternative<CoverViolation>(v));
  CHECK(std::get<CoverViolation>(v).rule == CoverViolation::Rule::kRestriction);
  const std::vector<ElementPair> long_edge = {{0, 3}};
  const CoverValidation w = validate_cover(sq, long_edge);
  REQUIRE(std::holds_alternative<CoverViolation>(w));
  CHECK(std::get<CoverViolation>(w).rule == CoverViolation::Rule::kNotACover);
  CHECK_CODE(validate_cover(pentagon(), lone_top), ErrorCode::kNotModular);
}

TEST_CASE("cover counts") {
  CHECK(enumerate_covers(boolean_cube(3)).size() == 61);
  CHECK(enumerate_covers(iterated_fusion(chain(2), 3)).size() == 12);
  CHECK(enumerate_covers(boolean_cube(2)).size() == 7);
  CHECK(enumerate_covers(boolean_cube(4)).size() == 2480);
  CHECK_CODE(enumerate_covers(pentagon()), ErrorCode::kNotModular);
}

TEST_CASE("covers are ordered and independent of the worker count") {
  const Lattice q4 = boolean_cube(4);
  const auto one = enumerate_covers(q4, 1);
  const auto four = enumerate_covers(q4, 4);
  CHECK(one == four);
  for (std::size_t i = 1; i < one.size(); ++i) CHECK(one[i - 1].size() <= one[i].size());
}

TEST_CASE("cover_to_system examples") {
  const Lattice sq = boolean_cube(2);
  const auto all = enumerate_covers(sq);
  const SaturatedCover& full = all.back();
  CHECK(full.size() == 4);
  CHECK(cover_to_system(full) == complete_system(sq.poset_ptr()));

  const Lattice f3 = iterated_fusion(chain(2), 3);
  const std::vector<ElementPair> bottom_edges = {{0, 1}, {0, 2}, {0, 3}};
  const CoverValidation v = validate_cover(f3, bottom_edges);
  REQUIRE(std::holds_alternative<SaturatedCover>(v));
  const TransferSystem r = cover_to_system(std::get<SaturatedCover>(v));
  CHECK(r.pairs() == std::vector<ElementPair>{{0, 1}, {0, 2}, {0, 3}});
  CHECK_FALSE(r.relates(0, 4));
}

TEST_CASE("round trips on [2]^{*3}") {
  const Lattice f3 = iterated_fusion(chain(2), 3);
  std::size_t saturated = 0;
  for (const auto& r : enumerate_transfer_systems(f3.poset_ptr())) {
    if (!is_saturated(r)) {
      CHECK_CODE(system_to_cover(f3, r), ErrorCode::kNotSaturated);
      continue;
    }
    ++saturated;
    CHECK(cover_to_system(system_to_cover(f3, r)) == r);
  }
  CHECK(saturated == 12);
  CHECK_CODE(system_to_cover(f3, complete_system(chain(2).poset_ptr())), ErrorCode::kAmbientMismatch);
}

TEST_CASE("counts agree across the bijection") {
  for (const auto& [name, l] : modular_family()) {
    CAPTURE(name);
    const std::size_t covers = enumerate_covers(l).size();
    CHECK(covers == enumerate_saturated_systems(l.poset_ptr(), {1, 64}).size());
    CHECK(covers == count_interior_operators(l));
  }
}

TEST_CASE("saturated covers are restriction-closed") {
  for (const auto& [name, l] : modular_family()) {
    CAPTURE(name);
    for (const auto& c : enumerate_covers(l)) {
      for (auto [x, y] : c.edges()) {
        for (Element z = 0; z < l.size(); ++z) {
          if (!l.leq(z, y)) continue;
          const Element m = l.meet(x, z);
          if (m != z) CHECK(c.contains(m, z));
        }
      }
    }
  }
}

TEST_CASE("generated systems fill intervals") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const Lattice q = boolean_cube(n);
    for (const auto& c : enumerate_covers(q)) {
      const TransferSystem r = cover_to_system(c);
      for (Element x = 0; x < q.size(); ++x) {
        for (Element z = 0; z < q.size(); ++z) {
          if (!r.relates(x, z)) continue;
          for (Element y = 0; y < q.size(); ++y) {
            for (Element w = 0; w < q.size(); ++w) {
              if (q.leq(x, y) && q.leq(y, w) && q.leq(w, z)) CHECK(r.relates(y, w));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("covers of the 3-cube grouped by bottom face") {
  // Row sizes counted off the published table of all 61 covers.
  const std::vector<std::size_t> rows = {6, 7, 7, 9, 9, 9, 14};
  const Lattice q = boolean_cube(3);
  const oracle::Order o = oracle::from_poset(q.poset());
  for (unsigned axis = 0; axis < 3; ++axis) {
    const auto on_face = [axis](std::size_t x) { return ((x >> axis) & 1U) == 0; };
    std::map<std::vector<ElementPair>, std::size_t> groups;
    for (const auto& c : enumerate_covers(q)) {
      std::vector<ElementPair> bottom;
      for (auto [x, y] : c.edges()) {
        if (on_face(x) && on_face(y)) bottom.push_back({x, y});
      }
      ++groups[bottom];
    }
    std::map<std::vector<oracle::Edge>, std::size_t> naive;
    for (const auto& edges : oracle::naive_saturated_covers(o)) {
      std::vector<oracle::Edge> bottom;
      for (auto [x, y] : edges) {
        if (on_face(x) && on_face(y)) bottom.push_back({x, y});
      }
      std::sort(bottom.begin(), bottom.end());
      ++naive[bottom];
    }
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> naive_sizes;
    for (const auto& [edges, count] : groups) sizes.push_back(count);
    for (const auto& [edges, count] : naive) naive_sizes.push_back(count);
    std::sort(sizes.begin(), sizes.end());
    std::sort(naive_sizes.begin(), naive_sizes.end());
    CHECK(sizes == rows);
    CHECK(naive_sizes == rows);
  }
}

TEST_CASE("cover structure") {
  const CoverStructure s(boolean_cube(3));
  CHECK(s.edge_count() == 12);
  CHECK(s.diamonds().size() == 6);
  const CoverStructure f(iterated_fusion(chain(2), 4));
  CHECK(f.diamonds().size() == 6);
  CHECK_CODE(CoverStructure(pentagon()), ErrorCode::kNotModular);
}
