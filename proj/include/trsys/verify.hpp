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

// Regression suite of known counts and structural checks.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trsys/lattice.hpp"

namespace trsys {

struct VerifyOptions {
  // Upper parameter for checks that sweep n (catalan, rank-two, a102896,
  // matchstick); each check has its own default.
  std::optional<std::size_t> max;
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
  std::size_t samples = 200;  // meet-preserving pairs for functoriality
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;  // one per sub-check, prefixed "ok" or "FAIL"
};

// Check names in execution order.
const std::vector<std::string>& verify_checks();

// Throws InvalidArgument for an unknown name; SizeLimit if a requested
// size breaks a guard.
CheckResult run_check(const std::string& name, const VerifyOptions& opts = {});

// Modular lattices used by the matchstick and round-trip checks: chains
// [0]..[6], cubes of dimension at most 4, [2]^{*n} for n <= 5, and [2]x[3].
std::vector<std::pair<std::string, Lattice>> modular_family();
// Lattices used for fiber checks: the modular family without the 4-cube,
// plus the pentagon.
std::vector<std::pair<std::string, Lattice>> fiber_family();

// Tr([2]^{*n}) as described by its block structure, built without any
// transfer-system computation: two n-cubes, n middle points, and the three
// kinds of cross covers.
Poset rank_two_model(std::size_t n);

}  // namespace trsys
