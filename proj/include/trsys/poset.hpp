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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace trsys {

// Elements of a finite poset are dense indices 0..n-1. Subsets of elements
// are 64-bit masks, which bounds every poset in this library at 64 elements.
using Element = std::size_t;
using Mask = std::uint64_t;
using ElementPair = std::pair<Element, Element>;

inline constexpr std::size_t kMaxElements = 64;

constexpr Mask bit(Element x) noexcept { return Mask{1} << x; }
constexpr bool has(Mask m, Element x) noexcept { return (m >> x) & 1u; }
constexpr Mask low_mask(std::size_t n) noexcept {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// Calls fn(x) for every set bit x of m, in increasing order.
template <typename Fn>
void for_each_bit(Mask m, Fn&& fn) {
  while (m != 0) {
    const auto x = static_cast<Element>(std::countr_zero(m));
    m &= m - 1;
    fn(x);
  }
}

std::vector<Element> mask_elements(Mask m);

/// A finite partial order stored as principal down-sets and up-sets.
///
/// Besides the order itself, the poset caches the maximal lower bounds and
/// minimal upper bounds of every pair. When the poset has all binary meets
/// the maximal-lower-bound set of (x, y) is the singleton {x ∧ y}; deleted
/// extremes of a lattice lose this property, and the transfer-system code
/// works from the bound sets so it handles both cases.
class Poset {
 public:
  Poset() = default;

  // `down[y]` must contain every x <= y. The relation is closed reflexively
  // and transitively; a cycle throws CycleDetected.
  Poset(std::vector<Mask> down, std::vector<std::string> names = {});

  // Reflexive-transitive closure of generating pairs (x, y) meaning x <= y.
  static Poset from_pairs(std::size_t n, std::span<const ElementPair> pairs,
                          std::vector<std::string> names = {});

  std::size_t size() const noexcept { return down_.size(); }
  bool empty() const noexcept { return down_.empty(); }
  Mask all() const noexcept { return low_mask(size()); }

  bool leq(Element x, Element y) const noexcept { return has(down_[y], x); }
  bool less(Element x, Element y) const noexcept { return x != y && leq(x, y); }
  bool comparable(Element x, Element y) const noexcept {
    return leq(x, y) || leq(y, x);
  }
  Mask down(Element x) const noexcept { return down_[x]; }
  Mask up(Element x) const noexcept { return up_[x]; }

  Mask maximal_lower_bounds(Element x, Element y) const noexcept {
    return mlb_[x * size() + y];
  }
  Mask minimal_upper_bounds(Element x, Element y) const noexcept {
    return mub_[x * size() + y];
  }
  std::optional<Element> meet(Element x, Element y) const noexcept;
  std::optional<Element> join(Element x, Element y) const noexcept;
  bool has_all_meets() const noexcept { return all_meets_; }
  bool has_all_joins() const noexcept { return all_joins_; }

  std::optional<Element> bottom() const noexcept { return bottom_; }
  std::optional<Element> top() const noexcept { return top_; }

  const std::vector<ElementPair>& covers() const noexcept { return covers_; }
  bool is_cover(Element x, Element y) const noexcept {
    return has(cover_up_[x], y);
  }
  Mask upper_covers(Element x) const noexcept { return cover_up_[x]; }

  // Length of the longest chain ending at x.
  std::size_t height(Element x) const noexcept { return height_[x]; }

  // Number of pairs x < y.
  std::size_t strict_pair_count() const noexcept { return strict_pairs_; }
  std::vector<ElementPair> strict_pairs() const;

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Element x) const { return names_[x]; }

  // The subposet on `keep`; old_index[i] is the original element of new i.
  Poset induced(Mask keep, std::vector<Element>* old_index = nullptr) const;
  Poset opposite() const;

  // Equality of the order relation only; names are ignored.
  bool same_order(const Poset& other) const noexcept {
    return down_ == other.down_;
  }

 private:
  void finish();

  std::vector<Mask> down_;
  std::vector<Mask> up_;
  std::vector<Mask> mlb_;
  std::vector<Mask> mub_;
  std::vector<Mask> cover_up_;
  std::vector<ElementPair> covers_;
  std::vector<std::size_t> height_;
  std::vector<std::string> names_;
  std::optional<Element> bottom_;
  std::optional<Element> top_;
  std::size_t strict_pairs_ = 0;
  bool all_meets_ = true;
  bool all_joins_ = true;
};

}  // namespace trsys
