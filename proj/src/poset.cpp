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

#include "trsys/poset.hpp"

#include <algorithm>

#include "trsys/error.hpp"

namespace trsys {

std::vector<Element> mask_elements(Mask m) {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(std::popcount(m)));
  for_each_bit(m, [&](Element x) { out.push_back(x); });
  return out;
}

namespace {

// Elements of `m` with nothing strictly above them inside `m`.
Mask maximal_in(const std::vector<Mask>& down, Mask m) {
  Mask out = 0;
  for_each_bit(m, [&](Element x) {
    // x is maximal iff no other element of m has x in its down-set.
    bool dominated = false;
    for_each_bit(m & ~bit(x), [&](Element y) {
      if (has(down[y], x)) dominated = true;
    });
    if (!dominated) out |= bit(x);
  });
  return out;
}

Mask minimal_in(const std::vector<Mask>& down, Mask m) {
  Mask out = 0;
  for_each_bit(m, [&](Element x) {
    if ((down[x] & m) == bit(x)) out |= bit(x);
  });
  return out;
}

}  // namespace

Poset::Poset(std::vector<Mask> down, std::vector<std::string> names)
    : down_(std::move(down)), names_(std::move(names)) {
  const std::size_t n = down_.size();
  if (n > kMaxElements) {
    throw Error(ErrorCode::kSizeLimit,
                "poset has " + std::to_string(n) + " elements; the limit is 64");
  }
  const Mask universe = low_mask(n);
  for (Element y = 0; y < n; ++y) {
    if ((down_[y] & ~universe) != 0) {
      throw Error(ErrorCode::kInvalidArgument, "order relation mentions an element out of range");
    }
    down_[y] |= bit(y);
  }
  for (Element k = 0; k < n; ++k) {
    for (Element y = 0; y < n; ++y) {
      if (has(down_[y], k)) down_[y] |= down_[k];
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (has(down_[y], x) && has(down_[x], y)) {
        throw Error(ErrorCode::kCycleDetected,
                    "elements " + std::to_string(x) + " and " + std::to_string(y) +
                        " lie on a cycle");
      }
    }
  }
  if (names_.size() != n) {
    names_.resize(n);
    for (Element x = 0; x < n; ++x) {
      if (names_[x].empty()) names_[x] = std::to_string(x);
    }
  }
  finish();
}

Poset Poset::from_pairs(std::size_t n, std::span<const ElementPair> pairs,
                        std::vector<std::string> names) {
  if (n > kMaxElements) {
    throw Error(ErrorCode::kSizeLimit,
                "poset has " + std::to_string(n) + " elements; the limit is 64");
  }
  std::vector<Mask> down(n, 0);
  for (const auto& [x, y] : pairs) {
    if (x >= n || y >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pair (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");
    }
    if (x == y) continue;
    down[y] |= bit(x);
  }
  return Poset(std::move(down), std::move(names));
}

void Poset::finish() {
  const std::size_t n = size();
  up_.assign(n, 0);
  for (Element y = 0; y < n; ++y) {
    for_each_bit(down_[y], [&](Element x) { up_[x] |= bit(y); });
  }

  mlb_.assign(n * n, 0);
  mub_.assign(n * n, 0);
  all_meets_ = true;
  all_joins_ = true;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x; y < n; ++y) {
      const Mask lower = maximal_in(down_, down_[x] & down_[y]);
      const Mask upper = minimal_in(down_, up_[x] & up_[y]);
      mlb_[x * n + y] = mlb_[y * n + x] = lower;
      mub_[x * n + y] = mub_[y * n + x] = upper;
      if (std::popcount(lower) != 1) all_meets_ = false;
      if (std::popcount(upper) != 1) all_joins_ = false;
    }
  }

  cover_up_.assign(n, 0);
  covers_.clear();
  strict_pairs_ = 0;
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (!less(x, y)) continue;
      ++strict_pairs_;
      if ((up_[x] & down_[y]) == (bit(x) | bit(y))) {
        cover_up_[x] |= bit(y);
        covers_.emplace_back(x, y);
      }
    }
  }

  bottom_.reset();
  top_.reset();
  for (Element x = 0; x < n; ++x) {
    if (up_[x] == all()) bottom_ = x;
    if (down_[x] == all()) top_ = x;
  }

  // Longest-chain height; a linear extension is obtained by sorting on
  // down-set size.
  std::vector<Element> order(n);
  for (Element x = 0; x < n; ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [&](Element a, Element b) {
    return std::popcount(down_[a]) < std::popcount(down_[b]);
  });
  height_.assign(n, 0);
  for (Element y : order) {
    std::size_t h = 0;
    for_each_bit(down_[y] & ~bit(y), [&](Element x) { h = std::max(h, height_[x] + 1); });
    height_[y] = h;
  }
}

std::optional<Element> Poset::meet(Element x, Element y) const noexcept {
  const Mask m = maximal_lower_bounds(x, y);
  if (std::popcount(m) != 1) return std::nullopt;
  return static_cast<Element>(std::countr_zero(m));
}

std::optional<Element> Poset::join(Element x, Element y) const noexcept {
  const Mask m = minimal_upper_bounds(x, y);
  if (std::popcount(m) != 1) return std::nullopt;
  return static_cast<Element>(std::countr_zero(m));
}

std::vector<ElementPair> Poset::strict_pairs() const {
  std::vector<ElementPair> out;
  out.reserve(strict_pairs_);
  for (Element x = 0; x < size(); ++x) {
    for_each_bit(up_[x] & ~bit(x), [&](Element y) { out.emplace_back(x, y); });
  }
  return out;
}

Poset Poset::induced(Mask keep, std::vector<Element>* old_index) const {
  keep &= all();
  const std::vector<Element> kept = mask_elements(keep);
  std::vector<Element> new_index(size(), size());
  for (Element i = 0; i < kept.size(); ++i) new_index[kept[i]] = i;
  std::vector<Mask> down(kept.size(), 0);
  std::vector<std::string> names;
  names.reserve(kept.size());
  for (Element i = 0; i < kept.size(); ++i) {
    for_each_bit(down_[kept[i]] & keep, [&](Element x) { down[i] |= bit(new_index[x]); });
    names.push_back(names_[kept[i]]);
  }
  if (old_index != nullptr) *old_index = kept;
  return Poset(std::move(down), std::move(names));
}

Poset Poset::opposite() const {
  return Poset(up_, names_);
}

}  // namespace trsys
