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

#include "trsys/fusion.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "trsys/characteristic.hpp"
#include "trsys/error.hpp"

namespace trsys {

namespace {

BigCount count_without(const Lattice& p, Mask removed, const EnumerationOptions& opts) {
  const Mask keep = p.poset().all() & ~removed;
  if (keep == 0) return 1;
  auto sub = std::make_shared<const Poset>(p.poset().induced(keep));
  return BigCount(count_transfer_systems(sub, opts));
}

std::vector<MiddleTerm> middle_terms(const Lattice& side, const Lattice& other,
                                     const EnumerationOptions& opts) {
  std::vector<MiddleTerm> out;
  const Mask extremes = bit(side.bottom()) | bit(side.top());
  if ((side.poset().all() & ~extremes) == 0) return out;
  const BigCount rest = count_without(other, bit(other.bottom()) | bit(other.top()), opts);
  const auto census = tr_minimal_fibrant_census(side, opts);
  for (Element a = 0; a < side.size(); ++a) {
    if (has(extremes, a)) continue;
    out.push_back({a, census[a], census[a] * rest});
  }
  return out;
}

}  // namespace

FusionCountBreakdown count_tr_fusion(const Lattice& p, const Lattice& q,
                                     const EnumerationOptions& opts) {
  FusionCountBreakdown b;
  b.top_term = count_without(p, bit(p.top()), opts) * count_without(q, bit(q.top()), opts);
  b.bottom_term = count_without(p, bit(p.bottom()), opts) * count_without(q, bit(q.bottom()), opts);
  b.middle_terms_p = middle_terms(p, q, opts);
  b.middle_terms_q = middle_terms(q, p, opts);
  b.total = b.top_term + b.bottom_term;
  for (const auto& t : b.middle_terms_p) b.total += t.term;
  for (const auto& t : b.middle_terms_q) b.total += t.term;
  return b;
}

BigCount catalan(std::size_t n) {
  BigCount c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

BigCount count_tr_chain_fusion(std::size_t m, std::size_t n) {
  if (m == 0 && n == 0) return 2;
  if (m == 0 || n == 0) return catalan(std::max(m, n) + 1);
  return 2 * catalan(n) * catalan(m) + catalan(n - 1) * (catalan(m + 1) - 2 * catalan(m)) +
         catalan(m - 1) * (catalan(n + 1) - 2 * catalan(n));
}

std::vector<BigCount> tr_minimal_fibrant_census(const Lattice& p, const EnumerationOptions& opts) {
  std::vector<BigCount> census(p.size(), 0);
  for (const auto& r : enumerate_transfer_systems(p.poset_ptr(), opts)) ++census[minimal_fibrant(r)];
  return census;
}

BigCount tr_minimal_fibrant_count(const Lattice& p, Element a, const EnumerationOptions& opts) {
  if (a >= p.size()) throw Error(ErrorCode::kInvalidArgument, "element out of range");
  return tr_minimal_fibrant_census(p, opts)[a];
}

BigCount tr_rank_two(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (p > (std::uint64_t{1} << 20)) {
    throw Error(ErrorCode::kSizeLimit, "closed form is evaluated for p up to 2^20");
  }
  BigCount two_pow = 1;
  two_pow <<= static_cast<unsigned>(p + 2);
  return two_pow + p + 1;
}

BMTDecomposition bmt_decompose(std::size_t n, const EnumerationOptions& opts) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be at least 1");
  Lattice lat = iterated_fusion(chain(2), n);
  TrLattice tr = enumerate_all(lat, opts);
  const Element bot = lat.bottom();
  const Element top = lat.top();

  std::vector<Element> middles;
  for (Element x = 0; x < lat.size(); ++x) {
    if (x != bot && x != top) middles.push_back(x);
  }
  check_invariant(middles.size() == n, "[2]^{*n} has the wrong number of middle elements");
  const std::size_t full = (std::size_t{1} << n) - 1;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> bottom_cube(full + 1, kUnset), top_cube(full + 1, kUnset), middle(n, kUnset);

  auto place = [&](std::size_t& slot, std::size_t i) {
    check_invariant(slot == kUnset, "two systems classified into the same position");
    slot = i;
  };
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const TransferSystem& r = tr[i];
    std::size_t below = 0, above = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (r.relates(bot, middles[k])) below |= std::size_t{1} << k;
      if (r.relates(middles[k], top)) above |= std::size_t{1} << k;
    }
    const bool bot_top = r.relates(bot, top);
    // Every non-reflexive pair of [2]^{*n} is (bot, a), (a, top) or (bot, top).
    if (!bot_top && above == 0) {
      place(bottom_cube[below], i);
    } else if (bot_top && below == full) {
      place(top_cube[above], i);
    } else if (!bot_top && std::has_single_bit(above) && below == (full & ~above)) {
      place(middle[static_cast<std::size_t>(std::countr_zero(above))], i);
    } else {
      throw Error(ErrorCode::kClassificationGap,
                  "system with " + std::to_string(r.pair_count()) + " pairs fits no block");
    }
  }
  auto all_set = [&](const std::vector<std::size_t>& v) {
    return std::none_of(v.begin(), v.end(), [&](std::size_t s) { return s == kUnset; });
  };
  check_invariant(all_set(bottom_cube) && all_set(top_cube) && all_set(middle),
                  "a block of Tr([2]^{*n}) is incomplete");
  check_invariant(tr.size() == 2 * (full + 1) + n, "blocks do not partition Tr([2]^{*n})");

  for (std::size_t s = 0; s <= full; ++s) {
    for (std::size_t t = 0; t <= full; ++t) {
      const bool subset = (s & ~t) == 0;
      check_invariant(tr.leq(bottom_cube[s], bottom_cube[t]) == subset,
                      "bottom block is not a cube");
      check_invariant(tr.leq(top_cube[s], top_cube[t]) == subset, "top block is not a cube");
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> expected;
  for (std::size_t s = 0; s <= full; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t b = std::size_t{1} << k;
      if (s & b) continue;
      expected.insert({bottom_cube[s], bottom_cube[s | b]});
      expected.insert({top_cube[s], top_cube[s | b]});
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t b = std::size_t{1} << k;
    expected.insert({bottom_cube[full & ~b], middle[k]});  // (i)
    expected.insert({middle[k], top_cube[b]});             // (ii)
  }
  expected.insert({bottom_cube[full], top_cube[0]});  // (iii)
  const std::set<std::pair<std::size_t, std::size_t>> actual(tr.covers().begin(), tr.covers().end());
  check_invariant(actual == expected, "Hasse covers of Tr([2]^{*n}) differ from the cube rules");

  return {n,
          std::move(lat),
          std::move(tr),
          std::move(middles),
          std::move(bottom_cube),
          std::move(middle),
          std::move(top_cube)};
}

RankTwoChiReport chi_structure_rank_two(std::size_t n, const EnumerationOptions& opts) {
  const BMTDecomposition d = bmt_decompose(n, opts);
  std::vector<std::vector<Element>> image(d.tr.size());
  std::map<std::vector<Element>, std::size_t> fibers;
  for (std::size_t i = 0; i < d.tr.size(); ++i) {
    image[i] = chi(d.tr[i]).image();
    ++fibers[image[i]];
  }

  std::vector<std::size_t> lower(d.bottom_cube);
  lower.insert(lower.end(), d.middle.begin(), d.middle.end());
  for (std::size_t i : lower) {
    check_invariant(fibers[image[i]] == 1, "a bottom or middle system shares its chi-fiber");
    check_invariant(is_saturated(d.tr[i]), "a bottom or middle system is not saturated");
  }
  const std::vector<Element> constant(d.lattice.size(), d.lattice.bottom());
  for (std::size_t i : d.top_cube) {
    check_invariant(image[i] == constant, "chi is not constant on the top cube");
  }
  check_invariant(fibers[constant] == d.top_cube.size(), "top cube is not a whole fiber");
  for (std::size_t i : lower) {
    for (std::size_t j : lower) {
      if (!d.tr.leq(i, j)) continue;
      const MonotoneEndomap fi(d.lattice.poset_ptr(), image[i]);
      const MonotoneEndomap fj(d.lattice.poset_ptr(), image[j]);
      check_invariant(fj.pointwise_leq(fi), "chi does not reverse order below the top cube");
    }
  }

  RankTwoChiReport rep;
  rep.n = n;
  rep.fiber_count = fibers.size();
  rep.top_fiber_size = fibers[constant];
  for (const auto& [img, size] : fibers) rep.fiber_sizes.push_back(size);
  for (const auto& r : d.tr.systems()) rep.saturated_count += is_saturated(r);
  const std::size_t expected = (std::size_t{1} << n) + n + 1;
  check_invariant(rep.saturated_count == expected, "saturated count differs from 2^n + n + 1");
  check_invariant(rep.fiber_count == expected, "fiber count differs from 2^n + n + 1");
  return rep;
}

std::string to_string(const BigCount& c) { return c.str(); }

}  // namespace trsys
