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

#include "trsys/lattice.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <tuple>

#include "trsys/error.hpp"

namespace trsys {

Lattice::Lattice(Poset order) {
  if (order.empty() || !order.bottom() || !order.top()) {
    throw Error(ErrorCode::kNotBounded, "order has no global bottom or no global top");
  }
  if (!order.has_all_meets() || !order.has_all_joins()) {
    for (Element x = 0; x < order.size(); ++x) {
      for (Element y = 0; y < order.size(); ++y) {
        if (!order.meet(x, y) || !order.join(x, y)) {
          throw Error(ErrorCode::kNotALattice, "elements " + order.name(x) + " and " +
                                                   order.name(y) +
                                                   " lack a unique meet or join");
        }
      }
    }
  }
  const std::size_t n = order.size();
  meet_.resize(n * n);
  join_.resize(n * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      meet_[x * n + y] = *order.meet(x, y);
      join_[x * n + y] = *order.join(x, y);
    }
  }
  bottom_ = *order.bottom();
  top_ = *order.top();
  order_ = std::make_shared<const Poset>(std::move(order));
  try {
    rank_ = grade(*this);
  } catch (const Error&) {
    rank_.reset();
  }
}

Lattice Lattice::from_order(std::size_t n, std::span<const ElementPair> pairs,
                            std::vector<std::string> names) {
  return Lattice(Poset::from_pairs(n, pairs, std::move(names)));
}

Element Lattice::join_all(Mask m) const noexcept {
  Element acc = bottom_;
  for_each_bit(m, [&](Element x) { acc = join(acc, x); });
  return acc;
}

Element Lattice::meet_all(Mask m) const noexcept {
  Element acc = top_;
  for_each_bit(m, [&](Element x) { acc = meet(acc, x); });
  return acc;
}

Lattice chain(std::size_t m) {
  if (m + 1 > kMaxElements) {
    throw Error(ErrorCode::kSizeLimit, "chain [" + std::to_string(m) + "] exceeds 64 elements");
  }
  std::vector<ElementPair> pairs;
  for (Element i = 0; i < m; ++i) pairs.emplace_back(i, i + 1);
  return Lattice::from_order(m + 1, pairs);
}

Lattice boolean_cube(std::size_t k) {
  if (k > 6) {
    throw Error(ErrorCode::kSizeLimit, "boolean cube of rank " + std::to_string(k) +
                                           " exceeds the 64-element limit");
  }
  const std::size_t n = std::size_t{1} << k;
  std::vector<Mask> down(n, 0);
  std::vector<std::string> names(n);
  for (Element s = 0; s < n; ++s) {
    for (Element t = 0; t < n; ++t) {
      if ((t & s) == t) down[s] |= bit(t);
    }
    std::string label;
    for (std::size_t j = 0; j < k; ++j) label.push_back(((s >> j) & 1u) ? '1' : '0');
    names[s] = k == 0 ? "e" : label;
  }
  return Lattice(Poset(std::move(down), std::move(names)));
}

Lattice product(const Lattice& p, const Lattice& q) {
  const std::size_t np = p.size();
  const std::size_t nq = q.size();
  if (np * nq > kMaxElements) {
    throw Error(ErrorCode::kSizeLimit, "product has " + std::to_string(np * nq) +
                                           " elements; the limit is 64");
  }
  const std::size_t n = np * nq;
  std::vector<Mask> down(n, 0);
  std::vector<std::string> names(n);
  for (Element a = 0; a < np; ++a) {
    for (Element b = 0; b < nq; ++b) {
      const Element y = a * nq + b;
      for (Element c = 0; c < np; ++c) {
        if (!p.leq(c, a)) continue;
        for (Element d = 0; d < nq; ++d) {
          if (q.leq(d, b)) down[y] |= bit(c * nq + d);
        }
      }
      names[y] = "(" + p.name(a) + "," + q.name(b) + ")";
    }
  }
  return Lattice(Poset(std::move(down), std::move(names)));
}

Lattice rectangle(std::size_t m, std::size_t n) { return product(chain(m), chain(n)); }

namespace {

std::vector<Element> interior_of(const Lattice& p) {
  std::vector<Element> out;
  for (Element x = 0; x < p.size(); ++x) {
    if (x != p.bottom() && x != p.top()) out.push_back(x);
  }
  return out;
}

// Bounded lattice on {bot} + blocks + {top}; each block is a copy of the
// interior of some lattice, blocks pairwise incomparable.
Lattice glue(const std::vector<const Lattice*>& parts,
             const std::vector<std::string>& suffixes, std::string bottom_name,
             std::string top_name) {
  std::size_t n = 2;
  std::vector<std::vector<Element>> interiors;
  for (const Lattice* part : parts) {
    interiors.push_back(interior_of(*part));
    n += interiors.back().size();
  }
  if (n > kMaxElements) {
    throw Error(ErrorCode::kSizeLimit, "fusion has " + std::to_string(n) +
                                           " elements; the limit is 64");
  }
  std::vector<Mask> down(n, 0);
  std::vector<std::string> names(n);
  const Element top = n - 1;
  names[0] = std::move(bottom_name);
  names[top] = std::move(top_name);
  down[0] = bit(0);
  down[top] = low_mask(n);
  Element offset = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& inner = interiors[i];
    for (Element a = 0; a < inner.size(); ++a) {
      down[offset + a] = bit(0);
      for (Element b = 0; b < inner.size(); ++b) {
        if (parts[i]->leq(inner[b], inner[a])) down[offset + a] |= bit(offset + b);
      }
      names[offset + a] = parts[i]->name(inner[a]) + suffixes[i];
    }
    offset += inner.size();
  }
  return Lattice(Poset(std::move(down), std::move(names)));
}

}  // namespace

Lattice fusion(const Lattice& p, const Lattice& q) {
  return glue({&p, &q}, {"'", "\""}, p.name(p.bottom()), p.name(p.top()));
}

Lattice iterated_fusion(const Lattice& p, std::size_t k) {
  if (k == 0) {
    return Lattice::from_order(2, std::vector<ElementPair>{{0, 1}},
                               {p.name(p.bottom()), p.name(p.top())});
  }
  if (k == 1) return p;
  std::vector<const Lattice*> parts(k, &p);
  std::vector<std::string> suffixes;
  for (std::size_t i = 1; i <= k; ++i) suffixes.push_back("_" + std::to_string(i));
  return glue(parts, suffixes, p.name(p.bottom()), p.name(p.top()));
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Lattice sub_cp_cp(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (p > 61) {
    throw Error(ErrorCode::kSizeLimit, "Sub(C_p x C_p) for p = " + std::to_string(p) +
                                           " exceeds the 64-element limit");
  }
  const Lattice fused = iterated_fusion(chain(2), p + 1);
  std::vector<std::string> names(fused.size());
  names.front() = "e";
  names.back() = "G";
  for (std::size_t i = 1; i + 1 < fused.size(); ++i) names[i] = "H" + std::to_string(i);
  std::vector<Mask> down(fused.size());
  for (Element x = 0; x < fused.size(); ++x) down[x] = fused.poset().down(x);
  return Lattice(Poset(std::move(down), std::move(names)));
}

Lattice opposite(const Lattice& p) { return Lattice(p.poset().opposite()); }

std::vector<Lattice> all_lattices(std::size_t n) {
  if (n > 8) throw Error(ErrorCode::kSizeLimit, "lattice generation is limited to 8 elements");
  std::vector<Lattice> out;
  if (n == 0) return out;
  if (n <= 2) {
    out.push_back(chain(n - 1));
    return out;
  }
  // Middle elements 1..n-2 in a fixed linear extension: only i < j may hold.
  const std::size_t m = n - 2;
  std::vector<ElementPair> slots;
  for (Element i = 1; i <= m; ++i) {
    for (Element j = i + 1; j <= m; ++j) slots.push_back({i, j});
  }
  const Element top = n - 1;
  std::map<std::vector<std::uint8_t>, std::size_t> seen;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << slots.size()); ++pick) {
    std::vector<Mask> down(n, bit(0));
    for (Element x = 1; x < n; ++x) down[x] |= bit(x);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if ((pick >> k) & 1u) down[slots[k].second] |= bit(slots[k].first);
    }
    down[top] = low_mask(n);
    bool transitive = true;
    for (Element j = 1; j <= m && transitive; ++j) {
      for_each_bit(down[j], [&](Element i) {
        if ((down[i] & ~down[j]) != 0) transitive = false;
      });
    }
    if (!transitive) continue;
    Poset order(std::move(down));
    if (!order.has_all_meets() || !order.has_all_joins()) continue;
    auto key = canonical_form(order);
    if (seen.count(key)) continue;
    seen.emplace(std::move(key), out.size());
    out.push_back(Lattice(std::move(order)));
  }
  std::vector<Lattice> sorted;
  for (const auto& [key, idx] : seen) sorted.push_back(out[idx]);
  return sorted;
}

bool is_modular(const Lattice& p) {
  const std::size_t n = p.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (!p.leq(a, b)) continue;
      for (Element x = 0; x < n; ++x) {
        if (p.join(a, p.meet(x, b)) != p.meet(p.join(a, x), b)) return false;
      }
    }
  }
  return true;
}

std::vector<std::size_t> grade(const Lattice& p) {
  const Poset& order = p.poset();
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> rank(p.size(), kUnset);
  std::deque<Element> queue{p.bottom()};
  rank[p.bottom()] = 0;
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for_each_bit(order.upper_covers(x), [&](Element y) {
      if (rank[y] == kUnset) {
        rank[y] = rank[x] + 1;
        queue.push_back(y);
      }
    });
  }
  for (const auto& [x, y] : order.covers()) {
    if (rank[y] != rank[x] + 1) {
      throw Error(ErrorCode::kNotGraded, "cover " + p.name(x) + " < " + p.name(y) +
                                             " does not increase the rank by one");
    }
  }
  for (Element x = 0; x < p.size(); ++x) {
    for (Element y = 0; y < p.size(); ++y) {
      if (p.less(x, y) && rank[x] >= rank[y]) {
        throw Error(ErrorCode::kNotGraded, "rank is not strictly monotone");
      }
    }
  }
  return rank;
}

namespace {

using Signature = std::tuple<std::size_t, int, int>;

Signature signature(const Poset& p, Element x) {
  return {p.height(x), std::popcount(p.down(x)), std::popcount(p.up(x))};
}

}  // namespace

std::vector<std::uint8_t> canonical_form(const Poset& p) {
  const std::size_t n = p.size();
  if (n > 12) {
    throw Error(ErrorCode::kSizeLimit, "canonical form is limited to 12 elements");
  }
  std::vector<Element> order(n);
  for (Element x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return signature(p, a) < signature(p, b);
  });
  // Class boundaries within `order`.
  std::vector<std::size_t> starts{0};
  double space = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || signature(p, order[i]) != signature(p, order[i - 1])) {
      for (std::size_t k = 2; k <= i - starts.back(); ++k) space *= static_cast<double>(k);
      starts.push_back(i);
    }
  }
  if (space > 2e6) {
    throw Error(ErrorCode::kSizeLimit, "canonical form search space is too large");
  }

  std::vector<std::uint8_t> best;
  std::vector<std::uint8_t> current(n * n);
  auto evaluate = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) current[i * n + j] = p.leq(order[i], order[j]) ? 1 : 0;
    }
    if (best.empty() || current < best) best = current;
  };
  auto recurse = [&](auto&& self, std::size_t cls) -> void {
    if (cls + 1 >= starts.size()) {
      evaluate();
      return;
    }
    const auto first = order.begin() + static_cast<std::ptrdiff_t>(starts[cls]);
    const auto last = order.begin() + static_cast<std::ptrdiff_t>(starts[cls + 1]);
    std::sort(first, last);
    do {
      self(self, cls + 1);
    } while (std::next_permutation(first, last));
  };
  recurse(recurse, 0);
  return best;
}

std::optional<std::vector<Element>> find_isomorphism(const Poset& a, const Poset& b) {
  const std::size_t n = a.size();
  if (b.size() != n || a.strict_pair_count() != b.strict_pair_count()) return std::nullopt;
  std::vector<Signature> sa(n), sb(n);
  for (Element x = 0; x < n; ++x) {
    sa[x] = signature(a, x);
    sb[x] = signature(b, x);
  }
  {
    auto ca = sa, cb = sb;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return std::nullopt;
  }
  // Assign the most constrained elements first.
  std::vector<Element> order(n);
  for (Element x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(), [&](Element x, Element y) {
    const auto cx = std::count(sa.begin(), sa.end(), sa[x]);
    const auto cy = std::count(sa.begin(), sa.end(), sa[y]);
    return std::tie(cx, sa[x]) < std::tie(cy, sa[y]);
  });

  std::vector<Element> image(n, n);
  Mask used = 0;
  auto recurse = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const Element x = order[depth];
    for (Element y = 0; y < n; ++y) {
      if (has(used, y) || sb[y] != sa[x]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const Element u = order[k];
        ok = a.leq(u, x) == b.leq(image[u], y) && a.leq(x, u) == b.leq(y, image[u]);
      }
      if (!ok) continue;
      image[x] = y;
      used |= bit(y);
      if (self(self, depth + 1)) return true;
      used &= ~bit(y);
    }
    return false;
  };
  if (!recurse(recurse, 0)) return std::nullopt;
  return image;
}

}  // namespace trsys
