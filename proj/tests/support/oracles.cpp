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

#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

namespace {

bool in(Bits m, std::size_t x) { return (m >> x) & 1u; }
Bits one(std::size_t x) { return Bits{1} << x; }

// Brute-force meet and join, tabulated once per order.
struct Tables {
  std::size_t n;
  std::vector<std::size_t> meet, join;
  explicit Tables(const Order& o);
  std::size_t m(std::size_t x, std::size_t y) const { return meet[x * n + y]; }
  std::size_t j(std::size_t x, std::size_t y) const { return join[x * n + y]; }
};

}  // namespace

Order from_poset(const trsys::Poset& p) {
  Order o;
  o.n = p.size();
  o.down.assign(o.n, 0);
  for (std::size_t x = 0; x < o.n; ++x) {
    for (std::size_t y = 0; y < o.n; ++y) {
      if (p.leq(x, y)) o.down[y] |= one(x);
    }
  }
  return o;
}

Order from_pairs(std::size_t n, const std::vector<Edge>& pairs) {
  Order o;
  o.n = n;
  o.down.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) o.down[x] |= one(x);
  for (auto [x, y] : pairs) o.down[y] |= one(x);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t y = 0; y < n; ++y) {
      if (in(o.down[y], k)) o.down[y] |= o.down[k];
    }
  }
  return o;
}

std::size_t bottom(const Order& o) {
  for (std::size_t x = 0; x < o.n; ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < o.n; ++y) ok = ok && o.leq(x, y);
    if (ok) return x;
  }
  throw std::logic_error("no bottom");
}

std::size_t top(const Order& o) {
  for (std::size_t x = 0; x < o.n; ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < o.n; ++y) ok = ok && o.leq(y, x);
    if (ok) return x;
  }
  throw std::logic_error("no top");
}

Order fuse(const Order& p, const Order& q) {
  std::vector<std::size_t> pm, qm;
  for (std::size_t x = 0; x < p.n; ++x) {
    if (x != bottom(p) && x != top(p)) pm.push_back(x);
  }
  for (std::size_t x = 0; x < q.n; ++x) {
    if (x != bottom(q) && x != top(q)) qm.push_back(x);
  }
  const std::size_t n = 2 + pm.size() + qm.size();
  std::vector<Edge> pairs;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    pairs.push_back({0, i});
    pairs.push_back({i, n - 1});
  }
  if (n == 2) pairs.push_back({0, 1});
  for (std::size_t i = 0; i < pm.size(); ++i) {
    for (std::size_t j = 0; j < pm.size(); ++j) {
      if (i != j && p.leq(pm[i], pm[j])) pairs.push_back({1 + i, 1 + j});
    }
  }
  for (std::size_t i = 0; i < qm.size(); ++i) {
    for (std::size_t j = 0; j < qm.size(); ++j) {
      if (i != j && q.leq(qm[i], qm[j])) pairs.push_back({1 + pm.size() + i, 1 + pm.size() + j});
    }
  }
  return from_pairs(n, pairs);
}

std::optional<std::size_t> meet(const Order& o, std::size_t x, std::size_t y) {
  std::optional<std::size_t> best;
  for (std::size_t z = 0; z < o.n; ++z) {
    if (!o.leq(z, x) || !o.leq(z, y)) continue;
    bool greatest = true;
    for (std::size_t w = 0; w < o.n; ++w) {
      if (o.leq(w, x) && o.leq(w, y) && !o.leq(w, z)) greatest = false;
    }
    if (greatest) best = z;
  }
  return best;
}

std::optional<std::size_t> join(const Order& o, std::size_t x, std::size_t y) {
  std::optional<std::size_t> best;
  for (std::size_t z = 0; z < o.n; ++z) {
    if (!o.leq(x, z) || !o.leq(y, z)) continue;
    bool least = true;
    for (std::size_t w = 0; w < o.n; ++w) {
      if (o.leq(x, w) && o.leq(y, w) && !o.leq(z, w)) least = false;
    }
    if (least) best = z;
  }
  return best;
}

namespace {

Tables::Tables(const Order& o) : n(o.n), meet(o.n * o.n), join(o.n * o.n) {
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto a = oracle::meet(o, x, y);
      const auto b = oracle::join(o, x, y);
      if (!a || !b) throw std::invalid_argument("oracle order is not a lattice");
      meet[x * n + y] = *a;
      join[x * n + y] = *b;
    }
  }
}

bool transfer_with(const Order& o, const Tables& t, const Rel& r) {
  for (std::size_t y = 0; y < o.n; ++y) {
    if (!in(r[y], y)) return false;
    if ((r[y] & ~o.down[y]) != 0) return false;
  }
  for (std::size_t x = 0; x < o.n; ++x) {
    for (std::size_t y = 0; y < o.n; ++y) {
      if (!in(r[y], x)) continue;
      for (std::size_t z = 0; z < o.n; ++z) {
        if (in(r[z], y) && !in(r[z], x)) return false;
        if (o.leq(z, y) && !in(r[z], t.m(x, z))) return false;
      }
    }
  }
  return true;
}

bool cover_with(const Order& o, const Tables& t, const std::vector<Edge>& covers,
                const std::vector<Edge>& chosen) {
  auto has_edge = [&](std::size_t a, std::size_t b) {
    return std::find(chosen.begin(), chosen.end(), Edge{a, b}) != chosen.end();
  };
  auto is_cover = [&](std::size_t a, std::size_t b) {
    return std::find(covers.begin(), covers.end(), Edge{a, b}) != covers.end();
  };
  for (const auto& e : chosen) {
    if (!is_cover(e.first, e.second)) return false;
  }
  for (auto [x, z] : chosen) {
    for (std::size_t y = 0; y < o.n; ++y) {
      if (t.j(x, y) != z || y == z) continue;
      if (!has_edge(t.m(x, y), y)) return false;
    }
  }
  for (auto [b, l] : covers) {
    for (auto [b2, r] : covers) {
      if (b2 != b || r <= l) continue;
      const std::size_t top = t.j(l, r);
      if (!is_cover(l, top) || !is_cover(r, top)) continue;
      const int k = has_edge(b, l) + has_edge(b, r) + has_edge(l, top) + has_edge(r, top);
      if (k == 3) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Edge> strict_pairs(const Order& o) {
  std::vector<Edge> out;
  for (std::size_t x = 0; x < o.n; ++x) {
    for (std::size_t y = 0; y < o.n; ++y) {
      if (x != y && o.leq(x, y)) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<Edge> cover_edges(const Order& o) {
  std::vector<Edge> out;
  for (auto [x, y] : strict_pairs(o)) {
    bool cover = true;
    for (std::size_t z = 0; z < o.n; ++z) {
      if (z != x && z != y && o.leq(x, z) && o.leq(z, y)) cover = false;
    }
    if (cover) out.push_back({x, y});
  }
  return out;
}

Rel identity(const Order& o) {
  Rel r(o.n, 0);
  for (std::size_t x = 0; x < o.n; ++x) r[x] = one(x);
  return r;
}

Rel rel_of(const trsys::TransferSystem& r) {
  Rel out(r.poset().size(), 0);
  for (std::size_t y = 0; y < out.size(); ++y) {
    for (std::size_t x = 0; x < out.size(); ++x) {
      if (r.relates(x, y)) out[y] |= one(x);
    }
  }
  return out;
}

bool subset(const Rel& a, const Rel& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

bool is_transfer_system(const Order& o, const Rel& r) {
  return transfer_with(o, Tables(o), r);
}

bool is_saturated(const Order& o, const Rel& r) {
  for (std::size_t x = 0; x < o.n; ++x) {
    for (std::size_t z = 0; z < o.n; ++z) {
      if (!in(r[z], x)) continue;
      for (std::size_t y = 0; y < o.n; ++y) {
        if (o.leq(x, y) && o.leq(y, z) && !in(r[z], y)) return false;
      }
    }
  }
  return true;
}

Rel closure(const Order& o, Rel r) {
  const Tables t(o);
  for (std::size_t y = 0; y < o.n; ++y) r[y] |= one(y);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < o.n; ++x) {
      for (std::size_t y = 0; y < o.n; ++y) {
        if (!in(r[y], x)) continue;
        for (std::size_t z = 0; z < o.n; ++z) {
          if (in(r[z], y) && !in(r[z], x)) {
            r[z] |= one(x);
            changed = true;
          }
          if (o.leq(z, y)) {
            const std::size_t m = t.m(x, z);
            if (!in(r[z], m)) {
              r[z] |= one(m);
              changed = true;
            }
          }
        }
      }
    }
  }
  return r;
}

std::vector<Rel> naive_transfer_systems(const Order& o) {
  const auto pairs = strict_pairs(o);
  if (pairs.size() > 24) throw std::length_error("naive filter is limited to 24 pairs");
  const Tables tables(o);
  std::vector<Rel> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << pairs.size()); ++s) {
    Rel r = identity(o);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (in(s, i)) r[pairs[i].second] |= one(pairs[i].first);
    }
    if (transfer_with(o, tables, r)) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_saturated_cover(const Order& o, const std::vector<Edge>& chosen) {
  return cover_with(o, Tables(o), cover_edges(o), chosen);
}

std::vector<std::vector<Edge>> naive_saturated_covers(const Order& o) {
  const auto covers = cover_edges(o);
  if (covers.size() > 20) throw std::length_error("naive cover filter is limited to 20 edges");
  const Tables tables(o);
  std::vector<std::vector<Edge>> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << covers.size()); ++s) {
    std::vector<Edge> chosen;
    for (std::size_t i = 0; i < covers.size(); ++i) {
      if (in(s, i)) chosen.push_back(covers[i]);
    }
    if (cover_with(o, tables, covers, chosen)) out.push_back(std::move(chosen));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> chi(const Order& o, const Rel& r) {
  const Tables t(o);
  std::vector<std::size_t> out(o.n);
  for (std::size_t y = 0; y < o.n; ++y) {
    std::size_t acc = y;
    for (std::size_t x = 0; x < o.n; ++x) {
      if (in(r[y], x)) acc = t.m(acc, x);
    }
    out[y] = acc;
  }
  return out;
}

std::uint64_t count_interior_by_subsets(const Order& o) {
  if (o.n > 24) throw std::length_error("subset scan is limited to 24 elements");
  const Tables t(o);
  const std::size_t bot = bottom(o);
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << o.n); ++s) {
    if (!in(s, bot)) continue;
    bool closed = true;
    for (std::size_t x = 0; x < o.n && closed; ++x) {
      if (!in(s, x)) continue;
      for (std::size_t y = x + 1; y < o.n; ++y) {
        if (in(s, y) && !in(s, t.j(x, y))) {
          closed = false;
          break;
        }
      }
    }
    count += closed;
  }
  return count;
}

std::vector<std::vector<std::size_t>> interior_maps_by_filter(const Order& o) {
  if (o.n > 6) throw std::length_error("map filter is limited to 6 elements");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> f(o.n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t x = 0; x < o.n && ok; ++x) {
      ok = o.leq(f[x], x) && f[f[x]] == f[x];
      for (std::size_t y = 0; y < o.n && ok; ++y) {
        if (o.leq(x, y) && !o.leq(f[x], f[y])) ok = false;
      }
    }
    if (ok) out.push_back(f);
    std::size_t i = 0;
    while (i < o.n && ++f[i] == o.n) f[i++] = 0;
    if (i == o.n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_pentagon(const Order& o) {
  // 0 < a < b < 1 and 0 < c < 1, c incomparable to a and b, closed under
  // the ambient meet and join.
  for (std::size_t z = 0; z < o.n; ++z) {
    for (std::size_t a = 0; a < o.n; ++a) {
      for (std::size_t b = 0; b < o.n; ++b) {
        if (a == b || !o.leq(a, b)) continue;
        for (std::size_t c = 0; c < o.n; ++c) {
          if (o.leq(c, b) || o.leq(b, c) || o.leq(a, c) || o.leq(c, a)) continue;
          const auto lo = meet(o, b, c);
          const auto hi = join(o, a, c);
          if (!lo || !hi || *lo != z) continue;
          if (meet(o, a, c) != z || join(o, b, c) != hi) continue;
          if (*lo == a || *hi == b) continue;
          return true;
        }
      }
    }
  }
  return false;
}

std::uint64_t catalan(std::size_t n) {
  // C(2n, n) / (n + 1), exact in 64 bits for n <= 30.
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<Edge> figure_tr_fuse3_covers() {
  return {{0, 1},   {0, 2},   {0, 3},   {1, 5},   {1, 4},   {2, 4},   {2, 6},   {3, 5},
          {3, 6},   {4, 8},   {4, 7},   {5, 7},   {5, 9},   {6, 10},  {6, 7},   {7, 11},
          {8, 12},  {9, 13},  {10, 14}, {11, 12}, {11, 13}, {11, 14}, {12, 16}, {12, 15},
          {13, 17}, {13, 15}, {14, 16}, {14, 17}, {15, 18}, {16, 18}, {17, 18}};
}

Rel rel_of_edges(const Order& o, const std::vector<Edge>& edges) {
  Rel r = identity(o);
  for (auto [x, y] : edges) r[y] |= one(x);
  return r;
}

std::vector<Edge> edges_of(const trsys::SaturatedCover& c) {
  std::vector<Edge> out;
  for (auto [x, y] : c.edges()) out.push_back({x, y});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
