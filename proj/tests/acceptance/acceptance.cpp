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

// Acceptance table. One line per criterion; exit status 1 if any fails.
// Pass --with-n5 to add the 1,385,552 interior operators on [1]^5.

#include <bit>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "trsys/characteristic.hpp"
#include "trsys/functorial.hpp"
#include "trsys/fusion.hpp"
#include "trsys/lattice.hpp"
#include "trsys/matchstick.hpp"
#include "trsys/transfer.hpp"
#include "trsys/verify.hpp"

namespace {

using namespace trsys;
using oracle::Rel;

const EnumerationOptions kWide{1, 64};

// Collects mismatches; a criterion passes when none were recorded.
class Tally {
 public:
  template <typename A, typename B>
  void equal(const std::string& what, const A& got, const B& want) {
    ++checks_;
    if (!(got == want)) {
      std::ostringstream os;
      os << what << ": got " << got << ", want " << want;
      fail(os.str());
    }
  }
  void expect(const std::string& what, bool ok) {
    ++checks_;
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::size_t checks() const { return checks_; }
  std::string summary() const {
    std::string s = std::to_string(checks_) + " checks";
    if (failed_ != 0) {
      s += ", " + std::to_string(failed_) + " failed";
      for (const auto& f : failures_) s += "; " + f;
    }
    return s;
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

Poset to_poset(const oracle::Order& o) {
  std::vector<Mask> down(o.down.begin(), o.down.end());
  return Poset(std::move(down));
}

std::set<Rel> rel_set(const std::vector<TransferSystem>& v) {
  std::set<Rel> out;
  for (const auto& r : v) out.insert(oracle::rel_of(r));
  return out;
}

Lattice fuse2(std::size_t n) { return iterated_fusion(chain(2), n); }

void catalan_chains(Tally& t, const std::string&) {
  const std::uint64_t expected[] = {1, 2, 5, 14, 42, 132};
  for (std::size_t n = 0; n <= 5; ++n) {
    const Lattice l = chain(n);
    const std::size_t got = count_transfer_systems(l.poset_ptr(), kWide);
    t.equal("|Tr([" + std::to_string(n) + "])|", got, expected[n]);
    t.equal("Cat(" + std::to_string(n + 1) + ")", oracle::catalan(n + 1), expected[n]);
    const auto naive = oracle::naive_transfer_systems(oracle::from_poset(l.poset()));
    t.equal("naive |Tr([" + std::to_string(n) + "])|", naive.size(), expected[n]);
  }
}

void rank_two(Tally& t, const std::string&) {
  const std::size_t expected[] = {5, 10, 19, 36, 69};
  for (std::size_t n = 1; n <= 5; ++n) {
    const Lattice l = fuse2(n);
    const std::size_t count = count_transfer_systems(l.poset_ptr(), kWide);
    t.equal("|Tr([2]^{*" + std::to_string(n) + "})|", count, expected[n - 1]);
    t.equal("2^{n+1}+n at n=" + std::to_string(n), (std::size_t{1} << (n + 1)) + n, expected[n - 1]);
    if (n >= 2) {
      const BigCount rec = count_tr_fusion(fuse2(n - 1), chain(2), kWide).total;
      t.equal("recursion at n=" + std::to_string(n), rec, BigCount(count));
    }
  }
  // The closed form at p=5 is 2^7+5+1 = 134.
  const std::map<std::uint64_t, std::uint64_t> closed = {{2, 19}, {3, 36}, {5, 134}};
  for (auto [p, want] : closed) {
    t.equal("tr_rank_two(" + std::to_string(p) + ")", tr_rank_two(p), BigCount(want));
    const std::size_t count = count_transfer_systems(sub_cp_cp(p).poset_ptr(), kWide);
    t.equal("|Tr(Sub(C_" + std::to_string(p) + "^2))|", count, want);
  }
}

void matchstick_counts(Tally& t, const std::string&) {
  t.equal("covers on [1]^3", enumerate_covers(boolean_cube(3)).size(), 61u);
  t.equal("covers on [2]^{*3}", enumerate_covers(fuse2(3)).size(), 12u);
  for (const auto& [name, l] : modular_family()) {
    const oracle::Order o = oracle::from_poset(l.poset());
    const std::size_t covers = enumerate_covers(l).size();
    const auto sat = enumerate_saturated_systems(l.poset_ptr(), kWide);
    for (const auto& r : sat) t.expect(name + ": enumerated system is saturated", oracle::is_saturated(o, oracle::rel_of(r)));
    const std::uint64_t interior = oracle::count_interior_by_subsets(o);
    t.equal(name + ": covers vs saturated systems", covers, sat.size());
    t.equal(name + ": covers vs interior operators", std::uint64_t{covers}, interior);
    t.equal(name + ": library interior count", count_interior_operators(l), interior);
    if (l.poset().strict_pair_count() <= 26) {
      std::size_t saturated = 0;
      for (const auto& r : enumerate_transfer_systems(l.poset_ptr(), kWide)) {
        saturated += oracle::is_saturated(o, oracle::rel_of(r));
      }
      t.equal(name + ": saturated members of Tr(P)", saturated, sat.size());
    }
  }
}

void a102896(Tally& t, const std::string& flags) {
  const std::uint64_t expected[] = {1, 2, 7, 61, 2480, 1385552};
  const std::size_t last = flags.find("--with-n5") != std::string::npos ? 5 : 4;
  for (std::size_t n = 0; n <= last; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const Lattice l = boolean_cube(n);
    const std::uint64_t got = count_interior_operators(l);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.equal("|End([1]^" + std::to_string(n) + ")|", got, expected[n]);
    t.expect("[1]^" + std::to_string(n) + " within 60 s", secs < 60.0);
    if (n <= 4) {
      t.equal("subset scan on [1]^" + std::to_string(n), oracle::count_interior_by_subsets(oracle::from_poset(l.poset())),
              expected[n]);
    }
    if (n <= 2) {
      t.equal("map filter on [1]^" + std::to_string(n),
              oracle::interior_maps_by_filter(oracle::from_poset(l.poset())).size(), std::size_t(expected[n]));
    }
  }
}

void fibers(Tally& t, const std::string&) {
  for (const auto& [name, l] : fiber_family()) {
    const oracle::Order o = oracle::from_poset(l.poset());
    const TrLattice tr = enumerate_all(l, kWide);
    std::vector<Rel> all;
    for (const auto& r : tr.systems()) all.push_back(oracle::rel_of(r));
    std::vector<Rel> saturated;
    for (const auto& r : all) {
      if (oracle::is_saturated(o, r)) saturated.push_back(r);
    }
    auto hull = [&](const Rel& r) {
      Rel acc(o.n, ~oracle::Bits{0});
      for (const auto& s : saturated) {
        if (!oracle::subset(r, s)) continue;
        for (std::size_t i = 0; i < o.n; ++i) acc[i] &= s[i];
      }
      return acc;
    };

    std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < all.size(); ++i) groups[oracle::chi(o, all[i])].push_back(i);

    const auto lib = fiber_decomposition(l, tr);
    t.equal(name + ": fiber count", lib.size(), groups.size());
    t.equal(name + ": fibers vs interior operators", std::uint64_t{groups.size()}, oracle::count_interior_by_subsets(o));

    std::map<std::vector<std::size_t>, const ChiFiber*> by_image;
    for (const auto& f : lib) by_image[f.op.image()] = &f;

    for (const auto& [image, members] : groups) {
      const auto it = by_image.find(image);
      if (it == by_image.end()) {
        t.fail(name + ": library lacks a fiber");
        continue;
      }
      const ChiFiber& f = *it->second;
      const Rel greatest = hull(all[members.front()]);
      bool same_hull = true;
      for (std::size_t i : members) same_hull = same_hull && hull(all[i]) == greatest;
      t.expect(name + ": one saturated hull per fiber", same_hull);
      t.expect(name + ": library maximum is the hull", oracle::rel_of(f.greatest) == greatest);

      Rel q = oracle::identity(o);
      for (std::size_t y = 0; y < o.n; ++y) q[y] |= oracle::Bits{1} << image[y];
      const Rel least = oracle::closure(o, q);
      t.expect(name + ": library minimum is the generated system", oracle::rel_of(f.least) == least);

      std::set<Rel> member_set;
      for (std::size_t i : members) member_set.insert(all[i]);
      std::set<Rel> lib_members = rel_set(f.members);
      t.expect(name + ": library fiber members", lib_members == member_set);
      std::size_t interval = 0;
      bool inside = true;
      for (const auto& r : all) {
        if (oracle::subset(least, r) && oracle::subset(r, greatest)) {
          ++interval;
          inside = inside && member_set.count(r) != 0;
        }
      }
      t.expect(name + ": fiber is the interval [least, hull]", inside && interval == members.size());
    }
  }
}

void fusion_recursion(Tally& t, const std::string&) {
  const std::vector<std::pair<std::string, Lattice>> family = {
      {"[1]", chain(1)}, {"[2]", chain(2)}, {"[3]", chain(3)}, {"[2]^{*2}", fuse2(2)}, {"[1]^2", boolean_cube(2)}};
  for (const auto& [pn, p] : family) {
    for (const auto& [qn, q] : family) {
      const oracle::Order fused = oracle::fuse(oracle::from_poset(p.poset()), oracle::from_poset(q.poset()));
      const Poset fp = to_poset(fused);
      t.expect(pn + "*" + qn + ": fusion shape", is_isomorphic(fp, fusion(p, q).poset()));
      const auto brute = count_transfer_systems(std::make_shared<const Poset>(fp), kWide);
      t.equal(pn + "*" + qn + ": recursion vs enumeration", count_tr_fusion(p, q, kWide).total, BigCount(brute));
    }
  }
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t n = 0; n <= 4; ++n) {
      const std::string tag = "[" + std::to_string(m) + "]*[" + std::to_string(n) + "]";
      const oracle::Order fused =
          oracle::fuse(oracle::from_poset(chain(m).poset()), oracle::from_poset(chain(n).poset()));
      const auto brute = count_transfer_systems(std::make_shared<const Poset>(to_poset(fused)), kWide);
      t.equal(tag + ": closed form vs enumeration", count_tr_chain_fusion(m, n), BigCount(brute));
      t.equal(tag + ": closed form vs recursion", count_tr_chain_fusion(m, n),
              count_tr_fusion(chain(m), chain(n), kWide).total);
    }
  }
  t.equal("|Tr([2]*[3])|", count_tr_chain_fusion(2, 3), BigCount(26));
}

// Block of a system on [2]^{*n}: 'B', 'M', 'T' or '?'; sets *bits to the
// middles involved.
char classify(const oracle::Order& o, const Rel& r, std::size_t* bits) {
  const std::size_t bot = oracle::bottom(o), top = oracle::top(o);
  std::vector<std::size_t> mids;
  for (std::size_t x = 0; x < o.n; ++x) {
    if (x != bot && x != top) mids.push_back(x);
  }
  auto rel = [&](std::size_t x, std::size_t y) { return ((r[y] >> x) & 1u) != 0; };
  std::size_t below = 0, above = 0;
  for (std::size_t i = 0; i < mids.size(); ++i) {
    if (rel(bot, mids[i])) below |= std::size_t{1} << i;
    if (rel(mids[i], top)) above |= std::size_t{1} << i;
  }
  const std::size_t full = (std::size_t{1} << mids.size()) - 1;
  if (rel(bot, top)) {
    if (below != full) return '?';
    *bits = above;
    return 'T';
  }
  if (above == 0) {
    *bits = below;
    return 'B';
  }
  if (std::popcount(above) == 1 && below == (full & ~above)) {
    *bits = static_cast<std::size_t>(std::countr_zero(above));
    return 'M';
  }
  return '?';
}

void bmt(Tally& t, const std::string&) {
  for (std::size_t n = 3; n <= 4; ++n) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const BMTDecomposition d = bmt_decompose(n, kWide);
    const oracle::Order o = oracle::from_poset(d.lattice.poset());
    const std::size_t cube = std::size_t{1} << n;
    t.equal(tag + "|B|", d.bottom_cube.size(), cube);
    t.equal(tag + "|M|", d.middle.size(), n);
    t.equal(tag + "|T|", d.top_cube.size(), cube);
    t.equal(tag + "|Tr|", d.tr.size(), 2 * cube + n);

    std::vector<std::size_t> b(cube, SIZE_MAX), m(n, SIZE_MAX), top(cube, SIZE_MAX);
    for (std::size_t i = 0; i < d.tr.size(); ++i) {
      std::size_t bits = 0;
      switch (classify(o, oracle::rel_of(d.tr[i]), &bits)) {
        case 'B': b[bits] = i; break;
        case 'M': m[bits] = i; break;
        case 'T': top[bits] = i; break;
        default: t.fail(tag + "system outside every block");
      }
    }
    t.expect(tag + "library bottom cube", b == d.bottom_cube);
    t.expect(tag + "library middles", m == d.middle);
    t.expect(tag + "library top cube", top == d.top_cube);

    std::set<oracle::Edge> expected;
    for (std::size_t s = 0; s < cube; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1u) continue;
        const std::size_t up = s | (std::size_t{1} << i);
        expected.insert({b[s], b[up]});
        expected.insert({top[s], top[up]});
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      expected.insert({b[(cube - 1) & ~(std::size_t{1} << a)], m[a]});
      expected.insert({m[a], top[std::size_t{1} << a]});
    }
    expected.insert({b[cube - 1], top[0]});
    const auto hasse = oracle::cover_edges(oracle::from_poset(d.tr.as_poset()));
    t.expect(tag + "Hasse diagram is cubes plus the three cross rules",
             std::set<oracle::Edge>(hasse.begin(), hasse.end()) == expected);

    if (n == 3) {
      const Poset figure = to_poset(oracle::from_pairs(19, oracle::figure_tr_fuse3_covers()));
      t.expect(tag + "isomorphic to the pictured 19-node diagram", is_isomorphic(figure, d.tr.as_poset()));
    }
  }
}

void round_trips(Tally& t, const std::string&) {
  for (const auto& [name, l] : modular_family()) {
    const oracle::Order o = oracle::from_poset(l.poset());
    const auto lattice_covers = oracle::cover_edges(o);
    const auto covers = enumerate_covers(l);
    for (const auto& c : covers) {
      const TransferSystem r = cover_to_system(c);
      t.expect(name + ": cover generates its closure",
               oracle::rel_of(r) == oracle::closure(o, oracle::rel_of_edges(o, oracle::edges_of(c))));
      t.expect(name + ": cover -> system -> cover", system_to_cover(l, r) == c);
    }
    const auto sat = enumerate_saturated_systems(l.poset_ptr(), kWide);
    t.equal(name + ": bijection cardinality", covers.size(), sat.size());
    for (const auto& r : sat) {
      const SaturatedCover c = system_to_cover(l, r);
      std::vector<oracle::Edge> inside;
      const Rel rel = oracle::rel_of(r);
      for (auto [x, y] : lattice_covers) {
        if ((rel[y] >> x) & 1u) inside.push_back({x, y});
      }
      t.expect(name + ": system restricted to covers", oracle::edges_of(c) == inside);
      t.expect(name + ": system -> cover -> system", cover_to_system(c) == r);
    }
  }
}

Rel push(const LatticeMap& f, const Rel& r) {
  const oracle::Order target = oracle::from_poset(f.target().poset());
  Rel q = oracle::identity(target);
  for (std::size_t y = 0; y < r.size(); ++y) {
    for (std::size_t x = 0; x < r.size(); ++x) {
      if ((r[y] >> x) & 1u) q[f(y)] |= oracle::Bits{1} << f(x);
    }
  }
  return oracle::closure(target, q);
}

bool preserves_meets(const LatticeMap& f) {
  const oracle::Order s = oracle::from_poset(f.source().poset());
  const oracle::Order d = oracle::from_poset(f.target().poset());
  for (std::size_t x = 0; x < s.n; ++x) {
    for (std::size_t y = 0; y < s.n; ++y) {
      if (f(*oracle::meet(s, x, y)) != *oracle::meet(d, f(x), f(y))) return false;
    }
  }
  return true;
}

void functoriality(Tally& t, const std::string&) {
  const CompositionCounterexample ex = composition_counterexample();
  const Rel r = oracle::rel_of(ex.system);
  const Rel stepwise = push(ex.g, push(ex.f, r));
  const Rel composite = push(compose(ex.g, ex.f), r);
  t.expect("counterexample: composite strictly inside stepwise", oracle::subset(composite, stepwise) && composite != stepwise);
  t.expect("counterexample: maps are not both meet-preserving", !preserves_meets(ex.f) || !preserves_meets(ex.g));
  const TransferSystem sample[] = {ex.system};
  const FunctorialityReport rep = check_functoriality(ex.f, ex.g, sample);
  t.expect("counterexample: library reports the discrepancy", rep.discrepancies == 1 && rep.first.has_value());
  if (rep.first) {
    t.expect("counterexample: library witness matches", oracle::rel_of(rep.first->composite) == composite &&
                                                            oracle::rel_of(rep.first->stepwise) == stepwise);
  }

  std::vector<Lattice> pool;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (auto& l : all_lattices(n)) pool.push_back(std::move(l));
  }
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t pairs = 0, attempts = 0;
  while (pairs < 200 && attempts < 1000000) {
    ++attempts;
    const Lattice& a = pool[pick(rng)];
    const Lattice& b = pool[pick(rng)];
    const Lattice& c = pool[pick(rng)];
    const LatticeMap f = random_monotone_map(a, b, rng);
    if (!preserves_meets(f)) continue;
    const LatticeMap g = random_monotone_map(b, c, rng);
    if (!preserves_meets(g)) continue;
    ++pairs;
    const LatticeMap gf = compose(g, f);
    const auto systems = enumerate_transfer_systems(a.poset_ptr(), kWide);
    bool equal = true;
    for (const auto& s : systems) {
      const Rel rel = oracle::rel_of(s);
      equal = equal && push(gf, rel) == push(g, push(f, rel));
      equal = equal && oracle::rel_of(pushforward(f, s)) == push(f, rel);
    }
    t.expect("pair " + std::to_string(pairs) + ": Tr(g o f) = Tr(g) o Tr(f)", equal);
    t.expect("pair " + std::to_string(pairs) + ": library agrees",
             check_functoriality(f, g, systems).holds());
  }
  t.equal("meet-preserving pairs sampled", pairs, 200u);
}

void oracle_equivalence(Tally& t, const std::string&) {
  std::vector<std::pair<std::string, Lattice>> lattices;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t k = 0;
    for (auto& l : all_lattices(n)) lattices.push_back({std::to_string(n) + "#" + std::to_string(k++), std::move(l)});
  }
  for (std::size_t m = 8; m <= 14; ++m) lattices.push_back({"[" + std::to_string(m) + "]", chain(m)});
  for (std::size_t n = 4; n <= 7; ++n) lattices.push_back({"[2]^{*" + std::to_string(n) + "}", fuse2(n)});
  lattices.push_back({"[1]^3", boolean_cube(3)});
  lattices.push_back({"[2]x[2]", rectangle(2, 2)});
  for (std::size_t m = 1; m <= 4; ++m) lattices.push_back({"[1]x[" + std::to_string(m) + "]", rectangle(1, m)});

  std::size_t systems_checked = 0, covers_checked = 0;
  for (const auto& [name, l] : lattices) {
    const oracle::Order o = oracle::from_poset(l.poset());
    if (oracle::strict_pairs(o).size() <= 12) {
      ++systems_checked;
      const auto naive = oracle::naive_transfer_systems(o);
      const auto fast = rel_set(enumerate_transfer_systems(l.poset_ptr(), kWide));
      t.expect(name + ": transfer systems agree", fast == std::set<Rel>(naive.begin(), naive.end()) &&
                                                      fast.size() == naive.size());
    }
    if (oracle::cover_edges(o).size() <= 14 && !oracle::has_pentagon(o)) {
      ++covers_checked;
      const auto naive = oracle::naive_saturated_covers(o);
      std::set<std::vector<oracle::Edge>> fast;
      for (const auto& c : enumerate_covers(l)) fast.insert(oracle::edges_of(c));
      t.expect(name + ": saturated covers agree", fast == std::set<std::vector<oracle::Edge>>(naive.begin(), naive.end()) &&
                                                      fast.size() == naive.size());
    }
  }
  t.equal("lattices checked for transfer systems", systems_checked, 25u);
  t.equal("lattices checked for covers", covers_checked, 84u);
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Tally&, const std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::string flags;
  for (int i = 1; i < argc; ++i) flags += std::string(argv[i]) + " ";

  const std::vector<Criterion> table = {
      {1, "Catalan chain counts", catalan_chains},
      {2, "rank-two theorem", rank_two},
      {3, "matchstick counts", matchstick_counts},
      {4, "interior-operator sequence", a102896},
      {5, "fiber decomposition", fibers},
      {6, "fusion recursion", fusion_recursion},
      {7, "B/M/T structure", bmt},
      {8, "bijection round-trips", round_trips},
      {9, "functoriality", functoriality},
      {10, "oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (const auto& c : table) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(t, flags);
    } catch (const std::exception& e) {
      t.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-28s %s  (%s, %.1f s)\n", c.number, c.title, t.ok() ? "PASS" : "FAIL",
                t.summary().c_str(), secs);
    std::fflush(stdout);
    failed += !t.ok();
  }
  return failed == 0 ? 0 : 1;
}
