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

#include "trsys/verify.hpp"

#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "trsys/characteristic.hpp"
#include "trsys/error.hpp"
#include "trsys/functorial.hpp"
#include "trsys/fusion.hpp"
#include "trsys/matchstick.hpp"
#include "trsys/transfer.hpp"

namespace trsys {

namespace {

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  template <typename A, typename B>
  void equal(const std::string& what, const A& actual, const B& expected) {
    std::ostringstream os;
    const bool ok = actual == expected;
    os << (ok ? "ok   " : "FAIL ") << what << " = " << actual << " (expected " << expected << ")";
    push(ok, os.str());
  }
  void expect(const std::string& what, bool ok) { push(ok, std::string(ok ? "ok   " : "FAIL ") + what); }

  CheckResult take() { return std::move(result_); }

 private:
  void push(bool ok, std::string line) {
    result_.passed = result_.passed && ok;
    result_.lines.push_back(std::move(line));
  }
  CheckResult result_;
};

EnumerationOptions enum_opts(const VerifyOptions& o, std::size_t max_pairs = 26) {
  EnumerationOptions e;
  e.jobs = o.jobs;
  e.max_pairs = max_pairs;
  return e;
}

std::string fuse_name(std::size_t n) { return "[2]^{*" + std::to_string(n) + "}"; }

CheckResult check_catalan(const VerifyOptions& o) {
  Recorder rec("catalan");
  const std::size_t max = o.max.value_or(5);
  for (std::size_t n = 0; n <= max; ++n) {
    rec.equal("|Tr([" + std::to_string(n) + "])|",
              BigCount(count_transfer_systems(chain(n).poset_ptr(), enum_opts(o))), catalan(n + 1));
  }
  return rec.take();
}

CheckResult check_rank_two(const VerifyOptions& o) {
  Recorder rec("rank-two");
  const std::size_t max = o.max.value_or(5);
  for (std::size_t n = 1; n <= max; ++n) {
    const Lattice lat = iterated_fusion(chain(2), n);
    rec.equal("|Tr(" + fuse_name(n) + ")|", count_transfer_systems(lat.poset_ptr(), enum_opts(o)),
              (std::size_t{1} << (n + 1)) + n);
  }
  for (std::uint64_t p : {2, 3, 5}) {
    const auto counted = BigCount(count_transfer_systems(sub_cp_cp(p).poset_ptr(), enum_opts(o)));
    rec.equal("|Tr(C" + std::to_string(p) + " x C" + std::to_string(p) + ")| by enumeration", counted,
              tr_rank_two(p));
  }
  return rec.take();
}

CheckResult check_a102896(const VerifyOptions& o) {
  Recorder rec("a102896");
  static const std::uint64_t kKnown[] = {1, 2, 7, 61, 2480, 1385552};
  const std::size_t max = o.max.value_or(4);
  if (max > 5) throw Error(ErrorCode::kSizeLimit, "interior operators are counted up to the 5-cube");
  for (std::size_t n = 0; n <= max; ++n) {
    rec.equal("|End([1]^" + std::to_string(n) + ")|", count_interior_operators(boolean_cube(n)), kKnown[n]);
  }
  return rec.take();
}

CheckResult check_matchstick(const VerifyOptions& o) {
  Recorder rec("matchstick");
  rec.equal("saturated covers of [1]^3", enumerate_covers(boolean_cube(3), o.jobs).size(), 61u);
  rec.equal("saturated covers of " + fuse_name(3), enumerate_covers(iterated_fusion(chain(2), 3), o.jobs).size(),
            12u);
  for (const auto& [name, lat] : modular_family()) {
    const std::size_t covers = enumerate_covers(lat, o.jobs).size();
    const std::size_t saturated = enumerate_saturated_systems(lat.poset_ptr(), enum_opts(o)).size();
    const std::size_t ops = count_interior_operators(lat);
    rec.expect(name + ": covers " + std::to_string(covers) + ", saturated systems " +
                   std::to_string(saturated) + ", interior operators " + std::to_string(ops),
               covers == saturated && saturated == ops);
  }
  return rec.take();
}

CheckResult check_fibers(const VerifyOptions& o) {
  Recorder rec("fibers");
  for (const auto& [name, lat] : fiber_family()) {
    const auto fibers = fiber_decomposition(lat, enum_opts(o, 64));
    rec.equal(name + ": chi-fibers", fibers.size(), count_interior_operators(lat));
  }
  return rec.take();
}

CheckResult check_fusion(const VerifyOptions& o) {
  Recorder rec("fusion");
  const std::vector<std::pair<std::string, Lattice>> pool{{"[1]", chain(1)},
                                                          {"[2]", chain(2)},
                                                          {"[3]", chain(3)},
                                                          {fuse_name(2), iterated_fusion(chain(2), 2)},
                                                          {"[1]^2", boolean_cube(2)}};
  for (const auto& [pn, p] : pool) {
    for (const auto& [qn, q] : pool) {
      const auto brute = BigCount(count_transfer_systems(fusion(p, q).poset_ptr(), enum_opts(o)));
      rec.equal("recursion for " + pn + "*" + qn, count_tr_fusion(p, q, enum_opts(o)).total, brute);
    }
  }
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t n = 0; n <= 4; ++n) {
      rec.equal("closed form for [" + std::to_string(m) + "]*[" + std::to_string(n) + "]",
                count_tr_chain_fusion(m, n), count_tr_fusion(chain(m), chain(n), enum_opts(o)).total);
    }
  }
  rec.equal("|Tr([2]*[3])|", count_tr_chain_fusion(2, 3), BigCount(26));
  return rec.take();
}

CheckResult check_bmt(const VerifyOptions& o) {
  Recorder rec("bmt");
  for (std::size_t n : {3, 4}) {
    const auto d = bmt_decompose(n, enum_opts(o));
    rec.expect(fuse_name(n) + ": blocks " + std::to_string(d.bottom_cube.size()) + " + " +
                   std::to_string(d.middle.size()) + " + " + std::to_string(d.top_cube.size()) +
                   ", cross covers as described",
               d.bottom_cube.size() == (std::size_t{1} << n) && d.middle.size() == n &&
                   d.top_cube.size() == (std::size_t{1} << n));
  }
  const auto tr = enumerate_all(iterated_fusion(chain(2), 3), enum_opts(o));
  rec.expect("Tr(" + fuse_name(3) + ") is isomorphic to the 19-point block model",
             is_isomorphic(tr.as_poset(), rank_two_model(3)));
  for (std::size_t n : {1, 2, 3}) {
    const auto rep = chi_structure_rank_two(n, enum_opts(o));
    rec.equal(fuse_name(n) + ": chi-fibers", rep.fiber_count, (std::size_t{1} << n) + n + 1);
  }
  return rec.take();
}

CheckResult check_roundtrip(const VerifyOptions& o) {
  Recorder rec("roundtrip");
  for (const auto& [name, lat] : modular_family()) {
    std::size_t bad = 0;
    const auto covers = enumerate_covers(lat, o.jobs);
    for (const auto& q : covers) bad += !(system_to_cover(lat, cover_to_system(q)) == q);
    const auto systems = enumerate_saturated_systems(lat.poset_ptr(), enum_opts(o));
    for (const auto& r : systems) bad += !(cover_to_system(system_to_cover(lat, r)) == r);
    rec.expect(name + ": " + std::to_string(covers.size() + systems.size()) + " round trips", bad == 0);
  }
  return rec.take();
}

CheckResult check_functoriality(const VerifyOptions& o) {
  Recorder rec("functoriality");
  const auto ex = composition_counterexample();
  const auto single = std::vector<TransferSystem>{ex.system};
  const auto rep = check_functoriality(ex.f, ex.g, single);
  rec.expect("non-meet-preserving pair gives a strict containment",
             rep.discrepancies == 1 && rep.composite_refines_stepwise);

  std::vector<Lattice> pool;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (auto& l : all_lattices(n)) pool.push_back(std::move(l));
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t pairs = 0, attempts = 0, failures = 0;
  std::map<std::size_t, std::vector<TransferSystem>> samples;
  while (pairs < o.samples && attempts < 1000 * o.samples) {
    ++attempts;
    const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
    const LatticeMap f = random_monotone_map(pool[a], pool[b], rng);
    if (!f.meet_preserving()) continue;
    const LatticeMap g = random_monotone_map(pool[b], pool[c], rng);
    if (!g.meet_preserving()) continue;
    auto it = samples.find(a);
    if (it == samples.end()) {
      it = samples.emplace(a, enumerate_transfer_systems(pool[a].poset_ptr(), enum_opts(o))).first;
    }
    try {
      failures += !check_functoriality(f, g, it->second).holds();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvariantViolation) throw;
      ++failures;
    }
    ++pairs;
  }
  rec.equal("sampled meet-preserving pairs", pairs, o.samples);
  rec.equal("pairs where pushforward fails to compose", failures, 0u);
  return rec.take();
}

// Subset filters built on the axiom checker, independent of the searches.
std::set<Relation> naive_transfer_systems(const Lattice& lat) {
  const auto strict = lat.poset().strict_pairs();
  std::set<Relation> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << strict.size()); ++s) {
    Relation rel = Relation::identity(lat.size());
    for (std::size_t k = 0; k < strict.size(); ++k) {
      if ((s >> k) & 1u) rel.set(strict[k].first, strict[k].second);
    }
    if (!find_violation(lat.poset(), rel)) out.insert(rel);
  }
  return out;
}

bool naive_cover_rules(const Lattice& lat, const std::vector<std::vector<bool>>& in) {
  const std::size_t n = lat.size();
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const Element j = lat.join(x, y), m = lat.meet(x, y);
      if (lat.is_cover(x, j) && in[x][j] && !in[m][y]) return false;
      if (x < y && lat.is_cover(m, x) && lat.is_cover(m, y) && lat.is_cover(x, j) && lat.is_cover(y, j)) {
        if (in[m][x] + in[m][y] + in[x][j] + in[y][j] == 3) return false;
      }
    }
  }
  return true;
}

std::set<std::vector<ElementPair>> naive_covers(const Lattice& lat) {
  const auto& edges = lat.covers();
  std::set<std::vector<ElementPair>> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << edges.size()); ++s) {
    std::vector<std::vector<bool>> in(lat.size(), std::vector<bool>(lat.size(), false));
    std::vector<ElementPair> chosen;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if ((s >> k) & 1u) {
        in[edges[k].first][edges[k].second] = true;
        chosen.push_back(edges[k]);
      }
    }
    if (naive_cover_rules(lat, in)) out.insert(std::move(chosen));
  }
  return out;
}

CheckResult check_oracle(const VerifyOptions& o) {
  Recorder rec("oracle");
  std::vector<std::pair<std::string, Lattice>> lattices;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::size_t k = 0;
    for (auto& l : all_lattices(n)) {
      lattices.push_back({"lattice " + std::to_string(n) + "." + std::to_string(k++), std::move(l)});
    }
  }
  for (auto& entry : modular_family()) lattices.push_back(std::move(entry));

  std::size_t tr_lattices = 0, tr_mismatch = 0, cov_lattices = 0, cov_mismatch = 0;
  for (const auto& [name, lat] : lattices) {
    if (lat.poset().strict_pair_count() <= 12) {
      ++tr_lattices;
      std::set<Relation> fast;
      for (const auto& r : enumerate_transfer_systems(lat.poset_ptr(), enum_opts(o))) fast.insert(r.relation());
      tr_mismatch += fast != naive_transfer_systems(lat);
    }
    if (lat.covers().size() <= 14 && is_modular(lat)) {
      ++cov_lattices;
      std::set<std::vector<ElementPair>> fast;
      for (const auto& q : enumerate_covers(lat, o.jobs)) fast.insert(q.edges());
      cov_mismatch += fast != naive_covers(lat);
    }
  }
  rec.expect("transfer systems agree with the subset filter on " + std::to_string(tr_lattices) + " lattices",
             tr_mismatch == 0);
  rec.expect("saturated covers agree with the subset filter on " + std::to_string(cov_lattices) +
                 " modular lattices",
             cov_mismatch == 0);
  return rec.take();
}

using CheckFn = CheckResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r{
      {"catalan", check_catalan},       {"rank-two", check_rank_two},
      {"matchstick", check_matchstick}, {"a102896", check_a102896},
      {"fibers", check_fibers},         {"fusion", check_fusion},
      {"bmt", check_bmt},               {"roundtrip", check_roundtrip},
      {"functoriality", check_functoriality}, {"oracle", check_oracle}};
  return r;
}

}  // namespace

const std::vector<std::string>& verify_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

CheckResult run_check(const std::string& name, const VerifyOptions& opts) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn(opts);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown check \"" + name + "\"");
}

std::vector<std::pair<std::string, Lattice>> modular_family() {
  std::vector<std::pair<std::string, Lattice>> out;
  for (std::size_t n = 0; n <= 6; ++n) out.push_back({"[" + std::to_string(n) + "]", chain(n)});
  for (std::size_t k = 2; k <= 4; ++k) out.push_back({"[1]^" + std::to_string(k), boolean_cube(k)});
  for (std::size_t n = 2; n <= 5; ++n) out.push_back({fuse_name(n), iterated_fusion(chain(2), n)});
  out.push_back({"[2]x[3]", rectangle(2, 3)});
  return out;
}

std::vector<std::pair<std::string, Lattice>> fiber_family() {
  std::vector<std::pair<std::string, Lattice>> out;
  for (auto& entry : modular_family()) {
    if (entry.first != "[1]^4") out.push_back(std::move(entry));
  }
  out.push_back({"[3]*[2]", fusion(chain(3), chain(2))});
  return out;
}

Poset rank_two_model(std::size_t n) {
  const std::size_t cube = std::size_t{1} << n;
  const std::size_t size = 2 * cube + n;
  if (n == 0 || size > kMaxElements) {
    throw Error(ErrorCode::kSizeLimit, "block model is built for 1 <= n <= 4");
  }
  auto b = [&](std::size_t s) { return s; };
  auto m = [&](std::size_t a) { return cube + a; };
  auto t = [&](std::size_t s) { return cube + n + s; };
  std::vector<ElementPair> covers;
  std::vector<std::string> names(size);
  for (std::size_t s = 0; s < cube; ++s) {
    names[b(s)] = "B" + std::to_string(s);
    names[t(s)] = "T" + std::to_string(s);
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t bit_a = std::size_t{1} << a;
      if (s & bit_a) continue;
      covers.push_back({b(s), b(s | bit_a)});
      covers.push_back({t(s), t(s | bit_a)});
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    names[m(a)] = "M" + std::to_string(a);
    covers.push_back({b((cube - 1) & ~(std::size_t{1} << a)), m(a)});
    covers.push_back({m(a), t(std::size_t{1} << a)});
  }
  covers.push_back({b(cube - 1), t(0)});
  return Poset::from_pairs(size, covers, std::move(names));
}

}  // namespace trsys
