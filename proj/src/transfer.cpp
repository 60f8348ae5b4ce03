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

#include "trsys/transfer.hpp"

#include <algorithm>
#include <numeric>


#include "search.hpp"
#include "trsys/error.hpp"

namespace trsys {

// Relation ------------------------------------------------------------------

Relation Relation::identity(std::size_t n) {
  Relation r(n);
  for (Element x = 0; x < n; ++x) r.set(x, x);
  return r;
}

Relation Relation::from_pairs(std::size_t n, std::span<const ElementPair> pairs) {
  Relation r(n);
  for (const auto& [x, y] : pairs) {
    if (x >= n || y >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "pair (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");
    }
    r.set(x, y);
  }
  return r;
}

Mask Relation::column_of(Element x) const noexcept {
  Mask out = 0;
  for (Element y = 0; y < size(); ++y) {
    if (has(down_[y], x)) out |= bit(y);
  }
  return out;
}

std::size_t Relation::count() const noexcept {
  std::size_t total = 0;
  for (Mask m : down_) total += static_cast<std::size_t>(std::popcount(m));
  return total;
}

std::vector<ElementPair> Relation::pairs(bool include_reflexive) const {
  std::vector<ElementPair> out;
  for (Element y = 0; y < size(); ++y) {
    for_each_bit(down_[y], [&](Element x) {
      if (include_reflexive || x != y) out.emplace_back(x, y);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Relation::subset_of(const Relation& other) const noexcept {
  for (std::size_t i = 0; i < down_.size(); ++i) {
    if ((down_[i] & ~other.down_[i]) != 0) return false;
  }
  return true;
}

bool Relation::intersects(const Relation& other) const noexcept {
  for (std::size_t i = 0; i < down_.size(); ++i) {
    if ((down_[i] & other.down_[i]) != 0) return true;
  }
  return false;
}

Relation& Relation::operator|=(const Relation& other) noexcept {
  for (std::size_t i = 0; i < down_.size(); ++i) down_[i] |= other.down_[i];
  return *this;
}

Relation& Relation::operator&=(const Relation& other) noexcept {
  for (std::size_t i = 0; i < down_.size(); ++i) down_[i] &= other.down_[i];
  return *this;
}

// TransferSystem --------------------------------------------------------------

TransferSystem make_trusted_system(PosetPtr poset, Relation rel) {
  return TransferSystem(std::move(poset), std::move(rel));
}

bool canonical_less(const TransferSystem& a, const TransferSystem& b) {
  const auto ca = a.pair_count();
  const auto cb = b.pair_count();
  if (ca != cb) return ca < cb;
  return a.pairs() < b.pairs();
}

std::string Violation::describe(const Poset& p) const {
  auto show = [&](const ElementPair& e) {
    return "(" + p.name(e.first) + "," + p.name(e.second) + ")";
  };
  switch (axiom) {
    case Axiom::kRefinement:
      return "pair " + show(witness.at(0)) + " is not in the order";
    case Axiom::kReflexivity:
      return "missing reflexive pair " + show(witness.at(0));
    case Axiom::kTransitivity:
      return "transitivity: " + show(witness.at(0)) + " and " + show(witness.at(1)) +
             " require " + show(witness.at(2));
    case Axiom::kRestriction:
      return "restriction: " + show(witness.at(0)) + " restricted along " +
             p.name(witness.at(1).second) + " requires " + show(witness.at(1));
  }
  return "unknown violation";
}

namespace {

void require_same_size(const Poset& p, const Relation& rel) {
  if (rel.size() != p.size()) {
    throw Error(ErrorCode::kInvalidArgument, "relation size does not match the poset");
  }
}

void require_same_ambient(const TransferSystem& a, const TransferSystem& b) {
  if (a.poset_ptr() != b.poset_ptr() && !a.poset().same_order(b.poset())) {
    throw Error(ErrorCode::kAmbientMismatch, "transfer systems live on different orders");
  }
}

// cols[x] = {y : x R y}
std::vector<Mask> columns(const Relation& rel) {
  std::vector<Mask> cols(rel.size(), 0);
  for (Element y = 0; y < rel.size(); ++y) {
    for_each_bit(rel.row(y), [&](Element x) { cols[x] |= bit(y); });
  }
  return cols;
}

// Adds the restrictions of the single pair x R z.
void add_restrictions_of(const Poset& p, Relation& rel, Element x, Element z) {
  for_each_bit(p.down(z), [&](Element y) {
    rel.row(y) |= p.maximal_lower_bounds(x, y);
  });
}

bool complete_two_of_three(const Poset& p, Relation& rel) {
  const auto cols = columns(rel);
  bool changed = false;
  for (Element z = 0; z < rel.size(); ++z) {
    Mask reach = 0;
    for_each_bit(rel.row(z), [&](Element x) { reach |= cols[x]; });
    // y with x R y for some x R z, and y <= z.
    for_each_bit(reach & p.down(z), [&](Element y) {
      if (!rel.test(y, z)) {
        rel.set(y, z);
        changed = true;
      }
    });
  }
  return changed;
}

Relation generate_relation(const Poset& p, Relation rel) {
  close_reflexive(p, rel);
  close_restriction(p, rel);
  close_transitive(rel);
  if (p.has_all_meets()) return rel;
  bool changed = true;
  while (changed) {
    changed = close_restriction(p, rel);
    changed = close_transitive(rel) || changed;
  }
  return rel;
}

std::vector<ElementPair> branching_order(const Poset& p) {
  auto pairs = p.strict_pairs();
  std::stable_sort(pairs.begin(), pairs.end(), [&](const ElementPair& a, const ElementPair& b) {
    const auto ga = p.height(a.second) - p.height(a.first);
    const auto gb = p.height(b.second) - p.height(b.first);
    return ga > gb;
  });
  return pairs;
}

void sort_canonical(std::vector<TransferSystem>& systems) {
  std::vector<std::pair<std::size_t, std::vector<ElementPair>>> keys;
  keys.reserve(systems.size());
  for (const auto& s : systems) keys.emplace_back(s.pair_count(), s.pairs());
  std::vector<std::size_t> idx(systems.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<TransferSystem> sorted;
  sorted.reserve(systems.size());
  for (std::size_t i : idx) sorted.push_back(std::move(systems[i]));
  systems = std::move(sorted);
}

}  // namespace

std::optional<Violation> find_violation(const Poset& p, const Relation& rel) {
  require_same_size(p, rel);
  const std::size_t n = p.size();
  for (Element y = 0; y < n; ++y) {
    const Mask bad = rel.row(y) & ~p.down(y);
    if (bad != 0) {
      return Violation{Axiom::kRefinement, {{static_cast<Element>(std::countr_zero(bad)), y}}};
    }
  }
  for (Element x = 0; x < n; ++x) {
    if (!rel.test(x, x)) return Violation{Axiom::kReflexivity, {{x, x}}};
  }
  for (Element z = 0; z < n; ++z) {
    for (Element x : mask_elements(rel.row(z))) {
      for (Element y : mask_elements(p.down(z))) {
        const Mask need = p.maximal_lower_bounds(x, y);
        const Mask missing = need & ~rel.row(y);
        if (missing != 0) {
          const auto w = static_cast<Element>(std::countr_zero(missing));
          return Violation{Axiom::kRestriction, {{x, z}, {w, y}}};
        }
      }
    }
  }
  for (Element z = 0; z < n; ++z) {
    for (Element y : mask_elements(rel.row(z))) {
      const Mask missing = rel.row(y) & ~rel.row(z);
      if (missing != 0) {
        const auto x = static_cast<Element>(std::countr_zero(missing));
        return Violation{Axiom::kTransitivity, {{x, y}, {y, z}, {x, z}}};
      }
    }
  }
  return std::nullopt;
}

Validation validate(const PosetPtr& p, const Relation& rel) {
  if (auto v = find_violation(*p, rel)) return *v;
  return make_trusted_system(p, rel);
}

bool close_reflexive(const Poset& p, Relation& rel) {
  require_same_size(p, rel);
  bool changed = false;
  for (Element x = 0; x < p.size(); ++x) {
    if (!rel.test(x, x)) {
      rel.set(x, x);
      changed = true;
    }
  }
  return changed;
}

bool close_restriction(const Poset& p, Relation& rel) {
  require_same_size(p, rel);
  const Relation before = rel;
  for (Element z = 0; z < p.size(); ++z) {
    for_each_bit(before.row(z) & ~bit(z), [&](Element x) { add_restrictions_of(p, rel, x, z); });
  }
  return rel != before;
}

bool close_transitive(Relation& rel) {
  const std::size_t n = rel.size();
  bool changed = false;
  for (Element k = 0; k < n; ++k) {
    const Mask via = rel.row(k);
    for (Element y = 0; y < n; ++y) {
      if (has(rel.row(y), k) && (via & ~rel.row(y)) != 0) {
        rel.row(y) |= via;
        changed = true;
      }
    }
  }
  return changed;
}

TransferSystem generate(const PosetPtr& p, const Relation& q) {
  require_same_size(*p, q);
  for (Element y = 0; y < p->size(); ++y) {
    if ((q.row(y) & ~p->down(y)) != 0) {
      throw Error(ErrorCode::kInvalidArgument, "generating relation does not refine the order");
    }
  }
  Relation rel = generate_relation(*p, q);
  if (auto v = find_violation(*p, rel)) {
    invariant_failure("generated relation is not a transfer system: " + v->describe(*p));
  }
  return make_trusted_system(p, std::move(rel));
}

TransferSystem generate(const Lattice& p, std::span<const ElementPair> q) {
  return generate(p.poset_ptr(), Relation::from_pairs(p.size(), q));
}

TransferSystem discrete_system(const PosetPtr& p) {
  return make_trusted_system(p, Relation::identity(p->size()));
}

TransferSystem complete_system(const PosetPtr& p) {
  Relation rel(p->size());
  for (Element y = 0; y < p->size(); ++y) rel.row(y) = p->down(y);
  return make_trusted_system(p, std::move(rel));
}

TransferSystem meet(const TransferSystem& a, const TransferSystem& b) {
  require_same_ambient(a, b);
  return make_trusted_system(a.poset_ptr(), a.relation() & b.relation());
}

TransferSystem join(const TransferSystem& a, const TransferSystem& b) {
  require_same_ambient(a, b);
  const Relation uni = a.relation() | b.relation();
  TransferSystem out = generate(a.poset_ptr(), uni);
  if (a.poset().has_all_meets()) {
    // Both inputs are restriction closed, so only transitivity can add pairs.
    Relation transitive = uni;
    close_transitive(transitive);
    check_invariant(transitive == out.relation(),
                    "join added pairs beyond the transitive closure of the union");
  }
  return out;
}

bool is_saturated(const TransferSystem& r) {
  Relation copy = r.relation();
  return !complete_two_of_three(r.poset(), copy);
}

TransferSystem saturated_hull(const TransferSystem& r) {
  Relation rel = r.relation();
  while (complete_two_of_three(r.poset(), rel)) {
    rel = generate_relation(r.poset(), std::move(rel));
  }
  return generate(r.poset_ptr(), rel);
}

Element minimal_fibrant(const TransferSystem& r) {
  const Poset& p = r.poset();
  if (!p.top()) throw Error(ErrorCode::kInvalidArgument, "minimal fibrant needs a top element");
  const Element top = *p.top();
  const Mask below = r.downset(top);
  Element acc = top;
  for_each_bit(below, [&](Element x) {
    const auto m = p.meet(acc, x);
    if (!m) throw Error(ErrorCode::kInvalidArgument, "minimal fibrant needs binary meets");
    acc = *m;
  });
  check_invariant(r.relates(acc, top), "meet of the downset of the top is not related to it");
  return acc;
}

TransferSystem restrict_to_subposet(const TransferSystem& r, Mask removed) {
  const Poset& p = r.poset();
  Mask extremes = 0;
  if (p.bottom()) extremes |= bit(*p.bottom());
  if (p.top()) extremes |= bit(*p.top());
  if ((removed & ~extremes) != 0) {
    throw Error(ErrorCode::kUnsupportedSubposet,
                "only the bottom and/or top may be removed from the ambient order");
  }
  std::vector<Element> old_index;
  auto sub = std::make_shared<const Poset>(p.induced(p.all() & ~removed, &old_index));
  Relation rel(sub->size());
  for (Element i = 0; i < sub->size(); ++i) {
    for (Element j = 0; j < sub->size(); ++j) {
      if (r.relates(old_index[i], old_index[j])) rel.set(i, j);
    }
  }
  if (auto v = find_violation(*sub, rel)) {
    invariant_failure("restriction to a deleted-extreme subposet broke an axiom: " +
                      v->describe(*sub));
  }
  return make_trusted_system(std::move(sub), std::move(rel));
}

TransferSystem extend_with_bottom(const PosetPtr& full, const TransferSystem& sub) {
  if (!full->bottom()) throw Error(ErrorCode::kInvalidArgument, "ambient order has no bottom");
  const Element bottom = *full->bottom();
  std::vector<Element> old_index;
  const Poset expected = full->induced(full->all() & ~bit(bottom), &old_index);
  if (!expected.same_order(sub.poset())) {
    throw Error(ErrorCode::kAmbientMismatch, "system does not live on the order minus its bottom");
  }
  Relation rel = Relation::identity(full->size());
  for (Element y = 0; y < full->size(); ++y) rel.set(bottom, y);
  for (const auto& [i, j] : sub.pairs()) rel.set(old_index[i], old_index[j]);
  if (auto v = find_violation(*full, rel)) {
    invariant_failure("extension by the bottom broke an axiom: " + v->describe(*full));
  }
  return make_trusted_system(full, std::move(rel));
}

std::vector<TransferSystem> enumerate_transfer_systems(const PosetPtr& p,
                                                       const EnumerationOptions& opts) {
  const std::size_t pairs = p->strict_pair_count();
  if (pairs > opts.max_pairs) {
    throw Error(ErrorCode::kSizeLimit, "order has " + std::to_string(pairs) +
                                           " strict pairs; the enumeration guard is " +
                                           std::to_string(opts.max_pairs));
  }
  const Poset& order = *p;
  const bool meets = order.has_all_meets();
  auto include = [&](const Relation& r, const ElementPair& e) {
    Relation next = r;
    next.set(e.first, e.second);
    if (!meets) return generate_relation(order, std::move(next));
    add_restrictions_of(order, next, e.first, e.second);
    close_transitive(next);
    return next;
  };
  auto found = detail::backtrack(Relation::identity(order.size()), branching_order(order), include,
                                 opts.jobs);
  std::vector<TransferSystem> out;
  out.reserve(found.size());
  for (auto& rel : found) out.push_back(make_trusted_system(p, std::move(rel)));
  sort_canonical(out);
  return out;
}

std::size_t count_transfer_systems(const PosetPtr& p, const EnumerationOptions& opts) {
  return enumerate_transfer_systems(p, opts).size();
}

std::vector<TransferSystem> enumerate_saturated_systems(const PosetPtr& p,
                                                        const EnumerationOptions& opts) {
  const Poset& order = *p;
  auto include = [&](const Relation& r, const ElementPair& e) {
    Relation next = r;
    next.set(e.first, e.second);
    next = generate_relation(order, std::move(next));
    while (complete_two_of_three(order, next)) next = generate_relation(order, std::move(next));
    return next;
  };
  auto found = detail::backtrack(Relation::identity(order.size()), branching_order(order), include,
                                 opts.jobs);
  std::vector<TransferSystem> out;
  out.reserve(found.size());
  for (auto& rel : found) out.push_back(make_trusted_system(p, std::move(rel)));
  sort_canonical(out);
  return out;
}

// TrLattice -----------------------------------------------------------------

TrLattice::TrLattice(std::vector<TransferSystem> systems) : systems_(std::move(systems)) {
  if (systems_.empty()) throw Error(ErrorCode::kInvalidArgument, "Tr(P) is never empty");
  for (const auto& s : systems_) require_same_ambient(systems_.front(), s);
  sort_canonical(systems_);
  systems_.erase(std::unique(systems_.begin(), systems_.end()), systems_.end());
  const std::size_t n = systems_.size();
  for (std::size_t i = 0; i < n; ++i) index_.emplace(systems_[i].relation(), i);

  // Every system above R contains <R + e> for some e outside R, so the upper
  // covers of R are the minimal systems among those.
  const PosetPtr& order = systems_.front().poset_ptr();
  const auto strict = order->strict_pairs();
  std::vector<bool> has_lower(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> candidates;
    for (const auto& [x, y] : strict) {
      if (systems_[i].relates(x, y)) continue;
      Relation grown = systems_[i].relation();
      grown.set(x, y);
      const auto it = index_.find(generate(order, grown).relation());
      check_invariant(it != index_.end(), "TrLattice was given a proper subset of Tr(P)");
      candidates.push_back(it->second);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::size_t j : candidates) {
      const bool minimal = std::none_of(candidates.begin(), candidates.end(),
                                        [&](std::size_t k) { return k != j && leq(k, j); });
      if (minimal) {
        covers_.emplace_back(i, j);
        has_lower[j] = true;
      }
    }
    if (candidates.empty()) top_ = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_lower[i]) bottom_ = i;
  }
}

std::optional<std::size_t> TrLattice::index_of(const TransferSystem& r) const {
  if (!r.poset().same_order(systems_.front().poset())) return std::nullopt;
  auto it = index_.find(r.relation());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> TrLattice::meet(std::size_t i, std::size_t j) const {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < size(); ++k) {
    if (leq(k, i) && leq(k, j) && (!best || leq(*best, k))) best = k;
  }
  if (best) {
    for (std::size_t k = 0; k < size(); ++k) {
      if (leq(k, i) && leq(k, j) && !leq(k, *best)) return std::nullopt;
    }
  }
  return best;
}

std::optional<std::size_t> TrLattice::join(std::size_t i, std::size_t j) const {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < size(); ++k) {
    if (leq(i, k) && leq(j, k) && (!best || leq(k, *best))) best = k;
  }
  if (best) {
    for (std::size_t k = 0; k < size(); ++k) {
      if (leq(i, k) && leq(j, k) && !leq(*best, k)) return std::nullopt;
    }
  }
  return best;
}

Poset TrLattice::as_poset() const {
  if (size() > kMaxElements) {
    throw Error(ErrorCode::kSizeLimit, "Tr(P) has more than 64 systems");
  }
  std::vector<Mask> down(size(), 0);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (leq(i, j)) down[j] |= bit(i);
    }
  }
  return Poset(std::move(down));
}

TrLattice enumerate_all(const PosetPtr& p, const EnumerationOptions& opts) {
  return TrLattice(enumerate_transfer_systems(p, opts));
}

}  // namespace trsys
