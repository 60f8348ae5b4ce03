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

#include "trsys/functorial.hpp"

#include <algorithm>
#include <numeric>

#include "trsys/error.hpp"

namespace trsys {

LatticeMap::LatticeMap(Lattice source, Lattice target, std::vector<Element> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
  const std::size_t n = source_.size();
  if (image_.size() != n) throw Error(ErrorCode::kInvalidArgument, "image has the wrong length");
  for (Element x : image_) {
    if (x >= target_.size()) throw Error(ErrorCode::kInvalidArgument, "image value out of range");
  }
  for (const auto& [x, y] : source_.covers()) {
    if (!target_.leq(image_[x], image_[y])) {
      throw Error(ErrorCode::kNotMonotone,
                  "f(" + source_.name(x) + ") is not below f(" + source_.name(y) + ")");
    }
  }
  meet_preserving_ = true;
  for (Element x = 0; x < n && meet_preserving_; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (image_[source_.meet(x, y)] != target_.meet(image_[x], image_[y])) {
        meet_preserving_ = false;
        break;
      }
    }
  }
}

LatticeMap LatticeMap::identity(const Lattice& p) {
  std::vector<Element> image(p.size());
  std::iota(image.begin(), image.end(), Element{0});
  return LatticeMap(p, p, std::move(image));
}

LatticeMap compose(const LatticeMap& g, const LatticeMap& f) {
  if (!f.target().poset().same_order(g.source().poset())) {
    throw Error(ErrorCode::kNotComposable, "target of f is not the source of g");
  }
  std::vector<Element> image(f.source().size());
  for (Element x = 0; x < image.size(); ++x) image[x] = g(f(x));
  return LatticeMap(f.source(), g.target(), std::move(image));
}

TransferSystem pushforward(const LatticeMap& f, const TransferSystem& r) {
  if (!r.poset().same_order(f.source().poset())) {
    throw Error(ErrorCode::kAmbientMismatch, "system does not live on the source of the map");
  }
  Relation q = Relation::identity(f.target().size());
  for (const auto& [x, y] : r.pairs()) q.set(f(x), f(y));
  return generate(f.target().poset_ptr(), q);
}

FunctorialityReport check_functoriality(const LatticeMap& f, const LatticeMap& g,
                                        std::span<const TransferSystem> sample) {
  const LatticeMap gf = compose(g, f);
  const bool expect_equal = f.meet_preserving() && g.meet_preserving();
  FunctorialityReport rep;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    TransferSystem composite = pushforward(gf, sample[i]);
    TransferSystem stepwise = pushforward(g, pushforward(f, sample[i]));
    ++rep.checked;
    if (!composite.refines(stepwise)) rep.composite_refines_stepwise = false;
    if (composite == stepwise) continue;
    check_invariant(!expect_equal, "pushforward along meet-preserving maps failed to compose");
    ++rep.discrepancies;
    if (!rep.first) rep.first = FunctorialityWitness{i, std::move(composite), std::move(stepwise)};
  }
  return rep;
}

TransferSystem product_split(const Lattice& p, const Lattice& q, const TransferSystem& r,
                             const TransferSystem& t) {
  if (!r.poset().same_order(p.poset()) || !t.poset().same_order(q.poset())) {
    throw Error(ErrorCode::kAmbientMismatch, "factor systems do not live on the given lattices");
  }
  const Lattice pq = product(p, q);
  const std::size_t nq = q.size();
  Relation rel(pq.size());
  for (const auto& [x, xp] : r.relation().pairs(true)) {
    for (const auto& [y, yp] : t.relation().pairs(true)) rel.set(x * nq + y, xp * nq + yp);
  }
  auto v = validate(pq.poset_ptr(), rel);
  if (auto* bad = std::get_if<Violation>(&v)) {
    invariant_failure("componentwise relation is not a transfer system: " + bad->describe(pq.poset()));
  }
  return std::get<TransferSystem>(std::move(v));
}

LatticeMap projection(const Lattice& p, const Lattice& q, int factor) {
  if (factor != 0 && factor != 1) throw Error(ErrorCode::kInvalidArgument, "factor must be 0 or 1");
  const Lattice pq = product(p, q);
  std::vector<Element> image(pq.size());
  for (Element x = 0; x < pq.size(); ++x) image[x] = factor == 0 ? x / q.size() : x % q.size();
  return LatticeMap(pq, factor == 0 ? p : q, std::move(image));
}

std::pair<TransferSystem, TransferSystem> product_factors(const Lattice& p, const Lattice& q,
                                                          const TransferSystem& s) {
  return {pushforward(projection(p, q, 0), s), pushforward(projection(p, q, 1), s)};
}

LatticeMap random_monotone_map(const Lattice& source, const Lattice& target, std::mt19937_64& rng) {
  std::vector<Element> order(source.size());
  std::iota(order.begin(), order.end(), Element{0});
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return source.poset().height(a) < source.poset().height(b);
  });
  std::vector<Element> image(source.size());
  for (Element x : order) {
    Element floor = target.bottom();
    for_each_bit(source.poset().down(x) & ~bit(x), [&](Element y) { floor = target.join(floor, image[y]); });
    const auto choices = mask_elements(target.poset().up(floor));
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    image[x] = choices[pick(rng)];
  }
  return LatticeMap(source, target, std::move(image));
}

CompositionCounterexample composition_counterexample() {
  // Diamond: bottom < a, b < top.
  const std::vector<ElementPair> d_order{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  Lattice diamond = Lattice::from_order(4, d_order, {"0", "a", "b", "1"});
  // 0 < c < a, b < 1.
  const std::vector<ElementPair> m_order{{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}};
  Lattice middle = Lattice::from_order(5, m_order, {"0", "c", "a", "b", "1"});
  // l0 < l1 < l2 < a, b < 1.
  const std::vector<ElementPair> l_order{{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
  Lattice target = Lattice::from_order(6, l_order, {"l0", "l1", "l2", "a", "b", "1"});

  LatticeMap f(diamond, middle, {0, 2, 3, 4});
  LatticeMap g(middle, target, {0, 1, 3, 4, 5});
  const std::vector<ElementPair> gens{{0, 1}, {2, 3}};
  TransferSystem r = generate(diamond, gens);
  return {std::move(f), std::move(g), std::move(r)};
}

}  // namespace trsys
