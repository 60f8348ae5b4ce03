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

#include "trsys/characteristic.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "trsys/error.hpp"

namespace trsys {

MonotoneEndomap::MonotoneEndomap(PosetPtr p, std::vector<Element> image)
    : poset_(std::move(p)), image_(std::move(image)) {
  const std::size_t n = poset_->size();
  if (image_.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "image has the wrong length");
  }
  for (Element x = 0; x < n; ++x) {
    if (image_[x] >= n) throw Error(ErrorCode::kInvalidArgument, "image value out of range");
  }
  for (Element x = 0; x < n; ++x) {
    for_each_bit(poset_->up(x), [&](Element y) {
      if (!poset_->leq(image_[x], image_[y])) {
        throw Error(ErrorCode::kNotMonotone,
                    "f(" + poset_->name(x) + ") is not below f(" + poset_->name(y) + ")");
      }
    });
  }
}

bool MonotoneEndomap::pointwise_leq(const MonotoneEndomap& other) const {
  if (!poset_->same_order(other.poset())) {
    throw Error(ErrorCode::kAmbientMismatch, "maps act on different orders");
  }
  for (Element x = 0; x < image_.size(); ++x) {
    if (!poset_->leq(image_[x], other.image_[x])) return false;
  }
  return true;
}

bool MonotoneEndomap::is_idempotent() const noexcept {
  for (Element x = 0; x < image_.size(); ++x) {
    if (image_[image_[x]] != image_[x]) return false;
  }
  return true;
}

bool MonotoneEndomap::is_contractive() const noexcept {
  for (Element x = 0; x < image_.size(); ++x) {
    if (!poset_->leq(image_[x], x)) return false;
  }
  return true;
}

InteriorOperator::InteriorOperator(PosetPtr p, std::vector<Element> image)
    : MonotoneEndomap(std::move(p), std::move(image)) {
  if (!is_idempotent() || !is_contractive()) {
    throw Error(ErrorCode::kInvalidArgument, "map is not idempotent and contractive");
  }
}

Mask InteriorOperator::fixed_points() const noexcept {
  Mask out = 0;
  for (Element x = 0; x < image().size(); ++x) {
    if (image()[x] == x) out |= bit(x);
  }
  return out;
}

InteriorOperator chi(const TransferSystem& r) {
  const Poset& p = r.poset();
  if (!p.has_all_meets()) {
    throw Error(ErrorCode::kInvalidArgument, "characteristic function needs binary meets");
  }
  std::vector<Element> image(p.size());
  for (Element x = 0; x < p.size(); ++x) {
    Element acc = x;
    for_each_bit(r.downset(x), [&](Element y) { acc = *p.meet(acc, y); });
    check_invariant(r.relates(acc, x), "meet of an R-downset is not R-related to its element");
    image[x] = acc;
  }
  return InteriorOperator(r.poset_ptr(), std::move(image));
}

namespace {

constexpr std::size_t kExhaustiveFiber = 256;

std::vector<Element> decreasing_height(const Lattice& p) {
  std::vector<Element> order;
  for (Element x = 0; x < p.size(); ++x) {
    if (x != p.bottom()) order.push_back(x);
  }
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return p.poset().height(a) > p.poset().height(b);
  });
  return order;
}

// Calls emit(S) for every join-closed S containing the bottom.
template <typename Emit>
void for_each_interior_system(const Lattice& p, std::size_t max_elements, Emit&& emit) {
  if (p.size() > max_elements) {
    throw Error(ErrorCode::kSizeLimit, "interior-operator enumeration is limited to " +
                                           std::to_string(max_elements) + " elements");
  }
  const std::vector<Element> order = decreasing_height(p);
  auto recurse = [&](auto&& self, Mask chosen, Mask excluded, std::size_t next) -> void {
    while (next < order.size() && (has(chosen, order[next]) || has(excluded, order[next]))) ++next;
    if (next == order.size()) {
      emit(chosen);
      return;
    }
    const Element e = order[next];
    // Adding e to a join-closed set containing the bottom only needs e v s.
    Mask with = chosen;
    for_each_bit(chosen, [&](Element s) { with |= bit(p.join(e, s)); });
    if ((with & excluded) == 0) self(self, with, excluded, next + 1);
    self(self, chosen, excluded | bit(e), next + 1);
  };
  recurse(recurse, bit(p.bottom()), 0, 0);
}

}  // namespace

std::vector<Mask> interior_systems(const Lattice& p, std::size_t max_elements) {
  std::vector<Mask> out;
  for_each_interior_system(p, max_elements, [&](Mask s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_interior_operators(const Lattice& p, std::size_t max_elements) {
  std::uint64_t total = 0;
  for_each_interior_system(p, max_elements, [&](Mask) { ++total; });
  return total;
}

InteriorOperator operator_from_interior_system(const Lattice& p, Mask system) {
  std::vector<Element> image(p.size());
  for (Element x = 0; x < p.size(); ++x) image[x] = p.join_all(system & p.poset().down(x));
  return InteriorOperator(p.poset_ptr(), std::move(image));
}

std::vector<InteriorOperator> enumerate_interior_operators(const Lattice& p,
                                                           std::size_t max_elements) {
  std::vector<InteriorOperator> out;
  for_each_interior_system(p, max_elements,
                           [&](Mask s) { out.push_back(operator_from_interior_system(p, s)); });
  std::sort(out.begin(), out.end());
  return out;
}

ChiImageReport chi_image_check(const Lattice& p, const EnumerationOptions& opts) {
  const auto systems = enumerate_transfer_systems(p.poset_ptr(), opts);
  std::set<std::vector<Element>> image;
  for (const auto& r : systems) image.insert(chi(r).image());
  std::set<std::vector<Element>> ops;
  for (const auto& f : enumerate_interior_operators(p)) ops.insert(f.image());
  return {image == ops, image.size(), ops.size()};
}

TransferSystem fiber_least(const InteriorOperator& f) {
  Relation q = Relation::identity(f.poset().size());
  for (Element y = 0; y < f.poset().size(); ++y) q.set(f(y), y);
  return generate(f.poset_ptr(), q);
}

std::vector<ChiFiber> fiber_decomposition(const Lattice& p, const TrLattice& tr) {
  std::map<std::vector<Element>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < tr.size(); ++i) groups[chi(tr[i]).image()].push_back(i);

  std::vector<ChiFiber> fibers;
  for (const auto& [image, idx] : groups) {
    InteriorOperator f(p.poset_ptr(), image);
    std::vector<TransferSystem> members;
    for (std::size_t i : idx) members.push_back(tr[i]);

    // Exhaustive for small fibers. Larger ones pair every member with a
    // strided subset; closure also follows from the interval check below.
    const std::size_t k = members.size();
    const std::size_t stride = k <= kExhaustiveFiber ? 1 : k / 64 + 1;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; b += stride) {
        check_invariant(chi(meet(members[a], members[b])).image() == image,
                        "a chi-fiber is not closed under meets");
        check_invariant(chi(join(members[a], members[b])).image() == image,
                        "a chi-fiber is not closed under joins");
      }
    }
    const TransferSystem least = fiber_least(f);
    const TransferSystem greatest = saturated_hull(members.front());
    check_invariant(is_saturated(greatest), "saturated hull is not saturated");
    for (const auto& m : members) {
      check_invariant(saturated_hull(m) == greatest, "fiber maximum differs from a saturated hull");
      check_invariant(least.refines(m) && m.refines(greatest), "fiber member outside its bounds");
    }
    check_invariant(std::find(members.begin(), members.end(), least) != members.end(),
                    "generated fiber minimum is not in the fiber");
    check_invariant(std::find(members.begin(), members.end(), greatest) != members.end(),
                    "saturated hull is not in the fiber");
    std::size_t interval = 0;
    for (const auto& r : tr.systems()) {
      if (least.refines(r) && r.refines(greatest)) ++interval;
    }
    check_invariant(interval == members.size(), "chi-fiber is not an interval of Tr(P)");
    fibers.push_back({std::move(f), least, greatest, std::move(members)});
  }
  return fibers;
}

std::vector<ChiFiber> fiber_decomposition(const Lattice& p, const EnumerationOptions& opts) {
  return fiber_decomposition(p, enumerate_all(p, opts));
}

TransferSystem galois_F(const Lattice& p, Mask subset) {
  Relation q = Relation::identity(p.size());
  for_each_bit(subset & p.poset().all(), [&](Element x) { q.set(x, p.top()); });
  return generate(p.poset_ptr(), q);
}

Mask galois_G(const TransferSystem& r) {
  const auto top = r.poset().top();
  if (!top) throw Error(ErrorCode::kInvalidArgument, "ambient order has no top");
  return r.downset(*top);
}

bool is_moore_family(const Lattice& p, Mask subset) {
  if (!has(subset, p.top())) return false;
  for (Element x : mask_elements(subset)) {
    for (Element y : mask_elements(subset)) {
      if (!has(subset, p.meet(x, y))) return false;
    }
  }
  return true;
}

}  // namespace trsys
