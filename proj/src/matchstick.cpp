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

#include "trsys/matchstick.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>

#include "trsys/error.hpp"

namespace trsys {

namespace {

void require_modular(const Lattice& p) {
  if (!is_modular(p)) throw Error(ErrorCode::kNotModular, "lattice is not modular");
}

}  // namespace

CoverStructure::CoverStructure(const Lattice& p) : edges_(p.covers()), n_(p.size()) {
  require_modular(p);
  const std::size_t m = edges_.size();
  index_.assign(n_ * n_, m);
  for (std::size_t e = 0; e < m; ++e) index_[edges_[e].first * n_ + edges_[e].second] = e;

  // Direct rule (1) edges, then transitive closure by repeated union.
  std::vector<EdgeSet> direct(m, EdgeSet(m));
  for (std::size_t e = 0; e < m; ++e) {
    const auto [x, t] = edges_[e];
    direct[e].set(e);
    for (Element y = 0; y < n_; ++y) {
      if (p.join(x, y) != t || p.leq(x, y)) continue;
      const auto f = edge_index(p.meet(x, y), y);
      check_invariant(f.has_value(), "modular lattice lost a transposed cover");
      direct[e].set(*f);
    }
  }
  forced_ = direct;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t e = 0; e < m; ++e) {
      EdgeSet acc = forced_[e];
      for (auto f = forced_[e].find_first(); f != EdgeSet::npos; f = forced_[e].find_next(f)) {
        acc |= forced_[f];
      }
      if (acc != forced_[e]) {
        forced_[e] = std::move(acc);
        changed = true;
      }
    }
  }
  forcers_.assign(m, EdgeSet(m));
  for (std::size_t e = 0; e < m; ++e) {
    for (auto f = forced_[e].find_first(); f != EdgeSet::npos; f = forced_[e].find_next(f)) {
      forcers_[f].set(e);
    }
  }

  for (Element b = 0; b < n_; ++b) {
    const auto ups = mask_elements(p.poset().upper_covers(b));
    for (std::size_t i = 0; i < ups.size(); ++i) {
      for (std::size_t j = i + 1; j < ups.size(); ++j) {
        const Element l = ups[i];
        const Element r = ups[j];
        const Element t = p.join(l, r);
        if (!p.is_cover(l, t) || !p.is_cover(r, t)) continue;
        diamonds_.push_back({b, l, r, t,
                             {*edge_index(b, l), *edge_index(b, r), *edge_index(l, t),
                              *edge_index(r, t)}});
      }
    }
  }
}

std::optional<std::size_t> CoverStructure::edge_index(Element lower, Element upper) const {
  if (lower >= n_ || upper >= n_) return std::nullopt;
  const std::size_t e = index_[lower * n_ + upper];
  if (e == edges_.size()) return std::nullopt;
  return e;
}

SaturatedCover make_trusted_cover(PosetPtr p, EdgeSet bits) {
  return SaturatedCover(std::move(p), std::move(bits));
}

std::vector<ElementPair> SaturatedCover::edges() const {
  std::vector<ElementPair> out;
  const auto& all = poset_->covers();
  for (auto e = bits_.find_first(); e != EdgeSet::npos; e = bits_.find_next(e)) out.push_back(all[e]);
  return out;
}

bool SaturatedCover::contains(Element lower, Element upper) const {
  const auto& all = poset_->covers();
  const auto it = std::lower_bound(all.begin(), all.end(), ElementPair{lower, upper});
  return it != all.end() && *it == ElementPair{lower, upper} &&
         bits_.test(static_cast<std::size_t>(it - all.begin()));
}

std::string CoverViolation::describe(const Poset& p) const {
  auto edge = [&](const ElementPair& e) { return p.name(e.first) + " -> " + p.name(e.second); };
  switch (rule) {
    case Rule::kNotACover:
      return "not a covering edge: " + edge(witness.at(0));
    case Rule::kDiamond:
      return "rule (2): diamond has exactly three edges, missing " + edge(witness.at(3));
    case Rule::kRestriction:
      return "rule (1): " + edge(witness.at(0)) + " requires " + edge(witness.at(1));
  }
  return {};
}

namespace {

std::optional<CoverViolation> check_rules(const Lattice& p, const CoverStructure& cs,
                                          const EdgeSet& bits) {
  for (const auto& d : cs.diamonds()) {
    std::size_t inside = 0;
    for (std::size_t e : d.edges) inside += bits.test(e);
    if (inside != 3) continue;
    std::vector<ElementPair> w;
    std::size_t missing = 0;
    for (std::size_t e : d.edges) {
      if (bits.test(e)) w.push_back(cs.edges()[e]);
      else missing = e;
    }
    w.push_back(cs.edges()[missing]);
    return CoverViolation{CoverViolation::Rule::kDiamond, std::move(w)};
  }
  for (auto e = bits.find_first(); e != EdgeSet::npos; e = bits.find_next(e)) {
    const auto [x, t] = cs.edges()[e];
    for (Element y = 0; y < p.size(); ++y) {
      if (p.join(x, y) != t || p.leq(x, y)) continue;
      const Element m = p.meet(x, y);
      if (!bits.test(*cs.edge_index(m, y))) {
        return CoverViolation{CoverViolation::Rule::kRestriction, {{x, t}, {m, y}}};
      }
    }
  }
  return std::nullopt;
}

bool canonical_cover_less(const SaturatedCover& a, const SaturatedCover& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.edges() < b.edges();
}

// Include/exclude search with rule (1) closure and diamond propagation.
class CoverSearch {
 public:
  CoverSearch(const CoverStructure& cs) : cs_(cs), m_(cs.edge_count()) {}

  struct Node {
    EdgeSet in;
    EdgeSet out;
  };

  Node root() const { return {EdgeSet(m_), EdgeSet(m_)}; }

  // Applies forced consequences. Returns false on contradiction.
  bool propagate(Node& node) const {
    for (bool changed = true; changed;) {
      if (node.in.intersects(node.out)) return false;
      changed = false;
      for (const auto& d : cs_.diamonds()) {
        std::size_t in = 0, out = 0, open = m_;
        for (std::size_t e : d.edges) {
          if (node.in.test(e)) ++in;
          else if (node.out.test(e)) ++out;
          else open = e;
        }
        if (in == 3 && out == 1) return false;
        if (in == 3 && open != m_) {
          node.in |= cs_.forced(open);
          changed = true;
        } else if (in == 2 && out == 1 && open != m_) {
          node.out |= cs_.forcers(open);
          changed = true;
        }
      }
    }
    return true;
  }

  // Pushes children of an open node, or returns true if the node is a leaf.
  bool expand(Node node, std::vector<Node>& children) const {
    const EdgeSet decided = node.in | node.out;
    std::size_t e = 0;
    while (e < m_ && decided.test(e)) ++e;
    if (e == m_) return true;
    Node with = node;
    with.in |= cs_.forced(e);
    if (propagate(with)) children.push_back(std::move(with));
    node.out |= cs_.forcers(e);
    if (propagate(node)) children.push_back(std::move(node));
    return false;
  }

 private:
  const CoverStructure& cs_;
  std::size_t m_;
};

}  // namespace

CoverValidation validate_cover(const Lattice& p, std::span<const ElementPair> edges) {
  const CoverStructure cs(p);
  EdgeSet bits(cs.edge_count());
  for (const auto& [x, y] : edges) {
    const auto e = cs.edge_index(x, y);
    if (!e) return CoverViolation{CoverViolation::Rule::kNotACover, {{x, y}}};
    bits.set(*e);
  }
  if (auto v = check_rules(p, cs, bits)) return *v;
  return make_trusted_cover(p.poset_ptr(), std::move(bits));
}

std::vector<SaturatedCover> enumerate_covers(const Lattice& p, std::size_t jobs,
                                             std::size_t max_edges) {
  const CoverStructure cs(p);
  if (cs.edge_count() > max_edges) {
    throw Error(ErrorCode::kSizeLimit, "cover enumeration is limited to " +
                                           std::to_string(max_edges) + " covering edges");
  }
  const CoverSearch search(cs);
  using Node = CoverSearch::Node;

  auto run = [&](Node start, std::vector<EdgeSet>& leaves) {
    std::vector<Node> stack{std::move(start)};
    std::vector<Node> children;
    while (!stack.empty()) {
      Node node = std::move(stack.back());
      stack.pop_back();
      children.clear();
      EdgeSet in = node.in;
      if (search.expand(std::move(node), children)) leaves.push_back(std::move(in));
      for (auto& c : children) stack.push_back(std::move(c));
    }
  };

  std::vector<EdgeSet> leaves;
  Node start = search.root();
  if (search.propagate(start)) {
    if (jobs <= 1) {
      run(std::move(start), leaves);
    } else {
      std::deque<Node> frontier{std::move(start)};
      std::vector<Node> children;
      while (!frontier.empty() && frontier.size() < 8 * jobs) {
        Node node = std::move(frontier.front());
        frontier.pop_front();
        children.clear();
        EdgeSet in = node.in;
        if (search.expand(std::move(node), children)) leaves.push_back(std::move(in));
        for (auto& c : children) frontier.push_back(std::move(c));
      }
      std::vector<Node> tasks(std::make_move_iterator(frontier.begin()),
                              std::make_move_iterator(frontier.end()));
      std::vector<std::vector<EdgeSet>> results(tasks.size());
      std::atomic<std::size_t> cursor{0};
      auto worker = [&] {
        for (std::size_t i = cursor++; i < tasks.size(); i = cursor++) run(std::move(tasks[i]), results[i]);
      };
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < std::min(jobs, tasks.size()); ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      for (auto& r : results) {
        for (auto& b : r) leaves.push_back(std::move(b));
      }
    }
  }

  std::vector<SaturatedCover> out;
  out.reserve(leaves.size());
  for (auto& bits : leaves) {
    check_invariant(!check_rules(p, cs, bits).has_value(), "enumerated cover breaks a game rule");
    out.push_back(make_trusted_cover(p.poset_ptr(), std::move(bits)));
  }
  std::sort(out.begin(), out.end(), canonical_cover_less);
  return out;
}

TransferSystem cover_to_system(const SaturatedCover& q) {
  const auto& p = q.poset_ptr();
  Relation rel = Relation::identity(p->size());
  for (const auto& [x, y] : q.edges()) rel.set(x, y);
  TransferSystem r = generate(p, rel);
  check_invariant(is_saturated(r), "system generated by a saturated cover is not saturated");
  return r;
}

SaturatedCover system_to_cover(const Lattice& p, const TransferSystem& r) {
  if (!p.poset().same_order(r.poset())) {
    throw Error(ErrorCode::kAmbientMismatch, "system lives on a different order");
  }
  require_modular(p);
  if (!is_saturated(r)) throw Error(ErrorCode::kNotSaturated, "transfer system is not saturated");
  const auto& all = p.covers();
  EdgeSet bits(all.size());
  for (std::size_t e = 0; e < all.size(); ++e) {
    if (r.relates(all[e].first, all[e].second)) bits.set(e);
  }
  return make_trusted_cover(p.poset_ptr(), std::move(bits));
}

}  // namespace trsys
