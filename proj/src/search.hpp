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

// Include/exclude backtracking over a fixed list of decisions, shared by
// the transfer-system and saturated-system enumerators.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <deque>
#include <thread>
#include <utility>
#include <vector>

#include "trsys/transfer.hpp"

namespace trsys::detail {

// Every leaf is a closed relation in which each decision pair is either
// present or explicitly excluded, so distinct leaves are distinct closed
// relations and every closed relation is reached exactly once.
//
// `include(r, e)` returns the closure of r with e added. A branch dies as
// soon as the closure contains an excluded pair.
template <typename Include>
std::vector<Relation> backtrack(Relation start, const std::vector<ElementPair>& decisions,
                                Include include, std::size_t jobs) {
  struct Node {
    Relation rel;
    Relation excluded;
    std::size_t next;
  };
  auto settle = [&](Node& node) {
    while (node.next < decisions.size()) {
      const auto& [x, y] = decisions[node.next];
      if (!node.rel.test(x, y) && !node.excluded.test(x, y)) return true;
      ++node.next;
    }
    return false;
  };
  // Returns the children of an open node; a settled leaf yields none and is
  // written to `leaves`.
  auto expand = [&](Node node, std::vector<Node>& children, std::vector<Relation>& leaves) {
    if (!settle(node)) {
      leaves.push_back(std::move(node.rel));
      return;
    }
    const ElementPair e = decisions[node.next];
    Relation with = include(node.rel, e);
    if (!with.intersects(node.excluded)) children.push_back({std::move(with), node.excluded, node.next + 1});
    node.excluded.set(e.first, e.second);
    ++node.next;
    children.push_back(std::move(node));
  };
  auto run = [&](Node root, std::vector<Relation>& leaves) {
    std::vector<Node> stack{std::move(root)};
    std::vector<Node> children;
    while (!stack.empty()) {
      Node node = std::move(stack.back());
      stack.pop_back();
      children.clear();
      expand(std::move(node), children, leaves);
      // Exclude branch is pushed last, include branch explored second.
      for (auto& c : children) stack.push_back(std::move(c));
    }
  };

  const std::size_t n = start.size();
  Node root{std::move(start), Relation(n), 0};
  std::vector<Relation> leaves;
  if (jobs <= 1) {
    run(std::move(root), leaves);
    return leaves;
  }

  // Breadth-first split until there is enough work to share.
  std::deque<Node> frontier{std::move(root)};
  std::vector<Node> children;
  while (!frontier.empty() && frontier.size() < 8 * jobs) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    children.clear();
    expand(std::move(node), children, leaves);
    for (auto& c : children) frontier.push_back(std::move(c));
  }
  std::vector<Node> tasks(std::make_move_iterator(frontier.begin()),
                          std::make_move_iterator(frontier.end()));
  std::vector<std::vector<Relation>> results(tasks.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < tasks.size(); i = cursor++) run(std::move(tasks[i]), results[i]);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, tasks.size()); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& r : results) {
    for (auto& rel : r) leaves.push_back(std::move(rel));
  }
  return leaves;
}

}  // namespace trsys::detail
