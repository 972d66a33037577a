// Copyright 2026 The unibandit Authors.
//
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

#include "unibandit/graph.h"

#include <algorithm>
#include <deque>
#include <iterator>
#include <stdexcept>

namespace unibandit {
namespace {

void check_arm(std::size_t arm_count, ArmId arm) {
  if (arm < 1 || arm > arm_count) {
    throw std::out_of_range("arm id " + std::to_string(arm) +
                            " outside 1.." + std::to_string(arm_count));
  }
}

bool connected_acyclic(const std::vector<std::vector<ArmId>>& adjacency,
                       std::size_t edge_count) {
  const std::size_t n = adjacency.size();
  if (edge_count + 1 != n) return false;
  std::vector<bool> seen(n, false);
  std::vector<ArmId> stack{1};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const ArmId u = stack.back();
    stack.pop_back();
    for (ArmId v : adjacency[u - 1]) {
      if (!seen[v - 1]) {
        seen[v - 1] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

}  // namespace

const char* kind_name(UnimodalGraph::Kind kind) {
  switch (kind) {
    case UnimodalGraph::Kind::kPath:
      return "path";
    case UnimodalGraph::Kind::kTree:
      return "tree";
    case UnimodalGraph::Kind::kGeneral:
      return "general";
  }
  return "unknown";
}

UnimodalGraph UnimodalGraph::path(std::size_t arm_count) {
  if (arm_count == 0) throw std::invalid_argument("graph needs at least one arm");
  std::vector<std::vector<ArmId>> adjacency(arm_count);
  for (ArmId a = 1; a < arm_count; ++a) {
    adjacency[a - 1].push_back(a + 1);
    adjacency[a].push_back(a);
  }
  return UnimodalGraph(std::move(adjacency), Kind::kPath);
}

UnimodalGraph UnimodalGraph::from_edges(
    std::size_t arm_count, std::span<const std::pair<ArmId, ArmId>> edges,
    Kind kind) {
  if (arm_count == 0) throw std::invalid_argument("graph needs at least one arm");
  std::vector<std::vector<ArmId>> adjacency(arm_count);
  for (const auto& [u, v] : edges) {
    check_arm(arm_count, u);
    check_arm(arm_count, v);
    if (u == v) {
      throw std::invalid_argument("self-loop on arm " + std::to_string(u));
    }
    auto& row = adjacency[u - 1];
    if (std::find(row.begin(), row.end(), v) != row.end()) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ")");
    }
    row.push_back(v);
    adjacency[v - 1].push_back(u);
  }
  for (auto& row : adjacency) std::sort(row.begin(), row.end());

  if (kind == Kind::kPath) {
    bool ok = edges.size() + 1 == arm_count;
    for (const auto& [u, v] : edges) {
      ok = ok && (u + 1 == v || v + 1 == u);
    }
    if (!ok) throw std::invalid_argument("path graph needs exactly edges (i, i+1)");
  } else if (kind == Kind::kTree && !connected_acyclic(adjacency, edges.size())) {
    throw std::invalid_argument("tree graph must be connected and acyclic");
  }
  return UnimodalGraph(std::move(adjacency), kind);
}

const std::vector<ArmId>& UnimodalGraph::neighbors(ArmId arm) const {
  check_arm(arm_count(), arm);
  return adjacency_[arm - 1];
}

bool UnimodalGraph::has_edge(ArmId u, ArmId v) const {
  const auto& row = neighbors(u);
  check_arm(arm_count(), v);
  return std::binary_search(row.begin(), row.end(), v);
}

std::size_t UnimodalGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& row : adjacency_) d = std::max(d, row.size());
  return d;
}

std::vector<std::pair<ArmId, ArmId>> UnimodalGraph::edges() const {
  std::vector<std::pair<ArmId, ArmId>> out;
  for (ArmId u = 1; u <= arm_count(); ++u) {
    for (ArmId v : adjacency_[u - 1]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::optional<UnimodalityViolation> validate_unimodal(
    const UnimodalGraph& graph, std::span<const double> means) {
  const std::size_t n = graph.arm_count();
  if (means.size() != n) {
    throw std::invalid_argument("means length " + std::to_string(means.size()) +
                                " does not match " + std::to_string(n) + " arms");
  }
  const auto best_it = std::max_element(means.begin(), means.end());
  const ArmId best = static_cast<ArmId>(best_it - means.begin()) + 1;
  if (std::count(means.begin(), means.end(), *best_it) > 1) {
    return UnimodalityViolation{std::nullopt, "duplicate maximum"};
  }

  // Walk backwards from the optimum along edges that descend strictly: every
  // arm reached this way has a strictly increasing route up to it.
  std::vector<bool> reached(n, false);
  std::deque<ArmId> frontier{best};
  reached[best - 1] = true;
  while (!frontier.empty()) {
    const ArmId v = frontier.front();
    frontier.pop_front();
    for (ArmId u : graph.neighbors(v)) {
      if (!reached[u - 1] && means[u - 1] < means[v - 1]) {
        reached[u - 1] = true;
        frontier.push_back(u);
      }
    }
  }
  for (ArmId a = 1; a <= n; ++a) {
    if (!reached[a - 1]) {
      return UnimodalityViolation{
          a, "arm " + std::to_string(a) +
                 " has no strictly increasing path to the optimal arm " +
                 std::to_string(best)};
    }
  }
  return std::nullopt;
}

std::vector<ArmId> subtree_after_cut(const UnimodalGraph& graph, ArmId arm,
                                     ArmId hub) {
  if (!graph.is_tree()) {
    throw std::invalid_argument("subtree_after_cut requires a tree");
  }
  if (!graph.has_edge(arm, hub)) {
    throw std::invalid_argument("no edge (" + std::to_string(arm) + ", " +
                                std::to_string(hub) + ")");
  }
  std::vector<bool> seen(graph.arm_count(), false);
  seen[arm - 1] = true;
  seen[hub - 1] = true;  // the cut edge is the only route through hub
  std::vector<ArmId> stack{arm};
  std::vector<ArmId> out;
  while (!stack.empty()) {
    const ArmId u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (ArmId v : graph.neighbors(u)) {
      if (!seen[v - 1]) {
        seen[v - 1] = true;
        stack.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ArmId> dichotomous_subset(ArmId lo, ArmId hi) {
  if (lo >= hi) {
    throw std::domain_error("dichotomous_subset needs lo < hi, got [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  std::vector<ArmId> out;
  while (hi - lo >= 4) {
    out.push_back(lo);
    out.push_back(hi);
    const ArmId quarter = (hi - lo) / 4;
    lo += quarter;
    hi -= quarter;
  }
  for (ArmId a = lo; a <= hi; ++a) out.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ArmId median(std::span<const ArmId> sorted) {
  if (sorted.empty()) throw std::invalid_argument("median of empty set");
  return sorted[(sorted.size() - 1) / 2];
}

std::size_t distance(ArmId arm, std::span<const ArmId> set) {
  if (set.empty()) throw std::invalid_argument("distance to empty set");
  std::size_t best = static_cast<std::size_t>(-1);
  for (ArmId other : set) {
    best = std::min(best, other > arm ? other - arm : arm - other);
  }
  return best;
}

DichotomyState DichotomyState::initial(std::size_t arm_count) {
  if (arm_count < 2) throw std::invalid_argument("dichotomy needs at least two arms");
  DichotomyState state;
  state.current_set = dichotomous_subset(1, arm_count);
  state.set_list.push_back(state.current_set);
  state.anchor_list.push_back(median(state.current_set));
  return state;
}

void update_dichotomy(DichotomyState& state, ArmId leader,
                      std::size_t arm_count) {
  check_arm(arm_count, leader);
  auto& current = state.current_set;
  if (!std::binary_search(current.begin(), current.end(), leader)) return;

  const auto anchor_it = std::find(state.anchor_list.begin(),
                                   state.anchor_list.end(), leader);
  if (anchor_it != state.anchor_list.end()) {
    const auto keep =
        static_cast<std::size_t>(anchor_it - state.anchor_list.begin()) + 1;
    state.anchor_list.resize(keep);
    state.set_list.resize(keep);
    current = state.set_list.back();
    return;
  }

  std::vector<ArmId> others;
  others.reserve(current.size());
  std::copy_if(current.begin(), current.end(), std::back_inserter(others),
               [leader](ArmId a) { return a != leader; });
  if (!others.empty()) {
    const std::size_t delta = distance(leader, others);
    const ArmId lo = leader > delta ? leader - delta : 1;
    const ArmId hi = std::min<ArmId>(leader + delta, arm_count);
    if (lo < hi) {
      std::vector<ArmId> merged;
      const auto refined = dichotomous_subset(lo, hi);
      std::set_union(current.begin(), current.end(), refined.begin(),
                     refined.end(), std::back_inserter(merged));
      current = std::move(merged);
    }
  }
  state.set_list.push_back(current);
  state.anchor_list.push_back(leader);
}

std::vector<ArmId> second_order_set(const DichotomyState& state,
                                    ArmId follower, ArmId leader) {
  if (follower == leader) {
    throw std::invalid_argument("second_order_set: follower equals leader");
  }
  std::vector<ArmId> out{follower};
  for (ArmId a : state.current_set) {
    if (follower < leader ? a < follower : a > follower) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace unibandit
