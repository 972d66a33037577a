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

#ifndef UNIBANDIT_GRAPH_H_
#define UNIBANDIT_GRAPH_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace unibandit {

// Arms are numbered 1..A throughout the library.
using ArmId = std::size_t;

// Immutable undirected graph over arms 1..A.
class UnimodalGraph {
 public:
  enum class Kind { kPath, kTree, kGeneral };

  // Path 1 - 2 - ... - A.
  static UnimodalGraph path(std::size_t arm_count);

  // Builds from an edge list. kTree requires a connected acyclic graph,
  // kPath requires exactly the edges (i, i+1). Throws std::invalid_argument
  // on self-loops, out-of-range ids, duplicates, or a kind mismatch.
  static UnimodalGraph from_edges(std::size_t arm_count,
                                  std::span<const std::pair<ArmId, ArmId>> edges,
                                  Kind kind);

  std::size_t arm_count() const { return adjacency_.size(); }
  Kind kind() const { return kind_; }
  bool is_tree() const { return kind_ != Kind::kGeneral; }

  // Sorted neighbors of `arm`; throws std::out_of_range on an invalid id.
  const std::vector<ArmId>& neighbors(ArmId arm) const;
  bool has_edge(ArmId u, ArmId v) const;
  std::size_t max_degree() const;
  std::vector<std::pair<ArmId, ArmId>> edges() const;

 private:
  UnimodalGraph(std::vector<std::vector<ArmId>> adjacency, Kind kind)
      : adjacency_(std::move(adjacency)), kind_(kind) {}

  std::vector<std::vector<ArmId>> adjacency_;
  Kind kind_;
};

const char* kind_name(UnimodalGraph::Kind kind);

struct UnimodalityViolation {
  std::optional<ArmId> arm;  // empty for "duplicate maximum"
  std::string message;
};

// Checks that the maximum of `means` is unique and that every other arm
// reaches it along a path of strictly increasing means. Returns nullopt
// when the configuration is unimodal.
std::optional<UnimodalityViolation> validate_unimodal(
    const UnimodalGraph& graph, std::span<const double> means);

// Component containing `arm` once the edge (arm, hub) is removed. Requires a
// tree and an existing edge; throws std::invalid_argument otherwise.
std::vector<ArmId> subtree_after_cut(const UnimodalGraph& graph, ArmId arm,
                                     ArmId hub);

// Sparse subset of [lo, hi] that keeps both ends and recurses toward the
// middle by quarters until the interval is shorter than 4. Sorted output.
std::vector<ArmId> dichotomous_subset(ArmId lo, ArmId hi);

// Moving anchor sets used by d-IMED-UB on paths.
struct DichotomyState {
  std::vector<ArmId> current_set;             // sorted
  std::vector<std::vector<ArmId>> set_list;   // stack of stored sets
  std::vector<ArmId> anchor_list;             // anchor paired with each set

  // Starts from dichotomous_subset(1, A) anchored at its median.
  static DichotomyState initial(std::size_t arm_count);
};

// Lower middle element of a sorted non-empty set.
ArmId median(std::span<const ArmId> sorted);

// min |a' - arm| over `set`; `set` must be non-empty.
std::size_t distance(ArmId arm, std::span<const ArmId> set);

// Advances the anchor stack for the current leader. No-op when the leader
// is outside the current set; rewinds to a stored set when the leader is a
// known anchor; otherwise refines around the leader and pushes a new level.
void update_dichotomy(DichotomyState& state, ArmId leader,
                      std::size_t arm_count);

// Candidate set of a second-order phase: `follower` plus every arm of the
// current set lying strictly beyond it, away from `leader`.
std::vector<ArmId> second_order_set(const DichotomyState& state,
                                    ArmId follower, ArmId leader);

}  // namespace unibandit

#endif  // UNIBANDIT_GRAPH_H_
