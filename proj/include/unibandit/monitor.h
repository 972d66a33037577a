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

#ifndef UNIBANDIT_MONITOR_H_
#define UNIBANDIT_MONITOR_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "unibandit/graph.h"
#include "unibandit/policies.h"

namespace unibandit {

// Inequalities that IMED-UB, KLUCB-UB and d-IMED-UB satisfy at every step
// by construction. They relate the arm about to be pulled to the counts and
// empirical means observed just before the choice.
namespace bound_check {
// N_next <= N_leader.
inline constexpr std::string_view kLeaderPulls = "leader_pull_bound";
// log N_next <= I_a for every neighbor a of the leader.
inline constexpr std::string_view kNeighborIndex = "neighbor_index_lower_bound";
// N_next KL(mu_next | mu*) <= log t.
inline constexpr std::string_view kTransport = "transport_upper_bound";
// d-IMED-UB: N_follower KL(mu_follower | mu*) <= log t.
inline constexpr std::string_view kFollowerTransport = "follower_transport_upper_bound";
// d-IMED-UB second-order phase: log N_next <= I^(follower)_a over the set.
inline constexpr std::string_view kSecondOrderIndex = "second_order_index_lower_bound";
// N_next <= N_follower <= N_leader.
inline constexpr std::string_view kSecondOrderPulls = "second_order_pull_bound";
// N_next KL+(mu_next | mu_follower) <= log N_follower.
inline constexpr std::string_view kSecondOrderTransport = "second_order_transport_upper_bound";
// N_next KL+(mu_next | mu_follower) <= log(log t / KL(mu_follower | mu*)).
inline constexpr std::string_view kSecondOrderLogLog = "second_order_loglog_bound";
}  // namespace bound_check

// Slack absorbed before an inequality counts as violated.
inline constexpr double kBoundTolerance = 1e-9;

struct BoundViolation {
  std::string check;
  std::int64_t t = 0;
  ArmId arm = 0;
  ArmId leader = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string snapshot;  // counts and means of the arms involved
};

struct BoundCheckResult {
  bool skipped = false;     // some involved arm had never been pulled
  bool gamma_zero = false;  // KLUCB-UB step where the index bound is void
  std::vector<BoundViolation> violations;
};

// True for the policies audited below (IMED-UB, KLUCB-UB, d-IMED-UB).
bool has_empirical_bounds(PolicyKind kind);

// Audits one decision taken from `pre` (the state the policy saw at time
// t = pre.t()). Policies without known bounds yield an empty result.
BoundCheckResult check_empirical_bounds(PolicyKind kind, const PolicyState& pre,
                                        const Decision& decision,
                                        const UnimodalGraph& graph);

// Running totals across steps, episodes and replicates.
struct MonitorTally {
  std::int64_t checked_steps = 0;
  std::int64_t skipped_steps = 0;
  std::int64_t gamma_zero_steps = 0;
  std::map<std::string, std::int64_t> violations;
  std::vector<BoundViolation> log;  // first few, with snapshots

  void record(const BoundCheckResult& result, std::size_t max_logged);
  void merge(const MonitorTally& other, std::size_t max_logged);
  std::int64_t total_violations() const;
};

}  // namespace unibandit

#endif  // UNIBANDIT_MONITOR_H_
