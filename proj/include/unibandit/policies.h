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

#ifndef UNIBANDIT_POLICIES_H_
#define UNIBANDIT_POLICIES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unibandit/graph.h"
#include "unibandit/kl.h"

namespace unibandit {

// Everything a policy is allowed to observe, plus the bookkeeping that OSUB
// (leader counts) and d-IMED-UB (anchor sets) carry between steps.
class PolicyState {
 public:
  PolicyState(Family family, std::size_t arm_count);

  // State with the given per-arm pull counts and empirical means, as if the
  // rewards had been observed. Used to pose decision problems directly.
  static PolicyState from_statistics(Family family,
                                     std::span<const std::int64_t> pulls,
                                     std::span<const double> means);

  Family family() const { return family_; }
  std::size_t arm_count() const { return pulls_.size(); }
  std::int64_t t() const { return t_; }
  std::int64_t pulls(ArmId arm) const { return pulls_.at(arm - 1); }
  double reward_sum(ArmId arm) const { return reward_sums_.at(arm - 1); }
  std::span<const std::int64_t> all_pulls() const { return pulls_; }

  // Empirical mean; 0 for an arm never pulled.
  double mean(ArmId arm) const { return means_.at(arm - 1); }
  double best_mean() const;

  void update(ArmId arm, double reward);

  std::vector<std::int64_t> leader_counts;   // OSUB only
  std::optional<DichotomyState> dichotomy;   // d-IMED-UB on paths only

 private:
  Family family_;
  std::vector<std::int64_t> pulls_;
  std::vector<double> reward_sums_;
  std::vector<double> means_;
  std::int64_t t_ = 0;
};

// Empirically best arm with the fewest pulls; lowest id on further ties.
ArmId current_leader(const PolicyState& state);

// N_a KL(mu_a | mu*) + log N_a, or -inf for an arm never pulled.
double imed_index(const PolicyState& state, ArmId arm);

// Upper confidence level with budget log N_leader (see ucb_solve). +inf for
// an unpulled arm; the empirical mean when the leader was never pulled.
double klucb_ub_index(const PolicyState& state, ArmId arm, ArmId leader);

// N_a KL+(mu_a | mu_anchor) + log N_a, or -inf for an arm never pulled.
double second_order_index(const PolicyState& state, ArmId arm, ArmId anchor);

// f_c(L) = log L + c log log L, with L clamped to >= 1 (resp. >= e) inside
// each logarithm.
double osub_exploration(std::int64_t leader_count, double c);

// sup{u >= mu_a : N_a KL(mu_a | u) <= exploration}; +inf if unpulled.
double osub_index(const PolicyState& state, ArmId arm, double exploration);

// {leader} + neighbors(leader), sorted.
std::vector<ArmId> leader_neighborhood(const UnimodalGraph& graph, ArmId leader);

ArmId imed_ub_choose(const PolicyState& state, const UnimodalGraph& graph);
ArmId klucb_ub_choose(const PolicyState& state, const UnimodalGraph& graph);
ArmId imed_choose(const PolicyState& state);

// Both mutate the per-policy bookkeeping stored in `state`.
ArmId osub_choose(PolicyState& state, const UnimodalGraph& graph, double c);

struct DimedDecision {
  ArmId arm;
  ArmId leader;
  ArmId follower;                  // min-index arm around the leader
  std::vector<ArmId> candidates;   // second-order set; empty if follower == leader
};
DimedDecision dimed_ub_decide(PolicyState& state, const UnimodalGraph& graph);
ArmId dimed_ub_choose(PolicyState& state, const UnimodalGraph& graph);

enum class PolicyKind { kImedUb, kKlucbUb, kDimedUb, kOsub, kImed };

struct PolicySpec {
  PolicyKind kind = PolicyKind::kImedUb;
  double osub_c = 0.0;
};

std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view name);

// One decision plus what the runtime monitors need to audit it.
struct Decision {
  ArmId arm = 0;
  ArmId leader = 0;
  std::optional<ArmId> follower;     // d-IMED-UB second-order phases
  std::vector<ArmId> candidates;     // second-order set in that phase
};

Decision choose(const PolicySpec& spec, PolicyState& state,
                const UnimodalGraph& graph);

}  // namespace unibandit

#endif  // UNIBANDIT_POLICIES_H_
