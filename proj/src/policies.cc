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

#include "unibandit/policies.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace unibandit {
namespace {

// First minimum in ascending arm order, i.e. lowest id wins ties.
template <typename Index>
ArmId argmin(std::span<const ArmId> arms, Index index) {
  ArmId best = arms.front();
  double best_value = index(best);
  for (ArmId a : arms.subspan(1)) {
    const double value = index(a);
    if (value < best_value) {
      best = a;
      best_value = value;
    }
  }
  return best;
}

template <typename Index>
ArmId argmax(std::span<const ArmId> arms, Index index) {
  return argmin(arms, [&](ArmId a) { return -index(a); });
}

double log_count(std::int64_t n) { return std::log(static_cast<double>(n)); }

}  // namespace

PolicyState::PolicyState(Family family, std::size_t arm_count)
    : leader_counts(arm_count, 0),
      family_(family),
      pulls_(arm_count, 0),
      reward_sums_(arm_count, 0.0),
      means_(arm_count, 0.0) {
  if (arm_count == 0) throw std::invalid_argument("policy state needs arms");
}

PolicyState PolicyState::from_statistics(Family family,
                                         std::span<const std::int64_t> pulls,
                                         std::span<const double> means) {
  if (pulls.size() != means.size()) {
    throw std::invalid_argument("pulls and means differ in length");
  }
  PolicyState state(family, pulls.size());
  for (std::size_t i = 0; i < pulls.size(); ++i) {
    if (pulls[i] < 0) throw std::invalid_argument("negative pull count");
    if (pulls[i] == 0 && means[i] != 0.0) {
      throw std::invalid_argument("an unpulled arm has empirical mean 0");
    }
    if (family == Family::kBernoulli && !(means[i] >= 0.0 && means[i] <= 1.0)) {
      throw std::invalid_argument("Bernoulli empirical mean outside [0, 1]");
    }
    state.pulls_[i] = pulls[i];
    state.means_[i] = means[i];
    state.reward_sums_[i] = means[i] * static_cast<double>(pulls[i]);
    state.t_ += pulls[i];
  }
  return state;
}

double PolicyState::best_mean() const {
  return *std::max_element(means_.begin(), means_.end());
}

void PolicyState::update(ArmId arm, double reward) {
  const std::size_t i = arm - 1;
  if (arm < 1 || i >= pulls_.size()) throw std::out_of_range("update: bad arm id");
  ++pulls_[i];
  reward_sums_[i] += reward;
  means_[i] = reward_sums_[i] / static_cast<double>(pulls_[i]);
  ++t_;
}

ArmId current_leader(const PolicyState& state) {
  ArmId leader = 1;
  for (ArmId a = 2; a <= state.arm_count(); ++a) {
    const double mu = state.mean(a);
    const double lead = state.mean(leader);
    if (mu > lead || (mu == lead && state.pulls(a) < state.pulls(leader))) {
      leader = a;
    }
  }
  return leader;
}

double imed_index(const PolicyState& state, ArmId arm) {
  const std::int64_t n = state.pulls(arm);
  if (n == 0) return -kInfinity;
  return static_cast<double>(n) *
             kl(state.family(), state.mean(arm), state.best_mean()) +
         log_count(n);
}

double klucb_ub_index(const PolicyState& state, ArmId arm, ArmId leader) {
  const std::int64_t n = state.pulls(arm);
  if (n == 0) return kInfinity;
  const std::int64_t n_leader = state.pulls(leader);
  if (n_leader == 0) return state.mean(arm);
  return ucb_solve(state.family(), state.mean(arm), n, log_count(n_leader));
}

double second_order_index(const PolicyState& state, ArmId arm, ArmId anchor) {
  const std::int64_t n = state.pulls(arm);
  if (n == 0) return -kInfinity;
  return static_cast<double>(n) *
             kl_plus(state.family(), state.mean(arm), state.mean(anchor)) +
         log_count(n);
}

double osub_exploration(std::int64_t leader_count, double c) {
  const double l = static_cast<double>(leader_count);
  return std::log(std::max(l, 1.0)) +
         c * std::log(std::log(std::max(l, std::numbers::e)));
}

double osub_index(const PolicyState& state, ArmId arm, double exploration) {
  const std::int64_t n = state.pulls(arm);
  if (n == 0) return kInfinity;
  return ucb_solve(state.family(), state.mean(arm), n,
                   exploration + log_count(n));
}

std::vector<ArmId> leader_neighborhood(const UnimodalGraph& graph, ArmId leader) {
  std::vector<ArmId> out = graph.neighbors(leader);
  out.insert(std::lower_bound(out.begin(), out.end(), leader), leader);
  return out;
}

ArmId imed_ub_choose(const PolicyState& state, const UnimodalGraph& graph) {
  const auto candidates = leader_neighborhood(graph, current_leader(state));
  return argmin(std::span<const ArmId>(candidates),
                [&](ArmId a) { return imed_index(state, a); });
}

ArmId klucb_ub_choose(const PolicyState& state, const UnimodalGraph& graph) {
  const ArmId leader = current_leader(state);
  // Leader first so it wins ties; another empirical maximizer with more
  // pulls also scores mu* and must not be preferred over it.
  std::vector<ArmId> order{leader};
  for (ArmId a : graph.neighbors(leader)) order.push_back(a);
  return argmax(std::span<const ArmId>(order),
                [&](ArmId a) { return klucb_ub_index(state, a, leader); });
}

ArmId imed_choose(const PolicyState& state) {
  std::vector<ArmId> arms(state.arm_count());
  for (ArmId a = 1; a <= arms.size(); ++a) arms[a - 1] = a;
  return argmin(std::span<const ArmId>(arms),
                [&](ArmId a) { return imed_index(state, a); });
}

ArmId osub_choose(PolicyState& state, const UnimodalGraph& graph, double c) {
  const ArmId leader = current_leader(state);
  const std::int64_t count = ++state.leader_counts.at(leader - 1);
  const auto period = static_cast<std::int64_t>(graph.max_degree()) + 1;
  if ((count - 1) % period == 0) return leader;
  const double exploration = osub_exploration(count, c);
  return argmax(std::span<const ArmId>(graph.neighbors(leader)),
                [&](ArmId a) { return osub_index(state, a, exploration); });
}

DimedDecision dimed_ub_decide(PolicyState& state, const UnimodalGraph& graph) {
  if (!graph.is_tree()) {
    throw std::invalid_argument("d-IMED-UB requires a tree-shaped graph");
  }
  const ArmId leader = current_leader(state);
  const bool on_path = graph.kind() == UnimodalGraph::Kind::kPath;
  if (on_path) {
    if (!state.dichotomy) {
      state.dichotomy = DichotomyState::initial(graph.arm_count());
    }
    update_dichotomy(*state.dichotomy, leader, graph.arm_count());
  }

  const auto around = leader_neighborhood(graph, leader);
  const ArmId follower = argmin(std::span<const ArmId>(around),
                                [&](ArmId a) { return imed_index(state, a); });
  if (follower == leader) return {leader, leader, follower, {}};

  auto candidates = on_path
                        ? second_order_set(*state.dichotomy, follower, leader)
                        : subtree_after_cut(graph, follower, leader);
  const ArmId arm =
      argmin(std::span<const ArmId>(candidates),
             [&](ArmId a) { return second_order_index(state, a, follower); });
  return {arm, leader, follower, std::move(candidates)};
}

ArmId dimed_ub_choose(PolicyState& state, const UnimodalGraph& graph) {
  return dimed_ub_decide(state, graph).arm;
}

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kImedUb:
      return "imed-ub";
    case PolicyKind::kKlucbUb:
      return "klucb-ub";
    case PolicyKind::kDimedUb:
      return "dimed-ub";
    case PolicyKind::kOsub:
      return "osub";
    case PolicyKind::kImed:
      return "imed";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (auto kind : {PolicyKind::kImedUb, PolicyKind::kKlucbUb,
                    PolicyKind::kDimedUb, PolicyKind::kOsub, PolicyKind::kImed}) {
    if (policy_name(kind) == name) return kind;
  }
  return std::nullopt;
}

Decision choose(const PolicySpec& spec, PolicyState& state,
                const UnimodalGraph& graph) {
  switch (spec.kind) {
    case PolicyKind::kImedUb:
      return {imed_ub_choose(state, graph), current_leader(state), {}, {}};
    case PolicyKind::kKlucbUb:
      return {klucb_ub_choose(state, graph), current_leader(state), {}, {}};
    case PolicyKind::kOsub: {
      const ArmId leader = current_leader(state);
      return {osub_choose(state, graph, spec.osub_c), leader, {}, {}};
    }
    case PolicyKind::kImed:
      return {imed_choose(state), current_leader(state), {}, {}};
    case PolicyKind::kDimedUb: {
      auto d = dimed_ub_decide(state, graph);
      Decision out{d.arm, d.leader, {}, std::move(d.candidates)};
      if (d.follower != d.leader) out.follower = d.follower;
      return out;
    }
  }
  throw std::logic_error("unknown policy kind");
}

}  // namespace unibandit
