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

#include "unibandit/monitor.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "unibandit/env.h"
#include "unibandit/random.h"
#include "unibandit/runner.h"

namespace unibandit {
namespace {

const std::vector<double> kFixedMeans{0, 0.2, 0.4, 0.6, 0.8, 1, 0.8, 0.6, 0.4, 0.2, 0};

BanditConfig fixed_config() {
  return BanditConfig::create(Family::kGaussian, kFixedMeans, UnimodalGraph::path(11));
}

constexpr PolicyKind kMonitored[] = {PolicyKind::kImedUb, PolicyKind::kKlucbUb,
                                     PolicyKind::kDimedUb};

TEST(Monitor, SkipsStepsWithUnpulledArms) {
  const auto graph = UnimodalGraph::path(3);
  auto state = PolicyState::from_statistics(Family::kGaussian, std::vector<std::int64_t>{0, 5, 5},
                                            std::vector<double>{0.0, 0.8, 0.5});
  const Decision d = choose({PolicyKind::kImedUb}, state, graph);
  const auto r = check_empirical_bounds(PolicyKind::kImedUb, state, d, graph);
  EXPECT_TRUE(r.skipped);
  MonitorTally tally;
  tally.record(r, 4);
  EXPECT_EQ(tally.skipped_steps, 1);
  EXPECT_EQ(tally.checked_steps, 0);
}

TEST(Monitor, UnmonitoredPoliciesYieldNothing) {
  const auto graph = UnimodalGraph::path(3);
  auto state = PolicyState::from_statistics(Family::kGaussian, std::vector<std::int64_t>{5, 5, 5},
                                            std::vector<double>{0.2, 0.8, 0.5});
  Decision bogus{1, 2, std::nullopt, {}};
  for (auto kind : {PolicyKind::kOsub, PolicyKind::kImed}) {
    EXPECT_FALSE(has_empirical_bounds(kind));
    EpisodeOptions options;
    options.monitors = true;
    EXPECT_EQ(run_episode(fixed_config(), {kind}, 200, 1, 0, options).monitor.checked_steps, 0);
    const auto r = check_empirical_bounds(kind, state, bogus, graph);
    EXPECT_FALSE(r.skipped);
    EXPECT_TRUE(r.violations.empty());
  }
}

TEST(Monitor, FlagsAnArmWithTooManyPulls) {
  // Pulling arm 2 again although N_2 = 50 > N_leader = 10.
  const auto graph = UnimodalGraph::path(3);
  auto state = PolicyState::from_statistics(Family::kGaussian, std::vector<std::int64_t>{5, 50, 10},
                                            std::vector<double>{0.2, 0.79, 0.8});
  Decision d{2, 3, std::nullopt, {}};
  const auto r = check_empirical_bounds(PolicyKind::kImedUb, state, d, graph);
  ASSERT_FALSE(r.skipped);
  const bool leader_bound = std::any_of(r.violations.begin(), r.violations.end(), [](const auto& v) {
    return v.check == bound_check::kLeaderPulls;
  });
  EXPECT_TRUE(leader_bound);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_NE(r.violations.front().snapshot.find("2:N=50"), std::string::npos);
}

// Plays the fixed configuration but pulls the neighbor with the *largest*
// IMED index instead of the smallest. The monitors must notice.
TEST(Monitor, DetectsCorruptedChooser) {
  const auto config = fixed_config();
  const auto& graph = config.graph();
  std::vector<RandomStream> streams;
  for (ArmId a = 1; a <= 11; ++a) {
    streams.push_back(RandomStream::derive(5, 0, StreamPurpose::kRewards, a));
  }
  PolicyState state(Family::kGaussian, 11);
  for (ArmId a = 1; a <= 11; ++a) state.update(a, sample_reward(config, a, streams[a - 1]));

  MonitorTally tally;
  for (int step = 0; step < 2000; ++step) {
    Decision d = choose({PolicyKind::kImedUb}, state, graph);
    const auto hood = leader_neighborhood(graph, d.leader);
    d.arm = *std::max_element(hood.begin(), hood.end(), [&](ArmId x, ArmId y) {
      return imed_index(state, x) < imed_index(state, y);
    });
    tally.record(check_empirical_bounds(PolicyKind::kImedUb, state, d, graph), 8);
    state.update(d.arm, sample_reward(config, d.arm, streams[d.arm - 1]));
  }
  EXPECT_GT(tally.total_violations(), 0);
  EXPECT_GT(tally.violations[std::string(bound_check::kNeighborIndex)], 0);
  EXPECT_EQ(tally.log.size(), 8u);
}

TEST(Monitor, HonestPoliciesStayWithinBounds) {
  EpisodeOptions options;
  options.monitors = true;
  const auto fixed = fixed_config();
  for (auto kind : kMonitored) {
    for (std::uint64_t r = 0; r < 3; ++r) {
      const auto result = run_episode(fixed, {kind}, 3000, 11, r, options);
      EXPECT_EQ(result.monitor.total_violations(), 0)
          << policy_name(kind) << ": " << result.monitor.log.front().snapshot;
      EXPECT_GT(result.monitor.checked_steps, 2500);
    }
  }
}

TEST(Monitor, HonestPoliciesOnRandomBernoulliPaths) {
  EpisodeOptions options;
  options.monitors = true;
  for (std::uint64_t r = 0; r < 5; ++r) {
    auto stream = RandomStream::derive(21, r, StreamPurpose::kConfig);
    const auto config = random_unimodal_config(9, Family::kBernoulli, stream);
    for (auto kind : kMonitored) {
      const auto result = run_episode(config, {kind}, 2000, 21, r, options);
      EXPECT_EQ(result.monitor.total_violations(), 0)
          << policy_name(kind) << ": " << result.monitor.log.front().snapshot;
    }
  }
}

TEST(Monitor, KlucbReportsVoidIndexSteps) {
  EpisodeOptions options;
  options.monitors = true;
  const auto result = run_episode(fixed_config(), {PolicyKind::kKlucbUb}, 3000, 2, 0, options);
  EXPECT_LE(result.monitor.gamma_zero_steps, result.monitor.checked_steps);
  const auto imed = run_episode(fixed_config(), {PolicyKind::kImedUb}, 3000, 2, 0, options);
  EXPECT_EQ(imed.monitor.gamma_zero_steps, 0);
}

TEST(MonitorTally, MergeAddsAndCapsLog) {
  MonitorTally a;
  MonitorTally b;
  BoundCheckResult bad;
  bad.violations.push_back({"x", 1, 1, 1, 2.0, 1.0, ""});
  a.record(bad, 2);
  b.record(bad, 2);
  b.record(bad, 2);
  b.record({}, 2);
  a.merge(b, 2);
  EXPECT_EQ(a.checked_steps, 4);
  EXPECT_EQ(a.violations["x"], 3);
  EXPECT_EQ(a.log.size(), 2u);
  EXPECT_EQ(a.total_violations(), 3);
}

}  // namespace
}  // namespace unibandit
