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

#ifndef UNIBANDIT_RUNNER_H_
#define UNIBANDIT_RUNNER_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "unibandit/env.h"
#include "unibandit/monitor.h"
#include "unibandit/policies.h"

namespace unibandit {

struct EpisodeOptions {
  bool monitors = false;
  bool realized_regret = false;
  std::size_t max_logged_violations = 16;
};

struct EpisodeResult {
  RegretTrace trace;
  MonitorTally monitor;
};

// Plays `horizon` rounds of `policy` on `config`. The first arm is drawn
// uniformly from the (seed, replicate) initial-arm stream; arm a's rewards
// come from its own (seed, replicate, a) stream, so every policy sees the
// same reward sequence per arm within a replicate.
EpisodeResult run_episode(const BanditConfig& config, const PolicySpec& policy,
                          std::int64_t horizon, std::uint64_t seed,
                          std::uint64_t replicate = 0,
                          const EpisodeOptions& options = {});

// Environment drawn afresh for each replicate.
struct RandomEnvironment {
  std::size_t arms = 0;
  Family family = Family::kGaussian;
};

using EnvironmentSource = std::variant<BanditConfig, RandomEnvironment>;

struct ExperimentSpec {
  std::int64_t horizon = 1;
  std::int64_t replicates = 1;
  std::uint64_t seed = 0;
  std::vector<PolicySpec> policies;
  EnvironmentSource environment = RandomEnvironment{};
  std::vector<std::int64_t> checkpoints;  // sorted, within 1..horizon
  bool monitors = false;
  bool realized_regret = false;
};

// Throws ConfigError if the spec is unusable.
void validate(const ExperimentSpec& spec);

// Up to `count` distinct, roughly log-spaced times in 1..horizon, always
// including 1 and horizon.
std::vector<std::int64_t> log_spaced_checkpoints(std::int64_t horizon,
                                                 std::size_t count = 100);

// Replicate k's configuration in random mode. Shared by all policies.
BanditConfig replicate_config(const ExperimentSpec& spec, std::uint64_t replicate);

struct PolicySummary {
  PolicySpec policy;
  std::vector<double> mean_regret;  // per checkpoint
  std::vector<double> std_error;    // per checkpoint
  std::vector<double> mean_pulls;   // per arm at the horizon
  MonitorTally monitor;
};

struct RunResult {
  std::vector<std::int64_t> checkpoints;
  std::int64_t replicates = 0;
  std::vector<PolicySummary> policies;
};

// Runs every policy for every replicate on up to `threads` workers
// (0 = thread_count_from_env()). The reduction is in replicate order, so
// the result does not depend on the thread count.
RunResult run_experiment(const ExperimentSpec& spec, std::size_t threads = 0);

// BANDIT_THREADS if set and positive, else the hardware concurrency.
std::size_t thread_count_from_env();

}  // namespace unibandit

#endif  // UNIBANDIT_RUNNER_H_
