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

#include "unibandit/runner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace unibandit {
namespace {

struct ReplicateOutcome {
  // [policy][checkpoint] and [policy][arm]
  std::vector<std::vector<double>> regret;
  std::vector<std::vector<std::int64_t>> pulls;
  std::vector<MonitorTally> monitors;
};

ReplicateOutcome run_replicate(const ExperimentSpec& spec, std::uint64_t replicate) {
  const BanditConfig config = replicate_config(spec, replicate);
  EpisodeOptions options;
  options.monitors = spec.monitors;
  options.realized_regret = spec.realized_regret;

  ReplicateOutcome out;
  for (const auto& policy : spec.policies) {
    auto episode = run_episode(config, policy, spec.horizon, spec.seed, replicate, options);
    const auto& curve = spec.realized_regret ? episode.trace.cum_realized_regret
                                             : episode.trace.cum_pseudo_regret;
    std::vector<double> at_checkpoints;
    at_checkpoints.reserve(spec.checkpoints.size());
    for (std::int64_t t : spec.checkpoints) at_checkpoints.push_back(curve[t - 1]);
    out.regret.push_back(std::move(at_checkpoints));
    out.pulls.push_back(std::move(episode.trace.pulls));
    out.monitors.push_back(std::move(episode.monitor));
  }
  return out;
}

}  // namespace

EpisodeResult run_episode(const BanditConfig& config, const PolicySpec& policy,
                          std::int64_t horizon, std::uint64_t seed,
                          std::uint64_t replicate, const EpisodeOptions& options) {
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  const std::size_t arms = config.arm_count();
  const UnimodalGraph& graph = config.graph();

  std::vector<RandomStream> reward_streams;
  reward_streams.reserve(arms);
  for (ArmId a = 1; a <= arms; ++a) {
    reward_streams.push_back(
        RandomStream::derive(seed, replicate, StreamPurpose::kRewards, a));
  }
  RandomStream init = RandomStream::derive(seed, replicate, StreamPurpose::kInitialArm);
  std::uniform_int_distribution<ArmId> any_arm(1, arms);

  std::vector<double> gaps(arms);
  for (ArmId a = 1; a <= arms; ++a) gaps[a - 1] = config.gap(a);

  EpisodeResult result;
  RegretTrace& trace = result.trace;
  trace.horizon = horizon;
  trace.pulls.assign(arms, 0);
  trace.cum_pseudo_regret.reserve(static_cast<std::size_t>(horizon));
  if (options.realized_regret) {
    trace.cum_realized_regret.reserve(static_cast<std::size_t>(horizon));
  }

  const bool audit = options.monitors && has_empirical_bounds(policy.kind);
  PolicyState state(config.family(), arms);
  double realized = 0.0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    ArmId arm;
    if (t == 1) {
      arm = any_arm(init);
    } else if (audit) {
      // choose() only touches leader/anchor bookkeeping, never the counts
      // and means the bounds are stated on.
      const Decision decision = choose(policy, state, graph);
      result.monitor.record(
          check_empirical_bounds(policy.kind, state, decision, graph),
          options.max_logged_violations);
      arm = decision.arm;
    } else {
      arm = choose(policy, state, graph).arm;
    }

    ++trace.pulls[arm - 1];
    double regret = 0.0;
    for (std::size_t i = 0; i < arms; ++i) {
      regret += gaps[i] * static_cast<double>(trace.pulls[i]);
    }
    trace.cum_pseudo_regret.push_back(regret);

    const double reward = sample_reward(config, arm, reward_streams[arm - 1]);
    state.update(arm, reward);
    if (options.realized_regret) {
      realized += config.best_mean() - reward;
      trace.cum_realized_regret.push_back(realized);
    }
  }
  return result;
}

void validate(const ExperimentSpec& spec) {
  if (spec.horizon < 1) throw ConfigError("horizon must be at least 1");
  if (spec.replicates < 1) throw ConfigError("replicates must be at least 1");
  if (spec.policies.empty()) throw ConfigError("at least one policy is required");
  if (spec.checkpoints.empty()) throw ConfigError("checkpoints must not be empty");
  if (!std::is_sorted(spec.checkpoints.begin(), spec.checkpoints.end()) ||
      std::adjacent_find(spec.checkpoints.begin(), spec.checkpoints.end()) !=
          spec.checkpoints.end()) {
    throw ConfigError("checkpoints must be strictly increasing");
  }
  if (spec.checkpoints.front() < 1 || spec.checkpoints.back() > spec.horizon) {
    throw ConfigError("checkpoints must lie within 1..horizon");
  }
  for (const auto& p : spec.policies) {
    if (p.kind == PolicyKind::kOsub && !(p.osub_c >= 0.0 && std::isfinite(p.osub_c))) {
      throw ConfigError("osub constant c must be a nonnegative number");
    }
  }
  if (const auto* random = std::get_if<RandomEnvironment>(&spec.environment)) {
    if (random->arms < 2) throw ConfigError("random environment needs at least two arms");
  } else {
    const auto& config = std::get<BanditConfig>(spec.environment);
    for (const auto& p : spec.policies) {
      if (p.kind == PolicyKind::kDimedUb && !config.graph().is_tree()) {
        throw ConfigError("dimed-ub requires a path or tree graph");
      }
    }
  }
}

std::vector<std::int64_t> log_spaced_checkpoints(std::int64_t horizon,
                                                 std::size_t count) {
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  std::vector<std::int64_t> out{1};
  if (count >= 2) {
    const double top = std::log(static_cast<double>(horizon));
    for (std::size_t i = 1; i < count; ++i) {
      const double x = top * static_cast<double>(i) / static_cast<double>(count - 1);
      const auto t = static_cast<std::int64_t>(std::llround(std::exp(x)));
      out.push_back(std::clamp<std::int64_t>(t, 1, horizon));
    }
  }
  out.push_back(horizon);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BanditConfig replicate_config(const ExperimentSpec& spec, std::uint64_t replicate) {
  if (const auto* fixed = std::get_if<BanditConfig>(&spec.environment)) return *fixed;
  const auto& random = std::get<RandomEnvironment>(spec.environment);
  RandomStream stream = RandomStream::derive(spec.seed, replicate, StreamPurpose::kConfig);
  return random_unimodal_config(random.arms, random.family, stream);
}

std::size_t thread_count_from_env() {
  if (const char* value = std::getenv("BANDIT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(value, &end, 10);
    if (end != value && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunResult run_experiment(const ExperimentSpec& spec, std::size_t threads) {
  validate(spec);
  const auto replicates = static_cast<std::size_t>(spec.replicates);
  if (threads == 0) threads = thread_count_from_env();
  threads = std::min(threads, replicates);

  std::vector<ReplicateOutcome> outcomes(replicates);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < replicates; r = next++) {
      try {
        outcomes[r] = run_replicate(spec, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = replicates;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  RunResult result;
  result.checkpoints = spec.checkpoints;
  result.replicates = spec.replicates;
  const double n = static_cast<double>(replicates);
  const std::size_t points = spec.checkpoints.size();
  for (std::size_t p = 0; p < spec.policies.size(); ++p) {
    PolicySummary summary;
    summary.policy = spec.policies[p];
    summary.mean_regret.assign(points, 0.0);
    summary.std_error.assign(points, 0.0);
    const std::size_t arms = outcomes.front().pulls[p].size();
    summary.mean_pulls.assign(arms, 0.0);

    for (const auto& o : outcomes) {
      for (std::size_t c = 0; c < points; ++c) summary.mean_regret[c] += o.regret[p][c];
      for (std::size_t a = 0; a < arms; ++a) {
        summary.mean_pulls[a] += static_cast<double>(o.pulls[p][a]);
      }
      summary.monitor.merge(o.monitors[p], 16);
    }
    for (double& m : summary.mean_regret) m /= n;
    for (double& m : summary.mean_pulls) m /= n;
    if (replicates > 1) {
      for (std::size_t c = 0; c < points; ++c) {
        double squares = 0.0;
        for (const auto& o : outcomes) {
          const double d = o.regret[p][c] - summary.mean_regret[c];
          squares += d * d;
        }
        summary.std_error[c] = std::sqrt(squares / (n - 1.0)) / std::sqrt(n);
      }
    }
    result.policies.push_back(std::move(summary));
  }
  return result;
}

}  // namespace unibandit
