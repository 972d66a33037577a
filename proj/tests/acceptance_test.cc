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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned below.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "naive_oracle.h"
#include "unibandit/cli.h"
#include "unibandit/env.h"
#include "unibandit/runner.h"

namespace unibandit {
namespace {

constexpr double kLowerBoundTolerance = 1e-9;
constexpr double kOsubRatio = 0.9;
constexpr double kNeighborPullLow = 0.5;
constexpr double kNeighborPullHigh = 1.5;
constexpr double kNonNeighborGrowth = 5.0;  // pulls per arm
constexpr double kOracleTolerance = 1e-6;

const std::vector<double> kFixedMeans{0, 0.2, 0.4, 0.6, 0.8, 1, 0.8, 0.6, 0.4, 0.2, 0};

BanditConfig fixed_config() {
  return BanditConfig::create(Family::kGaussian, kFixedMeans, UnimodalGraph::path(11));
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& criterion) {
  Outcome o;
  try {
    o = criterion();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
}

ExperimentSpec fixed_spec(std::int64_t horizon, std::int64_t replicates, std::uint64_t seed,
                          std::vector<PolicySpec> policies) {
  ExperimentSpec spec;
  spec.horizon = horizon;
  spec.replicates = replicates;
  spec.seed = seed;
  spec.policies = std::move(policies);
  spec.environment = fixed_config();
  spec.checkpoints = {horizon};
  return spec;
}

Outcome lower_bound_constant_check() {
  const double c = lower_bound_constant(fixed_config());
  return {std::abs(c - 20.0) <= kLowerBoundTolerance, "c = " + fmt(c) + " (expected 20)"};
}

Outcome chain_rule_check() {
  const std::vector<PolicySpec> policies{{PolicyKind::kImedUb}, {PolicyKind::kKlucbUb},
                                         {PolicyKind::kDimedUb}, {PolicyKind::kOsub},
                                         {PolicyKind::kImed}};
  int episodes = 0;
  int mismatches = 0;
  for (std::uint64_t r = 0; r < 20; ++r) {
    RandomStream stream = RandomStream::derive(303, r, StreamPurpose::kConfig);
    const Family family = r % 2 ? Family::kBernoulli : Family::kGaussian;
    const std::vector<BanditConfig> configs{fixed_config(),
                                            random_unimodal_config(15, family, stream)};
    for (const auto& config : configs) {
      for (const auto& policy : policies) {
        const auto trace = run_episode(config, policy, 10000, 303, r).trace;
        double expected = 0.0;
        for (ArmId a = 1; a <= config.arm_count(); ++a) {
          expected += config.gap(a) * static_cast<double>(trace.pulls[a - 1]);
        }
        ++episodes;
        if (trace.cum_pseudo_regret.back() != expected) ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(episodes) + " episodes, " +
                               std::to_string(mismatches) + " inexact"};
}

Outcome monitor_check() {
  const std::vector<PolicySpec> policies{{PolicyKind::kImedUb}, {PolicyKind::kKlucbUb},
                                         {PolicyKind::kDimedUb}};
  auto spec = fixed_spec(10000, 50, 404, policies);
  spec.monitors = true;
  auto random = spec;
  random.environment = RandomEnvironment{15, Family::kGaussian};
  std::ostringstream detail;
  std::int64_t violations = 0;
  for (const auto* s : {&spec, &random}) {
    const auto result = run_experiment(*s);
    for (const auto& p : result.policies) {
      violations += p.monitor.total_violations();
      detail << policy_name(p.policy.kind) << " checked " << p.monitor.checked_steps
             << " skipped " << p.monitor.skipped_steps << " violations "
             << p.monitor.total_violations() << "; ";
      for (const auto& v : p.monitor.log) {
        std::cerr << policy_name(p.policy.kind) << ' ' << v.check << ' ' << v.lhs << " > "
                  << v.rhs << " [" << v.snapshot << "]\n";
      }
    }
  }
  return {violations == 0, detail.str()};
}

struct FixedComparison {
  double imed_ub = 0, klucb_ub = 0, osub = 0, imed = 0;
};

FixedComparison compare_on_fixed(std::uint64_t seed) {
  const auto result = run_experiment(fixed_spec(
      10000, 200, seed,
      {{PolicyKind::kImedUb}, {PolicyKind::kKlucbUb}, {PolicyKind::kOsub}, {PolicyKind::kImed}}));
  return {result.policies[0].mean_regret.back(), result.policies[1].mean_regret.back(),
          result.policies[2].mean_regret.back(), result.policies[3].mean_regret.back()};
}

FixedComparison fixed_comparison;  // shared with the asymptotic-bound check

Outcome structured_beats_unstructured() {
  auto passes = [](const FixedComparison& m) {
    return m.imed_ub <= kOsubRatio * m.osub && m.klucb_ub <= kOsubRatio * m.osub &&
           m.imed_ub <= m.imed && m.klucb_ub <= m.imed;
  };
  auto describe = [](const FixedComparison& m, std::uint64_t seed) {
    return "seed " + std::to_string(seed) + ": imed-ub " + fmt(m.imed_ub) + ", klucb-ub " +
           fmt(m.klucb_ub) + ", osub " + fmt(m.osub) + ", imed " + fmt(m.imed);
  };
  fixed_comparison = compare_on_fixed(1);
  if (passes(fixed_comparison)) return {true, describe(fixed_comparison, 1)};
  const auto retry = compare_on_fixed(2);
  return {passes(retry), describe(fixed_comparison, 1) + "; retry " + describe(retry, 2)};
}

Outcome below_asymptotic_bound() {
  const double bound = lower_bound_constant(fixed_config()) * std::log(10000.0);
  const double regret = fixed_comparison.imed_ub;
  return {regret > 0 && regret <= bound,
          "imed-ub " + fmt(regret) + " <= c log T = " + fmt(bound)};
}

std::vector<double> imed_ub_pulls(std::int64_t horizon) {
  return run_experiment(fixed_spec(horizon, 100, 606, {{PolicyKind::kImedUb}}))
      .policies[0]
      .mean_pulls;
}

std::vector<double> pulls_short, pulls_long;

Outcome neighbor_pull_scaling() {
  pulls_short = imed_ub_pulls(10000);
  pulls_long = imed_ub_pulls(100000);
  const auto config = fixed_config();
  const double log_t = std::log(100000.0);
  bool ok = true;
  std::ostringstream detail;
  for (ArmId a : config.graph().neighbors(config.best_arm())) {
    const double target = log_t / kl(config.family(), config.mean(a), config.best_mean());
    const double pulls = pulls_long[a - 1];
    ok = ok && pulls >= kNeighborPullLow * target && pulls <= kNeighborPullHigh * target;
    detail << "arm " << a << " " << fmt(pulls) << " in [" << fmt(kNeighborPullLow * target)
           << ", " << fmt(kNeighborPullHigh * target) << "]; ";
  }
  return {ok, detail.str()};
}

Outcome non_neighbor_pulls_bounded() {
  const auto config = fixed_config();
  const ArmId best = config.best_arm();
  const auto hood = leader_neighborhood(config.graph(), best);
  bool ok = true;
  double worst = 0.0;
  for (ArmId a = 1; a <= config.arm_count(); ++a) {
    if (std::find(hood.begin(), hood.end(), a) != hood.end()) continue;
    const double growth = pulls_long[a - 1] - pulls_short[a - 1];
    worst = std::max(worst, growth);
    ok = ok && growth <= kNonNeighborGrowth;
  }
  return {ok, "largest per-arm growth from T=1e4 to T=1e5: " + fmt(worst)};
}

Outcome dichotomy_exact() {
  const auto got = dichotomous_subset(1, 11);
  const std::vector<ArmId> want{1, 3, 4, 5, 6, 7, 8, 9, 11};
  std::string text;
  for (ArmId a : got) text += std::to_string(a) + ' ';
  return {got == want, "{ " + text + "}"};
}

Outcome large_path_dimed() {
  ExperimentSpec spec;
  spec.horizon = 10000;
  spec.replicates = 100;
  spec.seed = 909;
  spec.policies = {{PolicyKind::kDimedUb}, {PolicyKind::kImed}};
  spec.environment = RandomEnvironment{200, Family::kGaussian};
  spec.checkpoints = {spec.horizon};
  const auto result = run_experiment(spec);
  const double dimed = result.policies[0].mean_regret.back();
  const double imed = result.policies[1].mean_regret.back();
  return {dimed < imed, "dimed-ub " + fmt(dimed) + " vs imed " + fmt(imed)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  const int ucb_failures = naive::compare_ucb(1010, 1000, kOracleTolerance, &worst);
  const auto agreement = naive::compare_policies(1011, 1000);
  return {ucb_failures == 0 && agreement.mismatches == 0,
          "ucb_solve worst error " + fmt(worst) + " over 1000 tuples; " +
              std::to_string(agreement.mismatches) + " of " + std::to_string(agreement.checked) +
              " policy choices differ"};
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "unibandit_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto config = (dir / "fixed.json").string();
  std::ofstream(config) << R"({"family": "gaussian",
    "means": [0, 0.2, 0.4, 0.6, 0.8, 1, 0.8, 0.6, 0.4, 0.2, 0],
    "horizon": 5000, "replicates": 24, "seed": 11,
    "policies": ["imed-ub", "klucb-ub", "dimed-ub", "osub", "imed"]})";
  auto simulate = [&](const char* threads, const std::string& out) {
    ::setenv("BANDIT_THREADS", threads, 1);
    std::ostringstream sink;
    const char* argv[] = {"unibandit", "simulate", "--config", config.c_str(), "--out",
                          out.c_str()};
    return cli::run(6, argv, sink, sink);
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const auto one = (dir / "one.csv").string();
  const auto eight = (dir / "eight.csv").string();
  const int a = simulate("1", one);
  const int b = simulate("8", eight);
  ::unsetenv("BANDIT_THREADS");
  const bool same = a == 0 && b == 0 && !slurp(one).empty() && slurp(one) == slurp(eight) &&
                    slurp(dir / "one_pulls.csv") == slurp(dir / "eight_pulls.csv");
  fs::remove_all(dir);
  return {same, same ? "regret and pulls tables byte-identical" : "outputs differ"};
}

}  // namespace
}  // namespace unibandit

int main() {
  using namespace unibandit;
  report("lower-bound constant of the fixed configuration", lower_bound_constant_check);
  report("chain-rule regret identity", chain_rule_check);
  report("runtime bound monitors", monitor_check);
  report("structured policies beat OSUB and IMED", structured_beats_unstructured);
  report("IMED-UB regret below c log T", below_asymptotic_bound);
  report("neighbor pulls scale as log T / KL", neighbor_pull_scaling);
  report("non-neighbor pulls stay bounded", non_neighbor_pulls_bounded);
  report("dichotomous subset of [1, 11]", dichotomy_exact);
  report("d-IMED-UB beats IMED on 200-arm paths", large_path_dimed);
  report("oracle equivalence", oracle_equivalence);
  report("CLI output independent of thread count", cli_determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
