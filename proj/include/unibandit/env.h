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

#ifndef UNIBANDIT_ENV_H_
#define UNIBANDIT_ENV_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unibandit/graph.h"
#include "unibandit/kl.h"
#include "unibandit/random.h"

namespace unibandit {

// Raised for any invalid environment or experiment description.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ground truth of one unimodal bandit problem. Always valid once built.
class BanditConfig {
 public:
  // Throws ConfigError unless there are at least two arms, the means are
  // finite, Bernoulli means lie in (0, 1) and the means are unimodal on
  // `graph` (which includes a unique maximum). Suboptimal arms may share a
  // mean.
  static BanditConfig create(Family family, std::vector<double> means,
                             UnimodalGraph graph);

  Family family() const { return family_; }
  const UnimodalGraph& graph() const { return graph_; }
  std::span<const double> means() const { return means_; }
  std::size_t arm_count() const { return means_.size(); }
  double mean(ArmId arm) const { return means_.at(arm - 1); }
  ArmId best_arm() const { return best_arm_; }
  double best_mean() const { return means_[best_arm_ - 1]; }

  // mu* - mu_arm; zero only at the optimal arm.
  double gap(ArmId arm) const { return best_mean() - mean(arm); }

 private:
  BanditConfig(Family family, std::vector<double> means, UnimodalGraph graph,
               ArmId best)
      : family_(family),
        means_(std::move(means)),
        graph_(std::move(graph)),
        best_arm_(best) {}

  Family family_;
  std::vector<double> means_;
  UnimodalGraph graph_;
  ArmId best_arm_;
};

// Per-episode outcome. cum_pseudo_regret[t - 1] is the regret after t pulls.
struct RegretTrace {
  std::vector<double> cum_pseudo_regret;
  std::vector<double> cum_realized_regret;  // filled only on request
  std::vector<std::int64_t> pulls;          // N_a(T), index a - 1
  std::int64_t horizon = 0;
};

// Unit-variance Gaussian or {0, 1} Bernoulli draw with the arm's mean.
double sample_reward(const BanditConfig& config, ArmId arm, RandomStream& rng);

struct LowerBoundTerm {
  ArmId arm;
  double value;  // gap / KL(mu_arm | mu*)
};

// Asymptotic regret constant: sum over neighbors of the optimal arm of
// gap / KL(mu_a | mu*). The terms are listed in arm order.
std::vector<LowerBoundTerm> lower_bound_terms(const BanditConfig& config);
double lower_bound_constant(const BanditConfig& config);

// Uniformly random unimodal path configuration with means in [0, 1]:
// A iid uniforms, the maximum placed at the peak, every other value sent
// left or right by a fair coin, left side ascending, right side descending.
// Redraws (at most 100 times) on ties or, for Bernoulli, on means hitting 0.
BanditConfig random_unimodal_config(std::size_t arm_count, Family family,
                                    RandomStream& rng);

}  // namespace unibandit

#endif  // UNIBANDIT_ENV_H_
