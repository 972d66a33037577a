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

#include "unibandit/env.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace unibandit {

BanditConfig BanditConfig::create(Family family, std::vector<double> means,
                                  UnimodalGraph graph) {
  if (means.size() < 2) {
    throw ConfigError("a configuration needs at least two arms");
  }
  if (means.size() != graph.arm_count()) {
    throw ConfigError("means has " + std::to_string(means.size()) +
                      " entries but the graph has " +
                      std::to_string(graph.arm_count()) + " arms");
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    const double mu = means[i];
    if (!std::isfinite(mu)) {
      throw ConfigError("mean of arm " + std::to_string(i + 1) + " is not finite");
    }
    if (family == Family::kBernoulli && !(mu > 0.0 && mu < 1.0)) {
      throw ConfigError("Bernoulli mean of arm " + std::to_string(i + 1) +
                        " must lie in (0, 1), got " + std::to_string(mu));
    }
  }
  if (auto violation = validate_unimodal(graph, means)) {
    throw ConfigError(violation->message);
  }
  const auto best = static_cast<ArmId>(
      std::max_element(means.begin(), means.end()) - means.begin() + 1);
  return BanditConfig(family, std::move(means), std::move(graph), best);
}

double sample_reward(const BanditConfig& config, ArmId arm, RandomStream& rng) {
  const double mu = config.mean(arm);
  if (config.family() == Family::kBernoulli) {
    return rng.uniform() < mu ? 1.0 : 0.0;
  }
  std::normal_distribution<double> noise(mu, 1.0);
  return noise(rng);
}

std::vector<LowerBoundTerm> lower_bound_terms(const BanditConfig& config) {
  std::vector<LowerBoundTerm> terms;
  const double best = config.best_mean();
  for (ArmId a : config.graph().neighbors(config.best_arm())) {
    const double mu = config.mean(a);
    terms.push_back({a, (best - mu) / kl(config.family(), mu, best)});
  }
  return terms;
}

double lower_bound_constant(const BanditConfig& config) {
  double total = 0.0;
  for (const auto& term : lower_bound_terms(config)) total += term.value;
  return total;
}

BanditConfig random_unimodal_config(std::size_t arm_count, Family family,
                                    RandomStream& rng) {
  if (arm_count < 2) throw ConfigError("random configuration needs at least two arms");
  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<double> draws(arm_count);
    for (double& x : draws) x = rng.uniform();

    std::vector<double> sorted = draws;
    std::sort(sorted.begin(), sorted.end());
    const bool tie = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    const bool on_boundary = family == Family::kBernoulli && sorted.front() <= 0.0;
    if (tie || on_boundary) continue;

    const auto peak = std::max_element(draws.begin(), draws.end());
    std::vector<double> left;
    std::vector<double> right;
    for (auto it = draws.begin(); it != draws.end(); ++it) {
      if (it == peak) continue;
      ((rng() >> 63) == 0 ? left : right).push_back(*it);
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end(), std::greater<>());

    std::vector<double> means = std::move(left);
    means.push_back(*peak);
    means.insert(means.end(), right.begin(), right.end());
    return BanditConfig::create(family, std::move(means),
                                UnimodalGraph::path(arm_count));
  }
  throw ConfigError("could not draw a valid random configuration");
}

}  // namespace unibandit
