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

#include "unibandit/kl.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace unibandit {
namespace {

void check_unit_interval(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string("kl_bernoulli: ") + what +
                            " outside [0, 1]: " + std::to_string(p));
  }
}

// x * log(x / y) with 0 log 0 = 0; caller guarantees y > 0 when x > 0.
double xlogx_over_y(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(x / y);
}

// Largest u in [mu_hat, 1] with n * kl(mu_hat | u) <= slack.
double solve_bernoulli(double mu_hat, double n, double slack) {
  const auto feasible = [&](double u) { return n * kl_bernoulli(mu_hat, u) <= slack; };
  if (mu_hat >= 1.0) return 1.0;
  // The root is not representable below 1; report the cap.
  if (feasible(std::nextafter(1.0, 0.0))) return 1.0;
  double lo = mu_hat;
  double hi = 1.0;
  for (int i = 0; i < kUcbMaxIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kGaussian:
      return "gaussian";
    case Family::kBernoulli:
      return "bernoulli";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "gaussian") return Family::kGaussian;
  if (name == "bernoulli") return Family::kBernoulli;
  return std::nullopt;
}

double kl_gaussian(double mu, double mu_prime) {
  const double diff = mu_prime - mu;
  return 0.5 * diff * diff;
}

double kl_bernoulli(double mu, double mu_prime) {
  check_unit_interval(mu, "mu");
  check_unit_interval(mu_prime, "mu_prime");
  if (mu == mu_prime) return 0.0;
  if (mu_prime == 1.0 || mu_prime == 0.0) return kInfinity;
  const double value = xlogx_over_y(mu, mu_prime) +
                       xlogx_over_y(1.0 - mu, 1.0 - mu_prime);
  // Cancellation can leave a tiny negative residue for mu ~ mu_prime.
  return value < 0.0 ? 0.0 : value;
}

double kl(Family family, double mu, double mu_prime) {
  return family == Family::kGaussian ? kl_gaussian(mu, mu_prime)
                                     : kl_bernoulli(mu, mu_prime);
}

double kl_plus(Family family, double mu, double mu_prime) {
  if (mu < mu_prime) return kl(family, mu, mu_prime);
  if (family == Family::kBernoulli) {
    check_unit_interval(mu, "mu");
    check_unit_interval(mu_prime, "mu_prime");
  }
  return 0.0;
}

double ucb_solve(Family family, double mu_hat, std::int64_t n, double budget) {
  if (n <= 0) throw std::domain_error("ucb_solve: n must be positive");
  if (std::isnan(budget) || budget == kInfinity) {
    throw std::domain_error("ucb_solve: budget must be finite");
  }
  const double slack = budget - std::log(static_cast<double>(n));
  if (slack <= 0.0) return mu_hat;
  const double count = static_cast<double>(n);
  if (family == Family::kGaussian) return mu_hat + std::sqrt(2.0 * slack / count);
  check_unit_interval(mu_hat, "mu_hat");
  return solve_bernoulli(mu_hat, count, slack);
}

}  // namespace unibandit
