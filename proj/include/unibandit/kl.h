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

#ifndef UNIBANDIT_KL_H_
#define UNIBANDIT_KL_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

namespace unibandit {

// Reward distribution family shared by every arm of a configuration.
enum class Family { kGaussian, kBernoulli };

// Extended-real infinity. IEEE infinity orders above every finite value,
// which is what the argmin/argmax selections rely on.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

// KL between unit-variance Gaussians: (mu_prime - mu)^2 / 2.
double kl_gaussian(double mu, double mu_prime);

// Binary KL with the 0 log 0 = 0 convention. Returns +inf when the second
// mean sits on a boundary the first does not share. Throws std::domain_error
// outside [0, 1].
double kl_bernoulli(double mu, double mu_prime);

double kl(Family family, double mu, double mu_prime);

// Truncated divergence: KL(mu|mu_prime) if mu < mu_prime, else 0.
double kl_plus(Family family, double mu, double mu_prime);

// Largest u >= mu_hat with n * KL(mu_hat|u) <= budget - log(n).
//
// A negative slack budget - log(n) yields mu_hat. The Gaussian case is
// closed form; the Bernoulli case bisects on [mu_hat, 1] and returns the
// feasible end of the final bracket, so n * kl(mu_hat|u) never exceeds the
// slack. Throws std::domain_error when n == 0 or budget is NaN or +inf.
double ucb_solve(Family family, double mu_hat, std::int64_t n, double budget);

// The bisection halves until the bracket can no longer shrink in double
// precision (about 53 steps on [0, 1]), well inside 1e-9 on u.
inline constexpr int kUcbMaxIterations = 100;

}  // namespace unibandit

#endif  // UNIBANDIT_KL_H_
