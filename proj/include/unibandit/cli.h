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

#ifndef UNIBANDIT_CLI_H_
#define UNIBANDIT_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unibandit/runner.h"

namespace unibandit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitMonitorViolation = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> replicates;
  std::optional<std::int64_t> horizon;
  std::optional<std::vector<std::string>> policies;
  bool strict_monitors = false;
};

// Parses an experiment description (JSON text). Throws ConfigError naming
// the offending field, or carrying the parser's line/column on bad JSON.
ExperimentSpec parse_experiment(std::string_view json_text,
                                const Overrides& overrides = {});
ExperimentSpec load_experiment(const std::string& path,
                               const Overrides& overrides = {});

// Aggregate table: policy,t,mean_regret,stderr,replicates
std::string regret_csv(const RunResult& result);
// Per-arm table: policy,arm,mean_pulls
std::string pulls_csv(const RunResult& result);
// Companion path of the pulls table: "x.csv" -> "x_pulls.csv".
std::string pulls_path(const std::string& regret_path);

struct RegretCurve {
  std::string policy;
  std::vector<std::int64_t> t;
  std::vector<double> mean;
  std::vector<double> std_error;
};

// Reads a regret table back; throws ConfigError on malformed input or an
// empty body.
std::vector<RegretCurve> parse_regret_csv(std::string_view text);

// Regret against log-scaled time, one mean curve per policy with a
// +/- one standard error band. `lower_bound`, when given, adds the
// reference curve lower_bound * log t.
std::string render_svg(const std::vector<RegretCurve>& curves,
                       std::optional<double> lower_bound = std::nullopt);

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unibandit::cli

#endif  // UNIBANDIT_CLI_H_
