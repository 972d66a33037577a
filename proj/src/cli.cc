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

#include "unibandit/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace unibandit::cli {
namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fixed3(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

[[noreturn]] void field_error(std::string_view field, const std::string& what) {
  throw ConfigError("field '" + std::string(field) + "': " + what);
}

template <typename T>
T get_field(const json& doc, std::string_view field, T fallback) {
  const auto it = doc.find(field);
  if (it == doc.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    field_error(field, e.what());
  }
}

std::int64_t positive_integer(const json& doc, std::string_view field,
                              std::int64_t fallback) {
  const auto it = doc.find(field);
  if (it == doc.end()) return fallback;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
    field_error(field, "expected a positive integer");
  }
  return it->get<std::int64_t>();
}

UnimodalGraph parse_graph(const json& doc, std::size_t arm_count) {
  const auto it = doc.find("graph");
  if (it == doc.end()) return UnimodalGraph::path(arm_count);
  const json& g = *it;
  if (!g.is_object()) field_error("graph", "expected an object");
  const auto kind = get_field<std::string>(g, "kind", "path");
  try {
    if (kind == "path") {
      const auto arms = positive_integer(g, "arms", static_cast<std::int64_t>(arm_count));
      if (static_cast<std::size_t>(arms) != arm_count) {
        field_error("graph.arms", "path has " + std::to_string(arms) +
                                      " arms but the environment has " +
                                      std::to_string(arm_count));
      }
      return UnimodalGraph::path(arm_count);
    }
    if (kind == "tree" || kind == "general") {
      const auto edges_it = g.find("edges");
      if (edges_it == g.end() || !edges_it->is_array()) {
        field_error("graph.edges", "expected an array of [u, v] pairs");
      }
      std::vector<std::pair<ArmId, ArmId>> edges;
      for (const auto& e : *edges_it) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
            !e[1].is_number_unsigned()) {
          field_error("graph.edges", "each edge must be a pair of arm ids");
        }
        edges.emplace_back(e[0].get<ArmId>(), e[1].get<ArmId>());
      }
      return UnimodalGraph::from_edges(
          arm_count, edges,
          kind == "tree" ? UnimodalGraph::Kind::kTree : UnimodalGraph::Kind::kGeneral);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    field_error("graph", e.what());
  }
  field_error("graph.kind", "expected \"path\", \"tree\" or \"general\", got \"" + kind + "\"");
}

EnvironmentSource parse_environment(const json& doc) {
  const auto family_name = get_field<std::string>(doc, "family", "");
  if (family_name.empty()) field_error("family", "missing");
  const auto family = parse_family(family_name);
  if (!family) field_error("family", "expected \"gaussian\" or \"bernoulli\"");

  const bool has_means = doc.contains("means");
  const bool has_random = doc.contains("random");
  if (has_means == has_random) {
    throw ConfigError("exactly one of 'means' or 'random' must be given");
  }
  if (has_random) {
    const json& r = doc["random"];
    if (!r.is_object()) field_error("random", "expected an object");
    const auto arms = positive_integer(r, "arms", 0);
    if (arms < 2) field_error("random.arms", "at least two arms are required");
    if (doc.contains("graph")) {
      const auto kind = get_field<std::string>(doc["graph"], "kind", "path");
      if (kind != "path") field_error("graph.kind", "random environments are paths");
    }
    return RandomEnvironment{static_cast<std::size_t>(arms), *family};
  }
  const auto means = get_field<std::vector<double>>(doc, "means", {});
  if (means.size() < 2) field_error("means", "at least two arms are required");
  UnimodalGraph graph = parse_graph(doc, means.size());
  try {
    return BanditConfig::create(*family, means, std::move(graph));
  } catch (const ConfigError& e) {
    field_error("means", e.what());
  }
}

std::vector<std::int64_t> parse_checkpoints(const json& doc, std::int64_t horizon) {
  const auto it = doc.find("checkpoints");
  if (it == doc.end()) return log_spaced_checkpoints(horizon);
  if (it->is_number_integer()) {
    const auto count = it->get<std::int64_t>();
    if (count < 1) field_error("checkpoints", "count must be positive");
    return log_spaced_checkpoints(horizon, static_cast<std::size_t>(count));
  }
  if (!it->is_array()) field_error("checkpoints", "expected a count or a list of times");
  std::vector<std::int64_t> times;
  for (const auto& t : *it) {
    if (!t.is_number_integer() || t.get<std::int64_t>() < 1) {
      field_error("checkpoints", "times must be positive integers");
    }
    // Times past an overridden horizon are dropped; the horizon is added.
    if (t.get<std::int64_t>() <= horizon) times.push_back(t.get<std::int64_t>());
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.empty() || times.back() != horizon) times.push_back(horizon);
  return times;
}

std::vector<PolicySpec> parse_policies(const std::vector<std::string>& names,
                                       double osub_c) {
  std::vector<PolicySpec> out;
  for (const auto& name : names) {
    const auto kind = parse_policy(name);
    if (!kind) field_error("policies", "unknown policy \"" + name + "\"");
    out.push_back({*kind, osub_c});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
  if (!out) throw ConfigError("failed writing " + path);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

ExperimentSpec parse_experiment(std::string_view json_text, const Overrides& overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

  ExperimentSpec spec;
  spec.environment = parse_environment(doc);
  spec.horizon = overrides.horizon.value_or(positive_integer(doc, "horizon", 1000));
  spec.replicates = overrides.replicates.value_or(positive_integer(doc, "replicates", 1));
  spec.seed = overrides.seed.value_or(get_field<std::uint64_t>(doc, "seed", 0));

  const double osub_c = get_field<double>(doc, "osub_c", 0.0);
  if (!(osub_c >= 0.0)) field_error("osub_c", "must be nonnegative");
  const std::vector<std::string> default_policies{"imed-ub", "klucb-ub", "osub", "imed"};
  spec.policies = parse_policies(
      overrides.policies.value_or(
          get_field<std::vector<std::string>>(doc, "policies", default_policies)),
      osub_c);

  spec.checkpoints = parse_checkpoints(doc, spec.horizon);
  spec.monitors = get_field<bool>(doc, "monitors", false) || overrides.strict_monitors;
  const auto regret = get_field<std::string>(doc, "regret", "pseudo");
  if (regret != "pseudo" && regret != "realized") {
    field_error("regret", "expected \"pseudo\" or \"realized\"");
  }
  spec.realized_regret = regret == "realized";
  validate(spec);
  return spec;
}

ExperimentSpec load_experiment(const std::string& path, const Overrides& overrides) {
  return parse_experiment(read_file(path), overrides);
}

std::string regret_csv(const RunResult& result) {
  std::string out = "policy,t,mean_regret,stderr,replicates\n";
  for (const auto& p : result.policies) {
    const std::string name(policy_name(p.policy.kind));
    for (std::size_t c = 0; c < result.checkpoints.size(); ++c) {
      out += name + ',' + std::to_string(result.checkpoints[c]) + ',' +
             num(p.mean_regret[c]) + ',' + num(p.std_error[c]) + ',' +
             std::to_string(result.replicates) + '\n';
    }
  }
  return out;
}

std::string pulls_csv(const RunResult& result) {
  std::string out = "policy,arm,mean_pulls\n";
  for (const auto& p : result.policies) {
    const std::string name(policy_name(p.policy.kind));
    for (std::size_t a = 0; a < p.mean_pulls.size(); ++a) {
      out += name + ',' + std::to_string(a + 1) + ',' + num(p.mean_pulls[a]) + '\n';
    }
  }
  return out;
}

std::string pulls_path(const std::string& regret_path) {
  constexpr std::string_view kExt = ".csv";
  if (regret_path.size() > kExt.size() &&
      regret_path.compare(regret_path.size() - kExt.size(), kExt.size(), kExt) == 0) {
    return regret_path.substr(0, regret_path.size() - kExt.size()) + "_pulls.csv";
  }
  return regret_path + "_pulls.csv";
}

std::vector<RegretCurve> parse_regret_csv(std::string_view text) {
  auto lines = split(text, '\n');
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != "policy,t,mean_regret,stderr,replicates") {
    throw ConfigError("line 1: expected header policy,t,mean_regret,stderr,replicates");
  }
  if (lines.size() == 1) throw ConfigError("regret table has no data rows");

  std::vector<RegretCurve> curves;
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1) + ": ";
    const auto fields = split(lines[i], ',');
    if (fields.size() != 5 || fields[0].empty()) {
      throw ConfigError(where + "expected 5 comma-separated fields");
    }
    std::int64_t t = 0;
    double mean = 0.0;
    double se = 0.0;
    try {
      std::size_t used = 0;
      t = std::stoll(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument("t");
      mean = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("mean_regret");
      se = std::stod(fields[3], &used);
      if (used != fields[3].size()) throw std::invalid_argument("stderr");
    } catch (const std::exception&) {
      throw ConfigError(where + "malformed number");
    }
    if (t < 1 || !std::isfinite(mean) || !(se >= 0.0)) {
      throw ConfigError(where + "value out of range");
    }
    auto [it, inserted] = slot.try_emplace(fields[0], curves.size());
    if (inserted) curves.push_back({fields[0], {}, {}, {}});
    auto& curve = curves[it->second];
    if (!curve.t.empty() && t <= curve.t.back()) {
      throw ConfigError(where + "times must increase within a policy");
    }
    curve.t.push_back(t);
    curve.mean.push_back(mean);
    curve.std_error.push_back(se);
  }
  return curves;
}

std::string render_svg(const std::vector<RegretCurve>& curves,
                       std::optional<double> lower_bound) {
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 70, kRight = 160, kTop = 30, kBottom = 50;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#ff7f0e", "#9467bd", "#8c564b",
                                            "#e377c2", "#17becf"};
  std::int64_t t_min = curves.front().t.front();
  std::int64_t t_max = t_min;
  double y_max = 0.0;
  for (const auto& c : curves) {
    t_min = std::min(t_min, c.t.front());
    t_max = std::max(t_max, c.t.back());
    for (std::size_t i = 0; i < c.t.size(); ++i) {
      y_max = std::max(y_max, c.mean[i] + c.std_error[i]);
    }
  }
  if (lower_bound) {
    y_max = std::max(y_max, *lower_bound * std::log(static_cast<double>(t_max)));
  }
  y_max = y_max > 0.0 ? 1.05 * y_max : 1.0;
  const double lx_min = std::log10(static_cast<double>(t_min));
  double lx_max = std::log10(static_cast<double>(t_max));
  if (lx_max <= lx_min) lx_max = lx_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x_of = [&](double t) {
    return kLeft + plot_w * (std::log10(t) - lx_min) / (lx_max - lx_min);
  };
  auto y_of = [&](double y) { return kTop + plot_h * (1.0 - y / y_max); };
  auto point = [&](double t, double y) { return fixed3(x_of(t)) + ',' + fixed3(y_of(y)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h << "\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\"/>\n</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (int k = static_cast<int>(std::ceil(lx_min)); k <= static_cast<int>(lx_max); ++k) {
    const double x = x_of(std::pow(10.0, k));
    svg << "<text x=\"" << fixed3(x) << "\" y=\"" << kTop + plot_h + 16 << "\">1e" << k
        << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = y_max * k / 4.0;
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed3(y_of(y) + 4)
        << "\" text-anchor=\"end\">" << fixed3(y) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\">time (log scale)</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">regret</text>\n</g>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* color = kColors[i % std::size(kColors)];
    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (std::size_t j = 0; j < c.t.size(); ++j) {
      svg << (j ? " " : "") << point(static_cast<double>(c.t[j]), c.mean[j] + c.std_error[j]);
    }
    for (std::size_t j = c.t.size(); j-- > 0;) {
      svg << ' '
          << point(static_cast<double>(c.t[j]), std::max(0.0, c.mean[j] - c.std_error[j]));
    }
    svg << "\"/>\n";
    svg << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" d=\"";
    for (std::size_t j = 0; j < c.t.size(); ++j) {
      svg << (j ? " L" : "M") << point(static_cast<double>(c.t[j]), c.mean[j]);
    }
    svg << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * static_cast<double>(i);
    svg << "<text x=\"" << kLeft + plot_w + 12 << "\" y=\"" << fixed3(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
        << c.policy << "</text>\n";
  }

  if (lower_bound) {
    svg << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 4\" points=\"";
    constexpr int kSteps = 64;
    for (int k = 0; k <= kSteps; ++k) {
      const double lx = lx_min + (lx_max - lx_min) * k / kSteps;
      const double t = std::pow(10.0, lx);
      svg << (k ? " " : "") << point(t, *lower_bound * std::log(t));
    }
    svg << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * static_cast<double>(curves.size());
    svg << "<text x=\"" << kLeft + plot_w + 12 << "\" y=\"" << fixed3(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">c log t</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unimodal bandit simulations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  Overrides overrides;
  std::string policies_list;
  std::size_t threads = 0;

  auto* simulate = app.add_subcommand("simulate", "run an experiment and write CSV tables");
  simulate->add_option("--config", config_path, "experiment JSON")->required();
  simulate->add_option("--out", out_path, "regret CSV path")->required();
  simulate->add_option("--seed", overrides.seed, "master seed");
  simulate->add_option("--replicates", overrides.replicates, "number of replicates")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--horizon", overrides.horizon, "number of rounds")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--policies", policies_list, "comma-separated policy names");
  simulate->add_flag("--strict-monitors", overrides.strict_monitors,
                     "enable bound monitors and exit 3 on any violation");
  simulate->add_option("--threads", threads, "worker threads (default BANDIT_THREADS)");

  auto* lowerbound = app.add_subcommand("lowerbound", "print the asymptotic regret constant");
  lowerbound->add_option("--config", config_path, "experiment JSON")->required();
  lowerbound->add_option("--out", out_path, "optional CSV of the per-neighbor terms");

  std::string csv_path;
  std::optional<double> reference;
  auto* plot = app.add_subcommand("plot", "render a regret CSV as SVG");
  plot->add_option("--csv", csv_path, "regret CSV written by simulate")->required();
  plot->add_option("--out", out_path, "SVG path")->required();
  plot->add_option("--lower-bound", reference, "draw c * log t for this c");

  auto* validate_cmd = app.add_subcommand("validate", "check an experiment description");
  validate_cmd->add_option("--config", config_path, "experiment JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  if (!policies_list.empty()) overrides.policies = split(policies_list, ',');

  try {
    if (*simulate) {
      const ExperimentSpec spec = load_experiment(config_path, overrides);
      const RunResult result = run_experiment(spec, threads);
      write_file(out_path, regret_csv(result));
      write_file(pulls_path(out_path), pulls_csv(result));

      std::int64_t violations = 0;
      for (const auto& p : result.policies) {
        out << policy_name(p.policy.kind) << ": mean regret at t=" << spec.horizon
            << " is " << num(p.mean_regret.back()) << " (stderr "
            << num(p.std_error.back()) << ")\n";
        if (spec.monitors && has_empirical_bounds(p.policy.kind)) {
          out << "  monitored steps " << p.monitor.checked_steps << ", skipped "
              << p.monitor.skipped_steps << ", void index bound "
              << p.monitor.gamma_zero_steps << ", violations "
              << p.monitor.total_violations() << '\n';
          for (const auto& v : p.monitor.log) {
            err << policy_name(p.policy.kind) << " violates " << v.check << ": "
                << num(v.lhs) << " > " << num(v.rhs) << " [" << v.snapshot << "]\n";
          }
        }
        violations += p.monitor.total_violations();
      }
      if (overrides.strict_monitors && violations > 0) return kExitMonitorViolation;
      return kExitOk;
    }
    if (*lowerbound) {
      const ExperimentSpec spec = load_experiment(config_path);
      const auto* config = std::get_if<BanditConfig>(&spec.environment);
      if (!config) {
        err << "error: lowerbound needs a fixed environment, not a random generator\n";
        return kExitInputError;
      }
      std::string table = "arm,mean,gap,kl,term\n";
      for (const auto& term : lower_bound_terms(*config)) {
        const double mu = config->mean(term.arm);
        const double divergence = kl(config->family(), mu, config->best_mean());
        out << "neighbor " << term.arm << ": gap / KL = " << num(term.value) << '\n';
        table += std::to_string(term.arm) + ',' + num(mu) + ',' +
                 num(config->gap(term.arm)) + ',' + num(divergence) + ',' +
                 num(term.value) + '\n';
      }
      const double c = lower_bound_constant(*config);
      out << "lower bound constant: " << num(c) << '\n';
      if (!out_path.empty()) write_file(out_path, table + "total,,,," + num(c) + '\n');
      return kExitOk;
    }
    if (*plot) {
      const auto curves = parse_regret_csv(read_file(csv_path));
      write_file(out_path, render_svg(curves, reference));
      return kExitOk;
    }
    if (*validate_cmd) {
      load_experiment(config_path);
      out << "ok\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace unibandit::cli
