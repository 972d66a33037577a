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

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unibandit {
namespace {

class Auditor {
 public:
  Auditor(const PolicyState& pre, const Decision& decision,
          std::vector<ArmId> involved)
      : pre_(pre), decision_(decision), involved_(std::move(involved)) {}

  bool any_unpulled() const {
    return std::any_of(involved_.begin(), involved_.end(),
                       [&](ArmId a) { return pre_.pulls(a) == 0; });
  }

  void require(std::string_view check, double lhs, double rhs) {
    if (lhs <= rhs + kBoundTolerance) return;
    violations_.push_back({std::string(check), pre_.t(), decision_.arm,
                           decision_.leader, lhs, rhs, snapshot()});
  }

  std::vector<BoundViolation> take() { return std::move(violations_); }

 private:
  std::string snapshot() const {
    std::ostringstream out;
    out.precision(17);
    out << "t=" << pre_.t() << " leader=" << decision_.leader;
    if (decision_.follower) out << " follower=" << *decision_.follower;
    out << " next=" << decision_.arm << " |";
    for (ArmId a : involved_) {
      out << ' ' << a << ":N=" << pre_.pulls(a) << ",mu=" << pre_.mean(a);
    }
    return out.str();
  }

  const PolicyState& pre_;
  const Decision& decision_;
  std::vector<ArmId> involved_;
  std::vector<BoundViolation> violations_;
};

double n_of(const PolicyState& s, ArmId a) {
  return static_cast<double>(s.pulls(a));
}

double log_n(const PolicyState& s, ArmId a) { return std::log(n_of(s, a)); }

}  // namespace

bool has_empirical_bounds(PolicyKind kind) {
  return kind == PolicyKind::kImedUb || kind == PolicyKind::kKlucbUb ||
         kind == PolicyKind::kDimedUb;
}

BoundCheckResult check_empirical_bounds(PolicyKind kind, const PolicyState& pre,
                                        const Decision& decision,
                                        const UnimodalGraph& graph) {
  BoundCheckResult result;
  if (!has_empirical_bounds(kind)) return result;
  const ArmId leader = decision.leader;
  const ArmId next = decision.arm;
  std::vector<ArmId> involved = leader_neighborhood(graph, leader);
  if (std::find(involved.begin(), involved.end(), next) == involved.end()) {
    involved.push_back(next);
  }
  for (ArmId a : decision.candidates) {
    if (std::find(involved.begin(), involved.end(), a) == involved.end()) {
      involved.push_back(a);
    }
  }
  std::sort(involved.begin(), involved.end());

  Auditor audit(pre, decision, involved);
  if (audit.any_unpulled()) {
    result.skipped = true;
    return result;
  }

  const Family family = pre.family();
  const double best = pre.best_mean();
  const double log_t = std::log(static_cast<double>(pre.t()));
  const double next_transport = n_of(pre, next) * kl(family, pre.mean(next), best);

  bool index_bound_applies = true;
  if (kind == PolicyKind::kKlucbUb) {
    index_bound_applies = pre.mean(next) == best || log_n(pre, next) <= next_transport;
    result.gamma_zero = !index_bound_applies;
  }
  if (index_bound_applies) {
    for (ArmId a : graph.neighbors(leader)) {
      audit.require(bound_check::kNeighborIndex, log_n(pre, next),
                    imed_index(pre, a));
    }
  }
  audit.require(bound_check::kLeaderPulls, n_of(pre, next), n_of(pre, leader));

  if (kind != PolicyKind::kDimedUb) {
    audit.require(bound_check::kTransport, next_transport, log_t);
    result.violations = audit.take();
    return result;
  }

  const ArmId follower = decision.follower.value_or(leader);
  const double follower_kl = kl(family, pre.mean(follower), best);
  audit.require(bound_check::kFollowerTransport,
                n_of(pre, follower) * follower_kl, log_t);
  if (decision.follower) {
    for (ArmId a : decision.candidates) {
      audit.require(bound_check::kSecondOrderIndex, log_n(pre, next),
                    second_order_index(pre, a, follower));
    }
    audit.require(bound_check::kSecondOrderPulls, n_of(pre, next),
                  n_of(pre, follower));
    audit.require(bound_check::kSecondOrderPulls, n_of(pre, follower),
                  n_of(pre, leader));
    const double second_transport =
        n_of(pre, next) * kl_plus(family, pre.mean(next), pre.mean(follower));
    audit.require(bound_check::kSecondOrderTransport, second_transport,
                  log_n(pre, follower));
    if (follower_kl > 0.0 && log_t > 0.0) {
      audit.require(bound_check::kSecondOrderLogLog, second_transport,
                    std::log(log_t / follower_kl));
    }
  }
  result.violations = audit.take();
  return result;
}

void MonitorTally::record(const BoundCheckResult& result, std::size_t max_logged) {
  if (result.skipped) {
    ++skipped_steps;
    return;
  }
  ++checked_steps;
  if (result.gamma_zero) ++gamma_zero_steps;
  for (const auto& v : result.violations) {
    ++violations[v.check];
    if (log.size() < max_logged) log.push_back(v);
  }
}

void MonitorTally::merge(const MonitorTally& other, std::size_t max_logged) {
  checked_steps += other.checked_steps;
  skipped_steps += other.skipped_steps;
  gamma_zero_steps += other.gamma_zero_steps;
  for (const auto& [check, count] : other.violations) violations[check] += count;
  for (const auto& v : other.log) {
    if (log.size() >= max_logged) break;
    log.push_back(v);
  }
}

std::int64_t MonitorTally::total_violations() const {
  std::int64_t total = 0;
  for (const auto& [check, count] : violations) total += count;
  return total;
}

}  // namespace unibandit
