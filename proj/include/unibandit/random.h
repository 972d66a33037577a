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

#ifndef UNIBANDIT_RANDOM_H_
#define UNIBANDIT_RANDOM_H_

#include <cstdint>
#include <limits>

namespace unibandit {

// What a stream is used for. Part of the stream key so that, e.g., the
// configuration draw of replicate k never shares bits with its rewards.
enum class StreamPurpose : std::uint64_t {
  kInitialArm = 1,
  kRewards = 2,
  kConfig = 3,
};

// Counter-based generator: the n-th output is a keyed SplitMix64 finalizer
// of n. Streams are derived, never advanced into one another, so results do
// not depend on which thread consumed what first.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) : key_(key) {}

  // Stream for (master seed, replicate, purpose, lane). `lane` separates
  // e.g. per-arm reward streams within one replicate.
  static RandomStream derive(std::uint64_t master_seed, std::uint64_t replicate,
                             StreamPurpose purpose, std::uint64_t lane = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace unibandit

#endif  // UNIBANDIT_RANDOM_H_
