// Copyright 2026 The InfoLaw Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counter-based random numbers (Philox4x32-10). Every stream is addressed
// by (seed, domain, stream id), so draws do not depend on the order or the
// thread in which streams are consumed.

#ifndef INFOLAW_RNG_HPP_
#define INFOLAW_RNG_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace infolaw {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Ten-round Philox4x32 block function.
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

// 64-bit FNV-1a, used to key streams by text such as document ids.
std::uint64_t fnv1a64(std::string_view bytes);

// Domains separating the random streams of different consumers.
enum class RngDomain : std::uint32_t {
  kFitSearch = 1,
  kRecipeSearch = 2,
  kSynthetic = 3,
  kNoise = 4,
  kFitRefine = 5,
  kPackBase = 16,  // + bucket index
};

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint32_t domain, std::uint64_t stream);
  CounterRng(std::uint64_t seed, RngDomain domain, std::uint64_t stream)
      : CounterRng(seed, static_cast<std::uint32_t>(domain), stream) {}

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  // Standard exponential via inversion.
  double exponential();
  // Standard normal via Box-Muller.
  double normal();

 private:
  void refill();

  PhiloxKey key_;
  PhiloxCounter counter_;
  PhiloxCounter block_{};
  int used_ = 4;
};

}  // namespace infolaw

#endif  // INFOLAW_RNG_HPP_
