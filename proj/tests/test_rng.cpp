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

#include <doctest.h>

#include <cmath>
#include <set>

#include "infolaw/rng.hpp"

using namespace infolaw;

TEST_CASE("philox known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("fnv1a known answers") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("streams are reproducible and distinct") {
  CounterRng a(42, RngDomain::kRecipeSearch, 7);
  CounterRng b(42, RngDomain::kRecipeSearch, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  std::set<std::uint32_t> firsts;
  for (std::uint64_t s = 0; s < 1000; ++s) firsts.insert(CounterRng(42, RngDomain::kNoise, s).next_u32());
  CHECK(firsts.size() > 995);
  CHECK(CounterRng(1, RngDomain::kNoise, 0).next_u32() != CounterRng(2, RngDomain::kNoise, 0).next_u32());
  CHECK(CounterRng(1, RngDomain::kNoise, 0).next_u32() !=
        CounterRng(1, RngDomain::kSynthetic, 0).next_u32());
}

TEST_CASE("uniform draws are in the open unit interval with the right moments") {
  CounterRng rng(3, RngDomain::kSynthetic, 0);
  double sum = 0, sum2 = 0, exp_sum = 0, normal_sum = 0, normal_sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0);
    REQUIRE(u < 1);
    sum += u;
    sum2 += u * u;
    exp_sum += rng.exponential();
    const double z = rng.normal();
    normal_sum += z;
    normal_sq += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum2 / n == doctest::Approx(1.0 / 3).epsilon(0.01));
  CHECK(exp_sum / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(normal_sum / n) < 0.01);
  CHECK(normal_sq / n == doctest::Approx(1.0).epsilon(0.01));
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.log_uniform(0.01, 10);
    CHECK(v >= 0.01);
    CHECK(v <= 10);
  }
}
