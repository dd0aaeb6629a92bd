// Copyright 2026 The eprb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eprb/verify.h"

#include "gtest/gtest.h"

using namespace eprb;

TEST(property_suites, all_pass_with_enough_cases) {
  for (std::uint64_t seed : {1ull, 20261014ull}) {
    const auto results = run_property_suites(seed, 1000);
    EXPECT_GE(results.size(), 20u);
    for (const PropertyResult& r : results) {
      EXPECT_TRUE(r.passed) << r.name << " seed " << seed << ": " << r.failure;
      EXPECT_GE(r.cases, 1000u) << r.name;
    }
  }
}
