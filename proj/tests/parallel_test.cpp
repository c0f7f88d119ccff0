// Copyright 2026 The ddatom Authors
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

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ddatom/parallel.hpp"
#include "doctest.h"

using namespace ddatom;

namespace {
// RAII guard: sets DDATOM_WORKERS for one scope, restores on exit.
struct WorkersEnv {
  explicit WorkersEnv(const char* value) {
    const char* old = std::getenv("DDATOM_WORKERS");
    saved = old ? old : "";
    had = old != nullptr;
    if (value) {
      setenv("DDATOM_WORKERS", value, 1);
    } else {
      unsetenv("DDATOM_WORKERS");
    }
  }
  ~WorkersEnv() {
    if (had) {
      setenv("DDATOM_WORKERS", saved.c_str(), 1);
    } else {
      unsetenv("DDATOM_WORKERS");
    }
  }
  std::string saved;
  bool had = false;
};
}  // namespace

TEST_SUITE_BEGIN("parallel");

TEST_CASE("worker count honors the environment") {
  {
    WorkersEnv env("3");
    CHECK(worker_count() == 3);
  }
  {
    WorkersEnv env("1");
    CHECK(worker_count() == 1);
  }
  // Junk and non-positive values fall back to the hardware count.
  {
    WorkersEnv env(nullptr);
    const int hardware = worker_count();
    CHECK(hardware >= 1);
    WorkersEnv zero("0");
    CHECK(worker_count() == hardware);
    WorkersEnv junk("abc");
    CHECK(worker_count() == hardware);
  }
}

TEST_CASE("parallel_for covers every index exactly once") {
  for (const char* workers : {"1", "4"}) {
    WorkersEnv env(workers);
    std::vector<int> slot(1000, 0);
    parallel_for(1000, [&](int i) { slot[i] += i; });
    long long sum = std::accumulate(slot.begin(), slot.end(), 0LL);
    CHECK(sum == 999LL * 1000 / 2);
    CHECK(slot[0] == 0);
    CHECK(slot[999] == 999);
  }
  // Empty range is a no-op.
  parallel_for(0, [](int) { throw std::logic_error("must not run"); });
}

TEST_CASE("worker exceptions surface on the caller") {
  WorkersEnv env("4");
  CHECK_THROWS_AS(
      parallel_for(64,
                   [](int i) {
                     if (i == 57) throw std::runtime_error("boom");
                   }),
      std::runtime_error);
}

TEST_SUITE_END();
