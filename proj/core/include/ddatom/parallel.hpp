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

#ifndef DDATOM_PARALLEL_HPP
#define DDATOM_PARALLEL_HPP

#include <functional>

namespace ddatom {

// Worker count for data-parallel loops: the DDATOM_WORKERS environment
// variable when set to a positive integer, otherwise the hardware
// concurrency. Affects wall time only; results are assembled by index and
// never depend on scheduling.
int worker_count();

// Runs fn(i) for i in [0, count) on up to worker_count() threads. fn must
// write its result to a slot owned by index i. Exceptions from workers are
// rethrown on the calling thread.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace ddatom

#endif  // DDATOM_PARALLEL_HPP
