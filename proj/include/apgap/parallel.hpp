// Copyright 2025 the apgap authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace apgap {

// Runs fn(i) for every i in [0, n), dynamically scheduled over `threads`
// workers (<= 1 means inline on the calling thread, 0 picks the hardware
// count). The first worker exception is rethrown after all workers stop.
void parallel_for_dynamic(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace apgap
