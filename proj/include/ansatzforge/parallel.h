// Copyright 2026 The AnsatzForge Authors
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

#ifndef ANSATZFORGE_PARALLEL_H
#define ANSATZFORGE_PARALLEL_H

#include <cstddef>
#include <functional>

namespace ansatzforge {

/// Worker count: ANSATZFORGE_THREADS when set to a positive integer, else the
/// hardware concurrency.
int thread_count();

/// Runs fn(0..n-1) across worker threads. Calls made from inside a worker run
/// serially. If any call throws, the exception of the lowest index is rethrown
/// after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

}  // namespace ansatzforge

#endif
