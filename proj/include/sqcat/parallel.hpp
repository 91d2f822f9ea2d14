// Copyright 2026 The sqcat Authors
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

#ifndef SQCAT_PARALLEL_HPP
#define SQCAT_PARALLEL_HPP

#include <functional>

namespace sqcat {

/// Worker count from SQCAT_THREADS, else the hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n) on a shared work queue. Exceptions from the
/// body are rethrown on the calling thread (first one wins).
void parallel_for(int n, const std::function<void(int)> &body);

}  // namespace sqcat

#endif
