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

#include "sqcat/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "sqcat/error.hpp"

namespace sqcat {

int thread_count() {
    if (const char *env = std::getenv("SQCAT_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 1024) {
            fail(ErrorKind::invalid_config, std::string("SQCAT_THREADS must be a positive integer, got '") + env + "'");
        }
        return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)> &body) {
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; i++) {
            body(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first;
    std::mutex lock;
    auto work = [&]() {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> guard(lock);
                if (!first) {
                    first = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; t++) {
        pool.emplace_back(work);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (first) {
        std::rethrow_exception(first);
    }
}

}  // namespace sqcat
