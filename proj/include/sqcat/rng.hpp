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

#ifndef SQCAT_RNG_HPP
#define SQCAT_RNG_HPP

#include <array>
#include <cstdint>

namespace sqcat {

/// One Philox4x32-10 block.
std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> counter, std::array<uint32_t, 2> key);

/// Independent stream per (seed, stream) pair; the block counter advances
/// within the stream, so results do not depend on scheduling.
class PhiloxStream {
   public:
    PhiloxStream(uint64_t seed, uint64_t stream);

    uint32_t next_u32();
    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();

   private:
    std::array<uint32_t, 2> key_;
    uint64_t stream_;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buffer_{};
    int used_ = 4;
};

}  // namespace sqcat

#endif
