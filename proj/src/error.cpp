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

#include "sqcat/error.hpp"

namespace sqcat {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument:
            return "invalid_argument";
        case ErrorKind::cutoff_insufficient:
            return "cutoff_insufficient";
        case ErrorKind::unsupported_regime:
            return "unsupported_regime";
        case ErrorKind::degenerate_input:
            return "degenerate_input";
        case ErrorKind::lattice_cutoff_insufficient:
            return "lattice_cutoff_insufficient";
        case ErrorKind::grid_out_of_range:
            return "grid_out_of_range";
        case ErrorKind::integrator_failure:
            return "integrator_failure";
        case ErrorKind::sdp_failure:
            return "sdp_failure";
        case ErrorKind::norm_underflow:
            return "norm_underflow";
        case ErrorKind::invalid_config:
            return "invalid_config";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace sqcat
