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

#ifndef SQCAT_TOOLS_PLOT_SCRIPTS_HPP
#define SQCAT_TOOLS_PLOT_SCRIPTS_HPP

#include <string>

namespace sqcat::cli {

// Matplotlib scripts written next to the CSV files they read.
std::string plot_script_kl_table();
std::string plot_script_sweep();
std::string plot_script_trajectory();
std::string plot_script_wigner();
std::string plot_script_gkp_compare();

}  // namespace sqcat::cli

#endif
