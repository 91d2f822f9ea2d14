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

#ifndef SQCAT_TOOLS_COMMANDS_HPP
#define SQCAT_TOOLS_COMMANDS_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sqcat/recovery.hpp"

namespace sqcat::cli {

constexpr int kFormatVersion = 1;

const char *version();

/// A fully serializable description of one run. Parameters missing from a
/// config take the command defaults; unknown keys are rejected.
struct RunConfig {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    int formatVersion = kFormatVersion;
};

const std::vector<std::string> &command_names();

/// Default parameter object of a command, which also fixes key types.
nlohmann::json default_parameters(const std::string &command);

/// Fills defaults and checks names and types. Throws invalid_config.
RunConfig normalize(const RunConfig &config);

nlohmann::json to_json(const RunConfig &config);
RunConfig run_config_from_json(const nlohmann::json &j);

/// Round-trip decimal form with 17 significant digits.
std::string format_double(double v);

struct SweepOptions {
    double xiMax = 1.5;
    int rows = 8;
    int cols = 8;
    double kMin = 1e-4;
    double kMax = 1e-1;
    OptimizeOptions optimize;
};

struct SweepCell {
    double k1t = 0.0;
    double k2t = 0.0;
    EncodingResult sc;
    EncodingResult cat;
    double rail = 0.0;
    std::string status = "ok";
};

std::vector<double> log_grid(double lo, double hi, int n);

/// Optimized SC, 2-cat and single-rail fidelities on a log grid. Failed
/// kappa1 rows are reported through the status field.
std::vector<SweepCell> run_sweep(const SweepOptions &options);

/// Runs the command and writes the data files, the metadata sidecar and the
/// plot script into parameters["out"]. Returns the written file names.
std::vector<std::string> run(const RunConfig &config);

/// Command-line entry: exit 0 on success, 2 on a configuration error and 1
/// on a compute error, with an error JSON on stderr.
int main_entry(int argc, char **argv);

}  // namespace sqcat::cli

#endif
