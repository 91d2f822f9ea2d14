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

#ifndef SQCAT_TRAJECTORY_HPP
#define SQCAT_TRAJECTORY_HPP

#include <cstdint>
#include <vector>

#include "sqcat/noise.hpp"
#include "sqcat/recovery.hpp"

namespace sqcat {

/// Recovery in branch form: R_r = C kraus[r] E^dag plus Q = 1 - E E^dag.
/// An empty operator list means no recovery at all.
struct TrajectoryRecovery {
    Eigen::MatrixXcd modeled;                 // E, first two columns are C
    std::vector<Eigen::MatrixXcd> kraus;     // 2 x D each

    static TrajectoryRecovery none();
    static TrajectoryRecovery from_solution(const RecoverySolution &sol, const RecoveryBasis &basis);
    bool active() const {
        return !kraus.empty();
    }
    Channel channel() const;
};

struct TrajectoryConfig {
    StateVector initial;
    /// P(t) = 1 - |<reference|psi>|^2; defaults to the initial state.
    StateVector reference;
    NoiseParams p;
    TrajectoryRecovery recovery;
    int nPeriods = 5;
    uint64_t seed = 0;
    uint64_t stream = 0;
    int stepsPerPeriod = 100;
    bool disableJumps = false;
};

enum class JumpType { loss, dephasing };

struct JumpEvent {
    double time = 0.0;
    JumpType type = JumpType::loss;
    double pAfter = 0.0;
};

struct RecoveryEvent {
    double time = 0.0;
    int branch = 0;          // index into kraus, or -1 for Q
    double pBefore = 0.0;
    double pAfter = 0.0;
};

struct TrajectoryRecord {
    /// Sampled on the stepsPerPeriod grid. Every period end appears twice:
    /// before the recovery, then after it (afterRecovery = true).
    std::vector<double> times;
    std::vector<double> pValues;
    std::vector<bool> afterRecovery;
    std::vector<JumpEvent> jumps;
    std::vector<RecoveryEvent> recoveries;
};

TrajectoryRecord run_trajectory(const TrajectoryConfig &cfg);

struct EnsembleResult {
    std::vector<double> times;
    std::vector<bool> afterRecovery;
    std::vector<double> meanP;
    std::vector<double> stderrP;
    int nTrajectories = 0;
};

/// Trajectory i uses stream cfg.stream + i.
EnsembleResult ensemble_average(const TrajectoryConfig &cfg, int n_traj);

struct MasterEquationResult {
    std::vector<double> times;
    std::vector<bool> afterRecovery;
    std::vector<double> pValues;
};

/// rho stepped by evolve on the sampling grid, recovery applied at each
/// period end; P = 1 - <ref|rho|ref>.
MasterEquationResult master_equation_p(const StateVector &initial, const StateVector &reference,
                                       const NoiseParams &p, const TrajectoryRecovery &recovery, int n_periods,
                                       int samples_per_period);

}  // namespace sqcat

#endif
