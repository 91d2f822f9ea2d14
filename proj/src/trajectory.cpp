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

#include "sqcat/trajectory.hpp"

#include <cmath>
#include <string>

#include "sqcat/error.hpp"
#include "sqcat/parallel.hpp"
#include "sqcat/rng.hpp"

namespace sqcat {

namespace {

struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double p_value(const StateVector &reference, const StateVector &psi) {
    return 1.0 - std::norm(reference.dot(psi)) / psi.squaredNorm();
}

// No-jump evolution under the diagonal effective Hamiltonian, exact.
struct Drift {
    Eigen::ArrayXd rate;  // kappa1 n + kappa2 n^2

    Drift(const NoiseParams &p, Eigen::Index dim) : rate(dim) {
        for (Eigen::Index n = 0; n < dim; n++) {
            double x = static_cast<double>(n);
            rate[n] = p.kappa1_tau * x + p.kappa2_tau * x * x;
        }
    }
    StateVector propagate(const StateVector &psi, double dt) const {
        return (psi.array() * (-0.5 * dt * rate).exp()).matrix();
    }
    double norm2(const Eigen::ArrayXd &pop, double dt) const {
        return (pop * (-dt * rate).exp()).sum();
    }
};

}  // namespace

TrajectoryRecovery TrajectoryRecovery::none() {
    return TrajectoryRecovery{};
}

TrajectoryRecovery TrajectoryRecovery::from_solution(const RecoverySolution &sol, const RecoveryBasis &basis) {
    if (sol.krausCompact.empty()) {
        fail(ErrorKind::invalid_argument, "recovery has no extracted Kraus operators");
    }
    TrajectoryRecovery r;
    r.modeled = basis.modeled;
    r.kraus = sol.krausCompact;
    return r;
}

Channel TrajectoryRecovery::channel() const {
    if (!active()) {
        return [](const DensityMatrix &rho) { return rho; };
    }
    return recovery_channel(modeled, kraus);
}

TrajectoryRecord run_trajectory(const TrajectoryConfig &cfg) {
    if (cfg.stepsPerPeriod < 100 || cfg.nPeriods < 0) {
        fail(ErrorKind::invalid_argument, "trajectory needs stepsPerPeriod >= 100 and nPeriods >= 0");
    }
    if (cfg.p.kappa1_tau < 0.0 || cfg.p.kappa2_tau < 0.0) {
        fail(ErrorKind::invalid_argument, "noise rates must be non-negative");
    }
    Eigen::Index dim = cfg.initial.size();
    StateVector reference = cfg.reference.size() == 0 ? cfg.initial : cfg.reference;
    if (reference.size() != dim || (cfg.recovery.active() && cfg.recovery.modeled.rows() != dim)) {
        fail(ErrorKind::invalid_argument, "trajectory dimensions do not match");
    }
    double n0 = cfg.initial.norm();
    if (!(n0 > 0.0)) {
        fail(ErrorKind::invalid_argument, "initial state has zero norm");
    }
    reference /= reference.norm();

    Drift drift(cfg.p, dim);
    PhiloxStream rng(cfg.seed, cfg.stream);
    Eigen::ArrayXd number = Eigen::ArrayXd::LinSpaced(dim, 0.0, static_cast<double>(dim - 1));

    StateVector anchor = cfg.initial / n0;  // normalized at anchor_time
    double anchor_time = 0.0;
    Eigen::ArrayXd pop = anchor.array().abs2();
    double threshold = rng.uniform();

    TrajectoryRecord rec;
    auto sample = [&](double t, const StateVector &psi, bool after) {
        rec.times.push_back(t);
        rec.pValues.push_back(p_value(reference, psi));
        rec.afterRecovery.push_back(after);
    };
    auto reanchor = [&](const StateVector &psi, double t) {
        anchor = psi;
        anchor_time = t;
        pop = anchor.array().abs2();
        threshold = rng.uniform();
    };
    sample(0.0, anchor, false);

    bool jumps = !cfg.disableJumps && (cfg.p.kappa1_tau > 0.0 || cfg.p.kappa2_tau > 0.0);
    double t_now = 0.0;
    for (int k = 0; k < cfg.nPeriods; k++) {
        for (int j = 1; j <= cfg.stepsPerPeriod; j++) {
            double t_next = static_cast<double>(k) + static_cast<double>(j) / cfg.stepsPerPeriod;
            while (jumps && drift.norm2(pop, t_next - anchor_time) <= threshold) {
                // Survival is monotone in time: bisect for norm^2 = threshold.
                double lo = t_now - anchor_time, hi = t_next - anchor_time;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); it++) {
                    double mid = 0.5 * (lo + hi);
                    if (drift.norm2(pop, mid) > threshold) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                double t_jump = anchor_time + hi;
                StateVector psi = drift.propagate(anchor, hi);
                psi /= psi.norm();
                Eigen::ArrayXd w = psi.array().abs2();
                double r1 = cfg.p.kappa1_tau * (w * number).sum();
                double r2 = cfg.p.kappa2_tau * (w * number * number).sum();
                JumpEvent ev;
                ev.time = t_jump;
                ev.type = rng.uniform() * (r1 + r2) < r1 ? JumpType::loss : JumpType::dephasing;
                psi = ev.type == JumpType::loss ? apply_destroy(psi) : apply_number(psi, 1);
                double nrm = psi.norm();
                if (!(nrm > 1e-300) || !std::isfinite(nrm)) {
                    fail(ErrorKind::norm_underflow, "state norm vanished after a jump at t = " + std::to_string(t_jump));
                }
                psi /= nrm;
                ev.pAfter = p_value(reference, psi);
                rec.jumps.push_back(ev);
                reanchor(psi, t_jump);
                t_now = t_jump;
            }
            t_now = t_next;
            StateVector psi = drift.propagate(anchor, t_now - anchor_time);
            double nrm = psi.norm();
            if (!(nrm > 1e-300)) {
                fail(ErrorKind::norm_underflow, "no-jump state norm underflow at t = " + std::to_string(t_now));
            }
            psi /= nrm;
            sample(t_now, psi, false);
            if (j == cfg.stepsPerPeriod) {
                if (cfg.recovery.active()) {
                    const Eigen::MatrixXcd &e = cfg.recovery.modeled;
                    Eigen::VectorXcd v = e.adjoint() * psi;
                    std::vector<Eigen::VectorXcd> outs;
                    std::vector<double> probs;
                    double total = 0.0;
                    for (const auto &r : cfg.recovery.kraus) {
                        outs.push_back(r * v);
                        probs.push_back(outs.back().squaredNorm());
                        total += probs.back();
                    }
                    StateVector q = psi - e * v;
                    double pq = q.squaredNorm();
                    total += pq;
                    double x = rng.uniform() * total;
                    RecoveryEvent ev;
                    ev.time = t_now;
                    ev.pBefore = rec.pValues.back();
                    ev.branch = -1;
                    double acc = 0.0;
                    for (size_t r = 0; r < probs.size(); r++) {
                        acc += probs[r];
                        if (x < acc) {
                            ev.branch = static_cast<int>(r);
                            break;
                        }
                    }
                    if (ev.branch < 0 && pq <= 0.0) {
                        ev.branch = static_cast<int>(probs.size()) - 1;  // rounding at the top end
                    }
                    if (ev.branch >= 0) {
                        psi = e.leftCols(2) * outs[static_cast<size_t>(ev.branch)];
                    } else {
                        psi = q;
                    }
                    psi /= psi.norm();
                    reanchor(psi, t_now);
                    ev.pAfter = p_value(reference, psi);
                    rec.recoveries.push_back(ev);
                }
                sample(t_now, psi, true);
            }
        }
    }
    return rec;
}

EnsembleResult ensemble_average(const TrajectoryConfig &cfg, int n_traj) {
    if (n_traj < 1) {
        fail(ErrorKind::invalid_argument, "ensemble needs at least one trajectory");
    }
    std::vector<TrajectoryRecord> recs(static_cast<size_t>(n_traj));
    parallel_for(n_traj, [&](int i) {
        TrajectoryConfig c = cfg;
        c.stream = cfg.stream + static_cast<uint64_t>(i);
        recs[static_cast<size_t>(i)] = run_trajectory(c);
    });
    EnsembleResult out;
    out.nTrajectories = n_traj;
    out.times = recs[0].times;
    out.afterRecovery = recs[0].afterRecovery;
    size_t len = out.times.size();
    for (size_t s = 0; s < len; s++) {
        Kahan sum, sq;
        for (const auto &r : recs) {
            sum.add(r.pValues[s]);
            sq.add(r.pValues[s] * r.pValues[s]);
        }
        double mean = sum.sum / n_traj;
        double var = n_traj > 1 ? std::max(0.0, (sq.sum - n_traj * mean * mean) / (n_traj - 1)) : 0.0;
        out.meanP.push_back(mean);
        out.stderrP.push_back(std::sqrt(var / n_traj));
    }
    return out;
}

MasterEquationResult master_equation_p(const StateVector &initial, const StateVector &reference,
                                       const NoiseParams &p, const TrajectoryRecovery &recovery, int n_periods,
                                       int samples_per_period) {
    if (samples_per_period < 1 || n_periods < 0) {
        fail(ErrorKind::invalid_argument, "master equation needs samples_per_period >= 1");
    }
    StateVector ref = reference.size() == 0 ? initial : reference;
    ref /= ref.norm();
    StateVector psi = initial / initial.norm();
    DensityMatrix rho = psi * psi.adjoint();
    NoiseParams step{p.kappa1_tau / samples_per_period, p.kappa2_tau / samples_per_period};
    Channel rec = recovery.channel();
    MasterEquationResult out;
    auto sample = [&](double t, bool after) {
        out.times.push_back(t);
        out.pValues.push_back(1.0 - ref.dot(rho * ref).real());
        out.afterRecovery.push_back(after);
    };
    sample(0.0, false);
    for (int k = 0; k < n_periods; k++) {
        for (int j = 1; j <= samples_per_period; j++) {
            rho = evolve(rho, step);
            sample(static_cast<double>(k) + static_cast<double>(j) / samples_per_period, false);
        }
        rho = rec(rho);
        sample(static_cast<double>(k + 1), true);
    }
    return out;
}

}  // namespace sqcat
