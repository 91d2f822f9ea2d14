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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "plot_scripts.hpp"
#include "sqcat/error.hpp"
#include "sqcat/kl.hpp"
#include "sqcat/parallel.hpp"
#include "sqcat/states.hpp"
#include "sqcat/subspaces.hpp"
#include "sqcat/trajectory.hpp"

#ifndef SQCAT_VERSION
#define SQCAT_VERSION "0.0.0"
#endif

namespace sqcat::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string &message) {
    fail(ErrorKind::invalid_config, message);
}

const std::map<std::string, json> &defaults_table() {
    static const std::map<std::string, json> table = {
        {"kl-table", {{"alpha", 1.0}, {"xi", 0.0}, {"cutoff", 0}, {"out", "."}}},
        {"sweep",
         {{"xi_max", 1.5},
          {"grid", "8x8"},
          {"k_min", 1e-4},
          {"k_max", 1e-1},
          {"alpha_points", 21},
          {"xi_points", 11},
          {"refine_evaluations", 40},
          {"out", "."}}},
        {"optimize",
         {{"k1t", 1e-3},
          {"k2t", 1e-3},
          {"xi_max", 1.5},
          {"alpha_points", 21},
          {"xi_points", 11},
          {"refine_evaluations", 40},
          {"out", "."}}},
        {"trajectory",
         {{"alpha", 0.55},
          {"xi", 1.5},
          {"k1t", 1e-3},
          {"k2t", 1e-3},
          {"periods", 5},
          {"steps", 100},
          {"seed", 7},
          {"n_traj", 2000},
          {"saved", 8},
          {"cutoff", 0},
          {"out", "."}}},
        {"wigner",
         {{"alpha", 1.0}, {"xi", 0.5}, {"extent", 3.0}, {"points", 61}, {"cutoff", 0}, {"out", "."}}},
        {"gkp-compare",
         {{"alpha", 1.0}, {"xi", json::array({0.25, 0.5, 0.75, 1.0, 1.25, 1.5})}, {"out", "."}}},
    };
    return table;
}

bool same_kind(const json &def, const json &v) {
    if (def.is_number_float()) {
        return v.is_number();
    }
    if (def.is_number_integer()) {
        return v.is_number_integer();
    }
    if (def.is_string()) {
        return v.is_string();
    }
    if (def.is_array()) {
        return v.is_array() && std::all_of(v.begin(), v.end(), [](const json &x) { return x.is_number(); });
    }
    return false;
}

double real_param(const json &params, const char *key) {
    return params.at(key).get<double>();
}

long long integer(const json &params, const char *key) {
    return params.at(key).get<long long>();
}

int positive_int(const json &params, const char *key) {
    long long v = integer(params, key);
    if (v < 1 || v > 100000000) {
        bad_config(std::string(key) + " must be a positive integer");
    }
    return static_cast<int>(v);
}

int cutoff_override(const json &params) {
    long long v = integer(params, "cutoff");
    if (v < 0 || v > 100000) {
        bad_config("cutoff must be 0 (automatic) or a positive integer");
    }
    return static_cast<int>(v);
}

class CsvWriter {
   public:
    explicit CsvWriter(std::vector<std::string> header) : width_(header.size()) {
        rows_.push_back(std::move(header));
    }

    class Row {
       public:
        explicit Row(CsvWriter &w) : w_(w) {}
        Row &operator<<(double v) {
            if (!std::isfinite(v)) {
                fail(ErrorKind::invalid_argument, "non-finite value in column '" + w_.rows_[0][cells_.size()] + "'");
            }
            cells_.push_back(format_double(v));
            return *this;
        }
        Row &operator<<(int v) {
            cells_.push_back(std::to_string(v));
            return *this;
        }
        Row &operator<<(const std::string &v) {
            cells_.push_back(v);
            return *this;
        }
        Row &operator<<(const char *v) {
            cells_.emplace_back(v);
            return *this;
        }
        ~Row() {
            w_.rows_.push_back(std::move(cells_));
        }

       private:
        CsvWriter &w_;
        std::vector<std::string> cells_;
    };

    Row row() {
        return Row(*this);
    }

    void write(const std::filesystem::path &path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            bad_config("cannot write " + path.string());
        }
        for (const auto &r : rows_) {
            if (r.size() != width_) {
                fail(ErrorKind::invalid_argument, "CSV row width mismatch in " + path.string());
            }
            for (size_t k = 0; k < r.size(); k++) {
                out << (k ? "," : "") << r[k];
            }
            out << '\n';
        }
    }

    size_t data_rows() const {
        return rows_.size() - 1;
    }

   private:
    size_t width_;
    std::vector<std::vector<std::string>> rows_;
};

struct Output {
    std::filesystem::path dir;
    std::vector<std::string> files;
    json summary = json::object();
    std::vector<std::string> warnings;

    void csv(const std::string &name, const CsvWriter &w) {
        w.write(dir / name);
        files.push_back(name);
    }
    void text(const std::string &name, const std::string &content) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) {
            bad_config("cannot write " + (dir / name).string());
        }
        out << content;
        files.push_back(name);
    }
};

Output make_output(const json &params) {
    Output o;
    o.dir = params.at("out").get<std::string>();
    std::error_code ec;
    std::filesystem::create_directories(o.dir, ec);
    if (ec || !std::filesystem::is_directory(o.dir)) {
        bad_config("output directory " + o.dir.string() + " is not writable");
    }
    return o;
}

void finish(Output &o, const RunConfig &config, const std::string &stem) {
    json meta;
    meta["config"] = to_json(config);
    meta["version"] = version();
    meta["formatVersion"] = kFormatVersion;
    std::vector<std::string> files = o.files;
    files.push_back(stem + ".json");
    meta["files"] = files;
    meta["summary"] = o.summary;
    meta["warnings"] = o.warnings;
    std::ofstream out(o.dir / (stem + ".json"), std::ios::binary);
    out << meta.dump(2) << '\n';
    o.files.push_back(stem + ".json");
}

const char *error_name(int k) {
    static const char *names[] = {"1", "a", "n", "n2"};
    return names[k];
}

SCParams sc_params(double alpha, double xi, int cutoff) {
    SCParams p = make_sc_params(alpha, xi);
    if (cutoff > 0) {
        p.cutoff = cutoff;
    }
    return p;
}

void run_kl_table(const RunConfig &config, Output &o) {
    const json &prm = config.parameters;
    double alpha = real_param(prm, "alpha");
    double xi = real_param(prm, "xi");
    if (!(alpha > 0.0) || !(xi >= 0.0)) {
        bad_config("kl-table needs alpha > 0 and xi >= 0");
    }
    SCParams p = sc_params(alpha, xi, cutoff_override(prm));
    std::array<StateVector, 2> cw{squeezed_cat(p, +1), squeezed_cat(p, -1)};
    KLTensor f = kl_tensor(cw, default_error_set(p.cutoff));
    CsvWriter w({"bra", "ket", "row_op", "col_op", "product", "re", "im", "oracle_re", "oracle_im", "oracle_delta"});
    double worst = 0.0;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            for (int r = 0; r < 4; r++) {
                for (int c = 0; c < 4; c++) {
                    KLEntry e{i == j, i == 0 ? +1 : -1, r, c};
                    cplx oracle = xi == 0.0 ? kl_oracle_cat(e, alpha) : kl_oracle_sc(e, alpha, xi);
                    cplx v = f(i, j, r, c);
                    double delta = std::abs(v - oracle);
                    worst = std::max(worst, delta);
                    w.row() << (i == 0 ? "+" : "-") << (j == 0 ? "+" : "-") << error_name(r) << error_name(c)
                            << kl_product_name(kl_product(r, c)) << v.real() << v.imag() << oracle.real()
                            << oracle.imag() << delta;
                }
            }
        }
    }
    o.csv("kl_table.csv", w);
    o.summary["cutoff"] = p.cutoff;
    o.summary["max_oracle_delta"] = worst;
    o.text("plot_kl_table.py", plot_script_kl_table());
}

OptimizeOptions optimize_options(const json &prm) {
    OptimizeOptions o;
    o.alphaPoints = positive_int(prm, "alpha_points");
    o.xiPoints = positive_int(prm, "xi_points");
    long long nm = integer(prm, "refine_evaluations");
    if (nm < 0) {
        bad_config("refine_evaluations must be non-negative");
    }
    o.nelderMeadEvaluations = static_cast<int>(nm);
    return o;
}

std::pair<int, int> parse_grid(const std::string &g) {
    int rows = 0, cols = 0;
    char x = 0;
    std::istringstream in(g);
    if (!(in >> rows >> x >> cols) || x != 'x' || !in.eof() || rows < 1 || cols < 1) {
        bad_config("grid must look like 8x8, got '" + g + "'");
    }
    return {rows, cols};
}

void run_sweep_command(const RunConfig &config, Output &o) {
    const json &prm = config.parameters;
    SweepOptions s;
    s.xiMax = real_param(prm, "xi_max");
    std::tie(s.rows, s.cols) = parse_grid(prm.at("grid").get<std::string>());
    s.kMin = real_param(prm, "k_min");
    s.kMax = real_param(prm, "k_max");
    s.optimize = optimize_options(prm);
    if (!(s.xiMax >= 0.0) || !(s.kMin > 0.0) || !(s.kMax >= s.kMin)) {
        bad_config("sweep needs xi_max >= 0 and 0 < k_min <= k_max");
    }
    std::vector<SweepCell> cells = run_sweep(s);
    CsvWriter w({"k1t", "k2t", "alpha_opt", "xi_opt", "n_mean", "F_sc", "F_cat", "F_rail", "sdp_gap", "cutoff",
                 "status"});
    int failed = 0;
    for (const auto &c : cells) {
        w.row() << c.k1t << c.k2t << c.sc.alphaOpt << c.sc.xiOpt << c.sc.meanPhotons << c.sc.fidelityOpt
                << c.cat.fidelityOpt << c.rail << c.sc.sdpGap << c.sc.cutoff << c.status;
        if (c.status != "ok") {
            failed++;
        }
        for (const auto &msg : c.sc.warnings) {
            o.warnings.push_back("sc k1t=" + format_double(c.k1t) + " k2t=" + format_double(c.k2t) + ": " + msg);
        }
        for (const auto &msg : c.cat.warnings) {
            o.warnings.push_back("cat k1t=" + format_double(c.k1t) + " k2t=" + format_double(c.k2t) + ": " + msg);
        }
    }
    o.csv("sweep.csv", w);
    o.summary["cells"] = static_cast<int>(cells.size());
    o.summary["failed_cells"] = failed;
    o.text("plot_sweep.py", plot_script_sweep());
}

void run_optimize(const RunConfig &config, Output &o) {
    const json &prm = config.parameters;
    NoiseParams p{real_param(prm, "k1t"), real_param(prm, "k2t")};
    double xi_max = real_param(prm, "xi_max");
    if (!(p.kappa1_tau >= 0.0) || !(p.kappa2_tau >= 0.0) || !(xi_max >= 0.0)) {
        bad_config("optimize needs non-negative rates and xi_max");
    }
    OptimizeOptions opt = optimize_options(prm);
    EncodingResult cat = cat_baseline(p, opt);
    opt.candidates = {{cat.alphaOpt, 0.0}};
    EncodingResult sc = optimize_encoding(p, xi_max, opt);
    double rail = single_rail_baseline(p);
    CsvWriter w({"code", "alpha_opt", "xi_opt", "n_mean", "fidelity", "infidelity", "sdp_gap", "tp_residual",
                 "cutoff"});
    for (const auto &[name, r] : {std::pair<const char *, const EncodingResult &>{"sc", sc}, {"cat", cat}}) {
        w.row() << name << r.alphaOpt << r.xiOpt << r.meanPhotons << r.fidelityOpt << 1.0 - r.fidelityOpt << r.sdpGap
                << r.tpResidual << r.cutoff;
        for (const auto &msg : r.warnings) {
            o.warnings.push_back(std::string(name) + ": " + msg);
        }
    }
    w.row() << "rail" << 0.0 << 0.0 << 0.5 << rail << 1.0 - rail << 0.0 << 0.0 << 2;
    o.csv("optimize.csv", w);
    o.summary["infidelity_ratio_cat_over_sc"] = (1.0 - cat.fidelityOpt) / (1.0 - sc.fidelityOpt);
}

void run_trajectory_command(const RunConfig &config, Output &o) {
    const json &prm = config.parameters;
    double alpha = real_param(prm, "alpha");
    double xi = real_param(prm, "xi");
    NoiseParams p{real_param(prm, "k1t"), real_param(prm, "k2t")};
    long long seed = integer(prm, "seed");
    if (seed < 0) {
        bad_config("seed must be non-negative");
    }
    int saved = static_cast<int>(integer(prm, "saved"));
    int n_traj = positive_int(prm, "n_traj");
    if (saved < 0 || saved > n_traj) {
        bad_config("saved must lie in [0, n_traj]");
    }
    CodePair code = build_error_subspaces(sc_params(alpha, xi, cutoff_override(prm)));
    RecoveryBasis basis = recovery_basis(code);
    RecoverySolution sol = solve_sdp(process_matrix(code, basis, p), basis);
    extract_kraus(sol, basis);

    TrajectoryConfig cfg;
    cfg.initial = code.codewords[0];
    cfg.reference = code.codewords[0];
    cfg.p = p;
    cfg.recovery = TrajectoryRecovery::from_solution(sol, basis);
    cfg.nPeriods = positive_int(prm, "periods");
    cfg.stepsPerPeriod = positive_int(prm, "steps");
    cfg.seed = static_cast<uint64_t>(seed);

    CsvWriter samples({"traj", "t", "P", "after_recovery"});
    CsvWriter jumps({"traj", "t", "type", "P_after"});
    CsvWriter recoveries({"traj", "t", "branch", "P_before", "P_after"});
    std::vector<TrajectoryRecord> records(saved);
    parallel_for(saved, [&](int i) {
        TrajectoryConfig c = cfg;
        c.stream = cfg.stream + static_cast<uint64_t>(i);
        records[i] = run_trajectory(c);
    });
    for (int i = 0; i < saved; i++) {
        const TrajectoryRecord &r = records[i];
        for (size_t k = 0; k < r.times.size(); k++) {
            samples.row() << i << r.times[k] << r.pValues[k] << (r.afterRecovery[k] ? 1 : 0);
        }
        for (const auto &j : r.jumps) {
            jumps.row() << i << j.time << (j.type == JumpType::loss ? "loss" : "dephasing") << j.pAfter;
        }
        for (const auto &e : r.recoveries) {
            recoveries.row() << i << e.time << e.branch << e.pBefore << e.pAfter;
        }
    }
    EnsembleResult ens = ensemble_average(cfg, n_traj);
    MasterEquationResult me =
        master_equation_p(cfg.initial, cfg.reference, p, cfg.recovery, cfg.nPeriods, cfg.stepsPerPeriod);
    CsvWriter ensemble({"t", "after_recovery", "mean", "stderr", "master"});
    int outside = 0;
    for (size_t k = 0; k < ens.times.size(); k++) {
        ensemble.row() << ens.times[k] << (ens.afterRecovery[k] ? 1 : 0) << ens.meanP[k] << ens.stderrP[k]
                       << me.pValues[k];
        if (std::abs(ens.meanP[k] - me.pValues[k]) > 3.0 * ens.stderrP[k] + 1e-9) {
            outside++;
        }
    }
    o.csv("trajectory_samples.csv", samples);
    o.csv("trajectory_jumps.csv", jumps);
    o.csv("trajectory_recoveries.csv", recoveries);
    o.csv("trajectory_ensemble.csv", ensemble);
    o.summary["cutoff"] = code.cutoff();
    o.summary["recovery_fidelity"] = sol.fidelity;
    o.summary["points_outside_3_sigma"] = outside;
    o.text("plot_trajectory.py", plot_script_trajectory());
}

void run_wigner(const RunConfig &config, Output &o) {
    const json &prm = config.parameters;
    double alpha = real_param(prm, "alpha");
    double xi = real_param(prm, "xi");
    double extent = real_param(prm, "extent");
    int points = positive_int(prm, "points");
    if (!(alpha > 0.0) || !(extent > 0.0) || points < 2) {
        bad_config("wigner needs alpha > 0, extent > 0 and points >= 2");
    }
    SCParams p = make_sc_params(alpha, xi);
    p.cutoff = std::max(p.cutoff, static_cast<int>(std::ceil(8.0 * extent * extent)) + 1);
    if (int c = cutoff_override(prm); c > 0) {
        p.cutoff = c;
    }
    StateVector plus = squeezed_cat(p, +1);
    StateVector minus = squeezed_cat(p, -1);
    StateVector a_plus = apply_destroy(plus);
    StateVector n_plus = apply_number(plus);
    std::vector<std::pair<const char *, StateVector>> states{
        {"plus", plus}, {"minus", minus}, {"a_plus", a_plus / a_plus.norm()}, {"n_plus", n_plus / n_plus.norm()}};
    Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(points, -extent, extent);
    std::vector<WignerResult> results(states.size());
    parallel_for(static_cast<int>(states.size()), [&](int k) {
        const StateVector &v = states[k].second;
        results[k] = wigner(v * v.adjoint(), grid, grid);
    });
    CsvWriter w({"state", "x", "y", "W"});
    for (size_t k = 0; k < states.size(); k++) {
        for (Eigen::Index i = 0; i < grid.size(); i++) {
            for (Eigen::Index j = 0; j < grid.size(); j++) {
                w.row() << states[k].first << grid[i] << grid[j] << results[k].values(i, j);
            }
        }
    }
    o.csv("wigner.csv", w);
    o.summary["cutoff"] = p.cutoff;
    o.text("plot_wigner.py", plot_script_wigner());
}

void run_gkp_compare(const RunConfig &config, Output &o) {
    const json &prm = config.parameters;
    double alpha = real_param(prm, "alpha");
    std::vector<double> xis = prm.at("xi").get<std::vector<double>>();
    if (!(alpha > 0.0) || xis.empty() || std::any_of(xis.begin(), xis.end(), [](double x) { return !(x > 0.0); })) {
        bad_config("gkp-compare needs alpha > 0 and a non-empty list of xi > 0");
    }
    struct Row {
        double costGkp, costSc, nGkp, nSc;
        int cutoffGkp, cutoffSc;
    };
    std::vector<Row> rows(xis.size());
    parallel_for(static_cast<int>(xis.size()), [&](int k) {
        auto mean_n = [](const std::array<StateVector, 2> &cw) {
            return 0.5 * (cw[0].dot(apply_number(cw[0])).real() + cw[1].dot(apply_number(cw[1])).real());
        };
        std::array<StateVector, 2> g = gkp_codewords(std::exp(-xis[k]));
        int ng = cutoff_of(g[0]);
        SCParams p = make_sc_params(alpha, xis[k]);
        std::array<StateVector, 2> s{squeezed_cat(p, +1), squeezed_cat(p, -1)};
        rows[k] = Row{kl_cost(g, ErrorSet{identity(ng), number(ng)}),
                      kl_cost(s, ErrorSet{identity(p.cutoff), number(p.cutoff)}), mean_n(g), mean_n(s), ng, p.cutoff};
    });
    CsvWriter w({"xi", "delta", "cost_gkp", "cost_sc", "n_gkp", "n_sc", "cutoff_gkp", "cutoff_sc"});
    for (size_t k = 0; k < xis.size(); k++) {
        const Row &r = rows[k];
        w.row() << xis[k] << std::exp(-xis[k]) << r.costGkp << r.costSc << r.nGkp << r.nSc << r.cutoffGkp
                << r.cutoffSc;
    }
    o.csv("gkp_compare.csv", w);
    o.text("plot_gkp_compare.py", plot_script_gkp_compare());
}

std::string dashed(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

json parse_value(const json &def, const std::string &key, const std::string &text) {
    try {
        size_t used = 0;
        if (def.is_number_float()) {
            double v = std::stod(text, &used);
            if (used == text.size()) {
                return v;
            }
        } else if (def.is_number_integer()) {
            long long v = std::stoll(text, &used);
            if (used == text.size()) {
                return v;
            }
        } else if (def.is_string()) {
            return text;
        } else if (def.is_array()) {
            json out = json::array();
            std::stringstream in(text);
            std::string item;
            while (std::getline(in, item, ',')) {
                double v = std::stod(item, &used);
                if (used != item.size()) {
                    bad_config("--" + dashed(key) + " expects a comma-separated number list");
                }
                out.push_back(v);
            }
            return out;
        }
    } catch (const std::logic_error &) {
    }
    bad_config("--" + dashed(key) + " cannot parse '" + text + "'");
}

void print_error(const std::string &kind, const std::string &message) {
    json e;
    e["error"] = {{"kind", kind}, {"message", message}};
    std::cerr << e.dump() << std::endl;
}

}  // namespace

const char *version() {
    return SQCAT_VERSION;
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto &[k, v] : defaults_table()) {
            n.push_back(k);
        }
        return n;
    }();
    return names;
}

json default_parameters(const std::string &command) {
    auto it = defaults_table().find(command);
    if (it == defaults_table().end()) {
        bad_config("unknown command '" + command + "'");
    }
    return it->second;
}

RunConfig normalize(const RunConfig &config) {
    if (config.formatVersion != kFormatVersion) {
        bad_config("unsupported formatVersion " + std::to_string(config.formatVersion));
    }
    json defaults = default_parameters(config.command);
    if (!config.parameters.is_object()) {
        bad_config("parameters must be an object");
    }
    RunConfig out = config;
    out.parameters = defaults;
    for (const auto &[key, value] : config.parameters.items()) {
        if (!defaults.contains(key)) {
            bad_config("unknown parameter '" + key + "' for " + config.command);
        }
        if (!same_kind(defaults[key], value)) {
            bad_config("parameter '" + key + "' has the wrong type");
        }
        out.parameters[key] = defaults[key].is_number_float() ? json(value.get<double>()) : value;
    }
    return out;
}

json to_json(const RunConfig &config) {
    return json{{"command", config.command}, {"parameters", config.parameters}, {"formatVersion", config.formatVersion}};
}

RunConfig run_config_from_json(const json &j) {
    const json &c = j.contains("config") ? j.at("config") : j;
    if (!c.is_object() || !c.contains("command") || !c.at("command").is_string()) {
        bad_config("config needs a string 'command'");
    }
    RunConfig r;
    r.command = c.at("command").get<std::string>();
    if (c.contains("parameters")) {
        r.parameters = c.at("parameters");
    }
    if (c.contains("formatVersion")) {
        if (!c.at("formatVersion").is_number_integer()) {
            bad_config("formatVersion must be an integer");
        }
        r.formatVersion = c.at("formatVersion").get<int>();
    }
    return normalize(r);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < n; i++) {
        out.push_back(std::pow(10.0, a + (b - a) * i / (n - 1)));
    }
    return out;
}

std::vector<SweepCell> run_sweep(const SweepOptions &s) {
    std::vector<double> k1 = log_grid(s.kMin, s.kMax, s.rows);
    std::vector<double> k2 = log_grid(s.kMin, s.kMax, s.cols);
    std::vector<SweepCell> cells;
    for (double a : k1) {
        std::vector<SweepCell> row(k2.size());
        for (size_t q = 0; q < k2.size(); q++) {
            row[q].k1t = a;
            row[q].k2t = k2[q];
        }
        try {
            std::vector<EncodingResult> cat = cat_baseline_row(a, k2, s.optimize);
            OptimizeOptions o = s.optimize;
            for (const auto &c : cat) {
                if (c.alphaOpt > 0.0) {
                    o.candidates.emplace_back(c.alphaOpt, 0.0);
                }
            }
            std::vector<EncodingResult> sc = optimize_encoding_row(a, k2, s.xiMax, o);
            for (size_t q = 0; q < k2.size(); q++) {
                row[q].cat = std::move(cat[q]);
                row[q].sc = std::move(sc[q]);
                row[q].rail = single_rail_baseline(NoiseParams{a, k2[q]});
            }
        } catch (const Error &e) {
            for (auto &c : row) {
                c.status = error_kind_name(e.kind());
                c.sc = EncodingResult{};
                c.cat = EncodingResult{};
                c.sc.warnings.push_back(e.what());
            }
        }
        for (auto &c : row) {
            cells.push_back(std::move(c));
        }
    }
    return cells;
}

std::vector<std::string> run(const RunConfig &raw) {
    RunConfig config = normalize(raw);
    Output o = make_output(config.parameters);
    const std::string &c = config.command;
    std::string stem = c;
    std::replace(stem.begin(), stem.end(), '-', '_');
    if (c == "kl-table") {
        run_kl_table(config, o);
    } else if (c == "sweep") {
        run_sweep_command(config, o);
    } else if (c == "optimize") {
        run_optimize(config, o);
    } else if (c == "trajectory") {
        run_trajectory_command(config, o);
    } else if (c == "wigner") {
        run_wigner(config, o);
    } else {
        run_gkp_compare(config, o);
    }
    finish(o, config, stem);
    return o.files;
}

int main_entry(int argc, char **argv) {
    CLI::App app{"Numerics for squeezed cat codes: KL tables, recovery sweeps, trajectories and Wigner grids."};
    app.set_version_flag("--version", version());
    app.require_subcommand(1, 1);
    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, CLI::App *> subs;
    static const std::map<std::string, std::string> help = {
        {"kl-table", "Knill-Laflamme tensor of a squeezed cat code against the closed forms"},
        {"sweep", "Optimized SC, 2-cat and single-rail fidelities on a noise grid"},
        {"optimize", "Optimize the encoding at one noise point"},
        {"trajectory", "Quantum-jump trajectories with periodic recovery"},
        {"wigner", "Wigner functions of the codewords and their error states"},
        {"gkp-compare", "Dephasing KL cost of GKP and squeezed cat codes"},
    };
    for (const auto &name : command_names()) {
        CLI::App *sub = app.add_subcommand(name, help.at(name));
        json defaults = default_parameters(name);
        for (const auto &[key, def] : defaults.items()) {
            std::string shown = def.is_string() ? def.get<std::string>() : def.dump();
            sub->add_option("--" + dashed(key), values[name][key])->default_str(shown);
        }
        subs[name] = sub;
    }
    std::string replay_file, replay_out;
    CLI::App *replay = app.add_subcommand("replay", "Re-run the configuration stored in a JSON config or sidecar");
    replay->add_option("file", replay_file)->required()->check(CLI::ExistingFile);
    replay->add_option("--out", replay_out, "Override the output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        print_error(error_kind_name(ErrorKind::invalid_config), e.what());
        return 2;
    }

    try {
        RunConfig config;
        if (replay->parsed()) {
            std::ifstream in(replay_file);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception &e) {
                bad_config(std::string("cannot parse ") + replay_file + ": " + e.what());
            }
            config = run_config_from_json(j);
            if (!replay_out.empty()) {
                config.parameters["out"] = replay_out;
            }
        } else {
            for (const auto &[name, sub] : subs) {
                if (!sub->parsed()) {
                    continue;
                }
                config.command = name;
                json defaults = default_parameters(name);
                for (const auto &[key, def] : defaults.items()) {
                    if (sub->get_option("--" + dashed(key))->count() > 0) {
                        config.parameters[key] = parse_value(def, key, values[name][key]);
                    }
                }
            }
        }
        thread_count();
        for (const auto &f : run(config)) {
            std::cout << (std::filesystem::path(config.parameters.value("out", ".")) / f).string() << '\n';
        }
        return 0;
    } catch (const Error &e) {
        print_error(error_kind_name(e.kind()), e.what());
        return e.kind() == ErrorKind::invalid_config ? 2 : 1;
    } catch (const std::exception &e) {
        print_error("internal", e.what());
        return 1;
    }
}

}  // namespace sqcat::cli
