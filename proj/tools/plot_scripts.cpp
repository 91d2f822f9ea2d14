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

#include "plot_scripts.hpp"

namespace sqcat::cli {

namespace {

const char *kPrelude = R"PY(#!/usr/bin/env python3
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))


def read(name):
    with open(os.path.join(HERE, name), newline="") as f:
        return list(csv.DictReader(f))


def column(rows, key, kind=float):
    return np.array([kind(r[key]) for r in rows])

)PY";

}  // namespace

std::string plot_script_kl_table() {
    return std::string(kPrelude) + R"PY(
rows = read("kl_table.csv")
ops = ["1", "a", "n", "n2"]
fig, axes = plt.subplots(1, 5, figsize=(18, 3.6))
for ax, (bra, ket) in zip(axes, [("+", "+"), ("-", "-"), ("+", "-"), ("-", "+")]):
    m = np.zeros((4, 4))
    for r in rows:
        if r["bra"] == bra and r["ket"] == ket:
            m[ops.index(r["row_op"]), ops.index(r["col_op"])] = np.hypot(float(r["re"]), float(r["im"]))
    im = ax.imshow(m, cmap="viridis")
    ax.set_xticks(range(4), ops)
    ax.set_yticks(range(4), ops)
    ax.set_title("|<C%s|E_l^dag E_l'|C%s>|" % (bra, ket))
    fig.colorbar(im, ax=ax, fraction=0.046)
delta = np.maximum(column(rows, "oracle_delta"), 1e-18)
axes[4].semilogy(delta, "o", ms=3)
axes[4].axhline(1e-8, color="r", ls="--")
axes[4].set_title("|numeric - closed form|")
axes[4].set_xlabel("entry")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "kl_table.png"), dpi=150)
)PY";
}

std::string plot_script_sweep() {
    return std::string(kPrelude) + R"PY(
rows = [r for r in read("sweep.csv") if r["status"] == "ok"]
k1 = np.unique(column(rows, "k1t"))
k2 = np.unique(column(rows, "k2t"))


def grid(key, transform=lambda v: v):
    g = np.full((len(k1), len(k2)), np.nan)
    for r in rows:
        i = np.searchsorted(k1, float(r["k1t"]))
        j = np.searchsorted(k2, float(r["k2t"]))
        g[i, j] = transform(float(r[key]))
    return g


def panel(ax, g, title, log=True):
    data = np.log10(np.maximum(g, 1e-16)) if log else g
    im = ax.pcolormesh(np.log10(k2), np.log10(k1), data, shading="nearest", cmap="magma")
    ax.set_xlabel("log10 kappa2 tau")
    ax.set_ylabel("log10 kappa1 tau")
    ax.set_title(title)
    plt.colorbar(im, ax=ax)


fig, axes = plt.subplots(1, 3, figsize=(15, 4))
for ax, (key, name) in zip(axes, [("F_sc", "squeezed cat"), ("F_cat", "2-cat"), ("F_rail", "single rail")]):
    panel(ax, grid(key, lambda v: 1.0 - v), "log10(1 - F), " + name)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "sweep_infidelity.png"), dpi=150)

fig, axes = plt.subplots(1, 3, figsize=(15, 4))
panel(axes[0], grid("alpha_opt"), "optimal alpha", log=False)
panel(axes[1], grid("xi_opt"), "optimal xi", log=False)
panel(axes[2], grid("n_mean"), "mean photon number", log=False)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "sweep_encoding.png"), dpi=150)
)PY";
}

std::string plot_script_trajectory() {
    return std::string(kPrelude) + R"PY(
samples = read("trajectory_samples.csv")
jumps = read("trajectory_jumps.csv")
ensemble = read("trajectory_ensemble.csv")
trajs = sorted(set(int(r["traj"]) for r in samples))
shown = trajs[:4]
fig, axes = plt.subplots(len(shown) + 1, 1, figsize=(8, 2.2 * (len(shown) + 1)), sharex=True)
axes = np.atleast_1d(axes)
for ax, k in zip(axes, shown):
    rs = [r for r in samples if int(r["traj"]) == k]
    ax.plot(column(rs, "t"), column(rs, "P"), lw=1)
    for j in jumps:
        if int(j["traj"]) == k:
            ax.axvline(float(j["t"]), color="r", lw=0.8)
    for t in range(1, int(round(column(rs, "t").max())) + 1):
        ax.axvline(t, color="k", ls="--", lw=0.6)
    ax.set_ylabel("P(t), traj %d" % k)
    ax.set_ylim(-0.05, 1.05)
t = column(ensemble, "t")
mean = column(ensemble, "mean")
err = column(ensemble, "stderr")
axes[-1].plot(t, column(ensemble, "master"), "k", lw=1.2, label="master equation")
axes[-1].plot(t, mean, lw=0.8, label="trajectory mean")
axes[-1].fill_between(t, mean - 3 * err, mean + 3 * err, alpha=0.3, label="3 sigma")
axes[-1].set_xlabel("t / tau")
axes[-1].set_ylabel("P(t)")
axes[-1].legend(fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "trajectory.png"), dpi=150)
)PY";
}

std::string plot_script_wigner() {
    return std::string(kPrelude) + R"PY(
rows = read("wigner.csv")
states = ["plus", "minus", "a_plus", "n_plus"]
fig, axes = plt.subplots(1, 4, figsize=(16, 4))
for ax, s in zip(axes, states):
    rs = [r for r in rows if r["state"] == s]
    xs = np.unique(column(rs, "x"))
    ys = np.unique(column(rs, "y"))
    w = np.zeros((len(xs), len(ys)))
    for r in rs:
        w[np.searchsorted(xs, float(r["x"])), np.searchsorted(ys, float(r["y"]))] = float(r["W"])
    lim = np.abs(w).max()
    im = ax.pcolormesh(xs, ys, w.T, shading="nearest", cmap="RdBu_r", vmin=-lim, vmax=lim)
    ax.set_aspect("equal")
    ax.set_xlabel("Re beta")
    ax.set_ylabel("Im beta")
    ax.set_title(s)
    plt.colorbar(im, ax=ax, fraction=0.046)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "wigner.png"), dpi=150)
)PY";
}

std::string plot_script_gkp_compare() {
    return std::string(kPrelude) + R"PY(
rows = read("gkp_compare.csv")
xi = column(rows, "xi")
fig, ax = plt.subplots(figsize=(5, 4))
ax.semilogy(xi, column(rows, "cost_gkp"), "o-", label="GKP, delta = exp(-xi)")
ax.semilogy(xi, column(rows, "cost_sc"), "s-", label="squeezed cat")
ax.set_xlabel("xi")
ax.set_ylabel("KL cost, errors {1, n}")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "gkp_compare.png"), dpi=150)
)PY";
}

}  // namespace sqcat::cli
