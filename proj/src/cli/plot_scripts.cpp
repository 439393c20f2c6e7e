#include "pstirap/cli/plot_scripts.hpp"

namespace pstirap::cli {

namespace {

constexpr const char* kPrelude = R"py(#!/usr/bin/env python3
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

here = os.path.dirname(os.path.abspath(__file__))


def load(name):
    return pd.read_csv(os.path.join(here, name), comment="#")


def save(fig, name):
    path = os.path.join(here, name)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    print(path, file=sys.stderr)

)py";

}  // namespace

std::string design_plot_script() {
  return std::string(kPrelude) + R"py(
s = load("schedule.csv")
fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
ax1.plot(s.t, s.w_minus, label=r"$\omega_-$")
ax1.plot(s.t, s.w_0, label=r"$\omega_0$")
ax1.plot(s.t, s.w_plus, label=r"$\omega_+$")
ax1.set_ylabel("eigenvalues (1/T)")
ax1.legend()
ax2.plot(s.t, s.omega_p, label=r"$\Omega_P$")
ax2.plot(s.t, s.omega_s, label=r"$\Omega_S$")
ax2.plot(s.t, s.delta1, "--", label=r"$\Delta$")
ax2.plot(s.t, s.delta2, ":", label=r"$\delta$")
ax2.set_xlabel("t / T")
ax2.set_ylabel("fields (1/T)")
ax2.legend()
save(fig, "design.png")
)py";
}

std::string propagate_plot_script() {
  return std::string(kPrelude) + R"py(
p = load("populations.csv")
fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
for col, label in (("p1", "$P_1$"), ("p2", "$P_2$"), ("p3", "$P_3$")):
    ax1.plot(p.t, p[col], label=label)
ax1.set_ylabel("population")
ax1.legend()
if "ad_0" in p:
    for col, label in (("ad_minus", r"$\psi_-$"), ("ad_0", r"$\psi_0$"), ("ad_plus", r"$\psi_+$")):
        ax2.plot(p.t, p[col], label=label)
    ax2.set_ylabel("adiabatic population")
    ax2.legend()
ax2.set_xlabel("t / T")
save(fig, "populations.png")
)py";
}

std::string sweep_plot_script() {
  return std::string(kPrelude) + R"py(
import numpy as np

s = load("sweep.csv")
fig, (ax1, ax2) = plt.subplots(1, 2, sharey=True, figsize=(10, 4))
for tag, g in s.groupby("strategy", sort=False):
    dev = np.maximum(g.deviation, 1e-16)
    ax1.semilogy(g.area_over_pi, dev, label=tag)
    ax2.semilogy(g.fluence_T, dev, label=tag)
ax1.set_xlabel(r"pulse area / $\pi$")
ax1.set_ylabel(r"$1 - P_3$")
ax2.set_xlabel(r"fluence $\times$ T")
ax1.legend()
save(fig, "sweep.png")
)py";
}

std::string noise_plot_script() {
  return std::string(kPrelude) + R"py(
p = load("noise_populations.csv")
fig, ax = plt.subplots(figsize=(6, 4))
for col, label in (("p1", "$P_1$"), ("p2", "$P_2$"), ("p3", "$P_3$")):
    ax.plot(p.t, p[col], label=label)
ax.set_xlabel("t / T")
ax.set_ylabel("mean population")
ax.legend()
save(fig, "noise.png")
)py";
}

std::string shape_plot_script() {
  return std::string(kPrelude) + R"py(
fig, axes = plt.subplots(2, 2, sharex=True, figsize=(10, 6))
for col, name in enumerate(("pump", "stokes")):
    spec = load(name + "_spectrum.csv")
    pix = load(name + "_pixels.csv")
    mid = 0.5 * (pix.omega_lo + pix.omega_hi)
    axes[0, col].plot(spec.omega_rel, spec.amplitude, label="continuous")
    axes[0, col].step(mid, pix.amplitude, where="mid", label="pixelized")
    axes[0, col].set_title(name)
    axes[0, col].set_ylabel("amplitude A")
    axes[1, col].plot(spec.omega_rel, spec.phase)
    axes[1, col].step(mid, pix.phase, where="mid")
    axes[1, col].set_ylabel("phase (rad)")
    axes[1, col].set_xlabel(r"$\omega - \omega_0$ (rad/fs)")
axes[0, 0].legend()
save(fig, "shape.png")
)py";
}

}  // namespace pstirap::cli
