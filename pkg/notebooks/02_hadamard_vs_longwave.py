# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py
#     text_representation:
#       extension: .py
#       format_name: light
#       format_version: '1.5'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# # Hadamard walk: exact distribution and Airy packets
#
# Start from ``R = 1/sqrt2, L = i/sqrt2`` on site 0 and take 200 Hadamard steps
# (``rho = 1/2``). The exact distribution is symmetric and has two ballistic peaks
# near ``n/sqrt2``. The long-wavelength approximation with a Gaussian cutoff
# ``w = 0.4`` reproduces the peaks and a low central plateau.

# +
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qwalk import (DEFAULT_SPINOR, CoinParameter, CutoffSpec, continuum_fields,
                   continuum_probability, evolve, lattice_probability, make_initial,
                   mean_displacement, probability)

out = Path(__file__).resolve().parent / "figures" if "__file__" in globals() else Path("figures")
out.mkdir(exist_ok=True)

n = 200
coin = CoinParameter(0.5)
init = make_initial(*DEFAULT_SPINOR)
# -

exact = probability(evolve(init, coin, n))
even = exact.sites % 2 == 0
print("mean displacement:", mean_displacement(exact))
left, right = exact.sites < 0, exact.sites > 0
print("peak sites:", exact.sites[left][np.argmax(exact.p_total[left])],
      exact.sites[right][np.argmax(exact.p_total[right])])

fields = continuum_fields(init, coin, CutoffSpec(0.4))
xi = np.arange(-220.0, 220.5, 0.5)
lw = continuum_probability(fields, xi, float(n))

# The long-wave result carries no normalization constant. Sampling it on the
# occupied sites and rescaling to unit mass gives a direct comparison:

on_sites = lattice_probability(fields, n)
scale = 1.0 / on_sites.p_total.sum()

fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
axes[0].plot(exact.sites[even], exact.p_total[even], lw=0.8)
axes[0].set_title("exact, n = 200")
axes[1].plot(xi, lw.p_total * scale, lw=0.8, label="continuous xi")
axes[1].plot(on_sites.xi, on_sites.p_total * scale, ".", ms=2, label="lattice sites")
axes[1].set_title("long wavelength, w = 0.4")
axes[1].legend()
for ax in axes:
    ax.set_xlabel("m, xi")
fig.savefig(out / "hadamard_200.png", dpi=120)

centre = lw.p_total[xi == 0][0] / lw.p_total.max()
print(f"P(0) / peak = {centre:.3f}")
