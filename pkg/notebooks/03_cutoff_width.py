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

# # Effect of the cutoff width
#
# The Gaussian cutoff ``exp(-w^2 q^2)`` decides how much of the initial spectrum
# the cubic dispersion has to carry. A wide cutoff (``w = 0.55``) makes the packets
# too smooth and drives the center too low. A narrow cutoff (``w = 0.25``) lets in
# wavenumbers where the cubic truncation is poor, so weight leaks past the
# ballistic front, where the exact walk has nothing.

# +
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qwalk import (DEFAULT_SPINOR, CoinParameter, CutoffSpec, continuum_fields,
                   continuum_probability, make_initial)

out = Path(__file__).resolve().parent / "figures" if "__file__" in globals() else Path("figures")
out.mkdir(exist_ok=True)

tau = 200.0
init = make_initial(*DEFAULT_SPINOR)
coin = CoinParameter(0.5)
xi = np.arange(-1500.0, 1500.0 + 0.05, 0.05)
# -

fig, ax = plt.subplots(figsize=(7, 4))
for w in (0.25, 0.4, 0.55):
    f = continuum_fields(init, coin, CutoffSpec(w))
    p = continuum_probability(f, xi, tau).p_total
    far = np.trapezoid(p * (np.abs(xi) > 146), xi) / np.trapezoid(p, xi)
    print(f"w = {w}: P(0) = {p[np.argmin(np.abs(xi))]:.3f}, "
          f"mass beyond |xi| = 146: {100 * far:.1f}%")
    sel = np.abs(xi) <= 260
    ax.plot(xi[sel], p[sel], lw=0.8, label=f"w = {w}")
ax.set_xlabel("xi")
ax.set_ylabel("P (arbitrary units)")
ax.legend()
fig.savefig(out / "cutoff_width.png", dpi=120)
