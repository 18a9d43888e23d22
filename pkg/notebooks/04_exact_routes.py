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

# # Three exact routes to the same amplitudes
#
# After one coupled step, each coin channel follows the three-term recurrence
# ``a[m, n+1] = a[m, n-1] + sqrt(rho) (a[m-1, n] - a[m+1, n])`` by itself. The same
# amplitudes also come out of a single Green function, evaluated on a uniform
# Brillouin-zone grid. Here the three routes are compared for a few coins.

# +
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qwalk import (CoinParameter, GreenFunctionSampler, decoupled_state, evolve,
                   make_initial, spectral_state)

out = Path(__file__).resolve().parent / "figures" if "__file__" in globals() else Path("figures")
out.mkdir(exist_ok=True)
# -

init = make_initial(0.6, 0.8j)
for rho in (0.0, 0.25, 0.5, 0.75):
    c = CoinParameter(rho)
    ref = evolve(init, c, 64)
    dec = decoupled_state(init, c, 64)
    spec = spectral_state(init, c, 64)
    print(f"rho={rho:4}: decoupled {np.abs(dec.r_amp - ref.r_amp).max():.1e}, "
          f"spectral {np.abs(spec.r_amp - ref.r_amp).max():.1e}")

# The Green function itself, for the Hadamard coin at ``t = 40``. Its real part
# is what feeds every field.

g = GreenFunctionSampler(0.5)
x = np.linspace(-50, 50, 2001)
m = np.arange(-50, 51)
fig, ax = plt.subplots(figsize=(7, 3.5))
ax.plot(x, g(x, 40.0).real, lw=0.8, label="Re g(x; 40)")
ax.plot(m, g.at_sites(m, 40.0).real, ".", ms=3, label="lattice, via FFT")
ax.legend()
fig.savefig(out / "green_function.png", dpi=120)
