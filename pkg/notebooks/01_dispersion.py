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

# # Dispersion relation of the walk
#
# Plane waves on the lattice obey ``sin(omega) = sqrt(rho) sin(k)`` (``X = T = 1``).
# Inside the zone there are two branches: ``omega0`` passes through the origin, and
# ``omega1`` sits half a zone above it. On the lattice the second branch only
# contributes a factor ``(-1)**n``.

# +
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qwalk import dispersion_residual, omega0, omega1, omega_hat

out = Path(__file__).resolve().parent / "figures" if "__file__" in globals() else Path("figures")
out.mkdir(exist_ok=True)
# -

k = np.linspace(-np.pi, np.pi, 2001)
fig, ax = plt.subplots(figsize=(6, 4))
for rho in (0.25, 0.5, 0.75, 1.0):
    line, = ax.plot(k, omega0(k, rho), label=f"rho = {rho}")
    ax.plot(k, omega1(k, rho), color=line.get_color(), ls="--")
ax.set_xlabel("k X")
ax.set_ylabel("omega T")
ax.legend()
fig.savefig(out / "dispersion.png", dpi=120)

# Both branches satisfy the relation to rounding error:

for rho in (0.25, 0.5, 0.75, 1.0):
    r0 = np.abs(dispersion_residual(k, omega0(k, rho), rho)).max()
    r1 = np.abs(dispersion_residual(k, omega1(k, rho), rho)).max()
    print(f"rho={rho:4}: residuals {r0:.1e} {r1:.1e}")

# Near ``k = 0`` the principal branch is well described by its cubic truncation,
# which is what the long-wavelength approximation keeps.

small = np.linspace(-0.6, 0.6, 7)
print(np.c_[small, omega0(small, 0.5), omega_hat(small, 0.5)])
