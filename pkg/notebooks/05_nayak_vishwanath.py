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

# # Translating to the Nayak-Vishwanath labelling
#
# Their amplitudes are reflected copies of ours: ``Rhat[m] = L[1-m]`` and
# ``Lhat[m] = R[-m-1]``. Their step needs a minus sign in the ``Rhat`` update.
# Without it the map does not commute with our walk, and the norm grows.

# +
import numpy as np

from qwalk import (DEFAULT_SPINOR, CoinParameter, evolve, make_initial, nv_closed_form,
                   nv_evolve, nv_initial, nv_step, to_nv)
# -

coin = CoinParameter(0.5)
hist = evolve(make_initial(*DEFAULT_SPINOR), coin, 50, record=True)
nv = to_nv(hist[0])
worst = 0.0
for h in hist[1:]:
    nv = nv_step(nv)
    ref = to_nv(h)
    worst = max(worst, np.abs(ref.r_hat - nv.r_hat).max())
print("conjugacy mismatch over 50 steps:", worst)

unsigned = nv_evolve(nv_initial(), 10, drop_sign=True)
print("norm after 10 steps without the minus sign:", unsigned[-1].norm())

# Their standard start ``Lhat[m, 0] = delta_m0`` has a closed form as a zone
# integral, and it agrees with iteration:

st = nv_evolve(nv_initial(), 30)[-1]
r, l = nv_closed_form(st.sites, 30)
print("closed form vs iteration:", max(np.abs(r - st.r_hat).max(), np.abs(l - st.l_hat).max()))
print("sites 0..6 of |Lhat|^2:", np.round(np.abs(l[30:37]) ** 2, 5))
