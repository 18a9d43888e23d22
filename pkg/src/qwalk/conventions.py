"""
Dictionary to the Nayak-Vishwanath labelling of the Hadamard walk.

Their amplitudes are index-reflected copies of ours,

    Rhat[m, n] = L[1 - m, n],    Lhat[m, n] = R[-m - 1, n],

and evolve by

    Lhat[m, n] = (Lhat[m+1, n-1] + Rhat[m+1, n-1]) / sqrt(2)
    Rhat[m, n] = (Lhat[m-1, n-1] - Rhat[m-1, n-1]) / sqrt(2)

The minus sign in the second line is what makes the map commute with our
Hadamard step (and keeps the evolution unitary).

Their standard start ``Lhat[m, 0] = delta_{m0}`` has the closed form

    Rhat[m, n] = [1 + (-1)^(n+m)] / (4 pi) int dk e^{ik} e^{-ikm - i omega0 n}
                 / sqrt(1 + cos^2 k)
    Lhat[m, n] = [1 + (-1)^(n+m)] / (4 pi) int dk (1 + cos k / sqrt(1 + cos^2 k))
                 e^{-ikm - i omega0 n}

evaluated here with the zone trapezoid rule (``X = T = 1``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import NonConvergent
from .spectral import DEFAULT_NODES
from .walk import WalkState

__all__ = ["NVState", "to_nv", "from_nv", "nv_step", "nv_evolve", "nv_initial",
           "nv_closed_form"]

_S = float(np.sqrt(0.5))


@dataclass(frozen=True, eq=False)
class NVState:
    """Amplitudes ``Rhat``, ``Lhat`` on sites ``first_site ..``."""

    step: int
    r_hat: NDArray[np.complex128]
    l_hat: NDArray[np.complex128]
    first_site: int

    def __post_init__(self):
        r = np.array(self.r_hat, dtype=np.complex128)
        l = np.array(self.l_hat, dtype=np.complex128)
        if r.shape != l.shape or r.ndim != 1:
            raise ValueError("r_hat and l_hat must be 1-D arrays of equal length")
        object.__setattr__(self, "r_hat", r)
        object.__setattr__(self, "l_hat", l)

    @property
    def sites(self):
        return np.arange(self.first_site, self.first_site + self.r_hat.size)

    @property
    def last_site(self) -> int:
        return self.first_site + self.r_hat.size - 1

    def norm(self) -> float:
        return float(np.sum(np.abs(self.r_hat) ** 2 + np.abs(self.l_hat) ** 2))

    def window(self, lo: int, hi: int):
        n = hi - lo + 1
        r = np.zeros(n, dtype=np.complex128)
        l = np.zeros(n, dtype=np.complex128)
        a, b = max(lo, self.first_site), min(hi, self.last_site)
        if a <= b:
            r[a - lo:b - lo + 1] = self.r_hat[a - self.first_site:b - self.first_site + 1]
            l[a - lo:b - lo + 1] = self.l_hat[a - self.first_site:b - self.first_site + 1]
        return r, l


def to_nv(state: WalkState) -> NVState:
    """Relabel our amplitudes in the Nayak-Vishwanath convention."""
    lo, hi = state.first_site, state.last_site
    # Rhat[m] = L[1-m], Lhat[m] = R[-m-1]; cover both images
    first = min(1 - hi, -hi - 1)
    last = max(1 - lo, -lo - 1)
    m = np.arange(first, last + 1)
    r_hat = np.zeros(m.size, dtype=np.complex128)
    l_hat = np.zeros(m.size, dtype=np.complex128)
    src = 1 - m - lo
    ok = (src >= 0) & (src < state.l_amp.size)
    r_hat[ok] = state.l_amp[src[ok]]
    src = -m - 1 - lo
    ok = (src >= 0) & (src < state.r_amp.size)
    l_hat[ok] = state.r_amp[src[ok]]
    return NVState(state.step, r_hat, l_hat, first)


def from_nv(state: NVState) -> WalkState:
    """Inverse of :func:`to_nv`: ``L[m] = Rhat[1-m]``, ``R[m] = Lhat[-m-1]``."""
    lo, hi = state.first_site, state.last_site
    first = min(1 - hi, -hi - 1)
    last = max(1 - lo, -lo - 1)
    m = np.arange(first, last + 1)
    r = np.zeros(m.size, dtype=np.complex128)
    l = np.zeros(m.size, dtype=np.complex128)
    src = 1 - m - lo
    ok = (src >= 0) & (src < state.r_hat.size)
    l[ok] = state.r_hat[src[ok]]
    src = -m - 1 - lo
    ok = (src >= 0) & (src < state.l_hat.size)
    r[ok] = state.l_hat[src[ok]]
    # drop padding outside the support, but keep at least [-step, step]
    nz = np.flatnonzero((r != 0) | (l != 0))
    keep_lo, keep_hi = -state.step, state.step
    if nz.size:
        keep_lo = min(keep_lo, first + nz[0])
        keep_hi = max(keep_hi, first + nz[-1])
    keep_lo, keep_hi = max(keep_lo, first), min(keep_hi, last)
    sl = slice(keep_lo - first, keep_hi - first + 1)
    return WalkState(state.step, r[sl], l[sl], first_site=keep_lo)


def nv_step(state: NVState, drop_sign: bool = False) -> NVState:
    """
    One Hadamard step in the Nayak-Vishwanath labelling.

    ``drop_sign=True`` drops the minus sign in the ``Rhat`` update. That
    variant is kept only to show that it is neither unitary nor conjugate to
    our walk.
    """
    size = state.r_hat.size + 2
    r = np.zeros(size, dtype=np.complex128)
    l = np.zeros(size, dtype=np.complex128)
    # new index j <-> site first - 1 + j; site m-1 at old index j-2
    r[2:] = _S * state.l_hat
    if drop_sign:
        r[2:] += _S * state.r_hat
    else:
        r[2:] -= _S * state.r_hat
    # site m+1 at old index j
    l[:-2] = _S * state.l_hat
    l[:-2] += _S * state.r_hat
    return NVState(state.step + 1, r, l, state.first_site - 1)


def nv_evolve(state: NVState, steps: int, drop_sign: bool = False) -> list[NVState]:
    """All states from ``state`` through ``steps`` further steps."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    out = [state]
    for _ in range(steps):
        out.append(nv_step(out[-1], drop_sign=drop_sign))
    return out


def nv_initial() -> NVState:
    """``Lhat[m, 0] = delta_{m0}``, ``Rhat[m, 0] = 0``."""
    return NVState(0, [0.0], [1.0], 0)


def nv_closed_form(m, n: int, nodes: int = DEFAULT_NODES):
    """
    ``(Rhat[m, n], Lhat[m, n])`` for the standard start, by quadrature.

    ``m`` may be an array. Sites with ``n + m`` odd are exactly zero.

    Raises
    ------
    NonConvergent
        When ``|m| + n`` is too large for the node count to resolve.
    """
    m = np.asarray(m, dtype=np.int64)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if np.any(np.abs(m) + n >= nodes // 4):
        raise NonConvergent("too few quadrature nodes for this (m, n)")
    k = np.pi * (2 * np.arange(nodes) - nodes) / nodes
    root = np.sqrt(1.0 + np.cos(k) ** 2)
    w0 = np.arcsin(np.sqrt(0.5) * np.sin(k))
    base = np.exp(-1j * (k * m[..., None] + w0 * n))
    h = 1.0 / (2 * nodes)  # (1 / 4 pi) * (2 pi / M)
    r_int = h * (base * (np.exp(1j * k) / root)).sum(axis=-1)
    l_int = h * (base * (1.0 + np.cos(k) / root)).sum(axis=-1)
    parity = 1.0 + np.where((n + m) % 2, -1.0, 1.0)
    return parity * r_int, parity * l_int
