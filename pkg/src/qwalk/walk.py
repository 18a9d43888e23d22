"""
Coined quantum walk on the line: state, coin and the coupled step.

The walk alternates a conditional shift (right movers go to ``m + 1``,
left movers to ``m - 1``) with the one-parameter coin

    [[sqrt(rho),      sqrt(1 - rho)],
     [sqrt(1 - rho), -sqrt(rho)    ]]

so that after a step

    R[m, n+1] = sqrt(rho) R[m-1, n] + sqrt(1-rho) L[m+1, n]
    L[m, n+1] = sqrt(1-rho) R[m-1, n] - sqrt(rho) L[m+1, n]

``rho = 1/2`` is the Hadamard walk. Lattice units are ``X = T = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .errors import EmptyDistribution, NotNormalized, UnsupportedCoin

__all__ = [
    "CoinParameter",
    "WalkState",
    "ProbabilityDistribution",
    "make_initial",
    "step",
    "evolve",
    "probability",
    "mean_displacement",
    "DEFAULT_SPINOR",
]

NORM_TOL = 1e-12

DEFAULT_SPINOR = (1 / np.sqrt(2), 1j / np.sqrt(2))


@dataclass(frozen=True)
class CoinParameter:
    """Unitary coin defined by ``0 <= rho <= 1``."""

    rho: float

    def __post_init__(self):
        rho = float(self.rho)
        if not np.isfinite(rho) or rho < 0.0 or rho > 1.0:
            raise UnsupportedCoin(f"rho must lie in [0, 1], got {self.rho!r}")
        object.__setattr__(self, "rho", rho)

    @property
    def sqrt_rho(self) -> float:
        return float(np.sqrt(self.rho))

    @property
    def sqrt_comp(self) -> float:
        """``sqrt(1 - rho)``."""
        return float(np.sqrt(1.0 - self.rho))

    def matrix(self) -> NDArray[np.float64]:
        a, b = self.sqrt_rho, self.sqrt_comp
        return np.array([[a, b], [b, -a]])


@dataclass(frozen=True, eq=False)
class WalkState:
    """
    Amplitudes ``R[m, n]`` and ``L[m, n]`` at one step of the walk.

    Site ``m`` is stored at index ``m - first_site``. For a walk started on
    site 0 the arrays cover ``[-step, step]``, i.e. ``first_site == -step``.

    Parameters
    ----------
    step : int
        Number of steps taken, ``n``.
    r_amp, l_amp : ndarray of complex
        Right- and left-mover amplitudes, same length.
    first_site : int, optional
        Lattice index of element 0; defaults to ``-step``.
    """

    step: int
    r_amp: NDArray[np.complex128]
    l_amp: NDArray[np.complex128]
    first_site: int = field(default=None)

    def __post_init__(self):
        r = np.array(self.r_amp, dtype=np.complex128)
        l = np.array(self.l_amp, dtype=np.complex128)
        if r.ndim != 1 or r.shape != l.shape:
            raise ValueError("r_amp and l_amp must be 1-D arrays of equal length")
        if self.step < 0:
            raise ValueError("step must be nonnegative")
        r.setflags(write=False)
        l.setflags(write=False)
        object.__setattr__(self, "r_amp", r)
        object.__setattr__(self, "l_amp", l)
        if self.first_site is None:
            object.__setattr__(self, "first_site", -int(self.step))

    @property
    def sites(self) -> NDArray[np.int64]:
        return np.arange(self.first_site, self.first_site + self.r_amp.size)

    @property
    def last_site(self) -> int:
        return self.first_site + self.r_amp.size - 1

    def norm(self) -> float:
        return float(np.sum(np.abs(self.r_amp) ** 2 + np.abs(self.l_amp) ** 2))

    def amplitude(self, m: int) -> tuple[complex, complex]:
        """``(R[m], L[m])``, zero outside the stored window."""
        i = m - self.first_site
        if 0 <= i < self.r_amp.size:
            return complex(self.r_amp[i]), complex(self.l_amp[i])
        return 0j, 0j

    def window(self, lo: int, hi: int) -> tuple[NDArray, NDArray]:
        """Amplitude arrays on sites ``lo..hi`` inclusive, zero padded."""
        n = hi - lo + 1
        r = np.zeros(n, dtype=np.complex128)
        l = np.zeros(n, dtype=np.complex128)
        a = max(lo, self.first_site)
        b = min(hi, self.last_site)
        if a <= b:
            r[a - lo:b - lo + 1] = self.r_amp[a - self.first_site:b - self.first_site + 1]
            l[a - lo:b - lo + 1] = self.l_amp[a - self.first_site:b - self.first_site + 1]
        return r, l


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution:
    sites: NDArray[np.int64]
    p_total: NDArray[np.float64]
    p_right: NDArray[np.float64]
    p_left: NDArray[np.float64]


def make_initial(r0: complex, l0: complex) -> WalkState:
    """
    Walker localized on site 0 with coin spinor ``(r0, l0)``.

    Raises
    ------
    NotNormalized
        If ``|r0|**2 + |l0|**2`` differs from 1 by more than 1e-12.
    """
    norm = abs(r0) ** 2 + abs(l0) ** 2
    if abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"|r0|^2 + |l0|^2 = {norm!r}, expected 1")
    return WalkState(0, [r0], [l0], first_site=0)


def _shift_and_coin(r, l, a, b, out_r, out_l):
    # out arrays are two elements longer than r, l
    out_r[2:] = a * r
    out_r[:-2] += b * l
    out_l[2:] = b * r
    out_l[:-2] -= a * l


def step(state: WalkState, coin: CoinParameter) -> WalkState:
    """Advance the walk by one coupled step."""
    size = state.r_amp.size + 2
    r = np.zeros(size, dtype=np.complex128)
    l = np.zeros(size, dtype=np.complex128)
    _shift_and_coin(state.r_amp, state.l_amp, coin.sqrt_rho, coin.sqrt_comp, r, l)
    return WalkState(state.step + 1, r, l, first_site=state.first_site - 1)


def evolve(state: WalkState, coin: CoinParameter, steps: int,
           record: bool = False):
    """
    Apply :func:`step` ``steps`` times.

    The full ``[first - steps, last + steps]`` window is allocated once and
    the occupied slice grows in place.

    Parameters
    ----------
    record : bool
        When true, return the list of all intermediate states (including the
        input) instead of only the final one.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if steps == 0:
        return [state] if record else state
    a, b = coin.sqrt_rho, coin.sqrt_comp
    width = state.r_amp.size + 2 * steps
    bufs = [np.zeros((2, width), dtype=np.complex128) for _ in range(2)]
    lo, hi = steps, steps + state.r_amp.size
    bufs[0][0, lo:hi] = state.r_amp
    bufs[0][1, lo:hi] = state.l_amp
    history = [state]
    cur = 0
    for k in range(1, steps + 1):
        src, dst = bufs[cur], bufs[1 - cur]
        dst[:, lo - 1:hi + 1] = 0.0
        _shift_and_coin(src[0, lo:hi], src[1, lo:hi], a, b,
                        dst[0, lo - 1:hi + 1], dst[1, lo - 1:hi + 1])
        lo, hi, cur = lo - 1, hi + 1, 1 - cur
        if record:
            history.append(WalkState(state.step + k, bufs[cur][0, lo:hi].copy(),
                                     bufs[cur][1, lo:hi].copy(),
                                     first_site=state.first_site - k))
    if record:
        return history
    return WalkState(state.step + steps, bufs[cur][0].copy(), bufs[cur][1].copy(),
                     first_site=state.first_site - steps)


def probability(state: WalkState) -> ProbabilityDistribution:
    """Site-resolved probabilities ``P = P^R + P^L``."""
    pr = np.abs(state.r_amp) ** 2
    pl = np.abs(state.l_amp) ** 2
    return ProbabilityDistribution(state.sites, pr + pl, pr, pl)


def mean_displacement(dist: ProbabilityDistribution) -> float:
    total = float(np.sum(dist.p_total))
    if not total > 0.0:
        raise EmptyDistribution("distribution has no weight")
    return float(np.sum(dist.sites * dist.p_total)) / total
