"""
Decoupled three-term recurrence for a single coin channel.

Eliminating the other channel from the coupled step gives, for ``a = R`` or
``a = L`` separately,

    a[m, n+1] = a[m, n-1] + sqrt(rho) * (a[m-1, n] - a[m+1, n])

Each channel needs two starting rows; the second one comes from a single
coupled step, after which R and L never talk to each other again.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .walk import CoinParameter, WalkState, step

__all__ = ["DecoupledHistory", "bootstrap", "decoupled_step", "evolve_decoupled",
           "decoupled_state"]


@dataclass(frozen=True, eq=False)
class DecoupledHistory:
    """
    Rows ``n - 1`` and ``n`` of one channel.

    ``prev`` starts at site ``prev_first``, ``curr`` at ``curr_first``.
    When ``rows`` is not None it holds every row produced so far as
    ``(first_site, values)`` pairs, oldest first.
    """

    channel: str
    step: int
    prev: NDArray[np.complex128]
    prev_first: int
    curr: NDArray[np.complex128]
    curr_first: int
    rows: tuple | None = None

    def row(self, m_lo: int, m_hi: int) -> NDArray[np.complex128]:
        """Current row on sites ``m_lo..m_hi``, zero padded."""
        out = np.zeros(m_hi - m_lo + 1, dtype=np.complex128)
        _paste(out, m_lo, self.curr, self.curr_first)
        return out


def _paste(dst, dst_first, src, src_first):
    a = max(dst_first, src_first)
    b = min(dst_first + dst.size, src_first + src.size)
    if a < b:
        dst[a - dst_first:b - dst_first] = src[a - src_first:b - src_first]


def bootstrap(initial: WalkState, coin: CoinParameter,
              record: bool = False) -> tuple[DecoupledHistory, DecoupledHistory]:
    """Histories for R and L holding rows ``n`` and ``n + 1`` of ``initial``."""
    nxt = step(initial, coin)
    out = []
    for channel, a0, a1 in (("R", initial.r_amp, nxt.r_amp),
                            ("L", initial.l_amp, nxt.l_amp)):
        rows = ((initial.first_site, a0), (nxt.first_site, a1)) if record else None
        out.append(DecoupledHistory(channel, nxt.step, a0, initial.first_site,
                                    a1, nxt.first_site, rows))
    return out[0], out[1]


def decoupled_step(history: DecoupledHistory,
                   coin: CoinParameter) -> DecoupledHistory:
    """Advance one channel from rows ``(n-1, n)`` to ``(n, n+1)``."""
    s = coin.sqrt_rho
    cur, first = history.curr, history.curr_first
    nxt_first = first - 1
    nxt = np.zeros(cur.size + 2, dtype=np.complex128)
    _paste(nxt, nxt_first, history.prev, history.prev_first)
    # a[m-1, n] lands on m, a[m+1, n] lands on m
    nxt[2:] += s * cur
    nxt[:-2] -= s * cur
    rows = None
    if history.rows is not None:
        rows = history.rows + ((nxt_first, nxt),)
    return DecoupledHistory(history.channel, history.step + 1, cur, first,
                            nxt, nxt_first, rows)


def evolve_decoupled(initial: WalkState, coin: CoinParameter, steps: int,
                     record: bool = False):
    """
    Run both channels independently for ``steps`` steps from ``initial``.

    Returns the pair of final histories. With ``steps == 0`` the histories
    returned by :func:`bootstrap` are one step ahead, so callers wanting the
    state at ``initial.step`` should use ``initial`` itself.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1 (the bootstrap already takes one)")
    hr, hl = bootstrap(initial, coin, record=record)
    for _ in range(steps - 1):
        hr = decoupled_step(hr, coin)
        hl = decoupled_step(hl, coin)
    return hr, hl


def decoupled_state(initial: WalkState, coin: CoinParameter, steps: int) -> WalkState:
    """The walk state after ``steps`` steps, computed channel by channel."""
    if steps == 0:
        return initial
    hr, hl = evolve_decoupled(initial, coin, steps)
    assert hr.curr_first == hl.curr_first
    return WalkState(initial.step + steps, hr.curr, hl.curr, first_site=hr.curr_first)
