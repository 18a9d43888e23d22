"""
Airy function of real argument and the cubic-Gaussian oscillatory integral.

``airy_ai`` is self-contained: asymptotic expansions for ``|x| >= 10`` and,
in between, a Taylor expansion of the Airy equation ``y'' = x y`` about the
nearest integer anchor. Anchors are built once at import time:

* ``x = 0`` from the exact values ``Ai(0)``, ``Ai'(0)``;
* ``x = -1 .. -10`` by Taylor marching leftwards from 0 (oscillatory, stable);
* ``x = 10 .. 1`` by Taylor marching leftwards from the asymptotic value at
  ``x = 10``. Marching towards smaller ``x`` damps the ``Bi`` error component,
  so positive anchors keep full relative accuracy.

``oscillatory_cubic_gaussian`` integrates

    Z(A, B, C) = int exp(i A k + i (B/3) k**3 - C k**2) dk

by brute-force composite Gauss-Legendre quadrature, without any reference to
Airy functions, so it can serve as an oracle for the closed form.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import AiryRangeError, NonConvergent

__all__ = [
    "AiryResult",
    "airy_ai",
    "airy_ai_array",
    "QuadratureResult",
    "cubic_gaussian_quadrature",
    "oscillatory_cubic_gaussian",
    "AI0",
    "AIP0",
    "X_MIN",
    "X_MAX_UNSCALED",
]

EPS = np.finfo(float).eps

AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)

# |x| beyond which the asymptotic series are used
X_ASYM = 10.0
# below this the oscillation phase (2/3)|x|^1.5 loses ~1e-9 absolute accuracy
X_MIN = -1.0e5
# unscaled Ai underflows past this point (exp(-(2/3) x^1.5) < 1e-305)
X_MAX_UNSCALED = 103.0

_N_TAYLOR = 60


class AiryResult(NamedTuple):
    value: float
    est_error: float


def _asym_coefficients(n: int) -> tuple[NDArray, NDArray]:
    u = np.empty(n)
    v = np.empty(n)
    u[0] = v[0] = 1.0
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        v[k] = -u[k] * (6 * k + 1) / (6 * k - 1)
    return u, v


_U, _V = _asym_coefficients(40)


def _asym_series(coef, inv_zeta, alternate_pairs):
    """Sum ``coef`` series in powers of ``1/zeta`` with optimal truncation.

    Returns (sum, last_term_magnitude). For the decaying branch the signs are
    ``(-1)**k``; for the oscillatory branch the even and odd parts are
    summed separately with ``(-1)**(k//2)``.
    """
    inv_zeta = np.asarray(inv_zeta, dtype=float)
    total_even = np.zeros_like(inv_zeta)
    total_odd = np.zeros_like(inv_zeta)
    err = np.zeros_like(inv_zeta)
    power = np.ones_like(inv_zeta)
    prev = np.full_like(inv_zeta, np.inf)
    active = np.ones(inv_zeta.shape, dtype=bool)
    for k in range(coef.size):
        term = coef[k] * power
        mag = np.abs(term)
        active &= mag < prev
        if alternate_pairs:
            sign = -1.0 if (k // 2) % 2 else 1.0
            if k % 2 == 0:
                total_even = np.where(active, total_even + sign * term, total_even)
            else:
                total_odd = np.where(active, total_odd + sign * term, total_odd)
        else:
            sign = -1.0 if k % 2 else 1.0
            total_even = np.where(active, total_even + sign * term, total_even)
        err = np.where(active, mag, err)
        prev = np.where(active, mag, prev)
        power = power * inv_zeta
        if not active.any():
            break
    return total_even, total_odd, err


def _ai_positive_scaled(x):
    """``Ai(x) exp(zeta)`` and ``Ai'(x) exp(zeta)`` for ``x >= X_ASYM``."""
    zeta = 2.0 / 3.0 * x ** 1.5
    s_u, _, e_u = _asym_series(_U, 1.0 / zeta, False)
    s_v, _, _ = _asym_series(_V, 1.0 / zeta, False)
    pref = 1.0 / (2.0 * math.sqrt(math.pi))
    ai = pref * x ** -0.25 * s_u
    aip = -pref * x ** 0.25 * s_v
    err = pref * x ** -0.25 * (e_u + 4 * EPS * np.abs(s_u))
    return ai, aip, err


def _ai_negative(x):
    """``Ai(x)`` and ``Ai'(x)`` for ``x <= -X_ASYM``."""
    z = -x
    zeta = 2.0 / 3.0 * z ** 1.5
    p, q, e_u = _asym_series(_U, 1.0 / zeta, True)
    r, s, _ = _asym_series(_V, 1.0 / zeta, True)
    phase = zeta - math.pi / 4
    c, sn = np.cos(phase), np.sin(phase)
    pref = 1.0 / math.sqrt(math.pi)
    ai = pref * z ** -0.25 * (c * p + sn * q)
    aip = pref * z ** 0.25 * (sn * r - c * s)
    # rounding in the phase grows like eps * zeta
    err = pref * z ** -0.25 * (e_u + 4 * EPS * (1.0 + zeta))
    return ai, aip, err


def _taylor(x0, y0, dy0, h, nterms=_N_TAYLOR):
    """Value, derivative and rounding bound of the Airy solution at ``x0 + h``."""
    x0 = np.asarray(x0, dtype=float)
    h = np.asarray(h, dtype=float)
    c_prev2 = np.zeros(np.broadcast(x0, h).shape)  # c_{k-1}
    c_prev = np.asarray(y0, dtype=float) + c_prev2  # c_k, k=0
    c_cur = np.asarray(dy0, dtype=float) + c_prev2  # k=1
    val = c_prev + c_cur * h
    der = c_cur.copy()
    absval = np.abs(c_prev) + np.abs(c_cur * h)
    hp = h.copy()  # h**(k+1)
    # c_{k+2} = (x0 c_k + c_{k-1}) / ((k+2)(k+1)), k >= 0
    for k in range(0, nterms - 2):
        c_next = (x0 * c_prev + c_prev2) / ((k + 2) * (k + 1))
        der = der + (k + 2) * c_next * hp
        term = c_next * hp * h
        val = val + term
        absval = absval + np.abs(term)
        c_prev2, c_prev, c_cur = c_prev, c_cur, c_next
        hp = hp * h
    return val, der, absval * EPS


def _build_anchors():
    n = int(X_ASYM)
    xs = np.arange(-n, n + 1, dtype=float)
    ai = np.empty_like(xs)
    aip = np.empty_like(xs)
    i0 = n
    ai[i0], aip[i0] = AI0, AIP0
    y, dy = AI0, AIP0
    for j in range(1, n + 1):
        y, dy, _ = _taylor(-(j - 1.0), y, dy, -1.0)
        ai[i0 - j], aip[i0 - j] = float(y), float(dy)
    y, dy, _ = _ai_positive_scaled(np.array(X_ASYM))
    zeta = 2.0 / 3.0 * X_ASYM ** 1.5
    y, dy = float(y) * math.exp(-zeta), float(dy) * math.exp(-zeta)
    ai[-1], aip[-1] = y, dy
    for j in range(n - 1, 0, -1):
        y, dy, _ = _taylor(j + 1.0, y, dy, -1.0)
        ai[i0 + j], aip[i0 + j] = float(y), float(dy)
    return xs, ai, aip


_ANCHOR_X, _ANCHOR_AI, _ANCHOR_AIP = _build_anchors()


def airy_ai_array(x: ArrayLike, scaled: bool = False,
                  with_error: bool = False):
    """
    Vectorized ``Ai(x)``.

    Parameters
    ----------
    x : array_like
        Real arguments, ``x >= X_MIN``.
    scaled : bool
        Return ``Ai(x) * exp((2/3) x**1.5)`` for ``x > 0`` (unchanged for
        ``x <= 0``); this lifts the underflow limit on the positive axis.
    with_error : bool
        Also return an absolute error estimate for each value.

    Raises
    ------
    AiryRangeError
        Argument not finite, below ``X_MIN``, or (unscaled) above
        ``X_MAX_UNSCALED`` where the result underflows.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise AiryRangeError("Airy argument must be finite")
    if np.any(x < X_MIN):
        raise AiryRangeError(f"Airy argument below supported range {X_MIN:g}")
    if not scaled and np.any(x > X_MAX_UNSCALED):
        raise AiryRangeError(
            f"Ai(x) underflows for x > {X_MAX_UNSCALED:g}; use scaled=True")
    flat = x.ravel()
    val = np.empty_like(flat)
    err = np.empty_like(flat)

    pos = flat >= X_ASYM
    neg = flat <= -X_ASYM
    mid = ~(pos | neg)

    if pos.any():
        xp = flat[pos]
        v, _, e = _ai_positive_scaled(xp)
        if not scaled:
            zeta = 2.0 / 3.0 * xp ** 1.5
            f = np.exp(-zeta)
            v, e = v * f, e * f + 2 * EPS * zeta * np.abs(v * f)
        val[pos], err[pos] = v, e
    if neg.any():
        v, _, e = _ai_negative(flat[neg])
        val[neg], err[neg] = v, e
    if mid.any():
        xm = flat[mid]
        x0 = np.rint(xm)
        idx = (x0 + X_ASYM).astype(int)
        v, _, e = _taylor(x0, _ANCHOR_AI[idx], _ANCHOR_AIP[idx], xm - x0)
        e = e + 8 * EPS * np.abs(v)
        # marching error of the oscillatory anchors, relative to the envelope
        back = np.clip(-x0, 0.0, None)
        e = e + 8 * EPS * (1.0 + back) ** 0.75
        if scaled:
            f = np.exp(2.0 / 3.0 * np.clip(xm, 0.0, None) ** 1.5)
            v, e = v * f, e * f
        val[mid], err[mid] = v, e

    val = val.reshape(x.shape)
    err = err.reshape(x.shape)
    if with_error:
        return val, err
    return val


def airy_ai(x: float) -> AiryResult:
    """
    Airy function ``Ai(x)`` of a real scalar.

    >>> round(airy_ai(0.0).value, 10)
    0.3550280539
    """
    v, e = airy_ai_array(np.float64(x), with_error=True)
    return AiryResult(float(v), float(e))


# ---------------------------------------------------------------------------
# oscillatory quadrature oracle

class QuadratureResult(NamedTuple):
    value: float
    imag: float
    est_error: float
    sigma: float
    magnitude: float  # L1 norm of the integrand on the contour


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)

TAIL_EXPONENT = 45.0  # exp(-45) ~ 3e-20 below the peak of the integrand


def _contour_height(A, B, C):
    """Height ``sigma`` of the horizontal line ``k = u + i sigma``.

    On the decaying side the line goes through the saddle point of the
    exponent so the integrand is no larger than the result; on the
    oscillatory side a small positive height speeds up the Gaussian decay
    while inflating the integrand by at most ``e``.
    """
    disc = C * C + A * B
    if disc > 0.0:
        root = math.sqrt(disc)
        if A >= 0.0 or root >= 0.5 * C:
            return A / (root + C)
    return 1.0 / (1.0 + abs(A))


def _exponent(A, B, C, k):
    return 1j * A * k + 1j * (B / 3.0) * k ** 3 - C * k * k


def _breaks(A, B, C, sigma, K, step_scale):
    # monotone map u -> s(u) whose unit increments are at most one
    # oscillation or a fraction of the Gaussian width
    decay = C + B * sigma
    h_max = 0.5 / math.sqrt(decay) if decay > 0 else 0.5
    h_max = min(h_max, 0.5)
    lin = 1.0 / h_max + (abs(A) + B * sigma * sigma + 2 * C * abs(sigma)) / (2 * math.pi)
    cub = B / (6.0 * math.pi)
    table_u = np.linspace(0.0, K, 8193)
    table_s = lin * table_u + cub * table_u ** 3
    n_panels = max(4, int(math.ceil(table_s[-1] / step_scale)))
    targets = np.linspace(0.0, table_s[-1], n_panels + 1)
    half = np.interp(targets, table_s, table_u)
    half[-1] = K
    return np.concatenate([-half[:0:-1], half])


def _integrate(A, B, C, sigma, step_scale):
    decay = C + B * sigma
    if decay <= 0.0:
        raise NonConvergent("contour line does not decay")
    peak = -A * sigma + B * sigma ** 3 / 3.0 + C * sigma * sigma
    K = math.sqrt(TAIL_EXPONENT / decay)
    br = _breaks(A, B, C, sigma, K, step_scale)
    a, b = br[:-1], br[1:]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    u = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    f = np.exp(_exponent(A, B, C, u + 1j * sigma) - peak)
    total = np.sum(w * f)
    l1 = math.sqrt(math.pi / decay)
    return total, peak, l1


def cubic_gaussian_quadrature(A: float, B: float, C: float,
                              step_scale: float = 1.0,
                              shift: bool = True) -> QuadratureResult:
    """
    Brute-force quadrature of ``int exp(iAk + i(B/3)k^3 - Ck^2) dk``.

    The real line is moved to ``Im k = sigma`` (Cauchy; the integrand is
    entire and decays in the strip) and integrated over ``|u| <= K`` where
    the Gaussian envelope has fallen by ``exp(-45)``. The error estimate is
    the change on halving every panel.

    Parameters
    ----------
    step_scale : float
        Panel width multiplier; 0.5 halves every panel.
    shift : bool
        Set False to integrate on the real axis itself.
    """
    if not C > 0.0:
        raise ValueError("C must be positive")
    if B < 0.0:
        # k -> -k maps (A, B) to (-A, -B)
        A, B = -A, -B
    sigma = _contour_height(A, B, C) if shift else 0.0
    coarse, peak, l1 = _integrate(A, B, C, sigma, step_scale)
    fine, _, _ = _integrate(A, B, C, sigma, 0.5 * step_scale)
    scale = math.exp(peak) if peak > -745.0 else 0.0
    value = fine.real * scale
    imag = fine.imag * scale
    err = abs(fine - coarse) * scale + 16 * EPS * l1 * scale
    return QuadratureResult(value, imag, err, sigma, l1 * scale)


def oscillatory_cubic_gaussian(A: float, B: float, C: float) -> float:
    """
    Real value of ``int exp(iAk + i(B/3)k^3 - Ck^2) dk`` by quadrature.

    The imaginary part cancels between ``k`` and ``-k``; it is computed
    anyway and folded into the error estimate.

    Raises
    ------
    NonConvergent
        If the estimated error exceeds 1e-8 relative (with a floor at the
        rounding level of the integrand).
    """
    res = cubic_gaussian_quadrature(A, B, C)
    err = max(res.est_error, abs(res.imag))
    if err > 1e-8 * max(abs(res.value), 1e-5 * res.magnitude):
        raise NonConvergent(
            f"cubic-Gaussian quadrature error {err:.3g} for value {res.value:.3g}")
    return res.value
