r"""
Long-wavelength (third-order dispersion) approximation of the walk.

Truncating the dispersion relation at cubic order,

    omega_hat(k) = sqrt(rho) (X/T) k - (1/6) sqrt(rho) (1 - rho) (X^3/T) k^3,

and low-pass filtering the initial spectrum with a Gaussian
``G(q) = exp(-w^2 q^2)`` turns each field into a sum of Gaussian-apodized
Airy packets

.. math:: Z(\xi, \tau) = \int dk\, \exp(i A k + i (B/3) k^3 - C k^2)

with ``A = xi - sqrt(rho) tau``, ``B = sqrt(rho) (1 - rho) tau / 2`` and
``C = w^2``, in normalized units ``xi = x/X``, ``tau = t/T``. The packets obey

.. math:: \partial_\tau A^\pm = \mp\sqrt{\rho}\,[\partial_\xi
          + \tfrac{1-\rho}{6}\partial_\xi^3] A^\pm ,

the envelope equation of a pulse at the zero-dispersion wavelength of a
fiber. Shifting the contour by ``-i C/B`` gives the closed form

    Z = 2 pi B^(-1/3) exp((3ABC + 2C^3) / (3B^2)) Ai((AB + C^2) / B^(4/3)).

The sign of the exponent has been checked against direct quadrature
(:func:`qwalk.special.oscillatory_cubic_gaussian`). On the decaying side
(``AB + C^2 >= 0``) the exponent and the scaling of ``Ai`` are merged into
``-A^2 (2s + C) / (3 (s + C)^2)`` with ``s = sqrt(C^2 + AB)``, which stays finite
as ``B -> 0`` and reduces to the Gaussian ``sqrt(pi/C) exp(-A^2/4C)``.

The overall normalization constant is omitted: probabilities are in
arbitrary units unless ``normalize=True`` is requested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InvalidCutoff, NonConvergent, UnsupportedCoin
from .special import airy_ai_array, oscillatory_cubic_gaussian
from .spectral import UNIT_SCALES, LatticeScales
from .walk import CoinParameter, WalkState

__all__ = [
    "CutoffSpec",
    "AiryPacket",
    "ContinuumFields",
    "LongwaveDistribution",
    "omega_hat",
    "airy_packet",
    "zeta_closed",
    "zeta",
    "continuum_fields",
    "continuum_probability",
    "lattice_probability",
    "default_parity",
    "B_EPS",
    "DEFAULT_W",
]

B_EPS = 1e-9
DEFAULT_W = 0.4


@dataclass(frozen=True)
class CutoffSpec:
    """Gaussian low-pass filter ``exp(-w^2 q^2)`` in normalized wavenumber."""

    w: float = DEFAULT_W

    def __post_init__(self):
        if not (np.isfinite(self.w) and self.w > 0):
            raise InvalidCutoff(f"cutoff width must be positive, got {self.w!r}")

    def __call__(self, q):
        return np.exp(-(self.w * np.asarray(q)) ** 2)


@dataclass(frozen=True)
class AiryPacket:
    A: float
    B: float
    C: float


def omega_hat(k: ArrayLike, rho: float, scales: LatticeScales = UNIT_SCALES):
    """Cubic truncation of the principal dispersion branch."""
    k = np.asarray(k, dtype=float)
    X, T = scales.X, scales.T
    sr = np.sqrt(rho)
    return sr * (X / T) * k - sr * (1.0 - rho) * (X ** 3 / T) * k ** 3 / 6.0


def airy_packet(xi: float, tau: float, rho: float, cutoff: CutoffSpec) -> AiryPacket:
    sr = np.sqrt(rho)
    return AiryPacket(float(xi - sr * tau), float(0.5 * sr * (1.0 - rho) * tau),
                      float(cutoff.w ** 2))


def zeta_closed(A: ArrayLike, B: ArrayLike, C: ArrayLike) -> NDArray[np.float64]:
    """
    Closed-form ``Z(A, B, C)``, vectorized.

    ``|B| <= B_EPS`` falls back to the exact Gaussian limit; ``B < 0`` uses
    ``Z(A, B, C) = Z(-A, -B, C)``.
    """
    A, B, C = np.broadcast_arrays(np.asarray(A, float), np.asarray(B, float),
                                  np.asarray(C, float))
    if np.any(C <= 0):
        raise InvalidCutoff("C = w^2 must be positive")
    flip = B < 0
    A = np.where(flip, -A, A)
    B = np.abs(B)
    out = np.empty(A.shape)

    gauss = B <= B_EPS
    if gauss.any():
        a, c = A[gauss], C[gauss]
        out[gauss] = np.sqrt(np.pi / c) * np.exp(-a * a / (4 * c))

    rest = ~gauss
    a, b, c = A[rest], B[rest], C[rest]
    disc = c * c + a * b
    z = disc / b ** (4.0 / 3.0)
    pref = 2 * np.pi / np.cbrt(b)
    vals = np.empty(a.shape)

    up = disc >= 0
    if up.any():
        s = np.sqrt(disc[up])
        expo = -a[up] ** 2 * (2 * s + c[up]) / (3 * (s + c[up]) ** 2)
        vals[up] = pref[up] * np.exp(expo) * airy_ai_array(z[up], scaled=True)
    down = ~up
    if down.any():
        ad, bd, cd = a[down], b[down], c[down]
        expo = (3 * ad * bd * cd + 2 * cd ** 3) / (3 * bd * bd)
        live = expo > -745.0
        v = np.zeros(ad.shape)
        if live.any():
            v[live] = pref[down][live] * np.exp(expo[live]) * airy_ai_array(
                z[down][live])
        vals[down] = v
    out[rest] = vals
    return out


def zeta(xi: ArrayLike, tau: ArrayLike, rho: float,
         cutoff: CutoffSpec = CutoffSpec(), verify: bool = False,
         rtol: float = 1e-6) -> NDArray[np.float64]:
    """
    Airy packet ``Z(xi, tau)`` for coin ``rho`` and Gaussian cutoff ``w``.

    With ``verify=True`` every value is recomputed by direct quadrature and
    a ``NonConvergent`` error is raised if the two disagree beyond ``rtol``.
    """
    if not isinstance(cutoff, CutoffSpec):
        cutoff = CutoffSpec(cutoff)
    xi, tau = np.broadcast_arrays(np.asarray(xi, float), np.asarray(tau, float))
    sr = np.sqrt(rho)
    A = xi - sr * tau
    B = 0.5 * sr * (1.0 - rho) * tau
    C = cutoff.w ** 2
    out = zeta_closed(A, B, C)
    if verify:
        for a, b, v in zip(A.ravel(), B.ravel(), out.ravel()):
            ref = oscillatory_cubic_gaussian(a, b, C)
            if abs(v - ref) > rtol * abs(ref):
                raise NonConvergent(
                    f"Airy closed form {v!r} disagrees with quadrature {ref!r}")
    return out


def default_parity(tau: float) -> int:
    """Parity (0 even, 1 odd) of ``round(tau)``."""
    return int(round(float(tau))) % 2


@dataclass(frozen=True)
class ContinuumFields:
    """
    Long-wavelength fields ``R+, R-, L+, L-`` for a walker started on site 0
    with spinor ``(r00, l00)``:

        R+-(xi,tau) = r00 [Z(+-xi) +- sqrt(rho) Z(+-(xi-1))]
                      +- sqrt(1-rho) l00 Z(+-(xi+1))
        L+-(xi,tau) = l00 [Z(+-xi) -+ sqrt(rho) Z(+-(xi+1))]
                      +- sqrt(1-rho) r00 Z(+-(xi-1))
    """

    r00: complex
    l00: complex
    rho: float
    cutoff: CutoffSpec = CutoffSpec()

    def _z(self, xi, tau):
        return zeta(xi, tau, self.rho, self.cutoff)

    def field(self, channel: str, sign, xi: ArrayLike, tau: float) -> NDArray:
        s = 1 if sign in ("+", 1) else -1
        if sign not in ("+", "-", 1, -1):
            raise ValueError("sign must be '+' or '-'")
        xi = np.asarray(xi, dtype=float)
        sr, sc = np.sqrt(self.rho), np.sqrt(1.0 - self.rho)
        z0 = self._z(s * xi, tau)
        zm = self._z(s * (xi - 1.0), tau)
        zp = self._z(s * (xi + 1.0), tau)
        if channel == "R":
            return self.r00 * (z0 + s * sr * zm) + s * sc * self.l00 * zp
        if channel == "L":
            return self.l00 * (z0 - s * sr * zp) + s * sc * self.r00 * zm
        raise ValueError("channel must be 'R' or 'L'")

    def r_plus(self, xi, tau):
        return self.field("R", "+", xi, tau)

    def r_minus(self, xi, tau):
        return self.field("R", "-", xi, tau)

    def l_plus(self, xi, tau):
        return self.field("L", "+", xi, tau)

    def l_minus(self, xi, tau):
        return self.field("L", "-", xi, tau)


def continuum_fields(initial: WalkState, coin: CoinParameter,
                     cutoff: CutoffSpec = CutoffSpec()) -> ContinuumFields:
    """
    Long-wavelength fields for a walk started on site 0.

    Raises
    ------
    UnsupportedCoin
        For ``rho`` equal to 0 or 1, where the packets do not disperse.
    """
    if not 0.0 < coin.rho < 1.0:
        raise UnsupportedCoin("long-wavelength packets need 0 < rho < 1")
    if initial.step != 0:
        raise ValueError("continuum_fields expects a state at step 0")
    r00, l00 = initial.amplitude(0)
    rest = initial.norm() - abs(r00) ** 2 - abs(l00) ** 2
    if rest > 1e-15:
        raise ValueError("initial state must be localized on site 0")
    return ContinuumFields(r00, l00, coin.rho, cutoff)


@dataclass(frozen=True, eq=False)
class LongwaveDistribution:
    xi: NDArray[np.float64]
    p_total: NDArray[np.float64]
    p_right: NDArray[np.float64]
    p_left: NDArray[np.float64]
    tau: float
    parity: int


def continuum_probability(fields: ContinuumFields, xi_grid: ArrayLike, tau: float,
                          parity: int | None = None,
                          normalize: bool = False) -> LongwaveDistribution:
    """
    ``P^A(xi, tau) = |A+(xi, tau) + (-1)^n A-(xi, tau)|^2`` for ``A = R, L``.

    Parameters
    ----------
    parity : {0, 1}, optional
        Parity of ``n`` in the ``(-1)^n`` factor; defaults to that of
        ``round(tau)``.
    normalize : bool
        Rescale so that the trapezoid integral of ``P`` over the grid is 1.
    """
    xi = np.asarray(xi_grid, dtype=float)
    if not np.all(np.isfinite(xi)):
        raise ValueError("grid must be finite")
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    parity = default_parity(tau) if parity is None else int(parity) % 2
    alt = -1.0 if parity else 1.0
    r = fields.field("R", "+", xi, tau) + alt * fields.field("R", "-", xi, tau)
    l = fields.field("L", "+", xi, tau) + alt * fields.field("L", "-", xi, tau)
    pr, pl = np.abs(r) ** 2, np.abs(l) ** 2
    if normalize:
        total = np.trapezoid(pr + pl, xi) if xi.size > 1 else float(pr + pl)
        if not total > 0:
            raise ValueError("cannot normalize a vanishing distribution")
        pr, pl = pr / total, pl / total
    return LongwaveDistribution(xi, pr + pl, pr, pl, float(tau), parity)


def lattice_probability(fields: ContinuumFields, n: int,
                        m_max: int | None = None) -> LongwaveDistribution:
    """
    Long-wavelength probability sampled at the integer sites the exact walk
    can occupy at step ``n`` (``m + n`` even).
    """
    m_max = n if m_max is None else m_max
    m = np.arange(-m_max, m_max + 1)
    m = m[(m + n) % 2 == 0]
    return continuum_probability(fields, m.astype(float), float(n), parity=n % 2)
