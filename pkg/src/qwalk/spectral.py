r"""
Exact solution of the walk through its dispersion relation.

Plane waves ``exp(i(kx - wt))`` solve the decoupled recurrence when

.. math:: \sin \omega T = \sqrt{\rho} \sin kX

which has two branches in the zone ``-pi/T < w <= pi/T``: ``omega0`` with
``omega0(0) = 0`` and ``omega1 = -omega0 + pi/T`` (``k >= 0``) or
``-omega0 - pi/T`` (``k < 0``). The second branch only contributes a factor
``(-1)**n`` on the lattice, so each channel ``a`` splits into two fields,

    a[m, n] = a+(mX, nT) + (-1)**n a-(mX, nT),

and all four fields (R+, R-, L+, L-) are sums of shifted copies of one Green
function

.. math:: g(x; t) = \frac{X}{4\pi} \int_{-\pi/X}^{\pi/X} dk\,
          \frac{e^{ikx} e^{-i\omega_0(k) t}}{\sqrt{1 - \rho \sin^2 kX}}

weighted by the first two amplitude rows. Brillouin-zone integrals use the
trapezoid rule on ``M`` uniform nodes, which converges geometrically for the
periodic integrands met at lattice points when ``rho < 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DegenerateDenominator, NonConvergent, UnsupportedCoin
from .walk import CoinParameter, WalkState

__all__ = [
    "LatticeScales",
    "UNIT_SCALES",
    "omega0",
    "omega1",
    "dispersion_residual",
    "DispersionBranch",
    "FieldSpectrum",
    "spectrum_from_initial",
    "spectrum_from_samples",
    "GreenFunctionSampler",
    "green",
    "ExactFields",
    "exact_fields",
    "reconstruct",
    "spectral_state",
    "DEFAULT_NODES",
]

DEFAULT_NODES = 4096


@dataclass(frozen=True)
class LatticeScales:
    """Site spacing ``X`` and step duration ``T``."""

    X: float = 1.0
    T: float = 1.0

    def __post_init__(self):
        if not (self.X > 0 and self.T > 0):
            raise ValueError("lattice scales must be positive")


UNIT_SCALES = LatticeScales()


def _check_rho(rho):
    if not 0.0 <= rho <= 1.0:
        raise UnsupportedCoin(f"rho must lie in [0, 1], got {rho!r}")


def omega0(k: ArrayLike, rho: float, scales: LatticeScales = UNIT_SCALES):
    """Principal dispersion branch ``arcsin(sqrt(rho) sin kX) / T``."""
    _check_rho(rho)
    k = np.asarray(k, dtype=float)
    return np.arcsin(np.sqrt(rho) * np.sin(k * scales.X)) / scales.T


def omega1(k: ArrayLike, rho: float, scales: LatticeScales = UNIT_SCALES):
    """
    Second dispersion branch ``-omega0(k) + pi/T`` (``k >= 0``) or
    ``-omega0(k) - pi/T`` (``k < 0``).

    Values are wrapped into ``(-pi/T, pi/T]``; the wrap only acts where
    ``omega0`` vanishes at negative ``k`` (``rho = 0``), mapping ``-pi/T`` to
    the equivalent ``+pi/T``.
    """
    k = np.asarray(k, dtype=float)
    w0 = omega0(k, rho, scales)
    half = np.pi / scales.T
    w1 = np.where(k >= 0, half - w0, -half - w0)
    return np.where(w1 <= -half, w1 + 2 * half, w1)


def dispersion_residual(k, omega, rho, scales: LatticeScales = UNIT_SCALES):
    """``sin(omega T) - sqrt(rho) sin(kX)``."""
    return np.sin(np.asarray(omega) * scales.T) - np.sqrt(rho) * np.sin(
        np.asarray(k) * scales.X)


@dataclass(frozen=True)
class DispersionBranch:
    rho: float
    branch: int
    scales: LatticeScales = UNIT_SCALES

    def __post_init__(self):
        _check_rho(self.rho)
        if self.branch not in (0, 1):
            raise ValueError("branch must be 0 or 1")

    def __call__(self, k):
        fn = omega0 if self.branch == 0 else omega1
        return fn(k, self.rho, self.scales)


def _inverse_cos(k, rho, scales):
    """``1 / sqrt(1 - rho sin^2 kX)``, the inversion weight."""
    if rho >= 1.0:
        raise DegenerateDenominator(
            "spectral inversion divides by sqrt(1 - rho sin^2 kX), zero at rho = 1")
    return 1.0 / np.sqrt(1.0 - rho * np.sin(np.asarray(k) * scales.X) ** 2)


def _centered_first(row):
    return -((len(row) - 1) // 2)


def _sign(sign) -> int:
    if sign in ("+", 1, +1):
        return 1
    if sign in ("-", -1):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True, eq=False)
class FieldSpectrum:
    """
    Fourier amplitude ``a+(k)`` or ``a-(k)`` of one channel, built from two
    consecutive amplitude rows.
    """

    channel: str
    sign: int
    rho: float
    scales: LatticeScales
    row0: NDArray[np.complex128]
    first0: int
    row1: NDArray[np.complex128]
    first1: int

    def __call__(self, k: ArrayLike) -> NDArray[np.complex128]:
        k = np.asarray(k, dtype=float)
        X, T = self.scales.X, self.scales.T
        kk = k[..., None]
        m0 = np.arange(self.first0, self.first0 + self.row0.size)
        m1 = np.arange(self.first1, self.first1 + self.row1.size)
        s0 = np.sum(self.row0 * np.exp(-1j * kk * m0 * X), axis=-1)
        s1 = np.sum(self.row1 * np.exp(-1j * kk * m1 * X), axis=-1)
        phase = np.exp(self.sign * 1j * omega0(k, self.rho, self.scales) * T)
        return (X / (4 * np.pi)) * (phase * s0 + self.sign * s1) * _inverse_cos(
            k, self.rho, self.scales)


def spectrum_from_initial(row0: ArrayLike, row1: ArrayLike, sign, rho: float,
                          scales: LatticeScales = UNIT_SCALES,
                          first0: int | None = None, first1: int | None = None,
                          channel: str = "") -> FieldSpectrum:
    """
    Fourier amplitudes of one channel from its rows at ``n = 0`` and ``n = 1``.

    Rows are 1-D arrays whose element ``j`` sits on site ``first + j``; with
    ``first`` omitted an odd-length row is taken as centred on site 0.

    Raises
    ------
    DegenerateDenominator
        If ``rho == 1``.
    """
    _check_rho(rho)
    if rho >= 1.0:
        raise DegenerateDenominator("rho = 1 has no spectral inversion")
    row0 = np.asarray(row0, dtype=np.complex128)
    row1 = np.asarray(row1, dtype=np.complex128)
    first0 = _centered_first(row0) if first0 is None else first0
    first1 = _centered_first(row1) if first1 is None else first1
    return FieldSpectrum(channel, _sign(sign), float(rho), scales,
                         row0, first0, row1, first1)


def spectrum_from_samples(values: ArrayLike, sites: ArrayLike, t: float, sign,
                          rho: float, scales: LatticeScales = UNIT_SCALES):
    """
    Fourier amplitude recovered from field samples at one time:

        a(k) = (X / 2 pi) exp(+-i omega0(k) t) sum_m a(mX, t) exp(-ikmX)

    Independent of ``t`` for a genuine solution, which is what the tests use
    it to check.
    """
    values = np.asarray(values, dtype=np.complex128)
    sites = np.asarray(sites)
    s = _sign(sign)
    X, T = scales.X, scales.T

    def spectrum(k):
        k = np.asarray(k, dtype=float)
        acc = np.sum(values * np.exp(-1j * k[..., None] * sites * X), axis=-1)
        return (X / (2 * np.pi)) * np.exp(s * 1j * omega0(k, rho, scales) * t) * acc

    return spectrum


@dataclass(eq=False)
class GreenFunctionSampler:
    """
    Trapezoid-rule evaluator of the Green function ``g(x; t)``.

    ``nodes`` (``M``) uniform points span the zone; lattice values for a
    whole row of sites come from one inverse FFT and are cached per time.
    """

    rho: float
    scales: LatticeScales = UNIT_SCALES
    nodes: int = DEFAULT_NODES
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        _check_rho(self.rho)
        if self.rho >= 1.0:
            raise DegenerateDenominator("Green function is singular at rho = 1")
        if self.nodes < 512:
            raise ValueError("at least 512 quadrature nodes are required")
        M = self.nodes
        # k X = pi (2j - M) / M is exactly symmetric under j -> M - j
        self._kx = np.pi * (2 * np.arange(M + 1) - M) / M
        w = np.full(M + 1, 1.0)
        w[0] = w[-1] = 0.5
        self._w = w / (2 * M)  # (X / 4 pi) * (2 pi / (M X)) per node
        self._inv = 1.0 / np.sqrt(1.0 - self.rho * np.sin(self._kx) ** 2)
        self._w0 = np.arcsin(np.sqrt(self.rho) * np.sin(self._kx))  # omega0 T

    def __call__(self, x: ArrayLike, t: ArrayLike) -> NDArray[np.complex128]:
        """Direct evaluation at arbitrary ``(x, t)`` (broadcast)."""
        x, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
        xs = (x / self.scales.X)[..., None]
        ts = (t / self.scales.T)[..., None]
        f = np.exp(1j * (self._kx * xs - self._w0 * ts)) * self._inv
        return f @ self._w

    def lattice(self, t: float) -> NDArray[np.complex128]:
        """
        ``g(mX; t)`` for ``m = 0 .. M-1`` (index ``m mod M``), via FFT.
        """
        key = float(t)
        row = self._cache.get(key)
        if row is None:
            M = self.nodes
            f = np.exp(-1j * self._w0[:M] * (key / self.scales.T)) * self._inv[:M]
            m = np.arange(M)
            row = 0.5 * np.where(m % 2, -1.0, 1.0) * np.fft.ifft(f)
            if len(self._cache) > 512:
                self._cache.clear()
            self._cache[key] = row
        return row

    def at_sites(self, d: ArrayLike, t: float) -> NDArray[np.complex128]:
        """``g(dX; t)`` for integer offsets ``d``."""
        d = np.asarray(d, dtype=np.int64)
        if np.any(np.abs(d) >= self.nodes // 2):
            raise NonConvergent("site offset aliases on this quadrature grid; raise nodes")
        return self.lattice(t)[d % self.nodes]


def green(x, t, sampler: GreenFunctionSampler):
    return sampler(x, t)


@dataclass(eq=False)
class ExactFields:
    """
    The four fields ``R+, R-, L+, L-`` of a walk started from ``initial``.

    Each field is a Green-function sum over the initial support:

        R+-(x,t) = sum_m g(+-(x-mX); t-T) R[m,0]
                   +- sqrt(rho)   sum_m g(+-(x-mX); t) R[m-1,0]
                   +- sqrt(1-rho) sum_m g(+-(x-mX); t) L[m+1,0]
        L+-(x,t) = sum_m g(+-(x-mX); t-T) L[m,0]
                   -+ sqrt(rho)   sum_m g(+-(x-mX); t) L[m+1,0]
                   +- sqrt(1-rho) sum_m g(+-(x-mX); t) R[m-1,0]
    """

    initial: WalkState
    coin: CoinParameter
    sampler: GreenFunctionSampler

    @property
    def scales(self) -> LatticeScales:
        return self.sampler.scales

    def _terms(self, channel):
        """(shift, weight_t_minus_T, weight_t, signed) site lists."""
        st = self.initial
        a, b = self.coin.sqrt_rho, self.coin.sqrt_comp
        sites = st.sites
        if channel == "R":
            own, same, other = st.r_amp, st.r_amp, st.l_amp
            # R[m-1,0] feeds g(x - mX) -> source site j = m - 1, m = j + 1
            return [(sites, own, 0.0, "0"),
                    (sites + 1, a * same, 1.0, "+"),
                    (sites - 1, b * other, 1.0, "+")]
        if channel == "L":
            own, same, other = st.l_amp, st.l_amp, st.r_amp
            return [(sites, own, 0.0, "0"),
                    (sites - 1, a * same, 1.0, "-"),
                    (sites + 1, b * other, 1.0, "+")]
        raise ValueError("channel must be 'R' or 'L'")

    def field(self, channel: str, sign, x: ArrayLike, t: float) -> NDArray:
        """Evaluate ``channel`` field with ``sign`` at positions ``x``, time ``t``."""
        s = _sign(sign)
        X, T = self.scales.X, self.scales.T
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=np.complex128)
        for centers, weights, dt, kind in self._terms(channel):
            tt = t - T if dt == 0.0 else t
            coef = 1.0 if kind == "0" else (s if kind == "+" else -s)
            for c, wgt in zip(centers, weights):
                if wgt != 0:
                    out += coef * wgt * self.sampler(s * (x - c * X), tt)
        return out

    def field_on_lattice(self, channel: str, sign, sites: ArrayLike, n: int) -> NDArray:
        """Same as :meth:`field` at ``x = mX``, ``t = nT`` using lattice FFTs."""
        s = _sign(sign)
        T = self.scales.T
        sites = np.asarray(sites, dtype=np.int64)
        out = np.zeros(sites.shape, dtype=np.complex128)
        for centers, weights, dt, kind in self._terms(channel):
            tt = (n - 1) * T if dt == 0.0 else n * T
            coef = 1.0 if kind == "0" else (s if kind == "+" else -s)
            for c, wgt in zip(centers, weights):
                if wgt != 0:
                    out += coef * wgt * self.sampler.at_sites(s * (sites - c), tt)
        return out

    def r_plus(self, x, t):
        return self.field("R", "+", x, t)

    def r_minus(self, x, t):
        return self.field("R", "-", x, t)

    def l_plus(self, x, t):
        return self.field("L", "+", x, t)

    def l_minus(self, x, t):
        return self.field("L", "-", x, t)


def exact_fields(initial: WalkState, coin: CoinParameter,
                 scales: LatticeScales = UNIT_SCALES,
                 nodes: int = DEFAULT_NODES) -> ExactFields:
    """
    Green-function representation of the walk started from ``initial``.

    Raises
    ------
    DegenerateDenominator
        For ``rho == 1``.
    """
    if initial.step != 0:
        raise ValueError("exact_fields expects a state at step 0")
    return ExactFields(initial, coin, GreenFunctionSampler(coin.rho, scales, nodes))


def reconstruct(fields: ExactFields, m: ArrayLike, n: int):
    """
    Amplitudes ``(R[m, n], L[m, n]) = a+(mX, nT) + (-1)**n a-(mX, nT)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = np.asarray(m, dtype=np.int64)
    alt = -1.0 if n % 2 else 1.0
    out = []
    for ch in ("R", "L"):
        out.append(fields.field_on_lattice(ch, "+", m, n)
                   + alt * fields.field_on_lattice(ch, "-", m, n))
    return out[0], out[1]


def spectral_state(initial: WalkState, coin: CoinParameter, n: int,
                   nodes: int = DEFAULT_NODES,
                   fields: ExactFields | None = None) -> WalkState:
    """Walk state at step ``n`` assembled from the Green-function fields."""
    if fields is None:
        fields = exact_fields(initial, coin, nodes=nodes)
    first = initial.first_site - n
    sites = np.arange(first, initial.last_site + n + 1)
    r, l = reconstruct(fields, sites, n)
    return WalkState(n, r, l, first_site=first)
