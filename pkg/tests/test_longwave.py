import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwalk.errors import InvalidCutoff, NonConvergent, UnsupportedCoin
from qwalk.longwave import (B_EPS, CutoffSpec, airy_packet, continuum_fields,
                            continuum_probability, default_parity, lattice_probability,
                            omega_hat, zeta, zeta_closed)
from qwalk.special import oscillatory_cubic_gaussian
from qwalk.spectral import omega0
from qwalk.walk import DEFAULT_SPINOR, CoinParameter, WalkState, evolve, make_initial


def default_fields(w=0.4, rho=0.5):
    return continuum_fields(make_initial(*DEFAULT_SPINOR), CoinParameter(rho), CutoffSpec(w))


class TestCutoff:
    def test_shape(self):
        g = CutoffSpec(0.4)
        q = np.linspace(0, 10, 101)
        assert g(0.0) == 1.0
        np.testing.assert_array_equal(g(q), g(-q))
        assert np.all(np.diff(g(q)) < 0)

    @pytest.mark.parametrize("w", [0.0, -0.3, np.nan])
    def test_invalid(self, w):
        with pytest.raises(InvalidCutoff):
            CutoffSpec(w)


class TestOmegaHat:
    def test_limits(self):
        assert omega_hat(0.0, 0.5) == 0.0
        k = np.linspace(-2, 2, 9)
        np.testing.assert_array_equal(omega_hat(k, 1.0), k)

    def test_cubic_truncation(self):
        k = np.array([1e-2, 2e-2, 4e-2])
        err = np.abs(omega0(k, 0.4) - omega_hat(k, 0.4))
        # next term is O(k^5)
        assert np.all(err <= 0.1 * k ** 5)


class TestZeta:
    def test_gaussian_limit(self):
        C = 0.16
        xi = np.linspace(-3, 3, 13)
        ref = np.sqrt(np.pi / C) * np.exp(-xi ** 2 / (4 * C))
        np.testing.assert_allclose(zeta(xi, 0.0, 0.5), ref, rtol=1e-14)
        for rho in (0.0, 1.0):
            A = xi - np.sqrt(rho) * 50.0
            np.testing.assert_allclose(zeta(xi, 50.0, rho),
                                       np.sqrt(np.pi / C) * np.exp(-A ** 2 / (4 * C)),
                                       rtol=1e-14)

    def test_tiny_b_is_continuous(self):
        A, C = 0.7, 0.16
        lo = zeta_closed(A, 0.5 * B_EPS, C)
        hi = zeta_closed(A, 2 * B_EPS, C)
        assert abs(lo - hi) <= 1e-8 * abs(lo)

    def test_front_point(self):
        v = zeta(141.0, 200.0, 0.5, CutoffSpec(0.4))
        p = airy_packet(141.0, 200.0, 0.5, CutoffSpec(0.4))
        ref = oscillatory_cubic_gaussian(p.A, p.B, p.C)
        assert abs(v - ref) <= 1e-6 * abs(ref)

    def test_random_points(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            rho = rng.uniform(0.05, 0.95)
            tau = rng.uniform(0.5, 250)
            xi = rng.uniform(-1.3, 1.3) * tau
            w = rng.uniform(0.2, 0.7)
            p = airy_packet(xi, tau, rho, CutoffSpec(w))
            ref = oscillatory_cubic_gaussian(p.A, p.B, p.C)
            v = zeta(xi, tau, rho, CutoffSpec(w))
            assert abs(v - ref) <= 1e-6 * abs(ref)

    def test_negative_b(self):
        assert zeta_closed(0.3, -2.0, 0.2) == zeta_closed(-0.3, 2.0, 0.2)

    def test_verify_flag(self, monkeypatch):
        zeta([0.0, 10.0], 20.0, 0.5, verify=True)
        import qwalk.longwave as lw
        monkeypatch.setattr(lw, "oscillatory_cubic_gaussian", lambda a, b, c: 123.0)
        with pytest.raises(NonConvergent):
            lw.zeta(0.0, 20.0, 0.5, verify=True)

    def test_invalid_c(self):
        with pytest.raises(InvalidCutoff):
            zeta_closed(0.0, 1.0, 0.0)
        with pytest.raises(InvalidCutoff):
            zeta(0.0, 1.0, 0.5, cutoff=-1.0)

    @given(st.floats(-300, 300), st.floats(0, 300), st.floats(0.01, 0.99),
           st.floats(0.1, 1.0))
    def test_finite(self, xi, tau, rho, w):
        assert np.isfinite(zeta(xi, tau, rho, CutoffSpec(w)))


class TestContinuumFields:
    def test_right_mover_left_field(self):
        rho = 0.5
        f = continuum_fields(make_initial(1, 0), CoinParameter(rho))
        xi = np.linspace(-50, 50, 21)
        for s, sign in ((1, "+"), (-1, "-")):
            ref = s * np.sqrt(1 - rho) * zeta(s * (xi - 1), 40.0, rho)
            np.testing.assert_array_equal(f.field("L", sign, xi, 40.0), ref)

    def test_initial_profile(self):
        w = 0.1
        r0, l0 = DEFAULT_SPINOR
        rho = 0.5
        f = continuum_fields(make_initial(r0, l0), CoinParameter(rho), CutoffSpec(w))
        scale = w / math.sqrt(math.pi)  # Z(0, 0) = sqrt(pi) / w
        one = evolve(make_initial(r0, l0), CoinParameter(rho), 1)
        for s, sign in ((1, "+"), (-1, "-")):
            vals = f.field("R", sign, np.array([-1.0, 0.0, 1.0]), 0.0) * scale
            # A(xi, 0) = a00 G(0) +- a[-1,1] G(-1) +- a[1,1] G(1)
            assert vals[1] == pytest.approx(r0, abs=1e-10)
            assert vals[2] == pytest.approx(s * one.amplitude(1)[0], abs=1e-10)
            assert vals[0] == pytest.approx(s * one.amplitude(-1)[0], abs=1e-10)

    @pytest.mark.parametrize("rho", [0.0, 1.0])
    def test_unsupported(self, rho):
        with pytest.raises(UnsupportedCoin):
            continuum_fields(make_initial(1, 0), CoinParameter(rho))

    def test_bad_initial(self):
        with pytest.raises(ValueError):
            continuum_fields(evolve(make_initial(1, 0), CoinParameter(0.5), 1),
                             CoinParameter(0.5))
        spread = WalkState(0, [0.6, 0.0], [0.0, 0.8], first_site=0)
        with pytest.raises(ValueError):
            continuum_fields(spread, CoinParameter(0.5))

    def test_bad_sign_channel(self):
        f = default_fields()
        with pytest.raises(ValueError):
            f.field("X", "+", 0.0, 1.0)
        with pytest.raises(ValueError):
            f.field("R", "*", 0.0, 1.0)


class TestProbability:
    def test_two_peak_shape(self):
        xi = np.arange(-250, 250.5, 0.5)
        d = continuum_probability(default_fields(), xi, 200.0)
        assert d.parity == 0
        np.testing.assert_allclose(d.p_total, d.p_total[::-1], rtol=1e-9, atol=0)
        right = xi[xi > 0][np.argmax(d.p_total[xi > 0])]
        assert 130 <= right <= 146
        p0 = d.p_total[xi == 0][0]
        assert 0 < p0 < 0.2 * d.p_total.max()

    def test_cutoff_trend(self):
        xi = np.arange(-4000, 4000.01, 0.05)
        p = {w: continuum_probability(default_fields(w), xi, 200.0).p_total
             for w in (0.25, 0.4, 0.55)}
        mid = np.argmin(np.abs(xi))
        assert p[0.55][mid] < p[0.4][mid]
        far = np.abs(xi) > 146
        frac = np.trapezoid(p[0.25] * far, xi) / np.trapezoid(p[0.25], xi)
        assert frac >= 0.01

    def test_normalize(self):
        xi = np.linspace(-300, 300, 6001)
        d = continuum_probability(default_fields(), xi, 200.0, normalize=True)
        assert np.trapezoid(d.p_total, xi) == pytest.approx(1.0, rel=1e-12)
        np.testing.assert_allclose(d.p_total, d.p_right + d.p_left)

    def test_parity_flag(self):
        f = default_fields()
        xi = np.linspace(-10, 10, 5)
        even = continuum_probability(f, xi, 20.0, parity=0)
        odd = continuum_probability(f, xi, 20.0, parity=1)
        assert default_parity(20.4) == 0 and default_parity(20.6) == 1
        assert not np.allclose(even.p_total, odd.p_total)

    def test_errors(self):
        f = default_fields()
        with pytest.raises(ValueError):
            continuum_probability(f, [0.0], -1.0)
        with pytest.raises(ValueError):
            continuum_probability(f, [np.nan], 1.0)

    def test_lattice_sampling(self):
        d = lattice_probability(default_fields(), 11)
        assert np.all((d.xi + 11) % 2 == 0)
        assert d.parity == 1


def _d1(F, x, h):
    return (F(x + h) - F(x - h)) / (2 * h)


def _d3(F, x, h):
    return (F(x + 2 * h) - 2 * F(x + h) + 2 * F(x - h) - F(x - 2 * h)) / (2 * h ** 3)


def test_pde_residual():
    rho = 0.5
    f = default_fields(0.4, rho)
    rng = np.random.default_rng(5)
    h = 1e-2
    sr = math.sqrt(rho)
    worst = 0.0
    for _ in range(50):
        tau = rng.uniform(10, 200)
        xi = rng.uniform(-1.2, 1.2) * sr * tau
        for ch in "RL":
            for s, sign in ((1, "+"), (-1, "-")):
                fx = lambda x: f.field(ch, sign, x, tau)
                ft = lambda t: f.field(ch, sign, xi, t)
                lhs = _d1(ft, tau, h)
                a1, a3 = _d1(fx, xi, h), _d3(fx, xi, h)
                rhs = -s * sr * (a1 + (1 - rho) / 6 * a3)
                scale = max(abs(lhs), sr * abs(a1), sr * (1 - rho) / 6 * abs(a3))
                worst = max(worst, abs(lhs - rhs) / scale)
    assert worst <= 1e-4


def _front_peak(rho, tau, w=0.4):
    sr = math.sqrt(rho)
    xi = np.arange(sr * tau - 30, sr * tau + 10, 1e-3)
    f = default_fields(w, rho)
    return xi[np.argmax(np.abs(f.r_plus(xi, tau)) ** 2)]


def test_group_velocity():
    rho = 0.5
    v = (_front_peak(rho, 200.0) - _front_peak(rho, 100.0)) / 100.0
    assert abs(v - math.sqrt(rho)) <= 0.02 * math.sqrt(rho)


def _airy_spacing(rho, tau=200.0, w=0.25):
    sr = math.sqrt(rho)
    xi = np.arange(sr * tau - 60, sr * tau + 5, 1e-3)
    z = zeta(xi, tau, rho, CutoffSpec(w))
    zeros = xi[:-1][np.sign(z[:-1]) != np.sign(z[1:])]
    # first two zeros behind the front
    return zeros[-1] - zeros[-2]


def test_spacing_follows_dispersion_coefficient():
    rhos = [0.5, 0.7, 0.9]
    sp = [_airy_spacing(r) for r in rhos]
    assert sp[0] > sp[1] > sp[2]
    coef = [math.sqrt(r) * (1 - r) for r in rhos]
    for s, c in zip(sp[1:], coef[1:]):
        assert s / sp[0] == pytest.approx((c / coef[0]) ** (1 / 3), rel=0.1)
