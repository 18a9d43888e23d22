"""
``qwalk <mode>``: run one computation and write it as CSV.

Modes
-----
walk, decoupled, spectral
    Site probabilities ``m, P, P_R, P_L`` after ``--steps`` steps.
longwave
    Airy-packet probabilities ``xi, P, P_R, P_L`` at ``--tau`` on ``--grid``.
dispersion
    Both dispersion branches ``k, omega0, omega1, residual`` on ``--grid``.
compare
    Iteration, decoupled recurrence and spectral solution side by side; the
    long-wavelength result is summarized in the metadata only.
nv
    Hadamard walk in the Nayak-Vishwanath labelling from their standard
    start, by iteration and by quadrature.

Exit status is 0 on success, 2 for bad input, 3 when a numerical method
fails to converge and 4 for I/O errors.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .conventions import nv_closed_form, nv_evolve, nv_initial
from .errors import (AiryRangeError, ConfigError, DegenerateDenominator,
                     NonConvergent, QWalkError)
from .io import ResultTable, emit_csv, format_value
from .longwave import CutoffSpec, DEFAULT_W, continuum_fields, continuum_probability
from .longwave import lattice_probability
from .recurrence import decoupled_state
from .spectral import DEFAULT_NODES, dispersion_residual, omega0, omega1, spectral_state
from .walk import DEFAULT_SPINOR, CoinParameter, evolve, make_initial, probability

__all__ = ["RunConfig", "run", "main", "parse_complex", "format_complex",
           "parse_grid", "thread_count", "EXIT_OK", "EXIT_CONFIG",
           "EXIT_NONCONVERGENT", "EXIT_IO", "COMPARE_TOL"]

log = logging.getLogger("qwalk")

MODES = ("walk", "decoupled", "spectral", "longwave", "dispersion", "compare", "nv")
LATTICE_MODES = ("walk", "decoupled", "spectral", "compare", "nv")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGENT = 3
EXIT_IO = 4

COMPARE_TOL = 1e-8
MIN_NODES = 512


# ---------------------------------------------------------------- parsing

def parse_complex(text: str) -> complex:
    """
    Parse ``"a+bi"`` style input (``j`` is accepted too).

    >>> parse_complex("0.6-0.8i")
    (0.6-0.8j)
    >>> parse_complex("i")
    1j
    """
    s = str(text).strip().replace(" ", "").replace("I", "i").replace("J", "j")
    if not s:
        raise ConfigError("empty complex number")
    s = s.replace("i", "j")
    if s in ("j", "+j"):
        return 1j
    if s == "-j":
        return -1j
    # a bare trailing "+j" / "-j" means unit imaginary part
    s = re.sub(r"([+-])j$", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise ConfigError(f"cannot parse complex number {text!r}") from None


def format_complex(z: complex) -> str:
    z = complex(z)
    im = z.imag
    sign = "-" if (im < 0 or (im == 0 and math.copysign(1, im) < 0)) else "+"
    return f"{format_value(z.real)}{sign}{format_value(abs(im))}i"


_PI_RE = re.compile(r"^([+-]?)(\d*\.?\d*(?:[eE][+-]?\d+)?)\*?pi(?:/(\d*\.?\d+))?$")


def _parse_number(tok: str) -> float:
    tok = tok.strip()
    try:
        return float(tok)
    except ValueError:
        pass
    m = _PI_RE.match(tok)
    if not m:
        raise ConfigError(f"cannot parse grid value {tok!r}")
    sign, mult, div = m.groups()
    v = (float(mult) if mult else 1.0) * math.pi / (float(div) if div else 1.0)
    return -v if sign == "-" else v


def parse_grid(text: str) -> tuple[float, float, float]:
    """``"a:b:h"`` with ``h > 0`` and ``b >= a``; ``pi`` multiples allowed."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must look like start:stop:step, got {text!r}")
    a, b, h = (_parse_number(p) for p in parts)
    if not (np.isfinite(a) and np.isfinite(b) and np.isfinite(h)):
        raise ConfigError("grid values must be finite")
    if h <= 0 or b < a:
        raise ConfigError(f"grid needs step > 0 and stop >= start, got {text!r}")
    if (b - a) / h > 5e7:
        raise ConfigError("grid has too many points")
    return a, b, h


def grid_points(grid: tuple[float, float, float]) -> np.ndarray:
    a, b, h = grid
    n = int(math.floor((b - a) / h * (1 + 1e-12) + 1e-9)) + 1
    return a + h * np.arange(n)


def thread_count(env=None) -> int:
    """Worker cap from ``QWALK_THREADS`` (unset or 0 means one per CPU)."""
    env = os.environ if env is None else env
    raw = env.get("QWALK_THREADS", "").strip()
    if raw == "":
        n = 0
    else:
        try:
            n = int(raw)
        except ValueError:
            raise ConfigError(f"QWALK_THREADS must be an integer, got {raw!r}") from None
        if n < 0:
            raise ConfigError("QWALK_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


# ------------------------------------------------------------------ config

@dataclass(frozen=True)
class RunConfig:
    """
    Everything a single ``qwalk`` invocation needs.

    ``steps`` drives the lattice modes and ``tau`` the long-wavelength mode;
    either one is accepted for both as long as lattice times are integers.
    """

    mode: str
    rho: float | None = None
    steps: int | None = None
    tau: float | None = None
    r0: complex = DEFAULT_SPINOR[0]
    l0: complex = DEFAULT_SPINOR[1]
    w: float = DEFAULT_W
    grid: tuple[float, float, float] | None = None
    nodes: int = DEFAULT_NODES
    out: str = "-"
    normalize: bool = False
    spinor_given: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; pick one of {', '.join(MODES)}")
        rho = self.rho
        if self.mode == "nv":
            if rho is not None and rho != 0.5:
                raise ConfigError("nv mode is the Hadamard walk; rho must be 0.5")
            if self.spinor_given:
                raise ConfigError("nv mode always starts from Lhat[m, 0] = delta_m0")
            object.__setattr__(self, "rho", 0.5)
        elif rho is None:
            raise ConfigError(f"--rho is required for mode {self.mode}")
        rho = float(self.rho)
        if not (0.0 <= rho <= 1.0):
            raise ConfigError(f"rho must lie in [0, 1], got {rho!r}")
        object.__setattr__(self, "rho", rho)
        if not (np.isfinite(self.w) and self.w > 0):
            raise ConfigError(f"w must be positive, got {self.w!r}")
        if int(self.nodes) != self.nodes or self.nodes < MIN_NODES:
            raise ConfigError(f"nodes must be an integer >= {MIN_NODES}")

        if self.steps is not None:
            if int(self.steps) != self.steps or self.steps < 0:
                raise ConfigError("steps must be a nonnegative integer")
            if self.tau is not None and float(self.tau) != float(self.steps):
                raise ConfigError("give either --steps or --tau, not both")
        if self.tau is not None:
            if not (np.isfinite(self.tau) and self.tau >= 0):
                raise ConfigError("tau must be nonnegative")

        if self.mode in LATTICE_MODES:
            if self.steps is None:
                if self.tau is None or float(self.tau) != int(self.tau):
                    raise ConfigError(f"mode {self.mode} needs an integer --steps")
                object.__setattr__(self, "steps", int(self.tau))
            object.__setattr__(self, "steps", int(self.steps))
        if self.mode == "longwave":
            if self.tau is None:
                if self.steps is None:
                    raise ConfigError("mode longwave needs --tau (or --steps)")
                object.__setattr__(self, "tau", float(self.steps))
            object.__setattr__(self, "tau", float(self.tau))
            if not 0.0 < rho < 1.0:
                raise ConfigError("the long-wavelength approximation needs 0 < rho < 1")
        if self.mode in ("walk", "decoupled", "spectral", "compare", "longwave"):
            norm = abs(self.r0) ** 2 + abs(self.l0) ** 2
            if abs(norm - 1.0) > 1e-12:
                raise ConfigError(f"|r0|^2 + |l0|^2 = {norm!r}, expected 1")

    def metadata(self) -> dict:
        meta = {"mode": self.mode, "solver": f"qwalk {__version__}",
                "rho": format_value(self.rho)}
        if self.mode in LATTICE_MODES:
            meta["steps"] = str(self.steps)
        if self.mode == "longwave":
            meta["tau"] = format_value(self.tau)
        if self.mode != "dispersion" and self.mode != "nv":
            meta["r0"] = format_complex(self.r0)
            meta["l0"] = format_complex(self.l0)
        if self.mode in ("longwave", "compare"):
            meta["w"] = format_value(self.w)
        if self.mode in ("longwave", "dispersion"):
            meta["grid"] = ":".join(format_value(v) for v in self.resolved_grid())
        if self.mode in ("spectral", "compare", "nv"):
            meta["nodes"] = str(self.nodes)
        if self.mode == "longwave":
            meta["normalize"] = str(bool(self.normalize)).lower()
        return meta

    def resolved_grid(self) -> tuple[float, float, float]:
        if self.grid is not None:
            return self.grid
        if self.mode == "dispersion":
            return (-math.pi, math.pi, math.pi / 500)
        if self.mode == "longwave":
            edge = float(math.ceil(1.25 * self.tau + 10.0))
            return (-edge, edge, 0.5)
        raise ConfigError(f"mode {self.mode} takes no grid")


# -------------------------------------------------------------------- modes

def _initial(cfg: RunConfig):
    return make_initial(cfg.r0, cfg.l0)


def _probability_table(state, meta) -> ResultTable:
    d = probability(state)
    return ResultTable.from_columns(
        {"m": d.sites.astype(float), "P": d.p_total, "P_R": d.p_right, "P_L": d.p_left},
        meta)


def _spectral_or_fallback(cfg: RunConfig, meta: dict):
    init, coin = _initial(cfg), CoinParameter(cfg.rho)
    if cfg.rho == 1.0:
        log.warning("rho = 1 is singular for the spectral solution; "
                    "using direct iteration instead")
        meta["note"] = "rho = 1 routed to direct iteration"
        return evolve(init, coin, cfg.steps)
    if cfg.steps == 0:
        return init
    return spectral_state(init, coin, cfg.steps, nodes=cfg.nodes)


def _run_walk(cfg, meta):
    return _probability_table(evolve(_initial(cfg), CoinParameter(cfg.rho), cfg.steps), meta)


def _run_decoupled(cfg, meta):
    st = decoupled_state(_initial(cfg), CoinParameter(cfg.rho), cfg.steps)
    return _probability_table(st, meta)


def _run_spectral(cfg, meta):
    return _probability_table(_spectral_or_fallback(cfg, meta), meta)


def _run_longwave(cfg, meta):
    fields = continuum_fields(_initial(cfg), CoinParameter(cfg.rho), CutoffSpec(cfg.w))
    xi = grid_points(cfg.resolved_grid())
    d = continuum_probability(fields, xi, cfg.tau, normalize=cfg.normalize)
    meta["parity"] = str(d.parity)
    return ResultTable.from_columns(
        {"xi": d.xi, "P": d.p_total, "P_R": d.p_right, "P_L": d.p_left}, meta)


def _run_dispersion(cfg, meta):
    k = grid_points(cfg.resolved_grid())
    w0 = omega0(k, cfg.rho)
    w1 = omega1(k, cfg.rho)
    res = np.maximum(np.abs(dispersion_residual(k, w0, cfg.rho)),
                     np.abs(dispersion_residual(k, w1, cfg.rho)))
    return ResultTable.from_columns({"k": k, "omega0": w0, "omega1": w1, "residual": res},
                                    meta)


def _longwave_summary(cfg, p_exact, sites) -> dict:
    """Descriptive comparison of the Airy-packet result with the exact one."""
    if not 0.0 < cfg.rho < 1.0:
        return {"longwave": "not applicable for rho in {0, 1}"}
    fields = continuum_fields(_initial(cfg), CoinParameter(cfg.rho), CutoffSpec(cfg.w))
    lw = lattice_probability(fields, cfg.steps)
    p_lw = lw.p_total / lw.p_total.sum()
    on = (sites + cfg.steps) % 2 == 0
    ref = p_exact[on]
    m = lw.xi
    half = m.size // 2
    peak = float(p_lw.max())
    centre = p_lw[m == 0]
    return {
        "longwave_mean": format_value(float(np.sum(m * p_lw))),
        "longwave_peak_left": format_value(float(m[:half + 1][np.argmax(p_lw[:half + 1])])),
        "longwave_peak_right": format_value(float(m[half:][np.argmax(p_lw[half:])])),
        "exact_peak_left": format_value(float(m[:half + 1][np.argmax(ref[:half + 1])])),
        "exact_peak_right": format_value(float(m[half:][np.argmax(ref[half:])])),
        "longwave_center_over_peak":
            format_value(float(centre[0] / peak)) if centre.size else "n/a",
        "longwave_l1_vs_exact": format_value(float(np.abs(p_lw - ref).sum())),
    }


def _run_compare(cfg, meta):
    init, coin = _initial(cfg), CoinParameter(cfg.rho)
    workers = min(3, thread_count())
    with ThreadPoolExecutor(max_workers=workers) as pool:
        f_it = pool.submit(evolve, init, coin, cfg.steps)
        f_de = pool.submit(decoupled_state, init, coin, cfg.steps)
        f_sp = pool.submit(_spectral_or_fallback, cfg, meta)
        it, de, sp = f_it.result(), f_de.result(), f_sp.result()
    p_it, p_de, p_sp = (probability(s).p_total for s in (it, de, sp))
    sites = it.sites
    d_de = float(np.abs(p_de - p_it).max())
    d_sp = float(np.abs(p_sp - p_it).max())
    meta["max_diff_decoupled"] = format_value(d_de)
    meta["max_diff_spectral"] = format_value(d_sp)
    meta["tolerance"] = format_value(COMPARE_TOL)
    meta.update(_longwave_summary(cfg, p_it, sites))
    table = ResultTable.from_columns(
        {"m": sites.astype(float), "P_iter": p_it, "P_decoupled": p_de,
         "P_spectral": p_sp}, meta)
    if max(d_de, d_sp) > COMPARE_TOL:
        raise NonConvergent(f"solvers disagree: decoupled {d_de:.3g}, spectral {d_sp:.3g}")
    return table


def _run_nv(cfg, meta):
    st = nv_evolve(nv_initial(), cfg.steps)[-1]
    rc, lc = nv_closed_form(st.sites, cfg.steps, nodes=cfg.nodes)
    p = np.abs(st.r_hat) ** 2 + np.abs(st.l_hat) ** 2
    pc = np.abs(rc) ** 2 + np.abs(lc) ** 2
    diff = float(max(np.abs(rc - st.r_hat).max(), np.abs(lc - st.l_hat).max()))
    meta["max_diff_closed_form"] = format_value(diff)
    if diff > COMPARE_TOL:
        raise NonConvergent(f"closed form differs from iteration by {diff:.3g}")
    return ResultTable.from_columns(
        {"m": st.sites.astype(float), "Rhat_re": st.r_hat.real, "Rhat_im": st.r_hat.imag,
         "Lhat_re": st.l_hat.real, "Lhat_im": st.l_hat.imag, "P": p, "P_closed": pc},
        meta)


_DISPATCH = {
    "walk": _run_walk,
    "decoupled": _run_decoupled,
    "spectral": _run_spectral,
    "longwave": _run_longwave,
    "dispersion": _run_dispersion,
    "compare": _run_compare,
    "nv": _run_nv,
}


def run(config: RunConfig) -> ResultTable:
    """Dispatch on ``config.mode``; the result depends only on ``config``."""
    meta = config.metadata()
    return _DISPATCH[config.mode](config, meta)


# ---------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qwalk",
                                description="Coined quantum walk on a line.")
    p.add_argument("mode", choices=MODES)
    p.add_argument("--rho", type=float, help="coin parameter in [0, 1]")
    p.add_argument("--steps", type=int, help="number of walk steps n")
    p.add_argument("--tau", type=float, help="normalized time t/T")
    p.add_argument("--r0", help="initial R amplitude, e.g. 0.7071067811865476")
    p.add_argument("--l0", help="initial L amplitude, e.g. 0.7071067811865476i")
    p.add_argument("--w", type=float, default=DEFAULT_W, help="Gaussian cutoff width")
    p.add_argument("--grid", help="start:stop:step for xi or k (pi allowed)")
    p.add_argument("--nodes", type=int, default=DEFAULT_NODES,
                   help="Brillouin-zone quadrature nodes")
    p.add_argument("--normalize", action="store_true",
                   help="normalize the long-wavelength distribution")
    p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    given = ns.r0 is not None or ns.l0 is not None
    if given and (ns.r0 is None or ns.l0 is None):
        raise ConfigError("give both --r0 and --l0")
    r0 = parse_complex(ns.r0) if ns.r0 is not None else DEFAULT_SPINOR[0]
    l0 = parse_complex(ns.l0) if ns.l0 is not None else DEFAULT_SPINOR[1]
    grid = parse_grid(ns.grid) if ns.grid is not None else None
    if grid is not None and ns.mode not in ("longwave", "dispersion"):
        raise ConfigError(f"--grid does not apply to mode {ns.mode}")
    return RunConfig(mode=ns.mode, rho=ns.rho, steps=ns.steps, tau=ns.tau, r0=r0, l0=l0,
                     w=ns.w, grid=grid, nodes=ns.nodes, out=ns.out,
                     normalize=ns.normalize, spinor_given=given)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="qwalk: %(levelname)s: %(message)s")
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with status 2 on bad syntax
    try:
        thread_count()
        cfg = config_from_args(ns)
        table = run(cfg)
        emit_csv(table, cfg.out)
    except (NonConvergent, AiryRangeError, DegenerateDenominator) as exc:
        log.error("%s", exc)
        return EXIT_NONCONVERGENT
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except (QWalkError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
