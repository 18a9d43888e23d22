"""
Coined quantum walk on a line, solved four ways.

Direct iteration (:mod:`qwalk.walk`), the decoupled three-term recurrence
(:mod:`qwalk.recurrence`), the exact Green-function solution
(:mod:`qwalk.spectral`) and the long-wavelength Airy-packet approximation
(:mod:`qwalk.longwave`) all compute the same amplitudes. :mod:`qwalk.cli`
wraps them in a small command-line tool that writes CSV.
"""

from importlib.metadata import PackageNotFoundError, version

from .conventions import (NVState, from_nv, nv_closed_form, nv_evolve, nv_initial,
                          nv_step, to_nv)
from .errors import (AiryRangeError, ConfigError, DegenerateDenominator,
                     EmptyDistribution, InvalidCutoff, NonConvergent, NotNormalized,
                     QWalkError, UnsupportedCoin)
from .longwave import (AiryPacket, ContinuumFields, CutoffSpec, LongwaveDistribution,
                       continuum_fields, continuum_probability, lattice_probability,
                       omega_hat, zeta, zeta_closed)
from .recurrence import bootstrap, decoupled_state, decoupled_step, evolve_decoupled
from .special import airy_ai, airy_ai_array, oscillatory_cubic_gaussian
from .spectral import (DispersionBranch, ExactFields, GreenFunctionSampler,
                       LatticeScales, dispersion_residual, exact_fields, green, omega0,
                       omega1, reconstruct, spectral_state, spectrum_from_initial,
                       spectrum_from_samples)
from .walk import (DEFAULT_SPINOR, CoinParameter, ProbabilityDistribution, WalkState,
                   evolve, make_initial, mean_displacement, probability, step)

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # pragma: no cover - running from a source tree
    __version__ = "0.1.0"
