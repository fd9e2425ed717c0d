"""Analytic error probabilities and bounds for each discrimination scenario.

Every function is a pure scalar formula (numpy-broadcastable over the copy
count), evaluated in log space internally so that large copy counts neither
overflow nor lose the exponent: each value function has a ``*_log10``
companion that stays finite long after the probability itself underflows.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParameterDomainError
from .fock import NoiseSpec

logger = logging.getLogger(__name__)

_LN10 = math.log(10.0)
_LN2 = math.log(2.0)


class DepolarizingInput(Enum):
    PURE = "pure"
    MAX_ENTANGLED = "max_entangled"
    WERNER = "werner"


class NoiseRegime(Enum):
    BRIGHT_NOISE = "bright_noise"
    WEAK_NOISE = "weak_noise"


def _check_dimension(d):
    d = int(d)
    if d < 2:
        raise ParameterDomainError(f"qudit dimension must be >= 2, got {d}")
    return d


def _check_copies(copies):
    copies = np.asarray(copies)
    if np.any(copies < 1):
        raise ParameterDomainError("copy count must be a positive integer")
    if not np.issubdtype(copies.dtype, np.integer) and np.any(copies != np.floor(copies)):
        raise ParameterDomainError("copy count must be a positive integer")
    return copies.astype(float)


def _check_mean_photons(value, name):
    value = float(value)
    if value < 0.0:
        raise ParameterDomainError(f"{name} must be >= 0, got {value}")
    return value


def _check_photon_number(n):
    n = int(n)
    if n < 0:
        raise ParameterDomainError(f"photon number must be >= 0, got {n}")
    return n


def _noise(noise):
    if not isinstance(noise, NoiseSpec):
        raise ParameterDomainError("noise must be a NoiseSpec")
    return noise


def _scalarize(x):
    arr = np.asarray(x)
    return float(arr) if arr.ndim == 0 else arr


def _exp(x):
    with np.errstate(under="ignore"):
        return np.exp(x)


def _upper_from_log(log_base, copies):
    """(value, log10 value) of (1/2) * exp(log_base)**copies."""
    ln = copies * log_base + math.log(0.5)
    return _scalarize(_exp(ln)), _scalarize(ln / _LN10)


def _lower_from_log(log_overlap, copies):
    """(value, log10 value) of (1/2)(1 - sqrt(1 - exp(log_overlap)**(2 copies)))."""
    log_inner = 2.0 * copies * log_overlap
    with np.errstate(under="ignore"):
        inner = np.exp(log_inner)
        saturated = inner >= 1.0
        clipped = np.where(saturated, 0.0, inner)      # keeps log1p off the -1 pole
        value = np.where(saturated, 0.5, -0.5 * np.expm1(0.5 * np.log1p(-clipped)))
        ln = log_inner - np.log(2.0 * (1.0 + np.sqrt(1.0 - clipped)))
        ln = np.where(saturated, math.log(0.5), ln)
    return _scalarize(value), _scalarize(ln / _LN10)


# ---------------------------------------------------------------------------
# depolarizing vs identity channels on qudits

def depolarizing_error(d, input_kind, x=None):
    """Single-copy error for depolarizing-vs-identity discrimination.

    Pure d-dimensional input: 1/(2d).  Maximally entangled d x d input:
    1/(2 d**2).  Werner input of weight x: (d**2 - x (d**2 - 1)) / (2 d**2).
    """
    d = _check_dimension(d)
    input_kind = DepolarizingInput(input_kind)
    if input_kind is DepolarizingInput.PURE:
        return 1.0 / (2.0 * d)
    if input_kind is DepolarizingInput.MAX_ENTANGLED:
        return 1.0 / (2.0 * d**2)
    if x is None:
        raise ParameterDomainError("Werner input needs a mixing weight x")
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ParameterDomainError(f"mixing weight must lie in [0, 1], got {x}")
    return (d**2 - x * (d**2 - 1.0)) / (2.0 * d**2)


def werner_advantage_threshold(d):
    """Werner weight above which the bipartite input beats any single-party pure input."""
    d = _check_dimension(d)
    return d / (d + 1.0)


# ---------------------------------------------------------------------------
# number states vs N00N states against thermal noise

def number_state_base(n, noise):
    """Per-copy error factor for a number-state input, mean-photon form."""
    n = _check_photon_number(n)
    noise = _noise(noise)
    r = noise.boltzmann
    if r == 0.0:
        return 1.0 / (noise.n_b + 1.0) if n == 0 else 0.0
    return r**n / (noise.n_b + 1.0)


def number_state_base_exponential(n, noise):
    """The same per-copy factor in the form (1 - e**-beta) e**(-n beta)."""
    n = _check_photon_number(n)
    noise = _noise(noise)
    return -math.expm1(-noise.beta) * math.exp(-n * noise.beta)


def _number_log_base(n, noise):
    r = noise.boltzmann
    if r == 0.0:
        return -math.log(noise.n_b + 1.0) if n == 0 else -math.inf
    return n * math.log(r) - math.log(noise.n_b + 1.0)


def number_state_error(n, noise, copies=1):
    """Exact error probability for number-state vs thermal discrimination."""
    value, _ = _upper_from_log(_number_log_base(_check_photon_number(n), _noise(noise)),
                               _check_copies(copies))
    return value


def number_state_error_log10(n, noise, copies=1):
    _, log10 = _upper_from_log(_number_log_base(_check_photon_number(n), _noise(noise)),
                               _check_copies(copies))
    return log10


def _noon_log_q(n, noise):
    # per-copy Chernoff factor (1 - e**-beta) e**(-n beta) cosh(n beta) / 2,
    # assembled as log1p(e**(-2 n beta)) to stay finite for beta -> inf
    beta = noise.beta
    log_one_minus = math.log(-math.expm1(-beta)) if not math.isinf(beta) else 0.0
    return log_one_minus + math.log1p(math.exp(-2.0 * n * beta)) - 2.0 * _LN2


def noon_qcb(n, noise, copies=1):
    """Quantum Chernoff bound for a N00N input of per-mode photon number n."""
    n = _check_photon_number(n)
    if n < 1:
        raise ParameterDomainError("N00N states need n >= 1")
    value, _ = _upper_from_log(_noon_log_q(n, _noise(noise)), _check_copies(copies))
    return value


def noon_qcb_log10(n, noise, copies=1):
    n = _check_photon_number(n)
    if n < 1:
        raise ParameterDomainError("N00N states need n >= 1")
    _, log10 = _upper_from_log(_noon_log_q(n, _noise(noise)), _check_copies(copies))
    return log10


def _noon_log_sigma(n, noise):
    # sigma = sqrt((1 - e**-beta)/2) * (1 + e**(-n beta)) / 2
    beta = noise.beta
    log_one_minus = math.log(-math.expm1(-beta)) if not math.isinf(beta) else 0.0
    log_sigma = 0.5 * (log_one_minus - _LN2) + math.log1p(math.exp(-n * beta)) - _LN2
    assert log_sigma <= 0.0, "root overlap above 1 is impossible for valid parameters"
    return log_sigma


def noon_lower(n, noise, copies=1):
    """Bhattacharyya-derived lower bound for the N00N scenario."""
    n = _check_photon_number(n)
    if n < 1:
        raise ParameterDomainError("N00N states need n >= 1")
    value, _ = _lower_from_log(_noon_log_sigma(n, _noise(noise)), _check_copies(copies))
    return value


def noon_lower_log10(n, noise, copies=1):
    n = _check_photon_number(n)
    if n < 1:
        raise ParameterDomainError("N00N states need n >= 1")
    _, log10 = _lower_from_log(_noon_log_sigma(n, _noise(noise)), _check_copies(copies))
    return log10


def noon_threshold(noise):
    """Photon number below which the N00N bound beats the number-state error.

    Solves cosh(n beta) = 2, i.e. n* = arccosh(2)/beta = ln(2 + sqrt(3))/beta;
    the N00N Chernoff bound is strictly smaller exactly for n < n*.
    """
    noise = _noise(noise)
    return math.acosh(2.0) / noise.beta


# ---------------------------------------------------------------------------
# coherent light vs two-mode entangled photons against thermal noise

def _coherent_log_q(n_s, n_b):
    return -n_s / (n_b + 1.0) - math.log(n_b + 1.0)


def coherent_qcb(n_s, n_b, copies=1):
    """Quantum Chernoff bound for a coherent input of mean photon number n_s."""
    n_s = _check_mean_photons(n_s, "n_s")
    n_b = _check_mean_photons(n_b, "n_b")
    value, _ = _upper_from_log(_coherent_log_q(n_s, n_b), _check_copies(copies))
    return value


def coherent_qcb_log10(n_s, n_b, copies=1):
    n_s = _check_mean_photons(n_s, "n_s")
    n_b = _check_mean_photons(n_b, "n_b")
    _, log10 = _upper_from_log(_coherent_log_q(n_s, n_b), _check_copies(copies))
    return log10


def _coherent_log_tau(n_s, n_b):
    # tau = <alpha| rho_th**(1/2) |alpha> = e**(-n_s (1 - sqrt(n_b/(n_b+1)))) / sqrt(n_b+1),
    # with 1 - sqrt(r) written as (1 - r)/(1 + sqrt(r)) to survive large n_b
    r = n_b / (n_b + 1.0)
    one_minus_sqrt_r = (1.0 / (n_b + 1.0)) / (1.0 + math.sqrt(r))
    return -n_s * one_minus_sqrt_r - 0.5 * math.log(n_b + 1.0)


def coherent_lower(n_s, n_b, copies=1):
    """Bhattacharyya-derived lower bound for the coherent scenario."""
    n_s = _check_mean_photons(n_s, "n_s")
    n_b = _check_mean_photons(n_b, "n_b")
    value, _ = _lower_from_log(_coherent_log_tau(n_s, n_b), _check_copies(copies))
    return value


def coherent_lower_log10(n_s, n_b, copies=1):
    n_s = _check_mean_photons(n_s, "n_s")
    n_b = _check_mean_photons(n_b, "n_b")
    _, log10 = _lower_from_log(_coherent_log_tau(n_s, n_b), _check_copies(copies))
    return log10


def _spdc_denominator(n_s, n_b):
    # (n_s+1)**2 (n_b+1) - n_s**2 n_b, expanded to avoid cancellation at large n_b
    return n_b * (2.0 * n_s + 1.0) + (n_s + 1.0) ** 2


def spdc_qcb(n_s, n_b, copies=1):
    """Quantum Chernoff bound for the two-mode squeezed-vacuum scenario."""
    n_s = _check_mean_photons(n_s, "n_s")
    n_b = _check_mean_photons(n_b, "n_b")
    denom = _spdc_denominator(n_s, n_b)
    assert denom >= 1.0
    value, _ = _upper_from_log(-math.log(denom), _check_copies(copies))
    return value


def spdc_qcb_log10(n_s, n_b, copies=1):
    n_s = _check_mean_photons(n_s, "n_s")
    n_b = _check_mean_photons(n_b, "n_b")
    _, log10 = _upper_from_log(-math.log(_spdc_denominator(n_s, n_b)), _check_copies(copies))
    return log10


def _spdc_log_upsilon(n_s, n_b):
    # upsilon = 1 / (sqrt((n_s+1)**3 (n_b+1)) - sqrt(n_s**3 n_b)), rationalized:
    # (sqrt(A) + sqrt(B)) / (A - B) with A - B expanded exactly
    a = (n_s + 1.0) ** 3 * (n_b + 1.0)
    b = n_s**3 * n_b
    diff = n_b * (3.0 * n_s**2 + 3.0 * n_s + 1.0) + (n_s + 1.0) ** 3
    upsilon = (math.sqrt(a) + math.sqrt(b)) / diff
    if not 0.0 < upsilon <= 1.0:
        logger.warning("root overlap %r clamped into (0, 1]", upsilon)
        upsilon = min(max(upsilon, 1e-300), 1.0)
    return math.log(upsilon)


def spdc_lower(n_s, n_b, copies=1):
    """Bhattacharyya-derived lower bound for the two-mode squeezed-vacuum scenario."""
    n_s = _check_mean_photons(n_s, "n_s")
    n_b = _check_mean_photons(n_b, "n_b")
    value, _ = _lower_from_log(_spdc_log_upsilon(n_s, n_b), _check_copies(copies))
    return value


def spdc_lower_log10(n_s, n_b, copies=1):
    n_s = _check_mean_photons(n_s, "n_s")
    n_b = _check_mean_photons(n_b, "n_b")
    _, log10 = _lower_from_log(_spdc_log_upsilon(n_s, n_b), _check_copies(copies))
    return log10


# ---------------------------------------------------------------------------
# limiting regimes

@dataclass(frozen=True)
class LimitValues:
    """Limit-regime bounds; fields are None where the regime defines no value."""

    regime: NoiseRegime
    coherent: float
    spdc_qcb: float
    spdc_lower: float = None
    product_noise_exponent: float = None


def bright_noise_spdc_exponent(n_s, copies=1, n_b=1e8):
    """Numeric exponent of (2 n_s + 1) in the bright-noise two-mode-squeezed bound.

    Measures how the finite-noise bound scales against the 1/(2 n_b**copies)
    baseline at a large probe n_b; the printed value arbitrates the limiting
    exponent instead of trusting either algebraic simplification.
    """
    n_s = _check_mean_photons(n_s, "n_s")
    copies = int(copies)
    log_q = -math.log(_spdc_denominator(n_s, n_b))
    return -(copies * log_q + copies * math.log(n_b)) / (copies * math.log(2.0 * n_s + 1.0))


def asymptotic_limits(n_s, copies, regime, n_b=None):
    """Limit values of the coherent and two-mode-squeezed bounds.

    Bright noise (needs the probe ``n_b``): coherent error 1/(2 n_b**M) and
    the leading bright-noise form of the squeezed-vacuum Chernoff bound,
    together with the numerically extrapolated product-noise exponent.  Weak
    noise: the exact coherent error (1/2)(1 - sqrt(1 - e**(-2 M n_s))), the
    squeezed-vacuum Chernoff bound (1/2)(n_s+1)**(-2M), and its lower bound
    (1/2)(1 - sqrt(1 - (n_s+1)**(-3M))).
    """
    n_s = _check_mean_photons(n_s, "n_s")
    copies_f = float(_check_copies(copies))
    regime = NoiseRegime(regime)
    if regime is NoiseRegime.BRIGHT_NOISE:
        if n_b is None:
            raise ParameterDomainError("bright-noise limits need an n_b probe value")
        n_b = _check_mean_photons(n_b, "n_b")
        if n_b <= 0.0:
            raise ParameterDomainError("bright-noise probe n_b must be > 0")
        coherent = 0.5 * n_b**-copies_f
        qcb = 0.5 * (n_b * (2.0 * n_s + 1.0)) ** -copies_f
        return LimitValues(
            regime=regime,
            coherent=coherent,
            spdc_qcb=qcb,
            spdc_lower=None,
            product_noise_exponent=bright_noise_spdc_exponent(n_s, int(copies)),
        )
    coherent, _ = _lower_from_log(-n_s, copies_f)
    qcb = 0.5 * (n_s + 1.0) ** (-2.0 * copies_f)
    lower, _ = _lower_from_log(-1.5 * math.log1p(n_s), copies_f)
    return LimitValues(regime=regime, coherent=coherent, spdc_qcb=qcb, spdc_lower=lower)


def weak_noise_coherent_exact_log10(n_s, copies=1):
    """log10 of the weak-noise coherent error (1/2)(1 - sqrt(1 - e**(-2 M n_s)))."""
    n_s = _check_mean_photons(n_s, "n_s")
    _, log10 = _lower_from_log(-n_s, _check_copies(copies))
    return log10


def weak_noise_spdc_lower_log10(n_s, copies=1):
    n_s = _check_mean_photons(n_s, "n_s")
    _, log10 = _lower_from_log(-1.5 * math.log1p(n_s), _check_copies(copies))
    return log10


def weak_noise_crossover(lo=1.0, hi=1.3, tol=1e-6):
    """Signal strength where the weak-noise squeezed-vacuum lower bound crosses
    the coherent error at one copy: the root of e**(-2 n_s) = (n_s + 1)**-3,
    found by bisection."""
    f = lambda x: 3.0 * math.log1p(x) - 2.0 * x
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ParameterDomainError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)
