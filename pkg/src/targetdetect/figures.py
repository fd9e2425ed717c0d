"""Curve data behind the built-in bound comparisons, and their CSV form.

Values are kept alongside exact log10 values computed in log space, so rows
stay meaningful long after the probability itself underflows to 0; an
underflowed value prints as 0 while its log10 column stays finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_forms as cf
from .errors import ParameterDomainError
from .fock import NoiseSpec

#: default parameter sets for the coherent-vs-squeezed comparison
FIGURE2_DEFAULT_SETS = ((0.75, 0.5), (2.0, 30.0))   # (n_b, n_s)

CSV_HEADER = "series,m,value,log10_value"
CSV_HEADER_SIGNAL = "series,n_s,value,log10_value"


@dataclass(frozen=True)
class CurveSeries:
    """A labeled sequence of (x, value, log10 value) points."""

    label: str
    x: np.ndarray
    values: np.ndarray
    log10_values: np.ndarray
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (len(self.x) == len(self.values) == len(self.log10_values)):
            raise ParameterDomainError("series columns must have equal length")

    def rows(self):
        for xi, v, lv in zip(self.x, self.values, self.log10_values):
            yield self.label, xi, float(v), float(lv)


def _series(label, x, value_fn, log10_fn, params):
    values = np.asarray(value_fn(x), dtype=float)
    log10s = np.asarray(log10_fn(x), dtype=float)
    return CurveSeries(label, np.asarray(x), values, log10s, params)


def figure1_series(beta=0.05, n=100, m_max=200):
    """Number-state exact error vs the N00N upper and lower bounds, over copies.

    Three series on the integer copy grid 1..m_max: ``number_exact``,
    ``noon_qcb`` and ``noon_lb``.
    """
    if m_max < 1:
        raise ParameterDomainError("m_max must be >= 1")
    noise = NoiseSpec(beta=beta)
    m = np.arange(1, int(m_max) + 1)
    params = {"beta": float(beta), "n": int(n), "m_max": int(m_max)}
    return [
        _series("number_exact", m,
                lambda mm: cf.number_state_error(n, noise, mm),
                lambda mm: cf.number_state_error_log10(n, noise, mm), params),
        _series("noon_qcb", m,
                lambda mm: cf.noon_qcb(n, noise, mm),
                lambda mm: cf.noon_qcb_log10(n, noise, mm), params),
        _series("noon_lb", m,
                lambda mm: cf.noon_lower(n, noise, mm),
                lambda mm: cf.noon_lower_log10(n, noise, mm), params),
    ]


def figure2_copy_grid(log_m_max=4.0, samples=50):
    """Log-uniform copy counts: 10**linspace(0, log_m_max), deduplicated integers."""
    if log_m_max <= 0:
        raise ParameterDomainError("log_m_max must be > 0")
    grid = np.logspace(0.0, float(log_m_max), int(samples))
    return np.unique(np.rint(grid).astype(np.int64))


def _figure2_one_set(n_b, n_s, m, tag):
    params = {"n_b": float(n_b), "n_s": float(n_s)}
    names = (
        ("coh_qcb", cf.coherent_qcb, cf.coherent_qcb_log10),
        ("coh_lb", cf.coherent_lower, cf.coherent_lower_log10),
        ("spdc_qcb", cf.spdc_qcb, cf.spdc_qcb_log10),
        ("spdc_lb", cf.spdc_lower, cf.spdc_lower_log10),
    )
    out = []
    for name, val_fn, log_fn in names:
        label = f"{name}{tag}"
        out.append(_series(label, m,
                           lambda mm, f=val_fn: f(n_s, n_b, mm),
                           lambda mm, f=log_fn: f(n_s, n_b, mm), params))
    return out


def figure2_series(n_s=None, n_b=None, log_m_max=4.0, samples=50):
    """Coherent vs two-mode-squeezed bounds over a log-uniform copy grid.

    With both ``n_s`` and ``n_b`` given, four series (coh_qcb, coh_lb,
    spdc_qcb, spdc_lb) for that parameter set; with neither, both default
    parameter sets are emitted with the parameters tagged into the labels.
    """
    m = figure2_copy_grid(log_m_max, samples)
    if (n_s is None) != (n_b is None):
        raise ParameterDomainError("give both n_s and n_b, or neither")
    if n_s is not None:
        return _figure2_one_set(float(n_b), float(n_s), m, "")
    out = []
    for nb, ns in FIGURE2_DEFAULT_SETS:
        out.extend(_figure2_one_set(nb, ns, m, f"[nb={nb:g},ns={ns:g}]"))
    return out


def figure3_series(n_s_min=0.05, n_s_max=3.0, steps=60, copies=1):
    """Weak-noise single-copy comparison over the signal photon number.

    Three series on a linear n_s grid: the coherent error, the
    squeezed-vacuum Chernoff bound and its lower bound, all in the
    zero-thermal-noise limit.
    """
    if not 0 <= n_s_min < n_s_max:
        raise ParameterDomainError("need 0 <= n_s_min < n_s_max")
    if steps < 2:
        raise ParameterDomainError("steps must be >= 2")
    grid = np.linspace(float(n_s_min), float(n_s_max), int(steps))
    params = {"n_s_min": float(n_s_min), "n_s_max": float(n_s_max), "m": int(copies)}

    def build(label, val_fn, log_fn):
        values = np.array([val_fn(x) for x in grid])
        logs = np.array([log_fn(x) for x in grid])
        return CurveSeries(label, grid, values, logs, params)

    def coh(x):
        return cf.asymptotic_limits(x, copies, cf.NoiseRegime.WEAK_NOISE).coherent

    def qcb(x):
        return cf.asymptotic_limits(x, copies, cf.NoiseRegime.WEAK_NOISE).spdc_qcb

    def lb(x):
        return cf.asymptotic_limits(x, copies, cf.NoiseRegime.WEAK_NOISE).spdc_lower

    return [
        build("coh_exact", coh, lambda x: cf.weak_noise_coherent_exact_log10(x, copies)),
        build("spdc_qcb", qcb, lambda x: math.log10(0.5) - 2.0 * copies * math.log10(1.0 + x)),
        build("spdc_lb", lb, lambda x: cf.weak_noise_spdc_lower_log10(x, copies)),
    ]


def _format(x):
    return f"{x:.17g}"


def write_csv(series_list, stream, x_name="m"):
    """Write series rows as CSV with 17-significant-digit round-trip floats."""
    header = CSV_HEADER if x_name == "m" else CSV_HEADER_SIGNAL
    stream.write(header + "\n")
    for series in series_list:
        for label, x, value, log10_value in series.rows():
            if x_name == "m":
                x_text = str(int(x))
            else:
                x_text = _format(float(x))
            stream.write(f"{label},{x_text},{_format(value)},{_format(log10_value)}\n")


def render_csv(series_list, x_name="m"):
    """The CSV text for a series list (LF line endings)."""
    import io

    buf = io.StringIO()
    write_csv(series_list, buf, x_name=x_name)
    return buf.getvalue()
