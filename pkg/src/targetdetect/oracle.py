"""Brute-force evaluation of discrimination error probabilities and bounds.

Everything here works directly on density matrices (eigendecompositions,
tensor powers, trace norms); no analytic shortcut from the closed-form module
is used, so these routines serve as the ground truth the closed forms are
validated against.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce

import numpy as np

from .channels import HypothesisPair
from .errors import ConvergenceError, ParameterDomainError, SizeLimitError
from .fock import DensityOperator, eigenvalue_power, spectral_decomposition

logger = logging.getLogger(__name__)

#: largest tensor-power dimension the exact Helstrom computation will build
TENSOR_GUARD = 4096
#: largest product-distribution length the diagonal path will enumerate
VECTOR_GUARD = 1 << 22
#: grid points for the Chernoff minimization over s, endpoints included
S_GRID_SIZE = 201
#: bracket width at which golden-section refinement stops
S_REFINE_TOL = 1e-8
_MAX_REFINE_ITER = 200
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class BoundKind(Enum):
    EXACT = "exact"
    CHERNOFF_UPPER = "chernoff_upper"
    BHATTACHARYYA_LOWER = "bhattacharyya_lower"


@dataclass(frozen=True)
class BoundResult:
    """A bound value with the evidence of how it was computed."""

    value: float
    kind: BoundKind
    copies: int
    s_star: float = None
    cutoffs: tuple = ()
    diagnostics: dict = field(default_factory=dict)


def _as_states(pair):
    if isinstance(pair, HypothesisPair):
        return pair.rho0, pair.rho1, pair.cutoffs
    rho0, rho1 = pair
    return rho0, rho1, rho0.cutoffs


def _validate_copies(copies):
    copies = int(copies)
    if copies < 1:
        raise ParameterDomainError(f"copy count must be >= 1, got {copies}")
    return copies


class _OverlapEvaluator:
    """Evaluates q(s) = Tr[rho0**s rho1**(1-s)] from cached eigensystems.

    The eigenvector overlap weights are formed once; each evaluation is then a
    pair of eigenvalue power maps and a contraction, which keeps dense grids
    over s cheap even for large diagonal + pure-state pairs.
    """

    def __init__(self, rho0, rho1):
        self.vals0, vecs0 = spectral_decomposition(rho0)
        self.vals1, vecs1 = spectral_decomposition(rho1)
        if vecs0 is None and vecs1 is None:
            if self.vals0.size != self.vals1.size:
                raise ParameterDomainError("states live on different spaces")
            self.weights = None
        elif vecs0 is None:
            self.weights = np.abs(vecs1) ** 2                    # dim x r1
        elif vecs1 is None:
            self.weights = (np.abs(vecs0) ** 2).T                # r0 x dim
        else:
            self.weights = np.abs(vecs0.conj().T @ vecs1) ** 2   # r0 x r1

    def __call__(self, s):
        a = eigenvalue_power(self.vals0, s)
        b = eigenvalue_power(self.vals1, 1.0 - s)
        if self.weights is None:
            return float(a @ b)
        return float(a @ self.weights @ b)


def q_s(pair, s):
    """The Chernoff integrand Tr[rho0**s rho1**(1-s)] at a single s in [0, 1]."""
    if not 0.0 <= s <= 1.0:
        raise ParameterDomainError(f"s must lie in [0, 1], got {s}")
    rho0, rho1, _ = _as_states(pair)
    return _OverlapEvaluator(rho0, rho1)(s)


def q_s_grid(pair, grid_size=S_GRID_SIZE):
    """q(s) on a uniform grid over [0, 1], endpoints included."""
    rho0, rho1, _ = _as_states(pair)
    ev = _OverlapEvaluator(rho0, rho1)
    ss = np.linspace(0.0, 1.0, int(grid_size))
    return ss, np.array([ev(s) for s in ss])


def chernoff_bound(pair, copies=1, grid_size=S_GRID_SIZE, refine_tol=S_REFINE_TOL,
                   max_refine=_MAX_REFINE_ITER):
    """Quantum Chernoff upper bound (1/2) (min_s q(s))**copies.

    The minimization evaluates q on a uniform grid (endpoints included), then
    refines around the grid minimum by golden-section search until the bracket
    is narrower than ``refine_tol``.  Ties resolve to the smallest s.
    """
    copies = _validate_copies(copies)
    grid_size = int(grid_size)
    if grid_size < 3:
        raise ParameterDomainError("grid must have at least 3 points")
    rho0, rho1, cutoffs = _as_states(pair)
    ev = _OverlapEvaluator(rho0, rho1)

    ss = np.linspace(0.0, 1.0, grid_size)
    qs = np.array([ev(s) for s in ss])
    i = int(np.argmin(qs))            # first occurrence: smallest s on ties
    best_s, best_q = float(ss[i]), float(qs[i])

    def consider(s, q):
        nonlocal best_s, best_q
        if q < best_q or (q == best_q and s < best_s):
            best_s, best_q = s, q

    a = float(ss[max(i - 1, 0)])
    b = float(ss[min(i + 1, grid_size - 1)])
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = ev(c), ev(d)
    consider(c, fc)
    consider(d, fd)
    iterations = 0
    while (b - a) > refine_tol:
        iterations += 1
        if iterations > max_refine:
            raise ConvergenceError(
                f"golden-section refinement did not reach {refine_tol} in {max_refine} iterations"
            )
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = ev(c)
            consider(c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = ev(d)
            consider(d, fd)

    log_value = -math.inf if best_q == 0.0 else math.log(0.5) + copies * math.log(best_q)
    value = min(max(0.5 * best_q**copies, 0.0), 0.5)
    return BoundResult(
        value=value,
        kind=BoundKind.CHERNOFF_UPPER,
        copies=copies,
        s_star=best_s,
        cutoffs=cutoffs,
        diagnostics={
            "grid_size": grid_size,
            "refine_iterations": iterations,
            "bracket_width": b - a,
            "q_min": best_q,
            "log_value": log_value,
        },
    )


def bhattacharyya_lower(pair, copies=1):
    """Lower bound (1/2)(1 - sqrt(1 - Tr[rho0**(1/2) rho1**(1/2)]**(2 copies)))."""
    copies = _validate_copies(copies)
    rho0, rho1, cutoffs = _as_states(pair)
    overlap = _OverlapEvaluator(rho0, rho1)(0.5)
    clamped = min(max(overlap, 0.0), 1.0)
    if abs(clamped - overlap) > 1e-10:
        logger.warning("root-overlap %r clamped into [0, 1]", overlap)
    if clamped == 0.0:
        value, log_value = 0.0, -math.inf
    else:
        log_inner = 2.0 * copies * math.log(clamped) if clamped < 1.0 else 0.0
        value, log_value = _half_one_minus_sqrt(log_inner)
    return BoundResult(
        value=value,
        kind=BoundKind.BHATTACHARYYA_LOWER,
        copies=copies,
        s_star=None,
        cutoffs=cutoffs,
        diagnostics={"root_overlap": overlap, "log_value": log_value},
    )


def _half_one_minus_sqrt(log_inner):
    """(value, ln value) of (1/2)(1 - sqrt(1 - e**log_inner)) for log_inner <= 0."""
    inner = math.exp(log_inner)
    if inner >= 1.0:
        return 0.5, math.log(0.5)
    value = -0.5 * math.expm1(0.5 * math.log1p(-inner))
    log_value = log_inner - math.log(2.0 * (1.0 + math.sqrt(1.0 - inner)))
    return value, log_value


def pure_pure_error(overlap_sq, copies=1):
    """Exact error for two pure states with squared overlap |<psi0|psi1>|**2."""
    copies = _validate_copies(copies)
    overlap_sq = float(overlap_sq)
    if not 0.0 <= overlap_sq <= 1.0:
        raise ParameterDomainError(f"squared overlap must lie in [0, 1], got {overlap_sq}")
    if overlap_sq == 0.0:
        return 0.0
    value, _ = _half_one_minus_sqrt(copies * math.log(overlap_sq) if overlap_sq < 1.0 else 0.0)
    return value


def _total_mass(diag, deficit):
    """Full-distribution mass: truncated sum plus recorded tail, snapped to 1."""
    total = float(diag.sum()) + deficit
    return 1.0 if abs(total - 1.0) <= 1e-9 else total


def _point_mass_error(point, p_other, copies, point_total, other_total):
    """Helstrom error when one diagonal state is a single point mass.

    The whole (untruncated) product distribution splits into the point-mass
    outcome and everything else, so the trace distance reduces to the two
    atom probabilities and the exactly known totals; arranged to avoid the
    1 - (1 - x) cancellation for tiny error probabilities.  Exact whenever
    the point-mass state carries no truncation deficit (projectors do not).
    """
    a_m = point**copies
    p_m = p_other**copies
    base = 0.5 - 0.25 * (point_total**copies + other_total**copies)
    return base + 0.5 * min(a_m, p_m)


def helstrom_error(pair, copies=1, tensor_guard=TENSOR_GUARD, vector_guard=VECTOR_GUARD):
    """Exact minimum error probability for the pair with ``copies`` joint copies.

    Dense tensor powers are built only while dim**copies stays within the
    guard.  When both states are diagonal the product distribution is handled
    directly; a single point mass on either side is evaluated in closed form
    per mode, which keeps number-state scenarios exact at any copy count.
    """
    copies = _validate_copies(copies)
    rho0, rho1, cutoffs = _as_states(pair)
    d0 = rho0.diagonal_or_none()
    d1 = rho1.diagonal_or_none()

    diagnostics = {"trace_deficits": (rho0.trace_deficit, rho1.trace_deficit)}
    if d0 is not None and d1 is not None:
        d0 = np.where(d0 < 0.0, 0.0, d0)
        d1 = np.where(d1 < 0.0, 0.0, d1)
        t0 = _total_mass(d0, rho0.trace_deficit)
        t1 = _total_mass(d1, rho1.trace_deficit)
        for point_diag, point_total, other_diag, other_total in (
            (d1, t1, d0, t0),
            (d0, t0, d1, t1),
        ):
            nz = np.flatnonzero(point_diag > 1e-15)
            if nz.size == 1:
                j = int(nz[0])
                value = _point_mass_error(
                    float(point_diag[j]), float(other_diag[j]), copies, point_total, other_total
                )
                diagnostics["path"] = "diagonal_point_mass"
                return BoundResult(
                    value=min(max(value, 0.0), 0.5),
                    kind=BoundKind.EXACT,
                    copies=copies,
                    cutoffs=cutoffs,
                    diagnostics=diagnostics,
                )
        if float(d0.size) ** copies <= vector_guard:
            p = reduce(np.kron, [d0] * copies)
            q = reduce(np.kron, [d1] * copies)
            tv = float(np.abs(p - q).sum())
            diagnostics["path"] = "diagonal_product"
            return BoundResult(
                value=min(max(0.5 * (1.0 - 0.5 * tv), 0.0), 0.5),
                kind=BoundKind.EXACT,
                copies=copies,
                cutoffs=cutoffs,
                diagnostics=diagnostics,
            )
        raise SizeLimitError(
            f"diagonal product of length {d0.size}**{copies} exceeds the guard {vector_guard}"
        )

    dim = rho0.dim
    if float(dim) ** copies > tensor_guard:
        raise SizeLimitError(
            f"tensor power dimension {dim}**{copies} exceeds the guard {tensor_guard}"
            " and no diagonal fast path applies"
        )
    m0 = rho0.to_dense()
    m1 = rho1.to_dense()
    p0 = reduce(np.kron, [m0] * copies)
    p1 = reduce(np.kron, [m1] * copies)
    tv = float(np.sum(np.abs(np.linalg.eigvalsh(p0 - p1))))
    diagnostics["path"] = "dense_tensor_power"
    diagnostics["tensor_dim"] = p0.shape[0]
    return BoundResult(
        value=min(max(0.5 * (1.0 - 0.5 * tv), 0.0), 0.5),
        kind=BoundKind.EXACT,
        copies=copies,
        cutoffs=cutoffs,
        diagnostics=diagnostics,
    )
