"""Truncated Fock-space states and the linear algebra every other module consumes.

States over one or two bosonic modes are stored in the photon-number basis,
truncated at a per-mode cutoff.  Infinite families (thermal, coherent,
two-mode squeezed) record the probability mass lost to truncation instead of
renormalizing; renormalization would bias every overlap computed downstream.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.special import gammainc, gammaln

from .errors import (
    InvalidStateError,
    ParameterDomainError,
    SizeLimitError,
    TruncationError,
)

logger = logging.getLogger(__name__)

#: default truncation budget: tail mass a constructed state may drop
TAIL_EPS = 1e-12
#: entrywise tolerance for Hermiticity checks (operators have unit trace scale)
HERMITICITY_TOL = 1e-12
#: eigenvalues below -EIG_CLAMP_TOL are an error; in [-EIG_CLAMP_TOL, 0) they clamp to 0
EIG_CLAMP_TOL = 1e-12
#: eigenvalues above this count as support when taking zeroth powers
SUPPORT_TOL = 1e-12
#: largest dimension for which dense matrices may be materialized
DENSE_DIM_LIMIT = 4096
#: hard cap on any operator dimension, sparse included
DIM_LIMIT = 1 << 22
#: off-diagonal mass below this marks a matrix as diagonal
_DIAG_TOL = 1e-14
#: largest cutoff the automatic truncation search will accept
_MAX_CUTOFF = 1 << 20


class NoiseSpec:
    """Thermal noise strength, given either as a mean photon number or an exponent.

    The two parameterizations are tied by ``n_b = 1 / (e**beta - 1)``; supply
    exactly one and the other is derived.  ``n_b = 0`` (``beta = inf``) is the
    zero-temperature limit.
    """

    __slots__ = ("n_b", "beta")

    def __init__(self, n_b=None, beta=None):
        if (n_b is None) == (beta is None):
            raise ParameterDomainError("supply exactly one of n_b, beta")
        if n_b is not None:
            n_b = float(n_b)
            if not n_b >= 0.0:
                raise ParameterDomainError(f"mean thermal photon number must be >= 0, got {n_b}")
            self.n_b = n_b
            self.beta = math.inf if n_b == 0.0 else math.log1p(1.0 / n_b)
        else:
            beta = float(beta)
            if not beta > 0.0:
                raise ParameterDomainError(f"noise exponent must be > 0, got {beta}")
            self.beta = beta
            self.n_b = 0.0 if math.isinf(beta) else 1.0 / math.expm1(beta)

    @property
    def boltzmann(self):
        """The per-photon weight ratio n_b / (n_b + 1) = e**-beta."""
        return self.n_b / (self.n_b + 1.0)

    def __repr__(self):
        return f"NoiseSpec(n_b={self.n_b!r}, beta={self.beta!r})"

    def __eq__(self, other):
        return isinstance(other, NoiseSpec) and (self.n_b, self.beta) == (other.n_b, other.beta)


@dataclass(frozen=True)
class FockKet:
    """A pure state over a truncated one- or two-mode photon-number basis.

    ``amplitudes`` is the flattened coefficient vector; for two modes the
    basis index is ``k_signal * dims[1] + k_idler``.  ``norm_deficit`` is the
    squared-norm mass beyond the cutoff (exactly 0 for finitely supported
    states).
    """

    amplitudes: np.ndarray
    dims: tuple
    norm_deficit: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if amps.size != int(np.prod(self.dims)):
            raise InvalidStateError(
                f"amplitude vector of length {amps.size} does not match dims {self.dims}"
            )

    @property
    def dim(self):
        return self.amplitudes.size

    @property
    def n_modes(self):
        return len(self.dims)

    @property
    def cutoffs(self):
        return tuple(d - 1 for d in self.dims)

    @property
    def norm_sq(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def amplitude(self, *occupations):
        if len(occupations) != self.n_modes:
            raise ParameterDomainError(f"expected {self.n_modes} occupation numbers")
        return complex(self.amplitudes[np.ravel_multi_index(occupations, self.dims)])

    def overlap(self, other):
        """Inner product <self|other>."""
        if self.dims != other.dims:
            raise ParameterDomainError("kets live on different truncated bases")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def mean_occupation(self, mode=0):
        """Expected photon number in one mode, over the truncated support."""
        grid = np.unravel_index(np.arange(self.dim), self.dims)[mode]
        return float(np.sum(np.abs(self.amplitudes) ** 2 * grid))

    def embed(self, dims):
        """Zero-pad each mode up to the larger basis sizes ``dims``."""
        dims = tuple(int(d) for d in dims)
        if len(dims) != self.n_modes or any(d < o for d, o in zip(dims, self.dims)):
            raise ParameterDomainError(f"cannot embed dims {self.dims} into {dims}")
        block = self.amplitudes.reshape(self.dims)
        pad = [(0, d - o) for d, o in zip(dims, self.dims)]
        return FockKet(np.pad(block, pad).ravel(), dims, self.norm_deficit)

    def projector(self):
        """The (possibly sub-normalized) projector |psi><psi| as a DensityOperator."""
        psi = self.amplitudes
        n = psi.size
        nz = np.flatnonzero(psi)
        if nz.size**2 > DIM_LIMIT:
            raise SizeLimitError(f"projector with {nz.size} nonzero amplitudes exceeds the guard")
        if n > 256 and nz.size <= n // 8:
            vals = np.outer(psi[nz], psi[nz].conj()).ravel()
            rows = np.repeat(nz, nz.size)
            cols = np.tile(nz, nz.size)
            mat = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
        else:
            if n > DENSE_DIM_LIMIT:
                raise SizeLimitError(f"dense projector of dimension {n} exceeds the guard")
            mat = np.outer(psi, psi.conj())
        return DensityOperator(mat, self.dims, trace_deficit=self.norm_deficit, ket=self)


@dataclass
class DensityOperator:
    """Hermitian, PSD, trace<=1 operator on a truncated basis.

    ``trace_deficit`` records the probability mass the truncation dropped, so
    trace + trace_deficit ~= 1 for every constructor in this package.  ``ket``
    is construction provenance: set when the operator is a pure projector, it
    lets spectral routines bypass an eigendecomposition of an (almost exactly)
    rank-one matrix.
    """

    matrix: object                  # ndarray or scipy.sparse matrix
    dims: tuple
    trace_deficit: float = 0.0
    ket: FockKet = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        n = self.matrix.shape[0]
        if self.matrix.shape != (n, n) or n != int(np.prod(self.dims)):
            raise InvalidStateError(f"matrix shape {self.matrix.shape} does not match dims {self.dims}")
        if isinstance(self.matrix, np.ndarray):
            self.matrix = np.asarray(self.matrix, dtype=complex)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def is_sparse(self):
        return sp.issparse(self.matrix)

    @property
    def cutoffs(self):
        return tuple(d - 1 for d in self.dims)

    @property
    def trace(self):
        if self.is_sparse:
            return float(self.matrix.diagonal().sum().real)
        return float(np.trace(self.matrix).real)

    def to_dense(self):
        if self.is_sparse:
            if self.dim > DENSE_DIM_LIMIT:
                raise SizeLimitError(f"densifying dimension {self.dim} exceeds the guard")
            return np.asarray(self.matrix.todense())
        return self.matrix

    def diagonal_or_none(self):
        """The real diagonal if the matrix is diagonal (within tolerance), else None."""
        if self.is_sparse:
            coo = self.matrix.tocoo()
            off = coo.row != coo.col
            if off.any() and np.max(np.abs(coo.data[off])) > _DIAG_TOL:
                return None
            return np.asarray(self.matrix.diagonal().real, dtype=float)
        d = np.diag(self.matrix)
        if np.max(np.abs(self.matrix - np.diag(d)), initial=0.0) > _DIAG_TOL:
            return None
        return d.real.astype(float)

    def validate(self, tail_tol=1e-9):
        """Run the full Hermiticity / positivity / trace checks; raise on failure."""
        m = self.matrix
        if self.is_sparse:
            herm_res = abs(m - m.conjugate().transpose())
            herm = herm_res.max() if herm_res.nnz else 0.0
        else:
            herm = float(np.max(np.abs(m - m.conj().T), initial=0.0))
        if herm > HERMITICITY_TOL:
            raise InvalidStateError(f"Hermiticity residual {herm:.3e} above {HERMITICITY_TOL}")
        vals, _ = spectral_decomposition(self)
        if vals.size and vals.min() < -EIG_CLAMP_TOL:
            raise InvalidStateError(f"eigenvalue {vals.min():.3e} below -{EIG_CLAMP_TOL}")
        tr = self.trace
        if tr > 1.0 + HERMITICITY_TOL:
            raise InvalidStateError(f"trace {tr} exceeds 1")
        if abs(tr + self.trace_deficit - 1.0) > tail_tol:
            raise InvalidStateError(
                f"trace {tr} plus recorded deficit {self.trace_deficit} is not 1"
            )
        return self


def _geometric_cutoff(ratio, tail_eps):
    """Smallest K with ratio**(K+1) < tail_eps."""
    if ratio <= 0.0:
        return 0
    k = max(int(math.ceil(math.log(tail_eps) / math.log(ratio))) - 1, 0)
    while ratio ** (k + 1) >= tail_eps:
        k += 1
        if k > _MAX_CUTOFF:
            raise TruncationError(
                f"no cutoff below {_MAX_CUTOFF} reaches tail {tail_eps}", required_cutoff=None
            )
    while k > 0 and ratio**k < tail_eps:
        k -= 1
    return k


def _poisson_tail(mean, cutoff):
    """P(X > cutoff) for X ~ Poisson(mean)."""
    if mean == 0.0:
        return 0.0
    return float(gammainc(cutoff + 1, mean))


def _poisson_cutoff(mean, tail_eps):
    """Smallest K with Poisson(mean) tail beyond K below tail_eps."""
    if mean == 0.0:
        return 0
    hi = max(8, int(mean + 12.0 * math.sqrt(mean) + 12.0))
    while _poisson_tail(mean, hi) >= tail_eps:
        hi *= 2
        if hi > _MAX_CUTOFF:
            raise TruncationError(
                f"no cutoff below {_MAX_CUTOFF} reaches Poisson tail {tail_eps}"
            )
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if _poisson_tail(mean, mid) < tail_eps:
            hi = mid
        else:
            lo = mid + 1
    return lo


def thermal_state(noise, cutoff=None, tail_eps=TAIL_EPS):
    """Thermal state with geometric photon-number distribution of mean ``noise.n_b``.

    Diagonal entries are n_b**k / (n_b+1)**(k+1); the geometric tail beyond
    the cutoff is recorded as ``trace_deficit``, never folded back in.  With
    ``cutoff=None`` the smallest cutoff meeting ``tail_eps`` is chosen.
    """
    if not isinstance(noise, NoiseSpec):
        raise ParameterDomainError("noise must be a NoiseSpec")
    r = noise.boltzmann
    if cutoff is None:
        cutoff = _geometric_cutoff(r, tail_eps)
    cutoff = int(cutoff)
    if cutoff < 0:
        raise ParameterDomainError("cutoff must be >= 0")
    k = np.arange(cutoff + 1)
    diag = r**k / (noise.n_b + 1.0)
    deficit = float(r ** (cutoff + 1))
    mat = sp.diags(diag.astype(complex)).tocsr()
    return DensityOperator(mat, (cutoff + 1,), trace_deficit=deficit)


def coherent_ket(n_s, cutoff=None, tail_eps=TAIL_EPS):
    """Coherent state of mean photon number ``n_s``, amplitude taken real >= 0.

    Amplitudes are exp(-n_s/2) n_s**(l/2) / sqrt(l!); the Poisson tail beyond
    the cutoff becomes ``norm_deficit``.
    """
    n_s = float(n_s)
    if n_s < 0.0:
        raise ParameterDomainError(f"mean photon number must be >= 0, got {n_s}")
    if cutoff is None:
        cutoff = _poisson_cutoff(n_s, tail_eps)
    cutoff = int(cutoff)
    if cutoff < 0:
        raise ParameterDomainError("cutoff must be >= 0")
    if n_s == 0.0:
        amps = np.zeros(cutoff + 1, dtype=complex)
        amps[0] = 1.0
        return FockKet(amps, (cutoff + 1,), 0.0)
    k = np.arange(cutoff + 1)
    log_amp = -0.5 * n_s + 0.5 * (k * math.log(n_s) - gammaln(k + 1))
    amps = np.exp(log_amp).astype(complex)
    return FockKet(amps, (cutoff + 1,), _poisson_tail(n_s, cutoff))


def number_ket(n, cutoff=None):
    """Photon-number eigenstate |n>; the cutoff defaults to n itself."""
    n = int(n)
    if n < 0:
        raise ParameterDomainError(f"photon number must be >= 0, got {n}")
    if cutoff is None:
        cutoff = n
    cutoff = int(cutoff)
    if cutoff < n:
        raise ParameterDomainError(f"cutoff {cutoff} cannot hold photon number {n}")
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[n] = 1.0
    return FockKet(amps, (cutoff + 1,), 0.0)


def noon_ket(n):
    """Two-mode state (|2n,0> + |0,2n>)/sqrt(2); mean photon number n per mode."""
    n = int(n)
    if n < 1:
        raise ParameterDomainError("photon number n must be >= 1; n = 0 degenerates to vacuum")
    d = 2 * n + 1
    amps = np.zeros(d * d, dtype=complex)
    amps[(2 * n) * d + 0] = 1.0 / math.sqrt(2.0)
    amps[0 * d + 2 * n] = 1.0 / math.sqrt(2.0)
    return FockKet(amps, (d, d), 0.0)


def spdc_ket(n_s, cutoff=None, tail_eps=TAIL_EPS):
    """Two-mode squeezed vacuum: sqrt(n_s**k/(n_s+1)**(k+1)) on |k,k>.

    ``n_s`` is the mean photon number per mode; the Schmidt tail beyond the
    per-mode cutoff becomes ``norm_deficit``.
    """
    n_s = float(n_s)
    if n_s < 0.0:
        raise ParameterDomainError(f"mean photon number must be >= 0, got {n_s}")
    r = n_s / (n_s + 1.0)
    if cutoff is None:
        cutoff = _geometric_cutoff(r, tail_eps)
    cutoff = int(cutoff)
    if cutoff < 0:
        raise ParameterDomainError("cutoff must be >= 0")
    d = cutoff + 1
    k = np.arange(d)
    schmidt = np.sqrt(r**k / (n_s + 1.0))
    amps = np.zeros(d * d, dtype=complex)
    amps[k * d + k] = schmidt
    return FockKet(amps, (d, d), float(r**d))


def maximally_entangled_qudit(d):
    """Two-qudit state with uniform amplitude 1/sqrt(d) on |k,k>."""
    d = int(d)
    if d < 2:
        raise ParameterDomainError(f"qudit dimension must be >= 2, got {d}")
    amps = np.zeros(d * d, dtype=complex)
    amps[np.arange(d) * d + np.arange(d)] = 1.0 / math.sqrt(d)
    return FockKet(amps, (d, d), 0.0)


def werner_state(d, x):
    """Mixture (1-x)/d^2 * I + x |Phi><Phi| of noise and a maximally entangled projector."""
    d = int(d)
    if d < 2:
        raise ParameterDomainError(f"qudit dimension must be >= 2, got {d}")
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ParameterDomainError(f"mixing weight must lie in [0, 1], got {x}")
    phi = maximally_entangled_qudit(d)
    mat = ((1.0 - x) / d**2) * np.eye(d * d, dtype=complex)
    mat += x * np.outer(phi.amplitudes, phi.amplitudes.conj())
    return DensityOperator(
        mat, (d, d), ket=phi if x == 1.0 else None,
        meta={"entangled": x > 1.0 / (d + 1)},
    )


def maximally_mixed(d):
    """The state I/d on a single d-dimensional system."""
    d = int(d)
    if d < 1:
        raise ParameterDomainError("dimension must be >= 1")
    return DensityOperator(sp.identity(d, dtype=complex, format="csr") / d, (d,))


def tensor(a, b):
    """Kronecker product of two density operators; subsystem lists concatenate."""
    new_dim = a.dim * b.dim
    if new_dim > DIM_LIMIT:
        raise SizeLimitError(f"tensor product dimension {new_dim} exceeds the guard {DIM_LIMIT}")
    if a.is_sparse or b.is_sparse:
        mat = sp.kron(
            a.matrix if a.is_sparse else sp.coo_matrix(a.matrix),
            b.matrix if b.is_sparse else sp.coo_matrix(b.matrix),
            format="csr",
        )
    else:
        if new_dim > DENSE_DIM_LIMIT:
            raise SizeLimitError(f"dense tensor product dimension {new_dim} exceeds the guard")
        mat = np.kron(a.matrix, b.matrix)
    deficit = 1.0 - (1.0 - a.trace_deficit) * (1.0 - b.trace_deficit)
    return DensityOperator(mat, a.dims + b.dims, trace_deficit=deficit)


def partial_trace(rho, keep):
    """Trace out every subsystem except ``keep`` (an index into rho.dims)."""
    dims = rho.dims
    if len(dims) < 2:
        raise ParameterDomainError("partial trace needs at least two subsystems")
    if not 0 <= keep < len(dims):
        raise ParameterDomainError(f"subsystem index {keep} out of range for dims {dims}")
    d_before = int(np.prod(dims[:keep], initial=1))
    d_keep = dims[keep]
    d_after = int(np.prod(dims[keep + 1:], initial=1))
    if rho.is_sparse:
        coo = rho.matrix.tocoo()
        rb, rk, ra = np.unravel_index(coo.row, (d_before, d_keep, d_after))
        cb, ck, ca = np.unravel_index(coo.col, (d_before, d_keep, d_after))
        on_diag = (rb == cb) & (ra == ca)
        mat = sp.coo_matrix(
            (coo.data[on_diag], (rk[on_diag], ck[on_diag])), shape=(d_keep, d_keep)
        ).tocsr()
        mat.sum_duplicates()
    else:
        t = rho.matrix.reshape(d_before, d_keep, d_after, d_before, d_keep, d_after)
        mat = np.einsum("idjiej->de", t)
    return DensityOperator(mat, (d_keep,), trace_deficit=rho.trace_deficit)


def _clamped_eigenvalues(vals):
    vals = np.asarray(vals, dtype=float)
    low = vals.min(initial=0.0)
    if low < -EIG_CLAMP_TOL:
        raise InvalidStateError(f"eigenvalue {low:.3e} below the PSD tolerance -{EIG_CLAMP_TOL}")
    return np.where(vals < 0.0, 0.0, vals)


def _rank_one_view(matrix, trace):
    """Extract (weight, unit vector) if the matrix is numerically rank one, else None."""
    diag = np.asarray(matrix.diagonal().real, dtype=float)
    j = int(np.argmax(diag))
    if diag[j] <= 0.0:
        return None
    col = matrix[:, [j]]
    col = np.asarray(col.todense() if sp.issparse(col) else col, dtype=complex).ravel()
    nrm = np.linalg.norm(col)
    if nrm == 0.0:
        return None
    vec = col / nrm
    image = matrix @ vec
    image = np.asarray(image, dtype=complex).ravel()
    w = float(np.vdot(vec, image).real)
    if abs(w - trace) > 1e-10 * max(1.0, abs(trace)):
        return None
    residual = np.max(np.abs(image - w * vec))
    if residual > 1e-12 * max(1.0, w):
        return None
    return w, vec


def spectral_decomposition(op):
    """Eigenvalues and eigenvectors of a density operator, exploiting structure.

    Returns ``(values, vectors)`` where ``vectors`` is a dim x r column matrix,
    or None meaning the computational basis (diagonal operator).  Pure
    operators built from a ket resolve to their single eigenpair without any
    eigensolver; negative eigenvalues within tolerance are clamped to zero.
    """
    if op.ket is not None:
        psi = op.ket.amplitudes
        nrm_sq = float(np.vdot(psi, psi).real)
        if nrm_sq == 0.0:
            return np.zeros(1), psi.reshape(-1, 1)
        return np.array([nrm_sq]), (psi / math.sqrt(nrm_sq)).reshape(-1, 1)
    diag = op.diagonal_or_none()
    if diag is not None:
        return _clamped_eigenvalues(diag), None
    if op.is_sparse:
        view = _rank_one_view(op.matrix, op.trace)
        if view is not None:
            w, vec = view
            return _clamped_eigenvalues(np.array([w])), vec.reshape(-1, 1)
        dense = op.to_dense()
    else:
        dense = op.matrix
    vals, vecs = np.linalg.eigh(dense)
    vals = _clamped_eigenvalues(vals)
    # eigh of a rank-deficient matrix leaves O(dim * eps) junk eigenvalues;
    # raised to small powers they would contribute O(1), so zero them out
    floor = vals.max(initial=0.0) * dense.shape[0] * 1e-15
    vals = np.where(vals < floor, 0.0, vals)
    return vals, vecs


def eigenvalue_power(vals, s):
    """Eigenvalue map for fractional operator powers on [0, 1].

    0**s = 0 for s in (0, 1]; s = 0 maps support (eigenvalues above the
    support tolerance) to 1, everything else to 0.
    """
    if not 0.0 <= s <= 1.0:
        raise ParameterDomainError(f"power must lie in [0, 1], got {s}")
    vals = np.asarray(vals, dtype=float)
    if s == 0.0:
        return (vals > SUPPORT_TOL).astype(float)
    if s == 1.0:
        return vals.copy()
    return vals**s


def matrix_power(rho, s):
    """Hermitian fractional power rho**s for s in [0, 1], via eigendecomposition."""
    vals, vecs = spectral_decomposition(rho)
    pv = eigenvalue_power(vals, s)
    if vecs is None:
        if rho.is_sparse:
            return sp.diags(pv.astype(complex)).tocsr()
        return np.diag(pv.astype(complex))
    if vecs.shape[1] == 1:
        vec = vecs[:, 0]
        dim = vec.size
        if rho.is_sparse:
            nz = np.flatnonzero(vec)
            data = pv[0] * np.outer(vec[nz], vec[nz].conj()).ravel()
            return sp.coo_matrix(
                (data, (np.repeat(nz, nz.size), np.tile(nz, nz.size))), shape=(dim, dim)
            ).tocsr()
        return pv[0] * np.outer(vec, vec.conj())
    return (vecs * pv) @ vecs.conj().T


def trace_norm(h, tol=1e-10):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    if isinstance(h, DensityOperator):
        h = h.matrix
    if sp.issparse(h):
        if h.shape[0] > DENSE_DIM_LIMIT:
            raise SizeLimitError(f"trace norm of sparse dimension {h.shape[0]} exceeds the guard")
        h = np.asarray(h.todense())
    h = np.asarray(h)
    herm = float(np.max(np.abs(h - h.conj().T), initial=0.0))
    if herm > tol:
        raise InvalidStateError(f"matrix is not Hermitian: residual {herm:.3e}")
    return float(np.sum(np.abs(np.linalg.eigvalsh(h))))
