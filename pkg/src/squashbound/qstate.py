"""Dense multipartite quantum states: layouts, state vectors, density matrices.

Conventions used everywhere in this package:

* tensor factors are row-major with party 0 the most significant index,
  so the basis ket ``|i_0 i_1 ... i_{N-1}>`` sits at flat index
  ``i_0 * d_1*...*d_{N-1} + ... + i_{N-1}``;
* all values are immutable after construction and safe to share between
  threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionGuardError, LayoutError, StateValidationError

#: Dense D x D storage and O(D^3) eigensolves get expensive fast; refuse
#: anything larger unless the caller raises the cap explicitly.
DEFAULT_MAX_DIM = 1024

HERMITICITY_ATOL = 1e-9
TRACE_ATOL = 1e-9
PSD_EIGVAL_TOL = 1e-8
NORM_SQ_ATOL = 1e-12


@dataclass(frozen=True)
class SystemLayout:
    """Ordered local dimensions of the tensor factors A_0, ..., A_{N-1}.

    A dimension of 1 is allowed (useful for a trivial extension subsystem)
    but carries no quantum degrees of freedom.
    """

    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int], max_dim: int | None = DEFAULT_MAX_DIM):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise LayoutError("layout needs at least one party")
        if any(d < 1 for d in dims):
            raise LayoutError(f"local dimensions must be >= 1, got {dims}")
        total = math.prod(dims)
        if max_dim is not None and total > max_dim:
            raise DimensionGuardError(
                f"total dimension {total} exceeds the cap {max_dim}; "
                "pass a larger max_dim to override"
            )
        object.__setattr__(self, "dims", dims)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def check_subset(self, subset: Iterable[int]) -> tuple[int, ...]:
        """Validate party indices and return them sorted ascending."""
        idx = sorted({int(i) for i in subset})
        if idx and (idx[0] < 0 or idx[-1] >= self.n_parties):
            raise LayoutError(
                f"party indices {idx} out of range for {self.n_parties} parties"
            )
        return tuple(idx)

    def permuted(self, perm: Sequence[int]) -> "SystemLayout":
        """Layout whose party j is this layout's party perm[j]."""
        if sorted(perm) != list(range(self.n_parties)):
            raise LayoutError(f"{perm} is not a permutation of 0..{self.n_parties - 1}")
        return SystemLayout((self.dims[p] for p in perm), max_dim=None)


class StateVector:
    """Normalized pure-state amplitudes in the row-major basis ordering."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes: Sequence[complex] | np.ndarray):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1).copy()
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_SQ_ATOL:
            raise StateValidationError(
                f"state vector is not normalized: |psi|^2 = {norm_sq!r}"
            )
        amps.setflags(write=False)
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix.

    The stored matrix is the symmetrized ``(M + M^dagger) / 2``; asymmetry
    beyond ``HERMITICITY_ATOL`` is rejected rather than repaired.

    Parameters
    ----------
    matrix : array_like
        Square complex matrix.
    check_psd : bool
        Run an eigensolve to verify positivity.  Internal operations that
        preserve positivity by construction skip it.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence | np.ndarray, *, check_psd: bool = True):
        mat = np.asarray(matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise StateValidationError(f"density matrix must be square, got {mat.shape}")
        asym = float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
        if asym > HERMITICITY_ATOL:
            raise StateValidationError(f"matrix is not Hermitian: max |rho - rho^dag| = {asym:.3e}")
        mat = (mat + mat.conj().T) / 2.0
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise StateValidationError(f"trace must be 1, got {tr!r}")
        if check_psd and mat.size:
            lam_min = float(np.linalg.eigvalsh(mat)[0])
            if lam_min < -PSD_EIGVAL_TOL:
                raise StateValidationError(
                    f"matrix is not positive semidefinite: min eigenvalue {lam_min:.3e}"
                )
        mat.setflags(write=False)
        self.matrix = mat

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        """Tr(rho^2); equals 1 for pure states."""
        return float(np.sum(np.abs(self.matrix) ** 2))

    def is_pure(self, tol: float = 1e-8) -> bool:
        return self.purity() >= 1.0 - tol


def density_from_vector(psi: StateVector | Sequence[complex] | np.ndarray) -> DensityMatrix:
    """Rank-1 projector |psi><psi| of a normalized state vector."""
    if not isinstance(psi, StateVector):
        psi = StateVector(psi)
    amps = psi.amplitudes
    # exact rank-1 outer product is Hermitian and PSD by construction
    return DensityMatrix(np.outer(amps, amps.conj()), check_psd=False)


def mix(states: Sequence[DensityMatrix], weights: Sequence[float]) -> DensityMatrix:
    """Convex combination ``sum_i w_i rho_i``.

    Weights must be nonnegative and sum to 1 within 1e-12; all states must
    share one dimension.
    """
    if len(states) != len(weights):
        raise StateValidationError(
            f"{len(states)} states but {len(weights)} weights"
        )
    if not states:
        raise StateValidationError("mix needs at least one state")
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0):
        raise StateValidationError(f"weights must be nonnegative, got {w.tolist()}")
    if abs(float(w.sum()) - 1.0) > 1e-12:
        raise StateValidationError(f"weights must sum to 1, got {float(w.sum())!r}")
    dim = states[0].dim
    for k, s in enumerate(states):
        if s.dim != dim:
            raise LayoutError(f"state {k} has dimension {s.dim}, expected {dim}")
    out = np.zeros((dim, dim), dtype=complex)
    for wi, s in zip(w, states):
        out += wi * s.matrix
    return DensityMatrix(out, check_psd=False)


def tensor(a: DensityMatrix, b: DensityMatrix, *, max_dim: int | None = DEFAULT_MAX_DIM) -> DensityMatrix:
    """Kronecker product ``a (x) b`` with ``a`` on the most significant side."""
    out_dim = a.dim * b.dim
    if max_dim is not None and out_dim > max_dim:
        raise DimensionGuardError(
            f"tensor product dimension {out_dim} exceeds the cap {max_dim}"
        )
    return DensityMatrix(np.kron(a.matrix, b.matrix), check_psd=False)


def partial_trace(rho: DensityMatrix, layout: SystemLayout, keep: Iterable[int]) -> DensityMatrix:
    """Marginal of ``rho`` on the parties in ``keep``.

    Parameters
    ----------
    rho : DensityMatrix
        State on the full layout.
    layout : SystemLayout
        Tensor-factor structure of ``rho``; its total dimension must match.
    keep : iterable of int
        Parties to retain.  The result keeps them in their original relative
        order; an empty set yields the trivial 1 x 1 state.

    Returns
    -------
    DensityMatrix
        Reduced state on the kept factors.  Trace and Hermiticity are
        preserved to machine precision.
    """
    if rho.dim != layout.total_dim:
        raise LayoutError(
            f"state dimension {rho.dim} does not match layout total {layout.total_dim}"
        )
    keep_idx = layout.check_subset(keep)
    n = layout.n_parties
    traced = [i for i in range(n) if i not in keep_idx]
    if not traced:
        return DensityMatrix(rho.matrix, check_psd=False)

    arr = rho.matrix.reshape(layout.dims + layout.dims)
    cur = list(layout.dims)
    # trace highest party index first so the remaining axis offsets stay valid
    for idx in sorted(traced, reverse=True):
        arr = np.trace(arr, axis1=idx, axis2=idx + len(cur))
        del cur[idx]
    d_keep = math.prod(cur) if cur else 1
    return DensityMatrix(np.asarray(arr).reshape(d_keep, d_keep), check_psd=False)


def permute_parties(rho: DensityMatrix, layout: SystemLayout, perm: Sequence[int]) -> DensityMatrix:
    """Reorder tensor factors so that new party j is old party perm[j].

    The matching layout is ``layout.permuted(perm)``.
    """
    if rho.dim != layout.total_dim:
        raise LayoutError(
            f"state dimension {rho.dim} does not match layout total {layout.total_dim}"
        )
    n = layout.n_parties
    if sorted(perm) != list(range(n)):
        raise LayoutError(f"{perm} is not a permutation of 0..{n - 1}")
    axes = [int(p) for p in perm] + [int(p) + n for p in perm]
    arr = rho.matrix.reshape(layout.dims + layout.dims).transpose(axes)
    d = layout.total_dim
    return DensityMatrix(np.ascontiguousarray(arr).reshape(d, d), check_psd=False)
