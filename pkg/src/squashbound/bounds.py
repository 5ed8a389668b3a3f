"""Computable bounds on multipartite squashed entanglement.

Three entropic lower bounds are provided, named by the method identifiers
used throughout the CLI and reports:

* ``lemma1`` (3 parties): ``max_{(i,j)} [C - S(A_i A_j)]`` with
  ``C = sum_k S(A_k) - 2 S(A_1 A_2 A_3)``;
* ``corollary2`` (3 parties): the average of the three ``lemma1``
  expressions;
* ``lemma3`` (N >= 3 parties): ``sum_i S(A_i)
  - sum_{M=2}^{N-1} binom(N, M)^{-1} sum_{|T|=M} S(A_T) - 2 S(A_1...A_N)``.

All values use the multipartite normalization, which for two parties is
twice the usual bipartite squashed entanglement.  A negative value is
valid but uninformative: these are lower bounds, so only a strictly
positive value certifies entanglement.

Upper bounds come from evaluating the defining conditional-mutual-
information objective on an explicitly supplied extension of the state;
no optimization over extensions is attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .entropy import conditional_mutual_information, subsystem_entropy, von_neumann_entropy
from .errors import (
    ExtensionMismatchError,
    LayoutError,
    MethodMismatchError,
    StateValidationError,
)
from .qstate import (
    DEFAULT_MAX_DIM,
    DensityMatrix,
    StateVector,
    SystemLayout,
    density_from_vector,
    partial_trace,
)

PURITY_TOL = 1e-8
EXTENSION_ATOL = 1e-8

METHOD_NAMES = ("lemma1", "corollary2", "lemma3")


def _label(subset: Iterable[int]) -> str:
    return "S(" + "".join(f"A{i}" for i in sorted(subset)) + ")"


@dataclass(frozen=True)
class BoundReport:
    """One lower-bound evaluation with its entropy ingredients.

    ``value`` is ``max(candidates)``; only the ``lemma1`` method produces
    more than one candidate.
    """

    method: str
    entropies: dict[str, float]
    candidates: tuple[float, ...]
    value: float


@dataclass(frozen=True)
class ExtensionState:
    """State on the original parties plus one extension subsystem E."""

    sigma: DensityMatrix
    layout: SystemLayout
    e_index: int

    def __post_init__(self):
        if not 0 <= self.e_index < self.layout.n_parties:
            raise LayoutError(
                f"e_index {self.e_index} out of range for {self.layout.n_parties} parties"
            )
        if self.sigma.dim != self.layout.total_dim:
            raise LayoutError(
                f"extension dimension {self.sigma.dim} does not match layout "
                f"total {self.layout.total_dim}"
            )

    @property
    def party_indices(self) -> tuple[int, ...]:
        """Indices of the original parties, in order, excluding E."""
        return tuple(i for i in range(self.layout.n_parties) if i != self.e_index)

    def reduced(self) -> tuple[DensityMatrix, SystemLayout]:
        """Marginal on the original parties and its layout."""
        rho = partial_trace(self.sigma, self.layout, self.party_indices)
        dims = tuple(self.layout.dims[i] for i in self.party_indices)
        return rho, SystemLayout(dims, max_dim=None)


def _require_parties(layout: SystemLayout, n: int, method: str) -> None:
    if layout.n_parties != n:
        raise MethodMismatchError(
            f"{method} needs exactly {n} parties, layout has {layout.n_parties}"
        )


def _check_state(rho: DensityMatrix, layout: SystemLayout) -> None:
    if rho.dim != layout.total_dim:
        raise LayoutError(
            f"state dimension {rho.dim} does not match layout total {layout.total_dim}"
        )


def lemma1_bound(rho: DensityMatrix, layout: SystemLayout, base: float = 2) -> BoundReport:
    """Sharpest of the three pair-marginal lower bounds for 3 parties.

    Each candidate is ``sum_k S(A_k) - 2 S(A_0 A_1 A_2) - S(A_i A_j)`` for
    one pair ``(i, j)``; the report carries all three (pairs in
    lexicographic order) and their maximum.
    """
    _check_state(rho, layout)
    _require_parties(layout, 3, "lemma1")
    ent: dict[str, float] = {}
    for i in range(3):
        ent[_label([i])] = subsystem_entropy(rho, layout, [i], base=base)
    for pair in combinations(range(3), 2):
        ent[_label(pair)] = subsystem_entropy(rho, layout, pair, base=base)
    s_total = von_neumann_entropy(rho, base=base)
    ent[_label(range(3))] = s_total
    c = sum(ent[_label([i])] for i in range(3)) - 2.0 * s_total
    candidates = tuple(c - ent[_label(pair)] for pair in combinations(range(3), 2))
    return BoundReport("lemma1", ent, candidates, max(candidates))


def corollary2_bound(rho: DensityMatrix, layout: SystemLayout, base: float = 2) -> BoundReport:
    """Averaged pair-marginal lower bound for 3 parties (mean of the
    ``lemma1`` candidates, hence never larger than ``lemma1``)."""
    _check_state(rho, layout)
    _require_parties(layout, 3, "corollary2")
    ent: dict[str, float] = {}
    singles = 0.0
    for i in range(3):
        s = subsystem_entropy(rho, layout, [i], base=base)
        ent[_label([i])] = s
        singles += s
    pair_sum = 0.0
    for pair in combinations(range(3), 2):
        s = subsystem_entropy(rho, layout, pair, base=base)
        ent[_label(pair)] = s
        pair_sum += s
    s_total = von_neumann_entropy(rho, base=base)
    ent[_label(range(3))] = s_total
    value = singles - pair_sum / 3.0 - 2.0 * s_total
    return BoundReport("corollary2", ent, (value,), value)


def lemma3_bound(rho: DensityMatrix, layout: SystemLayout, base: float = 2) -> BoundReport:
    """General N-party lower bound (N >= 3).

    Subtracts, for every intermediate subset size M, the average entropy
    over all ``binom(N, M)`` marginals of that size.  For N = 3 this is
    arithmetically identical to ``corollary2``.  Two-party input is
    rejected; the formula is stated for the multipartite setting only.
    """
    _check_state(rho, layout)
    n = layout.n_parties
    if n < 3:
        raise MethodMismatchError(f"lemma3 needs at least 3 parties, layout has {n}")
    ent: dict[str, float] = {}
    singles = 0.0
    for i in range(n):
        s = subsystem_entropy(rho, layout, [i], base=base)
        ent[_label([i])] = s
        singles += s
    penalty = 0.0
    for m in range(2, n):
        subset_sum = 0.0
        for subset in combinations(range(n), m):
            s = subsystem_entropy(rho, layout, subset, base=base)
            ent[_label(subset)] = s
            subset_sum += s
        penalty += subset_sum / math.comb(n, m)
    s_total = von_neumann_entropy(rho, base=base)
    ent[_label(range(n))] = s_total
    value = singles - penalty - 2.0 * s_total
    return BoundReport("lemma3", ent, (value,), value)


def best_lower_bound(rho: DensityMatrix, layout: SystemLayout, base: float = 2) -> BoundReport:
    """Largest applicable lower bound (``max(lemma1, lemma3)`` for three
    parties, ``lemma3`` otherwise)."""
    if layout.n_parties == 3:
        r1 = lemma1_bound(rho, layout, base=base)
        r3 = lemma3_bound(rho, layout, base=base)
        return r1 if r1.value >= r3.value else r3
    return lemma3_bound(rho, layout, base=base)


def pure_state_squashed(
    state: DensityMatrix | StateVector,
    layout: SystemLayout,
    base: float = 2,
) -> float:
    """Exact squashed entanglement of a globally pure state:
    ``sum_i S(A_i)`` over the single-party marginals.

    A DensityMatrix input must satisfy ``Tr(rho^2) >= 1 - 1e-8``; anything
    less mixed is rejected rather than silently mislabeled as exact.
    """
    if isinstance(state, StateVector):
        rho = density_from_vector(state)
    else:
        rho = state
        if rho.purity() < 1.0 - PURITY_TOL:
            raise StateValidationError(
                f"state is not pure: Tr(rho^2) = {rho.purity()!r}"
            )
    _check_state(rho, layout)
    return sum(
        subsystem_entropy(rho, layout, [i], base=base)
        for i in range(layout.n_parties)
    )


def squashed_objective(
    ext: ExtensionState,
    target: DensityMatrix | None = None,
    base: float = 2,
) -> float:
    """Conditional mutual information ``I(A_1 : ... : A_N | E)`` of an
    explicit extension.

    For any extension of ``rho`` this upper-bounds the squashed
    entanglement of ``rho``; with a one-dimensional E it reduces to the
    plain multipartite mutual information.  If ``target`` is given, the
    extension must reduce to it within ``EXTENSION_ATOL`` elementwise.
    """
    if target is not None:
        reduced, _ = ext.reduced()
        dev = float(np.max(np.abs(reduced.matrix - target.matrix)))
        if reduced.dim != target.dim:
            raise ExtensionMismatchError(
                f"extension reduces to dimension {reduced.dim}, target has {target.dim}"
            )
        if dev > EXTENSION_ATOL:
            raise ExtensionMismatchError(
                f"extension does not reduce to the target: max deviation {dev:.3e}"
            )
    groups = tuple((i,) for i in ext.party_indices)
    return conditional_mutual_information(
        ext.sigma, ext.layout, groups, (ext.e_index,), base=base
    )


def classical_extension(
    ensemble: Sequence[tuple[float, DensityMatrix]],
    layout: SystemLayout,
    *,
    max_dim: int | None = DEFAULT_MAX_DIM,
) -> ExtensionState:
    """Flag-register extension ``sum_i p_i rho_i (x) |i><i|_E``.

    ``ensemble`` holds ``(weight, state)`` pairs sharing ``layout``; the
    extension subsystem E is appended as the last party with dimension
    equal to the ensemble size, so tracing it out returns the ensemble
    average.
    """
    if not ensemble:
        raise StateValidationError("ensemble must be nonempty")
    weights = np.asarray([w for w, _ in ensemble], dtype=float)
    if np.any(weights < 0):
        raise StateValidationError(f"weights must be nonnegative, got {weights.tolist()}")
    if abs(float(weights.sum()) - 1.0) > 1e-12:
        raise StateValidationError(
            f"weights must sum to 1, got {float(weights.sum())!r}"
        )
    d = layout.total_dim
    k = len(ensemble)
    for idx, (_, comp) in enumerate(ensemble):
        if comp.dim != d:
            raise LayoutError(
                f"ensemble component {idx} has dimension {comp.dim}, layout needs {d}"
            )
    ext_layout = SystemLayout(layout.dims + (k,), max_dim=max_dim)
    sigma = np.zeros((d * k, d * k), dtype=complex)
    for i, (w, comp) in enumerate(ensemble):
        # block (i, i) of the flag register holds w * rho_i
        sigma[i :: k, i :: k] += w * comp.matrix
    return ExtensionState(
        DensityMatrix(sigma, check_psd=False), ext_layout, layout.n_parties
    )


def eigendecomposition_ensemble(
    rho: DensityMatrix, tol: float = 1e-12
) -> list[tuple[float, DensityMatrix]]:
    """Spectral ensemble of ``rho``: eigenvalues above ``tol`` paired with
    their eigenprojectors.  Weights are renormalized to sum to exactly 1.
    """
    evals, evecs = np.linalg.eigh(rho.matrix)
    pairs = [
        (float(lam), np.asarray(evecs[:, j]))
        for j, lam in enumerate(evals)
        if lam > tol
    ]
    if not pairs:
        raise StateValidationError("state has no eigenvalue above the cutoff")
    total = sum(w for w, _ in pairs)
    return [
        (w / total, DensityMatrix(np.outer(v, v.conj()), check_psd=False))
        for w, v in pairs
    ]


def ci_objective(
    ext_layout: SystemLayout,
    sigma: DensityMatrix,
    pairing: Sequence[tuple[int, int]],
    base: float = 2,
) -> float:
    """Conditional-entanglement-of-mutual-information objective on an
    explicit primed extension.

    ``pairing`` lists ``(A_i, A'_i)`` party-index pairs that together
    cover the layout exactly once.  The value is
    ``I_n(A_1 A'_1 : ... : A_n A'_n) - I_n(A'_1 : ... : A'_n)`` with
    ``I_n(X_1 : ... : X_n) = sum_i S(X_i) - S(X_1 ... X_n)``, halved in
    the bipartite case so a pure two-party state with trivial primes
    scores its entanglement of formation ``S(A)``.
    """
    _check_state(sigma, ext_layout)
    n_parties = ext_layout.n_parties
    flat: list[int] = []
    for pair in pairing:
        if len(pair) != 2:
            raise LayoutError(f"pairing entries must be (party, prime) pairs, got {pair!r}")
        flat.extend(int(i) for i in pair)
    if sorted(flat) != list(range(n_parties)):
        raise LayoutError(
            f"pairing {pairing!r} must cover each of the {n_parties} parties exactly once"
        )
    n = len(pairing)
    blocks_mi = sum(
        subsystem_entropy(sigma, ext_layout, pair, base=base) for pair in pairing
    ) - von_neumann_entropy(sigma, base=base)
    primes = [int(p) for _, p in pairing]
    primes_mi = sum(
        subsystem_entropy(sigma, ext_layout, [p], base=base) for p in primes
    ) - subsystem_entropy(sigma, ext_layout, primes, base=base)
    value = blocks_mi - primes_mi
    return value / 2.0 if n == 2 else value
