"""Von Neumann entropy and mutual-information functionals.

All quantities default to base-2 logarithms (bits).  Any base > 1 is
accepted; pass ``math.e`` for nats.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import LayoutError, StateValidationError
from .qstate import DensityMatrix, SystemLayout, partial_trace

#: eigenvalues below this are a PSD violation, not floating noise
EIGVAL_ERROR_TOL = -1e-8
#: eigenvalues in [EIGVAL_ERROR_TOL, EIGVAL_WARN_TOL) are clamped with a warning
EIGVAL_WARN_TOL = -1e-10


def _log(x: np.ndarray, base: float) -> np.ndarray:
    if base == 2:
        return np.log2(x)
    if base == math.e:
        return np.log(x)
    return np.log(x) / math.log(base)


def von_neumann_entropy(rho: DensityMatrix, base: float = 2) -> float:
    """Entropy ``-sum_i lam_i log(lam_i)`` over the eigenvalues of ``rho``.

    Zero eigenvalues contribute nothing.  Small negative eigenvalues from
    floating-point noise are clamped to zero (with a warning below
    ``EIGVAL_WARN_TOL``); anything below ``EIGVAL_ERROR_TOL`` raises.
    The result is clamped to ``[0, log(D)]``.

    Parameters
    ----------
    rho : DensityMatrix
    base : float
        Logarithm base, 2 for bits (default), ``math.e`` for nats.

    Returns
    -------
    float
    """
    evals = np.linalg.eigvalsh(rho.matrix)
    lam_min = float(evals[0]) if evals.size else 0.0
    if lam_min < EIGVAL_ERROR_TOL:
        raise StateValidationError(
            f"state is not positive semidefinite: eigenvalue {lam_min:.3e}"
        )
    if lam_min < EIGVAL_WARN_TOL:
        warnings.warn(
            f"clamping negative eigenvalue {lam_min:.3e} to zero",
            RuntimeWarning,
            stacklevel=2,
        )
    pos = evals[evals > 0.0]
    s = float(-np.sum(pos * _log(pos, base))) if pos.size else 0.0
    s_max = _log(np.asarray(float(rho.dim)), base).item()
    return min(max(s, 0.0), s_max)


def subsystem_entropy(
    rho: DensityMatrix,
    layout: SystemLayout,
    subset: Iterable[int],
    base: float = 2,
) -> float:
    """Entropy of the marginal of ``rho`` on the given parties."""
    return von_neumann_entropy(partial_trace(rho, layout, subset), base=base)


@dataclass(frozen=True)
class PartyGrouping:
    """Disjoint party blocks plus an optional disjoint conditioning set."""

    groups: tuple[tuple[int, ...], ...]
    conditioning: tuple[int, ...] = ()

    def __init__(
        self,
        groups: Sequence[Iterable[int]],
        conditioning: Iterable[int] = (),
    ):
        norm_groups = []
        for g in groups:
            block = tuple(sorted({int(i) for i in g}))
            if not block:
                raise LayoutError("party groups must be nonempty")
            norm_groups.append(block)
        cond = tuple(sorted({int(i) for i in conditioning}))
        seen: set[int] = set(cond)
        for block in norm_groups:
            overlap = seen.intersection(block)
            if overlap:
                raise LayoutError(f"groups/conditioning overlap on parties {sorted(overlap)}")
            seen.update(block)
        object.__setattr__(self, "groups", tuple(norm_groups))
        object.__setattr__(self, "conditioning", cond)

    def validate(self, layout: SystemLayout) -> None:
        for block in self.groups:
            layout.check_subset(block)
        layout.check_subset(self.conditioning)


def _as_grouping(groups, e=()) -> PartyGrouping:
    if isinstance(groups, PartyGrouping):
        if e and groups.conditioning and tuple(sorted(e)) != groups.conditioning:
            raise LayoutError("conflicting conditioning sets supplied")
        return groups if not e else PartyGrouping(groups.groups, e)
    return PartyGrouping(groups, e)


def multipartite_mutual_information(
    rho: DensityMatrix,
    layout: SystemLayout,
    groups: PartyGrouping | Sequence[Iterable[int]],
    base: float = 2,
) -> float:
    """``sum_i S(G_i) - S(G_1 ... G_k)`` for disjoint party blocks G_i.

    The union of the groups is treated as the joint system, so the blocks
    need not cover every party of the layout.
    """
    grouping = _as_grouping(groups)
    grouping.validate(layout)
    union = sorted(i for g in grouping.groups for i in g)
    total = sum(subsystem_entropy(rho, layout, g, base=base) for g in grouping.groups)
    return total - subsystem_entropy(rho, layout, union, base=base)


def conditional_mutual_information(
    rho: DensityMatrix,
    layout: SystemLayout,
    groups: PartyGrouping | Sequence[Iterable[int]],
    e: Iterable[int] = (),
    base: float = 2,
) -> float:
    """Conditional mutual information ``I(G_1 : ... : G_k | E)``.

    Computed directly as ``sum_i S(G_i E) - (k - 1) S(E) - S(G_1...G_k E)``,
    which for two blocks is the familiar ``S(AE) + S(BE) - S(ABE) - S(E)``.
    The conditioning set must be nonempty (use
    :func:`multipartite_mutual_information` when there is nothing to
    condition on).
    """
    grouping = _as_grouping(groups, e)
    grouping.validate(layout)
    cond = grouping.conditioning
    if not cond:
        raise LayoutError("conditioning set must be nonempty")
    k = len(grouping.groups)
    acc = 0.0
    for g in grouping.groups:
        acc += subsystem_entropy(rho, layout, set(g) | set(cond), base=base)
    acc -= (k - 1) * subsystem_entropy(rho, layout, cond, base=base)
    union = {i for g in grouping.groups for i in g} | set(cond)
    acc -= subsystem_entropy(rho, layout, union, base=base)
    return acc


def cmi_chain(
    rho: DensityMatrix,
    layout: SystemLayout,
    groups: PartyGrouping | Sequence[Iterable[int]],
    e: Iterable[int] = (),
    base: float = 2,
) -> float:
    """Telescoping form of the multipartite conditional mutual information.

    Adds up the bipartite terms ``I(G_2 : G_1 | E) + I(G_3 : G_1 G_2 | E)
    + ...``; agrees with the direct formula up to floating-point noise and
    is exposed as a cross-check.
    """
    grouping = _as_grouping(groups, e)
    grouping.validate(layout)
    cond = grouping.conditioning
    if not cond:
        raise LayoutError("conditioning set must be nonempty")
    blocks = grouping.groups
    acc = 0.0
    prefix: set[int] = set(blocks[0])
    for g in blocks[1:]:
        acc += conditional_mutual_information(
            rho, layout, (tuple(sorted(prefix)), g), cond, base=base
        )
        prefix |= set(g)
    return acc


def check_strong_subadditivity(
    rho: DensityMatrix,
    layout: SystemLayout,
    a: Iterable[int],
    b: Iterable[int],
    e: Iterable[int] = (),
    base: float = 2,
) -> float:
    """Return ``I(A : B | E)`` so the caller can assert it is >= -1e-9.

    An empty ``e`` degrades to plain mutual information, which is also
    nonnegative (subadditivity).
    """
    a_t, b_t, e_t = set(a), set(b), set(e)
    if a_t & b_t or a_t & e_t or b_t & e_t:
        raise LayoutError("a, b and e must be pairwise disjoint")
    if not e_t:
        return multipartite_mutual_information(rho, layout, (a_t, b_t), base=base)
    return conditional_mutual_information(rho, layout, (a_t, b_t), e_t, base=base)
