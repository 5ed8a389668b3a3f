"""Constructors for the named state families and seeded random states.

Random families use numpy's ``default_rng`` (PCG64) seeded per call, so a
fixed seed reproduces the same state bit for bit on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StateValidationError
from .qstate import (
    DEFAULT_MAX_DIM,
    DensityMatrix,
    StateVector,
    SystemLayout,
    density_from_vector,
    mix,
)

FAMILY_NAMES = (
    "ghz",
    "w",
    "ghz_w_mixture",
    "generalized_werner",
    "product",
    "random_pure",
    "random_mixed",
)

#: accepted aliases for CLI convenience
FAMILY_ALIASES = {
    "ghz-w": "ghz_w_mixture",
    "ghzw": "ghz_w_mixture",
    "werner": "generalized_werner",
}


def basis_state(index: int, dim: int) -> StateVector:
    """Computational basis ket |index> in a dim-dimensional space."""
    if not 0 <= index < dim:
        raise StateValidationError(f"basis index {index} out of range for dimension {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def ghz(n: int) -> StateVector:
    """n-qubit GHZ state ``(|0...0> + |1...1>)/sqrt(2)``."""
    if n < 2:
        raise StateValidationError(f"ghz needs n >= 2, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return StateVector(amps)


def w_state(n: int) -> StateVector:
    """n-qubit W state: uniform superposition of the weight-1 basis kets."""
    if n < 2:
        raise StateValidationError(f"w_state needs n >= 2, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    for k in range(n):
        amps[1 << k] = 1.0 / np.sqrt(n)
    return StateVector(amps)


def ghz_w_mixture(p: float) -> DensityMatrix:
    """4-qubit mixture ``p |GHZ><GHZ| + (1 - p) |W><W|``.

    The two projectors are orthogonal, so the global entropy of the
    mixture is the binary entropy of p.
    """
    if not 0.0 <= p <= 1.0:
        raise StateValidationError(f"mixing parameter must be in [0, 1], got {p}")
    return mix(
        [density_from_vector(ghz(4)), density_from_vector(w_state(4))],
        [p, 1.0 - p],
    )


def generalized_werner(p: float) -> DensityMatrix:
    """3-qubit mixture of white noise with a fixed entangled pure state:
    ``(p/8) I + (1 - p) |psi><psi|`` where
    ``|psi> = (2|110> - |101> - |011>)/sqrt(6)``.
    """
    if not 0.0 <= p <= 1.0:
        raise StateValidationError(f"mixing parameter must be in [0, 1], got {p}")
    amps = np.zeros(8, dtype=complex)
    amps[0b110] = 2.0 / np.sqrt(6.0)
    amps[0b101] = -1.0 / np.sqrt(6.0)
    amps[0b011] = -1.0 / np.sqrt(6.0)
    psi = DensityMatrix(np.outer(amps, amps.conj()), check_psd=False)
    noise = DensityMatrix(np.eye(8, dtype=complex) / 8.0, check_psd=False)
    return mix([noise, psi], [p, 1.0 - p])


def product_state(n: int, local_dim: int = 2) -> StateVector:
    """Unentangled reference ket ``|0...0>`` on n parties."""
    if n < 1:
        raise StateValidationError(f"product state needs n >= 1, got {n}")
    return basis_state(0, local_dim**n)


def random_pure(layout: SystemLayout, seed: int) -> StateVector:
    """Haar-random pure state: normalized complex Gaussian amplitudes."""
    rng = np.random.default_rng(seed)
    d = layout.total_dim
    amps = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return StateVector(amps / np.linalg.norm(amps))


def random_mixed(layout: SystemLayout, rank: int, seed: int) -> DensityMatrix:
    """Random mixed state ``G G^dagger / Tr(G G^dagger)`` with G a complex
    Gaussian D x rank matrix."""
    d = layout.total_dim
    if not 1 <= rank <= d:
        raise StateValidationError(f"rank must be in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, check_psd=False)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix with the
    phase convention fixed (Mezzadri's recipe)."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


@dataclass(frozen=True)
class FamilySpec:
    """Parameters naming one member of a state family."""

    family: str
    n_parties: int = 0  # 0 means "use the family default"
    local_dim: int = 2
    p: float | None = None
    seed: int = 0
    rank: int | None = None

    def canonical_family(self) -> str:
        name = FAMILY_ALIASES.get(self.family, self.family)
        if name not in FAMILY_NAMES:
            raise StateValidationError(
                f"unknown family {self.family!r}; known: {', '.join(FAMILY_NAMES)}"
            )
        return name


_FIXED_PARTY_COUNT = {"ghz_w_mixture": 4, "generalized_werner": 3}


def family_state(
    spec: FamilySpec, *, max_dim: int | None = DEFAULT_MAX_DIM
) -> tuple[DensityMatrix, SystemLayout]:
    """Build the density matrix and layout described by ``spec``."""
    name = spec.canonical_family()

    fixed_n = _FIXED_PARTY_COUNT.get(name)
    n = spec.n_parties if spec.n_parties else (fixed_n or 3)
    if fixed_n is not None and n != fixed_n:
        raise StateValidationError(f"family {name} is defined on {fixed_n} parties, got {n}")
    if spec.local_dim < 2:
        raise StateValidationError(f"local_dim must be >= 2, got {spec.local_dim}")
    if name not in ("random_pure", "random_mixed") and spec.local_dim != 2:
        raise StateValidationError(f"family {name} is defined for qubits only")

    p = spec.p
    if name in ("ghz_w_mixture", "generalized_werner"):
        if p is None:
            raise StateValidationError(f"family {name} needs the parameter p")
    layout = SystemLayout((spec.local_dim,) * n, max_dim=max_dim)

    if name == "ghz":
        return density_from_vector(ghz(n)), layout
    if name == "w":
        return density_from_vector(w_state(n)), layout
    if name == "ghz_w_mixture":
        return ghz_w_mixture(p), layout
    if name == "generalized_werner":
        return generalized_werner(p), layout
    if name == "product":
        return density_from_vector(product_state(n, spec.local_dim)), layout
    if name == "random_pure":
        return density_from_vector(random_pure(layout, spec.seed)), layout
    # random_mixed
    rank = spec.rank if spec.rank is not None else layout.total_dim
    return random_mixed(layout, rank, spec.seed), layout
