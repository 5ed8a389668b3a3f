"""JSON state files.

Schema: a UTF-8 JSON object with ``"dims"`` (list of positive ints) and
either ``"matrix"`` (row-major D x D nesting of ``[re, im]`` pairs) or
``"vector"`` (D ``[re, im]`` pairs, row-major tensor ordering with party 0
most significant).  Extension files add ``"e_index"``.  An optional
``"family"`` block records provenance and is ignored on load.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .bounds import ExtensionState
from .errors import FileFormatError
from .qstate import DEFAULT_MAX_DIM, DensityMatrix, StateVector, SystemLayout, density_from_vector
from .states import FamilySpec


def _read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FileFormatError(f"{path}: top level must be a JSON object")
    return data


def _parse_dims(data: dict, path) -> list[int]:
    dims = data.get("dims")
    if (
        not isinstance(dims, list)
        or not dims
        or not all(isinstance(d, int) and d >= 1 for d in dims)
    ):
        raise FileFormatError(f"{path}: 'dims' must be a list of positive integers")
    return dims


def _parse_pairs(raw, expect_len: int, what: str, path) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 2 or arr.shape != (expect_len, 2):
        raise FileFormatError(
            f"{path}: {what} must be {expect_len} [re, im] pairs, got shape {arr.shape}"
        )
    return arr[:, 0] + 1j * arr[:, 1]


def load_state(
    path: str | Path, max_dim: int | None = DEFAULT_MAX_DIM
) -> tuple[DensityMatrix, SystemLayout]:
    """Load a density matrix (or state vector, densified) with its layout."""
    data = _read_json(path)
    dims = _parse_dims(data, path)
    layout = SystemLayout(dims, max_dim=max_dim)
    d = layout.total_dim

    if "matrix" in data:
        raw = data["matrix"]
        if not isinstance(raw, list) or len(raw) != d:
            raise FileFormatError(f"{path}: 'matrix' must have {d} rows")
        rows = [_parse_pairs(row, d, f"matrix row {i}", path) for i, row in enumerate(raw)]
        return DensityMatrix(np.vstack(rows)), layout
    if "vector" in data:
        amps = _parse_pairs(data["vector"], d, "'vector'", path)
        return density_from_vector(StateVector(amps)), layout
    raise FileFormatError(f"{path}: object needs a 'matrix' or 'vector' entry")


def load_extension(
    path: str | Path, max_dim: int | None = DEFAULT_MAX_DIM
) -> ExtensionState:
    """Load an extension state; the file must carry an ``e_index``."""
    data = _read_json(path)
    e_index = data.get("e_index")
    if not isinstance(e_index, int):
        raise FileFormatError(f"{path}: extension files need an integer 'e_index'")
    sigma, layout = load_state(path, max_dim=max_dim)
    if not 0 <= e_index < layout.n_parties:
        raise FileFormatError(
            f"{path}: e_index {e_index} out of range for {layout.n_parties} parties"
        )
    return ExtensionState(sigma, layout, e_index)


def _pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


def save_state(
    path: str | Path,
    rho: DensityMatrix,
    layout: SystemLayout,
    family: FamilySpec | None = None,
) -> None:
    data: dict = {
        "dims": list(layout.dims),
        "matrix": [_pairs(row) for row in rho.matrix],
    }
    if family is not None:
        data["family"] = asdict(family)
    Path(path).write_text(json.dumps(data), encoding="utf-8")


def save_state_vector(path: str | Path, psi: StateVector, layout: SystemLayout) -> None:
    data = {"dims": list(layout.dims), "vector": _pairs(psi.amplitudes)}
    Path(path).write_text(json.dumps(data), encoding="utf-8")


def save_extension(path: str | Path, ext: ExtensionState) -> None:
    data = {
        "dims": list(ext.layout.dims),
        "e_index": ext.e_index,
        "matrix": [_pairs(row) for row in ext.sigma.matrix],
    }
    Path(path).write_text(json.dumps(data), encoding="utf-8")
