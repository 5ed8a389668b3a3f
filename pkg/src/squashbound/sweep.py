"""Parameter sweeps, sign-change detection, and bisection thresholds.

Grid output is byte-deterministic: floats are rendered with 12 significant
digits, '.' decimal separator, and '\\n' line endings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Sequence

from .bounds import corollary2_bound, lemma1_bound, lemma3_bound
from .errors import BracketError, StateValidationError
from .states import FamilySpec, family_state

BOUND_FUNCTIONS = {
    "lemma1": lemma1_bound,
    "corollary2": corollary2_bound,
    "lemma3": lemma3_bound,
}

POS_TO_NEG = "pos_to_neg"
NEG_TO_POS = "neg_to_pos"


def fmt12(x: float) -> str:
    """Fixed 12-significant-digit rendering used for all emitted numbers."""
    return f"{x:.12g}"


def parse_grid(spec: str) -> list[float]:
    """Parse ``start:end:step`` into an inclusive grid inside [0, 1].

    The end point is included whenever the last step lands within half a
    step of it (the final value is clamped to ``end``).
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise StateValidationError(f"grid must be 'start:end:step', got {spec!r}")
    try:
        start, end, step = (float(p) for p in parts)
    except ValueError:
        raise StateValidationError(f"grid must hold three numbers, got {spec!r}") from None
    return make_grid(start, end, step)


def make_grid(start: float, end: float, step: float) -> list[float]:
    if step <= 0:
        raise StateValidationError(f"grid step must be positive, got {step}")
    if not (0.0 <= start <= end <= 1.0):
        raise StateValidationError(
            f"grid must satisfy 0 <= start <= end <= 1, got [{start}, {end}]"
        )
    grid: list[float] = []
    k = 0
    while True:
        p = start + k * step
        if p > end + step / 2.0:
            break
        grid.append(min(p, end))
        k += 1
    return grid


@dataclass(frozen=True)
class Crossing:
    method: str
    interval: tuple[float, float]
    direction: str


@dataclass(frozen=True)
class SweepResult:
    parameter: str
    grid: tuple[float, ...]
    values: dict[str, tuple[float, ...]]
    crossings: tuple[Crossing, ...]


@dataclass(frozen=True)
class ThresholdResult:
    method: str
    p_star: float
    width: float
    iterations: int
    direction: str


def detect_crossings(
    grid: Sequence[float], values: Sequence[float], method: str
) -> list[Crossing]:
    """Grid intervals on which consecutive values change sign."""
    out = []
    for i in range(len(grid) - 1):
        if values[i] * values[i + 1] < 0.0:
            direction = POS_TO_NEG if values[i] > 0.0 else NEG_TO_POS
            out.append(Crossing(method, (grid[i], grid[i + 1]), direction))
    return out


def _family_bound(
    spec: FamilySpec, method: str, base: float, max_dim: int | None
) -> Callable[[float], float]:
    func = BOUND_FUNCTIONS[method]

    def evaluate(p: float) -> float:
        rho, layout = family_state(replace(spec, p=p), max_dim=max_dim)
        return func(rho, layout, base=base).value

    return evaluate


def sweep_family(
    spec: FamilySpec,
    methods: Sequence[str],
    grid: Sequence[float],
    base: float = 2,
    max_dim: int | None = None,
) -> SweepResult:
    """Evaluate the requested bounds over a parameter grid.

    Grid points are independent; they are evaluated in order so the rows
    of the result (and any CSV written from it) follow the grid exactly.
    """
    if not grid:
        raise StateValidationError("grid is empty")
    evaluators = {m: _family_bound(spec, m, base, max_dim) for m in methods}
    values = {m: tuple(ev(p) for p in grid) for m, ev in evaluators.items()}
    crossings: list[Crossing] = []
    for m in methods:
        crossings.extend(detect_crossings(grid, values[m], m))
    return SweepResult("p", tuple(grid), values, tuple(crossings))


def bisect_sign_change(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-6,
) -> tuple[float, float, int, str]:
    """Bisect ``fn`` on [lo, hi] until the bracket is narrower than ``tol``.

    Returns (lo, hi, iterations, direction).  Raises BracketError when the
    endpoint values do not change sign.
    """
    if not lo < hi:
        raise StateValidationError(f"bracket must satisfy lo < hi, got [{lo}, {hi}]")
    f_lo = fn(lo)
    f_hi = fn(hi)
    if f_lo * f_hi >= 0.0:
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo) = {f_lo:.6g}, f(hi) = {f_hi:.6g}"
        )
    direction = POS_TO_NEG if f_lo > 0.0 else NEG_TO_POS
    iterations = 0
    max_iter = max(1, math.ceil(math.log2((hi - lo) / tol))) + 4
    while hi - lo > tol and iterations < max_iter:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        iterations += 1
    return lo, hi, iterations, direction


def find_threshold(
    spec: FamilySpec,
    method: str,
    bracket: tuple[float, float],
    tol: float = 1e-6,
    base: float = 2,
    max_dim: int | None = None,
) -> ThresholdResult:
    """Locate a sign change of a bound inside ``bracket`` by bisection.

    ``p_star`` is the midpoint of the final bracket and ``width`` its half
    width, so the bound at ``p_star - width`` and ``p_star + width`` has
    opposite signs.
    """
    evaluate = _family_bound(spec, method, base, max_dim)
    lo, hi, iterations, direction = bisect_sign_change(evaluate, bracket[0], bracket[1], tol)
    return ThresholdResult(method, 0.5 * (lo + hi), 0.5 * (hi - lo), iterations, direction)


def crossing_lines(result: SweepResult) -> list[str]:
    return [
        f"crossing method={c.method} "
        f"interval=[{fmt12(c.interval[0])},{fmt12(c.interval[1])}] "
        f"direction={c.direction}"
        for c in result.crossings
    ]


def write_sweep_csv(result: SweepResult, path: str | Path) -> None:
    """Write ``p,<method>...`` rows plus a trailing '#' comment block with
    the detected crossings."""
    methods = list(result.values)
    lines = [result.parameter + "," + ",".join(methods)]
    for i, p in enumerate(result.grid):
        row = [fmt12(p)] + [fmt12(result.values[m][i]) for m in methods]
        lines.append(",".join(row))
    lines.extend("# " + line for line in crossing_lines(result))
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def write_sweep_svg(result: SweepResult, path: str | Path) -> None:
    """Standalone SVG line chart of the sweep (no external renderer)."""
    width, height = 640, 440
    ml, mr, mt, mb = 60, 20, 20, 45
    pw, ph = width - ml - mr, height - mt - mb

    x_lo, x_hi = result.grid[0], result.grid[-1]
    x_span = (x_hi - x_lo) or 1.0
    flat = [v for vs in result.values.values() for v in vs]
    y_lo, y_hi = min(flat + [0.0]), max(flat + [0.0])
    pad = 0.05 * ((y_hi - y_lo) or 1.0)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    y_span = y_hi - y_lo

    def sx(p: float) -> str:
        return f"{ml + pw * (p - x_lo) / x_span:.2f}"

    def sy(v: float) -> str:
        return f"{mt + ph * (y_hi - v) / y_span:.2f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" '
        'fill="none" stroke="#444444"/>',
    ]
    if y_lo < 0.0 < y_hi:
        y0 = sy(0.0)
        parts.append(
            f'<line x1="{ml}" y1="{y0}" x2="{ml + pw}" y2="{y0}" '
            'stroke="#999999" stroke-dasharray="4,3"/>'
        )
    for k in range(5):
        xv = x_lo + x_span * k / 4
        yv = y_lo + y_span * k / 4
        parts.append(
            f'<text x="{sx(xv)}" y="{height - mb + 18}" font-size="12" '
            f'text-anchor="middle">{xv:.3g}</text>'
        )
        parts.append(
            f'<text x="{ml - 8}" y="{sy(yv)}" font-size="12" '
            f'text-anchor="end" dominant-baseline="middle">{yv:.3g}</text>'
        )
    parts.append(
        f'<text x="{ml + pw / 2:.2f}" y="{height - 8}" font-size="13" '
        f'text-anchor="middle">{result.parameter}</text>'
    )
    for j, (method, vals) in enumerate(result.values.items()):
        color = _SVG_COLORS[j % len(_SVG_COLORS)]
        points = " ".join(f"{sx(p)},{sy(v)}" for p, v in zip(result.grid, vals))
        parts.append(f'<polyline fill="none" stroke="{color}" points="{points}"/>')
        parts.append(
            f'<text x="{ml + 10}" y="{mt + 16 + 15 * j}" font-size="12" '
            f'fill="{color}">{method}</text>'
        )
    parts.append("</svg>")
    Path(path).write_bytes(("\n".join(parts) + "\n").encode("utf-8"))
