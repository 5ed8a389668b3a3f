"""Command-line surface: bound, sweep, threshold, upper, entropy, check.

Values follow the multipartite normalization (twice the usual bipartite
squashed entanglement when only two parties are involved) and are never
rescaled.  The bounds are necessary-only certificates, so the verdict is
"entangled" only for values above +1e-9 and "inconclusive" otherwise,
never "separable".

Exit codes: 0 success, 2 file/parse errors, 3 validation errors,
4 method/party mismatch, 5 no sign change in bracket, 6 inconsistent
extension.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Iterable

from .bounds import (
    best_lower_bound,
    classical_extension,
    eigendecomposition_ensemble,
    squashed_objective,
)
from .entropy import check_strong_subadditivity, subsystem_entropy
from .errors import (
    BracketError,
    ExtensionMismatchError,
    FileFormatError,
    MethodMismatchError,
    StateValidationError,
)
from .qstate import DEFAULT_MAX_DIM, SystemLayout
from .states import FamilySpec, family_state, random_mixed
from .stateio import load_extension, load_state
from .sweep import (
    BOUND_FUNCTIONS,
    crossing_lines,
    find_threshold,
    fmt12,
    parse_grid,
    sweep_family,
    write_sweep_csv,
    write_sweep_svg,
)

EXIT_OK = 0
EXIT_FILE = 2
EXIT_VALIDATION = 3
EXIT_METHOD = 4
EXIT_BRACKET = 5
EXIT_EXTENSION = 6

VERDICT_TOL = 1e-9
SSA_TOL = -1e-9


def _add_source_args(sub: argparse.ArgumentParser, with_file: bool = True) -> None:
    if with_file:
        sub.add_argument("--file", help="state file (JSON)")
    sub.add_argument(
        "--family",
        help="named family: ghz, w, ghz-w (alias ghz_w_mixture), "
        "werner (alias generalized_werner), product, random_pure, random_mixed",
    )
    sub.add_argument("--n", type=int, help="number of parties")
    sub.add_argument("--p", type=float, help="family parameter in [0, 1]")
    sub.add_argument("--seed", type=int, default=0, help="seed for random families")
    sub.add_argument("--rank", type=int, help="rank for random_mixed")
    sub.add_argument("--local-dim", type=int, default=2, help="local dimension per party")


def _add_common_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--log-base", choices=("2", "e"), default="2",
                     help="entropy unit: 2 for bits (default), e for nats")
    sub.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                     help="dense total-dimension cap (default 1024)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squashbound",
        description="Entropic lower bounds on multipartite squashed entanglement, "
        "plus extension-based upper bounds.",
        epilog="Reported values use the multipartite normalization (twice the "
        "bipartite convention for two parties).",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_bound = subs.add_parser("bound", help="evaluate one lower bound on one state")
    _add_source_args(p_bound)
    p_bound.add_argument("--method", choices=BOUND_FUNCTIONS, required=True)
    p_bound.add_argument("--json", action="store_true", help="emit a JSON object")
    _add_common_args(p_bound)
    p_bound.set_defaults(handler=cmd_bound)

    p_sweep = subs.add_parser("sweep", help="evaluate bounds over a parameter grid")
    _add_source_args(p_sweep, with_file=False)
    p_sweep.add_argument("--method", choices=BOUND_FUNCTIONS, action="append",
                         required=True, help="repeatable; one CSV column per method")
    p_sweep.add_argument("--grid", required=True, help="start:end:step, inclusive, in [0, 1]")
    p_sweep.add_argument("--out", required=True, help="CSV output path")
    p_sweep.add_argument("--svg", help="also write a standalone SVG line chart")
    _add_common_args(p_sweep)
    p_sweep.set_defaults(handler=cmd_sweep)

    p_thr = subs.add_parser("threshold", help="bisect a bound's sign change in p")
    _add_source_args(p_thr, with_file=False)
    p_thr.add_argument("--method", choices=BOUND_FUNCTIONS, required=True)
    p_thr.add_argument("--bracket", required=True, help="lo,hi with a sign change between")
    p_thr.add_argument("--tol", type=float, default=1e-6, help="final bracket width")
    p_thr.add_argument("--json", action="store_true")
    _add_common_args(p_thr)
    p_thr.set_defaults(handler=cmd_threshold)

    p_upper = subs.add_parser("upper", help="evaluate the extension objective (upper bound)")
    _add_source_args(p_upper)
    ext = p_upper.add_mutually_exclusive_group(required=True)
    ext.add_argument("--extension", help="extension state file with e_index")
    ext.add_argument("--eigen-ensemble", action="store_true",
                     help="use the state's spectral ensemble as a classical extension")
    _add_common_args(p_upper)
    p_upper.set_defaults(handler=cmd_upper)

    p_ent = subs.add_parser("entropy", help="entropy of a state or marginal")
    _add_source_args(p_ent)
    p_ent.add_argument("--subset", help="comma-separated party indices (default: all)")
    _add_common_args(p_ent)
    p_ent.set_defaults(handler=cmd_entropy)

    p_check = subs.add_parser("check", help="randomized self-checks")
    p_check.add_argument("--ssa", action="store_true",
                         help="strong-subadditivity sweep on random 3-qubit states")
    p_check.add_argument("--trials", type=int, default=500)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(handler=cmd_check)

    return parser


def _base(args) -> float:
    return 2.0 if args.log_base == "2" else math.e


def _unit(args) -> str:
    return "bits" if args.log_base == "2" else "nats"


def _family_spec(args) -> FamilySpec:
    if not args.family:
        raise StateValidationError("no state source: pass --family (or --file where allowed)")
    return FamilySpec(
        family=args.family,
        n_parties=args.n or 0,
        local_dim=args.local_dim,
        p=args.p,
        seed=args.seed,
        rank=args.rank,
    )


def _load_source(args):
    if getattr(args, "file", None):
        return load_state(args.file, max_dim=args.max_dim)
    return family_state(_family_spec(args), max_dim=args.max_dim)


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise StateValidationError(f"expected comma-separated integers, got {text!r}") from None


def cmd_bound(args) -> int:
    base = _base(args)
    rho, layout = _load_source(args)
    report = BOUND_FUNCTIONS[args.method](rho, layout, base=base)
    verdict = "entangled" if report.value > VERDICT_TOL else "inconclusive"
    if args.json:
        print(json.dumps({
            "method": report.method,
            "value": report.value,
            "unit": _unit(args),
            "verdict": verdict,
            "candidates": list(report.candidates),
            "entropies": report.entropies,
        }))
        return EXIT_OK
    print(f"method: {report.method}")
    print(f"value: {fmt12(report.value)} {_unit(args)}")
    print(f"verdict: {verdict}")
    print("candidates: " + ", ".join(fmt12(c) for c in report.candidates))
    for label, s in report.entropies.items():
        print(f"{label} = {fmt12(s)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = _family_spec(args)
    grid = parse_grid(args.grid)
    result = sweep_family(spec, args.method, grid, base=_base(args), max_dim=args.max_dim)
    write_sweep_csv(result, args.out)
    if args.svg:
        write_sweep_svg(result, args.svg)
    for line in crossing_lines(result):
        print(line)
    print(f"wrote {len(grid)} rows to {args.out}")
    return EXIT_OK


def cmd_threshold(args) -> int:
    spec = _family_spec(args)
    parts = args.bracket.split(",")
    if len(parts) != 2:
        raise StateValidationError(f"bracket must be 'lo,hi', got {args.bracket!r}")
    try:
        bracket = (float(parts[0]), float(parts[1]))
    except ValueError:
        raise StateValidationError(f"bracket must hold two numbers, got {args.bracket!r}") from None
    result = find_threshold(
        spec, args.method, bracket, tol=args.tol, base=_base(args), max_dim=args.max_dim
    )
    if args.json:
        print(json.dumps({
            "method": result.method,
            "p_star": result.p_star,
            "width": result.width,
            "iterations": result.iterations,
            "direction": result.direction,
        }))
        return EXIT_OK
    print(f"method: {result.method}")
    print(f"p_star = {fmt12(result.p_star)}")
    print(f"width = {fmt12(result.width)}")
    print(f"iterations = {result.iterations}")
    print(f"direction = {result.direction}")
    return EXIT_OK


def cmd_upper(args) -> int:
    base = _base(args)
    rho, layout = _load_source(args)
    if args.eigen_ensemble:
        ext = classical_extension(eigendecomposition_ensemble(rho), layout,
                                  max_dim=args.max_dim)
    else:
        ext = load_extension(args.extension, max_dim=args.max_dim)
        reduced_dims = tuple(ext.layout.dims[i] for i in ext.party_indices)
        if reduced_dims != layout.dims:
            raise ExtensionMismatchError(
                f"extension party dimensions {reduced_dims} do not match "
                f"state layout {layout.dims}"
            )
    value = squashed_objective(ext, target=rho, base=base)
    print(f"upper_bound = {fmt12(value)} {_unit(args)}")
    if layout.n_parties >= 3:
        low = best_lower_bound(rho, layout, base=base)
        print(f"lower_bound({low.method}) = {fmt12(low.value)} {_unit(args)}")
        print(f"gap = {fmt12(value - low.value)} {_unit(args)}")
    else:
        print("lower_bound = n/a (lower bounds need at least 3 parties)")
    return EXIT_OK


def cmd_entropy(args) -> int:
    rho, layout = _load_source(args)
    subset: Iterable[int]
    if args.subset is not None:
        subset = _parse_indices(args.subset)
    else:
        subset = range(layout.n_parties)
    print(fmt12(subsystem_entropy(rho, layout, subset, base=_base(args))))
    return EXIT_OK


def cmd_check(args) -> int:
    if not args.ssa:
        raise StateValidationError("nothing to check: pass --ssa")
    layout = SystemLayout((2, 2, 2))
    partitions = (((0,), (1,), (2,)), ((0,), (2,), (1,)), ((1,), (2,), (0,)))
    min_cmi = math.inf
    for t in range(args.trials):
        rho = random_mixed(layout, rank=(t % 8) + 1, seed=args.seed + t)
        for a, b, e in partitions:
            min_cmi = min(min_cmi, check_strong_subadditivity(rho, layout, a, b, e))
    ok = min_cmi >= SSA_TOL
    print(f"ssa trials={args.trials} seed={args.seed} "
          f"min_cmi={fmt12(min_cmi)} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except MethodMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_METHOD
    except BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except ExtensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXTENSION
    except StateValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
