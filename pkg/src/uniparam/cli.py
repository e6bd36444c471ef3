"""Command-line interface.

Subcommands: gen-unitary, decompose, bound, distill, fig1.  Matrices are
exchanged as JSON documents {"rows": R, "cols": C, "data": [[re, im], ...]}
with entries row-major.  Exit codes: 0 success, 2 input error, 3 internal
numerical failure.

Indexing note: documentation and reports use 1-based basis labels
|1>..|d> (matching the angle-matrix convention); file formats and arrays
are 0-based row-major.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .composite import build_unitary, decompose, random_param_matrix
from .entanglement import (
    bound_b,
    max_concurrence,
    max_distill_x_sq,
    n_copy_state,
    optimized_bound_b,
    ppt_min_eigenvalue,
)
from .errors import ConvergenceError, UniparamError
from .linalg import herm_eig
from .optimize import OptimizerConfig
from .states import DENSITY_PSD_TOL, validate_density

DISTILL_WITNESS_TOL = 1e-8
PPT_FLAG_TOL = 1e-10

_INDEXING_NOTE = (
    "Basis labels in documentation and reports are 1-based (|1>..|d|); "
    "JSON/CSV layouts and array data are 0-based row-major."
)


# ---------------------------------------------------------------------------
# matrix files

def matrix_to_json(m: np.ndarray) -> dict:
    """JSON document for a complex matrix."""
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(doc: dict) -> np.ndarray:
    """Parse and validate a matrix document."""
    try:
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (KeyError, TypeError) as exc:
        raise UniparamError(f"matrix file missing field: {exc}") from exc
    if rows < 1 or cols < 1 or len(data) != rows * cols:
        raise UniparamError(
            f"matrix file data length {len(data)} does not match {rows}x{cols}")
    flat = np.empty(rows * cols, dtype=complex)
    for i, entry in enumerate(data):
        if len(entry) != 2:
            raise UniparamError(f"entry {i} is not a [re, im] pair")
        re, im = float(entry[0]), float(entry[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise UniparamError(f"entry {i} is not finite")
        flat[i] = complex(re, im)
    return flat.reshape(rows, cols)


def load_matrix_file(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UniparamError(f"{path}: invalid JSON ({exc})") from exc
    return matrix_from_json(doc)


def _real_matrix(m: np.ndarray, what: str) -> np.ndarray:
    if np.max(np.abs(m.imag)) > 1e-12:
        raise UniparamError(f"{what} must be real (imaginary parts found)")
    return m.real.copy()


# ---------------------------------------------------------------------------
# fig1 scan

PSI_1 = np.zeros(9, dtype=complex)
PSI_1[[0, 4, 8]] = 1.0 / math.sqrt(3.0)  # (|11> + |22> + |33>)/sqrt(3)
PSI_2 = np.zeros(9, dtype=complex)
PSI_2[[1, 5, 6]] = 1.0 / math.sqrt(3.0)  # (|12> + |23> + |31>)/sqrt(3)


def fig1_state(alpha: float, beta: float) -> np.ndarray:
    """Two maximally entangled qutrit states mixed with uncolored noise."""
    rho = alpha * np.outer(PSI_1, PSI_1.conj())
    rho += beta * np.outer(PSI_2, PSI_2.conj())
    rho += (1.0 - alpha - beta) / 9.0 * np.eye(9)
    return rho


@dataclass
class ScanRow:
    """One grid point of the mixing-plane scan (bounds are normalized)."""

    alpha: float
    beta: float
    is_state: bool
    is_ppt: bool
    bound_plain: float | None
    bound_opt: float | None


def _point_seed(base_seed: int, ia: int, ib: int) -> int:
    return int(np.random.SeedSequence([base_seed, ia, ib]).generate_state(1)[0])


def _fig1_point(task: tuple) -> ScanRow:
    ia, ib, alpha, beta, optimize, restarts, base_seed = task
    rho = fig1_state(alpha, beta)
    is_state = bool(herm_eig(rho).eigenvalues[0] >= -DENSITY_PSD_TOL)
    is_ppt = bool(ppt_min_eigenvalue(rho, (3, 3), which=1) >= -PPT_FLAG_TOL)
    bound_plain = bound_opt = None
    if is_state:
        norm = max_concurrence(3)
        bound_plain = bound_b(rho, 3, 3).b / norm
        if optimize:
            cfg = OptimizerConfig(restarts=restarts, seed=_point_seed(base_seed, ia, ib))
            b_opt, _ = optimized_bound_b(rho, 3, 3, cfg)
            bound_opt = b_opt / norm
    return ScanRow(alpha, beta, is_state, is_ppt, bound_plain, bound_opt)


def run_fig1_scan(step: float, optimize: bool = False, restarts: int = 12,
                  seed: int = 0, jobs: int | None = None) -> list[ScanRow]:
    """Scan the full [0,1]^2 mixing square on a grid of spacing ``step``.

    Rows come back in deterministic grid order (alpha outer, beta inner);
    grid points that are not density matrices carry empty bounds but are
    still emitted.  Points are independent, so they are evaluated in a
    process pool when ``jobs`` allows.
    """
    if not 0.0 < step <= 0.25:
        raise UniparamError(f"step must lie in (0, 0.25], got {step}")
    num = int(math.floor((1.0 + 1e-9) / step))
    tasks = [
        (ia, ib, ia * step, ib * step, optimize, restarts, seed)
        for ia in range(num + 1)
        for ib in range(num + 1)
    ]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_fig1_point, tasks, chunksize=4))
    return [_fig1_point(t) for t in tasks]


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return f"{value:.12g}"


def write_scan_csv(rows: list[ScanRow], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["alpha", "beta", "is_state", "is_ppt", "bound_plain", "bound_opt"])
        for r in rows:
            writer.writerow([
                _fmt(r.alpha), _fmt(r.beta),
                "true" if r.is_state else "false",
                "true" if r.is_ppt else "false",
                _fmt(r.bound_plain), _fmt(r.bound_opt),
            ])


# ---------------------------------------------------------------------------
# subcommands

def _cmd_gen_unitary(args: argparse.Namespace) -> int:
    if args.dim < 2:
        raise UniparamError(f"--dim must be >= 2, got {args.dim}")
    if args.params is not None:
        lam = _real_matrix(load_matrix_file(args.params), "parameter matrix")
        if lam.shape != (args.dim, args.dim):
            raise UniparamError(
                f"parameter matrix is {lam.shape[0]}x{lam.shape[1]}, expected {args.dim}x{args.dim}")
    else:
        lam = random_param_matrix(args.dim, np.random.default_rng(args.seed))
    print(json.dumps(matrix_to_json(build_unitary(lam))))
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    u = load_matrix_file(args.input)
    lam = decompose(u)
    print(json.dumps(matrix_to_json(lam)))
    return 0


def _parse_dims(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UniparamError(f"--dims expects 'dA,dB', got {text!r}")
    d_a, d_b = (int(p) for p in parts)
    if d_a < 2 or d_b < 2:
        raise UniparamError(f"local dimensions must be >= 2, got {d_a},{d_b}")
    return d_a, d_b


def _load_state(path: str, d_a: int, d_b: int) -> np.ndarray:
    rho = load_matrix_file(path)
    if rho.shape[0] != rho.shape[1] or rho.shape[0] != d_a * d_b:
        raise UniparamError(
            f"state is {rho.shape[0]}x{rho.shape[1]}, expected {d_a * d_b}x{d_a * d_b}")
    validate_density(rho)
    return rho


def _cmd_bound(args: argparse.Namespace) -> int:
    d_a, d_b = _parse_dims(args.dims)
    if d_a != d_b:
        raise UniparamError("bound requires equal local dimensions")
    rho = _load_state(args.state, d_a, d_b)
    norm = max_concurrence(d_a)
    report = bound_b(rho, d_a, d_b, normalization=norm)
    out = {
        "dims": [d_a, d_b],
        "b": report.b,
        "terms": [
            {"k_a": ka, "l_a": la, "k_b": kb, "l_b": lb, "x": x}
            for (ka, la, kb, lb), x in report.terms.items()
        ],
    }
    if args.normalize:
        out["normalization"] = norm
        out["b_normalized"] = report.b / norm
    if args.optimize:
        cfg = OptimizerConfig(restarts=args.restarts, seed=args.seed)
        b_opt, result = optimized_bound_b(rho, d_a, d_b, cfg)
        out["b_opt"] = b_opt
        if args.normalize:
            out["b_opt_normalized"] = b_opt / norm
        out["optimizer"] = {
            "iterations": result.iterations,
            "restarts": result.restarts,
            "converged": result.converged,
        }
    print(json.dumps(out))
    return 0


def _cmd_distill(args: argparse.Namespace) -> int:
    d_a, d_b = _parse_dims(args.dims)
    if d_a != d_b:
        raise UniparamError("distill requires equal local dimensions")
    rho = _load_state(args.state, d_a, d_b)
    d = d_a
    if args.copies > 1:
        rho = n_copy_state(rho, (d_a, d_b), args.copies)
        d = d_a ** args.copies
    cfg = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    x_sq, result = max_distill_x_sq(rho, d, d, cfg)
    print(json.dumps({
        "dims": [d, d],
        "copies": args.copies,
        "max_x_sq": x_sq,
        "distillable_witness": bool(x_sq > DISTILL_WITNESS_TOL),
        "n_params": 2 * (4 * d - 8),
        "optimizer": {
            "iterations": result.iterations,
            "restarts": result.restarts,
            "converged": result.converged,
        },
    }))
    return 0


def _cmd_fig1(args: argparse.Namespace) -> int:
    rows = run_fig1_scan(args.step, optimize=args.optimize, restarts=args.restarts,
                         seed=args.seed, jobs=args.jobs)
    write_scan_csv(rows, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniparam",
        description="Composite-parameterized unitaries, density matrices, "
                    "and concurrence lower bounds.",
        epilog=_INDEXING_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-unitary", help="build a unitary from angles",
                       epilog=_INDEXING_NOTE)
    p.add_argument("--dim", type=int, required=True, help="dimension d >= 2")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--seed", type=int, help="draw angles uniformly from canonical ranges")
    src.add_argument("--params", help="JSON file with a d x d real angle matrix")
    p.set_defaults(func=_cmd_gen_unitary)

    p = sub.add_parser("decompose", help="canonical angles of a unitary",
                       epilog=_INDEXING_NOTE)
    p.add_argument("--input", required=True, help="JSON matrix file with a unitary")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("bound", help="concurrence lower bound of a state",
                       epilog=_INDEXING_NOTE)
    p.add_argument("--state", required=True, help="JSON matrix file with a density matrix")
    p.add_argument("--dims", required=True, help="local dimensions, e.g. 3,3")
    p.add_argument("--optimize", action="store_true", help="also maximize over local rotations")
    p.add_argument("--restarts", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--normalize", action="store_true",
                   help="also report bounds divided by sqrt(2(d-1)/d)")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("distill", help="distillability witness of a state",
                       epilog=_INDEXING_NOTE)
    p.add_argument("--state", required=True, help="JSON matrix file with a density matrix")
    p.add_argument("--dims", required=True, help="local dimensions, e.g. 3,3")
    p.add_argument("--copies", type=int, default=1, help="tensor-power copies (default 1)")
    p.add_argument("--restarts", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_distill)

    p = sub.add_parser("fig1", help="grid scan of the two-state noise mixing plane",
                       epilog="Per-point optimizer seeds derive from --seed and the "
                              "grid indices. " + _INDEXING_NOTE)
    p.add_argument("--step", type=float, required=True, help="grid spacing in (0, 0.25]")
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--restarts", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_fig1)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is not None and args.seed < 0:
        print("error: --seed must be >= 0", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UniparamError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
