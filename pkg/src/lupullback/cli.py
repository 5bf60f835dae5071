"""Command-line interface.

Subcommands: ``tensor``, ``measures``, ``sweep``, ``verify``, ``schmidt``.
Exit codes: 0 success, 1 verification failure, 2 input error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import linalg
from .errors import LupullbackError
from .measures import (RR_PER_CTC, measure_report, schlienz_mahler, trace_rr)
from .orbits import orbit_dimension, random_pure_state
from .pullback import (blocks, coadjoint_tensor, mixed_block, pullback_tensor,
                       single_subsystem_tensor, split, symmetric_spectrum)
from .states import (DensityMatrix, PureState, density_from_pure, from_fano,
                     is_separable_pure, maximally_entangled, pure_state,
                     schmidt_decompose, schmidt_state, state_from_json, to_fano)
from .subasis import gell_mann_basis, local_family

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

SWEEP_HEADER = ["alpha0", "schlienz_mahler", "tangle", "entropy", "orbit_dim",
                "sym_eig_max", "antisym_norm"]


class InputError(Exception):
    pass


# -- formatting ---------------------------------------------------------------

def _fmt_float(x: float, digits: int) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    if x == 0:
        x = 0.0  # drop the sign of negative zero
    s = format(x, f".{digits}g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2) -> str:
    """JSON with floats at 17 significant digits and complex as ``[re, im]``."""
    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if o is None:
            return "null"
        if isinstance(o, (bool, np.bool_)):
            return "true" if o else "false"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return _fmt_float(o, 17)
        if isinstance(o, (complex, np.complexfloating)):
            return enc([o.real, o.imag], level)
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, np.ndarray):
            return enc(o.tolist(), level)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(not isinstance(v, (list, tuple, dict, np.ndarray, complex, np.complexfloating))
                   for v in o):
                return "[" + ", ".join(enc(v, level + 1) for v in o) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in o) + "\n" + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")
    return enc(obj, 0) + "\n"


def _complex_matrix(a):
    a = np.asarray(a)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


# -- state resolution ---------------------------------------------------------

def _angle(text: str, degrees: bool) -> float:
    try:
        v = float(text)
    except ValueError:
        raise InputError(f"not a number: {text!r}") from None
    return math.radians(v) if degrees else v


def resolve_state(args):
    """Build the state selected by ``--preset``, ``--state`` or ``--state-file``."""
    dims = tuple(args.dims)
    sources = [s for s in (args.preset, args.state, args.state_file) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --preset, --state, --state-file")
    if args.preset is not None:
        name, _, param = args.preset.partition(":")
        if name == "product":
            psi = np.zeros(dims[0] * dims[1])
            psi[0] = 1
            return pure_state(psi, dims)
        if name == "bell":
            if dims[0] != dims[1]:
                raise InputError("bell preset needs equal local dimensions")
            return maximally_entangled(dims[0])
        if name == "schmidt":
            if dims != (2, 2):
                raise InputError("schmidt preset is defined for dims 2 2")
            if not param:
                raise InputError("schmidt preset needs an angle, e.g. schmidt:0.3")
            return schmidt_state(_angle(param, args.degrees))
        if name == "random":
            seed = args.seed if not param else param
            if seed is None:
                raise InputError("random preset needs a seed (random:<seed> or --seed)")
            try:
                return random_pure_state(dims, int(seed))
            except ValueError as exc:
                raise InputError(str(exc)) from None
        raise InputError(f"unknown preset {args.preset!r}")
    if args.state is not None:
        text = args.state
    else:
        try:
            with open(args.state_file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read state file: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed state JSON: {exc}") from None
    state = state_from_json(doc)
    if tuple(state.dims) != dims and args.dims_given:
        raise InputError(f"state dims {state.dims} differ from --dims {dims}")
    return state


def _as_density(state):
    return density_from_pure(state) if isinstance(state, PureState) else state


# -- commands -----------------------------------------------------------------

def _family_for(rho: DensityMatrix):
    if rho.dims[0] != rho.dims[1]:
        raise InputError(f"local-unitary tensors need equal local dimensions, got {rho.dims}")
    return local_family(rho.dims[0])


def cmd_tensor(args) -> dict:
    rho = _as_density(resolve_state(args))
    fam = _family_for(rho)
    t = pullback_tensor(rho, fam)
    sym, anti = split(t)
    blk = blocks(sym, fam)
    doc = {
        "dims": list(rho.dims),
        "labels": list(t.labels),
        "k": _complex_matrix(t.k),
        "symmetric": sym,
        "antisymmetric": anti,
        "blocks": {"a": blk.a, "b": blk.b, "c": blk.c},
        "eigenvalues": symmetric_spectrum(t, args.tol),
        "orbit_dimension": orbit_dimension(rho, fam) if rho.is_pure() else None,
    }
    return doc


def cmd_measures(args) -> dict:
    state = resolve_state(args)
    if not isinstance(state, PureState):
        rho = state
        if not rho.is_pure():
            raise InputError("measures need a pure state (only trace_rr is defined for mixed input)")
        w, v = np.linalg.eigh(rho.matrix)
        state = pure_state(v[:, -1], rho.dims)
    return measure_report(state).as_dict()


def sweep_rows(start: float, stop: float, steps: int) -> list:
    fam = local_family(2)
    rows = []
    for a in np.linspace(start, stop, steps):
        psi = schmidt_state(min(float(a), math.pi / 4))
        rho = density_from_pure(psi)
        t = pullback_tensor(rho, fam)
        _, anti = split(t)
        rep = measure_report(psi)
        rows.append({
            "alpha0": float(a),
            "schlienz_mahler": rep.schlienz_mahler,
            "tangle": rep.tangle,
            "entropy": rep.entropy,
            "orbit_dim": orbit_dimension(rho, fam),
            "sym_eig_max": float(symmetric_spectrum(t)[0]),
            "antisym_norm": linalg.max_abs(anti),
        })
    return rows


def cmd_sweep(args) -> list:
    start = _angle(args.start, args.degrees) if args.start is not None else 0.0
    stop = _angle(args.stop, args.degrees) if args.stop is not None else math.pi / 4
    # tolerate round-off when pi/4 arrives via --degrees 45
    if abs(stop - math.pi / 4) < 1e-12:
        stop = math.pi / 4
    if not (0 <= start < stop <= math.pi / 4):
        raise InputError("sweep range must satisfy 0 <= start < stop <= pi/4")
    if args.steps < 2:
        raise InputError("sweep needs at least 2 steps")
    return sweep_rows(start, stop, args.steps)


def _csv_text(rows: list, header: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        out = []
        for key in header:
            v = r[key]
            if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
                out.append(str(int(v)))
            elif v is None:
                out.append("")
            else:
                out.append(_fmt_float(v, 12))
        w.writerow(out)
    return buf.getvalue()


def verify_checks(psi: PureState, tol: float) -> list:
    """Structural checks as ``(name, passed, residual, threshold, note)`` tuples."""
    rho = density_from_pure(psi)
    n = rho.dims[0]
    fam = _family_for(rho)
    basis = gell_mann_basis(n)
    t = pullback_tensor(rho, fam)
    sym, anti = split(t)
    blk = blocks(sym, fam)
    h = n * n - 1
    loose = 10 * tol
    checks = []

    def add(name, residual, threshold, note=""):
        checks.append((name, bool(residual <= threshold), float(residual), threshold, note))

    add("hermiticity", linalg.hermiticity_residual(t.k), tol)
    add("antisym_mixed_block_zero", linalg.max_abs(anti[:h, h:]), tol)

    reduced = rho.reduced(2)
    if linalg.max_abs(reduced - np.eye(n) / n) <= tol:
        add("maximal_entangled_symplectic_zero", linalg.max_abs(anti), loose)
    else:
        checks.append(("maximal_entangled_symplectic_zero", True, 0.0, loose,
                       "vacuous: not maximally entangled"))

    mix = linalg.max_abs(mixed_block(t))
    separable = is_separable_pure(rho, basis, loose)
    if separable:
        k1 = single_subsystem_tensor(rho.reduced(1), basis)
        k2 = single_subsystem_tensor(rho.reduced(2), basis)
        direct_sum = max(linalg.max_abs(t.k[:h, :h] - k1), linalg.max_abs(t.k[h:, h:] - k2))
        add("separable_mixed_block_zero", mix, loose)
        add("separable_direct_sum", direct_sum, loose)
    else:
        checks.append(("separable_mixed_block_zero", True, mix, loose,
                       "vacuous: entangled"))
    # converse: vanishing mixed block <=> Fano separability criterion
    add("separability_criterion_agreement", 0.0 if (mix <= loose) == separable else 1.0, 0.5)

    add("coadjoint_equals_pullback", linalg.max_abs(coadjoint_tensor(rho, fam) - t.k), tol)

    f = to_fano(rho, basis)
    add("fano_round_trip", linalg.max_abs(from_fano(f, basis).matrix - rho.matrix), tol)
    add("fano_c_matches_block", linalg.max_abs(f.correlation - blk.c), loose)

    rr = trace_rr(rho)
    add("trace_rr_proportional_ctc", abs(rr - RR_PER_CTC * float(np.sum(blk.c**2))), tol)
    sm = schlienz_mahler(blk.c, n)
    add("schlienz_mahler_in_unit_interval", max(0.0, -sm, sm - 1), tol)
    return checks


def cmd_verify(args):
    state = resolve_state(args)
    if isinstance(state, DensityMatrix):
        if not state.is_pure():
            raise InputError("verify needs a pure state")
        w, v = np.linalg.eigh(state.matrix)
        state = pure_state(v[:, -1], state.dims)
    checks = verify_checks(state, args.tol)
    lines = []
    for name, ok, resid, thr, note in checks:
        line = f"{'PASS' if ok else 'FAIL'}  {name:<42s} residual={resid:.3e} tol={thr:.1e}"
        if note:
            line += f"  ({note})"
        lines.append(line)
    failed = [c[0] for c in checks if not c[1]]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n", failed


def cmd_schmidt(args) -> dict:
    state = resolve_state(args)
    if not isinstance(state, PureState):
        raise InputError("schmidt needs a pure state")
    sd = schmidt_decompose(state)
    return {
        "dims": list(state.dims),
        "coefficients": sd.coefficients,
        "rank": sd.rank,
        "alpha0": sd.alpha0,
        "left": _complex_matrix(sd.left.T),
        "right": _complex_matrix(sd.right.T),
    }


# -- entry point --------------------------------------------------------------

def _common(suppress: bool) -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand; the subcommand
    # copy suppresses defaults so it never clobbers a value given up front
    def d(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--dims", nargs=2, type=int, metavar=("D1", "D2"), default=d(None))
    p.add_argument("--tol", type=float, default=d(linalg.DEFAULT_ATOL))
    p.add_argument("--seed", type=int, default=d(None))
    p.add_argument("--output", "-o", default=d(None), help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default=d(None))
    p.add_argument("--degrees", action="store_true", default=d(False),
                   help="angles are given in degrees")
    return p


def _state_args(p):
    p.add_argument("--preset", default=None,
                   help="product | bell | schmidt:<alpha0> | random:<seed>")
    p.add_argument("--state", default=None, help="inline JSON state document")
    p.add_argument("--state-file", default=None, help="path to a JSON state document")


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(
        prog="lupullback", parents=[_common(suppress=False)],
        description="Pull-back tensors and entanglement measures on local-unitary orbits.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("tensor", "pull-back tensor K, its parts and blocks"),
                        ("measures", "entanglement measures of a pure state"),
                        ("verify", "run the structural check suite"),
                        ("schmidt", "Schmidt decomposition")]:
        _state_args(sub.add_parser(name, parents=[common], help=help_))
    sw = sub.add_parser("sweep", parents=[common], help="sweep the Schmidt angle")
    sw.add_argument("--start", default=None)
    sw.add_argument("--stop", default=None)
    sw.add_argument("--steps", type=int, default=65)
    return parser


def _emit(text: str, output) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    with open(output, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args.dims_given = args.dims is not None
    args.dims = tuple(args.dims) if args.dims is not None else (2, 2)
    try:
        if args.tol <= 0:
            raise InputError("--tol must be positive")
        if args.dims[0] < 1 or args.dims[1] < 1:
            raise InputError("--dims must be positive")
        failed = []
        if args.command == "sweep":
            rows = cmd_sweep(args)
            text = dumps(rows) if args.format == "json" else _csv_text(rows, SWEEP_HEADER)
        elif args.command == "measures":
            doc = cmd_measures(args)
            if args.format == "csv":
                segre = doc.pop("segre", None)
                if segre is not None:
                    doc["segre_re"], doc["segre_im"] = segre.real, segre.imag
                text = _csv_text([doc], list(doc))
            else:
                text = dumps(doc)
        elif args.command == "verify":
            text, failed = cmd_verify(args)
        else:
            if args.format == "csv":
                raise InputError(f"{args.command} output is JSON only")
            doc = cmd_tensor(args) if args.command == "tensor" else cmd_schmidt(args)
            text = dumps(doc)
    except (InputError, LupullbackError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        _emit(text, args.output)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    if failed:
        print("failed checks: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
