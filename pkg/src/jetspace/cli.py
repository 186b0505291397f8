"""Command-line interface.

Subcommands: dim-do, growth-table, cohomology, symbol, elliptic-check, jet,
induced-map, block-op.  Reports are JSON with sorted keys (growth-table
defaults to CSV with a JSON footer); identical invocations produce identical
bytes.  Exit codes: 0 success, 1 malformed usage, 2 precondition failure,
3 internal inconsistency.  The environment variable JETSPACE_NMAX_OVERRIDE,
when set, caps every order budget accepted by the CLI.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction

from . import growth as growth_mod
from .cohomology import cech_line_oracle, h0_sym_tangent, line_cohomology
from .errors import InconsistencyError, PreconditionError
from .jets import JetElement, jet_of_presented, universal_derivation
from .laurent import LaurentPoly
from .presented import PresentedModule, UniPoly
from .projective import (block_operator, global_do_dimension, h0_basis,
                         hn_basis, induced_cohomology_map)
from .symbols import (DEFAULT_GRID_DEPTH, classify, elliptic_algebraic,
                      elliptic_real, format_symbol_poly, symbol_of,
                      torus_operator_check)
from .weyl import WeylElement

SCHEMA = "jetspace/1"
NMAX_ENV = "JETSPACE_NMAX_OVERRIDE"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _nmax_cap() -> int | None:
    raw = os.environ.get(NMAX_ENV)
    if raw is None or raw == "":
        return None
    try:
        cap = int(raw)
    except ValueError as exc:
        raise _UsageError(f"{NMAX_ENV} must be an integer, got {raw!r}") from exc
    if cap < 0:
        raise _UsageError(f"{NMAX_ENV} must be nonnegative")
    return cap


def _enforce_cap(value: int, what: str) -> None:
    cap = _nmax_cap()
    if cap is not None and value > cap:
        raise PreconditionError(
            f"{what} {value} exceeds the {NMAX_ENV} budget cap {cap}")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _frac_str(x) -> str:
    return str(Fraction(x))


def _parse_operator(args) -> list[list[WeylElement]]:
    """Either a single --op string or a --matrix JSON array of strings."""
    if getattr(args, "matrix", None):
        try:
            raw = json.loads(args.matrix)
        except json.JSONDecodeError as exc:
            raise _UsageError(f"--matrix is not valid JSON: {exc}") from exc
        if (not isinstance(raw, list) or not raw
                or any(not isinstance(row, list) or len(row) != len(raw) for row in raw)):
            raise _UsageError("--matrix must be a square JSON array of arrays")
        try:
            return [[WeylElement.parse(cell) for cell in row] for row in raw]
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
    if getattr(args, "op", None):
        try:
            return [[WeylElement.parse(args.op)]]
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
    raise _UsageError("one of --op or --matrix is required")


# ---- subcommand handlers ----------------------------------------------


def _cmd_dim_do(args) -> int:
    _enforce_cap(args.N, "--N")
    space = global_do_dimension(args.n, args.a, args.b, args.N)
    payload = {
        "schema": SCHEMA, "command": "dim-do",
        "n": args.n, "a": args.a, "b": args.b, "N": args.N,
        "dim": space.dim, "candidates": len(space.candidates), "box": space.box,
    }
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_growth_table(args) -> int:
    cap = _nmax_cap()
    if args.nmax is not None:
        nmax = args.nmax
        _enforce_cap(nmax, "--nmax")
    else:
        nmax = growth_mod.default_n_max(args.n)
        if cap is not None:
            nmax = min(nmax, cap)
    report = growth_mod.verify_growth(args.n, args.a, args.b, nmax)
    footer = {
        "M": report.table.threshold,
        "P_coeffs": [_frac_str(c) for c in report.polynomial.coeffs],
        "verdict": report.verdict,
    }
    if args.format == "json":
        payload = {
            "schema": SCHEMA, "command": "growth-table",
            "n": args.n, "a": args.a, "b": args.b, "nmax": nmax,
            "rows": [
                {"N": r.order, "dim": r.dim, "delta": r.delta,
                 "expected_delta": r.expected_delta, "match": r.match}
                for r in report.table.rows
            ],
            "constant": _frac_str(report.polynomial.constant),
            "first_failure": report.first_failure,
            **footer,
        }
        _emit(_json_text(payload), args.output)
        return 0
    buf = io.StringIO()
    buf.write("N,dim,delta,expected_delta,match\n")
    for r in report.table.rows:
        delta = "" if r.delta is None else str(r.delta)
        expected = "" if r.expected_delta is None else str(r.expected_delta)
        match = "" if r.match is None else ("true" if r.match else "false")
        buf.write(f"{r.order},{r.dim},{delta},{expected},{match}\n")
    buf.write(json.dumps(footer, sort_keys=True) + "\n")
    _emit(buf.getvalue(), args.output)
    return 0


def _cmd_cohomology(args) -> int:
    if args.j is not None:
        result = h0_sym_tangent(args.n, args.k, args.j)
        payload = {
            "schema": SCHEMA, "command": "cohomology",
            "n": args.n, "k": args.k, "j": args.j,
            "h0": result.h0, "chi": result.chi,
        }
    elif args.i is not None:
        if args.method == "cech":
            h = cech_line_oracle(args.n, args.k, args.i)
        else:
            full = line_cohomology(args.n, args.k)
            if not (0 <= args.i <= args.n):
                raise PreconditionError(f"i must lie in [0, {args.n}]")
            h = full.dims[args.i]
        payload = {
            "schema": SCHEMA, "command": "cohomology",
            "n": args.n, "k": args.k, "i": args.i,
            "h": h, "method": args.method,
        }
    else:
        full = line_cohomology(args.n, args.k)
        payload = {
            "schema": SCHEMA, "command": "cohomology",
            "n": args.n, "k": args.k,
            "h": list(full.dims), "chi": full.chi,
        }
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_symbol(args) -> int:
    ops = _parse_operator(args)
    sym = symbol_of(ops if len(ops) > 1 else ops[0][0], args.N)
    payload = {
        "schema": SCHEMA, "command": "symbol",
        "m": sym.m, "N": args.N, "size": sym.size,
        "entries": [[format_symbol_poly(p, sym.m) for p in row]
                    for row in sym.entries],
        "constant_coefficient": sym.constant_coefficient,
        "torus_operator": torus_operator_check(
            ops if len(ops) > 1 else ops[0][0]),
    }
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_elliptic_check(args) -> int:
    ops = _parse_operator(args)
    sym = symbol_of(ops if len(ops) > 1 else ops[0][0], args.N)
    payload = {
        "schema": SCHEMA, "command": "elliptic-check",
        "mode": args.mode, "m": sym.m, "N": args.N,
    }
    if args.mode == "algebraic":
        res = elliptic_algebraic(sym)
        payload.update({
            "elliptic": res.elliptic,
            "witness": res.witness.as_strings() if res.witness else None,
            "witness_defining_poly": (list(res.witness.defining_poly)
                                      if res.witness and res.witness.defining_poly
                                      else None),
            "witness_real": res.witness.real if res.witness else None,
            "reason": res.reason,
        })
    else:
        res = elliptic_real(sym, depth=args.depth)
        payload.update({
            "verdict": res.verdict,
            "witness": res.witness.as_strings() if res.witness else None,
            "sign_points": ([[_frac_str(v) for v in pt] for pt in res.sign_points]
                            if res.sign_points else None),
            "reason": res.reason,
        })
    _emit(_json_text(payload), args.output)
    return 0


def _parse_poly(text: str) -> LaurentPoly:
    """Polynomial text "c * x^(e0,..,em)" terms joined by '+'."""
    import re

    term_re = re.compile(
        r"^\s*(?P<coeff>-?\d+(?:/\d+)?)\s*\*\s*x\^\((?P<exps>-?[\d,\s-]*)\)\s*$")
    terms = {}
    for chunk in text.split("+"):
        if not chunk.strip():
            continue
        m = term_re.match(chunk)
        if not m:
            raise _UsageError(f"cannot parse polynomial term {chunk!r}")
        exps = tuple(int(p) for p in m.group("exps").split(","))
        terms[exps] = terms.get(exps, Fraction(0)) + Fraction(m.group("coeff"))
    if not terms:
        raise _UsageError("empty polynomial")
    nvars = len(next(iter(terms)))
    if any(len(e) != nvars for e in terms):
        raise _UsageError("inconsistent variable count across polynomial terms")
    return LaurentPoly(nvars, terms)


def _format_jet(jet: JetElement) -> str:
    m = jet.m
    if jet.poly.is_zero():
        z = ",".join("0" for _ in range(m))
        return f"0 * x^({z}) dx^({z})"
    parts = []
    for exps in sorted(jet.poly.terms):
        c = jet.poly.terms[exps]
        sx = ",".join(str(v) for v in exps[:m])
        sd = ",".join(str(v) for v in exps[m:])
        parts.append(f"{c} * x^({sx}) dx^({sd})")
    return " + ".join(parts)


def _cmd_jet(args) -> int:
    actions = [args.derive is not None, args.free_rank, args.cyclic is not None]
    if sum(actions) != 1:
        raise _UsageError("choose exactly one of --derive, --free-rank, --cyclic")
    _enforce_cap(args.N, "--N")
    if args.free_rank:
        if args.m is None or args.r is None:
            raise _UsageError("--free-rank needs --m and --r")
        from .jets import jet_free_rank

        payload = {
            "schema": SCHEMA, "command": "jet", "action": "free-rank",
            "m": args.m, "N": args.N, "r": args.r,
            "rank": jet_free_rank(args.m, args.N, args.r),
        }
    elif args.derive is not None:
        poly = _parse_poly(args.derive)
        jet = universal_derivation(poly, args.N)
        payload = {
            "schema": SCHEMA, "command": "jet", "action": "derive",
            "m": jet.m, "N": args.N, "jet": _format_jet(jet),
        }
    else:
        try:
            coeffs = [Fraction(p) for p in args.cyclic.split(",")]
        except ValueError as exc:
            raise _UsageError(f"--cyclic wants comma-separated coefficients: {exc}")
        p = UniPoly(coeffs)
        if p.is_zero():
            raise PreconditionError("cyclic module Q[t]/(0) is not torsion")
        module = jet_of_presented(PresentedModule.cyclic(p), args.N)
        free_rank, torsion = module.invariants()
        payload = {
            "schema": SCHEMA, "command": "jet", "action": "cyclic",
            "N": args.N, "modulus": repr(p),
            "invariants": [repr(d) for d in torsion],
            "free_rank": free_rank,
            "torsion": module.is_torsion(),
            "length": module.length(),
        }
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_induced_map(args) -> int:
    ops = _parse_operator(args)
    if len(ops) != 1:
        raise _UsageError("induced-map works on a single operator")
    op = ops[0][0]
    matrix = induced_cohomology_map(args.n, args.a, args.b, op, args.i)
    if args.i == 0:
        source = h0_basis(args.n, args.a)
        target = h0_basis(args.n, args.b)
    else:
        source = hn_basis(args.n, args.a)
        target = hn_basis(args.n, args.b)
    payload = {
        "schema": SCHEMA, "command": "induced-map",
        "n": args.n, "a": args.a, "b": args.b, "i": args.i,
        "source_dim": matrix.cols, "target_dim": matrix.rows,
        "source_basis": [list(e) for e in source],
        "target_basis": [list(e) for e in target],
        "matrix": [[_frac_str(c) for c in row] for row in matrix.to_rows()],
        "rank": matrix.rank(),
    }
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_block_op(args) -> int:
    ops = _parse_operator(args)
    if len(ops) != 1:
        raise _UsageError("block-op takes the off-diagonal operator only")
    block = block_operator(args.n, args.m, args.d, ops[0][0])
    report = block.verify()
    payload = {
        "schema": SCHEMA, "command": "block-op",
        "n": args.n, "m": args.m, "d": args.d,
        "order": report.order,
        "report": {
            "preserves_second_summand": report.preserves_second_summand,
            "identity_on_sub": report.identity_on_sub,
            "identity_on_quotient": report.identity_on_quotient,
            "order_witness": (list(report.order_witness)
                              if report.order_witness is not None else None),
            "ok": report.ok,
        },
    }
    _emit(_json_text(payload), args.output)
    return 0


# ---- parser wiring -----------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="jetspace",
                     description="Exact differential-operator computations on "
                                 "projective space")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="write the report here instead of stdout")

    p = sub.add_parser("dim-do", help="dimension of the global operator space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_dim_do)

    p = sub.add_parser("growth-table", help="dimension sweep with growth polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(func=_cmd_growth_table)

    p = sub.add_parser("cohomology", help="line bundle / symmetric tangent cohomology")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None,
                   help="twist: report h0 of Sym^k T(j) instead")
    p.add_argument("--method", choices=("closed", "cech"), default="closed")
    common(p)
    p.set_defaults(func=_cmd_cohomology)

    p = sub.add_parser("symbol", help="order-N symbol of an operator (matrix)")
    p.add_argument("--op", help="operator text: 'c * x^(..) d^(..) + ...'")
    p.add_argument("--matrix", help="JSON array of arrays of operator texts")
    p.add_argument("--N", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_symbol)

    p = sub.add_parser("elliptic-check", help="ellipticity of a symbol determinant")
    p.add_argument("--mode", choices=("algebraic", "real"), required=True)
    p.add_argument("--op")
    p.add_argument("--matrix")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_GRID_DEPTH)
    common(p)
    p.set_defaults(func=_cmd_elliptic_check)

    p = sub.add_parser("jet", help="jet computations over affine rings")
    p.add_argument("--derive", help="polynomial text: 'c * x^(e0,..)' + ...")
    p.add_argument("--free-rank", action="store_true", dest="free_rank")
    p.add_argument("--cyclic", help="comma coefficients of p for Q[t]/(p)")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--N", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_jet)

    p = sub.add_parser("induced-map", help="matrix induced on H^0 or H^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--op", required=True)
    common(p)
    p.set_defaults(func=_cmd_induced_map)

    p = sub.add_parser("block-op", help="verify a unipotent block operator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--op", required=True, help="the off-diagonal operator D12")
    common(p)
    p.set_defaults(func=_cmd_block_op)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return 1
    except PreconditionError as exc:
        sys.stderr.write(f"precondition failed: {exc}\n")
        return 2
    except InconsistencyError as exc:
        sys.stderr.write(f"internal inconsistency: {exc}\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
