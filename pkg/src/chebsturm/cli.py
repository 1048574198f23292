"""Command-line front end.

Every subcommand prints one JSON report (or a CSV table with ``--format csv``)
carrying the tool version and the tolerances it used.  Exit status: 0 on
success, 1 on a certified negative result, 2 on bad input, 3 when a numerical
tolerance is not met.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import acceptance
from ._backend import BACKEND
from ._jsonio import csv_table, dumps
from ._version import __version__
from .chebsys import SystemTable, certify, t0_counterexample_table, monomial_table, psi_table
from .classical import AppendixCase, appendix_D_closed_form, appendix_D_numeric
from .errors import (BudgetExceeded, InputError, NotChebyshevSystem, NumericalError,
                     PreconditionFailed)
from .families import family_from_spec, load_system
from .gapfourier import classify_and_verify, determinant_crosscheck, gap_expand
from .minimax import best_approx, best_approx_oracle, verify_optimality
from .oscillation import DiscreteFunction, oscillation_report
from .spectrum import compute_spectrum, discrete_orthogonality_check, interlacing_check
from .yudin import yudin_extremal

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as :class:`InputError`."""

    def error(self, message):
        raise InputError(message)


def _read_json(text_or_path: str):
    """Parse inline JSON, or the file it names when it does not start like JSON."""
    src = text_or_path
    if not src.lstrip().startswith(("[", "{")):
        try:
            src = Path(src).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {text_or_path!r}: {exc.strerror}") from None
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = json.loads(val)
        except json.JSONDecodeError:
            out[key] = val
    return out


def _system(args):
    if args.system is not None:
        if args.family is not None:
            raise InputError("give either --system or --family, not both")
        obj = _read_json(args.system)
        return load_system(obj)
    if args.family is None or args.q is None:
        raise InputError("need --system FILE or --family NAME with --q")
    return family_from_spec(args.family, _params(args.param)).system(args.q, args.eta)


def _add_system(p):
    p.add_argument("--system", help="system JSON (inline or file)")
    p.add_argument("--family", help="builtin family: chebyshev-t, chebyshev-u, legendre, jacobi, appendix-i..iv")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="family parameter, repeatable")
    p.add_argument("--q", type=int, help="grid size, points 0..q")
    p.add_argument("--eta", type=float, default=0.0, help="boundary parameter")


def _table(args) -> SystemTable:
    chosen = [args.table is not None, args.monomial is not None, args.t0_counterexample is not None,
              args.family is not None or args.system is not None]
    if sum(chosen) != 1:
        raise InputError("choose exactly one of --table, --monomial, --t0-counterexample, --family/--system")
    if args.table is not None:
        obj = _read_json(args.table)
        if isinstance(obj, dict):
            extra = set(obj) - {"table"}
            if extra or "table" not in obj:
                raise InputError("table JSON must be an array of rows or {\"table\": [...]}")
            obj = obj["table"]
        try:
            return SystemTable(np.asarray(obj, dtype=np.float64))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError("table must be a numeric 2-D array") from None
    if args.monomial is not None:
        q, n = args.monomial
        return monomial_table(q, n)
    if args.t0_counterexample is not None:
        return t0_counterexample_table(args.t0_counterexample)
    spec = compute_spectrum(_system(args))
    return psi_table(spec, args.n)


def _add_table(p):
    p.add_argument("--table", help="function table JSON: rows are functions on 0..q")
    p.add_argument("--monomial", type=int, nargs=2, metavar=("Q", "N"), help="1, nu, .., nu^(N-1) on 0..Q")
    p.add_argument("--t0-counterexample", type=int, metavar="Q", help="the T_0-only counterexample system")
    _add_system(p)
    p.add_argument("--n", type=int, help="number of eigenfunctions for --family/--system (default all)")


def _report(args, body: dict, tolerances: dict) -> dict:
    return {"tool": "chebsturm", "tool_version": __version__, "backend": BACKEND,
            "command": args.command, "tolerances": tolerances, **body}


def _cmd_spectrum(args):
    sys_ = _system(args)
    spec = compute_spectrum(sys_)
    inter = interlacing_check(sys_)
    orth = discrete_orthogonality_check(sys_, spec)
    resid = np.abs(spec.psi_next - sys_.eta * spec.psi[:, sys_.q]) / spec.scale
    body = {"q": sys_.q, "eta": sys_.eta, "lambda": spec.lambdas, "psi": spec.psi,
            "residuals": resid, "interlacing": inter.passed, "orthogonality_residual": orth}
    csv = {"k": list(range(1, sys_.q + 2)), "lambda": spec.lambdas.tolist()}
    return EXIT_OK, body, {"residual": 1e-8}, csv


def _cmd_oscillation(args):
    if args.values is not None:
        if args.k is not None:
            raise InputError("give either --values or --k with a system")
        vals = _read_json(args.values)
        if not isinstance(vals, list):
            raise InputError("values must be a JSON array")
    else:
        if args.k is None:
            raise InputError("need --values or --k with --family/--system")
        vals = compute_spectrum(_system(args)).eigenfunction(args.k)
    try:
        f = DiscreteFunction(np.asarray(vals, dtype=np.float64), args.sign_tol)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("values must be numbers") from None
    r = oscillation_report(f)
    body = {"values": f.values, "N": r.N, "N0": r.N0, "S_minus": r.S_minus, "S_plus": r.S_plus,
            "zeros": [{"nu": nu, "type": t} for nu, t in r.zeros],
            "runs": [{"type": z.type, "start": z.start, "end": z.end} for z in r.runs]}
    return EXIT_OK, body, {"sign_tol": args.sign_tol}, None


def _cmd_tsystem(args):
    S = _table(args)
    try:
        c = certify(S, budget=args.budget, rel_tol=args.det_tol)
    except BudgetExceeded as exc:
        raise InputError(str(exc)) from None
    body = {"n": S.n, "q": S.q, "kind": c.kind, "common_sign": c.common_sign,
            "min_abs_det": c.min_abs_det, "witness": None if c.witness is None else list(c.witness),
            "subsets_checked": c.subsets_checked, "det_tol": c.det_tol}
    status = EXIT_OK if c.kind == "T_Z" else EXIT_NEGATIVE
    return status, body, {"det_tol_rel": args.det_tol, "budget": args.budget}, None


def _cmd_remez(args):
    S = _table(args)
    f = _read_json(args.f)
    if not isinstance(f, list):
        raise InputError("--f must be a JSON array")
    f = np.asarray(f, dtype=np.float64)
    method = args.method
    if method == "auto":
        method = "exchange" if certify(S).kind == "T_Z" else "oracle"
    r = best_approx(f, S) if method == "exchange" else best_approx_oracle(f, S, budget=args.budget)
    ver = verify_optimality(f, S, r, tol=args.tol)
    cert = r.certificate
    body = {"method": r.method, "E": r.E, "coefficients": r.coefficients,
            "certificate": {"points": list(cert.points), "signs": list(cert.signs), "level": cert.level,
                            "alternating": cert.alternating},
            "iterations": r.iterations, "verification": ver}
    status = EXIT_OK if ver["passed"] else EXIT_NUMERIC
    csv = {"k": list(range(1, S.n + 1)), "coefficient": r.coefficients.tolist()}
    return status, body, {"optimality_tol": args.tol, "budget": args.budget}, csv


def _cmd_gap_expand(args):
    sys_ = _system(args)
    spec = compute_spectrum(sys_)
    exp = gap_expand(sys_, spec, args.m, route_tol=args.route_tol)
    cls = classify_and_verify(exp, sys_, args.b)
    body = {"q": sys_.q, "m": args.m, "eta": sys_.eta, "eta_b": cls.eta_b,
            "coefficients": exp.coefficients, "quadrature_coefficients": exp.quadrature_coefficients,
            "route_gap": exp.route_gap, "removed_zeros": exp.removed,
            "case": cls.case, "expected": cls.expected, "verdict": cls.verdict,
            "ratios": cls.ratios, "spread": cls.spread, "consistent": cls.consistent}
    if 1 <= args.m <= sys_.q:
        dc = determinant_crosscheck(sys_, spec, args.m)
        body["determinant_crosscheck"] = {"spread": dc["spread"], "positive": dc["positive"],
                                          "passed": dc["passed"]}
    status = EXIT_OK if cls.consistent else EXIT_NEGATIVE
    csv = {"nu": list(range(exp.coefficients.size)), "a": exp.coefficients.tolist(),
           "ratio": cls.ratios.tolist()}
    return status, body, {"route_tol": args.route_tol, "equal_tol": 1e-8, "strict_margin": 1e-10}, csv


def _cmd_yudin(args):
    F = family_from_spec(args.family, _params(args.param))
    r = yudin_extremal(F, args.q, args.m, args.variant, L=args.L,
                       assume_krein=args.assume_krein, check=False)
    status = EXIT_OK if r.passed else EXIT_NUMERIC
    csv = {"l": list(range(r.p_coeffs.size)), "a": r.p_coeffs.tolist()}
    tol = {"krein": 1e-10, "vanishing": 1e-9, "sign": 1e-9, "grid": 10_000}
    return status, r.to_json(), tol, csv


def _rel_diff(closed: float, numeric: float, floor: float = 1e-12) -> float:
    """Relative difference; two values below ``floor`` count as equal."""
    if abs(closed) <= floor:
        return 0.0 if abs(numeric) <= floor else float("inf")
    return abs(closed - numeric) / abs(closed)


def _cmd_appendix(args):
    c = AppendixCase(args.case, args.q)
    nus = sorted(args.points or [])
    nus_arr = np.asarray(nus, dtype=np.int64)
    free = [args.nu] if args.nu is not None else list(range(args.q + 1))
    rows = []
    for nu in free:
        closed = appendix_D_closed_form(c, nu, nus_arr)
        numeric = appendix_D_numeric(c, nu, nus_arr)
        rows.append({"nu": nu, "closed_form": closed, "numeric": numeric,
                     "difference": closed - numeric})
    worst = max((_rel_diff(r["closed_form"], r["numeric"]) for r in rows), default=0.0)
    body = {"case": args.case, "q": args.q, "m": len(nus), "points": nus, "values": rows,
            "max_rel_diff": worst}
    status = EXIT_OK if worst <= 1e-8 else EXIT_NUMERIC
    csv = {k: [r[k] for r in rows] for k in ("nu", "closed_form", "numeric", "difference")}
    return status, body, {"rel": 1e-8, "abs_floor": 1e-12}, csv


def _cmd_suite(args):
    if args.only is not None:
        try:
            only = [int(x) for x in args.only.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"--only expects comma-separated criterion numbers, got {args.only!r}") from None
        if not only:
            raise InputError("empty criterion selection")
        unknown = [k for k in only if k not in acceptance.CRITERIA]
        if unknown:
            raise InputError(f"unknown criteria {unknown}")
    else:
        only = None
    faults = tuple(args.inject or ())
    results = acceptance.run_battery(only, args.seed, faults)
    if not args.quiet:
        for r in results:
            print(acceptance.format_line(r), file=sys.stderr)
    body = acceptance.summary(results, args.seed, faults)
    status = EXIT_OK if body["passed"] else EXIT_NUMERIC
    return status, body, {"per_criterion": "as stated in each criterion"}, None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chebsturm", description="Discrete Chebyshev systems and Sturm oscillation tools.")
    p.add_argument("--version", action="version", version=f"chebsturm {__version__}")
    p.add_argument("--config", help="JSON object of option values for the subcommand")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(handler=fn)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", help="write the report here instead of stdout")
        return sp

    sp = add("spectrum", _cmd_spectrum, "eigenvalues and eigenfunctions of a recurrence system")
    _add_system(sp)

    sp = add("oscillation", _cmd_oscillation, "zero and sign-change counts")
    sp.add_argument("--values", help="JSON array of function values (inline or file)")
    sp.add_argument("--k", type=int, help="use eigenfunction psi_k of the given system")
    sp.add_argument("--sign-tol", type=float, default=1e-9)
    _add_system(sp)

    sp = add("tsystem", _cmd_tsystem, "certify a T_Z / T_0 system by a full determinant sweep")
    _add_table(sp)
    sp.add_argument("--budget", type=int, default=2_000_000)
    sp.add_argument("--det-tol", type=float, default=1e-10, help="relative determinant threshold")

    sp = add("remez", _cmd_remez, "discrete minimax approximation with certificate")
    _add_table(sp)
    sp.add_argument("--f", required=True, help="JSON array of target values (inline or file)")
    sp.add_argument("--method", choices=("auto", "exchange", "oracle"), default="auto")
    sp.add_argument("--budget", type=int, default=100_000, help="oracle reference budget")
    sp.add_argument("--tol", type=float, default=1e-9, help="optimality verification tolerance")

    sp = add("gap-expand", _cmd_gap_expand, "expansion after removing the top zeros")
    _add_system(sp)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--b", type=float, help="endpoint b (default: right end of the support)")
    sp.add_argument("--route-tol", type=float, default=1e-8)

    sp = add("yudin", _cmd_yudin, "extremal gap polynomial with nonnegative coefficients")
    sp.add_argument("--family", required=True)
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--variant", type=int, choices=(1, 2), default=1)
    sp.add_argument("--L", type=int, help="Krein check degree (default 2q+4)")
    sp.add_argument("--assume-krein", action="store_true")

    sp = add("appendix", _cmd_appendix, "closed-form determinants for the four trigonometric cases")
    sp.add_argument("--case", required=True, choices=("i", "ii", "iii", "iv"))
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--points", type=int, nargs="*", help="fixed points nu_1..nu_m in [1, q]")
    sp.add_argument("--nu", type=int, help="free point (default: every point of 0..q)")

    sp = add("suite", _cmd_suite, "run the acceptance battery")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.add_argument("--inject", action="append", choices=acceptance.FAULTS,
                    help="inject a known defect to exercise failure detection")
    sp.add_argument("--quiet", action="store_true", help="omit the per-criterion lines on stderr")
    return p


def _apply_config(parser, args, argv):
    """Overlay ``--config`` values; explicit command-line flags win."""
    cfg = _read_json(args.config)
    if not isinstance(cfg, dict):
        raise InputError("config must be a JSON object")
    known = {k for k in vars(args) if k not in ("handler", "command", "config")}
    unknown = set(cfg) - known
    if unknown:
        raise InputError(f"unknown config fields {sorted(unknown)}")
    given = {a.split("=", 1)[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
    for k, v in cfg.items():
        if k not in given:
            setattr(args, k, v)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_INPUT
        if args.config:
            _apply_config(parser, args, argv)
        status, body, tol, csv = args.handler(args)
    except PreconditionFailed as exc:
        status, body, tol, csv = EXIT_NEGATIVE, {"error": str(exc), "evidence": exc.report}, {}, None
    except NotChebyshevSystem as exc:
        status, body, tol, csv = EXIT_NEGATIVE, {"error": str(exc), "witness": exc.witness}, {}, None
    except (InputError, BudgetExceeded) as exc:
        print(f"chebsturm: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        status, body, tol, csv = EXIT_NUMERIC, {"error": str(exc)}, {}, None
    fmt = getattr(args, "format", "json")
    if fmt == "csv" and (csv is not None or status == EXIT_OK):
        if csv is None:
            print(f"chebsturm: error: {args.command} has no CSV output", file=sys.stderr)
            return EXIT_INPUT
        text = csv_table(csv)
    else:
        text = dumps(_report(args, body, tol))
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
