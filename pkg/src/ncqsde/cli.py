"""Command-line interface: check, synthesize, simplify.

Exit codes: 0 success / realizable, 1 not realizable or not completable,
2 input error (bad JSON, parse failure, inconsistent shapes).
"""
from __future__ import annotations

import argparse
import json
import sys

from .calculus import deriv, zero_integral
from .errors import (DegreeTooHighForDim, InternalContractViolation, NcqsdeError,
                     NotCompletable, NotConservative, ParseError)
from .fock import FockConfig, verify_realization
from .modelfile import ModelFile, realization_json, validate
from .ncpoly import NcPoly
from .parser import parse_poly, parse_scalar, parse_variable
from .realize import commutation_preservation, check_realizable, QsdeModel
from .synth import SynthesisProblem, complete_drift

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class _ArgParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors already; keep that but route through main."""

    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="ncqsde", description="Exact realizability checks for polynomial QSDEs")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    c = sub.add_parser("check", help="decide physical realizability of a model file")
    c.add_argument("model", help="path to a model JSON file")
    c.add_argument("--fL", action="store_true", help="also print the coupling drift f_L")
    c.add_argument("--verify-fock", action="store_true",
                   help="replay the realization with truncated Fock matrices")
    c.add_argument("--json", action="store_true", help="print a schema-validated JSON result")

    s = sub.add_parser("synthesize", help="complete one drift component of a single-mode QSDE")
    given = s.add_mutually_exclusive_group(required=True)
    given.add_argument("--f1", help="known drift of q")
    given.add_argument("--f2", help="known drift of p")
    s.add_argument("--g1", required=True, help="q-row of the single coupling column")
    s.add_argument("--g2", required=True, help="p-row of the single coupling column")
    s.add_argument("--cap", type=int, default=None, help="series truncation degree for cos/sin/exp")
    s.add_argument("--direction", choices=("f2", "f1"), default=None,
                   help="component to complete (inferred from --f1/--f2 when omitted)")
    s.add_argument("--C", default="0", help="scalar coupling offset")
    s.add_argument("--verify-fock", action="store_true",
                   help="replay the realization with truncated Fock matrices")
    s.add_argument("--json", action="store_true", help="print a schema-validated JSON result")

    p = sub.add_parser("simplify", help="normal-order an expression")
    p.add_argument("expr", help="expression to normal-order, e.g. 'p*q^2'")
    op = p.add_mutually_exclusive_group()
    op.add_argument("--adjoint", action="store_true", help="print the adjoint")
    op.add_argument("--herm", action="store_true", help="print the Hermitian part")
    op.add_argument("--deriv", metavar="VAR", help="derivative with respect to VAR")
    op.add_argument("--zint", metavar="VAR", help="zero-constant integral with respect to VAR")
    p.add_argument("--modes", type=int, default=1, help="number of modes (default 1)")
    p.add_argument("--cap", type=int, default=None, help="series truncation degree for cos/sin/exp")
    p.add_argument("--json", action="store_true", help="print a schema-validated JSON result")
    return ap


# -- output helpers ------------------------------------------------------------------

def _emit(obj: dict, out) -> None:
    validate(obj, "result")
    out.write(json.dumps(obj, ensure_ascii=False, indent=2) + "\n")


def _matrix_text(mat) -> list:
    return [[str(e) for e in row] for row in mat]


def _fock_block(fn, dim: int = 40, tol: float = 1e-9) -> dict:
    try:
        r = fn()
    except DegreeTooHighForDim as exc:
        return {"dim": dim, "tol": tol, "max_residual": None, "ok": False, "note": str(exc)}
    return {"dim": dim, "tol": tol, "max_residual": r, "ok": r < tol}


def _nonzero_entries(label: str, mat) -> list:
    return [f"{label}[{a}][{b}] = {e}" for a, row in enumerate(mat)
            for b, e in enumerate(row) if not e.is_zero()]


# -- subcommands -------------------------------------------------------------------------

def _check(args, out) -> int:
    mf = ModelFile.load(args.model)
    model = mf.to_model()
    C = mf.coupling_constants()
    report = check_realizable(model, C)
    pres = commutation_preservation(model, C)

    failures, non_sa = [], []
    if report.stage == "f_not_self_adjoint":
        non_sa = list(report.details["entries"])
    elif report.details is not None and hasattr(report.details, "failures"):
        failures = [{"column": f.column, "i": f.i, "j": f.j, "residual": str(f.residual)}
                    for f in report.details.failures]

    fock = None
    if args.verify_fock:
        if report.realizable:
            fock = _fock_block(lambda: verify_realization(
                model, report.realization, FockConfig(modes=model.modes)))
        else:
            fock = {"dim": 40, "tol": 1e-9, "max_residual": None, "ok": False,
                    "note": "no realization to replay"}

    if args.json:
        obj = {
            "command": "check", "verdict": report.verdict, "stage": report.stage,
            "modes": model.modes, "channels": model.channels,
            "realization": realization_json(report.realization) if report.realizable else None,
            "f_L": None if report.f_L is None else [str(e) for e in report.f_L],
            "non_self_adjoint": non_sa, "failures": failures,
            "preservation": {"ok": pres.ok, "split": pres.split,
                             "dt_total": _matrix_text(pres.dt_total),
                             "B1": [_matrix_text(b) for b in pres.B1],
                             "B2": [_matrix_text(b) for b in pres.B2]},
            "fock": fock,
        }
        _emit(obj, out)
    else:
        if report.realizable:
            out.write("verdict: realizable\n")
            r = report.realization
            for k, l in enumerate(r.L, 1):
                out.write(f"L{k} = {l}\n")
            out.write(f"H = {r.H}\n")
        else:
            out.write(f"verdict: not_realizable ({report.stage})\n")
            for i in non_sa:
                out.write(f"  f{i + 1} is not self-adjoint; anti-Hermitian part "
                          f"{model.f[i].antiherm()}\n")
            for f in failures:
                out.write(f"  column {f['column']}: axes ({f['i']}, {f['j']}) "
                          f"cross-derivative residual {f['residual']}\n")
        if args.fL:
            if report.f_L is None:
                out.write("f_L: undefined (g is not commutator-conservative)\n")
            else:
                for k, e in enumerate(report.f_L, 1):
                    out.write(f"f_L{k} = {e}\n")
        if pres.ok:
            out.write("preservation: dt total = 0, B1 = 0, B2 = 0\n")
        else:
            lines = _nonzero_entries("dt", pres.dt_total)
            for k, (b1, b2) in enumerate(zip(pres.B1, pres.B2), 1):
                lines += _nonzero_entries(f"B1.ch{k}", b1) + _nonzero_entries(f"B2.ch{k}", b2)
            out.write("preservation: violated\n")
            for line in lines:
                out.write(f"  {line}\n")
        if fock is not None:
            if fock["max_residual"] is None:
                out.write(f"fock: skipped ({fock['note']})\n")
            else:
                status = "ok" if fock["ok"] else "FAILED"
                out.write(f"fock: max residual {fock['max_residual']:.3e} at N={fock['dim']} "
                          f"({status})\n")
    return EXIT_OK if report.realizable else EXIT_NO


def _synthesize(args, out) -> int:
    inferred = "f2" if args.f1 is not None else "f1"
    if args.direction is not None and args.direction != inferred:
        raise _UsageError(f"--direction {args.direction} needs --{'f1' if args.direction == 'f2' else 'f2'}")
    cap = args.cap
    known = parse_poly(args.f1 if args.f1 is not None else args.f2, 1, cap)
    g = (parse_poly(args.g1, 1, cap), parse_poly(args.g2, 1, cap))
    C = parse_scalar(args.C)
    prob = (SynthesisProblem(g, f1=known, C_choice=C) if inferred == "f2"
            else SynthesisProblem(g, f2=known, C_choice=C))
    base = {"command": "synthesize", "direction": inferred, "g": [str(e) for e in g]}
    try:
        completed, r = complete_drift(prob)
    except (NotCompletable, NotConservative) as exc:
        if args.json:
            _emit({**base, "verdict": "not_completable", "f": None, "completed": None,
                   "realization": None, "error": str(exc)}, out)
        else:
            out.write(f"not completable: {exc}\n")
        return EXIT_NO
    f = (known, completed) if inferred == "f2" else (completed, known)
    fock = None
    if args.verify_fock:
        model = QsdeModel(1, 1, f, tuple((e,) for e in g))
        fock = _fock_block(lambda: verify_realization(model, r, FockConfig(modes=1)))
    if args.json:
        _emit({**base, "verdict": "realizable", "f": [str(e) for e in f],
               "completed": str(completed), "realization": realization_json(r), "fock": fock}, out)
    else:
        out.write(f"{inferred} = {completed}\n")
        out.write(f"H = {r.H}\n")
        out.write(f"L = {r.L[0]}\n")
        if fock is not None:
            if fock["max_residual"] is None:
                out.write(f"fock: skipped ({fock['note']})\n")
            else:
                out.write(f"fock: max residual {fock['max_residual']:.3e} "
                          f"({'ok' if fock['ok'] else 'FAILED'})\n")
    return EXIT_OK


def _simplify(args, out) -> int:
    if args.modes < 1:
        raise _UsageError("--modes must be at least 1")
    X: NcPoly = parse_poly(args.expr, args.modes, args.cap)
    operation = None
    if args.adjoint:
        X, operation = X.adjoint(), "adjoint"
    elif args.herm:
        X, operation = X.herm(), "herm"
    elif args.deriv:
        v = parse_variable(args.deriv, args.modes)
        X, operation = deriv(X, v), f"deriv {args.deriv}"
    elif args.zint:
        v = parse_variable(args.zint, args.modes)
        X, operation = zero_integral(X, v), f"zint {args.zint}"
    if args.json:
        _emit({"command": "simplify", "modes": args.modes, "operation": operation,
               "result": str(X)}, out)
    else:
        out.write(f"{X}\n")
    return EXIT_OK


_VALUE_OPTIONS = {"--f1", "--f2", "--g1", "--g2", "--cap", "--direction", "--C",
                  "--deriv", "--zint", "--modes"}
_FLAG_OPTIONS = {"--fL", "--verify-fock", "--json", "--adjoint", "--herm", "-h", "--help"}


def normalize_argv(argv: list) -> list:
    """Let expressions such as "-i" or "-q*p" be option values and operands.

    argparse would read a leading dash as an option; here every value option
    swallows the next token, and any other unrecognized token is an operand.
    """
    if not argv:
        return argv
    opts, operands = [], []
    k = 1
    while k < len(argv):
        tok = argv[k]
        if tok == "--":
            operands.extend(argv[k + 1:])
            break
        if tok in _VALUE_OPTIONS and k + 1 < len(argv):
            opts.append(f"{tok}={argv[k + 1]}")
            k += 2
            continue
        if tok in _FLAG_OPTIONS or tok.split("=", 1)[0] in _VALUE_OPTIONS:
            opts.append(tok)
        else:
            operands.append(tok)
        k += 1
    return [argv[0]] + opts + (["--"] + operands if operands else [])


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(normalize_argv(argv))
        handler = {"check": _check, "synthesize": _synthesize, "simplify": _simplify}[args.command]
        return handler(args, out)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
    except OSError as exc:
        err.write(f"cannot read input: {exc}\n")
    except ParseError as exc:
        err.write(f"input error: {exc}\n")
    except InternalContractViolation:
        raise
    except NcqsdeError as exc:
        err.write(f"input error: {type(exc).__name__}: {exc}\n")
    return EXIT_INPUT


cli_main = main

if __name__ == "__main__":
    sys.exit(main())
