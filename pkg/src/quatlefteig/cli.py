"""Command-line interface.

Quaternions are given as JSON arrays ``[w, x, y, z]`` and matrices as
``[[a, b], [c, d]]`` of such arrays.  Results go to stdout as JSON, diagnostics
to stderr.  Exit codes: 0 success, 1 self-test disagreement, 2 bad input,
3 domain error, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import lefteig2, oracle, sp2, uniquad
from .cxlift import QuatMatrix2, sdet
from .errors import ConsistencyError, DomainError, NumericalError
from .quat import Quaternion

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NUMERICAL = 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def dumps(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise NumericalError("non-finite value in output")
        return format(float(obj), ".17g")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(json.dumps(str(k)) + ":" + dumps(v) for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc})") from exc


def parse_quaternion(text: str, what: str = "quaternion") -> Quaternion:
    value = _json_arg(text, what)
    if not (isinstance(value, list) and len(value) == 4 and all(_is_number(v) for v in value)):
        raise InputError(f"{what}: expected [w, x, y, z]")
    return Quaternion.from_seq(value)


def parse_matrix(text: str) -> QuatMatrix2:
    value = _json_arg(text, "matrix")
    ok = (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(row, list) and len(row) == 2 for row in value)
        and all(isinstance(e, list) and len(e) == 4 and all(_is_number(v) for v in e) for row in value for e in row)
    )
    if not ok:
        raise InputError("matrix: expected [[a, b], [c, d]] with quaternion entries [w, x, y, z]")
    return QuatMatrix2.from_rows(value)


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quatlefteig", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=1e-8, help="verification tolerance (default 1e-8)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-quadratic", help="solve p^2 + a1 p + a0 = 0")
    p.add_argument("--a1", required=True)
    p.add_argument("--a0", required=True)

    for name, helptext in (
        ("left-eig", "left eigenvalues of a 2x2 matrix"),
        ("classify-symplectic", "left spectrum and rotation form of a symplectic matrix"),
        ("sdet", "Study determinant"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--matrix", required=True)

    p = sub.add_parser("random-symplectic", help="seeded random symplectic matrices")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)

    p = sub.add_parser("verify", help="check a candidate left eigenvalue")
    p.add_argument("--matrix", required=True)
    p.add_argument("--q", required=True)

    p = sub.add_parser("self-test", help="oracle vs pipeline on seeded random instances")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--seed", type=int, default=2024)
    return parser


def _classification(report: uniquad.ClassificationReport) -> dict:
    return report.to_json()


def cmd_solve(args) -> dict:
    a1 = parse_quaternion(args.a1, "a1")
    a0 = parse_quaternion(args.a0, "a0")
    solutions, report = uniquad.solve(a1, a0)
    out = solutions.to_json()
    out["classification"] = _classification(report)
    return out


def cmd_left_eig(args) -> dict:
    return lefteig2.left_eigenvalues(parse_matrix(args.matrix)).to_json()


def cmd_classify(args) -> dict:
    eigs, form = sp2.classify_spectrum(parse_matrix(args.matrix))
    return {
        "classify_symplectic": {
            "infinite": form is not None,
            "eigenvalues": eigs.to_json(),
            "rotation": None if form is None else form.to_json(),
        }
    }


def cmd_sdet(args) -> dict:
    return {"sdet": sdet(parse_matrix(args.matrix))}


def cmd_random(args) -> dict:
    if args.count < 1:
        raise InputError("--count must be >= 1")
    return {"random_symplectic": [sp2.random_symplectic(args.seed + k).to_nested() for k in range(args.count)]}


def cmd_verify(args) -> dict:
    A = parse_matrix(args.matrix)
    q = parse_quaternion(args.q, "q")
    raw = lefteig2.verify(A, q)
    normalized = raw / (1.0 + sdet(A))
    return {"verify": {"sdet_shift": raw, "normalized": normalized, "tol": args.tol, "eigenvalue": normalized <= args.tol}}


def self_test(instances: int, seed: int, tol: float = 1e-5) -> dict:
    """Compare the eigenvector pipeline with the multistart oracle."""
    rng = np.random.default_rng(seed)
    failures = []
    for n in range(instances):
        if n % 2 == 0:
            a1 = Quaternion(*rng.standard_normal(4))
            a0 = Quaternion(*rng.standard_normal(4))
        else:
            t = float(rng.uniform(-2, 2))
            s = float(rng.uniform(-2, 2))
            a1, a0 = Quaternion(t), Quaternion(s)
        solutions, _ = uniquad.solve(a1, a0)
        land = oracle.search_solutions(a1, a0, 200, seed + n)
        if isinstance(solutions, uniquad.InfiniteSphere):
            ok = all(uniquad.membership(solutions, p, tol) for p in land.points)
            ok = ok and oracle.angular_spread(land, solutions.center) > 0.5
        else:
            ok = oracle.matches(land, solutions.solutions, tol)
        if not ok:
            failures.append({"a1": a1.to_list(), "a0": a0.to_list(), "kind": solutions.kind})
    return {"self_test": {"instances": instances, "failures": failures, "passed": not failures}}


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one command; returns ``(exit_code, stdout_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handlers = {
            "solve-quadratic": cmd_solve,
            "left-eig": cmd_left_eig,
            "classify-symplectic": cmd_classify,
            "sdet": cmd_sdet,
            "random-symplectic": cmd_random,
            "verify": cmd_verify,
        }
        if args.command == "self-test":
            result = self_test(args.instances, args.seed)
            code = EXIT_OK if result["self_test"]["passed"] else EXIT_SELFTEST
            return code, dumps(result)
        return EXIT_OK, dumps(handlers[args.command](args))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE, ""
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN, ""
    except (NumericalError, ConsistencyError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL, ""


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if any(a in ("-h", "--help") for a in argv):
        build_parser().print_help()
        return EXIT_OK
    code, text = run(argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
