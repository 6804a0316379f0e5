"""``trimat``: command-line calculator for layered 3D matrices.

Exit codes: 0 success, 1 domain error (singular layer, shape mismatch, a
failed verification), 2 usage or parse error. Results go to stdout (or
``-o``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import grouplab, tensor3d as t3, textio
from .errors import DomainError, ParseError
from .field import FieldSpec
from .tensor3d import Matrix3, MultiScalar


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("TRIMAT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"TRIMAT_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trimat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def calc(name, help, operands):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help=".m3 document")
        for op in operands:
            sp.add_argument(op, help="object name")
        sp.add_argument("-o", "--output", help="write result here instead of stdout")
        sp.add_argument("--name", help="name of the result object")
        sp.add_argument("--json", action="store_true", help="emit the JSON mirror format")
        return sp

    calc("det", "multi-scalar determinant", ["A"])
    calc("inv", "inverse under the layer-wise product", ["A"])
    calc("adj", "layer-by-layer adjugate", ["A"])
    calc("mul", "layer-wise product A (.) B", ["A", "B"])
    calc("add", "sum A + B", ["A", "B"])
    calc("smul", "multi-scalar action S * A", ["S", "A"])

    v = sub.add_parser("verify", help="check the group/semigroup laws on random samples")
    v.add_argument("--field", default="rational", help="rational | gf Q | float [TOL]")
    v.add_argument("-n", type=int, default=2)
    v.add_argument("-p", type=int, default=2)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=None, help="defaults to $TRIMAT_SEED or 0")
    v.add_argument("--law", default="all", choices=list(grouplab.LAWS) + ["all"])
    v.add_argument("--json", action="store_true")

    c = sub.add_parser("census", help="count invertible n x n x p matrices over GF(q)")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-p", type=int, required=True)
    return parser


def _lookup(doc: textio.Document, name: str, kind: type):
    if name not in doc.objects:
        raise UsageError(f"no object named {name!r} (have: {', '.join(doc.objects)})")
    obj = doc.objects[name]
    if not isinstance(obj, kind):
        want = "matrix" if kind is Matrix3 else "mscalar"
        raise UsageError(f"object {name!r} is not a {want}")
    return obj


def _calculate(args):
    try:
        doc = textio.load(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    cmd = args.command
    if cmd in ("det", "inv", "adj"):
        A = _lookup(doc, args.A, Matrix3)
        op = {"det": t3.det3, "inv": t3.m3_inverse, "adj": t3.m3_adjugate}[cmd]
        return f"{cmd}_{args.A}", op(A), doc.field
    if cmd == "smul":
        S = _lookup(doc, args.S, MultiScalar)
        A = _lookup(doc, args.A, Matrix3)
        return f"{args.S}_smul_{args.A}", t3.ms_mul(S, A), doc.field
    A = _lookup(doc, args.A, Matrix3)
    B = _lookup(doc, args.B, Matrix3)
    op = {"mul": t3.m3_odot, "add": t3.m3_add}[cmd]
    return f"{args.A}_{cmd}_{args.B}", op(A, B), doc.field


def _emit(text: str, output: str | None, stdout):
    if output:
        try:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {output}: {exc.strerror or exc}") from None
    else:
        stdout.write(text)


def _verify(args, stdout, stderr) -> int:
    try:
        spec = FieldSpec.parse(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n < 1 or args.p < 1 or args.samples < 1:
        raise UsageError("-n, -p and --samples must be positive")
    seed = _default_seed() if args.seed is None else args.seed
    reports = grouplab.run_laws([args.law], args.n, args.p, spec, args.samples, seed)
    if args.json:
        stdout.write(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n")
    else:
        for r in reports:
            stdout.write(r.to_text() + "\n")
    for r in reports:
        stderr.write(f"{r.property}: {r.elapsed:.3f}s\n")
    return 0 if all(r.passed for r in reports) else 1


def _census(args, stdout, stderr) -> int:
    if args.n < 1 or args.p < 1:
        raise UsageError("-n and -p must be positive")
    try:
        census = grouplab.census_gl(args.n, args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    stdout.write(f"total={census.total_matrices} gl={census.gl_order}\n")
    if not census.matches_closed_form:
        stderr.write(f"error: count {census.gl_order} differs from closed form {census.closed_form}\n")
        return 1
    return 0


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            return _verify(args, stdout, stderr)
        if args.command == "census":
            return _census(args, stdout, stderr)
        name, result, spec = _calculate(args)
        doc = textio.Document(spec, {args.name or name: result})
        if args.json:
            text = json.dumps(textio.document_to_json(doc), indent=2) + "\n"
        else:
            text = textio.serialize(doc)
        _emit(text, args.output, stdout)
        return 0
    except ParseError as exc:
        stderr.write(f"error: {getattr(args, 'file', '<input>')}: {exc}\n")
        return 2
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, TypeError) as exc:
        # e.g. an invalid --name
        stderr.write(f"error: {exc}\n")
        return 2
    except DomainError as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
