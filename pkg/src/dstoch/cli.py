"""Command-line front end.

Exit codes: 0 success or member, 1 negative result, 2 usage or parse
error, 3 internal invariant violation.  Indices are 1-based on the command
line, e.g. ``--ideal "(1,2)(3,4)"``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formats
from .green import UnsupportedWitnessError, block_witness_oracle, same_shape_d_witness, verify_d_witness
from .idempotents import Idempotent, enumerate_idempotents
from .ideals import (
    IdealHandle,
    contains_ideal,
    describe_family,
    ideal_join,
    ideal_meet,
    membership_violations,
)
from .lattice import LimitExceededError, build_lattice, export_dot, meet_join_table, size_limit, verify_lattice_laws
from .partitions import SetPartition, count_idempotents, count_idempotents_of_shape, enumerate_int_shapes
from .ratmat import ConsistencyError
from . import verify as suite

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("n must be a positive integer")
    return n


def _partition(spec: str, n: int) -> SetPartition:
    try:
        return SetPartition.parse(spec, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def cmd_count(args, out):
    total = count_idempotents(args.n)
    rows = [(str(s), count_idempotents_of_shape(s)) for s in enumerate_int_shapes(args.n)] if args.by_shape else []
    if args.json:
        _dump({"n": args.n, "total": total, "by_shape": [{"shape": s, "count": c} for s, c in rows]}, out)
    else:
        for s, c in rows:
            out.write(f"{s}: {c}\n")
        out.write(f"{'total: ' if rows else ''}{total}\n")
    return EXIT_OK


def cmd_enumerate(args, out):
    if args.format == "pretty" and args.n > size_limit(8):
        raise LimitExceededError(f"pretty output is limited to n <= {size_limit(8)}")
    if args.format == "dot":
        out.write(export_dot(build_lattice(args.n)))
        return EXIT_OK
    if args.format == "json":
        records = []
        for e in enumerate_idempotents(args.n):
            d = formats.idempotent_to_dict(e)
            d.update(shape=str(e.shape), rank=e.rank)
            records.append(d)
        _dump(records, out)
        return EXIT_OK
    for k, e in enumerate(enumerate_idempotents(args.n), 1):
        out.write(f"#{k} blocks {[[i + 1 for i in b] for b in e.partition.blocks]}  shape {e.shape}  rank {e.rank}\n")
        out.write(e.matrix.pretty() + "\n\n")
    return EXIT_OK


def cmd_membership(args, out):
    try:
        m = formats.load_matrix(args.matrix)
    except formats.ParseError as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    if not m.is_square:
        raise UsageError(f"{m.n_rows}x{m.n_cols} matrix is not square")
    ideal = IdealHandle(_partition(args.ideal, m.n))
    if args.side == "left":
        # M in D_n·E  iff  M^T in E·D_n (E is symmetric)
        m = m.transpose()
    problems = membership_violations(ideal, m)
    if args.json:
        _dump({"ideal": formats.ideal_to_dict(ideal), "side": args.side, "member": not problems, "violations": problems}, out)
    elif problems:
        out.write("non-member: " + "; ".join(problems) + "\n")
    else:
        out.write(f"member of {ideal.label()} ({args.side} ideal)\n")
    return EXIT_NEGATIVE if problems else EXIT_OK


def cmd_ideal_op(args, out):
    a = IdealHandle(_partition(args.a, args.n))
    if args.op == "describe":
        desc = describe_family(a)
        if args.json:
            _dump(desc.to_dict(), out)
        else:
            out.write(desc.to_text() + "\n")
        return EXIT_OK
    if args.b is None:
        raise UsageError(f"{args.op} needs two ideals")
    b = IdealHandle(_partition(args.b, args.n))
    if args.op == "contains":
        ok = contains_ideal(a, b)
        if args.json:
            _dump({"outer": formats.ideal_to_dict(a), "inner": formats.ideal_to_dict(b), "contains": ok}, out)
        else:
            out.write(f"{a.label()} {'contains' if ok else 'does not contain'} {b.label()}\n")
        return EXIT_OK if ok else EXIT_NEGATIVE
    result = (ideal_meet if args.op == "meet" else ideal_join)(a, b)
    if args.json:
        _dump(formats.ideal_to_dict(result), out)
    else:
        sym = "∧" if args.op == "meet" else "∨"
        out.write(f"{a.label()} {sym} {b.label()} = {result.label()}\n")
    return EXIT_OK


def cmd_witness(args, out):
    e = Idempotent(_partition(args.e, args.n))
    f = Idempotent(_partition(args.f, args.n))
    try:
        w = same_shape_d_witness(e, f)
        ok = verify_d_witness(w, e, f)
        if not ok:
            raise ConsistencyError("constructed witness failed verification")
        source = "permutation"
    except UnsupportedWitnessError as exc:
        if not args.oracle:
            out.write(f"{exc}\n")
            return EXIT_NEGATIVE
        outcome = block_witness_oracle(e, f)
        if not outcome.feasible:
            if args.json:
                _dump({"feasible": False, "reason": outcome.reason}, out)
            else:
                out.write(f"no normalised witness: {outcome.reason}\n")
            return EXIT_NEGATIVE
        w, source = outcome.witness, "oracle"
        if not verify_d_witness(w, e, f):
            raise ConsistencyError("oracle witness failed verification")
    if args.json:
        _dump({"source": source, **formats.witness_to_dict(w)}, out)
    else:
        out.write(f"D-witness ({source}) for {e.partition.spec() or '()'} and {f.partition.spec() or '()'}\n")
        out.write("x =\n" + w.x.pretty() + "\ny =\n" + w.y.pretty() + "\n")
    return EXIT_OK


def cmd_lattice(args, out):
    lat = build_lattice(args.n)
    if args.format == "dot":
        out.write(export_dot(lat))
    elif args.format == "json":
        _dump(lat.to_dict(), out)
    else:
        tables = meet_join_table(lat)
        labels = [node.label() for node in lat.nodes]
        for name in ("meet", "join"):
            out.write(f"{name}:\n")
            for i, row in enumerate(tables[name]):
                out.write(f"  {labels[i]}: " + " ".join(str(x) for x in row) + "\n")
    if args.laws:
        rep = verify_lattice_laws(lat)
        out.write(f"# {rep.total} law checks, {len(rep.violations)} violations\n")
        if not rep.ok:
            return EXIT_NEGATIVE
    return EXIT_OK


def cmd_verify(args, out):
    limit = size_limit(6)
    if args.max_n > limit:
        raise LimitExceededError(f"--max-n {args.max_n} exceeds {limit} (set DSTOCH_MAX_N to override)")
    checks = suite.run_all(args.max_n, args.seed)
    rep = suite.report(checks, args.max_n, args.seed)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(rep, fh, indent=2, ensure_ascii=False)
    if args.json:
        _dump(rep, out)
    else:
        for c in checks:
            out.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}\n")
        failed = [c.name for c in checks if not c.passed]
        out.write(f"{len(checks) - len(failed)}/{len(checks)} checks passed\n")
        if failed:
            out.write("failed: " + ", ".join(failed) + "\n")
    return EXIT_OK if rep["passed"] else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dstoch", description="Idempotents and ideals of doubly stochastic matrices")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("count", help="number of idempotents of D_n")
    p.add_argument("n", type=_positive)
    p.add_argument("--by-shape", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list the idempotents of D_n")
    p.add_argument("n", type=_positive)
    p.add_argument("--format", choices=["pretty", "json", "dot"], default="pretty")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("membership", help="test whether a matrix lies in E·D_n")
    p.add_argument("matrix", help="matrix file, JSON or CSV")
    p.add_argument("--ideal", required=True, help='generator blocks, 1-based, e.g. "(1,2)(3,4)"')
    p.add_argument("--side", choices=["right", "left"], default="right")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("ideal-op", help="meet, join, containment and description of ideals")
    p.add_argument("n", type=_positive)
    p.add_argument("op", choices=["meet", "join", "contains", "describe"])
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ideal_op)

    p = sub.add_parser("witness", help="D-relation witness between two idempotents")
    p.add_argument("n", type=_positive)
    p.add_argument("e")
    p.add_argument("f")
    p.add_argument("--oracle", action="store_true", help="run the exact block oracle for different shapes")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("lattice", help="lattice of idempotent-generated ideals")
    p.add_argument("n", type=_positive)
    p.add_argument("--format", choices=["dot", "json", "table"], default="dot")
    p.add_argument("--laws", action="store_true", help="also verify the lattice laws")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("verify", help="run the reproduction suite")
    p.add_argument("--max-n", type=_positive, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--report", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, LimitExceededError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ConsistencyError as exc:
        sys.stderr.write(f"internal invariant violated: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
