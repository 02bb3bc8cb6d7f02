"""JSON and CSV encodings.

Rationals are always written as ``"p/q"`` or integer strings so that a
round trip through any of these formats is bit exact.
"""

from __future__ import annotations

import csv
import io
import json

from .green import DWitness
from .idempotents import Idempotent
from .ideals import IdealHandle
from .partitions import IntShape, SetPartition
from .ratmat import Matrix, parse_rational


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def matrix_to_dict(m: Matrix) -> dict:
    d = {"rows": [[str(x) for x in r] for r in m.rows]}
    if m.is_square:
        d = {"n": m.n, **d}
    return d


def matrix_from_dict(d: dict) -> Matrix:
    rows = d.get("rows")
    if not isinstance(rows, list) or not rows:
        raise ParseError("matrix JSON needs a non-empty 'rows' list")
    grid = []
    for i, row in enumerate(rows, 1):
        if not isinstance(row, list):
            raise ParseError("row is not a list", line=i)
        cells = []
        for j, cell in enumerate(row, 1):
            try:
                cells.append(parse_rational(cell))
            except ValueError as exc:
                raise ParseError(str(exc), line=i, column=j) from None
        grid.append(cells)
    try:
        m = Matrix(grid)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if "n" in d and (not m.is_square or m.n != d["n"]):
        raise ParseError(f"declared n = {d['n']} does not match a {m.n_rows}x{m.n_cols} grid")
    return m


def matrix_to_json(m: Matrix) -> str:
    return json.dumps(matrix_to_dict(m))


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None


def matrix_from_json(text: str) -> Matrix:
    return matrix_from_dict(_loads(text))


def matrix_to_csv(m: Matrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in m.rows:
        w.writerow(str(x) for x in r)
    return buf.getvalue()


def matrix_from_csv(text: str) -> Matrix:
    grid = []
    for i, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or all(not c.strip() for c in row):
            continue
        cells = []
        for j, cell in enumerate(row, 1):
            try:
                cells.append(parse_rational(cell))
            except ValueError as exc:
                raise ParseError(str(exc), line=i, column=j) from None
        grid.append(cells)
    if not grid:
        raise ParseError("empty CSV matrix")
    try:
        return Matrix(grid)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_matrix(path: str) -> Matrix:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".csv") or not text.lstrip().startswith("{"):
        return matrix_from_csv(text)
    return matrix_from_json(text)


def partition_to_dict(p: SetPartition) -> dict:
    return {"n": p.n, "blocks": [list(b) for b in p.blocks]}


def partition_from_dict(d: dict, n: int | None = None) -> SetPartition:
    blocks = d.get("blocks")
    if not isinstance(blocks, list):
        raise ParseError("partition JSON needs a 'blocks' list")
    size = d.get("n", n)
    if size is None:
        size = sum(len(b) for b in blocks)
    try:
        return SetPartition(size, blocks)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def shape_to_dict(s: IntShape) -> dict:
    return {"n": s.n, "parts": list(s.parts)}


def shape_from_dict(d: dict) -> IntShape:
    s = IntShape.from_parts(d["parts"])
    if "n" in d and d["n"] != s.n:
        raise ParseError(f"parts sum to {s.n}, not {d['n']}")
    return s


def idempotent_to_dict(e: Idempotent, with_matrix: bool = True) -> dict:
    d = partition_to_dict(e.partition)
    if with_matrix:
        d["matrix"] = matrix_to_dict(e.matrix)
    return d


def idempotent_from_dict(d: dict) -> Idempotent:
    e = Idempotent(partition_from_dict(d))
    if "matrix" in d and matrix_from_dict(d["matrix"]) != e.matrix:
        raise ParseError("stored matrix disagrees with the partition")
    return e


def ideal_to_dict(i: IdealHandle) -> dict:
    return {"n": i.n, "generator": {"blocks": [list(b) for b in i.generator.blocks]}}


def ideal_from_dict(d: dict) -> IdealHandle:
    return IdealHandle(partition_from_dict(d["generator"], n=d["n"]))


def witness_to_dict(w: DWitness) -> dict:
    return {"x": matrix_to_dict(w.x), "y": matrix_to_dict(w.y)}


def witness_from_dict(d: dict) -> DWitness:
    return DWitness(matrix_from_dict(d["x"]), matrix_from_dict(d["y"]))
