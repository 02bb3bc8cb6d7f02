"""The finite lattice of idempotent-generated principal ideals of D_n."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

from .ideals import IdealHandle, contains_ideal, ideal_join, ideal_meet
from .partitions import SetPartition, enumerate_set_partitions

LATTICE_LIMIT = 12
TABLE_LIMIT = 6


class LimitExceededError(ValueError):
    pass


def size_limit(default: int) -> int:
    """Size guard, overridable through ``DSTOCH_MAX_N``."""
    env = os.environ.get("DSTOCH_MAX_N")
    return int(env) if env else default


@dataclass(frozen=True)
class IdealLattice:
    n: int
    nodes: tuple[IdealHandle, ...]
    cover_edges: tuple[tuple[int, int], ...]
    level_sizes: dict[int, int] = field(hash=False)

    def index(self) -> dict[SetPartition, int]:
        return {node.generator: i for i, node in enumerate(self.nodes)}

    @property
    def bottom(self) -> int:
        return next(i for i, node in enumerate(self.nodes) if node.rank == 1)

    @property
    def top(self) -> int:
        return next(i for i, node in enumerate(self.nodes) if node.rank == self.n)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "nodes": [[list(b) for b in node.generator.blocks] for node in self.nodes],
            "covers": [list(e) for e in self.cover_edges],
            "levels": {str(k): v for k, v in sorted(self.level_sizes.items())},
        }


def _splits(block):
    """All ways to cut ``block`` into two non-empty parts (first keeps block[0])."""
    rest = block[1:]
    for r in range(len(rest)):
        for moved in combinations(rest, r + 1):
            keep = [block[0]] + [i for i in rest if i not in moved]
            yield keep, list(moved)


def build_lattice(n: int) -> IdealLattice:
    if n < 1:
        raise ValueError("n must be positive")
    limit = size_limit(LATTICE_LIMIT)
    if n > limit:
        raise LimitExceededError(f"n = {n} exceeds the lattice limit {limit} (set DSTOCH_MAX_N to override)")
    nodes = tuple(IdealHandle(p) for p in enumerate_set_partitions(n))
    where = {node.generator: i for i, node in enumerate(nodes)}
    edges = []
    levels: dict[int, int] = {}
    for lo, node in enumerate(nodes):
        levels[node.rank] = levels.get(node.rank, 0) + 1
        blocks = node.generator.blocks
        for k, b in enumerate(blocks):
            for left, right in _splits(b):
                finer = SetPartition(n, blocks[:k] + (left, right) + blocks[k + 1:])
                edges.append((lo, where[finer]))
    return IdealLattice(n, nodes, tuple(sorted(edges)), levels)


@dataclass
class LawReport:
    n: int
    checks: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, law: str, holds: bool, detail: str):
        self.checks[law] = self.checks.get(law, 0) + 1
        if not holds:
            self.violations.append(f"{law}: {detail}")

    @property
    def total(self) -> int:
        return sum(self.checks.values())


def _tables(l: IdealLattice):
    where = l.index()
    size = len(l.nodes)
    meet = [[0] * size for _ in range(size)]
    join = [[0] * size for _ in range(size)]
    for i, a in enumerate(l.nodes):
        for j in range(i, size):
            b = l.nodes[j]
            meet[i][j] = meet[j][i] = where[ideal_meet(a, b).generator]
            join[i][j] = join[j][i] = where[ideal_join(a, b).generator]
    return meet, join


def meet_join_table(l: IdealLattice) -> dict:
    """Full ``Bell(n) x Bell(n)`` tables of meet and join node indices."""
    limit = size_limit(TABLE_LIMIT)
    if l.n > limit:
        raise LimitExceededError(f"n = {l.n} exceeds the table limit {limit}")
    meet, join = _tables(l)
    return {"meet": meet, "join": join}


def verify_lattice_laws(l: IdealLattice) -> LawReport:
    """Exhaustively check the lattice axioms on all pairs and triples.

    Each pair is also checked in the opposite direction, since the tables
    are filled from ``ideal_meet(a, b)`` and ``ideal_join(b, a)`` is not
    assumed to agree with it.
    """
    report = LawReport(l.n)
    nodes = l.nodes
    size = len(nodes)
    where = l.index()
    meet = [[where[ideal_meet(a, b).generator] for b in nodes] for a in nodes]
    join = [[where[ideal_join(a, b).generator] for b in nodes] for a in nodes]
    contains = [[contains_ideal(a, b) for b in nodes] for a in nodes]
    for i in range(size):
        report.record("idempotence", meet[i][i] == i and join[i][i] == i, f"node {i}")
        for j in range(size):
            m, jn = meet[i][j], join[i][j]
            report.record("commutativity", m == meet[j][i] and jn == join[j][i], f"({i},{j})")
            report.record("absorption", meet[i][join[i][j]] == i and join[i][meet[i][j]] == i, f"({i},{j})")
            report.record(
                "bounds",
                contains[i][m] and contains[j][m] and contains[jn][i] and contains[jn][j],
                f"meet/join of ({i},{j}) not between",
            )
            for k in range(size):
                report.record(
                    "associativity",
                    meet[meet[i][j]][k] == meet[i][meet[j][k]] and join[join[i][j]][k] == join[i][join[j][k]],
                    f"({i},{j},{k})",
                )
    return report


def export_dot(l: IdealLattice) -> str:
    """GraphViz digraph of the Hasse diagram, drawn bottom to top."""
    lines = [f'digraph "ideals_D{l.n}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, node in enumerate(l.nodes):
        lines.append(f'  n{i} [label="{node.label()}"];')
    for lo, hi in l.cover_edges:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
