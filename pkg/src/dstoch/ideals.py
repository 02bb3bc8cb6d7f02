"""Principal right ideals ``E·D_n`` generated by idempotents.

A doubly stochastic ``m`` lies in ``E·D_n`` iff ``E·m = m``: if ``m = E·X``
then ``E·m = E·E·X = m``, and conversely ``m = E·m`` exhibits ``m`` as a
product.  ``E·m`` averages the rows of ``m`` over each block, so the test is
the same as asking for identical rows inside every generator block.

Ideal containment reverses refinement of generator partitions, hence ideal
meet (intersection) is partition join and ideal join is partition meet.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .idempotents import Idempotent, partition_matrix
from .partitions import SetPartition, SizeMismatchError, partition_join, partition_meet, refines
from .ratmat import DimensionError, Matrix, is_doubly_stochastic, multiply


@dataclass(frozen=True)
class IdealHandle:
    generator: SetPartition

    @property
    def n(self) -> int:
        return self.generator.n

    @property
    def rank(self) -> int:
        return len(self.generator.blocks)

    @property
    def idempotent(self) -> Idempotent:
        return Idempotent(self.generator)

    def label(self) -> str:
        return self.generator.label()

    def __repr__(self):
        return f"<{self.label()}>"


def ideal_of(e: Idempotent) -> IdealHandle:
    return IdealHandle(e.partition)


def _same_n(a: IdealHandle, b: IdealHandle):
    if a.n != b.n:
        raise SizeMismatchError(f"ideals of D_{a.n} and D_{b.n}")


def membership_violations(ideal: IdealHandle, m: Matrix) -> list[str]:
    """Human-readable reasons why ``m`` is not in the ideal (1-based rows).

    An empty list means ``m`` is a member.
    """
    if m.n_rows != ideal.n or m.n_cols != ideal.n:
        raise DimensionError(f"{m.n_rows}x{m.n_cols} matrix tested against an ideal of D_{ideal.n}")
    problems = []
    if not is_doubly_stochastic(m):
        problems.append("not doubly stochastic")
    for k, block in enumerate(ideal.generator.blocks, 1):
        first = block[0]
        for i in block[1:]:
            if m.rows[i] != m.rows[first]:
                problems.append(f"rows {first + 1},{i + 1} differ (block {k})")
    return problems


def contains_matrix(ideal: IdealHandle, m: Matrix) -> bool:
    if m.n_rows != ideal.n or m.n_cols != ideal.n:
        raise DimensionError(f"{m.n_rows}x{m.n_cols} matrix tested against an ideal of D_{ideal.n}")
    return is_doubly_stochastic(m) and multiply(partition_matrix(ideal.generator), m) == m


def contains_ideal(outer: IdealHandle, inner: IdealHandle) -> bool:
    _same_n(outer, inner)
    return refines(outer.generator, inner.generator)


def ideal_meet(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    _same_n(a, b)
    return IdealHandle(partition_join(a.generator, b.generator))


def ideal_join(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    _same_n(a, b)
    return IdealHandle(partition_meet(a.generator, b.generator))


@dataclass(frozen=True)
class FamilyDescription:
    """Shape of the members of a principal ideal.

    Members are fixed by one stochastic row per free block; the row shared by
    the forced block is whatever makes every column sum to one.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    free_blocks: tuple[tuple[int, ...], ...]
    forced_block: tuple[int, ...]
    free_rows: int
    free_parameters: int
    whole_semigroup: bool
    single_member: bool

    statement = (
        "one representative row per block; rows within a block identical; "
        "column sums force the remaining entries."
    )

    def constraints(self) -> list[str]:
        """Nonnegativity conditions on the free rows, one per column."""
        if self.single_member:
            return []
        terms = " + ".join(
            (f"{len(b)}*r{self._row_name(b)}" if len(b) > 1 else f"r{self._row_name(b)}")
            for b in self.free_blocks
        )
        return [f"{terms} <= 1 (entrywise)"]

    def _row_name(self, block) -> str:
        return str(block[0] + 1)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "blocks": [list(b) for b in self.blocks],
            "free_blocks": [list(b) for b in self.free_blocks],
            "forced_block": list(self.forced_block),
            "free_rows": self.free_rows,
            "free_parameters": self.free_parameters,
            "whole_semigroup": self.whole_semigroup,
            "single_member": self.single_member,
            "statement": self.statement,
            "constraints": self.constraints(),
        }

    def to_text(self) -> str:
        one = lambda b: "{" + ",".join(str(i + 1) for i in b) + "}"
        lines = [
            f"ideal {SetPartition(self.n, self.blocks).label()} in D_{self.n}",
            "blocks: " + " ".join(one(b) for b in self.blocks),
        ]
        if self.single_member:
            lines.append("single member: the constant matrix 1/n")
        else:
            lines.append(
                f"{self.free_rows} free stochastic row(s) of length {self.n} "
                f"({self.free_parameters} parameters): " + " ".join(one(b) for b in self.free_blocks)
            )
            lines.append(f"forced rows: {one(self.forced_block)}")
            lines.extend("subject to " + c for c in self.constraints())
        if self.whole_semigroup:
            lines.append(f"this ideal is all of D_{self.n}")
        lines.append(self.statement)
        return "\n".join(lines)


def describe_family(ideal: IdealHandle, forced_block: Sequence[int] | None = None) -> FamilyDescription:
    """Describe ``E·D_n``; by default the last canonical block is the forced one."""
    blocks = ideal.generator.blocks
    if forced_block is None:
        forced = blocks[-1]
    else:
        forced = tuple(sorted(forced_block))
        if forced not in blocks:
            raise ValueError(f"{forced} is not a block of the generator")
    free = tuple(b for b in blocks if b != forced)
    k = len(blocks)
    return FamilyDescription(
        n=ideal.n,
        blocks=blocks,
        free_blocks=free,
        forced_block=forced,
        free_rows=k - 1,
        free_parameters=(k - 1) * (ideal.n - 1),
        whole_semigroup=k == ideal.n,
        single_member=k == 1,
    )


def instantiate_family(desc: FamilyDescription, rows: Sequence[Sequence]) -> Matrix:
    """Build the member with the given stochastic rows for the free blocks.

    ``rows[i]`` may list ``n`` entries or ``n-1`` (the last entry is then
    completed to make the row sum one).  The result is not validated: with
    rows outside the feasible region the forced row goes negative.
    """
    if len(rows) != len(desc.free_blocks):
        raise ValueError(f"expected {len(desc.free_blocks)} free rows, got {len(rows)}")
    n = desc.n
    full_rows = []
    for r in rows:
        r = [Fraction(x) for x in r]
        if len(r) == n - 1:
            r.append(1 - sum(r))
        if len(r) != n:
            raise DimensionError(f"free row of length {len(r)} in D_{n}")
        full_rows.append(r)
    grid: list[list[Fraction] | None] = [None] * n
    column_used = [Fraction(0)] * n
    for block, r in zip(desc.free_blocks, full_rows):
        for i in block:
            grid[i] = r
        for j in range(n):
            column_used[j] += len(block) * r[j]
    forced_row = [(1 - c) / len(desc.forced_block) for c in column_used]
    for i in desc.forced_block:
        grid[i] = forced_row
    return Matrix(grid)
