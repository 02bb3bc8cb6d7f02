"""Idempotents of the semigroup of doubly stochastic matrices.

Every idempotent doubly stochastic matrix is, up to simultaneous row/column
permutation, a direct sum of constant blocks ``1/r``.  The blocks are exactly
the classes of equal rows, so idempotents correspond one-to-one with set
partitions of the index set, and that partition is what we store.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .partitions import IntShape, SetPartition, enumerate_set_partitions, shape_of
from .ratmat import (
    DimensionError,
    Matrix,
    Permutation,
    block_diagonal,
    is_doubly_stochastic,
    multiply,
)


class NotIdempotentError(ValueError):
    pass


def partition_matrix(p: SetPartition) -> Matrix:
    zero = Fraction(0)
    grid = [[zero] * p.n for _ in range(p.n)]
    for b in p.blocks:
        v = Fraction(1, len(b))
        for i in b:
            for j in b:
                grid[i][j] = v
    return Matrix._from_grid(tuple(tuple(r) for r in grid))


@dataclass(frozen=True)
class Idempotent:
    partition: SetPartition
    matrix: Matrix = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.matrix is None:
            object.__setattr__(self, "matrix", partition_matrix(self.partition))

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def rank(self) -> int:
        return len(self.partition.blocks)

    @property
    def shape(self) -> IntShape:
        return shape_of(self.partition)


def idempotent_from_partition(p: SetPartition) -> Idempotent:
    return Idempotent(p)


def is_idempotent(m: Matrix) -> bool:
    if not m.is_square:
        raise DimensionError("idempotency needs a square matrix")
    return multiply(m, m) == m


def partition_from_matrix(m: Matrix) -> SetPartition:
    """Recover the partition of a doubly stochastic idempotent.

    Rows are grouped by exact equality; the candidate is accepted only if
    rebuilding the idempotent from it gives back ``m``.
    """
    if not m.is_square or not is_doubly_stochastic(m):
        raise NotIdempotentError("matrix is not doubly stochastic")
    if not is_idempotent(m):
        raise NotIdempotentError("m @ m != m")
    groups: dict[tuple, list[int]] = {}
    for i, r in enumerate(m.rows):
        groups.setdefault(r, []).append(i)
    p = SetPartition(m.n, groups.values())
    if partition_matrix(p) != m:
        raise NotIdempotentError("rows group into classes but the block form does not match")
    return p


def canonical_block_form(e: Idempotent) -> tuple[Permutation, Matrix]:
    """Permutation ``p`` and block diagonal ``U`` with ``P E P^T = U``.

    Blocks appear by decreasing size; equal sizes keep the order of their
    smallest index.  Inside a block indices stay ascending.
    """
    order = sorted(e.partition.blocks, key=lambda b: (-len(b), b[0]))
    images = [0] * e.n
    pos = 0
    for b in order:
        for i in b:
            images[i] = pos
            pos += 1
    p = Permutation(images)
    u = block_diagonal([Matrix.constant(len(b), Fraction(1, len(b))) for b in order])
    return p, u


def enumerate_idempotents(n: int) -> Iterator[Idempotent]:
    for p in enumerate_set_partitions(n):
        yield Idempotent(p)


def conjugate_idempotent(p: Permutation, e: Idempotent) -> Idempotent:
    """Relabelled idempotent; its matrix equals ``P E P^T``."""
    return Idempotent(e.partition.relabel(p))

