"""Set partitions of ``{0, ..., n-1}``, integer partitions of ``n`` and the
counting functions that tie them together.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator

from .ratmat import Permutation


class SizeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class SetPartition:
    """Partition of ``range(n)`` into non-empty blocks.

    Blocks are stored canonically: each block sorted, blocks ordered by their
    minimum element.  Two partitions are equal iff their canonical blocks are.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else -1))
        if n < 1:
            raise ValueError("n must be positive")
        seen = [i for b in canon for i in b]
        if any(not b for b in canon):
            raise ValueError("blocks must be non-empty")
        if sorted(seen) != list(range(n)):
            raise ValueError(f"blocks {canon} do not partition range({n})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def from_rgs(cls, rgs: Iterable[int]) -> "SetPartition":
        rgs = list(rgs)
        groups: dict[int, list[int]] = {}
        for i, label in enumerate(rgs):
            groups.setdefault(label, []).append(i)
        return cls(len(rgs), groups.values())

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        return cls(n, ([i] for i in range(n)))

    @classmethod
    def one_block(cls, n: int) -> "SetPartition":
        return cls(n, [range(n)])

    @classmethod
    def parse(cls, spec: str, n: int) -> "SetPartition":
        """Parse 1-based cycle-like notation such as ``"(1,2)(3,4)"``.

        Indices not mentioned become singletons; ``""`` or ``"()"`` means all
        singletons.
        """
        text = spec.replace(" ", "")
        if not re.fullmatch(r"(\((\d+(,\d+)*)?\))*", text):
            raise ValueError(f"malformed partition spec {spec!r}")
        blocks = []
        for body in re.findall(r"\(([^)]*)\)", text):
            if body:
                blocks.append([int(x) - 1 for x in body.split(",")])
        used = {i for b in blocks for i in b}
        if any(i < 0 or i >= n for i in used):
            raise ValueError(f"index out of range 1..{n} in {spec!r}")
        if len(used) != sum(len(b) for b in blocks):
            raise ValueError(f"repeated index in {spec!r}")
        blocks += [[i] for i in range(n) if i not in used]
        return cls(n, blocks)

    @property
    def rgs(self) -> tuple[int, ...]:
        """Restricted growth string: ``rgs[i]`` is the index of i's block."""
        out = [0] * self.n
        for k, b in enumerate(self.blocks):
            for i in b:
                out[i] = k
        return tuple(out)

    def __len__(self):
        return len(self.blocks)

    def block_of(self, i: int) -> tuple[int, ...]:
        return self.blocks[self.rgs[i]]

    def relabel(self, p: Permutation) -> "SetPartition":
        return SetPartition(self.n, ([p(i) for i in b] for b in self.blocks))

    def spec(self) -> str:
        """1-based notation listing the non-singleton blocks, e.g. ``(1,2)(3,4)``."""
        return "".join("(" + ",".join(str(i + 1) for i in b) + ")" for b in self.blocks if len(b) > 1)

    def label(self) -> str:
        """Ideal label ``I^k_(...)`` in 1-based notation; singletons omitted."""
        return f"I^{len(self.blocks)}_{{{self.spec()}}}"

    def __repr__(self):
        return f"SetPartition({self.n}, {[list(b) for b in self.blocks]})"


@dataclass(frozen=True)
class IntShape:
    """Integer partition of ``n`` stored as multiplicities ``{part: count}``."""

    n: int
    multiplicities: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        mult = tuple(sorted((a, r) for a, r in dict(self.multiplicities).items() if r))
        if any(a < 1 or r < 0 for a, r in mult):
            raise ValueError("parts and multiplicities must be positive")
        if sum(a * r for a, r in mult) != self.n:
            raise ValueError(f"parts {mult} do not sum to {self.n}")
        object.__setattr__(self, "multiplicities", mult)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "IntShape":
        parts = list(parts)
        return cls(sum(parts), tuple(Counter(parts).items()))

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(a for a, r in sorted(self.multiplicities, reverse=True) for _ in range(r))

    def multiplicity(self, part: int) -> int:
        return dict(self.multiplicities).get(part, 0)

    def __str__(self):
        return "+".join(str(a) for a in self.parts)


def enumerate_set_partitions(n: int) -> Iterator[SetPartition]:
    """Yield all set partitions of ``range(n)`` in lexicographic RGS order."""
    if n < 1:
        raise ValueError("n must be positive")
    rgs = [0] * n
    maxes = [0] * n  # maxes[i] = max(rgs[:i+1])
    while True:
        yield SetPartition.from_rgs(rgs)
        i = n - 1
        while i > 0 and rgs[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        maxes[i] = max(maxes[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            maxes[j] = maxes[i]


def _descending_partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending_partitions(n - first, first):
            yield (first,) + rest


def enumerate_int_shapes(n: int) -> list[IntShape]:
    """All integer partitions of ``n``, largest first (``4, 3+1, 2+2, ...``)."""
    if n < 1:
        raise ValueError("n must be positive")
    return [IntShape.from_parts(p) for p in _descending_partitions(n, n)]


def shape_of(p: SetPartition) -> IntShape:
    return IntShape.from_parts(len(b) for b in p.blocks)


def count_idempotents_of_shape(s: IntShape) -> int:
    denom = 1
    for part, mult in s.multiplicities:
        denom *= factorial(part) ** mult * factorial(mult)
    return factorial(s.n) // denom


def count_idempotents(n: int) -> int:
    return sum(count_idempotents_of_shape(s) for s in enumerate_int_shapes(n))


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    """Bell number from the Bell triangle (no factorials involved)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def _check_sizes(p: SetPartition, q: SetPartition):
    if p.n != q.n:
        raise SizeMismatchError(f"partitions of {p.n} and {q.n} elements")


def refines(p: SetPartition, q: SetPartition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    _check_sizes(p, q)
    label = q.rgs
    return all(len({label[i] for i in b}) == 1 for b in p.blocks)


def partition_meet(p: SetPartition, q: SetPartition) -> SetPartition:
    """Coarsest common refinement: nonempty intersections of blocks."""
    _check_sizes(p, q)
    pr, qr = p.rgs, q.rgs
    groups: dict[tuple[int, int], list[int]] = {}
    for i in range(p.n):
        groups.setdefault((pr[i], qr[i]), []).append(i)
    return SetPartition(p.n, groups.values())


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)


def partition_join(p: SetPartition, q: SetPartition) -> SetPartition:
    """Finest partition that both ``p`` and ``q`` refine."""
    _check_sizes(p, q)
    uf = _UnionFind(p.n)
    for b in p.blocks + q.blocks:
        for i in b[1:]:
            uf.union(b[0], i)
    groups: dict[int, list[int]] = {}
    for i in range(p.n):
        groups.setdefault(uf.find(i), []).append(i)
    return SetPartition(p.n, groups.values())
