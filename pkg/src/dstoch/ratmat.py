"""Exact rational dense matrices.

Entries are :class:`fractions.Fraction`; nothing in here ever touches a
float.  Matrices and permutations are immutable and hashable, so they can be
used as dict keys and shared freely between threads.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

Rational = Fraction


class DimensionError(ValueError):
    pass


class NotDoublyStochasticError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """An internal invariant that should hold by theory was found violated."""


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int/Fraction into a Fraction.

    Floats are refused on purpose; decimal strings such as ``"0.25"`` are
    accepted because their value is exact.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"refusing inexact value {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if not s:
        raise ValueError("empty rational")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {s!r}") from None
    except ValueError:
        raise ValueError(f"malformed rational {s!r}") from None


def format_rational(x: Fraction) -> str:
    return str(x)


class Matrix:
    """Immutable dense matrix of Fractions, stored row-major as nested tuples."""

    __slots__ = ("rows", "n_rows", "n_cols", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(parse_rational(x) for x in row) for row in rows)
        if not grid or not grid[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(grid[0])
        for i, row in enumerate(grid):
            if len(row) != width:
                raise DimensionError(f"row {i} has {len(row)} entries, expected {width}")
        self.rows = grid
        self.n_rows = len(grid)
        self.n_cols = width
        self._hash = None

    @classmethod
    def _from_grid(cls, grid):
        # trusted constructor: grid is already a tuple of tuples of Fractions
        m = cls.__new__(cls)
        m.rows = grid
        m.n_rows = len(grid)
        m.n_cols = len(grid[0])
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._from_grid(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def constant(cls, n: int, value) -> "Matrix":
        v = parse_rational(value)
        return cls._from_grid(tuple(tuple(v for _ in range(n)) for _ in range(n)))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int | None = None) -> "Matrix":
        z = Fraction(0)
        return cls._from_grid(tuple(tuple(z for _ in range(n_cols or n_rows)) for _ in range(n_rows)))

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    @property
    def n(self) -> int:
        if not self.is_square:
            raise DimensionError(f"{self.n_rows}x{self.n_cols} matrix is not square")
        return self.n_rows

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix._from_grid(tuple(zip(*self.rows)))

    T = property(transpose)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    def pretty(self) -> str:
        """Aligned ``p/q`` grid, one row per line."""
        cells = [[str(x) for x in r] for r in self.rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("  ".join(c.rjust(width) for c in r) for r in cells)

    def submatrix(self, indices: Sequence[int]) -> "Matrix":
        return Matrix._from_grid(tuple(tuple(self.rows[i][j] for j in indices) for i in indices))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


class Permutation:
    """A bijection of ``{0, ..., n-1}``, given by its list of images.

    The associated matrix ``P`` sends basis vector ``e_i`` to ``e_{p(i)}``, so
    conjugation ``P m P^T`` moves entry ``(i, j)`` of ``m`` to ``(p(i), p(j))``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation of 0..{len(images) - 1}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(self.images[j] for j in other.images)

    def matrix(self) -> Matrix:
        n = len(self.images)
        one, zero = Fraction(1), Fraction(0)
        grid = [[zero] * n for _ in range(n)]
        for i, j in enumerate(self.images):
            grid[j][i] = one
        return Matrix._from_grid(tuple(tuple(r) for r in grid))


def is_stochastic(m: Matrix) -> bool:
    return all(x >= 0 for r in m.rows for x in r) and all(sum(r) == 1 for r in m.rows)


def is_doubly_stochastic(m: Matrix) -> bool:
    return m.is_square and is_stochastic(m) and is_stochastic(m.transpose())


def multiply(a: Matrix, b: Matrix) -> Matrix:
    if a.n_cols != b.n_rows:
        raise DimensionError(f"cannot multiply {a.n_rows}x{a.n_cols} by {b.n_rows}x{b.n_cols}")
    cols = tuple(zip(*b.rows))
    zero = Fraction(0)
    grid = tuple(
        tuple(sum((x * y for x, y in zip(r, c) if x and y), zero) for c in cols)
        for r in a.rows
    )
    return Matrix._from_grid(grid)


def rank(m: Matrix) -> int:
    """Rank over Q by exact Gaussian elimination.

    Pivot is the first nonzero entry found scanning the current column
    downwards, so the sequence of operations is deterministic.
    """
    work = [list(r) for r in m.rows]
    n_rows, n_cols = m.n_rows, m.n_cols
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][c]
        for i in range(r + 1, n_rows):
            f = work[i][c]
            if f:
                f /= pv
                row_i, row_r = work[i], work[r]
                for j in range(c, n_cols):
                    row_i[j] -= f * row_r[j]
        r += 1
    return r


def inverse(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan; raises ZeroDivisionError when singular."""
    n = m.n
    work = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        work[c], work[pivot] = work[pivot], work[c]
        pv = work[c][c]
        work[c] = [x / pv for x in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return Matrix._from_grid(tuple(tuple(r[n:]) for r in work))


def conjugate_by_permutation(p: Permutation, m: Matrix) -> Matrix:
    """Return ``P m P^T``, i.e. ``m`` with rows and columns relabelled by ``p``."""
    n = m.n
    if len(p) != n:
        raise DimensionError(f"permutation of size {len(p)} on {n}x{n} matrix")
    inv = p.inverse().images
    return Matrix._from_grid(tuple(tuple(m.rows[inv[a]][inv[b]] for b in range(n)) for a in range(n)))


def is_permutation_matrix(m: Matrix) -> bool:
    if not m.is_square:
        return False
    if any(x != 0 and x != 1 for r in m.rows for x in r):
        return False
    return all(sum(r) == 1 for r in m.rows) and all(sum(c) == 1 for c in zip(*m.rows))


def support_graph(m: Matrix) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(m.n_rows))
    g.add_edges_from((i, j) for i, r in enumerate(m.rows) for j, x in enumerate(r) if x > 0)
    return g


def irreducible_components(m: Matrix) -> tuple[Permutation, list[Matrix]]:
    """Split a doubly stochastic matrix into irreducible diagonal blocks.

    Components are the strongly connected components of the support digraph,
    ordered by their smallest index; indices keep their relative order inside
    a component.  The returned permutation carries ``m`` to the block
    diagonal matrix made of the returned blocks.
    """
    if not is_doubly_stochastic(m):
        raise NotDoublyStochasticError("irreducible decomposition needs a doubly stochastic matrix")
    comps = sorted((sorted(c) for c in nx.strongly_connected_components(support_graph(m))), key=lambda c: c[0])
    owner = {i: k for k, c in enumerate(comps) for i in c}
    for i, r in enumerate(m.rows):
        for j, x in enumerate(r):
            if x and owner[i] != owner[j]:
                raise ConsistencyError(f"positive entry ({i},{j}) links components {owner[i]} and {owner[j]}")
    order = [i for c in comps for i in c]
    images = [0] * len(order)
    for new, old in enumerate(order):
        images[old] = new
    blocks = [m.submatrix(c) for c in comps]
    for b in blocks:
        if not is_doubly_stochastic(b):
            raise ConsistencyError("diagonal block is not doubly stochastic")
    return Permutation(images), blocks


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.n for b in blocks)
    zero = Fraction(0)
    grid = []
    offset = 0
    for b in blocks:
        for r in b.rows:
            grid.append((zero,) * offset + r + (zero,) * (n - offset - b.n))
        offset += b.n
    return Matrix._from_grid(tuple(grid))


def random_permutation(n: int, rng: random.Random) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(images)


def random_doubly_stochastic(n: int, seed: int, terms: int = 3) -> Matrix:
    """Seeded convex combination of ``terms`` random permutation matrices.

    Weights are positive integers in ``1..12`` normalised to sum to one, so
    the result is exactly doubly stochastic with small denominators.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    rng = random.Random(seed)
    weights = [rng.randint(1, 12) for _ in range(terms)]
    total = sum(weights)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for w in weights:
        p = random_permutation(n, rng)
        share = Fraction(w, total)
        for i in range(n):
            acc[p(i)][i] += share
    return Matrix._from_grid(tuple(tuple(r) for r in acc))
