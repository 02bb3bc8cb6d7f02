"""Certificates for Green's D-relation between idempotents of D_n.

Two idempotents ``E`` and ``F`` are D-related when there are ``x, y`` in the
semigroup with ``x·y = E`` and ``y·x = F``; replacing ``x`` by ``E·x·F`` and
``y`` by ``F·y·E`` keeps both identities, so witnesses are normalised that
way.  Same-shape idempotents are conjugate by a permutation and get an
explicit witness.  For other pairs :func:`block_witness_oracle` decides the
normalised system exactly in the cases it can handle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .idempotents import Idempotent
from .partitions import SetPartition, shape_of
from .ratmat import DimensionError, Matrix, Permutation, is_doubly_stochastic, multiply


class ShapeMismatchError(ValueError):
    pass


class UnsupportedWitnessError(NotImplementedError):
    """No constructive witness is available; this is not a disproof."""


@dataclass(frozen=True)
class DWitness:
    x: Matrix
    y: Matrix


def verify_d_witness(w: DWitness, e: Idempotent, f: Idempotent) -> bool:
    n = e.n
    if f.n != n or w.x.n_rows != n or w.y.n_rows != n or not (w.x.is_square and w.y.is_square):
        raise DimensionError("witness and idempotents must share n")
    E, F = e.matrix, f.matrix
    return (
        is_doubly_stochastic(w.x)
        and is_doubly_stochastic(w.y)
        and multiply(w.x, w.y) == E
        and multiply(w.y, w.x) == F
        and multiply(multiply(E, w.x), F) == w.x
        and multiply(multiply(F, w.y), E) == w.y
    )


def find_conjugating_permutation(p: SetPartition, q: SetPartition) -> Permutation:
    """Permutation carrying the blocks of ``p`` onto the blocks of ``q``.

    Blocks are paired by size, equal sizes in order of their minimum, and
    elements are matched ascending to ascending.
    """
    if p.n != q.n or shape_of(p) != shape_of(q):
        raise ShapeMismatchError(f"shapes {shape_of(p)} and {shape_of(q)} differ")
    key = lambda b: (len(b), b[0])
    images = [0] * p.n
    for src, dst in zip(sorted(p.blocks, key=key), sorted(q.blocks, key=key)):
        for i, j in zip(src, dst):
            images[i] = j
    return Permutation(images)


def same_shape_d_witness(e: Idempotent, f: Idempotent) -> DWitness:
    try:
        p = find_conjugating_permutation(e.partition, f.partition)
    except ShapeMismatchError as exc:
        raise UnsupportedWitnessError(f"unsupported: no constructive witness ({exc})") from None
    P = p.matrix()
    return DWitness(x=multiply(e.matrix, P.transpose()), y=multiply(P, e.matrix))


@dataclass(frozen=True)
class OracleOutcome:
    feasible: bool
    reason: str
    witness: DWitness | None = None


def _block_sizes(p: SetPartition):
    return [len(b) for b in p.blocks]


def _expand(core, p: SetPartition, q: SetPartition) -> Matrix:
    # x[i][j] = core[block_p(i)][block_q(j)]
    pr, qr = p.rgs, q.rgs
    return Matrix([[Fraction(core[pr[i]][qr[j]]) for j in range(q.n)] for i in range(p.n)])


def block_witness_oracle(e: Idempotent, f: Idempotent) -> OracleOutcome:
    """Decide whether a normalised D-witness for ``(e, f)`` exists.

    A normalised ``x = E·x·F`` is constant on (E-block, F-block) rectangles,
    so it is fixed by a ``k_E x k_F`` core ``M``; likewise ``y`` by ``M'``.
    Double stochasticity is linear in the cores, and ``x·y = E``, ``y·x = F``
    become ``M N_F M' = N_E^-1`` and ``M' N_E M = N_F^-1`` with ``N`` the
    diagonal block-size matrices.  Equal ranks force square invertible cores
    and ``M' = N_F^-1 M^-1 N_E^-1``, which leaves nonnegativity as the only
    open condition.  Solved exactly when at most one core parameter is free.
    """
    if e.n != f.n:
        raise DimensionError("idempotents of different D_n")
    ke, kf = e.rank, f.rank
    if ke != kf:
        return OracleOutcome(False, f"ranks differ ({ke} vs {kf}); x·y = E and y·x = F force equal rank")
    se, sf = _block_sizes(e.partition), _block_sizes(f.partition)
    k = ke
    syms = sympy.symbols(f"m0:{k * k}")
    M = sympy.Matrix(k, k, syms)
    eqs = [sum(M[r, c] * sf[c] for c in range(k)) - 1 for r in range(k)]
    eqs += [sum(se[r] * M[r, c] for r in range(k)) - 1 for c in range(k)]
    (sol,) = sympy.linsolve(eqs, syms)
    M = M.subs(dict(zip(syms, sol)))
    free = sorted(M.free_symbols, key=str)
    if len(free) > 1:
        raise UnsupportedWitnessError(f"{len(free)} free core parameters; only 0 or 1 are handled")
    NE_inv = sympy.diag(*[sympy.Rational(1, s) for s in se])
    NF_inv = sympy.diag(*[sympy.Rational(1, s) for s in sf])
    det = sympy.factor(M.det())
    if det == 0:
        return OracleOutcome(False, "the core of x is always singular")
    Mp = (NF_inv * M.inv() * NE_inv).applyfunc(sympy.cancel)

    if not free:
        ok = all(v >= 0 for v in list(M) + list(Mp))
        witness = None
        if ok:
            witness = DWitness(_expand(M.tolist(), e.partition, f.partition), _expand(Mp.tolist(), f.partition, e.partition))
        return OracleOutcome(ok, "unique core; nonnegativity " + ("holds" if ok else "fails"), witness)

    (u,) = free
    region = sympy.S.Reals
    for expr in list(M) + list(Mp):
        region = region.intersect(sympy.solveset(expr >= 0, u, domain=sympy.S.Reals))
    region = region - sympy.solveset(det, u, domain=sympy.S.Reals)
    if region is sympy.S.EmptySet or region.is_empty:
        return OracleOutcome(
            False,
            f"core M({u}) has det {det}; no {u} makes both M and N_F^-1 M^-1 N_E^-1 nonnegative",
        )
    point = _rational_point(region)
    core_x = M.subs(u, point).tolist()
    core_y = Mp.subs(u, point).tolist()
    w = DWitness(_expand(core_x, e.partition, f.partition), _expand(core_y, f.partition, e.partition))
    return OracleOutcome(True, f"feasible parameter set {region}; sample {u} = {point}", w)


def _rational_point(region):
    if isinstance(region, sympy.Union):
        region = region.args[0]
    if isinstance(region, sympy.FiniteSet):
        return next(iter(region))
    if isinstance(region, sympy.Interval):
        a, b = region.start, region.end
        if a.is_finite and b.is_finite:
            return (a + b) / 2
        if a.is_finite:
            return a + 1
        if b.is_finite:
            return b - 1
        return sympy.Integer(0)
    raise UnsupportedWitnessError(f"cannot pick a point from {region}")

