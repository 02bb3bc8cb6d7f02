"""Reproduction suite behind ``dstoch verify``.

Every check returns a :class:`Check`; nothing raises on a failed identity.
Checks indexed by ``n`` only run for ``n <= max_n``.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import reference
from .green import block_witness_oracle, same_shape_d_witness, verify_d_witness
from .idempotents import Idempotent, enumerate_idempotents, partition_matrix
from .ideals import IdealHandle, contains_matrix, ideal_join, ideal_meet
from .lattice import build_lattice, verify_lattice_laws
from .partitions import (
    SetPartition,
    bell_number,
    count_idempotents,
    count_idempotents_of_shape,
    enumerate_int_shapes,
    shape_of,
    stirling2,
)
from .ratmat import (
    Matrix,
    block_diagonal,
    conjugate_by_permutation,
    irreducible_components,
    is_doubly_stochastic,
    is_stochastic,
    multiply,
    rank,
    random_doubly_stochastic,
)

SHAPE_COUNTS = {
    3: {"3": 1, "2+1": 3, "1+1+1": 1},
    4: {"4": 1, "3+1": 4, "2+2": 3, "2+1+1": 6, "1+1+1+1": 1},
}

STOCHASTIC_ONLY = [[Fraction(1, 2), Fraction(1, 2), 0], [1, 0, 0], [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)]]
DOUBLY_STOCHASTIC = [[Fraction(1, 2), Fraction(1, 2), 0], [0, 0, 1], [Fraction(1, 2), Fraction(1, 2), 0]]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def sample_family_parameters(n: int, arity: int, build, count: int, seed: int, denominator: int = 12):
    """Seeded parameter tuples whose family member is entrywise nonnegative.

    Parameters come in groups of ``n-1`` (the leading entries of one free
    row); each group is drawn as a random composition of ``denominator``
    into ``n`` parts, so free rows are stochastic and only the forced rows
    can fail.
    """
    rng = random.Random(seed)
    found, seen = [], set()
    for _ in range(200_000):
        params = []
        for _ in range(arity // (n - 1)):
            cuts = sorted(rng.randint(0, denominator) for _ in range(n - 1))
            parts = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
            params.extend(Fraction(p, denominator) for p in parts[: n - 1])
        key = tuple(params)
        if key in seen:
            continue
        seen.add(key)
        if all(x >= 0 for row in build(*params) for x in row):
            found.append(key)
            if len(found) == count:
                break
    return found


def check_counting(max_n: int) -> list[Check]:
    out = []
    for n, expected in SHAPE_COUNTS.items():
        if n > max_n:
            continue
        got = {str(s): count_idempotents_of_shape(s) for s in enumerate_int_shapes(n)}
        out.append(Check(f"count/shapes/D{n}", got == expected, f"{got}"))
        out.append(Check(f"count/total/D{n}", count_idempotents(n) == sum(expected.values()), str(count_idempotents(n))))
    bad = [n for n in range(1, 11) if count_idempotents(n) != bell_number(n)]
    out.append(Check("count/bell/n<=10", not bad, f"mismatch at {bad}" if bad else "all equal"))
    return out


def check_catalog(max_n: int) -> list[Check]:
    out = []
    for n, catalog in reference.CATALOGS.items():
        if n > max_n:
            continue
        expected = {Matrix(g) for g in catalog.values()}
        got = [e.matrix for e in enumerate_idempotents(n)]
        same = len(got) == len(set(got)) == len(catalog) and set(got) == expected
        out.append(Check(f"catalog/D{n}", same, f"{len(got)} enumerated, {len(expected)} listed"))
        wrong = [lab for lab, g in catalog.items() if partition_matrix(reference.partition_for(n, lab)) != Matrix(g)]
        out.append(Check(f"catalog/labels/D{n}", not wrong, f"mislabelled: {wrong}" if wrong else "ok"))
    return out


def check_rank_law(max_n: int) -> list[Check]:
    out = []
    bad = [
        (n, e.partition)
        for n in range(1, min(max_n, 6) + 1)
        for e in enumerate_idempotents(n)
        if rank(e.matrix) != len(e.partition.blocks)
    ]
    out.append(Check("rank/blocks", not bad, f"violations: {bad[:3]}" if bad else "rank = block count"))
    for n, ranks in reference.CATALOG_RANKS.items():
        if n > max_n:
            continue
        wrong = [lab for lab, r in ranks.items() if rank(Matrix(reference.CATALOGS[n][lab])) != r]
        out.append(Check(f"rank/catalog/D{n}", not wrong, f"wrong: {wrong}" if wrong else "constant matrix rank 1, identity rank n"))
    return out


def check_families(max_n: int, seed: int, per_family: int = 12) -> list[Check]:
    out = []
    for n, families in reference.FAMILIES.items():
        if n > max_n:
            continue
        for label, (arity, build) in families.items():
            ideal = IdealHandle(reference.partition_for(n, label))
            E = partition_matrix(ideal.generator)
            if arity == 0:
                points = [()]
            else:
                points = sample_family_parameters(n, arity, build, per_family, seed)
            failures = []
            for params in points:
                m = Matrix(build(*params))
                if not (is_doubly_stochastic(m) and contains_matrix(ideal, m) and multiply(E, m) == m):
                    failures.append(params)
            enough = arity == 0 or len(points) >= 10
            out.append(
                Check(
                    f"family/D{n}/{label}",
                    enough and not failures,
                    f"{len(points)} instances" + (f", failing {failures[:2]}" if failures else ""),
                )
            )
    return out


def check_identities(max_n: int) -> list[Check]:
    if max_n < 4:
        return []
    out = []
    for op, left, right, result in reference.MEET_JOIN_IDENTITIES:
        a, b = (IdealHandle(reference.partition_for(4, x)) for x in (left, right))
        got = (ideal_meet if op == "meet" else ideal_join)(a, b)
        want = reference.partition_for(4, result)
        sym = "∧" if op == "meet" else "∨"
        out.append(Check(f"identity/<{left}> {sym} <{right}> = <{result}>", got.generator == want, got.label()))
    wrong = [
        lab
        for lab, spec in reference.IDENTITY_NOTATION.items()
        if SetPartition.parse(spec, 4) != reference.partition_for(4, lab)
    ]
    out.append(Check("identity/notation", not wrong, f"wrong: {wrong}" if wrong else "ok"))
    return out


def check_lattice(max_n: int) -> list[Check]:
    out = []
    for n in range(1, min(max_n, 5) + 1):
        report = verify_lattice_laws(build_lattice(n))
        out.append(Check(f"lattice/laws/D{n}", report.ok, f"{report.total} checks, {len(report.violations)} violations"))
    for n in range(1, min(max_n, 8) + 1):
        levels = build_lattice(n).level_sizes
        ok = levels == {k: stirling2(n, k) for k in range(1, n + 1)}
        out.append(Check(f"lattice/levels/D{n}", ok, str(levels)))
    return out


def check_absorption(max_n: int, seed: int, samples: int = 100) -> list[Check]:
    out = []
    for n in (3, 4):
        if n > max_n:
            continue
        A = Matrix.constant(n, Fraction(1, n))
        bad = 0
        for s in range(samples):
            D = random_doubly_stochastic(n, seed * 100_003 + s, terms=4)
            if multiply(A, D) != A or multiply(D, A) != A:
                bad += 1
        out.append(Check(f"absorption/D{n}", bad == 0, f"{samples} samples, {bad} failures"))
    return out


def check_irreducible(max_n: int) -> list[Check]:
    out = []
    for n in range(1, min(max_n, 5) + 1):
        single = []
        roundtrip_bad = []
        for e in enumerate_idempotents(n):
            p, blocks = irreducible_components(e.matrix)
            if len(blocks) == 1:
                single.append(e.partition)
            if conjugate_by_permutation(p, e.matrix) != block_diagonal(blocks):
                roundtrip_bad.append(e.partition)
        ok = single == [SetPartition.one_block(n)] and not roundtrip_bad
        out.append(Check(f"irreducible/D{n}", ok, f"single-component idempotents: {single}"))
    return out


def check_witnesses(max_n: int) -> list[Check]:
    out = []
    for n in range(1, min(max_n, 4) + 1):
        ids = list(enumerate_idempotents(n))
        pairs = bad = 0
        for e in ids:
            for f in ids:
                if shape_of(e.partition) != shape_of(f.partition):
                    continue
                pairs += 1
                if not verify_d_witness(same_shape_d_witness(e, f), e, f):
                    bad += 1
        out.append(Check(f"witness/same-shape/D{n}", bad == 0, f"{pairs} pairs, {bad} failures"))
    if max_n >= 4:
        e = Idempotent(reference.partition_for(4, "E_2^1"))
        f = Idempotent(reference.partition_for(4, "E_2^4"))
        outcome = block_witness_oracle(e, f)
        out.append(Check("witness/cross-shape/E_2^1,E_2^4 (recorded)", True, ("feasible: " if outcome.feasible else "infeasible: ") + outcome.reason))
    return out


def check_closure(max_n: int, seed: int, samples: int = 1000) -> list[Check]:
    sizes = list(range(2, min(max_n, 4) + 1)) or [1]
    bad = 0
    for s in range(samples):
        n = sizes[s % len(sizes)]
        a = random_doubly_stochastic(n, seed * 7919 + 2 * s, terms=3)
        b = random_doubly_stochastic(n, seed * 7919 + 2 * s + 1, terms=3)
        if not is_doubly_stochastic(multiply(a, b)):
            bad += 1
    st, ds = Matrix(STOCHASTIC_ONLY), Matrix(DOUBLY_STOCHASTIC)
    classified = is_stochastic(st) and not is_doubly_stochastic(st) and is_doubly_stochastic(ds)
    return [
        Check("closure/products", bad == 0, f"{samples} products over n in {sizes}, {bad} failures"),
        Check("predicates/examples", classified, "stochastic-only and doubly stochastic examples"),
    ]


def run_all(max_n: int = 4, seed: int = 0) -> list[Check]:
    checks = []
    checks += check_counting(max_n)
    checks += check_catalog(max_n)
    checks += check_rank_law(max_n)
    checks += check_families(max_n, seed)
    checks += check_identities(max_n)
    checks += check_lattice(max_n)
    checks += check_absorption(max_n, seed)
    checks += check_irreducible(max_n)
    checks += check_witnesses(max_n)
    checks += check_closure(max_n, seed)
    return checks


def report(checks: list[Check], max_n: int, seed: int) -> dict:
    return {
        "max_n": max_n,
        "seed": seed,
        "passed": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
