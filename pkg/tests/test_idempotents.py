from fractions import Fraction as F
from itertools import permutations, product

import pytest
from hypothesis import given

from dstoch.idempotents import (
    Idempotent,
    NotIdempotentError,
    canonical_block_form,
    conjugate_idempotent,
    enumerate_idempotents,
    idempotent_from_partition,
    is_idempotent,
    partition_from_matrix,
)
from dstoch.partitions import SetPartition, bell_number, enumerate_set_partitions
from dstoch.ratmat import (
    DimensionError,
    Matrix,
    Permutation,
    conjugate_by_permutation,
    irreducible_components,
    is_doubly_stochastic,
    multiply,
    random_doubly_stochastic,
    rank,
)

from conftest import set_partitions

h = F(1, 2)


class TestConstruction:
    def test_e21(self):
        e = idempotent_from_partition(SetPartition(3, [[0, 1], [2]]))
        assert e.matrix == Matrix([[h, h, 0], [h, h, 0], [0, 0, 1]])

    def test_one_block(self):
        assert idempotent_from_partition(SetPartition.one_block(3)).matrix == Matrix.constant(3, F(1, 3))

    def test_singletons(self):
        assert idempotent_from_partition(SetPartition.singletons(4)).matrix == Matrix.identity(4)

    @given(set_partitions(max_n=7))
    def test_invariants(self, p):
        e = Idempotent(p)
        m = e.matrix
        assert multiply(m, m) == m
        assert is_doubly_stochastic(m)
        assert m == m.transpose()
        assert rank(m) == len(p.blocks) == e.rank
        for i in range(p.n):
            for j in range(p.n):
                same = p.rgs[i] == p.rgs[j]
                assert m[i, j] == (F(1, len(p.block_of(i))) if same else 0)

    def test_equality_by_partition(self):
        a = Idempotent(SetPartition(2, [[1], [0]]))
        b = Idempotent(SetPartition(2, [[0], [1]]))
        assert a == b and hash(a) == hash(b)


class TestRecognition:
    def test_e36_of_d4(self, d4):
        assert partition_from_matrix(d4["E_3^6"]) == SetPartition(4, [[0, 3], [1], [2]])

    def test_identity(self):
        assert partition_from_matrix(Matrix.identity(4)) == SetPartition.singletons(4)

    def test_not_doubly_stochastic(self):
        with pytest.raises(NotIdempotentError):
            partition_from_matrix(Matrix([[h, h], [1, 0]]))

    def test_not_idempotent(self):
        with pytest.raises(NotIdempotentError):
            partition_from_matrix(Permutation([1, 0]).matrix())

    def test_random_non_idempotent(self):
        m = random_doubly_stochastic(4, 3, 3)
        assert not is_idempotent(m)
        with pytest.raises(NotIdempotentError):
            partition_from_matrix(m)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_bijection(self, n):
        for p in enumerate_set_partitions(n):
            assert partition_from_matrix(idempotent_from_partition(p).matrix) == p


class TestIsIdempotent:
    def test_constant(self):
        assert is_idempotent(Matrix.constant(4, F(1, 4)))

    def test_swap(self):
        assert not is_idempotent(Permutation([1, 0]).matrix())

    def test_zero(self):
        assert is_idempotent(Matrix.zeros(3))

    def test_non_square(self):
        with pytest.raises(DimensionError):
            is_idempotent(Matrix([[1, 0]]))


class TestBlockForm:
    def test_e22_of_d3(self):
        e = Idempotent(SetPartition(3, [[0, 2], [1]]))
        p, u = canonical_block_form(e)
        assert p == Permutation([0, 2, 1])
        assert u == Matrix([[h, h, 0], [h, h, 0], [0, 0, 1]])
        assert conjugate_by_permutation(p, e.matrix) == u

    def test_already_block_form(self):
        e = Idempotent(SetPartition(5, [[0, 1, 2], [3, 4]]))
        assert canonical_block_form(e)[0] == Permutation.identity(5)

    def test_constant(self):
        e = Idempotent(SetPartition.one_block(4))
        p, u = canonical_block_form(e)
        assert p == Permutation.identity(4) and u == e.matrix

    def test_tie_break_by_smallest_index(self):
        # blocks {1,3} and {0,2} have equal size; {0,2} comes first
        e = Idempotent(SetPartition(5, [[1, 3], [0, 2], [4]]))
        p, u = canonical_block_form(e)
        assert p == Permutation([0, 2, 1, 3, 4])

    @pytest.mark.parametrize("n", range(1, 6))
    def test_all(self, n):
        for e in enumerate_idempotents(n):
            p, u = canonical_block_form(e)
            assert conjugate_by_permutation(p, e.matrix) == u
            _, blocks = irreducible_components(u)
            sizes = [b.n for b in blocks]
            # components of U come out in index order, which is by decreasing size
            assert sizes == sorted(sizes, reverse=True)
            assert all(b == Matrix.constant(b.n, F(1, b.n)) for b in blocks)


class TestEnumeration:
    def test_n1(self):
        assert [e.matrix for e in enumerate_idempotents(1)] == [Matrix([[1]])]

    @pytest.mark.parametrize("n", [3, 4])
    def test_catalogs(self, n, d3, d4):
        catalog = d3 if n == 3 else d4
        got = [e.matrix for e in enumerate_idempotents(n)]
        assert len(got) == len(set(got)) == len(catalog)
        assert set(got) == set(catalog.values())

    def test_brute_force_completeness_d3(self):
        # every 3x3 doubly stochastic idempotent with entries in {0, 1/6, ..., 1}
        # must already be enumerated; 1/2 and 1/3 both live on that grid
        grid = [F(k, 6) for k in range(7)]
        found = set()
        for a, b, c, d in product(grid, repeat=4):
            rows = [[a, b, 1 - a - b], [c, d, 1 - c - d]]
            rows.append([1 - x - y for x, y in zip(*rows)])
            m = Matrix(rows)
            if is_doubly_stochastic(m) and is_idempotent(m):
                found.add(m)
        assert found == {e.matrix for e in enumerate_idempotents(3)}

    @pytest.mark.parametrize("n", range(1, 7))
    def test_count_and_rank_law(self, n):
        ids = list(enumerate_idempotents(n))
        assert len(ids) == bell_number(n)
        assert all(rank(e.matrix) == len(e.partition.blocks) for e in ids)

    @pytest.mark.parametrize("n", [3, 4])
    def test_absorption(self, n):
        a = Matrix.constant(n, F(1, n))
        for seed in range(100):
            d = random_doubly_stochastic(n, seed, 4)
            assert multiply(a, d) == a == multiply(d, a)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_unique_irreducible(self, n):
        single = [e for e in enumerate_idempotents(n) if len(irreducible_components(e.matrix)[1]) == 1]
        assert [e.matrix for e in single] == [Matrix.constant(n, F(1, n))]

    @pytest.mark.parametrize("n", range(1, 5))
    def test_conjugation_closure(self, n):
        for e in enumerate_idempotents(n):
            for images in permutations(range(n)):
                p = Permutation(images)
                assert conjugate_by_permutation(p, e.matrix) == conjugate_idempotent(p, e).matrix
