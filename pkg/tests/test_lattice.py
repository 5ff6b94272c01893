"""Tests for index vectors, the abundant-vector lattice and transferrals."""

from __future__ import annotations

from fractions import Fraction

import pytest

from tiling.errors import InvalidArgument, NotFound
from tiling.copies import enumerate_copies
from tiling.generators import gen_complete, gen_random_codegree
from tiling.lattice import (
    IndexLattice,
    abundant_vectors,
    closure_hypothesis,
    index_buckets,
    index_vector,
    lattice_membership,
    transferral_witness,
    unit_vector,
)
from tiling.oracles import brute_force_lattice_member

HALVES = [[0, 1, 2], [3, 4, 5]]


class TestIndexVectors:
    def test_index_vector(self):
        assert index_vector((0, 1, 2), [[0], [1, 2]]) == (1, 2)
        assert index_vector((0, 3, 4), HALVES) == (1, 2)

    def test_vertex_outside_parts(self):
        with pytest.raises(InvalidArgument, match="lies in no part"):
            index_vector((0, 7), HALVES)

    def test_overlapping_parts(self):
        with pytest.raises(InvalidArgument, match="two parts"):
            index_vector((0,), [[0, 1], [1, 2]])

    def test_buckets_complete_five(self, k5):
        assert index_buckets(k5, [[0, 1], [2, 3, 4]]) == {(2, 3): 30}

    def test_buckets_complete_six(self):
        # three 5-sets of each shape, 30 copies on each
        assert index_buckets(gen_complete(6), HALVES) == {(2, 3): 90, (3, 2): 90}

    def test_buckets_need_partition(self, k5):
        with pytest.raises(InvalidArgument, match="partition"):
            index_buckets(k5, [[0, 1], [2, 3]])

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_buckets_account_for_every_copy(self, seed):
        H = gen_random_codegree(8, 2, seed)
        parts = [[0, 1, 2], [3, 4], [5, 6, 7]]
        assert sum(index_buckets(H, parts).values()) == len(enumerate_copies(H))

    def test_abundant_threshold(self):
        K6 = gen_complete(6)
        assert abundant_vectors(K6, HALVES, Fraction(1)) == [(2, 3), (3, 2)]
        assert abundant_vectors(K6, HALVES, Fraction(1)) == abundant_vectors(K6, HALVES, Fraction(1, 6))

    @pytest.mark.parametrize("mu", [Fraction(0), Fraction(-1, 2), Fraction(3, 2)])
    def test_abundant_mu_range(self, k5, mu):
        with pytest.raises(InvalidArgument, match="mu"):
            abundant_vectors(k5, [[0, 1], [2, 3, 4]], mu)


class TestIndexLattice:
    def test_membership(self):
        L = IndexLattice.of([(3, 2), (2, 3)])
        assert lattice_membership(L, (1, -1))
        assert lattice_membership(L, (5, 0))
        assert not lattice_membership(L, (1, 0))

    def test_single_generator(self):
        L = IndexLattice.of([(2, 3)])
        assert L.contains((4, 6))
        assert L.contains((-2, -3))
        assert not L.contains((1, -1))

    def test_zero_vector_always_member(self):
        assert IndexLattice.of([], dim=3).contains((0, 0, 0))
        assert not IndexLattice.of([], dim=3).contains((0, 1, 0))

    def test_dimension_checks(self):
        with pytest.raises(InvalidArgument):
            IndexLattice.of([])
        with pytest.raises(InvalidArgument):
            IndexLattice.of([(1, 2), (1, 2, 3)])
        with pytest.raises(InvalidArgument):
            IndexLattice.of([(1, 2)]).contains((1, 2, 3))

    @pytest.mark.parametrize(
        "generators",
        [[(3, 2), (2, 3)], [(4, 1), (2, 3)], [(5, 0), (1, 4), (3, 2)], [(2, 1, 2), (1, 2, 2), (2, 2, 1)]],
    )
    def test_agrees_with_bounded_search(self, generators):
        L = IndexLattice.of(generators)
        dim = len(generators[0])
        for j in range(dim):
            for k in range(dim):
                if j == k:
                    continue
                target = [a - b for a, b in zip(unit_vector(dim, j), unit_vector(dim, k))]
                assert L.contains(target) == brute_force_lattice_member(generators, target)

    def test_to_dict(self):
        data = IndexLattice.of([(3, 2), (2, 3)]).to_dict()
        assert data["dim"] == 2
        assert data["generators"] == [[3, 2], [2, 3]]
        assert data["basis"][0][0] == 1


class TestTransferral:
    def test_complete_six(self):
        assert transferral_witness(gen_complete(6), HALVES, Fraction(0)) == ((3, 2), (2, 3))

    def test_threshold_too_high(self):
        result = transferral_witness(gen_complete(6), HALVES, Fraction(1))
        assert isinstance(result, NotFound)
        assert not result

    def test_needs_bipartition(self):
        with pytest.raises(InvalidArgument, match="bipartition"):
            transferral_witness(gen_complete(6), [[0, 1], [2, 3], [4, 5]], Fraction(0))

    def test_negative_psi(self):
        with pytest.raises(InvalidArgument, match="psi"):
            transferral_witness(gen_complete(6), HALVES, Fraction(-1))


class TestClosure:
    def test_holds_on_complete_six(self):
        report = closure_hypothesis(gen_complete(6), HALVES, Fraction(1))
        assert report.holds
        assert report.to_dict()["failing"] == []

    def test_holds_with_three_parts(self):
        report = closure_hypothesis(gen_complete(6), [[0, 1], [2, 3], [4, 5]], Fraction(1))
        assert report.generators == ((1, 2, 2), (2, 1, 2), (2, 2, 1))
        assert report.holds

    def test_fails_with_one_shape(self, k5):
        report = closure_hypothesis(k5, [[0, 1], [2, 3, 4]], Fraction(1))
        assert not report.holds
        assert report.failing == ((0, 1),)
        data = report.to_dict()
        assert data["failing"] == [[1, 2]]
        assert data["mu"] == "1"
