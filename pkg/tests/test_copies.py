"""Tests for copy enumeration and support checks."""

from __future__ import annotations

import itertools

import pytest

from tiling.copies import (
    TCopy,
    copies_in,
    copies_through,
    copies_through_pair,
    count_copies,
    enumerate_copies,
    format_copies,
    is_copy_of,
    parse_copies,
    supporting_sets,
    supports_T,
)
from tiling.errors import FormatError, InvalidArgument
from tiling.generators import gen_random_codegree, gen_tripartite
from tiling.oracles import labeled_embeddings, naive_supports


class TestEnumeration:
    def test_single_copy(self, single_copy):
        assert enumerate_copies(single_copy) == [TCopy(0, 1, 2, 3, 4)]

    def test_complete_five(self, k5):
        assert count_copies(k5) == 30
        assert all(copy.is_canonical() for copy in enumerate_copies(k5))

    def test_tripartite_has_none(self):
        assert count_copies(gen_tripartite((3, 3, 3))) == 0

    def test_lexicographic_and_unique(self, k10):
        copies = enumerate_copies(k10)
        assert len(set(copies)) == len(copies)
        assert all(is_copy_of(k10, c) for c in copies[:100])

    @pytest.mark.parametrize("seed", [1, 2, 3, 4])
    def test_matches_labeled_embeddings(self, seed):
        H = gen_random_codegree(7, 0, seed)
        assert count_copies(H) * 4 == labeled_embeddings(H)

    def test_copies_through_pair(self, single_copy):
        assert copies_through_pair(single_copy, 0, 4) == [TCopy(0, 1, 2, 3, 4)]
        with pytest.raises(InvalidArgument):
            copies_through_pair(single_copy, 1, 1)

    def test_copies_through_vertex(self, single_copy, k5):
        assert copies_through(single_copy, 3) == [TCopy(0, 1, 2, 3, 4)]
        assert len(copies_through(k5, 0)) == 30
        with pytest.raises(InvalidArgument):
            copies_through(k5, 5)

    @pytest.mark.parametrize("seed", [1, 2])
    def test_copies_through_every_vertex(self, seed):
        H = gen_random_codegree(7, 1, seed)
        copies = enumerate_copies(H)
        for u in range(H.n):
            assert copies_through(H, u) == [c for c in copies if u in c]
        assert sum(len(copies_through(H, u)) for u in range(H.n)) == 5 * len(copies)


class TestSupports:
    def test_supports(self, single_copy):
        assert supports_T(single_copy, [4, 3, 2, 1, 0])

    def test_needs_five_vertices(self, k5):
        with pytest.raises(InvalidArgument):
            supports_T(k5, [0, 1, 2, 3])

    def test_agrees_with_naive(self):
        H = gen_random_codegree(8, 0, 11)
        for S in itertools.combinations(range(8), 5):
            assert supports_T(H, S) == naive_supports(H, S)

    def test_supporting_sets_use_first_copy(self, k5):
        sets = supporting_sets(k5)
        assert list(sets) == [(0, 1, 2, 3, 4)]
        assert sets[(0, 1, 2, 3, 4)] == TCopy(0, 1, 2, 3, 4)

    def test_copies_in_subset(self, k10):
        assert len(copies_in(k10, range(5))) == 30


class TestCopyFormat:
    def test_round_trip(self, k5):
        copies = enumerate_copies(k5)[:3]
        assert parse_copies(format_copies(copies), k5) == copies

    def test_rejects_non_canonical(self):
        with pytest.raises(FormatError):
            parse_copies("1 0 2 3 4\n")

    def test_rejects_missing_edges(self, single_copy):
        with pytest.raises(FormatError) as info:
            parse_copies("# header\n0 1 2 4 3\n", single_copy)
        assert info.value.line == 2
