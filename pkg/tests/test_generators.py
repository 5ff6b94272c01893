"""Tests for named constructions, seeded random graphs and generator specs."""

from __future__ import annotations

from fractions import Fraction

import pytest
from pydantic import ValidationError

from tiling.copies import count_copies, enumerate_copies
from tiling.errors import FormatError, InvalidArgument
from tiling.generators import (
    GenSpec,
    build,
    dump_family,
    gen_complete,
    gen_h_ext,
    gen_rainbow_family,
    gen_random_codegree,
    gen_support_5graph,
    gen_tripartite,
    parse_family,
)
from tiling.hypergraph import FiveGraph, min_codegree, parse_header, parse_three_graph


class TestConstructions:
    def test_h_ext_sizes(self, h_ext10):
        assert h_ext10.A == (0, 1, 2)
        assert h_ext10.B == tuple(range(3, 10))
        assert h_ext10.graph.edge_count == 85
        assert min_codegree(h_ext10.graph) == 3

    def test_h_ext_fifteen(self):
        marked = gen_h_ext(15)
        assert len(marked.A) == 5
        assert len(marked.B) == 10

    @pytest.mark.parametrize("n", [10, 15])
    def test_h_ext_copies_meet_a_twice(self, n):
        marked = gen_h_ext(n)
        A = set(marked.A)
        copies = enumerate_copies(marked.graph)
        assert copies
        assert all(len(A.intersection(copy)) >= 2 for copy in copies)

    @pytest.mark.parametrize("n", [5, 12])
    def test_h_ext_rejects(self, n):
        with pytest.raises(InvalidArgument, match="divisibility"):
            gen_h_ext(n)

    def test_complete(self):
        assert gen_complete(5).edge_count == 10
        with pytest.raises(InvalidArgument):
            gen_complete(2)

    def test_tripartite_has_no_copy(self):
        H = gen_tripartite([3, 3, 3])
        assert H.edge_count == 27
        assert count_copies(H) == 0

    def test_tripartite_needs_three_parts(self):
        with pytest.raises(InvalidArgument):
            gen_tripartite([3, 3])
        with pytest.raises(InvalidArgument):
            gen_tripartite([3, -1, 3])


class TestRandomCodegree:
    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_floor_respected(self, seed):
        H = gen_random_codegree(10, 4, seed, p=Fraction(1, 4))
        assert min_codegree(H) >= 4

    def test_same_seed_same_graph(self):
        assert gen_random_codegree(12, 3, 7) == gen_random_codegree(12, 3, 7)

    def test_different_seeds_differ(self):
        assert gen_random_codegree(12, 3, 7) != gen_random_codegree(12, 3, 8)

    def test_empty_sampling_repaired(self):
        H = gen_random_codegree(8, 6, 0, p=Fraction(0))
        assert H == gen_complete(8)

    def test_unreachable_floor(self):
        with pytest.raises(InvalidArgument, match="unreachable"):
            gen_random_codegree(6, 5, 0)

    def test_probability_range(self):
        with pytest.raises(InvalidArgument, match="p must lie"):
            gen_random_codegree(6, 1, 0, p=Fraction(3, 2))


class TestSupportFiveGraph:
    def test_complete_ten(self, k10):
        J = gen_support_5graph(k10, range(6), range(6, 10))
        assert isinstance(J, FiveGraph)
        assert len(J.edges) == 120

    def test_h_ext_support(self, h_ext10):
        # 5-sets with two or more vertices of A support a copy
        J = gen_support_5graph(h_ext10.graph, range(6), range(6, 10))
        assert len(J.edges) == (1 + 3 * 3) * 6

    def test_not_a_partition(self, k10):
        with pytest.raises(InvalidArgument, match="partition"):
            gen_support_5graph(k10, range(6), range(5, 10))


class TestGenSpec:
    def test_missing_fields(self):
        with pytest.raises(ValidationError):
            GenSpec(kind="h_ext")
        with pytest.raises(ValidationError):
            GenSpec(kind="random_codegree", n=10)
        with pytest.raises(ValidationError):
            GenSpec(kind="tripartite")

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            GenSpec(kind="complete", n=5, colour=1)

    def test_h_ext_marks(self):
        generated = build(GenSpec(kind="h_ext", n=10))
        assert generated.marks["A"] == (0, 1, 2)
        meta = parse_header(generated.dump())
        assert meta["A"] == "0,1,2"
        assert meta["kind"] == "h_ext"

    def test_random_meta_records_rng(self):
        text = build(GenSpec(kind="random_codegree", n=10, delta_floor=3, seed=5)).dump()
        meta = parse_header(text)
        assert meta["rng"] == "PCG64"
        assert meta["seed"] == "5"
        assert meta["p"] == "1/2"
        assert parse_three_graph(text) == gen_random_codegree(10, 3, 5)

    def test_tripartite_size_mismatch(self):
        with pytest.raises(InvalidArgument, match="sum"):
            build(GenSpec(kind="tripartite", sizes=(2, 2, 2), n=7))

    def test_support_spec(self):
        spec = GenSpec(kind="support_5graph", source=GenSpec(kind="complete", n=10), A=(0, 1, 2, 3, 4, 5))
        J = build(spec).graph
        assert isinstance(J, FiveGraph)
        assert len(J.edges) == 120
        assert "A: 0 1 2 3 4 5" in build(spec).dump()


class TestRainbowFamily:
    def _spec(self) -> GenSpec:
        colour = GenSpec(kind="complete", n=5)
        return GenSpec(kind="rainbow_family", n=5, colours=(colour, colour, colour))

    def test_build(self):
        generated = build(self._spec())
        assert len(generated.graphs) == 3
        assert all(H == gen_complete(5) for H in generated.graphs)

    def test_dump_and_parse(self):
        generated = build(self._spec())
        parsed = parse_family(generated.dump())
        assert parsed.n == 5
        assert parsed.family == generated.graphs

    def test_wrong_colour_count(self):
        with pytest.raises(InvalidArgument, match="expected 3"):
            gen_rainbow_family(5, [GenSpec(kind="complete", n=5)] * 2)

    def test_colour_size_mismatch(self):
        with pytest.raises(InvalidArgument, match="n=6"):
            gen_rainbow_family(5, [GenSpec(kind="complete", n=6)] * 3)

    def test_parse_error_names_colour(self):
        K5 = gen_complete(5)
        text = dump_family([K5, K5, K5]).replace("0 1 4", "0 1 x", 1)
        blocks = text.split("---")
        assert "0 1 x" in blocks[0]
        with pytest.raises(FormatError, match="colour 0: line"):
            parse_family(text)
