"""Tests for colour covering homomorphisms and rainbow tilings."""

from __future__ import annotations

import pytest

from tiling.errors import Infeasible, InvalidArgument, NotFound, Unknown
from tiling.exact import Tiling, perfect_tiling
from tiling.generators import gen_complete
from tiling.hypergraph import ThreeGraph
from tiling.rainbow import RainbowInstance, RainbowTiling, colour_covering_hom, rainbow_perfect_tiling


class TestColourCovering:
    def test_complete_pair(self, k5):
        result = colour_covering_hom(k5, k5)
        assert result.verify(k5, k5)
        assert result.designated == (0, 1, 2)
        assert set(result.roles) == set("abcde")

    def test_falls_back_to_cde(self):
        H1 = ThreeGraph(5, [(2, 3, 4)])
        H2 = ThreeGraph(5, [(0, 1, 2), (0, 1, 3)])
        result = colour_covering_hom(H1, H2)
        assert result.verify(H1, H2)
        assert result.designated == (2, 3, 4)
        assert tuple(result.copy) == (0, 1, 2, 3, 4)
        assert result.to_dict() == {"designated": [2, 3, 4], "roles": {"a": 0, "b": 1, "c": 2, "d": 3, "e": 4}}

    def test_not_found(self, k5):
        result = colour_covering_hom(ThreeGraph(5, []), k5)
        assert isinstance(result, NotFound)
        assert not result

    def test_verify_rejects_swapped_colours(self):
        H1 = ThreeGraph(5, [(2, 3, 4)])
        H2 = ThreeGraph(5, [(0, 1, 2), (0, 1, 3)])
        result = colour_covering_hom(H1, H2)
        assert not result.verify(H2, H1)

    def test_argument_checks(self, k5):
        with pytest.raises(InvalidArgument, match="vertex count"):
            colour_covering_hom(k5, gen_complete(6))
        with pytest.raises(InvalidArgument, match="n >= 5"):
            colour_covering_hom(gen_complete(4), gen_complete(4))


class TestRainbowInstance:
    def test_colour_count(self, k5):
        with pytest.raises(InvalidArgument, match="expected 3"):
            RainbowInstance(5, (k5, k5))

    def test_divisibility(self):
        K6 = gen_complete(6)
        with pytest.raises(InvalidArgument, match="5 | n"):
            RainbowInstance(6, (K6, K6, K6))

    def test_common_vertex_set(self, k5):
        with pytest.raises(InvalidArgument, match="common"):
            RainbowInstance(5, (k5, k5, gen_complete(6)))

    def test_empty_family(self):
        with pytest.raises(InvalidArgument, match="empty"):
            RainbowInstance.of([])


class TestRainbowTiling:
    def test_three_complete_colours(self, k5):
        inst = RainbowInstance.of([k5, k5, k5])
        result = rainbow_perfect_tiling(inst)
        assert isinstance(result, RainbowTiling)
        assert result.verify(inst)
        assert sorted(result.colours) == [0, 1, 2]
        assert result.to_dict()["perfect"] is True

    def test_one_edge_per_colour(self, single_copy):
        family = [ThreeGraph(5, [e]) for e in single_copy.sorted_edges()]
        inst = RainbowInstance.of(family)
        result = rainbow_perfect_tiling(inst)
        assert isinstance(result, RainbowTiling)
        for edge, colour in zip(result.edges, result.colours):
            assert edge in family[colour].edges

    def test_colours_cannot_be_spread(self, single_copy):
        empty = ThreeGraph(5, [])
        result = rainbow_perfect_tiling(RainbowInstance.of([single_copy, empty, empty]))
        assert isinstance(result, Infeasible)

    def test_budget(self, k5):
        result = rainbow_perfect_tiling(RainbowInstance.of([k5, k5, k5]), budget_nodes=0)
        assert isinstance(result, Unknown)

    @pytest.mark.slow
    def test_h_ext_family(self, h_ext10):
        H = h_ext10.graph
        result = rainbow_perfect_tiling(RainbowInstance.of([H] * 6))
        assert isinstance(result, Infeasible)

    @pytest.mark.parametrize(
        "H",
        [
            gen_complete(5),
            ThreeGraph(5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)]),
            ThreeGraph(5, [(0, 1, 2), (0, 1, 3)]),
            ThreeGraph(5),
            gen_complete(10),
        ],
    )
    def test_equal_colours_match_plain_tiling(self, H):
        inst = RainbowInstance.of([H] * (3 * H.n // 5))
        rainbow = rainbow_perfect_tiling(inst)
        assert isinstance(rainbow, RainbowTiling) == isinstance(perfect_tiling(H), Tiling)
