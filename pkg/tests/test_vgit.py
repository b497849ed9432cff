"""Rank-2 variation of GIT: chambers, crossings, ends, and the two-ray game."""

import os

import pytest

from coxforge.coxpres import CoxPresentation, MonomialIdeal
from coxforge.errors import InvalidArgumentError, NotQuasiProjectiveError
from coxforge.intlattice import IntMatrix
from coxforge.vgit import (
    anticanonical_in_moving_interior,
    chambers_rank2,
    cones_rank2,
    end_behavior,
    graded_ring_generators,
    model_at_chamber,
    monomial_string,
    two_ray_game,
    wall_crossing,
)


def P(variables, rows, comps, stacky=False):
    return CoxPresentation(
        variables=tuple(variables),
        weights=IntMatrix(tuple(tuple(r) for r in rows)),
        irrelevant=MonomialIdeal(tuple(tuple(c) for c in comps)),
        stacky=stacky,
    )


# quadric cone bundle: contraction of the (-2)-curve direction
F2 = P("xyztu", [[1, 1, 1, 0, -2], [0, 0, 0, 1, 1]], [(0, 1, 2), (3, 4)])

# scroll with three interior walls
F = P(
    ["y0", "y1", "x0", "x1", "x2", "x3", "x4"],
    [[1, 1, 0, -1, -2, -3, -3], [0, 0, 1, 1, 1, 1, 1]],
    [(0, 1), (2, 3, 4, 5, 6)],
)

# affine chart of a blown-up scroll: flop plus divisorial ends
TV = P(
    "uxtsyzw",
    [[0, 1, 1, 1, 2, 3, 0], [1, 1, 0, 0, 0, -1, -1]],
    [(0, 1, 2, 3, 4), (5, 6)],
)


class TestQuadricConeBundle:
    def test_walls_and_chambers(self):
        walls, chambers = chambers_rank2(F2)
        assert walls == ((1, 0), (0, 1), (-2, 1))
        assert len(chambers) == 2
        assert model_at_chamber(F2, chambers[0]).irrelevant == F2.irrelevant
        assert model_at_chamber(F2, chambers[1]).irrelevant == MonomialIdeal(
            ((0, 1, 2, 3), (4,))
        )

    def test_interior_wall_is_a_flip(self):
        xc = wall_crossing(F2, (0, 1))
        assert xc.type_vector == (1, 1, 1, -2)
        assert xc.classification == "Flip"
        assert xc.base_vars == (3,)
        assert xc.base_weights == (1,)

    def test_cones(self):
        eff, mov = cones_rank2(F2)
        assert eff == ((1, 0), (-2, 1))
        assert mov == ((1, 0), (0, 1))

    def test_veronese_generators(self):
        gens = graded_ring_generators(F2, (0, 1), 2)
        names = [monomial_string(F2.variables, g) for g in gens]
        assert names == ["t", "x^2u", "xyu", "y^2u", "xzu", "yzu", "z^2u"]
        assert graded_ring_generators(F2, (0, 1), 0) == ()
        gens10 = graded_ring_generators(F2, (1, 0), 2)
        assert [monomial_string(F2.variables, g) for g in gens10] == ["x", "y", "z"]

    def test_ends(self):
        e0 = end_behavior(F2, (1, 0))
        assert e0.kind == "Fibration"
        assert e0.ray == (1, 0)
        assert len(e0.target_generators) == 3
        assert e0.contracted_variable is None
        e1 = end_behavior(F2, (0, 1))
        assert e1.kind == "DivisorialContraction"
        assert e1.contracted_variable == 4
        assert len(e1.target_generators) == 7

    def test_game(self):
        game = two_ray_game(F2)
        assert len(game.models) == 2
        assert len(game.crossings) == 1
        assert game.ends[0].kind == "Fibration"
        assert game.ends[1].kind == "DivisorialContraction"


class TestScrollGame:
    def test_walls(self):
        walls, chambers = chambers_rank2(F)
        assert walls == ((1, 0), (0, 1), (-1, 1), (-2, 1), (-3, 1))
        assert len(chambers) == 4

    def test_model_sequence(self):
        _, chambers = chambers_rank2(F)
        models = [model_at_chamber(F, c) for c in chambers]
        assert models[0].irrelevant == F.irrelevant
        assert models[1].irrelevant == MonomialIdeal(((0, 1, 2), (3, 4, 5, 6)))
        assert models[2].irrelevant == MonomialIdeal(((0, 1, 2, 3), (4, 5, 6)))
        assert models[3].irrelevant == MonomialIdeal(((0, 1, 2, 3, 4), (5, 6)))

    def test_crossing_sequence(self):
        c1 = wall_crossing(F, (0, 1))
        assert c1.type_vector == (1, 1, -1, -2, -3, -3)
        assert c1.classification == "AntiFlip"
        assert c1.base_vars == (2,) and c1.base_weights == (1,)
        c2 = wall_crossing(F, (-1, 1))
        assert c2.type_vector == (1, 1, 1, -1, -2, -2)
        assert c2.classification == "AntiFlip"
        c3 = wall_crossing(F, (-2, 1))
        assert c3.type_vector == (1, 1, 2, 1, -1, -1)
        assert c3.classification == "Flip"
        assert c3.base_vars == (4,)

    def test_cones_coincide_for_small_moving(self):
        eff, mov = cones_rank2(F)
        assert eff == ((1, 0), (-3, 1))
        assert mov == ((1, 0), (-3, 1))

    def test_both_ends_fiber_to_lines(self):
        game = two_ray_game(F)
        assert len(game.models) == 4 and len(game.crossings) == 3
        assert game.ends[0].kind == "Fibration"
        assert game.ends[1].kind == "Fibration"
        n0 = [monomial_string(F.variables, g) for g in game.ends[0].target_generators]
        n1 = [monomial_string(F.variables, g) for g in game.ends[1].target_generators]
        assert n0 == ["y0", "y1"]
        assert n1 == ["x3", "x4"]

    def test_anticanonical_position(self):
        assert anticanonical_in_moving_interior(F, [(-3, 2), (-2, 2)]) is True


class TestFlopAmbient:
    def test_walls_and_input_chamber(self):
        walls, chambers = chambers_rank2(TV)
        assert walls == ((0, 1), (1, 1), (1, 0), (3, -1), (0, -1))
        assert len(chambers) == 4
        assert model_at_chamber(TV, chambers[2]).irrelevant == TV.irrelevant

    def test_flop_wall(self):
        flop = wall_crossing(TV, (1, 0))
        assert flop.type_vector == (1, 1, -1, -1)
        assert flop.classification == "Flop"
        assert flop.base_vars == (2, 3, 4)
        assert flop.base_weights == (1, 1, 2)

    def test_halfplane_effective_cone(self):
        eff, mov = cones_rank2(TV)
        assert eff == ((0, 1), (0, -1))
        assert mov == ((1, 1), (3, -1))

    def test_divisorial_ends(self):
        e = end_behavior(TV, (1, 1))
        assert e.kind == "DivisorialContraction"
        assert e.contracted_variable == 0
        names = [monomial_string(TV.variables, g) for g in e.target_generators]
        assert names == ["x", "ut", "us", "u^2y"]
        e2 = end_behavior(TV, (3, -1))
        assert e2.kind == "DivisorialContraction"
        assert e2.contracted_variable == 6

    def test_game_has_flop_in_middle(self):
        game = two_ray_game(TV)
        assert len(game.models) == 4 and len(game.crossings) == 3
        assert game.crossings[1].classification == "Flop"


class TestDegenerateAndErrors:
    def test_product_of_lines(self):
        pp = P("abcd", [[1, 1, 0, 0], [0, 0, 1, 1]], [(0, 1), (2, 3)])
        game = two_ray_game(pp)
        assert len(game.models) == 1 and len(game.crossings) == 0
        assert game.ends[0].kind == "Fibration"
        assert game.ends[1].kind == "Fibration"

    def test_full_plane_support_rejected(self):
        torus = P("abcd", [[1, 0, -1, 0], [0, 1, 0, -1]], [(0, 1), (2, 3)])
        with pytest.raises(NotQuasiProjectiveError):
            chambers_rank2(torus)

    def test_extreme_wall_has_no_crossing(self):
        with pytest.raises(InvalidArgumentError, match="extreme"):
            wall_crossing(F2, (1, 0))

    def test_end_must_be_moving_ray(self):
        with pytest.raises(InvalidArgumentError):
            end_behavior(F2, (-2, 1))

    def test_rank_must_be_two(self):
        p1 = P("ab", [[1, 1]], [(0, 1)])
        with pytest.raises(InvalidArgumentError):
            chambers_rank2(p1)

    def test_degree_bound_env_override(self):
        os.environ["COXFORGE_DEGREE_BOUND"] = "1"
        try:
            e = end_behavior(F2, (0, 1))
            # the Veronese generators all live at level 1, so bound 1 finds them
            assert len(e.target_generators) == 7
        finally:
            del os.environ["COXFORGE_DEGREE_BOUND"]

    def test_explicit_bound_argument(self):
        game = two_ray_game(F2, degree_bound=2)
        assert len(game.models) == 2
