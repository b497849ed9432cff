"""Weighted blow-ups of bundles and weighted projective spaces."""

from fractions import Fraction

import pytest

from coxforge.blowup import (
    BlowupSpec,
    CIData,
    Equation,
    blow_up_weighted_bundle,
    blow_up_wps,
    blowup_map_description,
    bundle_spec_of,
    discrepancy,
    pullback_order,
    solve_exceptional_weight,
)
from coxforge.coxpres import (
    CoxPresentation,
    MonomialIdeal,
    presentations_equivalent,
    verify_certificate,
    well_form,
)
from coxforge.errors import InvalidArgumentError, SolveNotFoundError
from coxforge.galefan import (
    fan_from_presentation,
    irrelevant_ideal_from_fan,
    star_subdivision,
    weights_from_rays,
)
from coxforge.intlattice import IntMatrix, primitive_vector


def P(variables, rows, comps, stacky=False):
    return CoxPresentation(
        variables=tuple(variables),
        weights=IntMatrix(tuple(tuple(r) for r in rows)),
        irrelevant=MonomialIdeal(tuple(tuple(c) for c in comps)),
        stacky=stacky,
    )


# scroll over P^1 with fiber P(1,2,3,1,1)
F3 = P(
    "uvxyzts",
    [[1, 1, 0, -1, -2, -1, -1], [0, 0, 1, 2, 3, 1, 1]],
    [(0, 1), (2, 3, 4, 5, 6)],
)

# (1,2)-center, fiber index 2, exceptional weights b = (4,2,3,1,1)
SPEC4 = BlowupSpec(
    center=(1, 2), k=2, fiber_weights=(1, 2, 3, 1, 1), b=(4, 2, 3, 1, 1), new_var="w"
)

F_SUPP = ((1, 0, 0, 0, 1, 0, 0), (0, 0, 2, 0, 0, 1, 0))  # {uz, x^2 t}
G_SUPP = ((0, 0, 0, 2, 0, 0, 0), (0, 0, 1, 0, 1, 0, 0))  # {y^2, xz}
CI = CIData((Equation((-1, 3), F_SUPP), Equation((-2, 4), G_SUPP)))


class TestBundleBlowup:
    def test_blown_up_presentation(self):
        t = blow_up_weighted_bundle(F3, SPEC4)
        assert t.variables == tuple("uvxyztsw")
        assert t.weights.entries == (
            (1, 1, 0, -1, -2, -1, -1, 0),
            (0, 0, 1, 2, 3, 1, 1, 0),
            (3, 0, 4, 2, 0, 1, 1, -3),
        )
        assert t.irrelevant == MonomialIdeal(
            ((0, 1), (2, 3, 4, 5, 6), (0, 2, 3, 5, 6), (7, 1), (7, 4))
        )
        assert t.stacky

    def test_well_forming_the_blowup(self):
        t = blow_up_weighted_bundle(F3, SPEC4)
        wf, cert = well_form(t)
        assert verify_certificate(t.weights, cert, wf.weights)
        target = P(
            "uvxyztsw",
            [
                [1, 1, 0, -1, -2, -1, -1, 0],
                [0, 0, 1, 2, 3, 1, 1, 0],
                [1, 0, 1, 0, -1, 0, 0, -1],
            ],
            ((0, 1), (2, 3, 4, 5, 6), (0, 2, 3, 5, 6), (7, 1), (7, 4)),
            stacky=True,
        )
        assert presentations_equivalent(t, target)

    def test_trivial_exceptional_weights(self):
        spec = BlowupSpec(center=(1, 2), k=2, fiber_weights=(1, 2, 3, 1, 1), b=(1, 2, 3, 1, 1))
        t1 = blow_up_weighted_bundle(F3, spec)
        assert t1.weights.entries[2] == (3, 0, 1, 2, 0, 1, 1, -3)

    def test_bundle_spec_recovery(self):
        spec = bundle_spec_of(F3)
        assert spec.n == 1 and spec.m == 4
        assert spec.omega == (0, 1, 2, 1, 1)
        assert spec.fiber_weights == (1, 2, 3, 1, 1)


class TestMapDescription:
    def test_exceptional_substitution_exponents(self):
        t = blow_up_weighted_bundle(F3, SPEC4)
        m = blowup_map_description(t, SPEC4)
        assert m == (
            ("u", Fraction(1)),
            ("v", Fraction(0)),
            ("x", Fraction(4, 3)),
            ("y", Fraction(2, 3)),
            ("z", Fraction(0)),
            ("t", Fraction(1, 3)),
            ("s", Fraction(1, 3)),
        )

    def test_spec_recovered_when_omitted(self):
        spec = BlowupSpec(center=(1, 2), k=2, fiber_weights=(1, 2, 3, 1, 1), b=(1, 2, 3, 1, 1))
        t1 = blow_up_weighted_bundle(F3, spec)
        m1 = dict(blowup_map_description(t1))
        assert m1["z"] == Fraction(0)
        assert m1["x"] == Fraction(1, 3)


class TestWpsBlowup:
    def test_elliptic_ambient(self):
        ell = blow_up_wps((9, 8, 6, 1, 1), k=0, alpha=3, b=(2, 6, 1, 1))
        assert ell.weights.entries == ((3, 0, -2, -6, -1, -1), (0, 9, 8, 6, 1, 1))
        assert ell.irrelevant == MonomialIdeal(((0, 1), (2, 3, 4, 5)))
        wf_ell, _ = well_form(ell)
        assert wf_ell.weights.entries == ((1, 3, 2, 0, 0, 0), (0, 9, 8, 6, 1, 1))
        assert blowup_map_description(ell) == (
            ("x0", Fraction(0)),
            ("x1", Fraction(2, 3)),
            ("x2", Fraction(2)),
            ("x3", Fraction(1, 3)),
            ("x4", Fraction(1, 3)),
        )

    def test_blowup_of_cone_point(self):
        # P(1,1,1,2) blown up at the weight-2 point: quadric cone bundle
        bl = blow_up_wps((2, 1, 1, 1), k=0, alpha=1, b=(1, 1, 1))
        wf_bl, _ = well_form(bl)
        f2 = P("xyztu", [[1, 1, 1, 0, -2], [0, 0, 0, 1, 1]], [(0, 1, 2), (3, 4)])
        assert presentations_equivalent(wf_bl, f2)

    def test_blowup_of_smooth_point_matches_star_subdivision(self):
        p3 = P(("x0", "x1", "x2", "x3"), [[1, 1, 1, 1]], [(0, 1, 2, 3)])
        fan = fan_from_presentation(p3)
        w = primitive_vector(
            tuple(
                sum(fan.rays[i][c] for i in (1, 2, 3))
                for c in range(fan.lattice_dim)
            )
        )
        sub = star_subdivision(fan, w)
        q = CoxPresentation(
            variables=tuple(f"r{i}" for i in range(sub.num_rays)),
            weights=weights_from_rays(sub.ray_matrix()),
            irrelevant=irrelevant_ideal_from_fan(sub),
            stacky=False,
        )
        wf_p3, _ = well_form(blow_up_wps((1, 1, 1, 1), k=0, alpha=1, b=(1, 1, 1)))
        assert presentations_equivalent(wf_p3, q)


class TestPullbackOrder:
    def test_orders_of_equation_supports(self):
        assert pullback_order(SPEC4, F_SUPP) == 3
        assert pullback_order(SPEC4, G_SUPP) == 4

    def test_monomial_free_of_center(self):
        assert pullback_order(SPEC4, ((0, 1, 0, 0, 0, 0, 0),)) == 0

    def test_order_is_min_over_support(self):
        single = pullback_order(SPEC4, (F_SUPP[0],))
        other = pullback_order(SPEC4, (F_SUPP[1],))
        assert pullback_order(SPEC4, F_SUPP) == min(single, other)

    def test_empty_support_rejected(self):
        with pytest.raises(InvalidArgumentError):
            pullback_order(SPEC4, ())


class TestDiscrepancy:
    def test_complete_intersection_surface(self):
        assert discrepancy(SPEC4, CI) == Fraction(1, 3)

    def test_heavier_exceptional_weight(self):
        spec7 = BlowupSpec((1, 2), 2, (1, 2, 3, 1, 1), (7, 2, 3, 1, 1))
        assert discrepancy(spec7, CI) == Fraction(4, 3)

    def test_smooth_point_is_classical(self):
        triv = BlowupSpec((1, 0), 0, (1, 1, 1), (1, 1, 1))
        assert discrepancy(triv, CIData(())) == 2

    def test_linearity_in_unconstrained_weight(self):
        base = discrepancy(SPEC4, CI)
        spec_t = BlowupSpec((1, 2), 2, (1, 2, 3, 1, 1), (4, 2, 3, 4, 1))
        assert discrepancy(spec_t, CI) == base + 1

    def test_explicit_orders_accepted(self):
        ci_orders = CIData((Equation((-1, 3), order=3), Equation((-2, 4), order=4)))
        assert discrepancy(SPEC4, ci_orders) == Fraction(1, 3)


class TestSolveExceptionalWeight:
    PATTERN = BlowupSpec((1, 2), 2, (1, 2, 3, 1, 1), (None, 2, 3, 1, 1))

    def test_known_solutions(self):
        assert solve_exceptional_weight(self.PATTERN, CI, Fraction(1, 3)) == 4
        assert solve_exceptional_weight(self.PATTERN, CI, Fraction(4, 3)) == 7

    def test_round_trip_with_discrepancy(self):
        target = discrepancy(SPEC4, CI)
        assert solve_exceptional_weight(self.PATTERN, CI, target) == 4

    def test_unreachable_target(self):
        with pytest.raises(SolveNotFoundError):
            solve_exceptional_weight(self.PATTERN, CI, Fraction(-5), bound=50)


class TestValidation:
    def test_congruence_of_unknown_weight(self):
        with pytest.raises(InvalidArgumentError):
            BlowupSpec((1, 2), 2, (1, 2, 3, 1, 1), (2, 2, 3, 1, 1))

    def test_wps_index_range(self):
        with pytest.raises(InvalidArgumentError):
            blow_up_wps((1, 1, 1), k=5, alpha=1, b=())

    def test_at_most_one_unknown(self):
        with pytest.raises(InvalidArgumentError):
            BlowupSpec((1, 2), 2, (1, 2, 3, 1, 1), (None, None, 3, 1, 1))
