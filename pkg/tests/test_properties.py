"""Randomized property suites plus a few hypothesis-driven invariants."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxforge.coxpres import MonomialIdeal, minimal_transversals, wps_well_form
from coxforge.intlattice import (
    IntMatrix,
    hnf_canonical,
    minor_gcd,
    primitive_vector,
    rank,
    smith_diagonal,
)
from coxforge.singular import QuotientSingularity, normalize_type

from prop_suites import ALL_SUITES


@pytest.mark.parametrize("name,suite", ALL_SUITES, ids=[n for n, _ in ALL_SUITES])
def test_suite(name, suite):
    assert suite() >= 500


# --------------------------------------------------------------------------
# hypothesis invariants

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-20, 20), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
).map(lambda rows: IntMatrix(tuple(tuple(r) for r in rows)))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_hnf_canonical_idempotent(m):
    h = hnf_canonical(m)
    assert hnf_canonical(h) == h


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_transpose_invariant(m):
    assert smith_diagonal(m) [: min(m.rows, m.cols)] == smith_diagonal(
        m.transpose()
    )[: min(m.rows, m.cols)]


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_divisibility_chain(m):
    diag = smith_diagonal(m)
    assert all(s >= 0 for s in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)


@settings(max_examples=200, deadline=None)
@given(matrices, st.integers(2, 5))
def test_minor_gcd_scales_homogeneously(m, f):
    # every r x r minor of f*m is f^r times the original minor
    scaled = IntMatrix(tuple(tuple(f * e for e in row) for row in m.entries))
    for r in range(1, min(m.rows, m.cols) + 1):
        assert minor_gcd(scaled, r) == f**r * minor_gcd(m, r)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6))
def test_primitive_vector_invariants(v):
    from math import gcd

    if all(x == 0 for x in v):
        return
    p = primitive_vector(tuple(v))
    assert gcd(*(abs(x) for x in p)) == 1
    # proportionality: cross products vanish
    for i in range(len(v)):
        for j in range(len(v)):
            assert v[i] * p[j] == v[j] * p[i]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 60), min_size=2, max_size=7))
def test_wps_well_form_idempotent_and_unimodal(a):
    w = wps_well_form(tuple(a))
    assert wps_well_form(w) == w
    assert len(w) == len(a)
    assert all(x >= 1 for x in w)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 40), st.lists(st.integers(-40, 40), min_size=1, max_size=5))
def test_normalize_type_idempotent(index, weights):
    q = QuotientSingularity(index, tuple(weights))
    once = normalize_type(q)
    assert normalize_type(once) == once
    assert once.index >= 1


antichains = st.lists(
    st.sets(st.integers(0, 6), min_size=1, max_size=4).map(lambda s: tuple(sorted(s))),
    min_size=1,
    max_size=4,
).filter(
    lambda comps: all(
        not (set(a) <= set(b)) for i, a in enumerate(comps) for j, b in enumerate(comps) if i != j
    )
)


@settings(max_examples=200, deadline=None)
@given(antichains)
def test_transversal_involution(comps):
    ideal = MonomialIdeal(tuple(comps))
    gens = ideal.generators()
    back = minimal_transversals(gens)
    assert frozenset(map(frozenset, back)) == frozenset(
        map(frozenset, ideal.components)
    )


@settings(max_examples=200, deadline=None)
@given(antichains)
def test_generators_hit_every_component(comps):
    ideal = MonomialIdeal(tuple(comps))
    for gen in ideal.generators():
        assert all(set(gen) & set(c) for c in ideal.components)
