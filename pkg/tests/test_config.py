import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from lineconf import catalog
from lineconf.config import (LineConfiguration, are_isomorphic, automorphism_group_order,
                             collinear, compose, coplanar, coplanarity_graph, disjoint_union,
                             identity_map, inverse, is_isomorphism, is_morphism,
                             isolated_points, point_orbit, product_configuration, profile,
                             validate)


def random_perm(n: int, seed: int) -> list[int]:
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    return perm


def test_validate_rejects_two_shared_points():
    bad = LineConfiguration(tuple(range(4)), ((0, 1, 2), (0, 1, 3)))
    rep = validate(bad)
    assert not rep.valid and rep.bad_pairs


def test_validate_rejects_degenerate_line():
    rep = validate(LineConfiguration(tuple(range(3)), ((0, 0, 1),)))
    assert not rep.valid


@pytest.mark.parametrize("name", ["fano", "line", "q-minus3", "schlaefli", "p3", "p1^3"])
def test_catalog_entries_validate(name):
    c = catalog.by_name(name)
    assert validate(c)
    assert sum(c.degree(p) for p in range(c.n)) == 3 * len(c.lines)


def test_collinear_requires_distinct_points():
    f = catalog.fano()
    assert collinear(f, 0, 1)
    with pytest.raises(ValueError):
        collinear(f, 0, 0)


def test_coplanar_in_projective_space():
    p3 = catalog.projective_configuration(3)
    l1 = p3.lines[0]
    meeting = next(l for l in p3.lines if l != l1 and len(set(l) & set(l1)) == 1)
    disjoint = next(l for l in p3.lines if not set(l) & set(l1))
    assert coplanar(p3, l1, l1)
    assert coplanar(p3, l1, meeting)
    assert not coplanar(p3, l1, disjoint)


def test_coplanar_fails_in_product():
    # two meeting lines of (P^1)^2 never span a Fano plane
    sq = catalog.p1_power(2)
    p = 0
    a, b = (sq.lines[k] for k in sq.lines_through[p])
    assert not coplanar(sq, a, b)


def test_no_fano_through_schlaefli_point():
    s = catalog.schlaefli_configuration()
    through, edges = coplanarity_graph(s, 0)
    assert len(through) == 5 and edges == []


def test_profile_distances_on_isolated_points():
    prof = profile(isolated_points(3))
    assert not prof.connected
    assert prof.dist[0][1] == math.inf


def test_morphism_checks():
    f = catalog.fano()
    line = catalog.single_line()
    emb = list(f.lines[0])
    assert is_morphism(emb, line, f)
    with pytest.raises(ValueError):
        is_morphism([0, 0, 1], line, f)
    assert is_morphism(identity_map(f), f, f)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_aut_order_is_relabeling_invariant(seed):
    s = catalog.schlaefli_configuration()
    assert automorphism_group_order(s.relabel(random_perm(s.n, seed))) == 51840


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_isomorphism_is_an_equivalence(s1, s2):
    c = catalog.quadric_configuration(3)
    a = c.relabel(random_perm(c.n, s1))
    b = c.relabel(random_perm(c.n, s2))
    f = are_isomorphic(c, a)
    g = are_isomorphic(a, b)
    assert is_isomorphism(identity_map(c), c, c)
    assert is_isomorphism(inverse(f), a, c)
    assert is_isomorphism(compose(g, f), c, b)


def test_non_isomorphic_pairs():
    assert are_isomorphic(catalog.p1_power(3), catalog.quadric_configuration(3)) is None
    assert are_isomorphic(catalog.fano(), catalog.p1_power(2)) is None


def test_point_orbit():
    assert point_orbit(catalog.quadric_configuration(3), 0) == set(range(27))
    lp = catalog.by_name("line+point")
    assert len(point_orbit(lp, 0)) < lp.n


def test_product_and_union():
    with pytest.raises(ValueError):
        product_configuration([])
    line = catalog.single_line()
    assert product_configuration([line]) is line
    sq = product_configuration([line, line])
    assert (sq.n, len(sq.lines)) == (9, 6)
    u = disjoint_union(line, isolated_points(1))
    assert (u.n, len(u.lines)) == (4, 1)
    assert automorphism_group_order(sq) == 72
