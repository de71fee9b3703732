import itertools

import pytest
from hypothesis import given, strategies as st

from lineconf.gf2geom import (ProjectivePoint, QuadraticForm, classify_quadric,
                              enumerate_projective_points, hyperbolic_point_count,
                              lines_in_point_set, minus_quadric, point_count_formula,
                              point_set_schema, variety_points)


def brute_zeros(form: QuadraticForm) -> int:
    return sum(1 for v in itertools.product((0, 1), repeat=form.nvars)
               if any(v) and form.value(v) == 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_minus_quadric_count_matches_brute_force(n):
    form = minus_quadric(n)
    assert len(variety_points(form).points) == brute_zeros(form) == point_count_formula(n)


def test_point_count_values():
    assert [point_count_formula(n) for n in (1, 2, 3, 4)] == [0, 5, 27, 119]


def test_hyperbolic_count_brute_force():
    # x1x2 + x3x4 on P^3
    form = QuadraticForm.from_monomials(3, [(1, 2), (3, 4)])
    assert brute_zeros(form) == 9 == hyperbolic_point_count(2)
    assert classify_quadric(form).tag == "hyperbolic"


def test_classify_elliptic_and_degenerate():
    assert classify_quadric(minus_quadric(3)).tag == "elliptic"
    degenerate = QuadraticForm.from_monomials(3, [(1, 2), (3, 3)])
    assert classify_quadric(degenerate).tag == "degenerate"
    with pytest.raises(ValueError):
        classify_quadric(QuadraticForm.from_monomials(2, [(1, 2)]))


@pytest.mark.parametrize("n,expected", [(2, 0), (3, 45), (4, 1071)])
def test_line_counts(n, expected):
    pts = variety_points(minus_quadric(n))
    lines = lines_in_point_set(pts)
    assert len(lines) == expected
    # each point of Q_2n^- lies on |Q_{2n-2}^-| lines
    assert 3 * len(lines) == len(pts.points) * point_count_formula(n - 1)


def test_projective_plane_line_count():
    pts = enumerate_projective_points(3)
    assert len(pts) == 15
    # lines of P^3(F2): (2^4-1)(2^4-2)/(3*2)
    from lineconf.gf2geom import PointSet
    assert len(lines_in_point_set(PointSet(3, tuple(pts)))) == (16 - 1) * (16 - 2) // 6


@given(st.integers(1, 7), st.data())
def test_lines_closed_under_addition(n, data):
    a = data.draw(st.integers(1, 2 ** (n + 1) - 1))
    b = data.draw(st.integers(1, 2 ** (n + 1) - 1))
    p, q = ProjectivePoint.from_int(a, n), ProjectivePoint.from_int(b, n)
    assert p.to_int() == a
    if a != b:
        assert (p + q).to_int() == a ^ b


def test_enumeration_is_deterministic():
    a = point_set_schema(variety_points(minus_quadric(3)))
    b = point_set_schema(variety_points(minus_quadric(3)))
    assert a == b
    ints = [ProjectivePoint(tuple(p)).to_int() for p in a["points"]]
    assert ints == sorted(ints)
