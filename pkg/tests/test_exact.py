from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cendcohom.errors import NoSolution
from cendcohom.exact import (D, ONE, DPoly, binom, falling, mat_mul, mat_vec, rat, rat_str, rref,
                             solve_linear)

from conftest import dpolys, small_rat


def test_rat_parsing():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(2) == 2
    assert rat_str(Fraction(-3, 7)) == "-3/7"
    assert rat_str(Fraction(4)) == "4"


def test_binom_and_falling():
    assert [binom(5, k) for k in range(7)] == [1, 5, 10, 10, 5, 1, 0]
    assert falling(5, 0) == 1
    assert falling(5, 3) == 60
    assert falling(2, 3) == 0


def test_dpoly_basics():
    p = D * D + ONE.scale(3)
    assert p.degree() == 2
    assert p[2] == 1 and p[0] == 3 and p[1] == 0
    assert not (p - p)
    assert DPoly().degree() is None


@given(dpolys(), dpolys(), dpolys())
def test_dpoly_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == DPoly()


@given(dpolys())
def test_dpoly_json_round_trip(p):
    assert DPoly.from_json(p.to_json()) == p


@given(st.lists(st.lists(small_rat, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rref_spans_input(rows):
    space = rref(rows, dim=3)
    for r in rows:
        assert space.contains(r)
    assert space.rank <= min(len(rows), 3)


@given(st.lists(st.lists(small_rat, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small_rat, min_size=3, max_size=3))
def test_solve_linear_consistent(A, x):
    b = mat_vec(A, x)
    y = solve_linear(A, b)
    assert mat_vec(A, y) == b


def test_solve_linear_inconsistent():
    with pytest.raises(NoSolution):
        solve_linear([[1, 1], [2, 2]], [1, 3])


def test_mat_mul_identity():
    A = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    assert mat_mul(A, [[1, 0], [0, 1]]) == A


@given(dpolys(), dpolys(), small_rat)
def test_coefficients_stay_exact(p, q, s):
    # integral values are stored as int, everything else as Fraction; never float
    for r in (p * q, p + q, p.scale(s), (p - q).shift(2)):
        for _, c in r.items():
            assert type(c) in (int, Fraction)
            assert type(c) is int or c.denominator != 1


def test_int_and_fraction_forms_agree():
    a = DPoly({0: Fraction(4, 2), 1: "6/3"})
    b = DPoly({0: 2, 1: 2})
    assert a == b and hash(a) == hash(b)
    assert a.to_json() == [[0, "2"], [1, "2"]]
