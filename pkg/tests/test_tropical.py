from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ultratrop.tropical import (
    BOTTOM,
    TropMatrix,
    fmt_scalar,
    leq,
    oplus,
    otimes,
    residuate,
    scalar,
    span_membership,
    trop_combine,
    trop_dot,
    trop_mat_vec,
    vec_leq,
    vector,
)

finite = st.fractions(min_value=-50, max_value=50, max_denominator=6)
scalars = st.one_of(finite, st.just(BOTTOM))


@given(scalars, scalars, scalars)
def test_semiring_axioms(a, b, c):
    assert oplus(a, b) == oplus(b, a)
    assert oplus(oplus(a, b), c) == oplus(a, oplus(b, c))
    assert otimes(a, b) == otimes(b, a)
    assert otimes(otimes(a, b), c) == otimes(a, otimes(b, c))
    assert otimes(a, oplus(b, c)) == oplus(otimes(a, b), otimes(a, c))
    assert oplus(a, a) == a


@given(scalars)
def test_identities(a):
    assert oplus(a, BOTTOM) == a
    assert otimes(a, Fraction(0)) == a
    assert otimes(a, BOTTOM) is BOTTOM
    assert leq(BOTTOM, a)


def test_bottom_is_singleton_and_not_a_number():
    assert scalar("-inf") is BOTTOM
    assert scalar(float("-inf")) is BOTTOM
    with pytest.raises(TypeError):
        BOTTOM + 1
    assert fmt_scalar(BOTTOM) == "-inf"


def test_scalar_parsing_is_exact():
    assert scalar(0.1) == Fraction(1, 10)
    assert scalar("29/2") == Fraction(29, 2)
    with pytest.raises(ValueError):
        vector([])


def test_dot_reports_all_maximizers():
    val, arg = trop_dot([0, 2, BOTTOM, 1], [3, 1, 5, 2])
    assert val == 3 and arg == {0, 1, 3}
    val, arg = trop_dot([BOTTOM, 1], [4, BOTTOM])
    assert val is BOTTOM and arg == frozenset()
    with pytest.raises(ValueError):
        trop_dot([1], [1, 2])


def test_mat_vec_and_identity():
    v = vector([3, BOTTOM, -1])
    assert trop_mat_vec(TropMatrix.identity(3), v) == v
    A = TropMatrix(((0, 1, BOTTOM), (BOTTOM, BOTTOM, 2)))
    assert A.shape == (2, 3)
    assert trop_mat_vec(A, vector([1, 1, 1])) == (2, 3)


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        TropMatrix(((0, 1), (2,)))


@given(st.lists(st.tuples(finite, finite, finite), min_size=1, max_size=4),
       st.lists(st.one_of(finite, st.just(BOTTOM)), min_size=4, max_size=4))
def test_combinations_are_in_span(gens, coeffs):
    coeffs = coeffs[:len(gens)]
    if all(c is BOTTOM for c in coeffs):
        coeffs[0] = Fraction(0)
    v = trop_combine(gens, coeffs)
    ok, witness = span_membership(v, gens)
    assert ok
    # the residuated coefficients are the largest that stay below v
    for lam, c in zip(witness, coeffs):
        assert leq(c, lam)
    assert vec_leq(trop_combine(gens, witness), v)


def test_residuate_and_nonmember():
    assert residuate((3, 5), (1, 1)) == 2
    assert residuate((BOTTOM, 5), (1, 1)) is BOTTOM
    ok, _ = span_membership((0, 1), [(0, 0)])
    assert not ok
    assert span_membership((0, 1), []) == (False, ())
    with pytest.raises(ValueError):
        span_membership((BOTTOM, BOTTOM), [(0, 0)])
