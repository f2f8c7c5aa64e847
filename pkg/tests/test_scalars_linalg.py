from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superhc.linalg import EchelonBasis, kernel, rank, solve_square
from superhc.scalars import I, ONE, ZERO, GaussianRational, format_rational, gq

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero = gaussians.filter(bool)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO


@given(nonzero)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE


@given(gaussians)
def test_text_round_trip(a):
    assert GaussianRational.parse(str(a)) == a
    assert GaussianRational.from_json(a.to_json()) == a


@given(gaussians, gaussians)
def test_hash_agrees_with_equality(a, b):
    if a == b:
        assert hash(a) == hash(b)


def test_parse_forms():
    assert gq("i") == I
    assert gq("-1/2") == GaussianRational(Fraction(-1, 2))
    assert gq("1/2-3/4i") == GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert gq("1/2*i") == GaussianRational(0, Fraction(1, 2))
    assert I * I == -ONE
    with pytest.raises(ValueError):
        gq("1/2j")


def test_floats_rejected():
    with pytest.raises(TypeError):
        GaussianRational(0.5)


def test_format_rational():
    assert format_rational(gq("6/4").re) == "3/2"
    assert format_rational(gq("4").re) == "4"


small_vectors = st.lists(
    st.dictionaries(st.integers(0, 4), st.builds(GaussianRational, st.integers(-3, 3)), max_size=4),
    min_size=1, max_size=6,
)


def _clean(vec):
    return {k: v for k, v in vec.items() if v}


@given(small_vectors)
def test_kernel_relations_vanish_and_rank_nullity(vectors):
    vectors = [_clean(v) for v in vectors]
    relations = kernel(vectors)
    for rel in relations:
        total = {}
        for idx, c in rel.items():
            for k, v in vectors[idx].items():
                total[k] = total.get(k, ZERO) + c * v
        assert not any(total.values())
    assert rank(vectors) + len(relations) == len(vectors)


@given(small_vectors)
def test_echelon_membership(vectors):
    vectors = [_clean(v) for v in vectors]
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    for v in vectors:
        assert basis.contains(v)
    assert basis.rank == rank(vectors)


def test_solve_square_inverts():
    m = [[gq(2), gq(1)], [gq("i"), gq(3)]]
    inv = solve_square(m)
    for i in range(2):
        for j in range(2):
            entry = sum((m[i][k] * inv[k][j] for k in range(2)), ZERO)
            assert entry == (ONE if i == j else ZERO)


def test_solve_square_singular():
    with pytest.raises(ZeroDivisionError):
        solve_square([[gq(1), gq(2)], [gq(2), gq(4)]])
