import pytest
from hypothesis import given
from hypothesis import strategies as st

from superhc.polynomial import Polynomial, PolynomialSchemaError
from superhc.scalars import GaussianRational

VARS = ("t1", "t2")

coefficients = st.builds(GaussianRational, st.integers(-4, 4), st.integers(-2, 2))
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exponents, coefficients, max_size=5).map(lambda t: Polynomial(VARS, t))
points = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(polys, polys, points)
def test_evaluation_is_a_ring_map(p, q, point):
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


@given(polys, polys)
def test_degree_of_product(p, q):
    if not p.is_zero() and not q.is_zero():
        assert (p * q).degree == p.degree + q.degree


@given(polys)
def test_json_round_trip(p):
    assert Polynomial.from_json(p.to_json()) == p


@given(polys, coefficients.filter(bool))
def test_proportional_to_recovers_scalar(p, c):
    if p.is_zero():
        return
    assert (p * c).proportional_to(p) == c


@given(polys, points)
def test_substitute_constants_is_evaluation(p, point):
    images = [Polynomial.constant(VARS, v) for v in point]
    assert p.substitute(images) == Polynomial.constant(VARS, p.evaluate(point))


def test_monic_and_printing():
    t = Polynomial.variable(("t",), "t")
    p = (t * 2 - 2) * t
    monic, scalar = p.monic()
    assert scalar == GaussianRational(2)
    assert str(monic) == "t^2 - t"


def test_variable_mismatch_rejected():
    with pytest.raises(ValueError):
        Polynomial(("t",), {(1, 0): 1})
    with pytest.raises(KeyError):
        Polynomial.variable(("t",), "s")


def test_bad_json():
    with pytest.raises(PolynomialSchemaError):
        Polynomial.from_json({"vars": ["t"]})
