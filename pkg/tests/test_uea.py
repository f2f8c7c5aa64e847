from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superhc.liealg import bracket, build_gl, build_osp
from superhc.pairs import realize_pair
from superhc.scalars import GaussianRational
from superhc.uea import (
    OrderingMismatch,
    PBWBasis,
    PBWElement,
    casimir,
    filtration_degree,
    in_left_ideal_Uk,
    multiply,
    normal_order,
)

ALGEBRAS = {
    "gl(1|1)": build_gl(1, 1),
    "gl(2|1)": build_gl(2, 1),
    "osp(1|2)": build_osp(1, 1),
    "osp(2|2)": build_osp(2, 1),
}
PAIR = realize_pair("osp2-2.osp1-2")


def words(dim, max_len=3):
    return st.lists(st.integers(0, dim - 1), max_size=max_len)


def elements(basis, max_len=3):
    term = st.tuples(st.integers(-3, 3), words(len(basis), max_len))
    return st.lists(term, min_size=1, max_size=3).map(
        lambda ts: sum((normal_order(w, basis).scale(c) for c, w in ts), PBWElement(basis, {}))
    )


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_casimir_is_central(name):
    alg = ALGEBRAS[name]
    basis = PBWBasis.of_algebra(alg)
    omega = casimir(alg, basis)
    for i in range(alg.dim):
        x = PBWElement.letter(basis, i)
        assert x * omega == omega * x


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_even_casimir_commutes_with_even_part(name):
    alg = ALGEBRAS[name]
    basis = PBWBasis.of_algebra(alg)
    even = [b for i, b in enumerate(alg.basis) if alg.parity(i) == 0]
    omega0 = casimir(alg, basis, elements=even)
    for i in range(alg.dim):
        if alg.parity(i) == 0:
            x = PBWElement.letter(basis, i)
            assert x * omega0 == omega0 * x


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_odd_square_is_half_bracket(name):
    alg = ALGEBRAS[name]
    basis = PBWBasis.of_algebra(alg)
    for i, x in enumerate(alg.basis):
        if alg.parity(i):
            half = PBWElement.from_matrix(basis, bracket(x, x)).scale(GaussianRational(Fraction(1, 2)))
            assert normal_order([i, i], basis) == half


@given(st.sampled_from(sorted(ALGEBRAS)), st.data())
def test_commutator_relation(name, data):
    alg = ALGEBRAS[name]
    basis = PBWBasis.of_algebra(alg)
    i = data.draw(st.integers(0, alg.dim - 1))
    j = data.draw(st.integers(0, alg.dim - 1))
    sign = -1 if (alg.parity(i) and alg.parity(j)) else 1
    lhs = normal_order([i, j], basis) - normal_order([j, i], basis).scale(sign)
    assert lhs == PBWElement.from_matrix(basis, bracket(alg.basis[i], alg.basis[j]))


@given(st.data())
def test_truncated_product_drops_the_left_ideal(data):
    basis = PAIR.pbw
    u = data.draw(elements(basis, 2))
    v = data.draw(elements(basis, 2))
    honest = u * v
    assert multiply(u, v, truncate=True) == honest.modulo_k()
    assert in_left_ideal_Uk(honest - honest.modulo_k(), PAIR)


@given(st.data())
def test_associativity_in_iwasawa_ordering(data):
    basis = PAIR.pbw
    u, v, w = (data.draw(elements(basis, 2)) for _ in range(3))
    assert (u * v) * w == u * (v * w)


def test_ideal_test_needs_iwasawa_ordering():
    basis = PBWBasis.of_algebra(ALGEBRAS["gl(1|1)"])
    with pytest.raises(OrderingMismatch):
        in_left_ideal_Uk(PBWElement.one(basis))


def test_filtration_degree_counts_odd_letters_as_half():
    alg = ALGEBRAS["gl(1|1)"]
    basis = PBWBasis.of_algebra(alg)
    odd = [i for i in range(alg.dim) if alg.parity(i)]
    even = [i for i in range(alg.dim) if not alg.parity(i)]
    assert filtration_degree(normal_order([even[0], odd[0]], basis)) == Fraction(3, 2)
    assert filtration_degree(PBWElement(basis, {})) == 0


def test_mixed_orderings_rejected():
    a = PBWBasis.of_algebra(ALGEBRAS["gl(1|1)"])
    b = PBWBasis.of_algebra(ALGEBRAS["gl(1|1)"])
    with pytest.raises(OrderingMismatch):
        normal_order([PBWElement.one(a)], b)
