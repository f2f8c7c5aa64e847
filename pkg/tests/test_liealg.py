import pytest
from hypothesis import given
from hypothesis import strategies as st

from superhc.liealg import (
    HomogeneityError,
    SuperMatrix,
    bracket,
    build_gl,
    build_osp,
    root_decomposition,
    supertrace_form,
)
from superhc.scalars import ONE, ZERO, GaussianRational

ALGEBRAS = {
    "gl(1|1)": build_gl(1, 1),
    "gl(2|1)": build_gl(2, 1),
    "gl(2|2)": build_gl(2, 2),
    "osp(1|2)": build_osp(1, 1),
    "osp(2|2)": build_osp(2, 1),
    "osp(3|2)": build_osp(3, 1),
    "osp(1|4)": build_osp(1, 2),
}


def osp_dim(m, n):
    return m * (m - 1) // 2 + n * (n + 1) // 2 + m * n


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 2), (1, 3)])
def test_gl_dimension(m, n):
    alg = build_gl(m, n)
    assert alg.dim == (m + n) ** 2
    assert sum(alg.parity(i) for i in range(alg.dim)) == 2 * m * n


@pytest.mark.parametrize("m,k", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (4, 1)])
def test_osp_dimension(m, k):
    assert build_osp(m, k).dim == osp_dim(m, 2 * k)


def _homogeneous_element(alg, data, parity):
    idx = [i for i in range(alg.dim) if alg.parity(i) == parity]
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=len(idx), max_size=len(idx)))
    return alg.combination({i: GaussianRational(c) for i, c in zip(idx, coeffs) if c})


@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 1), st.integers(0, 1), st.data())
def test_bracket_is_super_antisymmetric_and_closed(name, px, py, data):
    alg = ALGEBRAS[name]
    x = _homogeneous_element(alg, data, px)
    y = _homogeneous_element(alg, data, py)
    if x.is_zero() or y.is_zero():
        return
    sign = -1 if (px and py) else 1
    assert bracket(x, y) == bracket(y, x).scale(-sign)
    assert alg.contains(bracket(x, y))
    assert bracket(x, y).supertrace() == ZERO


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_dual_basis(name):
    alg = ALGEBRAS[name]
    for i, xd in enumerate(alg.dual_basis):
        for j, x in enumerate(alg.basis):
            assert supertrace_form(x, xd) == (ONE if i == j else ZERO)


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_root_vectors_are_eigenvectors(name):
    alg = ALGEBRAS[name]
    datum = root_decomposition(alg)
    assert sum(len(r.basis_indices) for r in datum.roots) + len(datum.cartan_indices) == alg.dim
    for root in datum.roots:
        assert root.parity == alg.parity(root.basis_indices[0])
        for pos, symbol in enumerate(alg.weight_names):
            h = alg.cartan_element(symbol)
            for idx in root.basis_indices:
                e = alg.basis[idx]
                assert bracket(h, e) == e.scale(root.weight[pos])


def test_inhomogeneous_bracket_rejected():
    x = SuperMatrix.unit(1, 1, 0, 0) + SuperMatrix.unit(1, 1, 0, 1)
    with pytest.raises(HomogeneityError):
        bracket(x, x)


def test_supertranspose_reverses_products():
    x = SuperMatrix.unit(2, 1, 0, 2)
    y = SuperMatrix.unit(2, 1, 2, 1)
    # (xy)^st = (-1)^{|x||y|} y^st x^st
    assert (x @ y).supertranspose() == (y.supertranspose() @ x.supertranspose()).scale(-1)
