import pytest

from superhc.liealg import bracket
from superhc.linalg import EchelonBasis
from superhc.pairs import (
    NotInterlaced,
    NotRealizable,
    NotSpecial,
    catalog,
    find_pair,
    interlacing_automorphism,
    is_interlaced,
    realize_pair,
    twisted_subalgebra,
)
from superhc.scalars import I, GaussianRational

ROWS = catalog()
REALIZED = [d for d in ROWS if d.realizable]


def _span(mats):
    span = EchelonBasis()
    for x in mats:
        span.add(x.entries)
    return span


def test_catalog_shape():
    assert len(ROWS) == 144
    assert len(REALIZED) == 138
    assert len({d.pair_id for d in ROWS}) == len(ROWS)
    assert all(not d.realizable for d in ROWS if d.family == "exceptional")


def test_unknown_pair():
    with pytest.raises(KeyError):
        find_pair("gl9-9.nothing")


def test_exceptional_rows_are_not_realized():
    desc = next(d for d in ROWS if d.family == "exceptional")
    with pytest.raises(NotRealizable):
        realize_pair(desc)


@pytest.mark.parametrize("pair_id", [d.pair_id for d in REALIZED])
def test_verdicts_match_table(pair_id):
    desc = find_pair(pair_id)
    pair = realize_pair(desc)
    assert (pair.iwasawa is not None) == bool(desc.iwasawa_expected)
    assert is_interlaced(pair) == bool(desc.interlaced_expected)
    assert pair.rank == desc.rank
    assert len(pair.kprime_basis) == len(pair.k0) + len(pair.p1)


@pytest.mark.parametrize("pair_id", ["gl2-1.gl11xgl1", "osp2-4.osp1-4", "gl4-1.gl21xgl2"])
def test_iwasawa_is_a_direct_sum(pair_id):
    pair = realize_pair(pair_id)
    iw = pair.iwasawa
    groups = pair.pbw.groups
    assert groups.count("a") == pair.rank
    # n letters come first, k letters last
    order = "".join(g for g in groups)
    assert order == "n" * order.count("n") + "a" * order.count("a") + "k" * order.count("k")
    assert len(iw.n_indices) + len(iw.a_indices) + len(iw.k_indices) == pair.alg.dim


@pytest.mark.parametrize("pair_id", ["osp2-4.osp1-4", "osp1-4.osp1-2xsp2", "gl4-1.gl21xgl2"])
def test_reflections_are_involutions(pair_id):
    datum = realize_pair(pair_id).restricted
    for root in datum.even_class:
        if not datum.pairing(root.value, root.value):
            continue
        refl = datum.reflection(root.value)
        assert refl(refl(root.value)) == tuple(GaussianRational.coerce(x) for x in root.value)
        assert refl(root.value) == tuple(-GaussianRational.coerce(x) for x in root.value)


def test_non_interlaced_pair_refuses_phi():
    pair = realize_pair("gl3-1.gl21xgl1")
    with pytest.raises(NotInterlaced):
        interlacing_automorphism(pair)


SPECIAL = [d.pair_id for d in REALIZED if d.special]


@pytest.mark.parametrize("pair_id", SPECIAL)
def test_special_phi_fixes_even_part(pair_id):
    pair = realize_pair(pair_id)
    phi = interlacing_automorphism(pair)
    assert phi.method == "grading"
    for idx, x in enumerate(pair.alg.basis):
        if pair.alg.parity(idx) == 0:
            assert phi(x) == x


@pytest.mark.parametrize("pair_id", SPECIAL)
@pytest.mark.parametrize("c", [GaussianRational(2), I, GaussianRational(1, 1)])
def test_twisted_subalgebra_is_closed(pair_id, c):
    pair = realize_pair(pair_id)
    sub = twisted_subalgebra(pair, c)
    assert len(sub) == len(pair.k_basis)
    span = _span(sub)
    for x in sub:
        for y in sub:
            assert span.contains(bracket(x, y).entries)


def test_twist_at_i_gives_kprime():
    pair = realize_pair("osp2-2.osp1-2")
    assert _span(twisted_subalgebra(pair, I)).rank == _span(pair.kprime_basis).rank
    joint = _span(twisted_subalgebra(pair, I) + pair.kprime_basis)
    assert joint.rank == len(pair.kprime_basis)


def test_twist_rejects_bad_input():
    with pytest.raises(NotSpecial):
        twisted_subalgebra(realize_pair("gl2-1.gl11xgl1"), 2)
    with pytest.raises(ValueError):
        twisted_subalgebra(realize_pair("osp2-2.osp1-2"), 0)
