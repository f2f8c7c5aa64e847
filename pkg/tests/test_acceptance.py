"""Acceptance suite, one group of tests per numbered criterion.

Each test carries ``@pytest.mark.criterion(n, title)``; conftest prints a single
PASS/FAIL line per criterion at the end of the run.  Expected polynomials in
criteria 1-3 are written out by hand here, independent of the catalog goldens.
"""

import random
from itertools import combinations_with_replacement
from math import comb

import pytest

from superhc.hc import (
    NoIwasawa,
    casimir_in_pair,
    even_casimir,
    ghost_generator,
    ghost_hc,
    ghost_product,
    hbar,
    hc_project,
    k_witness,
    odd_root_representatives,
)
from superhc.liealg import bracket, build_gl, build_osp, supertrace_form
from superhc.linalg import EchelonBasis, rank
from superhc.pairs import (
    ConstructionFailed,
    catalog,
    interlacing_automorphism,
    is_interlaced,
    realize_pair,
)
from superhc.polynomial import Polynomial
from superhc.scalars import ONE, GaussianRational
from superhc.uea import PBWBasis, PBWElement, in_left_ideal_Uk, normal_order
from superhc.verify import (
    check_center_conditions,
    check_conjecture,
    check_even_pairs,
    check_reduction,
    check_vanishing,
    ghost_images,
    gl_product_form,
    vanishing_roots,
)

SEED = 20261015
MAX_DIM = 40


def t_poly(*shifts, var="t"):
    """prod (t + s) in the single variable ``var``."""
    t = Polynomial.variable((var,), var)
    out = Polynomial.constant((var,), 1)
    for s in shifts:
        out = out * (t + s)
    return out


def assert_proportional(computed, expected):
    scalar = computed.proportional_to(expected)
    assert scalar is not None and scalar, f"{computed} is not a nonzero multiple of {expected}"
    return scalar


def rank_one_rows():
    return [d for d in catalog() if d.realizable and d.rank == 1]


def rank_one_iwasawa_ids():
    return [d.pair_id for d in rank_one_rows() if d.iwasawa_expected]


def small_rows():
    return [d for d in catalog() if d.realizable and d.dim <= MAX_DIM]


_PAIRS: dict = {}


def pair_of(pair_id):
    if pair_id not in _PAIRS:
        _PAIRS[pair_id] = realize_pair(pair_id)
    return _PAIRS[pair_id]


# --------------------------------------------------------------------------------------
# 1. rank-one golden forms

GOLDEN_GHOSTS = {
    "gl2-1.gl11xgl1": t_poly(0),
    "gl2-2.gl12xgl1": t_poly(0, -1),
    "gl3-1.gl21xgl1": t_poly(0),
    "osp2-2.osp1-2": t_poly(-1),
    "osp2-4.osp1-4": t_poly(-1, -3),
    "osp3-2.osp2-2": t_poly(-1),
    "osp2-4.osp2-2xsp2": t_poly(1, 0),
    "osp1-4.osp1-2xsp2": t_poly(1),
}


@pytest.mark.criterion(1, "rank-one ghost images match the closed forms")
@pytest.mark.parametrize("pair_id", sorted(GOLDEN_GHOSTS))
def test_rank_one_golden_forms(pair_id):
    pair = pair_of(pair_id)
    computed = ghost_generator(pair).hc_image.rename(("t",))
    assert_proportional(computed, GOLDEN_GHOSTS[pair_id])


# --------------------------------------------------------------------------------------
# 2. Casimir images

GOLDEN_CASIMIRS = {
    "osp2-2.osp1-2": t_poly(0, -2),  # n = 1
    "osp2-4.osp1-4": t_poly(0, -4),  # n = 2
    "osp2-4.osp2-2xsp2": t_poly(0, 2 * 2 - 2 - 1),
    "osp1-4.osp1-2xsp2": t_poly(0, 2 * 2 - 1 - 1),
}


@pytest.mark.criterion(2, "Casimir images")
@pytest.mark.parametrize("pair_id", sorted(GOLDEN_CASIMIRS))
def test_casimir_images(pair_id):
    pair = pair_of(pair_id)
    computed = hc_project(casimir_in_pair(pair), pair).rename(("t",))
    assert_proportional(computed, GOLDEN_CASIMIRS[pair_id])


# --------------------------------------------------------------------------------------
# 3. gl product formula


@pytest.mark.criterion(3, "gl product formula")
def test_gl_product_rank_two():
    pair = pair_of("gl4-1.gl21xgl2")
    names = pair.a_labels
    t1, t2 = (Polynomial.variable(names, v) for v in names)
    expected = (t1 + 1) * t2
    computed = ghost_generator(pair).hc_image
    assert_proportional(computed, expected)
    # the general product formula agrees with the hand-written form
    assert gl_product_form(2, 1).rename(names) == expected


@pytest.mark.criterion(3, "gl product formula")
def test_gl_product_rank_one():
    pair = pair_of("gl2-2.gl12xgl1")
    computed = ghost_generator(pair).hc_image.rename(("t",))
    assert_proportional(computed, t_poly(0, -1))
    assert gl_product_form(1, 2) == t_poly(0, -1)


# --------------------------------------------------------------------------------------
# 4. structural properties of every realized algebra and pair with dim <= 40


def _small_algebras():
    seen = {}
    for d in small_rows():
        key = (d.algebra["family"], d.algebra["m"], d.algebra["n"])
        if key not in seen:
            seen[key] = d
    return seen


ALGEBRA_KEYS = sorted(_small_algebras())


def _algebra(key):
    fam, m, n = key
    return build_gl(m, n) if fam == "gl" else build_osp(m, n // 2)


@pytest.mark.criterion(4, "structural properties")
@pytest.mark.parametrize("key", ALGEBRA_KEYS, ids=lambda k: f"{k[0]}{k[1]}-{k[2]}")
def test_super_jacobi_all_triples(key):
    alg = _algebra(key)
    basis = alg.basis
    par = [alg.parity(i) for i in range(alg.dim)]
    table = [[bracket(x, y) for y in basis] for x in basis]
    for i, x in enumerate(basis):
        for j in range(alg.dim):
            sign = -1 if (par[i] and par[j]) else 1
            for k, z in enumerate(basis):
                # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                lhs = bracket(x, table[j][k])
                rhs = bracket(table[i][j], z) + bracket(basis[j], table[i][k]).scale(sign)
                assert lhs == rhs, (alg.labels[i], alg.labels[j], alg.labels[k])


@pytest.mark.criterion(4, "structural properties")
@pytest.mark.parametrize("key", ALGEBRA_KEYS, ids=lambda k: f"{k[0]}{k[1]}-{k[2]}")
def test_form_invariance_supersymmetry_nondegeneracy(key):
    alg = _algebra(key)
    basis = alg.basis
    par = [alg.parity(i) for i in range(alg.dim)]
    table = [[bracket(x, y) for y in basis] for x in basis]
    gram = [[supertrace_form(x, y) for y in basis] for x in basis]
    for i in range(alg.dim):
        for j in range(alg.dim):
            sign = -1 if (par[i] and par[j]) else 1
            assert gram[i][j] == gram[j][i] * sign
            if gram[i][j]:
                assert par[i] == par[j], "the form pairs only equal parities"
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                assert supertrace_form(table[i][j], basis[k]) == supertrace_form(basis[i], table[j][k])
    rows = [{c: v for c, v in enumerate(row) if v} for row in gram]
    assert rank(rows) == alg.dim


@pytest.mark.criterion(4, "structural properties")
@pytest.mark.parametrize("pair_id", [d.pair_id for d in small_rows()])
def test_eigenspace_completeness(pair_id):
    pair = pair_of(pair_id)
    span = EchelonBasis()
    for space, sign, parity in ((pair.k0, 1, 0), (pair.k1, 1, 1), (pair.p0, -1, 0), (pair.p1, -1, 1)):
        for x in space:
            assert x.parity == parity
            assert pair.theta(x) == x.scale(sign)
            assert span.add(x.entries)
    assert span.rank == pair.alg.dim


# --------------------------------------------------------------------------------------
# 5. PBW suite


PBW_ALGEBRAS = {"osp(2|2)": lambda: build_osp(2, 1), "gl(2|1)": lambda: build_gl(2, 1)}
PBW_DEGREE = 3


def _words(dim, length):
    if length == 0:
        yield ()
        return
    for w in _words(dim, length - 1):
        for letter in range(dim):
            yield w + (letter,)


def _sorted_with_sign(word, parities):
    """Stable sort of the letters and the Koszul sign from swapping odd letters."""
    letters = list(word)
    sign = 1
    for i in range(len(letters)):
        for j in range(len(letters) - 1 - i):
            a, b = letters[j], letters[j + 1]
            if a > b:
                if parities[a] and parities[b]:
                    sign = -sign
                letters[j], letters[j + 1] = b, a
    return tuple(letters), sign


def _multisets(kinds, size):
    return comb(kinds + size - 1, size) if kinds else int(size == 0)


def _expected_normal_count(even, odd, degree):
    """Ordered monomials of degree <= bound: any even multiset times a set of odd letters."""
    return sum(comb(odd, j) * _multisets(even, k - j)
               for k in range(degree + 1) for j in range(min(odd, k) + 1))


@pytest.mark.criterion(5, "PBW normal ordering")
@pytest.mark.parametrize("name", sorted(PBW_ALGEBRAS))
def test_pbw_idempotence_and_symbol(name):
    alg = PBW_ALGEBRAS[name]()
    basis = PBWBasis.of_algebra(alg)
    par = basis.parities
    span = EchelonBasis()
    normal_monomials = set()
    for length in range(PBW_DEGREE + 1):
        for word in _words(alg.dim, length):
            u = normal_order(list(word), basis)
            assert u.is_normal()
            span.add(dict(u.terms))
            top = {m: c for m, c in u.terms.items() if len(m) == length}
            ordered, sign = _sorted_with_sign(word, par)
            repeated_odd = any(a == b and par[a] for a, b in zip(ordered, ordered[1:]))
            if repeated_odd:
                assert not top
            else:
                assert top == {ordered: GaussianRational(sign)}
            if ordered == word and not repeated_odd:
                normal_monomials.add(word)
                assert u.terms == {word: ONE}, "normal monomials are fixed points"
                assert normal_order([u], basis) == u
    even = par.count(0)
    odd = par.count(1)
    expected = _expected_normal_count(even, odd, PBW_DEGREE)
    # every word reduces into the normal monomials, which stay independent
    assert len(normal_monomials) == expected
    assert span.rank == expected


def _random_element(rng, basis, max_degree):
    total = PBWElement(basis, {})
    for _ in range(rng.randint(1, 3)):
        word = [rng.randrange(len(basis)) for _ in range(rng.randint(0, max_degree))]
        coeff = GaussianRational(rng.randint(-3, 3), rng.randint(-1, 1))
        total = total + normal_order(word, basis).scale(coeff)
    return total


@pytest.mark.criterion(5, "PBW normal ordering")
@pytest.mark.parametrize("name", sorted(PBW_ALGEBRAS))
def test_pbw_homomorphism_and_associativity(name):
    alg = PBW_ALGEBRAS[name]()
    basis = PBWBasis.of_algebra(alg)
    rng = random.Random(SEED)
    for _ in range(100):
        w1 = [rng.randrange(alg.dim) for _ in range(rng.randint(0, 3))]
        w2 = [rng.randrange(alg.dim) for _ in range(rng.randint(0, 3))]
        assert normal_order(w1 + w2, basis) == normal_order(w1, basis) * normal_order(w2, basis)
    for _ in range(100):
        u, v, w = (_random_element(rng, basis, 3) for _ in range(3))
        assert (u * v) * w == u * (v * w)


# --------------------------------------------------------------------------------------
# 6. HC contract

HC_PAIRS = sorted(GOLDEN_GHOSTS) + ["gl4-1.gl21xgl2"]


@pytest.mark.criterion(6, "HC projection contract")
@pytest.mark.parametrize("pair_id", HC_PAIRS)
def test_hc_annihilates_ideals(pair_id):
    pair = pair_of(pair_id)
    basis = pair.pbw
    n_idx = pair.iwasawa.n_indices
    k_idx = pair.iwasawa.k_indices
    rng = random.Random(SEED)
    for trial in range(100):
        word = [rng.randrange(len(basis)) for _ in range(rng.randint(0, 2))]
        coeff = GaussianRational(rng.randint(1, 4), rng.randint(-1, 1))
        if trial % 2:
            element = normal_order([rng.choice(n_idx)] + word, basis)
        else:
            element = normal_order(word + [rng.choice(k_idx)], basis)
            assert in_left_ideal_Uk(element, pair)
        assert hc_project(element.scale(coeff), pair).is_zero()


@pytest.mark.criterion(6, "HC projection contract")
@pytest.mark.parametrize("pair_id", HC_PAIRS)
def test_hc_unit_and_antipode(pair_id):
    pair = pair_of(pair_id)
    basis = pair.pbw
    names = pair.a_labels
    one = hc_project(PBWElement.one(basis), pair)
    assert one == Polynomial.constant(names, 1)
    a_idx = pair.iwasawa.a_indices
    for degree in range(4):
        for combo in combinations_with_replacement(range(len(a_idx)), degree):
            mono = tuple(a_idx[c] for c in combo)
            exp = [0] * len(names)
            for c in combo:
                exp[c] += 1
            image = hc_project(PBWElement(basis, {mono: ONE}), pair)
            assert image == Polynomial(names, {tuple(exp): (-1) ** degree})


# --------------------------------------------------------------------------------------
# 7. k'-invariance and the k_1 witness


@pytest.mark.criterion(7, "k'-invariance of the ghost generator")
@pytest.mark.parametrize("pair_id", [d.pair_id for d in rank_one_rows()])
def test_kprime_invariance_and_witness(pair_id):
    pair = pair_of(pair_id)
    if pair.iwasawa is None:
        with pytest.raises(NoIwasawa):
            ghost_generator(pair)
        return
    ghost = ghost_generator(pair)
    basis = pair.pbw
    for x in pair.kprime_basis:
        assert not basis.left_multiply(basis.expand(x), ghost.representative.terms, truncate=True)
    witness = k_witness(pair, ghost)
    assert witness is not None
    assert any(witness == y for y in pair.k1), "the witness comes from the odd part of k"


# --------------------------------------------------------------------------------------
# 8. degree and leading term


@pytest.mark.criterion(8, "degree and leading term")
@pytest.mark.parametrize("pair_id", ["gl2-1.gl11xgl1", "osp3-4.osp3-2xsp2"])
def test_degree_and_leading_term(pair_id):
    pair = pair_of(pair_id)
    ghost = ghost_generator(pair)
    reps, _ = odd_root_representatives(pair)
    k = len(reps)
    assert 2 * k == len(pair.p1)
    hbar_product = Polynomial.constant(pair.a_labels, 1)
    for root in reps:
        hbar_product = hbar_product * hbar(pair, root.weight)
    basis = pair.pbw
    omega0 = even_casimir(pair)
    z = PBWElement.one(basis)
    for j in range(3):
        element = ghost_hc(pair, z, ghost)
        assert element.hc_image.degree == len(pair.p1) // 2 + 2 * j
        # sign convention: the stated leading term holds before the antipode
        leading = hc_project(element.representative, pair, antipode=False).top_part()
        expected = (hbar_product * hc_project(z, pair).top_part()).top_part() * (-1) ** k
        assert leading == expected
        z = z * omega0


# --------------------------------------------------------------------------------------
# 9. bounded-degree injectivity


@pytest.mark.criterion(9, "independence of HC(v Omega0^j), j <= 4")
@pytest.mark.parametrize("pair_id", rank_one_iwasawa_ids())
def test_ghost_images_independent(pair_id):
    pair = pair_of(pair_id)
    images = ghost_images(pair, 4)
    assert len(images) == 5
    assert rank([dict(p.terms) for p in images]) == 5


# --------------------------------------------------------------------------------------
# 10. interlacing biconditional and the phi identities

SWEEP_ROWS = [d.pair_id for d in small_rows() if d.family != "exceptional"]


def _parity_sign(x):
    return x.scale(-1) if x.parity else x


@pytest.mark.criterion(10, "interlacing biconditional")
@pytest.mark.parametrize("pair_id", SWEEP_ROWS)
def test_interlacing_biconditional(pair_id):
    pair = pair_of(pair_id)
    interlaced = is_interlaced(pair)
    try:
        phi = interlacing_automorphism(pair, require_interlaced=False)
    except ConstructionFailed:
        phi = None
    assert interlaced == (phi is not None)
    if phi is None:
        return
    alg = pair.alg
    for x in alg.basis:
        assert phi(pair.theta(x)) == _parity_sign(pair.theta(phi(x)))
        assert phi(phi(x)) == _parity_sign(x)
    for a in pair.a:
        assert phi(a) == a
    kprime = EchelonBasis()
    for y in pair.kprime_basis:
        kprime.add(y.entries)
    images = EchelonBasis()
    for x in pair.k_basis:
        image = phi(x)
        assert kprime.contains(image.entries)
        images.add(image.entries)
    assert images.rank == kprime.rank


# --------------------------------------------------------------------------------------
# 11. ghost algebra

INTERLACED_RANK_ONE = [d.pair_id for d in rank_one_rows() if d.iwasawa_expected and d.interlaced_expected]


@pytest.mark.criterion(11, "ghost product and centre conditions")
@pytest.mark.parametrize("pair_id", INTERLACED_RANK_ONE)
def test_ghost_product_multiplicative(pair_id):
    pair = pair_of(pair_id)
    v = ghost_generator(pair)
    _, image = ghost_product(pair, v, v)
    assert image == v.hc_image * v.hc_image
    assert check_center_conditions(image, pair.restricted)
    if len(pair.p1) <= 4:
        vz = ghost_hc(pair, even_casimir(pair), v)
        _, mixed = ghost_product(pair, vz, v)
        assert mixed == vz.hc_image * v.hc_image


# --------------------------------------------------------------------------------------
# 12. conjectural conditions


def _images_to_degree(pair, bound=6):
    degree = ghost_generator(pair).hc_image.degree
    return ghost_images(pair, max(0, (bound - degree) // 2))


@pytest.mark.criterion(12, "conditions on interlaced images, expected failures otherwise")
@pytest.mark.parametrize("pair_id", INTERLACED_RANK_ONE)
def test_interlaced_images_satisfy_conditions(pair_id):
    pair = pair_of(pair_id)
    result = check_conjecture(pair, _images_to_degree(pair))
    assert result.conditions
    assert result.satisfied, [c.witness for c in result.failed()]


NON_INTERLACED_GL = [d.pair_id for d in rank_one_rows()
                     if d.iwasawa_expected and not d.interlaced_expected and d.family == "gl/gl×gl"]


@pytest.mark.criterion(12, "conditions on interlaced images, expected failures otherwise")
@pytest.mark.parametrize("pair_id", NON_INTERLACED_GL)
def test_non_interlaced_gl_violates_reflection(pair_id):
    pair = pair_of(pair_id)
    result = check_conjecture(pair, _images_to_degree(pair))
    assert result.failed("reflection"), "expected the reflection condition to fail"


# --------------------------------------------------------------------------------------
# 13. reduction and vanishing


@pytest.mark.criterion(13, "reduction and vanishing")
@pytest.mark.parametrize("pair_id", ["osp3-2.osp2-2", "gl3-1.gl21xgl1"])
def test_reduction(pair_id):
    report = check_reduction(pair_id)
    assert report.status == "pass", report
    desc = pair_of(pair_id).descriptor
    big = ghost_generator(pair_of(pair_id)).hc_image
    small = ghost_generator(pair_of(desc.reduces_to)).hc_image
    assert_proportional(big, small.rename(big.vars))


@pytest.mark.criterion(13, "reduction and vanishing")
def test_vanishing_gl_rank_one():
    pair_id = "gl2-1.gl11xgl1"
    report = check_vanishing(pair_id)
    assert report.status == "pass", report
    # second route: in rank one, divisibility by hbar_alpha is vanishing at its zero
    pair = pair_of(pair_id)
    image = ghost_generator(pair).hc_image
    roots = vanishing_roots(pair)
    assert roots
    for weight in roots:
        form = hbar(pair, weight)
        zero = -form.terms.get((0,), GaussianRational(0)) / form.terms[(1,)]
        assert not image.evaluate([zero])


# --------------------------------------------------------------------------------------
# 14. even-pairs span equality


@pytest.mark.criterion(14, "even-pairs span equality at degree 6")
def test_even_pairs_span():
    report = check_even_pairs("gl2-1.gl11xgl1", 6)
    assert report.status == "pass", report
