"""Harish-Chandra projection and ghost distributions of a symmetric pair.

Classes in U(g)/U(g)k are represented by PBW elements in the Iwasawa ordering
n < a < k with every monomial containing a k-letter dropped.  Left
multiplication is well defined on these classes, so products are always
evaluated right to left with truncation after each letter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .liealg import SuperMatrix, bracket
from .linalg import EchelonBasis, add_scaled, kernel
from .pairs import (
    InterlacingAutomorphism,
    NotInterlaced,
    NotSpecial,
    SymmetricPair,
    interlacing_automorphism,
    is_interlaced,
    is_positive,
    twisted_subalgebra,
)
from .polynomial import Polynomial
from .scalars import ONE, ZERO, GaussianRational
from .uea import PBWBasis, PBWElement, casimir, normal_order

__all__ = [
    "NoIwasawa",
    "InvarianceFailure",
    "GhostElement",
    "hc_project",
    "ghost_generator",
    "ghost_hc",
    "ghost_product",
    "twisted_ghost_generator",
    "apply_word",
    "casimir_in_pair",
    "even_casimir",
    "hbar",
    "odd_root_representatives",
    "k_witness",
]

MAX_CORRECTION_LETTERS = 10


class NoIwasawa(ValueError):
    pass


class InvarianceFailure(RuntimeError):
    pass


def _pbw(pair: SymmetricPair) -> PBWBasis:
    if pair.iwasawa is None:
        raise NoIwasawa(f"{pair.label} has no Iwasawa decomposition")
    return pair.iwasawa.pbw


def hc_project(u: PBWElement, pair: SymmetricPair, antipode: bool = True) -> Polynomial:
    """Pure-a part of u in the Iwasawa ordering, with the antipode sign (-1)^degree.

    Works on honest elements and on truncated classes alike: monomials with an
    n-letter lie in nU(g) and those with a k-letter lie in U(g)k.
    """
    basis = _pbw(pair)
    if u.basis is not basis:
        raise ValueError("element is not written in the pair's Iwasawa ordering")
    a_index = {idx: pos for pos, idx in enumerate(pair.iwasawa.a_indices)}
    q = len(a_index)
    terms: dict = {}
    for mono, c in u.terms.items():
        if not all(l in a_index for l in mono):
            continue
        exp = [0] * q
        for l in mono:
            exp[a_index[l]] += 1
        sign = -ONE if antipode and len(mono) % 2 else ONE
        key = tuple(exp)
        terms[key] = terms.get(key, ZERO) + sign * c
    return Polynomial(pair.a_labels, terms)


def apply_word(basis: PBWBasis, letters, terms: dict, truncate: bool = True) -> dict:
    """letters[0] * letters[1] * ... * terms, multiplying from the right end."""
    out = terms
    for letter in reversed(letters):
        coords = letter if isinstance(letter, dict) else basis.expand(letter)
        out = basis.left_multiply(coords, out, truncate)
        if not out:
            break
    return out


def _apply_pbw_element(basis: PBWBasis, element: PBWElement, terms: dict, truncate: bool = True) -> dict:
    """element * terms for an honest (untruncated) element."""
    out: dict = {}
    for mono, c in element.terms.items():
        part = terms
        for l in reversed(mono):
            part = _left_multiply_letter_terms(basis, l, part, truncate)
            if not part:
                break
        add_scaled(out, part, c)
    return out


def _left_multiply_letter_terms(basis: PBWBasis, letter: int, terms: dict, truncate: bool) -> dict:
    out: dict = {}
    for mono, c in terms.items():
        add_scaled(out, basis.left_multiply_letter(letter, mono, truncate), c)
    return out


# --------------------------------------------------------------------------------------
# ghost elements


@dataclass
class GhostElement:
    """A class in U(g)/U(g)k of the form v z, with v a combination of words in odd letters."""

    pair: SymmetricPair
    words: list  # (coefficient, tuple of SuperMatrix letters)
    z: PBWElement
    representative: PBWElement
    hc_image: Polynomial
    invariance_checked: bool = False
    invariant_under: str = "k'"
    corrected: bool = False
    twist: GaussianRational | None = None
    extra: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.hc_image.degree


def odd_root_representatives(pair: SymmetricPair):
    """Representatives alpha_1 < ... < alpha_k of the -theta orbits on odd positive roots moved by theta."""
    iw = pair.iwasawa
    positive = set(iw.borel_positive)
    by_weight = pair.root_datum.by_weight()
    reps, seen = [], set()
    for root in pair.root_datum.odd:
        if root.weight not in positive or root.weight in seen:
            continue
        image = pair.theta_root(root)
        if image.weight == root.weight:
            continue
        partner = tuple(-c for c in image.weight)
        seen.add(root.weight)
        seen.add(partner)
        reps.append(root)
    return reps, by_weight


def _root_vector(pair: SymmetricPair, weight) -> SuperMatrix:
    root = pair.root_datum.by_weight()[tuple(weight)]
    return pair.alg.basis[root.basis_indices[0]]


def _p1_letters(pair: SymmetricPair):
    reps, _ = odd_root_representatives(pair)
    letters = []
    for root in reps:
        e_pos = _root_vector(pair, root.weight)
        e_neg = _root_vector(pair, tuple(-c for c in root.weight))
        x = e_pos - pair.theta(e_pos)
        y = e_neg - pair.theta(e_neg)
        letters.append((x, y))
    if 2 * len(letters) != len(pair.p1):
        raise InvarianceFailure("odd root representatives do not give a basis of p_1")
    return reps, letters


def _product_letters(pairs_xy) -> tuple:
    """x_k y_k ... x_1 y_1 as a left-to-right tuple."""
    out = []
    for x, y in reversed(pairs_xy):
        out.extend((x, y))
    return tuple(out)


def _invariant_combination(pair: SymmetricPair, letters: tuple, invariance_basis) -> tuple[list, bool]:
    """Words giving an invariant class: the full product plus lower-order corrections if needed.

    Corrections are searched among ordered even-length sub-products of the letters,
    which all lie in the subalgebra generated by the letters.
    """
    basis = _pbw(pair)
    coords = [basis.expand(x) for x in letters]
    inv_coords = [basis.expand(x) for x in invariance_basis]
    classes: dict = {(): {(): ONE}}

    def class_of(word_idx):
        found = classes.get(word_idx)
        if found is None:
            found = basis.left_multiply(coords[word_idx[0]], class_of(word_idx[1:]), True)
            classes[word_idx] = found
        return found

    def action_vector(word_idx):
        cls = class_of(word_idx)
        vec = {}
        for j, xc in enumerate(inv_coords):
            for mono, c in basis.left_multiply(xc, cls, True).items():
                vec[(j, mono)] = c
        return vec

    full = tuple(range(len(letters)))
    if not action_vector(full):
        return [(ONE, letters)], False
    if len(letters) > MAX_CORRECTION_LETTERS:
        raise InvarianceFailure("plain product is not invariant and the correction search is too large")
    words = []
    for size in range(0, len(letters), 2):
        words.extend(combinations(full, size))
    words.append(full)
    relations = kernel([action_vector(w) for w in words])
    last = len(words) - 1
    for rel in relations:
        if rel.get(last):
            scale = rel[last].inverse()
            combo = [(c * scale, tuple(letters[i] for i in words[idx])) for idx, c in sorted(rel.items())]
            return combo, True
    raise InvarianceFailure("no invariant combination of ordered odd products exists")


def _class_of(pair: SymmetricPair, words, z_terms: dict) -> dict:
    basis = _pbw(pair)
    out: dict = {}
    for c, word in words:
        add_scaled(out, apply_word(basis, list(word), z_terms), c)
    return out


def _check_invariance(pair: SymmetricPair, terms: dict, invariance_basis) -> bool:
    basis = _pbw(pair)
    for x in invariance_basis:
        if basis.left_multiply(basis.expand(x), terms, True):
            return False
    return True


def ghost_generator(pair: SymmetricPair) -> GhostElement:
    """v_{k'}: the ordered product x_k y_k ... x_1 y_1 of the p_1 basis, made k'-invariant."""
    cached = pair.__dict__.get("_ghost_generator")
    if cached is not None:
        return cached
    basis = _pbw(pair)
    _, xy = _p1_letters(pair)
    letters = _product_letters(xy)
    words, corrected = _invariant_combination(pair, letters, pair.kprime_basis)
    terms = _class_of(pair, words, {(): ONE})
    rep = PBWElement(basis, terms)
    ok = _check_invariance(pair, terms, pair.kprime_basis)
    if not ok:
        raise InvarianceFailure(f"v_k' is not k'-invariant for {pair.label}")
    z = PBWElement.one(basis)
    ghost = GhostElement(pair, words, z, rep, hc_project(rep, pair), True, "k'", corrected)
    pair.__dict__["_ghost_generator"] = ghost
    return ghost


def ghost_hc(pair: SymmetricPair, z: PBWElement, ghost: GhostElement | None = None,
             check: bool = True) -> GhostElement:
    """The ghost element v z for an even k_0-invariant z, with its HC image."""
    basis = _pbw(pair)
    if z.basis is not basis:
        raise ValueError("z must be written in the pair's Iwasawa ordering")
    if z.parity() != 0:
        raise ValueError("z must be even")
    if check and not _check_invariance(pair, z.terms, pair.k0):
        raise InvarianceFailure("z is not k_0-invariant modulo U(g)k")
    ghost = ghost or ghost_generator(pair)
    terms = _class_of(pair, ghost.words, z.terms)
    rep = PBWElement(basis, terms)
    return GhostElement(pair, ghost.words, z, rep, hc_project(rep, pair), ghost.invariance_checked,
                        ghost.invariant_under, ghost.corrected, ghost.twist)


def _phi_element(pair: SymmetricPair, phi: InterlacingAutomorphism, z: PBWElement) -> PBWElement:
    """phi applied to an honest PBW element, re-normal-ordered."""
    basis = _pbw(pair)
    images = [phi(x) for x in basis.elements]
    out = PBWElement(basis, {})
    for mono, c in z.terms.items():
        out = out + normal_order([images[l] for l in mono], basis).scale(c)
    return out


def ghost_product(pair: SymmetricPair, u1: GhostElement, u2: GhostElement,
                  phi: InterlacingAutomorphism | None = None) -> tuple[PBWElement, Polynomial]:
    """phi(u1) u2 modulo U(g)k, and its HC image."""
    if not is_interlaced(pair):
        raise NotInterlaced(f"{pair.label} is not interlaced")
    phi = phi or interlacing_automorphism(pair)
    basis = _pbw(pair)
    phi_z1 = _phi_element(pair, phi, u1.z)
    tail = _apply_pbw_element(basis, phi_z1, u2.representative.terms, True)
    out: dict = {}
    for c, word in u1.words:
        add_scaled(out, apply_word(basis, [phi(x) for x in word], tail), c)
    rep = PBWElement(basis, out)
    return rep, hc_project(rep, pair)


def twisted_ghost_generator(pair: SymmetricPair, c) -> GhostElement:
    """Generator of the phi_c(k)-invariants: product of x_i = e + c^2 theta e, y_i over g_{-1} orbits."""
    if not pair.is_special():
        raise NotSpecial(f"{pair.label} is not a special pair")
    c = GaussianRational.coerce(c)
    if not c or c == ONE or c == -ONE:
        raise ValueError("the twist c must be nonzero and different from +1 and -1")
    c2 = c * c
    basis = _pbw(pair)
    reps, seen = [], set()
    for root in pair.root_datum.odd:
        value = pair.root_restriction(root)
        if is_positive(value, pair.positivity) or root.weight in seen:
            continue
        partner = tuple(-x for x in pair.theta_root(root).weight)
        seen.update({root.weight, partner})
        reps.append((root.weight, partner))
    xy = []
    for alpha, partner in reps:
        ea = _root_vector(pair, alpha)
        eb = _root_vector(pair, partner)
        xy.append((ea + pair.theta(ea).scale(c2), eb + pair.theta(eb).scale(c2)))
    letters = _product_letters(xy)
    invariance = twisted_subalgebra(pair, c)
    words, corrected = _invariant_combination(pair, letters, invariance)
    terms = _class_of(pair, words, {(): ONE})
    ok = _check_invariance(pair, terms, invariance)
    if not ok:
        raise InvarianceFailure("twisted generator is not invariant")
    rep = PBWElement(basis, terms)
    return GhostElement(pair, words, PBWElement.one(basis), rep, hc_project(rep, pair), True,
                        f"phi_{c}(k)", corrected, c)


# --------------------------------------------------------------------------------------
# helpers for invariants and leading terms


def casimir_in_pair(pair: SymmetricPair) -> PBWElement:
    return casimir(pair.alg, _pbw(pair))


def even_casimir(pair: SymmetricPair) -> PBWElement:
    """Casimir of g_0 for the supertrace form restricted to g_0."""
    alg = pair.alg
    even = [b for i, b in enumerate(alg.basis) if alg.parity(i) == 0]
    return casimir(alg, _pbw(pair), elements=even)


def hbar(pair: SymmetricPair, weight) -> Polynomial:
    """h_alpha - theta(h_alpha) with h_alpha = [e_alpha, e_-alpha], as a linear form in the a-coordinates."""
    e_pos = _root_vector(pair, weight)
    e_neg = _root_vector(pair, tuple(-c for c in weight))
    h = bracket(e_pos, e_neg)
    hb = h - pair.theta(h)
    span = EchelonBasis()
    for idx, a in enumerate(pair.a):
        span.add(a.entries, label=idx)
    coords = span.coordinates(hb.entries)
    if coords is None:
        raise ValueError("h_alpha - theta h_alpha does not lie in a")
    return Polynomial.linear(pair.a_labels, [coords.get(i, ZERO) for i in range(len(pair.a))])


def k_witness(pair: SymmetricPair, ghost: GhostElement):
    """An element of k whose action on the ghost class is nonzero, or None if it is k-invariant."""
    basis = _pbw(pair)
    for x in pair.k1 + pair.k0:
        if basis.left_multiply(basis.expand(x), ghost.representative.terms, True):
            return x
    return None
