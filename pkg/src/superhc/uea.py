"""PBW normal forms in the universal enveloping algebra of a matrix Lie superalgebra.

An ordered homogeneous basis x_0 < x_1 < ... fixes the PBW basis of U(g).  A
monomial is stored as the nondecreasing tuple of its letter indices, so an odd
letter occurs at most once.  Products are straightened by moving the leftmost
out-of-order letter to the right with the defining relation
``x_i x_j = (-1)^{|x_i||x_j|} x_j x_i + [x_i, x_j]`` and ``x x = [x, x]/2`` for odd x.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .liealg import SuperMatrix, Superalgebra, bracket
from .linalg import EchelonBasis, add_scaled
from .scalars import ONE, GaussianRational

__all__ = [
    "PBWBasis",
    "PBWElement",
    "Word",
    "OrderingMismatch",
    "normal_order",
    "multiply",
    "casimir",
    "in_left_ideal_Uk",
    "filtration_degree",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_HALF = GaussianRational(Fraction(1, 2))


class OrderingMismatch(ValueError):
    pass


class PBWBasis:
    """An ordered homogeneous basis of a superalgebra, with group tags per letter.

    ``groups`` tags letters (for instance 'n', 'a', 'k' for an Iwasawa
    ordering); the tag 'k' marks the letters spanning the subalgebra whose left
    ideal U(g)k can be discarded during truncated products.
    """

    def __init__(self, alg: Superalgebra, elements: Sequence[SuperMatrix],
                 groups: Sequence[str] | None = None, labels: Sequence[str] | None = None,
                 ordering_id: str | None = None):
        if len(elements) != alg.dim:
            raise ValueError(f"need {alg.dim} basis elements, got {len(elements)}")
        self.alg = alg
        self.elements = list(elements)
        self.groups = list(groups) if groups is not None else ["g"] * len(elements)
        self.labels = list(labels) if labels is not None else [f"x{i}" for i in range(len(elements))]
        self.ordering_id = ordering_id or f"{alg.name}:{id(self)}"
        self.parities = []
        self._span = EchelonBasis()
        for idx, el in enumerate(self.elements):
            p = el.parity
            if p is None:
                raise ValueError(f"basis element {self.labels[idx]} is not homogeneous")
            if not alg.contains(el):
                raise ValueError(f"basis element {self.labels[idx]} is outside {alg.name}")
            if not self._span.add(el.entries, label=idx):
                raise ValueError("PBW basis elements are linearly dependent")
            self.parities.append(p)
        self.is_k = [g == "k" for g in self.groups]
        self._brackets: dict[tuple[int, int], dict] = {}
        self._memo: dict[tuple, dict] = {}

    @classmethod
    def of_algebra(cls, alg: Superalgebra) -> "PBWBasis":
        return cls(alg, alg.basis, labels=alg.labels, ordering_id=alg.name)

    def __len__(self):
        return len(self.elements)

    def expand(self, x: SuperMatrix) -> dict:
        """Coordinates of an algebra element on this basis."""
        coords = self._span.coordinates(x.entries)
        if coords is None:
            raise ValueError("matrix does not lie in the algebra")
        return coords

    def element(self, coords: dict) -> SuperMatrix:
        out: dict = {}
        for idx, c in coords.items():
            add_scaled(out, self.elements[idx].entries, c)
        return SuperMatrix(self.alg.m, self.alg.n, out)

    def bracket_coords(self, i: int, j: int) -> dict:
        """PBW form of [x_i, x_j], memoized by the index pair."""
        key = (i, j)
        found = self._brackets.get(key)
        if found is None:
            found = self.expand(bracket(self.elements[i], self.elements[j]))
            self._brackets[key] = found
        return found

    def indices(self, group: str) -> list[int]:
        return [i for i, g in enumerate(self.groups) if g == group]

    # straightening core ---------------------------------------------------------------
    def left_multiply_letter(self, i: int, mono: tuple, truncate: bool = False) -> dict:
        """Normal form of x_i * mono; with ``truncate`` drop terms lying in U(g)k."""
        key = (i, mono, truncate)
        found = self._memo.get(key)
        if found is not None:
            return found
        if truncate and mono and self.is_k[mono[-1]]:
            # k-letters sort last, so mono already lies in U(g)k
            result = {}
        else:
            result = self._left_multiply(i, mono, truncate)
        self._memo[key] = result
        return result

    def _left_multiply(self, i: int, mono: tuple, truncate: bool) -> dict:
        if not mono or i < mono[0]:
            if truncate and self.is_k[i]:
                return {}
            return {(i,) + mono: ONE}
        j = mono[0]
        rest = mono[1:]
        if i == j:
            if self.parities[i] == 0:
                if truncate and self.is_k[i]:
                    return {}
                return {(i,) + mono: ONE}
            out: dict = {}
            for l, c in self.bracket_coords(i, i).items():
                add_scaled(out, self.left_multiply_letter(l, rest, truncate), c * _HALF)
            return out
        # i > j: x_i x_j rest = s x_j (x_i rest) + [x_i, x_j] rest
        out = {}
        sign = -ONE if (self.parities[i] and self.parities[j]) else ONE
        for m2, c in self.left_multiply_letter(i, rest, truncate).items():
            add_scaled(out, self.left_multiply_letter(j, m2, truncate), sign * c)
        for l, c in self.bracket_coords(i, j).items():
            add_scaled(out, self.left_multiply_letter(l, rest, truncate), c)
        return out

    def left_multiply(self, coords: dict, terms: dict, truncate: bool = False) -> dict:
        """(sum_l coords[l] x_l) * terms."""
        out: dict = {}
        for l, c in coords.items():
            for mono, d in terms.items():
                add_scaled(out, self.left_multiply_letter(l, mono, truncate), c * d)
        return out

    def product_terms(self, left: dict, right: dict, truncate: bool = False) -> dict:
        out: dict = {}
        if truncate:
            right = {m: c for m, c in right.items() if not (m and self.is_k[m[-1]])}
        for mono, c in left.items():
            part = right
            for letter in reversed(mono):
                part = self.left_multiply({letter: ONE}, part, truncate)
                if not part:
                    break
            add_scaled(out, part, c)
        return out


@dataclass(frozen=True)
class Word:
    """An unordered product of letters: basis indices, algebra elements or coordinate dicts."""

    letters: tuple

    def __init__(self, letters: Iterable):
        object.__setattr__(self, "letters", tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)


class PBWElement:
    """A finite linear combination of PBW monomials in a fixed ordering."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: PBWBasis, terms: dict | None = None):
        self.basis = basis
        self.terms = {m: GaussianRational.coerce(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, basis: PBWBasis, terms: dict) -> "PBWElement":
        obj = cls.__new__(cls)
        obj.basis, obj.terms = basis, terms
        return obj

    @classmethod
    def one(cls, basis: PBWBasis) -> "PBWElement":
        return cls._raw(basis, {(): ONE})

    @classmethod
    def letter(cls, basis: PBWBasis, index: int) -> "PBWElement":
        return cls._raw(basis, {(index,): ONE})

    @classmethod
    def from_matrix(cls, basis: PBWBasis, x: SuperMatrix) -> "PBWElement":
        return cls._raw(basis, {(l,): c for l, c in basis.expand(x).items()})

    @classmethod
    def scalar(cls, basis: PBWBasis, value) -> "PBWElement":
        value = GaussianRational.coerce(value)
        return cls._raw(basis, {(): value} if value else {})

    def _check(self, other: "PBWElement"):
        if self.basis is not other.basis:
            raise OrderingMismatch(
                f"orderings differ: {self.basis.ordering_id} vs {other.basis.ordering_id}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.basis is other.basis and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "PBWElement") -> "PBWElement":
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, ONE)
        return PBWElement._raw(self.basis, out)

    def __sub__(self, other: "PBWElement") -> "PBWElement":
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, -ONE)
        return PBWElement._raw(self.basis, out)

    def __neg__(self) -> "PBWElement":
        return PBWElement._raw(self.basis, {m: -c for m, c in self.terms.items()})

    def scale(self, scalar) -> "PBWElement":
        scalar = GaussianRational.coerce(scalar)
        if not scalar:
            return PBWElement._raw(self.basis, {})
        return PBWElement._raw(self.basis, {m: c * scalar for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __pow__(self, exponent: int) -> "PBWElement":
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        result = PBWElement.one(self.basis)
        for _ in range(exponent):
            result = multiply(self, result)
        return result

    def parity(self) -> int | None:
        parities = {sum(self.basis.parities[l] for l in m) % 2 for m in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def is_normal(self) -> bool:
        for mono in self.terms:
            for a, b in zip(mono, mono[1:]):
                if a > b or (a == b and self.basis.parities[a]):
                    return False
        return True

    def modulo_k(self) -> "PBWElement":
        """Drop monomials lying in U(g)k (those containing a k-tagged letter)."""
        is_k = self.basis.is_k
        return PBWElement._raw(self.basis, {m: c for m, c in self.terms.items()
                                            if not any(is_k[l] for l in m)})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            word = "*".join(self.basis.labels[l] for l in mono)
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(word)
            else:
                parts.append(f"({c})*{word}")
        return " + ".join(parts)

    __repr__ = __str__


def _letter_coords(basis: PBWBasis, letter) -> dict:
    if isinstance(letter, int):
        if not 0 <= letter < len(basis):
            raise IndexError(f"letter index {letter} out of range")
        return {letter: ONE}
    if isinstance(letter, SuperMatrix):
        if letter.parity is None:
            raise ValueError("word letters must be homogeneous")
        return basis.expand(letter)
    if isinstance(letter, dict):
        return letter
    raise TypeError(f"unsupported letter {letter!r}")


def normal_order(word: Word | Sequence, basis: PBWBasis, truncate: bool = False) -> PBWElement:
    """PBW normal form of a product of letters (the empty word gives 1)."""
    letters = word.letters if isinstance(word, Word) else tuple(word)
    terms: dict = {(): ONE}
    for letter in reversed(letters):
        if isinstance(letter, PBWElement):
            if letter.basis is not basis:
                raise OrderingMismatch("letter uses a different ordering")
            terms = basis.product_terms(letter.terms, terms, truncate)
        else:
            terms = basis.left_multiply(_letter_coords(basis, letter), terms, truncate)
        if not terms:
            break
    return PBWElement._raw(basis, terms)


def multiply(u: PBWElement, v: PBWElement, truncate: bool = False) -> PBWElement:
    """Product in U(g); with ``truncate`` the result is reduced modulo U(g)k."""
    u._check(v)
    return PBWElement._raw(u.basis, u.basis.product_terms(u.terms, v.terms, truncate))


def casimir(alg: Superalgebra, basis: PBWBasis | None = None,
            elements: Sequence[SuperMatrix] | None = None) -> PBWElement:
    """Casimir element sum_i x_i x^i for the supertrace form, with str(x^i x_j) = delta_ij.

    With ``elements`` given, the sum runs over that subspace instead of the whole
    algebra; the form must be nondegenerate on it (used for the even part).
    """
    basis = basis or PBWBasis.of_algebra(alg)
    elems = list(elements) if elements is not None else list(alg.basis)
    duals = _dual_elements(elems)
    total = PBWElement._raw(basis, {})
    for x, xd in zip(elems, duals):
        total = total + normal_order([x, xd], basis)
    return total


def _dual_elements(elems: Sequence[SuperMatrix]) -> list[SuperMatrix]:
    from .liealg import supertrace_form
    from .linalg import solve_square

    if not elems:
        return []
    # dual vectors sit on the left of the form; on odd pairs the form is skew
    gram = [[supertrace_form(y, x) for y in elems] for x in elems]
    inv = solve_square(gram)
    m, n = elems[0].m, elems[0].n
    duals = []
    for i in range(len(elems)):
        out: dict = {}
        for k, x in enumerate(elems):
            if inv[k][i]:
                add_scaled(out, x.entries, inv[k][i])
        duals.append(SuperMatrix(m, n, out))
    return duals


def in_left_ideal_Uk(u: PBWElement, pair=None) -> bool:
    """True iff every monomial of u contains a k-letter (valid since k-letters come last)."""
    basis = u.basis
    if "k" not in basis.groups:
        raise OrderingMismatch("the ordering carries no k-letters")
    if not _k_letters_last(basis):
        raise OrderingMismatch("k-letters must come last in the ordering")
    if pair is not None and basis is not pair.pbw:
        raise OrderingMismatch("element is not written in the pair's Iwasawa ordering")
    return all(any(basis.is_k[l] for l in mono) for mono in u.terms)


def _k_letters_last(basis: PBWBasis) -> bool:
    seen_k = False
    for flag in basis.is_k:
        if flag:
            seen_k = True
        elif seen_k:
            return False
    return True


def filtration_degree(u: PBWElement) -> Fraction:
    """Max over monomials of (even letters) + (odd letters)/2; zero has degree 0."""
    best = Fraction(0)
    for mono in u.terms:
        odd = sum(u.basis.parities[l] for l in mono)
        deg = Fraction(len(mono) - odd) + Fraction(odd, 2)
        best = max(best, deg)
    return best
