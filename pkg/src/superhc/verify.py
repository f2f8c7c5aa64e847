"""Checks of computed Harish-Chandra images against closed forms and structural conditions.

Every check returns a :class:`Report` whose status is one of ``pass``, ``fail``,
``skip`` or ``expected-fail``.  Polynomial comparisons are exact and up to a
single nonzero scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .hc import (
    casimir_in_pair,
    even_casimir,
    ghost_generator,
    ghost_hc,
    hbar,
    hc_project,
)
from .linalg import EchelonBasis
from .liealg import Superalgebra
from .pairs import (
    PairDescriptor,
    RestrictedRootDatum,
    SymmetricPair,
    find_pair,
    is_positive,
    realize_pair,
)
from .polynomial import Polynomial
from .scalars import ONE, ZERO, GaussianRational
from .uea import PBWElement

__all__ = [
    "Report",
    "GoldenTarget",
    "Condition",
    "ConjectureReport",
    "rank_one_target",
    "catalog_golden",
    "gl_product_form",
    "check_rank_one",
    "check_gl_product_formula",
    "check_conjecture",
    "check_center_conditions",
    "check_reduction",
    "check_vanishing",
    "sergeev_generators",
    "shifted_invariants",
    "check_even_pairs",
    "in_even_pairs_list",
    "ghost_images",
]

DEFAULT_DEGREE_BOUND = 8


@dataclass
class Report:
    check: str
    pair_id: str
    status: str  # pass | fail | skip | expected-fail
    expected: str = ""
    computed: str = ""
    scalar: str | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "skip", "expected-fail")

    def to_json(self) -> dict:
        out = {"check": self.check, "pairId": self.pair_id, "status": self.status,
               "expected": self.expected, "computed": self.computed, "scalar": self.scalar}
        if self.detail:
            out["detail"] = self.detail
        return out


def _compare(check: str, pair_id: str, expected: Polynomial, computed: Polynomial, detail: str = "") -> Report:
    scalar = computed.proportional_to(expected)
    ok = scalar is not None and bool(scalar)
    return Report(check, pair_id, "pass" if ok else "fail", str(expected), str(computed),
                  str(scalar) if ok else None, detail)


def _pair(pair_or_id) -> SymmetricPair:
    if isinstance(pair_or_id, SymmetricPair):
        return pair_or_id
    return realize_pair(pair_or_id if isinstance(pair_or_id, PairDescriptor) else find_pair(pair_or_id))


# --------------------------------------------------------------------------------------
# closed forms


@dataclass
class GoldenTarget:
    pair_id: str
    closed_form: Polynomial
    casimir_form: Polynomial
    module_description: str
    normalization: str = ""


def _t_product(shifts, var: str = "t") -> Polynomial:
    t = Polynomial.variable((var,), var)
    out = Polynomial.constant((var,), 1)
    for s in shifts:
        out = out * (t + s)
    return out


def _fmt_shift(s: int) -> str:
    return "t" if s == 0 else (f"t + {s}" if s > 0 else f"t - {-s}")


def rank_one_target(desc: PairDescriptor) -> GoldenTarget | None:
    """Closed-form ghost and Casimir images for the rank-one families, or None."""
    p = desc.params
    if desc.rank != 1 or not desc.realizable:
        return None
    if desc.family == "gl/gl×gl":
        if (p["r"], p["s"]) == (1, 0):
            m, n = p["m"], p["n"]
        elif (p["r"], p["s"]) == (0, 1):
            # gl(m|n) with an odd gl(0|1) factor is the parity swap of gl(n|m)
            m, n = p["n"], p["m"]
        else:
            return None
        ghost = _t_product([-j for j in range(n)])
        cas_shift = m - n - 1
        norm = "t = 1/2 h of the restricted root, value 1 on it"
    elif desc.family == "osp/osp×osp":
        m, n = p["m"], p["n"]
        if (p["r"], p["s"]) == (1, 0) and m >= 2:
            ghost = _t_product([-(2 * j - 1) for j in range(1, n + 1)])
            cas_shift = -2 * n if m == 2 else m - 2 - 2 * n
            norm = "e1(t) = 1"
        elif (p["r"], p["s"]) == (0, 1) and n >= 2:
            ghost = _t_product([1] + [-j for j in range(m - 1)])
            cas_shift = 2 * n - m - 1
            norm = "(d1-d2)(t) = 1"
        else:
            return None
    else:
        return None
    casimir = _t_product([0, cas_shift])
    module = f"k[{_fmt_shift(0)}*({_fmt_shift(cas_shift)})]<{ghost}>"
    return GoldenTarget(desc.pair_id, ghost, casimir, module, norm)


def catalog_golden(desc: PairDescriptor) -> tuple[Polynomial | None, Polynomial | None]:
    """Golden polynomials stored with the catalog row (ghost, Casimir)."""
    g = desc.golden or {}
    ghost = Polynomial.from_json(g["ghost"]) if "ghost" in g else None
    cas = Polynomial.from_json(g["casimir"]) if "casimir" in g else None
    return ghost, cas


def gl_product_form(r: int, n: int) -> Polynomial:
    """prod over 1<=i<=r, 1<=j<=n of (t_i - n + r - i + j)."""
    names = tuple(f"t{i}" for i in range(1, r + 1)) if r > 1 else ("t",)
    out = Polynomial.constant(names, 1)
    for i in range(1, r + 1):
        ti = Polynomial.variable(names, names[i - 1])
        for j in range(1, n + 1):
            out = out * (ti + (-n + r - i + j))
    return out


# --------------------------------------------------------------------------------------
# golden checks


def check_rank_one(pair_id: str) -> list[Report]:
    desc = find_pair(pair_id)
    if desc.rank != 1:
        return [Report("rank1", pair_id, "skip", detail="pair is not rank one")]
    if not desc.realizable:
        return [Report("rank1", pair_id, "skip", detail="pair is not realized")]
    target = rank_one_target(desc)
    if target is None:
        return [Report("rank1", pair_id, "skip", detail="no closed form for this row")]
    pair = _pair(desc)
    if pair.iwasawa is None:
        return [Report("rank1", pair_id, "skip", detail="no Iwasawa decomposition")]
    ghost = ghost_generator(pair).hc_image.rename(("t",))
    cas = hc_project(casimir_in_pair(pair), pair).rename(("t",))
    return [
        _compare("rank1.ghost", pair_id, target.closed_form, ghost, target.normalization),
        _compare("rank1.casimir", pair_id, target.casimir_form, cas, target.normalization),
    ]


def _gl_product_pair_id(r: int, n: int) -> str:
    return f"gl{2 * r}-{n}.gl{r}{n}xgl{r}"


def check_gl_product_formula(r: int, n: int) -> Report:
    pair_id = _gl_product_pair_id(r, n)
    try:
        pair = _pair(pair_id)
    except KeyError:
        return Report("gl-product", pair_id, "skip", detail="pair not in catalog")
    computed = ghost_generator(pair).hc_image
    expected = gl_product_form(r, n).rename(pair.a_labels)
    return _compare("gl-product", pair_id, expected, computed)


# --------------------------------------------------------------------------------------
# conjectural and centre conditions


@dataclass
class Condition:
    root: tuple
    kind: str  # reflection | odd-vanishing | odd-symmetry
    satisfied: bool
    witness: str = ""


@dataclass
class ConjectureReport:
    pair_id: str
    conditions: list = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return all(c.satisfied for c in self.conditions)

    def failed(self, kind: str | None = None) -> list:
        return [c for c in self.conditions if not c.satisfied and (kind is None or c.kind == kind)]


def _shifted_reflection(poly: Polynomial, datum: RestrictedRootDatum, value) -> Polynomial:
    """(r.p)(lambda) = p(r(lambda + rho) - rho) as a polynomial."""
    mat = datum.reflection_matrix(value)
    rho = datum.rho_bar
    q = datum.rank
    t = [Polynomial.variable(poly.vars, v) for v in poly.vars]
    images = []
    for i in range(q):
        img = Polynomial.constant(poly.vars, -rho[i])
        for k in range(q):
            if mat[i][k]:
                img = img + (t[k] + rho[k]) * mat[i][k]
        images.append(img)
    return poly.substitute(images)


def _hyperplane(datum: RestrictedRootDatum, value) -> list[Polynomial]:
    """Coordinates of lambda on {(lambda + rho, alpha) = 0} as polynomials in free parameters."""
    q = datum.rank
    form = datum.dual_form
    c = [sum((form[i][j] * value[j] for j in range(q)), ZERO) for i in range(q)]
    pivot = next(i for i in range(q) if c[i])
    names = tuple(f"s{i + 1}" for i in range(q) if i != pivot)
    rhs = -sum((c[i] * datum.rho_bar[i] for i in range(q)), ZERO)
    coords = [None] * q
    for i in range(q):
        if i != pivot:
            coords[i] = Polynomial.variable(names, f"s{i + 1}")
    lam_pivot = Polynomial.constant(names, rhs)
    for i in range(q):
        if i != pivot:
            lam_pivot = lam_pivot - coords[i] * c[i]
    coords[pivot] = lam_pivot * c[pivot].inverse()
    return coords


def _odd_condition(poly: Polynomial, datum: RestrictedRootDatum, value, r: int, sign: int) -> tuple[bool, str]:
    base = _hyperplane(datum, value)
    plus = [b + r * GaussianRational.coerce(a) for b, a in zip(base, value)]
    minus = [b - r * GaussianRational.coerce(a) for b, a in zip(base, value)]
    diff = poly.substitute(plus) - poly.substitute(minus) * sign
    return diff.is_zero(), "" if diff.is_zero() else f"r={r}: difference {diff}"


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def check_conjecture(pair_or_id, polys: list[Polynomial], degree_bound: int | None = None) -> ConjectureReport:
    """Reflection condition on the even-class restricted roots and the odd condition on the rest."""
    pair = _pair(pair_or_id)
    datum = pair.restricted
    report = ConjectureReport(pair.label)
    if degree_bound is not None:
        polys = [p for p in polys if p.degree <= degree_bound]
    for root in datum.positive():
        if root.even_mult:
            if not datum.pairing(root.value, root.value):
                report.conditions.append(Condition(root.value, "reflection", False, "isotropic even-class root"))
                continue
            n_alpha = datum.reduced_n_alpha(root)
            if n_alpha.denominator != 1:
                report.conditions.append(Condition(root.value, "reflection", False,
                                                   f"n_alpha = {_fraction_text(n_alpha)} is not an integer"))
                continue
            sign = -1 if n_alpha.numerator % 2 else 1
            for p in polys:
                diff = _shifted_reflection(p, datum, root.value) - p * sign
                report.conditions.append(Condition(root.value, "reflection", diff.is_zero(),
                                                   "" if diff.is_zero() else f"{p}: r.p - ({sign})p = {diff}"))
        else:
            for p in polys:
                for r in range(1, root.odd_mult // 2 + 1):
                    ok, why = _odd_condition(p, datum, root.value, r, -1 if r % 2 else 1)
                    report.conditions.append(Condition(root.value, "odd-vanishing", ok, why))
    return report


def check_center_conditions(poly: Polynomial, datum: RestrictedRootDatum) -> bool:
    """Shifted little Weyl group invariance plus the symmetric odd condition on all odd restrictions."""
    for mat_root in datum.even_class:
        if not is_positive(mat_root.value, datum.positivity):
            continue
        if not datum.pairing(mat_root.value, mat_root.value):
            continue
        if _shifted_reflection(poly, datum, mat_root.value) != poly:
            return False
    for root in datum.odd_restrictions:
        if not is_positive(root.value, datum.positivity):
            continue
        for r in range(1, root.odd_mult // 2 + 1):
            ok, _ = _odd_condition(poly, datum, root.value, r, 1)
            if not ok:
                return False
    return True


# --------------------------------------------------------------------------------------
# reduction and vanishing


def check_reduction(pair_id: str) -> Report:
    desc = find_pair(pair_id)
    if not desc.reduces_to:
        return Report("reduction", pair_id, "skip", detail="no reduced pair recorded")
    big = _pair(desc)
    small = _pair(desc.reduces_to)
    computed = ghost_generator(big).hc_image
    reduced = ghost_generator(small).hc_image
    if len(big.a_labels) != len(small.a_labels):
        return Report("reduction", pair_id, "fail", str(reduced), str(computed),
                      detail="ranks differ")
    return _compare("reduction", pair_id, reduced.rename(big.a_labels), computed,
                    f"reduced pair {desc.reduces_to}")


def _simple_roots(pair: SymmetricPair) -> list:
    positive = set(pair.iwasawa.borel_positive)
    simple = []
    for w in positive:
        decomposable = any(
            tuple(a - b for a, b in zip(w, u)) in positive for u in positive if u != w
        )
        if not decomposable:
            simple.append(w)
    return sorted(simple)


def vanishing_roots(pair: SymmetricPair) -> list:
    """Simple isotropic roots alpha with theta(alpha) != alpha and alpha + theta(alpha) not a root."""
    by_weight = pair.root_datum.by_weight()
    out = []
    for w in _simple_roots(pair):
        root = by_weight[w]
        if not root.isotropic:
            continue
        tw = pair.theta_root(root).weight
        if tw == w:
            continue
        total = tuple(a + b for a, b in zip(w, tw))
        if total in by_weight or not any(total):
            continue
        out.append(w)
    return out


def _divisible_by_linear(poly: Polynomial, linear: Polynomial) -> bool:
    """A linear form divides poly iff poly vanishes on its zero hyperplane."""
    coeffs = [linear.terms.get(tuple(1 if k == i else 0 for k in range(len(linear.vars))), ZERO)
              for i in range(len(linear.vars))]
    const = linear.terms.get((0,) * len(linear.vars), ZERO)
    pivot = next(i for i, c in enumerate(coeffs) if c)
    names = tuple(f"s{i + 1}" for i in range(len(coeffs)) if i != pivot)
    coords = []
    rest = Polynomial.constant(names, -const)
    for i, c in enumerate(coeffs):
        if i == pivot:
            coords.append(None)
            continue
        s = Polynomial.variable(names, f"s{i + 1}")
        coords.append(s)
        rest = rest - s * c
    coords[pivot] = rest * coeffs[pivot].inverse()
    return poly.substitute(coords).is_zero()


def check_vanishing(pair_id: str, polys: list[Polynomial] | None = None) -> Report:
    pair = _pair(pair_id)
    if pair.iwasawa is None:
        return Report("vanishing", pair_id, "skip", detail="no Iwasawa decomposition")
    roots = vanishing_roots(pair)
    if not roots:
        return Report("vanishing", pair_id, "skip", detail="no simple isotropic root meets the hypothesis")
    polys = polys if polys is not None else [ghost_generator(pair).hc_image]
    failures = []
    forms = []
    for w in roots:
        h = hbar(pair, w)
        forms.append(str(h))
        for p in polys:
            if not p.is_zero() and not _divisible_by_linear(p, h):
                failures.append(f"{h} does not divide {p}")
    status = "fail" if failures else "pass"
    return Report("vanishing", pair_id, status, " and ".join(f"({f}) | HC" for f in forms),
                  "; ".join(str(p) for p in polys), None, "; ".join(failures))


# --------------------------------------------------------------------------------------
# invariant polynomials


def sergeev_generators(alg: Superalgebra, degree_bound: int) -> list[Polynomial]:
    """Generators of the supersymmetric invariant polynomials on h*, up to a degree bound.

    Variables are the coordinate functions named by the algebra's weight symbols.
    """
    names = tuple(alg.weight_names)
    eps = [Polynomial.variable(names, v) for v in names if v.startswith("e")]
    dlt = [Polynomial.variable(names, v) for v in names if v.startswith("d")]
    zero = Polynomial.constant(names, 0)
    gens = []
    if alg.family == "gl":
        for k in range(1, degree_bound + 1):
            gens.append(sum((e ** k for e in eps), zero) - sum((d ** k for d in dlt), zero))
        return gens
    if alg.family != "osp":
        raise ValueError(f"no invariant generators for the {alg.family} family")
    for k in range(2, degree_bound + 1, 2):
        gens.append(sum((e ** k for e in eps), zero) - sum((d ** k for d in dlt), zero))
    if alg.m % 2 == 0 and eps:
        extra = Polynomial.constant(names, 1)
        for e in eps:
            extra = extra * e
        for e in eps:
            for d in dlt:
                extra = extra * (e * e - d * d)
        if extra.degree <= degree_bound:
            gens.append(extra)
    return gens


def _monomials(variables: tuple, degree: int) -> list[Polynomial]:
    out = []
    for combo in combinations_with_replacement(range(len(variables)), degree):
        exp = [0] * len(variables)
        for i in combo:
            exp[i] += 1
        out.append(Polynomial(variables, {tuple(exp): ONE}))
    return out


def _poly_vector(p: Polynomial) -> dict:
    return dict(p.terms)


def shifted_invariants(datum: RestrictedRootDatum, degree_bound: int, variables: tuple) -> list[Polynomial]:
    """Basis of the polynomials of degree <= bound fixed by the rho-shifted little Weyl group."""
    basis = []
    for d in range(degree_bound + 1):
        basis.extend(_monomials(variables, d))
    gens = [r.value for r in datum.even_class
            if is_positive(r.value, datum.positivity) and datum.pairing(r.value, r.value)]
    if not gens:
        return basis
    # c in the kernel of (w.m - m) for every generator w, columns indexed by monomials
    columns = []
    for m in basis:
        col = {}
        for g_idx, value in enumerate(gens):
            diff = _shifted_reflection(m, datum, value) - m
            for exp, c in diff.terms.items():
                col[(g_idx, exp)] = c
        columns.append(col)
    from .linalg import kernel

    out = []
    for rel in kernel(columns):
        p = Polynomial.constant(variables, 0)
        for idx, c in rel.items():
            p = p + basis[idx] * c
        out.append(p)
    return out


def in_even_pairs_list(desc: PairDescriptor) -> bool:
    p = desc.params
    if desc.family == "gl/gl×gl":
        return p["s"] == 0 and p["m"] >= 2 * p["r"]
    if desc.family == "osp/osp×osp":
        if p["s"] == 0 and p["m"] % 2 == 1 and p["m"] >= 2 * p["r"]:
            return True
        if p["r"] == 0 and p["n"] >= 2 * p["s"]:
            return True
    return False


def _span_by_degree(polys: list[Polynomial], bound: int) -> list[int]:
    """Dimension of span{p : deg p <= d} for d = 0..bound."""
    dims = []
    for d in range(bound + 1):
        span = EchelonBasis()
        for p in polys:
            if p.degree <= d:
                span.add(_poly_vector(p))
        dims.append(span.rank)
    return dims


def ghost_images(pair: SymmetricPair, max_power: int, z_generator: PBWElement | None = None) -> list[Polynomial]:
    """HC(v z^j) for j = 0..max_power, with z the even Casimir unless given."""
    z_generator = z_generator if z_generator is not None else even_casimir(pair)
    ghost = ghost_generator(pair)
    basis = pair.pbw
    out = []
    # z^j is only needed modulo U(g)k, and z^j = z * z^(j-1) multiplies on the left
    z = PBWElement.one(basis)
    for j in range(max_power + 1):
        out.append(ghost_hc(pair, z, ghost).hc_image)
        if j < max_power:
            z = PBWElement(basis, basis.product_terms(z_generator.terms, z.terms, truncate=True))
    return out


def check_even_pairs(pair_id: str, degree_bound: int = 6) -> Report:
    desc = find_pair(pair_id)
    if not in_even_pairs_list(desc):
        return Report("even-pairs", pair_id, "skip", detail="pair is outside the surjectivity list")
    pair = _pair(desc)
    if pair.iwasawa is None:
        return Report("even-pairs", pair_id, "skip", detail="no Iwasawa decomposition")
    v = ghost_generator(pair).hc_image
    d0 = v.degree
    if degree_bound < d0:
        return Report("even-pairs", pair_id, "skip", detail="degree bound below deg HC(v)")
    invariants = shifted_invariants(pair.restricted, degree_bound - d0, pair.a_labels)
    side_a = [q * v for q in invariants]
    max_power = (degree_bound - d0) // 2
    side_b = ghost_images(pair, max_power)
    dims_a = _span_by_degree(side_a, degree_bound)
    dims_b = _span_by_degree(side_b, degree_bound)
    joint = _span_by_degree(side_a + side_b, degree_bound)
    ok = dims_a == dims_b == joint
    return Report("even-pairs", pair_id, "pass" if ok else "fail",
                  f"span dims {dims_a}", f"span dims {dims_b} (joint {joint})", None,
                  f"degree bound {degree_bound}")
