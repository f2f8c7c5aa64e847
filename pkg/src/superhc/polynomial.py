"""Sparse multivariate polynomials with Gaussian-rational coefficients."""

from __future__ import annotations

from typing import Sequence

from .scalars import ONE, ZERO, GaussianRational, format_rational, to_rational

__all__ = ["Polynomial", "PolynomialSchemaError"]


class PolynomialSchemaError(ValueError):
    pass


class Polynomial:
    """A polynomial in named variables; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: dict | None = None):
        self.vars = tuple(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.vars) or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for variables {self.vars}")
            c = GaussianRational.coerce(c)
            if c:
                clean[exp] = clean.get(exp, ZERO) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.vars, obj.terms = variables, terms
        return obj

    # constructors ---------------------------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise KeyError(f"unknown variable {name!r}")
        return cls._raw(variables, {exp: ONE})

    @classmethod
    def linear(cls, variables: Sequence[str], coefficients: Sequence, constant=0) -> "Polynomial":
        """sum_i coefficients[i] * x_i + constant."""
        variables = tuple(variables)
        terms = {}
        for i, c in enumerate(coefficients):
            exp = tuple(1 if k == i else 0 for k in range(len(variables)))
            terms[exp] = c
        terms[(0,) * len(variables)] = constant
        return cls(variables, terms)

    # arithmetic -----------------------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.vars, other)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            new = out.get(exp, ZERO) + c
            if new:
                out[exp] = new
            else:
                out.pop(exp, None)
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = GaussianRational.coerce(other)
            if not c:
                return Polynomial._raw(self.vars, {})
            return Polynomial._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                new = out.get(exp, ZERO) + c1 * c2
                if new:
                    out[exp] = new
                else:
                    out.pop(exp, None)
        return Polynomial._raw(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.vars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        try:
            return self == Polynomial.constant(self.vars, other)
        except (TypeError, ValueError):
            return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure ------------------------------------------------------------------------
    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def top_part(self) -> "Polynomial":
        return self.homogeneous_part(self.degree)

    def leading_exponent(self) -> tuple | None:
        """Largest exponent by total degree, then lexicographically from the last variable."""
        if not self.terms:
            return None
        return max(self.terms, key=lambda e: (sum(e), tuple(reversed(e))))

    def leading_coefficient(self) -> GaussianRational:
        exp = self.leading_exponent()
        return self.terms[exp] if exp is not None else ZERO

    def monic(self) -> tuple["Polynomial", GaussianRational]:
        """(p / c, c) with c the leading coefficient; the zero polynomial gives (0, 0)."""
        c = self.leading_coefficient()
        if not c:
            return self, ZERO
        return self * c.inverse(), c

    def proportional_to(self, other: "Polynomial") -> GaussianRational | None:
        """Scalar s with self == s * other, or None; zero only matches zero."""
        self._check(other)
        if not other.terms:
            return ONE if not self.terms else None
        exp = other.leading_exponent()
        if exp not in self.terms:
            return None
        s = self.terms[exp] / other.terms[exp]
        return s if self == other * s else None

    def evaluate(self, point: Sequence) -> GaussianRational:
        point = [GaussianRational.coerce(p) for p in point]
        if len(point) != len(self.vars):
            raise ValueError("point has the wrong number of coordinates")
        total = ZERO
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose with polynomials: variable i is replaced by ``images[i]``."""
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        target = images[0].vars if images else ()
        powers: list[dict] = [dict() for _ in images]
        result = Polynomial._raw(target, {})
        for exp, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(exp):
                if e:
                    if e not in powers[i]:
                        powers[i][e] = images[i] ** e
                    term = term * powers[i][e]
            result = result + term
        return result

    def rename(self, variables: Sequence[str]) -> "Polynomial":
        if len(variables) != len(self.vars):
            raise ValueError("renaming must keep the number of variables")
        return Polynomial._raw(tuple(variables), dict(self.terms))

    # formatting -----------------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in reversed(e)))):
            c = self.terms[exp]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e)
            if not mono:
                parts.append(_signed(c))
            elif c == ONE:
                parts.append(("+", mono))
            elif c == -ONE:
                parts.append(("-", mono))
            else:
                sign, mag = _signed(c)
                parts.append((sign, f"{mag}*{mono}"))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__

    # serialization --------------------------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for exp in sorted(self.terms):
            c = self.terms[exp]
            terms.append({"exp": list(exp), "re": format_rational(c.re), "im": format_rational(c.im)})
        return {"vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        try:
            variables = [str(v) for v in data["vars"]]
            terms = {}
            for term in data["terms"]:
                exp = tuple(int(e) for e in term["exp"])
                value = GaussianRational(to_rational(str(term["re"])), to_rational(str(term.get("im", "0"))))
                terms[exp] = terms.get(exp, ZERO) + value
        except (KeyError, TypeError, ValueError) as exc:
            raise PolynomialSchemaError(f"malformed polynomial JSON: {exc}") from None
        return cls(variables, terms)


def _signed(c: GaussianRational) -> tuple[str, str]:
    if c.is_real():
        return ("-", format_rational(-c.re)) if c.re < 0 else ("+", format_rational(c.re))
    return "+", f"({c})"
