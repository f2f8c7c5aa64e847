"""Exact Gaussian rationals, the scalar field used throughout the package."""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

__all__ = ["GaussianRational", "gq", "ZERO", "ONE", "I", "to_rational", "format_rational"]


def to_rational(value) -> mpq:
    """Coerce ints, Fractions, mpq or 'a/b' strings to an exact rational."""
    if isinstance(value, type(mpq())):
        return value
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value.strip().lstrip("+"))
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use an exact rational")
    raise TypeError(f"cannot convert {value!r} to a rational")


def format_rational(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """A number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_rational(re)
        self.im = to_rational(im)

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "GaussianRational":
        obj = cls.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls._raw(to_rational(value), _Q0)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse forms like ``3``, ``-1/2``, ``i``, ``2/3 i``, ``1/2-3/4i``, ``1/2*i``."""
        compact = text.replace(" ", "")
        try:
            if not compact.endswith("i"):
                return cls._raw(mpq(compact), _Q0)
            body = compact[:-1].rstrip("*")
            split = max(body.rfind("+"), body.rfind("-"))
            if split > 0:
                real_text, imag_text = body[:split], body[split:]
                if real_text.endswith("+"):
                    real_text = real_text[:-1]
            else:
                real_text, imag_text = "", body
            if imag_text in ("", "+"):
                imag = _Q1
            elif imag_text == "-":
                imag = -_Q1
            else:
                imag = mpq(imag_text.lstrip("+"))
            real = mpq(real_text) if real_text else _Q0
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a Gaussian rational: {text!r}") from None
        return cls._raw(real, imag)

    # arithmetic -----------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, _Q0)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational._raw(self.re / norm, -self.im / norm)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    # comparisons ------------------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    # formatting -------------------------------------------------------------------
    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return _imag_str(self.im)
        imag = _imag_str(abs(self.im))
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{imag}"

    def __repr__(self):
        return f"GaussianRational({self})"

    def to_json(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))} i"

    @classmethod
    def from_json(cls, text: str) -> "GaussianRational":
        return cls.parse(text)


def _imag_str(q: mpq) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{format_rational(q)}i"


_Q0 = mpq(0)
_Q1 = mpq(1)
ZERO = GaussianRational._raw(_Q0, _Q0)
ONE = GaussianRational._raw(_Q1, _Q0)
I = GaussianRational._raw(_Q0, _Q1)


def gq(value=0, im=0) -> GaussianRational:
    """Shorthand constructor accepting ints, Fractions and strings."""
    if isinstance(value, str) and im == 0:
        return GaussianRational.parse(value)
    return GaussianRational(value, im)
