"""Exact scalars: rationals and Gaussian rationals.

Real values are plain ``gmpy2.mpq`` objects.  A value with nonzero imaginary
part is a :class:`Gaussian`; arithmetic that cancels the imaginary part
collapses back to ``mpq``, so purely real computations never pay for complex
bookkeeping.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

__all__ = [
    "Gaussian",
    "Scalar",
    "I",
    "ZERO",
    "ONE",
    "scalar",
    "gaussian",
    "parse_scalar",
    "format_scalar",
    "conj",
    "real_part",
    "imag_part",
    "is_real",
    "sort_key",
]

_MPQ = type(mpq(0))


class Gaussian:
    """``re + im*i`` with rational parts and ``im != 0``.

    Use :func:`gaussian` rather than the constructor; it returns an ``mpq``
    when the imaginary part vanishes.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    def __add__(self, other):
        if type(other) is Gaussian:
            return gaussian(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, _MPQ)):
            return Gaussian(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if type(other) is Gaussian:
            return gaussian(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, _MPQ)):
            return Gaussian(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, _MPQ)):
            return Gaussian(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if type(other) is Gaussian:
            a, b, c, d = self.re, self.im, other.re, other.im
            return gaussian(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, _MPQ)):
            if other == 0:
                return mpq(0)
            return Gaussian(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        if type(other) is Gaussian:
            n = other.norm()
            a, b, c, d = self.re, self.im, other.re, other.im
            return gaussian((a * c + b * d) / n, (b * c - a * d) / n)
        if isinstance(other, (int, _MPQ)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Gaussian(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, _MPQ)):
            n = self.norm()
            return gaussian(other * self.re / n, -other * self.im / n)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        result, base = mpq(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if type(other) is Gaussian:
            return self.re == other.re and self.im == other.im
        # normalized: a Gaussian is never real
        return False if isinstance(other, (int, _MPQ, Fraction)) else NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __repr__(self):
        return f"Gaussian({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[_MPQ, Gaussian]

ZERO = mpq(0)
ONE = mpq(1)
I = Gaussian(mpq(0), mpq(1))


def gaussian(re, im=0) -> Scalar:
    re, im = mpq(re), mpq(im)
    if im == 0:
        return re
    return Gaussian(re, im)


def scalar(value) -> Scalar:
    """Coerce ``value`` to an exact scalar.

    Accepts ints, ``Fraction``, ``mpq``, :class:`Gaussian`, strings in the
    serialization format, and ``complex`` values with integral parts.
    Floats are rejected: they would silently introduce rounding.
    """
    if isinstance(value, _MPQ) or type(value) is Gaussian:
        return value
    if isinstance(value, bool):
        return mpq(int(value))
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, complex):
        if value.real != int(value.real) or value.imag != int(value.imag):
            raise TypeError("non-integral complex literals are not exact")
        return gaussian(int(value.real), int(value.imag))
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction or a string")
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


_RAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?P<re>[+-]?{_RAT})?(?:(?P<isign>[+-])?(?P<im>{_RAT})?(?P<unit>[ij]))?$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"p/q+r/t i"``, ``"-i"``, ``"3/2i"`` and similar.

    Whitespace is ignored.
    """
    s = "".join(text.split())
    m = _SCALAR_RE.match(s)
    if not s or m is None or (m.group("re") is None and m.group("unit") is None):
        raise ValueError(f"malformed scalar {text!r}")
    re_part = mpq(m.group("re").lstrip("+")) if m.group("re") else mpq(0)
    if m.group("unit") is None:
        return re_part
    if m.group("re") is not None and m.group("isign") is None:
        # "3i" parsed with re="3": that is the imaginary coefficient
        if m.group("im") is not None:
            raise ValueError(f"malformed scalar {text!r}")
        return gaussian(0, re_part)
    im_part = mpq(m.group("im")) if m.group("im") else mpq(1)
    if m.group("isign") == "-":
        im_part = -im_part
    return gaussian(re_part, im_part)


def _fmt_rat(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    x = scalar(x)
    if type(x) is not Gaussian:
        return _fmt_rat(x)
    im = x.im
    mag = "" if abs(im) == 1 else _fmt_rat(abs(im))
    if x.re == 0:
        return ("-" if im < 0 else "") + mag + "i"
    return _fmt_rat(x.re) + ("-" if im < 0 else "+") + mag + "i"


def conj(x) -> Scalar:
    return x.conjugate() if type(x) is Gaussian else x


def real_part(x):
    return x.re if type(x) is Gaussian else mpq(x)


def imag_part(x):
    return x.im if type(x) is Gaussian else mpq(0)


def is_real(x) -> bool:
    return type(x) is not Gaussian


def sort_key(x):
    """Canonical eigenvalue order: lexicographic on (re, im)."""
    return (real_part(x), imag_part(x))
