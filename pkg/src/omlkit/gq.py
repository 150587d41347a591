"""Exact Gaussian-rational scalars: complex numbers with rational parts.

All arithmetic is exact; there is no rounding anywhere in the package.
"""

from __future__ import annotations

import re
from fractions import Fraction


class GQ:
    """A complex number a + b*i with a, b rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GQ is immutable")

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "GQ":
        if isinstance(x, GQ):
            return x
        if isinstance(x, (int, Fraction)):
            return GQ(x)
        return NotImplemented

    def __add__(self, other):
        o = GQ._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GQ._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GQ._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GQ(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = GQ._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GQ(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GQ._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n2 = o.re * o.re + o.im * o.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GQ((self.re * o.re + self.im * o.im) / n2,
                  (self.im * o.re - self.re * o.im) / n2)

    def __rtruediv__(self, other):
        o = GQ._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GQ(-self.re, -self.im)

    def conj(self) -> "GQ":
        return GQ(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus; a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        o = GQ._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    # -- text form --------------------------------------------------------

    def __repr__(self):
        return "GQ(%r, %r)" % (str(self.re), str(self.im))

    def __str__(self):
        return format_gq(self)


ZERO = GQ(0)
ONE = GQ(1)
I = GQ(0, 1)

_FRAC = r"\d+(?:/\d+)?"
_RE_PURE_REAL = re.compile(r"^(?P<re>[+-]?%s)$" % _FRAC)
_RE_PURE_IMAG = re.compile(r"^(?P<im>[+-]?(?:%s)?)i$" % _FRAC)
_RE_BOTH = re.compile(r"^(?P<re>[+-]?%s)(?P<im>[+-](?:%s)?)i$" % (_FRAC, _FRAC))


def parse_gq(text: str) -> GQ:
    """Parse a scalar written like '3', '-1/2', 'i', '2i' or '1/2+3/4i'."""
    s = text.replace(" ", "")
    m = _RE_PURE_REAL.match(s)
    if m:
        return GQ(Fraction(m.group("re")))
    m = _RE_PURE_IMAG.match(s)
    if m:
        return GQ(0, _imag_frac(m.group("im")))
    m = _RE_BOTH.match(s)
    if m:
        return GQ(Fraction(m.group("re")), _imag_frac(m.group("im")))
    raise ValueError("cannot parse Gaussian rational: %r" % text)


def _imag_frac(s: str) -> Fraction:
    if s in ("", "+"):
        return Fraction(1)
    if s == "-":
        return Fraction(-1)
    return Fraction(s)


def format_gq(z: GQ) -> str:
    """Canonical text form; inverse of parse_gq."""
    if z.im == 0:
        return str(z.re)
    imag = "i" if abs(z.im) == 1 else "%si" % abs(z.im)
    sign = "-" if z.im < 0 else "+"
    if z.re == 0:
        return ("-" if z.im < 0 else "") + imag
    return "%s%s%s" % (z.re, sign, imag)
