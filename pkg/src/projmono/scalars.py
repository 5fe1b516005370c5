"""Exact Gaussian-rational scalars and conversions between scalar kinds.

Three scalar kinds circulate through the package:

* ``QQi`` -- exact complex rationals ``a + b*i`` with ``a, b`` in Q,
* Python ``complex`` -- working precision floats,
* ``mpmath.mpc`` -- extended precision, used only to resolve multiple roots.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import mpmath


class QQi:
    """Element of Q(i).  Immutable, hashable, interoperates with ints/Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QQi):
            re, im = re.re, re.im + Fraction(im)
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    def __reduce__(self):
        return (QQi, (self.re, self.im))

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> "QQi":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @staticmethod
    def _coerce(other):
        if isinstance(other, QQi):
            return other
        if isinstance(other, (int, Rational)):
            return QQi(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        return QQi._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) - other
        return QQi._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return other - complex(self)
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        if o.im == 0:
            return QQi._new(self.re * o.re, self.im * o.re)
        return QQi._new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) / other
        if o.im == 0:
            if o.re == 0:
                raise ZeroDivisionError("QQi division by zero")
            return QQi._new(self.re / o.re, self.im / o.re)
        n = o.re * o.re + o.im * o.im
        return QQi._new((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return QQi(1) / (self ** (-k))
        result, base = QQi(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return QQi._new(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return abs(complex(self))

    def to_mpc(self):
        return mpmath.mpc(_frac_to_mpf(self.re), _frac_to_mpf(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


ZERO = QQi(0)
ONE = QQi(1)
I = QQi(0, 1)


def _frac_to_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def is_exact(x) -> bool:
    return isinstance(x, (QQi, Rational))


def to_exact(x) -> QQi:
    """Convert to QQi.  Floats are converted exactly (binary value), not rounded."""
    if isinstance(x, QQi):
        return x
    if isinstance(x, (int, Rational)):
        return QQi(x)
    if isinstance(x, float):
        return QQi(Fraction(x))
    if isinstance(x, complex):
        return QQi(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, mpmath.mpc) or isinstance(x, mpmath.mpf):
        c = complex(x)
        return QQi(Fraction(c.real), Fraction(c.imag))
    raise TypeError(f"cannot convert {type(x).__name__} to QQi")


def to_complex(x) -> complex:
    return complex(x)


def to_mpc(x):
    if isinstance(x, QQi):
        return x.to_mpc()
    if isinstance(x, Rational):
        return mpmath.mpc(_frac_to_mpf(Fraction(x)))
    return mpmath.mpc(x)


def rational_approx(x: float, max_den: int = 10**7) -> Fraction:
    return Fraction(x).limit_denominator(max_den)
