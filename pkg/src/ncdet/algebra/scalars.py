"""Scalar kinds for noncommutative linear algebra.

Every scalar used by the matrix code satisfies one contract: a division
algebra element with an anti-involution (``conjugate``) whose fixed elements
are central. The contract is expressed as single-dispatch functions
(``conjugate``, ``inverse``, ``is_zero``, ``norm``, ``real_part``,
``components``) registered for

* ``Fraction`` and ``float``   -- the real field, conjugation is the identity
* ``Complex``                  -- commutative, conjugation negates ``im``
* ``Quaternion``               -- h = a + b*i + c*j + d*k with i*j = k = -j*i

Rationals are ``fractions.Fraction`` (always in lowest terms, positive
denominator); the f64 kinds carry ``float`` components.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import singledispatch
from typing import Sequence, Tuple, Union

Real = Union[Fraction, float]

_REALS = (int, Fraction, float)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _as_real(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class Complex:
    re: Real
    im: Real

    def __post_init__(self):
        object.__setattr__(self, "re", _as_real(self.re))
        object.__setattr__(self, "im", _as_real(self.im))

    def __add__(self, other):
        if isinstance(other, Complex):
            return Complex(self.re + other.re, self.im + other.im)
        if isinstance(other, _REALS):
            return Complex(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, (Complex,) + _REALS):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _REALS):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Complex):
            return Complex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, _REALS):
            return Complex(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Complex):
            return self * other.inverse()
        if isinstance(other, _REALS):
            return Complex(self.re / other, self.im / other)
        return NotImplemented

    def conjugate(self) -> "Complex":
        return Complex(self.re, -self.im)

    def norm(self) -> Real:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Complex":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("complex inverse of zero")
        return Complex(self.re / n, -self.im / n)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


@dataclass(frozen=True)
class Quaternion:
    a: Real
    b: Real
    c: Real
    d: Real

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _as_real(getattr(self, name)))

    @property
    def parts(self) -> Tuple[Real, Real, Real, Real]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)
        if isinstance(other, _REALS):
            return Quaternion(self.a + other, self.b, self.c, self.d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        if isinstance(other, (Quaternion,) + _REALS):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _REALS):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a1, b1, c1, d1 = self.parts
            a2, b2, c2, d2 = other.parts
            return Quaternion(
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            )
        if isinstance(other, _REALS):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        return NotImplemented

    def __rmul__(self, other):
        # reals are central
        if isinstance(other, _REALS):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        # left and right division differ for quaternion divisors; only reals are allowed here
        if isinstance(other, _REALS):
            return Quaternion(self.a / other, self.b / other, self.c / other, self.d / other)
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> Real:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("quaternion inverse of zero")
        return self.conjugate() / n

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_real(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def to_pair(self) -> "ComplexPair":
        return ComplexPair.from_quaternion(self)

    def __str__(self):
        return f"({self.a}, {self.b}i, {self.c}j, {self.d}k)"


@dataclass(frozen=True)
class ComplexPair:
    """h = alpha + j*beta with alpha = a + b*i and beta = c - d*i."""

    alpha: Complex
    beta: Complex

    @classmethod
    def from_quaternion(cls, h: Quaternion) -> "ComplexPair":
        return cls(Complex(h.a, h.b), Complex(h.c, -h.d))

    def to_quaternion(self) -> Quaternion:
        return Quaternion(self.alpha.re, self.alpha.im, self.beta.re, -self.beta.im)


def theta(h: Quaternion) -> Tuple[Tuple[Complex, Complex], Tuple[Complex, Complex]]:
    """2x2 complex image ((alpha, -conj(beta)), (beta, conj(alpha)))."""
    pair = h.to_pair()
    return (
        (pair.alpha, -pair.beta.conjugate()),
        (pair.beta, pair.alpha.conjugate()),
    )


def det2(m) -> Complex:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


# -- the scalar contract ----------------------------------------------------


@singledispatch
def conjugate(x):
    raise TypeError(f"not a scalar: {type(x).__name__}")


@conjugate.register(int)
@conjugate.register(Fraction)
@conjugate.register(float)
def _(x):
    return x


@conjugate.register(Complex)
@conjugate.register(Quaternion)
def _(x):
    return x.conjugate()


@singledispatch
def inverse(x):
    raise TypeError(f"not a scalar: {type(x).__name__}")


@inverse.register(int)
@inverse.register(Fraction)
def _(x):
    return 1 / Fraction(x)


@inverse.register(float)
def _(x):
    return 1.0 / x


@inverse.register(Complex)
@inverse.register(Quaternion)
def _(x):
    return x.inverse()


@singledispatch
def is_zero(x) -> bool:
    raise TypeError(f"not a scalar: {type(x).__name__}")


@is_zero.register(int)
@is_zero.register(Fraction)
@is_zero.register(float)
def _(x):
    return x == 0


@is_zero.register(Complex)
@is_zero.register(Quaternion)
def _(x):
    return x.is_zero()


@singledispatch
def norm(x) -> Real:
    """nu(x) = x * conj(x), returned as a real of the component kind."""
    raise TypeError(f"not a scalar: {type(x).__name__}")


@norm.register(int)
@norm.register(Fraction)
@norm.register(float)
def _(x):
    return x * x


@norm.register(Complex)
@norm.register(Quaternion)
def _(x):
    return x.norm()


@singledispatch
def real_part(x) -> Real:
    raise TypeError(f"not a scalar: {type(x).__name__}")


@real_part.register(int)
@real_part.register(Fraction)
@real_part.register(float)
def _(x):
    return x


@real_part.register(Complex)
def _(x):
    return x.re


@real_part.register(Quaternion)
def _(x):
    return x.a


@singledispatch
def components(x) -> Tuple[Real, ...]:
    raise TypeError(f"not a scalar: {type(x).__name__}")


@components.register(int)
@components.register(Fraction)
@components.register(float)
def _(x):
    return (x,)


@components.register(Complex)
def _(x):
    return (x.re, x.im)


@components.register(Quaternion)
def _(x):
    return x.parts


def is_central_fixed(x) -> bool:
    """True when x is fixed by the anti-involution (and therefore central)."""
    return conjugate(x) == x


class ScalarKind(str, Enum):
    RATIONAL_QUATERNION = "rational-quaternion"
    F64_QUATERNION = "f64-quaternion"
    RATIONAL_COMPLEX = "rational-complex"
    F64_COMPLEX = "f64-complex"
    RATIONAL = "rational"

    @property
    def is_exact(self) -> bool:
        return not self.value.startswith("f64")

    @property
    def is_quaternion(self) -> bool:
        return self.value.endswith("quaternion")

    @property
    def is_commutative(self) -> bool:
        return not self.is_quaternion

    @property
    def arity(self) -> int:
        if self.is_quaternion:
            return 4
        if self.value.endswith("complex"):
            return 2
        return 1

    @property
    def complex_kind(self) -> "ScalarKind":
        return ScalarKind.RATIONAL_COMPLEX if self.is_exact else ScalarKind.F64_COMPLEX

    def real(self, x) -> Real:
        return Fraction(x) if self.is_exact else float(x)

    def from_components(self, parts: Sequence) -> object:
        if len(parts) != self.arity:
            raise ValueError(f"{self.value} needs {self.arity} components, got {len(parts)}")
        values = [self.real(p) for p in parts]
        if self.arity == 4:
            return Quaternion(*values)
        if self.arity == 2:
            return Complex(*values)
        return values[0]

    def embed(self, x) -> object:
        """The real x as a scalar of this kind."""
        return self.from_components([x] + [0] * (self.arity - 1))

    def zero(self):
        return self.embed(0)

    def one(self):
        return self.embed(1)


# -- tolerance for float identity checks --------------------------------------


@dataclass(frozen=True)
class Tolerance:
    rtol: float = 1e-9
    atol: float = 1e-12


def close(x, y, tolerance: Tolerance | None = None) -> bool:
    """Exact equality unless a float component is involved and a tolerance is given."""
    cx, cy = components(x), components(y)
    if tolerance is None or not any(isinstance(v, float) for v in cx + cy):
        return cx == cy if len(cx) == len(cy) else x == y
    if len(cx) != len(cy):
        return False
    scale = max(max(abs(v) for v in cx), max(abs(v) for v in cy))
    bound = tolerance.atol + tolerance.rtol * scale
    return all(abs(u - v) <= bound for u, v in zip(cx, cy))


# -- text form ----------------------------------------------------------------


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (optional sign, nonzero denominator)."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational: {text!r}")
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_real(x: Real) -> str | float:
    if isinstance(x, float):
        return x
    return str(Fraction(x))


def format_scalar(x, as_float: bool = False):
    """Quaternions as 4-arrays, complex numbers as 2-arrays, reals bare."""
    parts = components(x)
    if as_float:
        rendered = [float(p) for p in parts]
    else:
        rendered = [format_real(p) for p in parts]
    if isinstance(x, (Quaternion, Complex)):
        return rendered
    return rendered[0]
