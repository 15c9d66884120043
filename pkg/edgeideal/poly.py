"""
Exact integer polynomials in t and series of the form N(t)/(1-t)^e.

Coefficients are Python ints held to the signed 64-bit range; leaving that
range raises PolynomialOverflowError instead of wrapping.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, List

from edgeideal.errors import PolynomialError, PolynomialOverflowError

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


def _checked(c: int) -> int:
    if not INT64_MIN <= c <= INT64_MAX:
        raise PolynomialOverflowError(f"coefficient {c} leaves the signed 64-bit range")
    return c


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [_checked(int(c)) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    def __reduce__(self):
        return (IntPolynomial, (self.coeffs,))

    @classmethod
    def monomial(cls, c: int, k: int) -> "IntPolynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree in t; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        other = _coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(size))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = _checked(out[i + j] + _checked(a * b))
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, t: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = _checked(_checked(value * t) + c)
        return value

    def eval_at_one(self) -> int:
        return _checked(sum(self.coeffs))

    def divide_by_one_minus_t(self) -> "IntPolynomial":
        """Exact quotient by (1 - t); requires p(1) == 0."""
        # (1 - t) q = p gives q_k = p_0 + ... + p_k
        quotient = []
        running = 0
        for c in self.coeffs:
            running = _checked(running + c)
            quotient.append(running)
        if running != 0:
            raise PolynomialError(f"{self.render()} is not divisible by (1 - t)")
        return IntPolynomial(quotient[:-1])

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def render(self) -> str:
        """Text form `c0 + c1*t + c2*t^2`, zero terms omitted."""
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            body = str(abs(c)) if k == 0 else f"{abs(c)}*t" if k == 1 else f"{abs(c)}*t^{k}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"

    __str__ = render


def _coerce(value) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial([value])
    raise TypeError(f"cannot use {type(value).__name__} as an integer polynomial")


ZERO = IntPolynomial()
ONE = IntPolynomial([1])
T = IntPolynomial([0, 1])
ONE_MINUS_T = IntPolynomial([1, -1])


def add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p + q


def mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p * q


def eval_at_one(p: IntPolynomial) -> int:
    return p.eval_at_one()


@dataclass(frozen=True)
class RationalSeries:
    """num(t) / (1 - t)^denom_exp."""

    num: IntPolynomial
    denom_exp: int

    def __post_init__(self):
        if self.denom_exp < 0:
            raise ValueError("denominator exponent must be nonnegative")

    @classmethod
    def of(cls, num: IntPolynomial, denom_exp: int) -> "RationalSeries":
        return normalize(cls(num, denom_exp))

    @property
    def is_canonical(self) -> bool:
        if self.num.is_zero():
            return self.denom_exp == 0
        return self.num.eval_at_one() != 0 or self.denom_exp == 0

    @property
    def dim(self) -> int:
        return self.denom_exp

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        return series_mul(self, other)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        e = max(self.denom_exp, other.denom_exp)
        num = (self.num * ONE_MINUS_T ** (e - self.denom_exp)
               + other.num * ONE_MINUS_T ** (e - other.denom_exp))
        return RationalSeries.of(num, e)

    def expand(self, order: int) -> List[int]:
        """Power-series coefficients of t^0..t^(order-1)."""
        e = self.denom_exp
        if e == 0:
            kernel = [1] + [0] * (order - 1)
        else:
            kernel = [_checked(comb(k + e - 1, e - 1)) for k in range(order)]
        coefficients = []
        for k in range(order):
            total = 0
            for i in range(min(k, self.num.degree) + 1):
                total = _checked(total + _checked(self.num[i] * kernel[k - i]))
            coefficients.append(total)
        return coefficients

    def render(self) -> str:
        return f"({self.num.render()})/(1-t)^{self.denom_exp}"

    __str__ = render


def normalize(s: RationalSeries) -> RationalSeries:
    """Cancel (1 - t) factors until num(1) != 0; the exponent never drops below 0."""
    if s.num.is_zero():
        return RationalSeries(ZERO, 0)
    num, e = s.num, s.denom_exp
    while e > 0 and num.eval_at_one() == 0:
        num = num.divide_by_one_minus_t()
        e -= 1
    return RationalSeries(num, e)


def series_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    return RationalSeries.of(a.num * b.num, a.denom_exp + b.denom_exp)

