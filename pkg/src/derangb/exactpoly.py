"""
Exact univariate polynomials and truncated exponential generating functions.

Polynomials are dense coefficient tuples, lowest degree first, with trailing
zeros stripped; the zero polynomial is the empty tuple.  ``IntPoly`` holds
Python ints, ``RatPoly`` holds ``Fraction`` values.  Mixed arithmetic
promotes to ``RatPoly``.

An ``EgfSeries`` of order N stores entries e_0, ..., e_N where the series is
sum_n e_n t^n / n!.  Storing n! times the t^n coefficient keeps integer
families integral, and products become binomial convolutions.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

#: Degree of the zero polynomial.
NEG_INF = -math.inf


class _Poly:
    __slots__ = ("coeffs",)

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = [self._coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    # construction helpers

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1):
        return cls((0,) * k + (c,))

    # basic queries

    def degree(self):
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, _Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.coeffs == _Poly._const_tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    @staticmethod
    def _const_tuple(c):
        return (c,) if c else ()

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    # arithmetic

    def _result_type(self, other):
        if isinstance(self, RatPoly) or isinstance(other, RatPoly):
            return RatPoly
        if isinstance(other, Fraction) and other.denominator != 1:
            return RatPoly
        return type(self)

    def _lift(self, other):
        if isinstance(other, _Poly):
            return other
        if isinstance(other, Rational):
            return RatPoly((other,)) if isinstance(other, Fraction) else IntPoly((other,))
        return None

    def __add__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        a, b = self.coeffs, q.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return self._result_type(q)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-c for c in self.coeffs)

    def __sub__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        a, b = self.coeffs, q.coeffs
        if not a or not b:
            return self._result_type(q)(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return self._result_type(q)(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = type(self).one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int):
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return type(self)((0,) * k + self.coeffs)

    def derivative(self):
        return type(self)(i * c for i, c in enumerate(self.coeffs) if i)

    def truncate(self, order: int):
        """Drop every term of degree above ``order``."""
        return type(self)(self.coeffs[: order + 1])


class IntPoly(_Poly):
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool):
            return int(c)
        if isinstance(c, int):
            return c
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        if isinstance(c, Rational) and c.denominator == 1:
            return int(c.numerator)
        raise TypeError(f"IntPoly coefficient must be an integer, got {c!r}")

    def to_rat(self) -> "RatPoly":
        return RatPoly(self.coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {"var": "x", "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "IntPoly":
        if data.get("var", "x") != "x":
            raise ValueError(f"unsupported variable {data.get('var')!r}")
        return cls(int(c) for c in data["coeffs"])

    @classmethod
    def from_json(cls, text: str) -> "IntPoly":
        return cls.from_dict(json.loads(text))

    def csv_rows(self) -> list[tuple[int, str]]:
        return [(i, str(c)) for i, c in enumerate(self.coeffs)]

    @classmethod
    def from_csv_rows(cls, rows: Iterable[Sequence]) -> "IntPoly":
        coeffs: dict[int, int] = {}
        for deg, c in rows:
            coeffs[int(deg)] = int(c)
        if not coeffs:
            return cls(())
        return cls(coeffs.get(i, 0) for i in range(max(coeffs) + 1))


class RatPoly(_Poly):
    """Polynomial with exact rational coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, Fraction):
            return c
        if isinstance(c, (int, Rational)):
            return Fraction(c)
        raise TypeError(f"RatPoly coefficient must be rational, got {c!r}")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_int(self) -> IntPoly:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coefficients")
        return IntPoly(c.numerator for c in self.coeffs)


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    """
    Human-readable rendering, lowest degree first.

    >>> format_poly((0, 15, 87, 15))
    '15x + 87x^2 + 15x^3'
    >>> format_poly(())
    '0'
    """
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _as_poly(p) -> _Poly:
    if isinstance(p, _Poly):
        return p
    if isinstance(p, Fraction):
        return RatPoly((p,))
    if isinstance(p, int):
        return IntPoly((p,))
    return IntPoly(p)


def add(p, q):
    return _as_poly(p) + _as_poly(q)


def mul(p, q):
    return _as_poly(p) * _as_poly(q)


def reverse(p, m: int):
    """
    Return x^m p(1/x).

    >>> reverse(IntPoly([1, 3]), 2)
    IntPoly([0, 3, 1])
    """
    p = _as_poly(p)
    if p.degree() > m:
        raise ValueError(f"degree {p.degree()} exceeds reversal bound {m}")
    if p.is_zero():
        return p
    padded = p.coeffs + (0,) * (m + 1 - len(p.coeffs))
    return type(p)(reversed(padded))


def er_operator(p, r: int):
    """Keep every r-th coefficient: c_0 + c_r x + c_{2r} x^2 + ..."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    p = _as_poly(p)
    return type(p)(p.coeffs[::r])


def series_div_one_minus_x_pow(p, n: int, order: int) -> RatPoly:
    """Coefficients of p(x) / (1 - x)^n through x^order."""
    if n < 0 or order < 0:
        raise ValueError("n and order must be nonnegative")
    p = _as_poly(p)
    if n == 0:
        return RatPoly(p.coeffs[: order + 1])
    # 1/(1-x)^n = sum_i C(i+n-1, n-1) x^i
    kernel = [math.comb(i + n - 1, n - 1) for i in range(order + 1)]
    out = [0] * (order + 1)
    for i, c in enumerate(p.coeffs[: order + 1]):
        if c:
            for j in range(order + 1 - i):
                out[i + j] += c * kernel[j]
    return RatPoly(out)


def poly_divmod(p, q) -> tuple[RatPoly, RatPoly]:
    """Euclidean division over the rationals."""
    p, q = RatPoly(_as_poly(p).coeffs), RatPoly(_as_poly(q).coeffs)
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dq = len(q.coeffs) - 1
    lead = q.coeffs[-1]
    quot = [Fraction(0)] * max(len(rem) - dq, 0)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c:
            for j, qj in enumerate(q.coeffs):
                rem[k + j] -= c * qj
    return RatPoly(quot), RatPoly(rem[:dq])


def exact_div(p, q):
    """Divide p by q, raising ``ValueError`` if a remainder is left."""
    quot, rem = poly_divmod(p, q)
    if not rem.is_zero():
        raise ValueError(f"{q} does not divide {p}")
    if isinstance(p, IntPoly) and isinstance(q, IntPoly) and quot.is_integral():
        return quot.to_int()
    return quot


def poly_gcd(p, q) -> RatPoly:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    a, b = RatPoly(_as_poly(p).coeffs), RatPoly(_as_poly(q).coeffs)
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero():
        return a
    return a * (1 / a.coeffs[-1])


@dataclass(frozen=True)
class EgfSeries:
    """Truncated series sum_{n<=order} coeffs[n] t^n / n! with coefficients in Q[x]."""

    order: int
    coeffs: tuple[RatPoly, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        cs = tuple(c if isinstance(c, RatPoly) else RatPoly(_as_poly(c).coeffs) for c in self.coeffs)
        if len(cs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_entries(cls, entries: Sequence, order: int | None = None) -> "EgfSeries":
        entries = list(entries)
        if order is None:
            order = len(entries) - 1
        entries = entries[: order + 1] + [RatPoly()] * (order + 1 - len(entries))
        return cls(order, tuple(entries))

    @classmethod
    def identity(cls, order: int) -> "EgfSeries":
        return cls.from_entries([RatPoly.one()], order)

    @classmethod
    def zero(cls, order: int) -> "EgfSeries":
        return cls.from_entries([], order)

    @classmethod
    def exp(cls, c, order: int) -> "EgfSeries":
        """e^{c t} for a polynomial c in x: the n-th entry is c^n."""
        c = RatPoly(_as_poly(c).coeffs)
        entries = [RatPoly.one()]
        for _ in range(order):
            entries.append(entries[-1] * c)
        return cls(order, tuple(entries))

    def entry(self, n: int) -> RatPoly:
        return self.coeffs[n]

    def int_entry(self, n: int) -> IntPoly:
        return self.coeffs[n].to_int()

    def truncate(self, order: int) -> "EgfSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return EgfSeries(order, self.coeffs[: order + 1])

    def _check(self, other: "EgfSeries"):
        if not isinstance(other, EgfSeries):
            return False
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return EgfSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return EgfSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return EgfSeries(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, EgfSeries):
            return egf_mul(self, other)
        if isinstance(other, (_Poly, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "EgfSeries":
        """Multiply by a t-free polynomial c(x)."""
        c = _as_poly(c)
        return EgfSeries(self.order, tuple(a * c for a in self.coeffs))

    def divide_poly(self, q) -> "EgfSeries":
        """Divide every entry exactly by the polynomial q(x)."""
        return EgfSeries(self.order, tuple(exact_div(a, q) for a in self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, EgfSeries):
            return egf_mul(self, egf_inverse(other))
        return NotImplemented


def egf_mul(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    """Binomial convolution: entry n is sum_k C(n, k) a_k b_{n-k}."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} vs {b.order}")
    out = []
    for n in range(a.order + 1):
        acc = RatPoly()
        for k in range(n + 1):
            ak, bk = a.coeffs[k], b.coeffs[n - k]
            if ak and bk:
                acc = acc + (ak * bk) * math.comb(n, k)
        out.append(acc)
    return EgfSeries(a.order, tuple(out))


def egf_inverse(a: EgfSeries) -> EgfSeries:
    """Multiplicative inverse; the t^0 entry must be a nonzero rational constant."""
    a0 = a.coeffs[0]
    if a0.is_zero() or a0.degree() > 0:
        raise ValueError(f"constant term {a0} is not an invertible constant")
    inv0 = 1 / a0.coeffs[0]
    b = [RatPoly((inv0,))]
    for n in range(1, a.order + 1):
        acc = RatPoly()
        for k in range(1, n + 1):
            if a.coeffs[k]:
                acc = acc + (a.coeffs[k] * b[n - k]) * math.comb(n, k)
        b.append(acc * (-inv0))
    return EgfSeries(a.order, tuple(b))
