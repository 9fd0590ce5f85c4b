"""Exact arithmetic in the real tower Q ⊂ Q[√2] ⊂ Q[√(2+√2)] ⊂ ...

Level ``k`` of the tower is ``Q[θ_k]`` with ``θ_k = 2cos(π/2^(k+1))``, whose
minimal polynomial is ``2·T_{2^k}(x/2)`` (a Dickson polynomial with integer
coefficients).  The public coefficient vector of an element is its power-basis
representation ``Σ coeffs[i]·θ_k^i``.

Internally an element is stored sparsely in the basis

    b_0 = 1,  b_i = 2cos(iπ/2^(k+1)) = D_i(θ_k)   (0 < i < 2^k)

where ``D_i`` is the Dickson polynomial ``2·T_i(x/2)``.  In this basis
``b_i·b_j = D_{i+j} + D_{|i-j|}``, lifting one level doubles every index and
each cosine constant is a single term, so the large plans stay cheap.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Union

from .poly import Poly, poly_xgcd

Rational = Fraction

#: Highest tower level any operation will build.  A scaled DCT-4 of size
#: 4096 needs level 13 for its output scaling.
LEVEL_CAP = 13


class FieldError(ArithmeticError):
    pass


class LevelMismatchError(FieldError):
    pass


class LevelCapError(FieldError, ValueError):
    pass


class NotDyadicError(FieldError, ValueError):
    pass


# -- rationals ---------------------------------------------------------------

def rat_arith(a, b, op: str) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise FieldError("rational division by zero")
        return a / b
    raise ValueError(f"unknown rational op {op!r}")


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``a/b``, an integer, or a finite decimal into an exact Fraction."""
    m = _RAT_RE.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


# -- dyadic skew parameters -------------------------------------------------

_DYADIC_RE = re.compile(r"^\s*(\d+)\s*/\s*(?:2\s*\^\s*(\d+)|(\d+))\s*$")


@dataclass(frozen=True)
class DyadicRational:
    """``numerator / 2**log2_denominator`` in (0, 1) with an odd numerator."""

    numerator: int
    log2_denominator: int

    def __post_init__(self):
        if self.log2_denominator < 1 or self.numerator % 2 == 0:
            raise NotDyadicError(
                f"non-canonical dyadic {self.numerator}/2^{self.log2_denominator}")
        if not 0 < self.numerator < (1 << self.log2_denominator):
            raise NotDyadicError("dyadic skew must lie strictly between 0 and 1")

    @classmethod
    def of(cls, value) -> "DyadicRational":
        if isinstance(value, DyadicRational):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        q = Fraction(value)
        den = q.denominator
        if den & (den - 1):
            raise NotDyadicError(f"{q} is not dyadic")
        return cls(q.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        """Accepts ``m/2^j`` or ``m/d`` with d a power of two."""
        m = _DYADIC_RE.match(text)
        if not m:
            raise NotDyadicError(f"expected m/2^j, got {text!r}")
        num = int(m.group(1))
        den = 1 << int(m.group(2)) if m.group(2) is not None else int(m.group(3))
        if den == 0:
            raise NotDyadicError(f"zero denominator in {text!r}")
        return cls.of(Fraction(num, den))

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.log2_denominator)

    def half(self) -> "DyadicRational":
        return DyadicRational(self.numerator, self.log2_denominator + 1)

    def reflected_half(self) -> "DyadicRational":
        """``1 - r/2`` in canonical form."""
        j = self.log2_denominator + 1
        return DyadicRational((1 << j) - self.numerator, j)

    def __str__(self) -> str:
        return f"{self.numerator}/{1 << self.log2_denominator}"


def _as_fraction(r) -> Fraction:
    if isinstance(r, DyadicRational):
        return r.value
    if isinstance(r, str):
        return DyadicRational.parse(r).value if "^" in r else parse_rational(r)
    return Fraction(r)


def _check_dyadic(q: Fraction) -> int:
    den = q.denominator
    if den & (den - 1):
        raise NotDyadicError(f"{q} is not a dyadic rational")
    return den.bit_length() - 1


# -- tower levels -----------------------------------------------------------

def _check_level(k: int) -> None:
    if k < 0:
        raise ValueError("tower level must be non-negative")
    if k > LEVEL_CAP:
        raise LevelCapError(f"tower level {k} exceeds cap {LEVEL_CAP}")


@lru_cache(maxsize=None)
def dickson_coeffs(n: int) -> tuple[int, ...]:
    """Power coefficients of ``D_n(x) = 2·T_n(x/2)`` (``D_0 = 2``)."""
    if n == 0:
        return (2,)
    out = [0] * (n + 1)
    for t in range(n // 2 + 1):
        c = n * math.comb(n - t, t) // (n - t)
        out[n - 2 * t] = -c if t % 2 else c
    return tuple(out)


@dataclass(frozen=True)
class TowerLevel:
    k: int

    @property
    def degree(self) -> int:
        return 1 << self.k

    @property
    def theta(self) -> float:
        return 2.0 * math.cos(math.pi / (2 << self.k))

    @cached_property
    def modulus(self) -> Poly:
        """``2·T_{2^k}(x/2)``: monic, integer coefficients, degree ``2^k``."""
        return Poly(dickson_coeffs(self.degree))

    def generator(self) -> "FieldElement":
        return FieldElement.generator(self.k)

    def __str__(self) -> str:
        return field_name(self.k)


def _root_residual(k: int) -> float:
    # |2T_{2^k}(θ_k/2)| via y -> y^2 - 2, which amplifies error ~4x per step
    import mpmath

    with mpmath.workdps(30 + k):
        y = 2 * mpmath.cos(mpmath.pi / 2 ** (k + 1))
        for _ in range(k):
            y = y * y - 2
        return float(abs(y))


@lru_cache(maxsize=None)
def tower_level(k: int) -> TowerLevel:
    _check_level(k)
    residual = _root_residual(k)
    if residual > 1e-12:
        raise FieldError(f"generator of level {k} is not a root of its modulus ({residual})")
    return TowerLevel(k)


def field_name(k: int) -> str:
    if k == 0:
        return "Q"
    return f"Q[{two_cos_surd(Fraction(1, 2 << k))}]"


# -- basis bookkeeping --------------------------------------------------------

def _reduce_index(s: int, k: int) -> tuple[int, int]:
    """Write ``D_s(θ_k)`` as ``factor·b_index``; factor in {0, ±1, ±2}."""
    n = 2 << k
    d = 1 << k
    s = abs(s) % (2 * n)
    if s > n:
        s = 2 * n - s
    sign = 1
    if s == d:
        return 0, 0
    if s > d:
        sign, s = -1, n - s
    if s == 0:
        return 0, 2 * sign
    return s, sign


def _add_into(acc: dict, idx: int, c) -> None:
    v = acc.get(idx)
    acc[idx] = c if v is None else v + c


def _clean(acc: dict) -> dict:
    return {i: c if isinstance(c, Fraction) else Fraction(c) for i, c in acc.items() if c}


def _mul_terms(a: Mapping[int, Fraction], b: Mapping[int, Fraction], k: int) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            c = x * y
            if i == 0:
                _add_into(out, j, c)
            elif j == 0:
                _add_into(out, i, c)
            else:
                for s in (i + j, i - j):
                    idx, f = _reduce_index(s, k)
                    if f:
                        _add_into(out, idx, c * f)
    return _clean(out)


def _power_to_terms(coeffs: Iterable, k: int) -> dict:
    out: dict = {}
    for i, c in enumerate(coeffs):
        c = Fraction(c)
        if c == 0:
            continue
        # x^i = Σ_{j<i/2} C(i,j) D_{i-2j} + [i even] C(i, i/2)
        for j in range((i + 1) // 2):
            idx, f = _reduce_index(i - 2 * j, k)
            if f:
                _add_into(out, idx, c * math.comb(i, j) * f)
        if i % 2 == 0:
            _add_into(out, 0, c * math.comb(i, i // 2))
    return _clean(out)


def _terms_to_power(terms: Mapping[int, Fraction], k: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (1 << k)
    for i, c in terms.items():
        if i == 0:
            out[0] += c
            continue
        for p, dc in enumerate(dickson_coeffs(i)):
            if dc:
                out[p] += c * dc
    return tuple(out)


# -- field elements ----------------------------------------------------------

Scalar = Union[int, Fraction]


class FieldElement:
    """Immutable element of tower level ``level``."""

    __slots__ = ("level", "_terms", "_coeffs", "_hash")

    def __init__(self, level: int, terms: Mapping[int, Fraction] | None = None):
        _check_level(level)
        self.level = level
        self._terms = dict(terms) if terms else {}
        self._coeffs = None
        self._hash = None

    # construction
    @classmethod
    def from_coeffs(cls, coeffs: Iterable, level: int | None = None) -> "FieldElement":
        """Build from power-basis coefficients of ``θ_level``."""
        cs = [Fraction(c) for c in coeffs]
        if level is None:
            if not cs or len(cs) & (len(cs) - 1):
                raise ValueError("coefficient vector length must be a power of two")
            level = len(cs).bit_length() - 1
        elif len(cs) > 1 << level:
            raise ValueError(f"too many coefficients for level {level}")
        _check_level(level)
        return cls(level, _power_to_terms(cs, level))

    @classmethod
    def rational(cls, q: Scalar, level: int = 0) -> "FieldElement":
        q = Fraction(q)
        return cls(level, {0: q} if q else {})

    @classmethod
    def generator(cls, level: int) -> "FieldElement":
        """``θ_level``; at level 0 this is ``2cos(π/2) = 0``."""
        if level == 0:
            return cls(0)
        return cls(level, {1: Fraction(1)})

    @classmethod
    def basis_element(cls, level: int, index: int) -> "FieldElement":
        """``D_index(θ_level) = 2cos(index·π/2^(level+1))``."""
        idx, f = _reduce_index(index, level)
        return cls(level, {idx: Fraction(f)} if f else {})

    # views
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        if self._coeffs is None:
            self._coeffs = _terms_to_power(self._terms, self.level)
        return self._coeffs

    @property
    def tower(self) -> TowerLevel:
        return tower_level(self.level)

    def real_value(self) -> float:
        n = 2 << self.level
        return math.fsum(
            float(c) if i == 0 else float(c) * 2.0 * math.cos(math.pi * i / n)
            for i, c in self._terms.items())

    def __float__(self) -> float:
        return self.real_value()

    def to_rational(self) -> Fraction | None:
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and 0 in self._terms:
            return self._terms[0]
        return None

    def is_rational(self) -> bool:
        return self.to_rational() is not None

    @property
    def min_level(self) -> int:
        """Smallest tower level containing this element."""
        g = 0
        for i in self._terms:
            g = math.gcd(g, i)
        if g == 0:
            return 0
        v = (g & -g).bit_length() - 1
        return self.level - v

    def descend(self) -> "FieldElement":
        """Same value, stored at ``min_level``."""
        target = self.min_level
        shift = self.level - target
        if shift == 0:
            return self
        return FieldElement(target, {i >> shift: c for i, c in self._terms.items()})

    def lift(self, level: int | TowerLevel) -> "FieldElement":
        target = level.k if isinstance(level, TowerLevel) else level
        if target < self.level:
            raise LevelMismatchError(f"cannot lift level {self.level} down to {target}")
        if target == self.level:
            return self
        shift = target - self.level
        return FieldElement(target, {i << shift: c for i, c in self._terms.items()})

    # arithmetic
    def _pair(self, other) -> tuple[dict, dict, int] | None:
        if isinstance(other, FieldElement):
            k = max(self.level, other.level)
            return self.lift(k)._terms, other.lift(k)._terms, k
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return self._terms, ({0: q} if q else {}), self.level
        return None

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b, k = p
        out = dict(a)
        for i, c in b.items():
            _add_into(out, i, c)
        return FieldElement(k, _clean(out))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.level, {i: -c for i, c in self._terms.items()})

    def __pos__(self) -> "FieldElement":
        return self

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b, k = p
        out = dict(a)
        for i, c in b.items():
            _add_into(out, i, -c)
        return FieldElement(k, _clean(out))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return FieldElement(self.level)
            return FieldElement(self.level, {i: c * other for i, c in self._terms.items()})
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b, k = p
        return FieldElement(k, _mul_terms(a, b, k))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self._terms:
            raise FieldError("division by zero in tower field")
        q = self.to_rational()
        if q is not None:
            return FieldElement(self.level, {0: 1 / q})
        mod = tower_level(self.level).modulus
        g, s, _ = poly_xgcd(Poly(self.coeffs), mod)
        if g.degree != 0:
            raise FieldError("element shares a factor with the modulus")
        return FieldElement.from_coeffs(s.coeffs, self.level)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise FieldError("division by zero in tower field")
            return self * (1 / Fraction(other))
        if isinstance(other, FieldElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = FieldElement.rational(1, self.level)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            q = self.to_rational()
            return q is not None and q == other
        if isinstance(other, FieldElement):
            k = max(self.level, other.level)
            return self.lift(k)._terms == other.lift(k)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            q = self.to_rational()
            if q is not None:
                self._hash = hash(q)
            else:
                e = self.descend()
                self._hash = hash((e.level, frozenset(e._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        cs = ", ".join(str(c) for c in self.coeffs)
        return f"FieldElement(level={self.level}, coeffs=[{cs}])"

    def __str__(self) -> str:
        return self.surd()

    def surd(self) -> str:
        """Nested-radical form, e.g. ``1/2 - √(2+√2)``."""
        if not self._terms:
            return "0"
        n = 2 << self.level
        parts: list[tuple[bool, str]] = []
        for i in sorted(self._terms):
            c = self._terms[i]
            if i == 0:
                parts.append((c < 0, str(abs(c))))
                continue
            s = two_cos_surd(Fraction(i, n))
            neg = c < 0
            mag = abs(c)
            if mag.numerator != 1:
                s = f"{mag.numerator}*{s}"
            if mag.denominator != 1:
                s = f"{s}/{mag.denominator}"
            parts.append((neg, s))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, s in parts[1:]:
            out += (" - " if neg else " + ") + s
        return out


def fe_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Strict-level field arithmetic; callers lift both operands first."""
    if a.level != b.level:
        raise LevelMismatchError(f"operands at levels {a.level} and {b.level}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field op {op!r}")


def lift(e: FieldElement | Scalar, target: int | TowerLevel) -> FieldElement:
    k = target.k if isinstance(target, TowerLevel) else target
    if not isinstance(e, FieldElement):
        return FieldElement.rational(e, k)
    return e.lift(k)


def _reduce_angle(q: Fraction) -> Fraction:
    # 2cos(qπ) depends only on q mod 2 and is even in q
    q = q % 2
    return 2 - q if q > 1 else q


def two_cos(r) -> FieldElement:
    """``2cos(rπ)`` for dyadic ``r``, at the smallest level containing it."""
    q = _reduce_angle(_as_fraction(r))
    j = _check_dyadic(q)
    if j <= 1:
        # q in {0, 1/2, 1}
        return FieldElement.rational({Fraction(0): 2, Fraction(1): -2}.get(q, 0))
    return FieldElement.basis_element(j - 1, q.numerator)


def half_cos(r) -> FieldElement:
    """``cos(rπ)``."""
    return two_cos(r) * Fraction(1, 2)


def two_cos_surd(r) -> str:
    """Nested radical for ``2cos(rπ)``, e.g. ``√(2-√2)`` for r = 3/8."""
    q = _reduce_angle(_as_fraction(r))
    j = _check_dyadic(q)
    if j == 0:
        return "2" if q == 0 else "-2"
    if j == 1:
        return "0"
    inner = two_cos_surd(2 * q)
    if inner == "0":
        body = "√2"
    elif inner.startswith("-"):
        body = f"√(2-{inner[1:]})"
    else:
        body = f"√(2+{inner})"
    return "-" + body if q > Fraction(1, 2) else body
