"""Dense univariate polynomials over exact coefficient rings.

Coefficients are stored lowest degree first.  Any type supporting ``+``,
``-``, ``*`` and ``==`` with ints works: ``int``, ``Fraction`` and
:class:`galoisdct.field.FieldElement` are the ones used in this package.
The zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _normalize(c):
    # rational-valued field elements are demoted so rational polys stay fast
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    to_rational = getattr(c, "to_rational", None)
    if to_rational is not None:
        q = to_rational()
        if q is not None:
            return _normalize(q)
    return c


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_normalize(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if i < 0:
            raise IndexError("negative coefficient index")
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly((other,))
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if other == 0:
                return Poly()
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out: list = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                out[i + j] = out[i + j] + ai * bj
        return Poly(out)

    def __rmul__(self, other) -> "Poly":
        return self * other

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = _inverse(other.lead)
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly(), Poly(rem)
        quot: list = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c * inv_lead
            quot[i - db] = q
            for j, bj in enumerate(other.coeffs):
                rem[i - db + j] = rem[i - db + j] - q * bj
        return Poly(quot), Poly(rem[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "Poly":
        return self * _inverse(self.lead)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _coerce(p) -> Poly:
    return p if isinstance(p, Poly) else Poly((p,))


def _inverse(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def poly_arith(a: Poly, b: Poly, op: str):
    """Apply ``op`` in {add, sub, mul, divmod}; divmod returns (quotient, remainder)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown polynomial op {op!r}")


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid over a field: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly((1,)), Poly()
    t0, t1 = Poly(), Poly((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = _inverse(r0.lead)
    return r0 * inv, s0 * inv, t0 * inv


def _term(c, i: int, var: str) -> tuple[bool, str]:
    neg = False
    if isinstance(c, (int, Fraction)):
        neg = c < 0
        mag = -c if neg else c
        body = "" if (mag == 1 and i > 0) else str(mag)
    else:
        s = str(c)
        if " " in s:
            s = f"({s})"
        elif s.startswith("-"):
            neg, s = True, s[1:]
        body = s
    if i == 0:
        mon = ""
    elif i == 1:
        mon = var
    else:
        mon = f"{var}^{i}"
    if body and mon:
        text = f"{body}*{mon}" if not body[0].isdigit() or "/" in body else f"{body}{mon}"
    else:
        text = body or mon
    return neg, text


def format_poly(p: Poly | Sequence, var: str = "x") -> str:
    """Coefficient form, highest degree first, e.g. ``8x^3 - 4x``."""
    coeffs = p.coeffs if isinstance(p, Poly) else tuple(p)
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        neg, text = _term(c, i, var)
        if not parts:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(parts) if parts else "0"
