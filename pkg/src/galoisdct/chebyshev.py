"""Chebyshev polynomials T, U, V and the stepwise factorization of 2T_{2^k}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .field import (DyadicRational, FieldElement, field_name, half_cos, two_cos,
                    two_cos_surd)
from .poly import Poly


def is_power_of_two(n: int) -> bool:
    return isinstance(n, int) and n > 0 and n & (n - 1) == 0


def check_size(n: int) -> int:
    """Return log2(n), raising for anything but a positive power of two."""
    if not is_power_of_two(n):
        raise ValueError(f"size must be a power of two, got {n!r}")
    return n.bit_length() - 1


@lru_cache(maxsize=None)
def _cheb_list(kind: str, n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    if n == 1:
        return {"T": (0, 1), "U": (0, 2), "V": (-1, 2)}[kind]
    p1 = _cheb_list(kind, n - 1)
    p2 = _cheb_list(kind, n - 2)
    out = [0] * (n + 1)
    for i, c in enumerate(p1):
        out[i + 1] += 2 * c
    for i, c in enumerate(p2):
        out[i] -= c
    return tuple(out)


def cheb(kind: str, n: int) -> Poly:
    """Chebyshev polynomial of the first (T), second (U) or third (V) kind.

    All three obey ``P_n = 2x·P_{n-1} - P_{n-2}`` and differ only in ``P_1``.
    """
    if kind not in ("T", "U", "V"):
        raise ValueError(f"unknown Chebyshev kind {kind!r}")
    if n < 0:
        raise ValueError("Chebyshev index must be non-negative")
    # build bottom-up so deep indices do not recurse
    for i in range(0, n, 256):
        _cheb_list(kind, i)
    return Poly(_cheb_list(kind, n))


def two_t(n: int) -> Poly:
    return cheb("T", n) * 2


@dataclass(frozen=True)
class ChebFactor:
    """The polynomial ``2T_m(x) - 2cos(angle·π)``."""

    m: int
    angle: Fraction

    @property
    def const(self) -> FieldElement:
        return two_cos(self.angle)

    @property
    def level(self) -> int:
        return self.const.min_level

    def poly(self) -> Poly:
        return two_t(self.m) - self.const

    def split(self) -> tuple["ChebFactor", "ChebFactor"]:
        """One step of the recursive factorization (needs ``m`` even)."""
        if self.m < 2:
            raise ValueError("a linear factor cannot be split further")
        r = DyadicRational.of(self.angle)
        h = self.m // 2
        return ChebFactor(h, r.half().value), ChebFactor(h, r.reflected_half().value)

    def symbolic(self) -> str:
        """``2T_m(x) - c`` with the constant as a nested radical."""
        s = two_cos_surd(self.angle)
        if s == "0":
            return f"2T_{self.m}(x)"
        if s.startswith("-"):
            return f"2T_{self.m}(x) + {s[1:]}"
        return f"2T_{self.m}(x) - {s}"

    def angle_form(self) -> str:
        return f"2T_{self.m}(x) - 2cos({self.angle}π)"

    def __str__(self) -> str:
        return self.symbolic()


def factor_step(k: int, c: FieldElement, r) -> tuple[Poly, Poly]:
    """Split ``2T_{2^k} - c`` (``c = 2cos rπ``) into its two tower factors.

    Returns ``(2T_{2^(k-1)} - a, 2T_{2^(k-1)} + a)`` with ``a = 2cos(rπ/2)``;
    the second is ``2T - 2cos(π(1 - r/2))`` written with the negated constant.
    """
    if k < 1:
        raise ValueError("factor_step needs k >= 1")
    r = DyadicRational.of(r)
    if c != two_cos(r):
        raise ValueError(f"constant {c} is not 2cos({r}π)")
    a = two_cos(r.half())
    t = two_t(1 << (k - 1))
    return t - a, t + a


def factor_tower(k: int, r="1/2") -> list[list[ChebFactor]]:
    """All stages of the factorization of ``2T_{2^k} - 2cos rπ``.

    Entry ``i`` lists the factors over tower level ``level(r) + i``.
    """
    r = DyadicRational.of(r)
    stages = [[ChebFactor(1 << k, r.value)]]
    for _ in range(k):
        stages.append([f for parent in stages[-1] for f in parent.split()])
    return stages


def format_factor_tower(k: int, r="1/2") -> str:
    lines = []
    for stage in factor_tower(k, r):
        level = max(f.level for f in stage)
        body = "".join(f"({f})" if len(stage) > 1 else str(f) for f in stage)
        lines.append(f"{field_name(level)}: {body}")
    return "\n".join(lines)


def root_angles(kind: str, n: int, r=None) -> list[Fraction]:
    """Angles ``φ`` (in units of π, increasing) of the roots ``cos φπ``.

    ``dct4``: solutions of ``cos(nφπ) = cos(rπ)`` in [0, 1).
    ``dct2``: ``0, 1/n, ..., (n-1)/n``.
    """
    check_size(n)
    if kind == "dct2":
        return [Fraction(i, n) for i in range(n)]
    if kind != "dct4":
        raise ValueError(f"unknown root family {kind!r}")
    q = DyadicRational.of("1/2" if r is None else r).value
    if n == 1:
        return [q]
    out = []
    for t in range(n // 2):
        out.append((2 * t + q) / n)
        out.append((2 * t + 2 - q) / n)
    return out


def roots_of(kind: str, n: int, r=None) -> list[FieldElement]:
    """Exact roots, ordered by increasing angle."""
    return [half_cos(a) for a in root_angles(kind, n, r)]


def defining_poly(kind: str, n: int, r=None) -> Poly:
    """``2T_n - 2cos rπ`` for dct4, ``(x-1)·U_{n-1}`` for dct2."""
    check_size(n)
    if kind == "dct2":
        return Poly((-1, 1)) * cheb("U", n - 1)
    q = DyadicRational.of("1/2" if r is None else r)
    return two_t(n) - two_cos(q)
