"""Galois group of 2T_{2^k}, its subgroup chain and the fixed-field tower.

Automorphisms are stored as the image of the generator θ_k.  The group is
labelled ``σ_0, σ_1, ...`` by increasing angle of that image: ``σ_i`` sends
``θ_k = 2cos(π/2^(k+1))`` to ``2cos((2i+1)π/2^(k+1))``.  Any other labelling
permutes the Cayley table; with this one σ1∘σ1 = σ3 and σ1∘σ2 = σ0 at k=2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import field as fld
from .field import FieldElement, FieldError, LevelMismatchError, two_cos_surd


def _is_root_of_modulus(y: FieldElement, k: int) -> bool:
    # 2T_{2^k}(y/2) via D_{2n} = D_n^2 - 2
    for _ in range(k):
        y = y * y - 2
    return y == 0


def _dickson_index(image: FieldElement) -> int | None:
    # image == D_s(θ) for odd s: a single unit term
    terms = image.terms
    if len(terms) == 1:
        (s, c), = terms.items()
        if c == 1 and s % 2 == 1:
            return s
    return None


@dataclass(frozen=True, eq=False)
class Automorphism:
    level: int
    image: FieldElement

    def __post_init__(self):
        if self.image.level > self.level:
            raise LevelMismatchError("image lives above the automorphism's level")
        object.__setattr__(self, "image", self.image.lift(self.level))
        if not _is_root_of_modulus(self.image, self.level):
            raise FieldError(f"{self.image} is not a root of the level-{self.level} modulus")

    def __call__(self, e: FieldElement) -> FieldElement:
        return apply_automorphism(self, e)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Automorphism) and self.level == other.level
                and self.image == other.image)

    def __hash__(self):
        return hash((self.level, self.image))


def substitute(e: FieldElement, image: FieldElement) -> FieldElement:
    """Horner evaluation of e's power-basis polynomial at ``image``."""
    acc = FieldElement(image.level)
    for c in reversed(e.coeffs):
        acc = acc * image + c
    return acc


def apply_automorphism(a: Automorphism, e: FieldElement) -> FieldElement:
    """``e(θ) ↦ e(image)``; rationals are fixed."""
    if not isinstance(e, FieldElement):
        return e
    if e.level != a.level:
        raise LevelMismatchError(f"element at level {e.level}, automorphism at {a.level}")
    s = _dickson_index(a.image)
    if s is None:
        return substitute(e, a.image)
    # D_i(D_s(θ)) = D_{is}(θ): a signed permutation of the cosine basis
    out = FieldElement(a.level)
    for i, c in e.terms.items():
        out = out + FieldElement.basis_element(a.level, i * s) * c if i else out + c
    return out


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """``a ∘ b``: θ ↦ a(b(θ))."""
    return Automorphism(a.level, apply_automorphism(a, b.image))


@dataclass(frozen=True)
class GaloisGroup:
    level: int
    elements: tuple[Automorphism, ...]
    cayley: tuple[tuple[int, ...], ...]
    _index: dict = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return next(i for i, row in enumerate(self.cayley) if list(row) == list(range(self.order)))

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    def power(self, i: int, e: int) -> int:
        out = self.identity
        for _ in range(e):
            out = self.cayley[out][i]
        return out

    def element_order(self, i: int) -> int:
        e, j, n = self.identity, i, 1
        while j != e:
            j = self.cayley[j][i]
            n += 1
        return n

    def is_cyclic(self) -> bool:
        return any(self.element_order(i) == self.order for i in range(self.order))

    def check_axioms(self) -> bool:
        n = self.order
        e = self.identity
        for i in range(n):
            if sorted(self.cayley[i]) != list(range(n)):
                return False
            if e not in self.cayley[i]:
                return False
            for j in range(n):
                for k in range(n):
                    if self.cayley[self.cayley[i][j]][k] != self.cayley[i][self.cayley[j][k]]:
                        return False
        return True

    def index_of(self, a: Automorphism) -> int:
        return self._index[a.image]


def galois_group(k: int) -> GaloisGroup:
    if k < 1:
        raise ValueError("galois_group needs k >= 1")
    if k > fld.LEVEL_CAP:
        raise fld.LevelCapError(f"level {k} exceeds cap {fld.LEVEL_CAP}")
    n = 1 << k
    elements = tuple(Automorphism(k, FieldElement.basis_element(k, 2 * i + 1)) for i in range(n))
    index = {a.image: i for i, a in enumerate(elements)}
    cayley = tuple(
        tuple(index[compose(a, b).image] for b in elements) for a in elements)
    return GaloisGroup(k, elements, cayley, index)


def subgroup_chain(g: GaloisGroup) -> list[frozenset[int]]:
    """Subgroups of order 2^k, 2^(k-1), ..., 1, each the unique one of its order."""
    chain = []
    size = g.order
    while size >= 1:
        chain.append(frozenset(i for i in range(g.order) if size % g.element_order(i) == 0))
        size //= 2
    return chain


def is_subgroup(g: GaloisGroup, h) -> bool:
    h = set(h)
    if not h or g.identity not in h:
        return False
    return all(g.mul(a, b) in h for a in h for b in h)


def fixed_field_generator(g: GaloisGroup, h) -> FieldElement:
    """Generator ``2cos(π/2^(k+1-j)) = 2T_{2^j}(θ/2)`` of the field fixed by ``h``, |h| = 2^j."""
    h = frozenset(h)
    if not is_subgroup(g, h):
        raise ValueError("not a subgroup of the Galois group")
    size = len(h)
    j = size.bit_length() - 1
    if h not in subgroup_chain(g):
        raise ValueError("subgroup is not part of the normal series")
    gen = FieldElement.basis_element(g.level, 1 << j)
    for i in range(g.order):
        moved = apply_automorphism(g.elements[i], gen) != gen
        if (i in h) == moved:
            raise FieldError(f"σ_{i} {'moves' if moved else 'fixes'} the candidate generator")
    return gen


def fixed_field_tower(g: GaloisGroup) -> list[tuple[frozenset[int], FieldElement]]:
    return [(h, fixed_field_generator(g, h)) for h in subgroup_chain(g)]


def format_group(g: GaloisGroup) -> str:
    n = g.order
    width = max(len(f"σ{n - 1}"), 3)
    lines = [f"Gal(2T_{n}) ≅ Z_{n}, generator images θ = {two_cos_surd(Fraction(1, 2 * n))}:"]
    for i, a in enumerate(g.elements):
        lines.append(f"  σ{i}: θ ↦ {a.image.surd()}")
    lines.append("")
    lines.append("Cayley table (row ∘ column):")
    header = ("∘".ljust(width) + " | " + " ".join(f"σ{j}".ljust(width) for j in range(n))).rstrip()
    lines.append(header)
    lines.append("-" * len(header))
    for i in range(n):
        row = " ".join(f"σ{g.cayley[i][j]}".ljust(width) for j in range(n))
        lines.append((f"σ{i}".ljust(width) + " | " + row).rstrip())
    lines.append("")
    lines.append("Subgroup chain and fixed fields:")
    for h, gen in fixed_field_tower(g):
        members = ", ".join(f"σ{i}" for i in sorted(h))
        e = gen.descend()
        coeffs = "(" + ", ".join(str(c) for c in e.coeffs) + ")"
        lines.append(f"  order {len(h)}: {{{members}}}")
        lines.append(f"    fixed field {fld.field_name(e.min_level)}, generator {gen.surd()}"
                     f" = {coeffs} at level {e.level}")
    return "\n".join(lines)
