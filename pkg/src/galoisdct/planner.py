"""Factored sparse-matrix plans for fast DCT-4 and DCT-2 of size 2^k.

A plan's ``stages`` are listed input-first: ``stages[0]`` is the rightmost
matrix factor.  The polynomial-transform plans follow

    DCT4_poly(n, r) = P · (DCT4_poly(n/2, r/2) ⊕ DCT4_poly(n/2, 1 - r/2)) · B
    B = [I I; I -I] · [I -J; 0 aI],  a = 2cos(rπ/2)

    DCT2_poly(2m) = L · (DCT2_poly(m) ⊕ DCT4_poly(m, 1/2)) · [I J; I -J]

where P reorders the children's roots by increasing angle and L is the
stride permutation.  Scaled plans append one diagonal stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .chebyshev import check_size, root_angles
from .field import DyadicRational, FieldElement, half_cos, two_cos

HALF = DyadicRational(1, 1)

TRANSFORMS = ("dct4_poly", "dct4", "dct2_poly", "dct2")


@dataclass(frozen=True)
class Identity:
    size: int = 1
    kind = "identity"


@dataclass(frozen=True)
class Permutation:
    """``out[i] = in[indices[i]]``."""

    indices: tuple[int, ...]
    kind = "permutation"

    def __post_init__(self):
        if sorted(self.indices) != list(range(len(self.indices))):
            raise ValueError("permutation indices must be a bijection on 0..n-1")

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class Diagonal:
    entries: tuple[FieldElement, ...]
    kind = "diagonal"

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ButterflyPair:
    """``[I I; I -I]`` on 2m points."""

    m: int
    kind = "butterfly_pair"

    @property
    def size(self) -> int:
        return 2 * self.m


@dataclass(frozen=True)
class AddScaleBlock:
    """``[I -J; 0 aI]`` on 2m points."""

    m: int
    a: FieldElement
    kind = "add_scale_block"

    @property
    def size(self) -> int:
        return 2 * self.m


@dataclass(frozen=True)
class Dct2Merge:
    """``[I J; I -J]`` on 2m points."""

    m: int
    kind = "dct2_merge"

    @property
    def size(self) -> int:
        return 2 * self.m


@dataclass(frozen=True)
class BlockSplit:
    first: "TransformPlan"
    second: "TransformPlan"
    kind = "block_split"

    @property
    def size(self) -> int:
        return self.first.size + self.second.size

    @property
    def children(self) -> tuple["TransformPlan", "TransformPlan"]:
        return self.first, self.second


Stage = Union[Identity, Permutation, Diagonal, ButterflyPair, AddScaleBlock, Dct2Merge, BlockSplit]


@dataclass(frozen=True, eq=False)
class TransformPlan:
    transform: str
    size: int
    stages: tuple[Stage, ...]
    skew: DyadicRational | None = None

    def __post_init__(self):
        if self.transform not in TRANSFORMS:
            raise ValueError(f"unknown transform {self.transform!r}")
        for st in self.stages:
            if st.size != self.size:
                raise ValueError(f"{st.kind} stage of size {st.size} in a size-{self.size} plan")

    @property
    def depth(self) -> int:
        """Nesting depth of block splits."""
        return max((1 + max(c.depth for c in st.children)
                    for st in self.stages if isinstance(st, BlockSplit)), default=0)

    def walk(self):
        """Yield every (sub)plan, parent before children."""
        yield self
        for st in self.stages:
            if isinstance(st, BlockSplit):
                for c in st.children:
                    yield from c.walk()

    def constants(self):
        for p in self.walk():
            for st in p.stages:
                if isinstance(st, AddScaleBlock):
                    yield st.a
                elif isinstance(st, Diagonal):
                    yield from st.entries

    def skew_tree(self) -> dict:
        node = {"transform": self.transform, "size": self.size}
        if self.skew is not None:
            node["skew"] = str(self.skew)
        kids = [c.skew_tree() for st in self.stages if isinstance(st, BlockSplit)
                for c in st.children]
        if kids:
            node["children"] = kids
        return node


def _sorting_permutation(angles: list[Fraction]) -> Permutation:
    return Permutation(tuple(sorted(range(len(angles)), key=angles.__getitem__)))


def plan_dct4_poly(n: int, r=HALF) -> TransformPlan:
    """Unscaled skew DCT-4: the polynomial transform ``[V_l(α_k)]`` of 2T_n - 2cos rπ."""
    check_size(n)
    r = DyadicRational.of(r)
    if n == 1:
        return TransformPlan("dct4_poly", 1, (Identity(),), r)
    m = n // 2
    r1, r2 = r.half(), r.reflected_half()
    a = two_cos(r1)
    first, second = plan_dct4_poly(m, r1), plan_dct4_poly(m, r2)
    perm = _sorting_permutation(root_angles("dct4", m, r1) + root_angles("dct4", m, r2))
    stages = (AddScaleBlock(m, a), ButterflyPair(m), BlockSplit(first, second), perm)
    return TransformPlan("dct4_poly", n, stages, r)


def plan_dct4(n: int) -> TransformPlan:
    """``DCT-4_n = diag(cos((k+1/2)π/2n)) · DCT4_poly(n, 1/2)``."""
    poly = plan_dct4_poly(n)
    diag = Diagonal(tuple(half_cos(Fraction(2 * k + 1, 4 * n)) for k in range(n)))
    return TransformPlan("dct4", n, poly.stages + (diag,), HALF)


def plan_dct2_poly(n: int) -> TransformPlan:
    """Unscaled DCT-2: the polynomial transform of (x-1)U_{n-1} in the V basis."""
    check_size(n)
    if n == 1:
        return TransformPlan("dct2_poly", 1, (Identity(),))
    m = n // 2
    stride = Permutation(tuple(i // 2 + (i % 2) * m for i in range(n)))
    stages = (Dct2Merge(m), BlockSplit(plan_dct2_poly(m), plan_dct4_poly(m, HALF)), stride)
    return TransformPlan("dct2_poly", n, stages)


def plan_dct2(n: int) -> TransformPlan:
    """``DCT-2_n = diag(cos(kπ/2n)) · DCT2_poly(n)``."""
    poly = plan_dct2_poly(n)
    diag = Diagonal(tuple(half_cos(Fraction(k, 2 * n)) for k in range(n)))
    return TransformPlan("dct2", n, poly.stages + (diag,))


def make_plan(transform: str, n: int, skew=None) -> TransformPlan:
    transform = transform.replace("-", "_")
    if skew is not None and transform != "dct4_poly":
        raise ValueError("a skew parameter only applies to dct4_poly")
    if transform == "dct4_poly":
        return plan_dct4_poly(n, HALF if skew is None else skew)
    if transform == "dct4":
        return plan_dct4(n)
    if transform == "dct2_poly":
        return plan_dct2_poly(n)
    if transform == "dct2":
        return plan_dct2(n)
    raise ValueError(f"unknown transform {transform!r}")
