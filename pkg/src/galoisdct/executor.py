"""Run plans on vectors, build reference matrices, count operations, verify."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .chebyshev import check_size, root_angles, roots_of
from .field import half_cos
from .planner import (AddScaleBlock, BlockSplit, ButterflyPair, Dct2Merge, Diagonal,
                      Identity, Permutation, TransformPlan)

#: Largest size verified exactly; coefficient vectors grow with n.
EXACT_VERIFY_CAP = 64


@dataclass(frozen=True)
class OpCount:
    multiplications: int = 0
    additions: int = 0

    def __add__(self, other: "OpCount") -> "OpCount":
        return OpCount(self.multiplications + other.multiplications,
                       self.additions + other.additions)

    @property
    def mults(self) -> int:
        return self.multiplications

    @property
    def adds(self) -> int:
        return self.additions


def is_trivial_constant(c) -> bool:
    """Multiplying by 0 or ±1 is free; decided exactly, never by float snapping."""
    return c == 0 or c == 1 or c == -1


# -- exact execution --------------------------------------------------------

def _stage_exact(st, v: list) -> list:
    if isinstance(st, Identity):
        return list(v)
    if isinstance(st, Permutation):
        return [v[i] for i in st.indices]
    if isinstance(st, Diagonal):
        return [e * x for e, x in zip(st.entries, v)]
    if isinstance(st, AddScaleBlock):
        m = st.m
        return [v[i] - v[2 * m - 1 - i] for i in range(m)] + [st.a * v[m + i] for i in range(m)]
    if isinstance(st, ButterflyPair):
        m = st.m
        return [v[i] + v[m + i] for i in range(m)] + [v[i] - v[m + i] for i in range(m)]
    if isinstance(st, Dct2Merge):
        m = st.m
        return ([v[i] + v[2 * m - 1 - i] for i in range(m)]
                + [v[i] - v[2 * m - 1 - i] for i in range(m)])
    if isinstance(st, BlockSplit):
        k = st.first.size
        return _apply_exact(st.first, v[:k]) + _apply_exact(st.second, v[k:])
    raise TypeError(f"unknown stage {st!r}")


def _apply_exact(plan: TransformPlan, v: list) -> list:
    for st in plan.stages:
        v = _stage_exact(st, v)
    return v


# -- float execution --------------------------------------------------------

def _compile(plan: TransformPlan) -> list:
    prog = []
    for st in plan.stages:
        if isinstance(st, Identity):
            continue
        if isinstance(st, Permutation):
            prog.append(("perm", np.asarray(st.indices)))
        elif isinstance(st, Diagonal):
            prog.append(("diag", np.array([e.real_value() for e in st.entries])))
        elif isinstance(st, AddScaleBlock):
            prog.append(("add_scale", st.m, st.a.real_value()))
        elif isinstance(st, ButterflyPair):
            prog.append(("butterfly", st.m))
        elif isinstance(st, Dct2Merge):
            prog.append(("merge", st.m))
        elif isinstance(st, BlockSplit):
            prog.append(("split", st.first.size, _compile(st.first), _compile(st.second)))
    return prog


def _run(prog: list, v: np.ndarray) -> np.ndarray:
    for op in prog:
        kind = op[0]
        if kind == "perm":
            v = v[op[1]]
        elif kind == "diag":
            d = op[1]
            v = v * (d if v.ndim == 1 else d[:, None])
        elif kind == "add_scale":
            m, a = op[1], op[2]
            v = np.concatenate((v[:m] - v[m:][::-1], a * v[m:]))
        elif kind == "butterfly":
            m = op[1]
            v = np.concatenate((v[:m] + v[m:], v[:m] - v[m:]))
        elif kind == "merge":
            m = op[1]
            rev = v[m:][::-1]
            v = np.concatenate((v[:m] + rev, v[:m] - rev))
        elif kind == "split":
            k = op[1]
            v = np.concatenate((_run(op[2], v[:k]), _run(op[3], v[k:])))
    return v


def apply(plan: TransformPlan, x, mode: str = "float"):
    """Compute ``plan · x``.

    Float mode accepts an (n,) or (n, batch) array; exact mode a sequence of
    ints, Fractions or FieldElements.
    """
    if mode == "exact":
        x = list(x)
        if len(x) != plan.size:
            raise ValueError(f"input length {len(x)} != plan size {plan.size}")
        return _apply_exact(plan, [Fraction(v) if isinstance(v, (int, float)) else v
                                   for v in x])
    if mode != "float":
        raise ValueError(f"unknown mode {mode!r}")
    v = np.asarray(x, dtype=float)
    if v.shape[0] != plan.size:
        raise ValueError(f"input length {v.shape[0]} != plan size {plan.size}")
    return _run(_compile(plan), v)


def materialize(plan: TransformPlan, mode: str = "float"):
    """Dense matrix of the plan: column i is ``plan · e_i``."""
    n = plan.size
    if mode == "float":
        return apply(plan, np.eye(n), "float")
    cols = [apply(plan, [1 if j == i else 0 for j in range(n)], "exact") for i in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def stage_matrix(st, n: int | None = None) -> np.ndarray:
    """Float matrix of a single stage (block splits recurse into children)."""
    n = st.size if n is None else n
    tmp = TransformPlan("dct4_poly", n, (st,))
    return materialize(tmp, "float")


# -- reference matrices -----------------------------------------------------

def _v_row(alpha, n: int) -> list:
    # V_0 = 1, V_1 = 2x - 1, V_l = 2x·V_{l-1} - V_{l-2}
    row = [Fraction(1), 2 * alpha - 1][:n]
    two_alpha = 2 * alpha
    while len(row) < n:
        row.append(two_alpha * row[-1] - row[-2])
    return row


def _v_matrix_exact(angles_kind: str, n: int, r=None) -> list:
    return [_v_row(a, n) for a in roots_of(angles_kind, n, r)]


def _v_matrix_float(angles_kind: str, n: int, r=None) -> np.ndarray:
    phi = np.array([float(a) for a in root_angles(angles_kind, n, r)]) * math.pi
    l = np.arange(n) + 0.5
    return np.cos(np.outer(phi, l)) / np.cos(phi / 2)[:, None]


def oracle(transform: str, n: int, r=None, mode: str = "exact"):
    """Dense reference matrix built directly from the transform's definition."""
    check_size(n)
    transform = transform.replace("-", "_")
    k = np.arange(n)
    if transform == "dct4_poly":
        if mode == "exact":
            return _v_matrix_exact("dct4", n, r)
        return _v_matrix_float("dct4", n, r)
    if transform == "dct2_poly":
        if mode == "exact":
            return _v_matrix_exact("dct2", n)
        return _v_matrix_float("dct2", n)
    if transform == "dct4":
        if mode == "exact":
            return [[half_cos(Fraction((2 * i + 1) * (2 * j + 1), 4 * n)) for j in range(n)]
                    for i in range(n)]
        return np.cos(np.outer(k + 0.5, k + 0.5) * math.pi / n)
    if transform == "dct2":
        if mode == "exact":
            return [[half_cos(Fraction(i * (2 * j + 1), 2 * n)) for j in range(n)]
                    for i in range(n)]
        return np.cos(np.outer(k, k + 0.5) * math.pi / n)
    raise ValueError(f"unknown transform {transform!r}")


# -- operation counts -------------------------------------------------------

def count_ops(plan: TransformPlan) -> OpCount:
    total = OpCount()
    for st in plan.stages:
        if isinstance(st, AddScaleBlock):
            mults = 0 if is_trivial_constant(st.a) else st.m
            total += OpCount(mults, st.m)
        elif isinstance(st, (ButterflyPair, Dct2Merge)):
            total += OpCount(0, 2 * st.m)
        elif isinstance(st, Diagonal):
            total += OpCount(sum(not is_trivial_constant(e) for e in st.entries), 0)
        elif isinstance(st, BlockSplit):
            total += count_ops(st.first) + count_ops(st.second)
    return total


def expected_ops(transform: str, n: int) -> OpCount:
    """Closed-form counts: (n/2)log n mults and (3n/2)log n adds for DCT-4."""
    k = check_size(n)
    transform = transform.replace("-", "_")
    if transform in ("dct4_poly", "dct4"):
        mults, adds = n * k // 2, 3 * n * k // 2
        return OpCount(mults + (n if transform == "dct4" else 0), adds)
    if transform in ("dct2_poly", "dct2"):
        if k == 0:
            return OpCount(0, 0)
        # sums of the DCT-4 counts of the halves plus the merges
        mults = (k - 2) * (1 << (k - 1)) + 1
        adds = 3 * mults + 2 * (n - 1)
        return OpCount(mults + (n - 1 if transform == "dct2" else 0), adds)
    raise ValueError(f"unknown transform {transform!r}")


# -- verification -----------------------------------------------------------

@dataclass
class VerifyReport:
    transform: str
    size: int
    mode: str
    passed: bool
    mults: int
    adds: int
    tree: dict
    tolerance: float | None = None
    max_dev: float | None = None
    exact_equal: bool | None = None
    mismatch: tuple[int, int] | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mismatch"] = list(self.mismatch) if self.mismatch else None
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"transform: {self.transform}", f"size: {self.size}", f"mode: {self.mode}"]
        if self.mode == "exact":
            lines.append(f"exact_equal: {self.exact_equal}")
        else:
            lines.append(f"max_dev: {self.max_dev:.3e} (tolerance {self.tolerance:g})")
        if self.mismatch is not None:
            lines.append(f"first mismatch: row {self.mismatch[0]}, column {self.mismatch[1]}")
            for key, val in self.detail.items():
                lines.append(f"  {key}: {val}")
        lines.append(f"mults: {self.mults}")
        lines.append(f"adds: {self.adds}")
        lines.append("tree: " + _format_tree(self.tree))
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _format_tree(node: dict) -> str:
    label = node["transform"] + f"({node['size']}" + (f", {node['skew']}" if "skew" in node else "") + ")"
    kids = node.get("children")
    if not kids:
        return label
    return label + "[" + ", ".join(_format_tree(c) for c in kids) + "]"


def verify(plan: TransformPlan, mode: str = "float", tolerance: float = 1e-10) -> VerifyReport:
    ops = count_ops(plan)
    common = dict(transform=plan.transform, size=plan.size, mode=mode,
                  mults=ops.mults, adds=ops.adds, tree=plan.skew_tree())
    n = plan.size
    if mode == "exact":
        if n > EXACT_VERIFY_CAP:
            raise ValueError(f"exact verification is capped at n = {EXACT_VERIFY_CAP}")
        got = materialize(plan, "exact")
        want = oracle(plan.transform, n, plan.skew, "exact")
        for i in range(n):
            for j in range(n):
                if got[i][j] != want[i][j]:
                    detail = {"plan": str(got[i][j]), "oracle": str(want[i][j])}
                    return VerifyReport(passed=False, exact_equal=False, mismatch=(i, j),
                                        detail=detail, **common)
        return VerifyReport(passed=True, exact_equal=True, **common)
    got = materialize(plan, "float")
    want = oracle(plan.transform, n, plan.skew, "float")
    dev = np.abs(got - want)
    max_dev = float(dev.max())
    report = VerifyReport(passed=max_dev < tolerance, tolerance=tolerance, max_dev=max_dev,
                          **common)
    if not report.passed:
        bad = np.argwhere(dev >= tolerance)[0]
        report.mismatch = (int(bad[0]), int(bad[1]))
        report.detail = {"plan": float(got[tuple(bad)]), "oracle": float(want[tuple(bad)])}
    return report
