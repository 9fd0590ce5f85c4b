"""Plan serialization, dataflow graphs and straight-line kernel listings.

Every constant is written twice: exactly (power-basis coefficients or a
nested radical) and as a float, so exact pipelines can consume the output.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .field import DyadicRational, FieldElement, parse_rational
from .planner import (AddScaleBlock, BlockSplit, ButterflyPair, Dct2Merge, Diagonal,
                      Identity, Permutation, TransformPlan)


# -- JSON -------------------------------------------------------------------

def _frac_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def element_to_dict(e: FieldElement, coeffs: bool = True) -> dict:
    d: dict = {"level": e.level}
    if coeffs:
        d["coeffs"] = [_frac_text(c) for c in e.coeffs]
    d["terms"] = {str(i): _frac_text(c) for i, c in sorted(e.terms.items())}
    d["approx"] = e.real_value()
    d["surd"] = e.surd()
    return d


def element_from_dict(d: dict) -> FieldElement:
    level = int(d["level"])
    if "terms" in d:
        return FieldElement(level, {int(i): parse_rational(c) for i, c in d["terms"].items()})
    return FieldElement.from_coeffs([parse_rational(c) for c in d["coeffs"]], level)


def _stage_to_dict(st, coeffs: bool) -> dict:
    if isinstance(st, Identity):
        return {"kind": "identity"}
    if isinstance(st, Permutation):
        return {"kind": "permutation", "indices": list(st.indices)}
    if isinstance(st, Diagonal):
        return {"kind": "diagonal", "entries": [element_to_dict(e, coeffs) for e in st.entries]}
    if isinstance(st, AddScaleBlock):
        return {"kind": "add_scale_block", "m": st.m, "a": element_to_dict(st.a, coeffs)}
    if isinstance(st, ButterflyPair):
        return {"kind": "butterfly_pair", "m": st.m}
    if isinstance(st, Dct2Merge):
        return {"kind": "dct2_merge", "m": st.m}
    if isinstance(st, BlockSplit):
        return {"kind": "block_split",
                "children": [plan_to_dict(st.first, coeffs), plan_to_dict(st.second, coeffs)]}
    raise TypeError(f"unknown stage {st!r}")


def plan_to_dict(plan: TransformPlan, coeffs: bool = True) -> dict:
    d: dict = {"transform": plan.transform, "size": plan.size}
    if plan.skew is not None:
        d["skew"] = str(plan.skew)
    d["stages"] = [_stage_to_dict(st, coeffs) for st in plan.stages]
    return d


def to_json(plan: TransformPlan, coeffs: bool = True) -> str:
    """Serialize a plan.

    With ``coeffs=False`` constants carry only their sparse cosine-basis
    ``terms``; power-basis coefficients grow very long beyond n ≈ 512.
    """
    return json.dumps(plan_to_dict(plan, coeffs), indent=1, ensure_ascii=False)


def _stage_from_dict(d: dict):
    kind = d["kind"]
    if kind == "identity":
        return Identity()
    if kind == "permutation":
        return Permutation(tuple(int(i) for i in d["indices"]))
    if kind == "diagonal":
        return Diagonal(tuple(element_from_dict(e) for e in d["entries"]))
    if kind == "add_scale_block":
        return AddScaleBlock(int(d["m"]), element_from_dict(d["a"]))
    if kind == "butterfly_pair":
        return ButterflyPair(int(d["m"]))
    if kind == "dct2_merge":
        return Dct2Merge(int(d["m"]))
    if kind == "block_split":
        first, second = (plan_from_dict(c) for c in d["children"])
        return BlockSplit(first, second)
    raise ValueError(f"unknown stage kind {kind!r}")


def plan_from_dict(d: dict) -> TransformPlan:
    skew = DyadicRational.parse(d["skew"]) if d.get("skew") else None
    stages = tuple(_stage_from_dict(s) for s in d["stages"])
    return TransformPlan(d["transform"], int(d["size"]), stages, skew)


def from_json(text: str) -> TransformPlan:
    return plan_from_dict(json.loads(text))


# -- straight-line programs -------------------------------------------------

@dataclass
class Line:
    target: str
    op: str  # add, sub, mul, neg, copy, zero
    args: tuple[str, ...]


@dataclass
class Program:
    """A straight-line program with named constants."""

    n: int
    lines: list[Line] = field(default_factory=list)
    constants: dict = field(default_factory=dict)  # FieldElement -> name
    outputs: list[str] = field(default_factory=list)
    _tmp: int = 0

    def fresh(self) -> str:
        name = f"t{self._tmp}"
        self._tmp += 1
        return name

    def emit(self, op: str, *args: str) -> str:
        t = self.fresh()
        self.lines.append(Line(t, op, args))
        return t

    def scale(self, c: FieldElement, v: str) -> str:
        if c == 1:
            return v
        if c == -1:
            return self.emit("neg", v)
        if c == 0:
            return self.emit("zero")
        name = self.constants.get(c)
        if name is None:
            name = self.constants[c] = f"c{len(self.constants)}"
        return self.emit("mul", name, v)

    def count(self, op: str) -> int:
        return sum(1 for ln in self.lines if ln.op == op)


def _trace(plan: TransformPlan, v: list[str], prog: Program) -> list[str]:
    for st in plan.stages:
        if isinstance(st, Identity):
            continue
        if isinstance(st, Permutation):
            v = [v[i] for i in st.indices]
        elif isinstance(st, Diagonal):
            v = [prog.scale(e, x) for e, x in zip(st.entries, v)]
        elif isinstance(st, AddScaleBlock):
            m = st.m
            top = [prog.emit("sub", v[i], v[2 * m - 1 - i]) for i in range(m)]
            v = top + [prog.scale(st.a, v[m + i]) for i in range(m)]
        elif isinstance(st, ButterflyPair):
            m = st.m
            v = ([prog.emit("add", v[i], v[m + i]) for i in range(m)]
                 + [prog.emit("sub", v[i], v[m + i]) for i in range(m)])
        elif isinstance(st, Dct2Merge):
            m = st.m
            v = ([prog.emit("add", v[i], v[2 * m - 1 - i]) for i in range(m)]
                 + [prog.emit("sub", v[i], v[2 * m - 1 - i]) for i in range(m)])
        elif isinstance(st, BlockSplit):
            k = st.first.size
            v = _trace(st.first, v[:k], prog) + _trace(st.second, v[k:], prog)
    return v


def build_program(plan: TransformPlan) -> Program:
    """Symbolically execute a plan; final temporaries are renamed to y0..y{n-1}."""
    prog = Program(plan.size)
    finals = _trace(plan, [f"x{i}" for i in range(plan.size)], prog)
    defined = {ln.target: ln for ln in prog.lines}
    rename = {}
    for i, name in enumerate(finals):
        if name in defined and name not in rename:
            rename[name] = f"y{i}"
        else:
            prog.lines.append(Line(f"y{i}", "copy", (name,)))
    for ln in prog.lines:
        ln.target = rename.get(ln.target, ln.target)
        ln.args = tuple(rename.get(a, a) for a in ln.args)
    prog.outputs = [rename.get(name, f"y{i}") for i, name in enumerate(finals)]
    return prog


def _header(plan: TransformPlan) -> str:
    skew = f" skew={plan.skew}" if plan.skew is not None else ""
    return f"{plan.transform} n={plan.size}{skew}"


_FORMAT = {
    "add": "{t} = {0} + {1}",
    "sub": "{t} = {0} - {1}",
    "mul": "{t} = {0} * {1}",
    "neg": "{t} = -{0}",
    "copy": "{t} = {0}",
    "zero": "{t} = 0",
}


def emit_kernel(plan: TransformPlan) -> str:
    """Language-neutral straight-line listing, one operation per line."""
    prog = build_program(plan)
    out = [f"# kernel {_header(plan)}",
           f"# inputs x0..x{plan.size - 1}, outputs y0..y{plan.size - 1}",
           f"# mults {prog.count('mul')}, adds {prog.count('add') + prog.count('sub')}"]
    for c, name in prog.constants.items():
        out.append(f"const {name} = {c.real_value()!r}  # {c.surd()}")
    for ln in prog.lines:
        out.append(_FORMAT[ln.op].format(*ln.args, t=ln.target))
    return "\n".join(out) + "\n"


_CONST_RE = re.compile(r"^const\s+(\w+)\s*=\s*(\S+)")
_BIN_RE = re.compile(r"^(\w+)\s*=\s*(\w+)\s*([-+*])\s*(\w+)$")
_NEG_RE = re.compile(r"^(\w+)\s*=\s*-(\w+)$")
_COPY_RE = re.compile(r"^(\w+)\s*=\s*(\w+)$")


def interpret_kernel(text: str, x) -> list[float]:
    """Reference interpreter for :func:`emit_kernel` listings."""
    env: dict[str, float] = {f"x{i}": float(v) for i, v in enumerate(x)}

    def val(tok: str) -> float:
        return float(tok) if tok[0].isdigit() else env[tok]

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _CONST_RE.match(line):
            env[m.group(1)] = float(m.group(2))
        elif m := _BIN_RE.match(line):
            a, b = val(m.group(2)), val(m.group(4))
            op = m.group(3)
            env[m.group(1)] = a + b if op == "+" else a - b if op == "-" else a * b
        elif m := _NEG_RE.match(line):
            env[m.group(1)] = -val(m.group(2))
        elif m := _COPY_RE.match(line):
            env[m.group(1)] = val(m.group(2))
        else:
            raise ValueError(f"cannot parse kernel line {raw!r}")
    outs = sorted((int(k[1:]), v) for k, v in env.items() if re.fullmatch(r"y\d+", k))
    return [v for _, v in outs]


def kernel_line_counts(text: str) -> dict[str, int]:
    counts = {"mul": 0, "add": 0}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        m = _BIN_RE.match(line)
        if m and not line.startswith("const"):
            counts["mul" if m.group(3) == "*" else "add"] += 1
    return counts


# -- dataflow graph ---------------------------------------------------------

def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def emit_graph(plan: TransformPlan) -> str:
    """Graphviz DOT dataflow graph; multiplication edges carry class="mul"."""
    prog = build_program(plan)
    names = {name: c for c, name in prog.constants.items()}
    out = [f'digraph "{plan.transform}_{plan.size}" {{',
           "  rankdir=LR;",
           f'  label="{_dot_escape(_header(plan))}";']
    for i in range(plan.size):
        out.append(f'  x{i} [shape=box, label="x{i}"];')
    symbol = {"add": "+", "sub": "+", "mul": "×", "neg": "−", "copy": "=", "zero": "0"}
    for ln in prog.lines:
        shape = "box" if ln.target.startswith("y") else "circle"
        label = symbol[ln.op]
        if ln.target.startswith("y"):
            label = f"{ln.target} ({label})"
        out.append(f'  {ln.target} [shape={shape}, label="{label}"];')
        if ln.op in ("add", "sub"):
            out.append(f'  {ln.args[0]} -> {ln.target} [class="add", label="1"];')
            sign = "1" if ln.op == "add" else "-1"
            out.append(f'  {ln.args[1]} -> {ln.target} [class="add", label="{sign}"];')
        elif ln.op == "mul":
            c = names[ln.args[0]]
            lab = _dot_escape(f"{c.surd()} ≈ {c.real_value():.6f}")
            out.append(f'  {ln.args[1]} -> {ln.target} [class="mul", label="{lab}"];')
        elif ln.op == "neg":
            out.append(f'  {ln.args[0]} -> {ln.target} [class="neg", label="-1"];')
        elif ln.op == "copy":
            out.append(f'  {ln.args[0]} -> {ln.target} [class="copy"];')
    out.append("}")
    return "\n".join(out) + "\n"


def graph_stats(dot: str) -> dict[str, int]:
    nodes = len(re.findall(r"^\s*\w+ \[shape=", dot, re.M))
    return {
        "nodes": nodes,
        "inputs": len(re.findall(r"^\s*x\d+ \[shape=", dot, re.M)),
        "outputs": len(re.findall(r"^\s*y\d+ \[shape=", dot, re.M)),
        "mul_edges": dot.count('class="mul"'),
    }
