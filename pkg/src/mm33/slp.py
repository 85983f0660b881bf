"""The 56-addition straight-line program and its symbolic tooling.

The program has three stages: linear forms over the entries of A and B,
23 products of one left form (or raw A entry) with one right form (or raw
B entry), and a linear recombination of the products into the nine output
entries.  Costs follow the straight-line model: every add/sub gate costs
one, copies and sign changes cost zero, a product costs one ring
multiplication, and an output assembled from t atoms costs t - 1 gates.

Temps are single-assignment, so a Schedule is a pure dataflow DAG.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .factors import Scheme

# Atom kinds: raw inputs 'A'/'B', left/right linear-form temps 'u'/'v',
# products 'M', shared output temps 'w'.
KINDS = ("A", "B", "u", "v", "M", "w")
LEFT_KINDS = ("A", "u")
RIGHT_KINDS = ("B", "v")
OUTPUT_KINDS = ("M", "w")


class ScheduleError(ValueError):
    """A schedule violates single assignment, operand sides, or ternarity."""


@dataclass(frozen=True)
class Atom:
    """A signed reference to an input, temp, or product."""

    kind: str
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ScheduleError(f"unknown atom kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ScheduleError(f"atom sign must be +-1, got {self.sign}")
        low = 0 if self.kind in ("A", "B", "M") else 1
        if self.index < low or (self.kind in ("A", "B") and self.index > 8):
            raise ScheduleError(f"atom index out of range: {self}")

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + f"{self.kind}{self.index}"


@dataclass(frozen=True)
class LinearStep:
    """dest = left op right, one addition gate."""

    dest: int
    left: Atom
    op: str  # '+' or '-'
    right: Atom

    def __post_init__(self):
        if self.op not in ("+", "-"):
            raise ScheduleError(f"linear op must be '+' or '-', got {self.op!r}")


@dataclass(frozen=True)
class ProductStep:
    """Product index: M = left * right, strictly in that operand order."""

    index: int
    left: Atom
    right: Atom

    def __post_init__(self):
        if self.left.kind not in LEFT_KINDS:
            raise ScheduleError(f"M{self.index} left operand {self.left} is not A-side")
        if self.right.kind not in RIGHT_KINDS:
            raise ScheduleError(f"M{self.index} right operand {self.right} is not B-side")


@dataclass(frozen=True)
class OutputStep:
    """Output entry = signed sum of atoms; costs len(atoms) - 1 gates."""

    index: int
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        if not self.atoms:
            raise ScheduleError(f"output C{self.index} has no atoms")
        for atom in self.atoms:
            if atom.kind not in OUTPUT_KINDS:
                raise ScheduleError(f"output C{self.index} references {atom}")


@dataclass(frozen=True)
class Schedule:
    """Three-stage straight-line program in execution order."""

    a_steps: tuple[LinearStep, ...]
    b_steps: tuple[LinearStep, ...]
    products: tuple[ProductStep, ...]
    w_steps: tuple[LinearStep, ...]
    outputs: tuple[OutputStep, ...]

    def __post_init__(self):
        self._check_stage(self.a_steps, "u", ("A",))
        self._check_stage(self.b_steps, "v", ("B",))
        for pos, step in enumerate(self.products):
            if step.index != pos:
                raise ScheduleError(f"product {pos} labelled M{step.index}")
            for atom in (step.left, step.right):
                if atom.kind == "u" and atom.index > len(self.a_steps):
                    raise ScheduleError(f"M{pos} references undefined {atom}")
                if atom.kind == "v" and atom.index > len(self.b_steps):
                    raise ScheduleError(f"M{pos} references undefined {atom}")
        self._check_stage(self.w_steps, "w", ("M",))
        if len(self.outputs) != 9:
            raise ScheduleError(f"{len(self.outputs)} outputs, expected 9")
        seen = set()
        for step in self.outputs:
            if step.index in seen or not 0 <= step.index <= 8:
                raise ScheduleError(f"bad output index C{step.index}")
            seen.add(step.index)
            for atom in step.atoms:
                self._check_ref(atom)

    def _check_stage(self, steps, temp_kind, input_kinds):
        for pos, step in enumerate(steps, start=1):
            if step.dest != pos:
                raise ScheduleError(f"step {pos} assigns {temp_kind}{step.dest}")
            for atom in (step.left, step.right):
                if atom.kind == temp_kind:
                    if atom.index >= pos:
                        raise ScheduleError(
                            f"{temp_kind}{pos} references later temp {atom}"
                        )
                elif atom.kind not in input_kinds:
                    raise ScheduleError(f"{temp_kind}{pos} references {atom}")
                elif atom.kind == "M" and atom.index >= len(self.products):
                    raise ScheduleError(f"{temp_kind}{pos} references undefined {atom}")

    def _check_ref(self, atom: Atom) -> None:
        if atom.kind == "M" and atom.index >= len(self.products):
            raise ScheduleError(f"output references undefined {atom}")
        if atom.kind == "w" and atom.index > len(self.w_steps):
            raise ScheduleError(f"output references undefined {atom}")


@dataclass(frozen=True)
class CostReport:
    """Addition and multiplication counts per stage of a schedule."""

    left_input_adds: int
    right_input_adds: int
    output_shared_adds: int
    output_final_adds: int
    mult_count: int

    @property
    def output_adds(self) -> int:
        return self.output_shared_adds + self.output_final_adds

    @property
    def total_adds(self) -> int:
        return self.left_input_adds + self.right_input_adds + self.output_adds

    @property
    def total_ops(self) -> int:
        return self.total_adds + self.mult_count

    def as_dict(self) -> dict[str, int]:
        return {
            "left_input_adds": self.left_input_adds,
            "right_input_adds": self.right_input_adds,
            "output_shared_adds": self.output_shared_adds,
            "output_final_adds": self.output_final_adds,
            "output_adds": self.output_adds,
            "total_adds": self.total_adds,
            "mult_count": self.mult_count,
            "total_ops": self.total_ops,
        }


# --------------------------------------------------------------------------
# The built-in program: 13 + 13 input gates, 23 products, 7 + 23 output gates.
# --------------------------------------------------------------------------

_BUILTIN_LEFT = """
u1  = A6 - A7      u2  = A4 - u1      u3  = A1 - u2      u4  = u3 - A6
u5  = u4 - A8      u6  = A1 - u5      u7  = A0 - u3      u8  = u5 + A2
u9  = u7 - A3      u10 = u9 + A5      u11 = u10 - A2     u12 = A0 - A1
u13 = u12 - u10
"""

_BUILTIN_RIGHT = """
v1  = B2 + B5      v2  = B3 - B5      v3  = B1 + B4      v4  = B8 - v1
v5  = B0 - v3      v6  = B2 - v5      v7  = B4 - v6      v8  = B7 - v7
v9  = B2 - v8      v10 = B8 + v8      v11 = v2 - v6      v12 = B8 + v11
v13 = B6 - v12
"""

_BUILTIN_PRODUCTS = """
M0  = u6 * -v11    M1  = u13 * -v7    M2  = A5 * v10     M3  = u8 * B8
M4  = u5 * -v12    M5  = A4 * B5      M6  = A8 * B7      M7  = -u2 * v6
M8  = A4 * B3      M9  = u3 * v5      M10 = -u4 * -v4    M11 = A8 * v13
M12 = u7 * B2      M13 = A2 * B6      M14 = A1 * B3      M15 = A6 * v3
M16 = u9 * v9      M17 = A0 * B0      M18 = A5 * B6      M19 = A3 * B0
M20 = -u11 * B7    M21 = u1 * B4      M22 = u10 * -v8
"""

_BUILTIN_SHARED = """
w1 = M4 + M9       w2 = M12 + M22     w3 = M14 + w1      w4 = M0 + M7
w5 = M1 - M7       w6 = M10 + w3      w7 = M16 - w2
"""

_BUILTIN_OUTPUTS = """
C0 = M13 + M14 + M17
C1 = -M9 + M17 + M20 - w2 + w5
C2 = M3 + M12 + w3 + w4
C3 = M8 + M18 + M19
C4 = M19 + M21 + w5 + w7
C5 = M2 + M5 - w7
C6 = -M8 + M11 + M15 + w6
C7 = M6 + M15 - M21
C8 = -M5 + w4 + w6
"""

_STMT = re.compile(r"([ABuvMwC])(\d+)\s*=\s*([^=]+?)(?=\s+[ABuvMwC]\d+\s*=|\s*$)")
_TERM = re.compile(r"([+\-*]?)\s*(-?)\s*([ABuvMw])(\d+)")


def _parse_stmts(table: str):
    for match in _STMT.finditer(" ".join(table.split())):
        kind, index, rhs = match.group(1), int(match.group(2)), match.group(3)
        terms = []
        for t in _TERM.finditer(rhs):
            connector = t.group(1) or "+"
            sign = -1 if t.group(2) else 1
            if connector == "-":
                sign = -sign
                connector = "+"
            terms.append((connector, Atom(t.group(3), int(t.group(4)), sign)))
        yield kind, index, terms


def _linear_steps(table: str, temp_kind: str) -> tuple[LinearStep, ...]:
    steps = []
    for kind, index, terms in _parse_stmts(table):
        (c1, left), (_, right) = terms
        assert kind == temp_kind and c1 == "+" and left.sign == 1
        op = "-" if right.sign < 0 else "+"
        steps.append(LinearStep(index, left, op, Atom(right.kind, right.index)))
    return tuple(steps)


@lru_cache(maxsize=1)
def builtin_schedule() -> Schedule:
    """The built-in 23-product schedule; total additive cost 56."""
    products = []
    for kind, index, terms in _parse_stmts(_BUILTIN_PRODUCTS):
        (_, left), (connector, right) = terms
        assert kind == "M" and connector == "*"
        products.append(ProductStep(index, left, right))
    outputs = []
    for kind, index, terms in _parse_stmts(_BUILTIN_OUTPUTS):
        assert kind == "C" and all(c == "+" for c, _ in terms)
        outputs.append(OutputStep(index, tuple(atom for _, atom in terms)))
    return Schedule(
        a_steps=_linear_steps(_BUILTIN_LEFT, "u"),
        b_steps=_linear_steps(_BUILTIN_RIGHT, "v"),
        products=tuple(products),
        w_steps=_linear_steps(_BUILTIN_SHARED, "w"),
        outputs=tuple(outputs),
    )


def count_cost(schedule: Schedule) -> CostReport:
    """Tally the straight-line cost of a schedule."""
    return CostReport(
        left_input_adds=len(schedule.a_steps),
        right_input_adds=len(schedule.b_steps),
        output_shared_adds=len(schedule.w_steps),
        output_final_adds=sum(len(o.atoms) - 1 for o in schedule.outputs),
        mult_count=len(schedule.products),
    )


def output_assembly_costs(schedule: Schedule) -> tuple[int, ...]:
    """Final-assembly gate count per output entry, in output order 0..8."""
    by_index = {o.index: len(o.atoms) - 1 for o in schedule.outputs}
    return tuple(by_index[k] for k in range(9))


# --------------------------------------------------------------------------
# Symbolic expansion
# --------------------------------------------------------------------------


def _expand_linear(steps, input_kind) -> dict[int, tuple[int, ...]]:
    env: dict[int, tuple[int, ...]] = {}

    def vec(atom: Atom) -> tuple[int, ...]:
        if atom.kind == input_kind:
            return tuple(atom.sign if i == atom.index else 0 for i in range(9))
        if atom.index not in env:
            raise ScheduleError(f"{atom.kind}{atom.index} used before definition")
        return tuple(atom.sign * x for x in env[atom.index])

    for step in steps:
        left, right = vec(step.left), vec(step.right)
        if step.op == "+":
            env[step.dest] = tuple(a + b for a, b in zip(left, right))
        else:
            env[step.dest] = tuple(a - b for a, b in zip(left, right))
    return env


def _require_ternary(vec, what: str) -> tuple[int, ...]:
    for coord, value in enumerate(vec):
        if value not in (-1, 0, 1):
            raise ScheduleError(
                f"{what} expands to coefficient {value} at coordinate {coord}, "
                f"outside {{-1, 0, 1}}"
            )
    return tuple(vec)


def expand_to_scheme(schedule: Schedule) -> Scheme:
    """Expand a schedule's temps symbolically into its factor triple.

    Coefficients accumulate over the integers; the final factor entries
    must be ternary or ScheduleError is raised.
    """
    u_env = _expand_linear(schedule.a_steps, "A")
    v_env = _expand_linear(schedule.b_steps, "B")
    rank = len(schedule.products)

    def side_vec(atom: Atom, env, input_kind):
        if atom.kind == input_kind:
            return tuple(atom.sign if i == atom.index else 0 for i in range(9))
        if atom.index not in env:
            raise ScheduleError(f"{atom.kind}{atom.index} used before definition")
        return tuple(atom.sign * x for x in env[atom.index])

    u_rows = []
    v_rows = []
    for step in schedule.products:
        u_rows.append(
            _require_ternary(side_vec(step.left, u_env, "A"), f"M{step.index} left")
        )
        v_rows.append(
            _require_ternary(side_vec(step.right, v_env, "B"), f"M{step.index} right")
        )

    # Expand the output side over product space, then read W rows off the
    # transposed table: W_r[k] is the coefficient of product r in output k.
    w_env: dict[int, list[int]] = {}

    def product_vec(atom: Atom) -> list[int]:
        if atom.kind == "M":
            vec = [0] * rank
            vec[atom.index] = atom.sign
            return vec
        if atom.index not in w_env:
            raise ScheduleError(f"w{atom.index} used before definition")
        return [atom.sign * x for x in w_env[atom.index]]

    for step in schedule.w_steps:
        left, right = product_vec(step.left), product_vec(step.right)
        if step.op == "+":
            w_env[step.dest] = [a + b for a, b in zip(left, right)]
        else:
            w_env[step.dest] = [a - b for a, b in zip(left, right)]

    out_vecs = {}
    for step in schedule.outputs:
        acc = [0] * rank
        for atom in step.atoms:
            for r, x in enumerate(product_vec(atom)):
                acc[r] += x
        out_vecs[step.index] = _require_ternary(acc, f"C{step.index}")

    w_rows = [tuple(out_vecs[k][r] for k in range(9)) for r in range(rank)]
    return Scheme(rank, tuple(u_rows), tuple(v_rows), tuple(w_rows))


# --------------------------------------------------------------------------
# Expanded one-based presentation
# --------------------------------------------------------------------------


def _render_sum(coeffs, name_of) -> str:
    parts: list[str] = []
    for coord, c in enumerate(coeffs):
        if c == 0:
            continue
        if not parts:
            parts.append(("-" if c < 0 else "") + name_of(coord))
        else:
            parts.append(("- " if c < 0 else "+ ") + name_of(coord))
    return " ".join(parts) if parts else "0"


def emit_expanded_presentation(scheme: Scheme) -> str:
    """Write a scheme as explicit products p{r+1} over one-based entries.

    Entry names are a{i}{j} = A[3(i-1)+(j-1)] and likewise b{i}{j};
    product p{r+1} is product r of the scheme.  Terms appear in ascending
    coordinate order, so the text determines the scheme exactly.
    """

    def entry(prefix):
        return lambda coord: f"{prefix}{coord // 3 + 1}{coord % 3 + 1}"

    lines = []
    for r in range(scheme.rank):
        left = _render_sum(scheme.u[r], entry("a"))
        right = _render_sum(scheme.v[r], entry("b"))
        lines.append(f"p{r + 1:02d} = ({left}) * ({right})")
    lines.append("")
    for k in range(9):
        coeffs = tuple(scheme.w[r][k] for r in range(scheme.rank))
        terms = _render_sum(coeffs, lambda r: f"p{r + 1:02d}")
        lines.append(f"c{k // 3 + 1}{k % 3 + 1} = {terms}")
    return "\n".join(lines) + "\n"
