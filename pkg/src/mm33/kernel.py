"""Execution of a scheme or schedule on 3x3 matrices over any ring.

Matrices are flat row-major sequences (entry (i, j) at index 3*i + j).
Every bilinear product is evaluated strictly as (left form) * (right
form), so results are correct over noncommutative coefficient rings.
When both operands of a product carry sign changes, the signs cancel and
neither operand is negated; a single sign change negates exactly the
operand that carries it.  Sign changes never touch the addition count.
"""

from __future__ import annotations

from collections.abc import Sequence

from .factors import Scheme
from .slp import Atom, Schedule


def _combine(coeffs: Sequence[int], values: Sequence, ring):
    """Signed sum of values picked by ternary coeffs; len(nonzero)-1 gates."""
    acc = None
    for c, x in zip(coeffs, values):
        if c == 0:
            continue
        if acc is None:
            acc = x if c > 0 else -x
        else:
            acc = acc + x if c > 0 else acc - x
    return ring.zero() if acc is None else acc


def multiply_via_scheme(scheme: Scheme, a: Sequence, b: Sequence, ring) -> tuple:
    """Evaluate the bilinear decomposition directly, without a schedule."""
    products = [
        _combine(scheme.u[r], a, ring) * _combine(scheme.v[r], b, ring)
        for r in range(scheme.rank)
    ]
    return tuple(
        _combine([scheme.w[r][k] for r in range(scheme.rank)], products, ring)
        for k in range(9)
    )


def multiply_via_schedule(schedule: Schedule, a: Sequence, b: Sequence, ring) -> tuple:
    """Run the straight-line program; exactly one ring op per costed gate."""
    u: dict[int, object] = {}
    v: dict[int, object] = {}
    w: dict[int, object] = {}
    env = {"A": lambda i: a[i], "B": lambda i: b[i],
           "u": u.__getitem__, "v": v.__getitem__,
           "w": w.__getitem__}

    def value(atom: Atom):
        x = env[atom.kind](atom.index)
        return -x if atom.sign < 0 else x

    def run_linear(steps, dest_env):
        for step in steps:
            left, right = value(step.left), value(step.right)
            dest_env[step.dest] = left + right if step.op == "+" else left - right

    run_linear(schedule.a_steps, u)
    run_linear(schedule.b_steps, v)

    products = []
    for step in schedule.products:
        left = env[step.left.kind](step.left.index)
        right = env[step.right.kind](step.right.index)
        if step.left.sign * step.right.sign < 0:
            # A single sign change lands on the operand that carries it.
            if step.left.sign < 0:
                left = -left
            else:
                right = -right
        products.append(left * right)
    env["M"] = products.__getitem__

    run_linear(schedule.w_steps, w)

    out = [ring.zero()] * 9
    for step in schedule.outputs:
        acc = value(step.atoms[0])
        for atom in step.atoms[1:]:
            x = env[atom.kind](atom.index)
            acc = acc + x if atom.sign > 0 else acc - x
        out[step.index] = acc
    return tuple(out)


def naive_multiply(a: Sequence, b: Sequence, n: int) -> tuple:
    """Classical triple loop on flat row-major n x n matrices.

    Accumulation is in ascending k order with every product taken as
    A-entry times B-entry, making this the order-preserving oracle for
    the fast kernels.
    """
    if len(a) != n * n or len(b) != n * n:
        raise ValueError(
            f"expected two flat {n}x{n} matrices, got lengths {len(a)} and {len(b)}"
        )
    out = []
    for i in range(n):
        for j in range(n):
            acc = a[i * n] * b[j]
            for k in range(1, n):
                acc = acc + a[i * n + k] * b[k * n + j]
            out.append(acc)
    return tuple(out)
