"""Brent-equation certification of a factor triple.

A rank-R scheme multiplies 3x3 matrices correctly iff, for every choice of
i, k, k', j, i', j' in {0, 1, 2},

    sum_r U_r[3i+k] * V_r[3k'+j] * W_r[3i'+j']  ==  [i==i'][j==j'][k==k']

There are 3**6 = 729 such equations.  Sums are evaluated over the integers
and optionally reduced modulo a prime; an integer pass implies every
modular pass, but the modular runs are kept independent because they catch
sign and transposition mistakes cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .factors import Scheme
from .ring import _is_prime


class BrentEquationId(NamedTuple):
    """One equation: indices (i, k) into U, (k', j) into V, (i', j') into W."""

    i: int
    k: int
    kp: int
    j: int
    ip: int
    jp: int

    @property
    def target(self) -> int:
        return 1 if (self.i == self.ip and self.j == self.jp and self.k == self.kp) else 0


@dataclass(frozen=True)
class BrentReport:
    """Outcome of one certification run; modulus 0 means over the integers."""

    modulus: int
    failures: tuple[tuple[BrentEquationId, int], ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def label(self) -> str:
        return "Z" if self.modulus == 0 else f"mod {self.modulus}"


def equation_ids():
    """All 729 equation ids in sorted order."""
    for i, k, kp, j, ip, jp in product(range(3), repeat=6):
        yield BrentEquationId(i, k, kp, j, ip, jp)


def verify_brent(scheme: Scheme, modulus: int = 0) -> BrentReport:
    """Check every equation; failures are collected exhaustively, in id order."""
    if modulus and not _is_prime(modulus):
        raise ValueError(f"modulus must be 0 (integers) or a prime, got {modulus}")
    failures = []
    rows = list(zip(scheme.u, scheme.v, scheme.w))
    for eq in equation_ids():
        a, b, c = 3 * eq.i + eq.k, 3 * eq.kp + eq.j, 3 * eq.ip + eq.jp
        total = sum(u[a] * v[b] * w[c] for u, v, w in rows)
        assert abs(total) <= scheme.rank
        target = eq.target
        if modulus:
            total %= modulus
            target %= modulus
        if total != target:
            failures.append((eq, total))
    return BrentReport(modulus, tuple(failures))


def verify_all_moduli(scheme: Scheme, primes: tuple[int, ...] = (2, 3)) -> tuple[BrentReport, ...]:
    """Certify over the integers and then modulo each given prime."""
    return tuple(verify_brent(scheme, m) for m in (0, *primes))


def failure_lines(report: BrentReport) -> list[str]:
    """One line per failed equation: "i k k' j i' j' computed expected"."""
    lines = []
    for eq, computed in report.failures:
        target = eq.target % report.modulus if report.modulus else eq.target
        lines.append(
            f"{eq.i} {eq.k} {eq.kp} {eq.j} {eq.ip} {eq.jp} {computed} {target}"
        )
    return lines
