"""Block-recursive n x n multiplication on top of the 3x3 kernel.

Inputs are zero-padded to the next power of 3, split into a 3x3 grid of
blocks, and pushed through the built-in schedule with block additions and
recursive block products; sizes at or below the configured cutoff fall
back to the classical triple loop.  Every ring operation is exact, so the
result is independent of evaluation order and equals the naive product
after unpadding.

Per level the schedule performs 56 block additions and 23 block products,
giving 23**k scalar multiplications at cutoff 1 on a 3**k input (the
asymptotic exponent of the scheme is log_3 23 ~ 2.854).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .kernel import multiply_via_schedule, naive_multiply
from .slp import builtin_schedule

#: Cutoff used by the CLI when none is given; chosen by timing the pure
#: Python implementation with `mm33 bench`.
DEFAULT_CUTOFF = 27


@dataclass(frozen=True)
class RecursionConfig:
    """Controls the naive-fallback size.  Padding is always pad-to-3**k."""

    cutoff: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")


def next_power_of_3(n: int) -> int:
    m = 1
    while m < n:
        m *= 3
    return m


class _Block:
    """A size x size submatrix viewed as a single ring element."""

    __slots__ = ("cells", "size", "ring", "config")

    def __init__(self, cells, size, ring, config):
        self.cells = cells
        self.size = size
        self.ring = ring
        self.config = config

    def _same(self, cells):
        return _Block(cells, self.size, self.ring, self.config)

    def __add__(self, other):
        return self._same(tuple(x + y for x, y in zip(self.cells, other.cells)))

    def __sub__(self, other):
        return self._same(tuple(x - y for x, y in zip(self.cells, other.cells)))

    def __neg__(self):
        return self._same(tuple(-x for x in self.cells))

    def __mul__(self, other):
        return self._same(
            _multiply_pow3(self.cells, other.cells, self.size, self.ring, self.config)
        )


class _BlockRing:
    """Ring adapter over _Block values of one fixed size."""

    def __init__(self, size, ring, config):
        self.size = size
        self.ring = ring
        self.config = config

    def zero(self) -> _Block:
        cells = (self.ring.zero(),) * (self.size * self.size)
        return _Block(cells, self.size, self.ring, self.config)


def _split(flat: Sequence, m: int) -> list[tuple]:
    """The nine (m/3)-sized blocks of a flat m x m matrix, row-major."""
    t = m // 3
    blocks = []
    for bi in range(3):
        for bj in range(3):
            cells = tuple(
                flat[(bi * t + r) * m + bj * t + c] for r in range(t) for c in range(t)
            )
            blocks.append(cells)
    return blocks


def _join(blocks: Sequence[Sequence], m: int) -> tuple:
    t = m // 3
    out = [None] * (m * m)
    for b, cells in enumerate(blocks):
        bi, bj = divmod(b, 3)
        for p, x in enumerate(cells):
            r, c = divmod(p, t)
            out[(bi * t + r) * m + bj * t + c] = x
    return tuple(out)


def _multiply_pow3(a, b, m, ring, config):
    if m <= config.cutoff or m == 1:
        return naive_multiply(a, b, m)
    t = m // 3
    block_ring = _BlockRing(t, ring, config)
    a_blocks = tuple(_Block(c, t, ring, config) for c in _split(a, m))
    b_blocks = tuple(_Block(c, t, ring, config) for c in _split(b, m))
    c_blocks = multiply_via_schedule(builtin_schedule(), a_blocks, b_blocks, block_ring)
    return _join([blk.cells for blk in c_blocks], m)


def multiply_recursive(a: Sequence, b: Sequence, n: int, ring,
                       config: RecursionConfig | None = None) -> tuple:
    """Multiply two flat row-major n x n matrices over the given ring."""
    if len(a) != n * n or len(b) != n * n:
        raise ValueError(
            f"expected two flat {n}x{n} matrices, got lengths {len(a)} and {len(b)}"
        )
    if config is None:
        config = RecursionConfig()
    m = next_power_of_3(n)
    if m == n:
        return _multiply_pow3(tuple(a), tuple(b), m, ring, config)
    zero = ring.zero()

    def pad(flat):
        return tuple(
            flat[i * n + j] if i < n and j < n else zero
            for i in range(m) for j in range(m)
        )

    padded = _multiply_pow3(pad(a), pad(b), m, ring, config)
    return tuple(padded[i * m + j] for i in range(n) for j in range(n))


def predicted_counts(k: int) -> tuple[int, int]:
    """(multiplications, additions) for a 3**k input at cutoff 1.

    mults(k) = 23**k; adds(k) = 23*adds(k-1) + 56*9**(k-1) with adds(0) = 0:
    each level runs 56 block additions on (3**(k-1))**2 entries and recurses
    into 23 block products.
    """
    if k < 0:
        raise ValueError(f"depth must be >= 0, got {k}")
    mults, adds = 1, 0
    for level in range(1, k + 1):
        adds = 23 * adds + 56 * 9 ** (level - 1)
        mults *= 23
    return mults, adds
