"""Coefficient rings for the 3x3 multiplication kernel.

A ring is a small factory object providing ``zero()``, ``one()`` and
``random(rng)``.  Ring elements are ordinary Python values (plain ints for
the integer ring) or objects overloading ``+``, ``-``, unary ``-``, ``*``
and ``==``.  Multiplication is never assumed commutative; the kernel keeps
every product in left-times-right order, so 2x2 integer matrices work as
coefficients.

All elements are immutable and all operations are pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

#: Default magnitude bound for random integer test inputs.  Intermediates of
#: a single 3x3 multiply stay within ~9 * bound**2, far below any practical
#: integer limit (Python ints are exact at any size).
DEFAULT_INT_BOUND = 99


def _is_prime(n: int) -> bool:
    """Trial-division primality check; fine for the small moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class IntegerRing:
    """Exact signed integers.  Elements are plain Python ints."""

    def __init__(self, bound: int = DEFAULT_INT_BOUND):
        self.bound = bound

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def random(self, rng: random.Random) -> int:
        return rng.randint(-self.bound, self.bound)

    def __repr__(self) -> str:
        return f"IntegerRing(bound={self.bound})"


@dataclass(frozen=True)
class PrimeFieldElement:
    """Residue in [0, p).  Arithmetic reduces mod p on every operation."""

    value: int
    p: int

    def _check(self, other: "PrimeFieldElement") -> None:
        if not isinstance(other, PrimeFieldElement) or other.p != self.p:
            raise TypeError(f"mixed-field arithmetic: {self!r} vs {other!r}")

    def __add__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement((self.value + other.value) % self.p, self.p)

    def __sub__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement((self.value - other.value) % self.p, self.p)

    def __mul__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement((self.value * other.value) % self.p, self.p)

    def __neg__(self) -> "PrimeFieldElement":
        return PrimeFieldElement(-self.value % self.p, self.p)

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


class PrimeField:
    """GF(p) for a prime p, validated at construction."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def element(self, value: int) -> PrimeFieldElement:
        return PrimeFieldElement(value % self.p, self.p)

    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement(0, self.p)

    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement(1 % self.p, self.p)

    def random(self, rng: random.Random) -> PrimeFieldElement:
        return PrimeFieldElement(rng.randrange(self.p), self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


@dataclass(frozen=True)
class Mat2:
    """2x2 integer matrix ((a, b), (c, d)).  Multiplication is noncommutative."""

    a: int
    b: int
    c: int
    d: int

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)


class Mat2Ring:
    """Ring of 2x2 integer matrices; the stock noncommutative test ring."""

    def __init__(self, bound: int = 9):
        self.bound = bound

    def zero(self) -> Mat2:
        return Mat2(0, 0, 0, 0)

    def one(self) -> Mat2:
        return Mat2(1, 0, 0, 1)

    def random(self, rng: random.Random) -> Mat2:
        b = self.bound
        return Mat2(*(rng.randint(-b, b) for _ in range(4)))

    def __repr__(self) -> str:
        return f"Mat2Ring(bound={self.bound})"


class OpCounts:
    """Mutable tally of ring operations, shared by all elements of a CountingRing."""

    __slots__ = ("adds", "subs", "negs", "mults")

    def __init__(self):
        self.reset()

    def reset(self) -> None:
        self.adds = 0
        self.subs = 0
        self.negs = 0
        self.mults = 0

    @property
    def additions(self) -> int:
        """Additions plus subtractions; sign changes are not included."""
        return self.adds + self.subs

    def __repr__(self) -> str:
        return (
            f"OpCounts(adds={self.adds}, subs={self.subs}, "
            f"negs={self.negs}, mults={self.mults})"
        )


class CountedElement:
    """Wraps a base-ring element and tallies every operation applied to it."""

    __slots__ = ("value", "counts")

    def __init__(self, value, counts: OpCounts):
        self.value = value
        self.counts = counts

    def __add__(self, other: "CountedElement") -> "CountedElement":
        self.counts.adds += 1
        return CountedElement(self.value + other.value, self.counts)

    def __sub__(self, other: "CountedElement") -> "CountedElement":
        self.counts.subs += 1
        return CountedElement(self.value - other.value, self.counts)

    def __neg__(self) -> "CountedElement":
        self.counts.negs += 1
        return CountedElement(-self.value, self.counts)

    def __mul__(self, other: "CountedElement") -> "CountedElement":
        self.counts.mults += 1
        return CountedElement(self.value * other.value, self.counts)

    def __eq__(self, other) -> bool:
        if isinstance(other, CountedElement):
            return self.value == other.value
        return self.value == other

    def __repr__(self) -> str:
        return f"counted({self.value!r})"


class CountingRing:
    """Instruments a base ring so tests can assert exact operation counts."""

    def __init__(self, base=None):
        self.base = base if base is not None else IntegerRing()
        self.counts = OpCounts()

    def wrap(self, value) -> CountedElement:
        return CountedElement(value, self.counts)

    def zero(self) -> CountedElement:
        return self.wrap(self.base.zero())

    def one(self) -> CountedElement:
        return self.wrap(self.base.one())

    def random(self, rng: random.Random) -> CountedElement:
        return self.wrap(self.base.random(rng))

    def reset(self) -> None:
        self.counts.reset()


def scale_by_ternary(ring, c: int, x):
    """Apply a coefficient from {-1, 0, 1} without any ring multiplication.

    Returns ring.zero(), x, or -x.  Negation counts as a free sign change
    in the straight-line cost model.
    """
    if c == 0:
        return ring.zero()
    if c == 1:
        return x
    if c == -1:
        return -x
    raise ValueError(f"coefficient {c} is not in {{-1, 0, 1}}")
