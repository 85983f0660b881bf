"""Ternary tensor factors for 3x3 multiplication and their file format.

A rank-R scheme is a triple (U, V, W) of R x 9 coefficient matrices with
every entry in {-1, 0, 1}.  Row r holds the coefficients of product r: U_r
over the entries of A, V_r over the entries of B, and W_r gives the
contribution of product r to each output entry.  Matrix entries use flat
row-major coordinates 0..8 (entry (i, j) is coordinate 3*i + j).

The factor-file format stores the three blocks transposed (9 coordinate
rows by R product columns) as whitespace-separated tokens from {-1, 0, 1},
with the blocks separated by '#' lines:

    <9 rows of U^T>
    #
    <9 rows of V^T>
    #
    <9 rows of W^T>

Canonical output right-aligns every token in a 2-character field with
single spaces between fields, so parse and serialize round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Vector = tuple[int, ...]

TERNARY = (-1, 0, 1)


class FactorFileError(ValueError):
    """Malformed factor file; the message names the offending line."""


def flat_index(row: int, col: int) -> int:
    """Flat row-major coordinate of matrix entry (row, col), both in 0..2."""
    return 3 * row + col


def row_col(flat: int) -> tuple[int, int]:
    """Inverse of flat_index."""
    return divmod(flat, 3)


def _check_rows(name: str, rows: tuple[Vector, ...], rank: int) -> None:
    if len(rows) != rank:
        raise ValueError(f"{name} has {len(rows)} rows, expected rank {rank}")
    for r, row in enumerate(rows):
        if len(row) != 9:
            raise ValueError(f"{name} row {r} has {len(row)} entries, expected 9")
        for c, entry in enumerate(row):
            if entry not in TERNARY:
                raise ValueError(
                    f"{name} row {r} coordinate {c} is {entry}, outside {{-1, 0, 1}}"
                )


@dataclass(frozen=True)
class Scheme:
    """Immutable rank-R ternary factor triple."""

    rank: int
    u: tuple[Vector, ...]
    v: tuple[Vector, ...]
    w: tuple[Vector, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        _check_rows("U", self.u, self.rank)
        _check_rows("V", self.v, self.rank)
        _check_rows("W", self.w, self.rank)

    @staticmethod
    def from_rows(u, v, w) -> "Scheme":
        u = tuple(tuple(row) for row in u)
        v = tuple(tuple(row) for row in v)
        w = tuple(tuple(row) for row in w)
        return Scheme(len(u), u, v, w)


def parse_factor_file(text: str) -> Scheme:
    """Parse a three-block factor file into a Scheme.

    Rank is inferred from the row width.  Accepts any leading/trailing
    whitespace, blank lines, and both LF and CRLF endings.  Raises
    FactorFileError with a 1-based line number for malformed tokens,
    ragged rows, or a wrong number of rows or blocks.
    """
    blocks: list[list[list[int]]] = [[]]
    width = None
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if len(blocks) == 3:
                raise FactorFileError(f"line {lineno}: more than 3 blocks")
            blocks.append([])
            continue
        row = []
        for token in line.split():
            if token not in ("-1", "0", "1"):
                raise FactorFileError(f"line {lineno}: bad token {token!r}")
            row.append(int(token))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FactorFileError(
                f"line {lineno}: row has {len(row)} tokens, expected {width}"
            )
        if len(blocks[-1]) == 9:
            raise FactorFileError(f"line {lineno}: block has more than 9 rows")
        blocks[-1].append(row)

    eof = last_line + 1
    if len(blocks) != 3:
        raise FactorFileError(f"line {eof}: found {len(blocks)} blocks, expected 3")
    for b, block in enumerate(blocks):
        if len(block) != 9:
            raise FactorFileError(
                f"line {eof}: block {b + 1} has {len(block)} rows, expected 9"
            )
    if width is None or width < 1:
        raise FactorFileError(f"line {eof}: empty factor blocks")

    # Blocks are stored transposed: block row c, column r is factor row r,
    # coordinate c.
    def untranspose(block: list[list[int]]) -> tuple[Vector, ...]:
        return tuple(tuple(block[c][r] for c in range(9)) for r in range(width))

    return Scheme(width, *(untranspose(b) for b in blocks))


def serialize_factor_file(scheme: Scheme) -> str:
    """Emit the canonical factor-file text for a Scheme.

    parse_factor_file(serialize_factor_file(s)) == s for every valid s.
    """
    out: list[str] = []
    for factor in (scheme.u, scheme.v, scheme.w):
        if out:
            out.append("#")
        for c in range(9):
            out.append(" ".join(f"{factor[r][c]:2d}" for r in range(scheme.rank)))
    return "\n".join(out) + "\n"


#: The built-in rank-23 factor table, in canonical factor-file form.
BUILTIN_FACTOR_TEXT = """\
 0  0  0  0  0  0  0  0  0  0  0  0  1  0  0  0  1  1  0  0 -1  0  1
 0  0  0  1  1  0  0  0  0  1 -1  0 -1  0  1  0 -1  0  0  0  1  0 -1
 0  0  0  1  0  0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  1  0  0
 0  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0 -1  0  0  1  1  0 -1
 1 -1  0 -1 -1  1  0 -1  1 -1  1  0  1  0  0  0  1  0  0  0 -1  0  1
 0 -1  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  1  0 -1  0  1
 0  1  0  0  0  0  0  1  0  1  0  0 -1  0  0  1 -1  0  0  0  1  1 -1
 1 -1  0 -1 -1  0  0 -1  0 -1  1  0  1  0  0  0  1  0  0  0 -1 -1  1
 1  0  0 -1 -1  0  1  0  0  0  0  1  0  0  0  0  0  0  0  0  0  0  0
#
-1 -1 -1  0 -1  0  0 -1  0  1  0 -1  0  0  0  0  1  1  0  1  0  0  1
 1  1  1  0  1  0  0  1  0 -1  0  1  0  0  0  1 -1  0  0  0  0  0 -1
 1  1  1  0  1  0  0  1  0  0  1  1  1  0  0  0  0  0  0  0  0  0 -1
-1  0  0  0 -1  0  0  0  1  0  0 -1  0  0  1  0  0  0  0  0  0  0  0
 1  0  0  0  1  0  0  1  0 -1  0  1  0  0  0  1  0  0  0  0  0  1  0
 1  0  0  0  1  1  0  0  0  0  1  1  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  1  0  1  0  0  0  0  1  0  0  0  0
 0  0  1  0  0  0  1  0  0  0  0  0  0  0  0  0 -1  0  0  0  1  0 -1
 0  0  1  1 -1  0  0  0  0  0 -1 -1  0  0  0  0  0  0  0  0  0  0  0
#
 0  0  0  0  0  0  0  0  0  0  0  0  0  1  1  0  0  1  0  0  0  0  0
 0  1  0  0  0  0  0 -1  0 -1  0  0 -1  0  0  0  0  1  0  0  1  0 -1
 1  0  0  1  1  0  0  1  0  1  0  0  1  0  1  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  0  1  1  0  0  0
 0  1  0  0  0  0  0 -1  0  0  0  0 -1  0  0  0  1  0  0  1  0  1 -1
 0  0  1  0  0  1  0  0  0  0  0  0  1  0  0  0 -1  0  0  0  0  0  1
 0  0  0  0  1  0  0  0 -1  1  1  1  0  0  1  1  0  0  0  0  0  0  0
 0  0  0  0  0  0  1  0  0  0  0  0  0  0  0  1  0  0  0  0  0 -1  0
 1  0  0  0  1 -1  0  1  0  1  1  0  0  0  1  0  0  0  0  0  0  0  0
"""


@lru_cache(maxsize=1)
def builtin_scheme() -> Scheme:
    """The built-in rank-23 ternary scheme (56-addition schedule available
    in mm33.slp)."""
    return parse_factor_file(BUILTIN_FACTOR_TEXT)
