"""Symmetries of 3x3 multiplication schemes.

The central one is the order-3 cyclic rotation (U, V, W) -> (V, W^T, U^T),
where each length-9 factor vector is transposed as a 3x3 row-major matrix.
It preserves the multiplication tensor while permuting the roles of the
left input, right input, and output recombination, so certification
results carry over unchanged.

Product reordering and paired sign flips are included as further
tensor-preserving transformations; they are handy for generating test
fixtures.
"""

from __future__ import annotations

from collections.abc import Sequence

from .factors import Scheme, Vector


def transpose_vector(v: Sequence[int]) -> Vector:
    """Transpose a length-9 vector as a row-major 3x3 matrix."""
    if len(v) != 9:
        raise ValueError(f"expected 9 coordinates, got {len(v)}")
    return tuple(v[3 * (p % 3) + p // 3] for p in range(9))


def cyclic_rotate(scheme: Scheme) -> Scheme:
    """Rotate factor roles: (U, V, W) -> (V, W^T, U^T).  Order 3."""
    return Scheme(
        scheme.rank,
        scheme.v,
        tuple(transpose_vector(row) for row in scheme.w),
        tuple(transpose_vector(row) for row in scheme.u),
    )


def permute_products(scheme: Scheme, perm: Sequence[int]) -> Scheme:
    """Reorder the products: new row i is old row perm[i], in all factors."""
    if sorted(perm) != list(range(scheme.rank)):
        raise ValueError(f"perm is not a bijection on 0..{scheme.rank - 1}")
    return Scheme(
        scheme.rank,
        tuple(scheme.u[p] for p in perm),
        tuple(scheme.v[p] for p in perm),
        tuple(scheme.w[p] for p in perm),
    )


def flip_product_signs(scheme: Scheme, index: int, pair: tuple[str, str] = ("u", "v")) -> Scheme:
    """Negate two of the three factor rows of one product.

    Negating an even number of rows in a rank-1 term leaves the tensor
    unchanged, so certification outcomes are preserved.
    """
    if sorted(pair) not in (["u", "v"], ["u", "w"], ["v", "w"]):
        raise ValueError(f"pair must name two distinct factors, got {pair!r}")
    factors = {"u": list(scheme.u), "v": list(scheme.v), "w": list(scheme.w)}
    for name in pair:
        factors[name][index] = tuple(-x for x in factors[name][index])
    return Scheme(scheme.rank, tuple(factors["u"]), tuple(factors["v"]), tuple(factors["w"]))
