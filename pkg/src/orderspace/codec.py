"""Characteristic-bit encoding of completed orders.

A completed order on n elements becomes a bit string of length n(n-1)
over the canonical off-diagonal pair enumeration (row-major lexicographic,
diagonal skipped).  This is the persistence format for order streams and
the coordinate system for whole-space membership queries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .magma import Magma
from .orders import FAILS, HOLDS, OrderRelation, Side, verify_order


class CodecError(ValueError):
    pass


def pair_index(a: int, b: int, n: int) -> int:
    """Position of (a, b) in the canonical pair enumeration."""
    if not (0 <= a < n and 0 <= b < n):
        raise CodecError(f"pair ({a},{b}) out of range for n={n}")
    if a == b:
        raise CodecError("diagonal pairs have no index")
    return a * (n - 1) + (b - 1 if b > a else b)


def pair_at(index: int, n: int) -> tuple[int, int]:
    """Inverse of pair_index."""
    if not 0 <= index < n * (n - 1):
        raise CodecError(f"index {index} out of range for n={n}")
    a, r = divmod(index, n - 1)
    return a, r + 1 if r >= a else r


@dataclass(frozen=True)
class ChiVector:
    """Characteristic bits of an order: bit(a, b) = 1 iff (a, b) holds."""

    n: int
    bits: str

    def __post_init__(self):
        want = self.n * (self.n - 1)
        if len(self.bits) != want:
            raise CodecError(f"bit string length {len(self.bits)}, expected {want}")
        if set(self.bits) - {"0", "1"}:
            raise CodecError("bit string must contain only 0 and 1")

    def bit(self, a: int, b: int) -> int:
        return 1 if self.bits[pair_index(a, b, self.n)] == "1" else 0


def encode(r: OrderRelation) -> ChiVector:
    """Bit string of a completed order over the canonical pair order."""
    if not r.is_complete():
        raise CodecError("undecided pairs remain; only completed orders encode")
    n = r.n
    out = []
    for idx in range(n * (n - 1)):
        a, b = pair_at(idx, n)
        out.append("1" if r.holds(a, b) else "0")
    return ChiVector(n, "".join(out))


def subbasis_bit(chi: ChiVector, a: int, b: int) -> bool:
    """Membership of the encoded order in the subbasis set of (a, b)."""
    return chi.bit(a, b) == 1


@dataclass(frozen=True)
class Rejection:
    """Why a bit string is not a valid order: the first violated condition
    (totality, transitivity, invariance) and its witness."""

    condition: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        extra = f" ({self.detail})" if self.detail else ""
        return f"reject {self.condition} at {self.witness}{extra}"


def decode(chi: ChiVector, m: Magma, side: Side) -> OrderRelation | Rejection:
    """Accept the bit string as a completed side-invariant order or reject
    it with the first violated condition and a witness."""
    n = m.size
    if chi.n != n:
        raise CodecError(f"bit string is for n={chi.n}, magma has size {n}")
    r = OrderRelation(n)
    rel = r.rel
    for idx, ch in enumerate(chi.bits):
        a, b = pair_at(idx, n)
        rel[a * n + b] = HOLDS if ch == "1" else FAILS
    v = verify_order(m, r, side)
    if v is not None:
        return Rejection(v.condition, v.witness, v.detail)
    return r
