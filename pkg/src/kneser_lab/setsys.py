"""Ground-set and subset primitives.

Subsets of [n] = {1, ..., n} are stored as bit vectors packed into a Python
int: bit i is set iff element i+1 is in the set.  Elements are 1-based in
every public interface; bit positions are 0-based internally.  All types are
immutable and safe to share between workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import CapExceeded, EmptyInput, InvalidParams

# Ground sets above this size are rejected unless the caller raises the cap
# explicitly.  Python ints are arbitrary width, so the cap is a sanity guard
# against runaway instance sizes rather than a word-size limit.
DEFAULT_GROUND_CAP = 64


@dataclass(frozen=True, slots=True)
class GroundParams:
    """Instance parameters: ground-set size n, subset size k, arity r."""

    n: int
    k: int
    r: int

    def __post_init__(self) -> None:
        if not (1 <= self.k <= self.n):
            raise InvalidParams(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.r < 2:
            raise InvalidParams(f"need r >= 2, got r={self.r}")

    @property
    def admissible(self) -> bool:
        """True iff r*k <= (r-1)*n, the hypothesis of the tight bound."""
        return self.r * self.k <= (self.r - 1) * self.n

    @property
    def num_vertices(self) -> int:
        return comb(self.n, self.k)


@dataclass(frozen=True, slots=True)
class KSubset:
    """A subset of [n] as a bit vector (bit i set iff element i+1 present)."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidParams(f"negative ground size {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise InvalidParams(
                f"bit pattern {self.bits:#x} does not fit in ground set of size {self.n}"
            )

    @classmethod
    def from_elements(cls, elements, n: int) -> "KSubset":
        bits = 0
        for e in elements:
            if not (1 <= e <= n):
                raise InvalidParams(f"element {e} outside [1, {n}]")
            bits |= 1 << (e - 1)
        return cls(bits, n)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> tuple[int, ...]:
        """Members as 1-based elements in increasing order."""
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def contains(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.bits >> (element - 1) & 1)

    def __repr__(self) -> str:
        return f"KSubset({{{','.join(map(str, self.elements()))}}}, n={self.n})"


@dataclass(frozen=True, slots=True)
class SetFamily:
    """An ordered, duplicate-free collection of KSubsets over one ground set."""

    ground_n: int
    members: tuple[KSubset, ...]

    def __post_init__(self) -> None:
        seen = set()
        for m in self.members:
            if m.n != self.ground_n:
                raise InvalidParams(
                    f"member over ground set {m.n}, family over {self.ground_n}"
                )
            if m.bits in seen:
                raise InvalidParams(f"duplicate member {m!r}")
            seen.add(m.bits)

    @classmethod
    def from_bitmasks(cls, masks, n: int) -> "SetFamily":
        return cls(n, tuple(KSubset(b, n) for b in masks))

    def masks(self) -> tuple[int, ...]:
        return tuple(m.bits for m in self.members)

    def __len__(self) -> int:
        return len(self.members)


def enumerate_k_subsets(n: int, k: int, cap: int = DEFAULT_GROUND_CAP) -> list[KSubset]:
    """All k-subsets of [n] in colexicographic order.

    Colex order on k-subsets coincides with ascending numeric order of the
    bit patterns, so the list is produced by Gosper's hack and is
    deterministic.
    """
    if n < 0 or k < 0 or k > n:
        raise InvalidParams(f"need 0 <= k <= n, got n={n}, k={k}")
    if n > cap:
        raise CapExceeded(f"ground set size {n} exceeds cap {cap}")
    if k == 0:
        return [KSubset(0, n)]
    out = []
    m = (1 << k) - 1
    limit = 1 << n
    while m < limit:
        out.append(KSubset(m, n))
        low = m & -m
        ripple = m + low
        m = ((m ^ ripple) >> (low.bit_length() + 1)) | ripple
    return out


def colex_rank(f: KSubset) -> int:
    """Position of a k-subset in the colex enumeration of all k-subsets."""
    rank = 0
    i = 1
    for pos in range(f.n):
        if f.bits >> pos & 1:
            rank += comb(pos, i)
            i += 1
    return rank


def colex_unrank(n: int, k: int, rank: int) -> KSubset:
    """Inverse of colex_rank for the (n, k) system."""
    if n < 0 or k < 0 or k > n:
        raise InvalidParams(f"need 0 <= k <= n, got n={n}, k={k}")
    if not (0 <= rank < comb(n, k)):
        raise InvalidParams(f"rank {rank} outside [0, {comb(n, k)})")
    bits = 0
    remaining = rank
    upper = n
    for i in range(k, 0, -1):
        # largest position c < upper with comb(c, i) <= remaining
        c = upper - 1
        while comb(c, i) > remaining:
            c -= 1
        bits |= 1 << c
        remaining -= comb(c, i)
        upper = c
    return KSubset(bits, n)


def cyclic_distance(a: int, b: int, n: int) -> int:
    """Distance between two elements of [n] along the n-cycle."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise InvalidParams(f"elements {a}, {b} outside [1, {n}]")
    d = abs(a - b)
    return min(d, n - d)


def is_s_stable(f: KSubset, s: int) -> bool:
    """True iff every pair of distinct elements of f is at cyclic distance >= s.

    Any one-element set is s-stable for all s.
    """
    if s < 1:
        raise InvalidParams(f"need s >= 1, got s={s}")
    if f.bits == 0:
        raise InvalidParams("stability is undefined for the empty set")
    els = f.elements()
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if cyclic_distance(els[i], els[j], f.n) < s:
                return False
    return True


def common_intersection(fam: list[KSubset] | tuple[KSubset, ...]) -> KSubset:
    """Bitwise intersection of all members (possibly the empty set)."""
    if not fam:
        raise EmptyInput("common_intersection of an empty collection")
    n = fam[0].n
    acc = fam[0].bits
    for f in fam[1:]:
        if f.n != n:
            raise InvalidParams("members over different ground sets")
        acc &= f.bits
    return KSubset(acc, n)
