"""Canonical bitmask representation of subset families over [n].

Subsets of [n] are n-bit integers (bit i-1 set means element i is in the
set).  A Family is an immutable, deduplicated, canonically sorted tuple of
such masks together with its ground-set size.  All counting is exact
(Python integers), all comparisons of rational bounds are done by
cross-multiplication.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

# Enumeration paths materialize subsets explicitly; formula-only operations
# (binomials, bound tables) accept much larger n.
MAX_ENUM_N = 24
MAX_FORMULA_N = 10_000


class PreconditionError(ValueError):
    """An operation was called outside its stated hypotheses."""


class InvariantViolation(RuntimeError):
    """A counting fact that must always hold failed: a bug trap, never a
    legitimate outcome."""


def binomial(n: int, r: int) -> int:
    """Exact C(n, r); 0 when r < 0 or r > n.  Total for n >= 0."""
    if n < 0:
        raise PreconditionError(f"binomial requires n >= 0, got n={n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def mask_from(elements, n: int) -> int:
    """Build a subset mask from an iterable of 1-based elements."""
    m = 0
    for e in elements:
        if not 1 <= e <= n:
            raise PreconditionError(f"element {e} outside ground set [{n}]")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> list[int]:
    """1-based sorted element list of a subset mask."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True, slots=True)
class Params:
    """The problem triple (n, t, k).

    n is the ground-set size, t the pairwise intersection floor, k the
    longest allowed chain.  Parity of n + t decides which formulas apply;
    `even_case` is always recomputed from n and t.
    """

    n: int
    t: int
    k: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_FORMULA_N:
            raise PreconditionError(f"need 1 <= n <= {MAX_FORMULA_N}, got {self.n}")
        if not 1 <= self.t <= self.n:
            raise PreconditionError(f"need 1 <= t <= n, got t={self.t}, n={self.n}")
        if self.k < 1:
            raise PreconditionError(f"need k >= 1, got k={self.k}")

    @property
    def even_case(self) -> bool:
        return (self.n + self.t) % 2 == 0

    @property
    def half_up(self) -> int:
        """ceil((n+t)/2): the lowest middle layer; equals (n+t)/2 when n+t
        is even."""
        return (self.n + self.t + 1) // 2


class Family:
    """Immutable family of subsets of [n] in canonical order.

    Canonical order is (cardinality, numeric value); members are
    deduplicated.  Layer extraction is therefore a contiguous slice.
    """

    __slots__ = ("n", "members")

    def __init__(self, n: int, masks=()):
        if not 1 <= n <= MAX_ENUM_N:
            raise PreconditionError(f"family ground set needs 1 <= n <= {MAX_ENUM_N}, got {n}")
        full = (1 << n) - 1
        seen = set()
        for m in masks:
            if m < 0 or m & ~full:
                raise PreconditionError(f"mask {m} has bits outside [{n}]")
            seen.add(m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", tuple(sorted(seen, key=lambda m: (m.bit_count(), m))))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Family is immutable")

    @classmethod
    def from_sets(cls, n: int, sets) -> "Family":
        return cls(n, (mask_from(s, n) for s in sets))

    def to_sets(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    @classmethod
    def from_json_dict(cls, d) -> "Family":
        if not isinstance(d, dict) or "n" not in d or "sets" not in d:
            raise PreconditionError("family JSON needs keys 'n' and 'sets'")
        return cls.from_sets(d["n"], d["sets"])

    def to_json_dict(self) -> dict:
        return {"n": self.n, "sets": self.to_sets()}

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask):
        return mask in set(self.members)

    def __eq__(self, other):
        return isinstance(other, Family) and self.n == other.n and self.members == other.members

    def __hash__(self):
        return hash((self.n, self.members))

    def __repr__(self):
        return f"Family(n={self.n}, members={len(self.members)})"

    def layer(self, i: int) -> tuple[int, ...]:
        """All members of cardinality i (a contiguous slice of members)."""
        return tuple(m for m in self.members if m.bit_count() == i)

    def profile(self) -> dict[int, int]:
        """Map cardinality -> number of members of that cardinality."""
        prof: dict[int, int] = {}
        for m in self.members:
            c = m.bit_count()
            prof[c] = prof.get(c, 0) + 1
        return prof

    def min_size(self) -> int:
        if not self.members:
            raise PreconditionError("empty family has no minimum size")
        return self.members[0].bit_count()

    def max_size(self) -> int:
        if not self.members:
            raise PreconditionError("empty family has no maximum size")
        return self.members[-1].bit_count()

    def union(self, other: "Family") -> "Family":
        if other.n != self.n:
            raise PreconditionError("union of families over different ground sets")
        return Family(self.n, self.members + other.members)


def is_t_intersecting(fam: Family, t: int) -> bool:
    """True iff every unordered pair of members meets in >= t elements.

    Vacuously true for families with at most one member.
    """
    if t < 0:
        raise PreconditionError("t must be >= 0")
    if t == 0:
        return True
    ms = fam.members
    for i in range(len(ms)):
        a = ms[i]
        for j in range(i + 1, len(ms)):
            if (a & ms[j]).bit_count() < t:
                return False
    return True


def longest_chain(fam: Family) -> int:
    """Number of sets in the longest nested chain inside fam (0 if empty).

    Canonical order sorts by cardinality, so a single increasing pass of
    longest-path DP over the containment DAG suffices.
    """
    ms = fam.members
    best = [1] * len(ms)
    out = 0
    for i, a in enumerate(ms):
        for j in range(i):
            b = ms[j]
            if b != a and (a & b) == b and best[j] + 1 > best[i]:
                best[i] = best[j] + 1
        if best[i] > out:
            out = best[i]
    return out


def is_k_sperner(fam: Family, k: int) -> bool:
    return longest_chain(fam) <= k


def shadow(fam: Family, level: int) -> Family:
    """All level-subsets of members of size >= level.

    On a uniform family of size r this is the usual shadow; on mixed
    families every member at or above the level contributes.
    """
    n = fam.n
    if not 0 <= level <= n:
        raise PreconditionError(f"shadow level must lie in [0, {n}]")
    out = set()
    for m in fam.members:
        c = m.bit_count()
        if c < level:
            continue
        bits = [1 << i for i in range(n) if m >> i & 1]
        for drop in itertools.combinations(bits, c - level):
            x = m
            for b in drop:
                x ^= b
            out.add(x)
    return Family(n, out)


def shade(fam: Family, level: int) -> Family:
    """All level-supersets (within [n]) of members of size <= level."""
    n = fam.n
    if not 0 <= level <= n:
        raise PreconditionError(f"shade level must lie in [0, {n}]")
    out = set()
    for m in fam.members:
        c = m.bit_count()
        if c > level:
            continue
        free = [1 << i for i in range(n) if not m >> i & 1]
        for add in itertools.combinations(free, level - c):
            x = m
            for b in add:
                x |= b
            out.add(x)
    return Family(n, out)


def complement_family(fam: Family) -> Family:
    """{[n] \\ F : F in fam}; an involution."""
    full = (1 << fam.n) - 1
    return Family(fam.n, (full ^ m for m in fam.members))


def weight(fam: Family) -> int:
    """Sum of C(n, |G|) over members G: the cycle method's currency."""
    n = fam.n
    return sum(math.comb(n, m.bit_count()) for m in fam.members)


@dataclass(frozen=True, slots=True)
class ShadowRatioCheck:
    """Outcome of the uniform shadow lower-bound check: the shadow size
    and the exact rational lower bound it must meet."""

    holds: bool
    shadow_size: int
    required: Fraction


def verify_katona_shadow(fam: Family, r: int, t: int, level: int) -> ShadowRatioCheck:
    """Check |Delta_level(fam)| >= C(2r-t, level)/C(2r-t, r) * |fam| for an
    r-uniform t-intersecting family, r - t <= level <= r.

    The comparison is exact (cross-multiplied integers), never floating
    point.  Inputs violating a hypothesis raise PreconditionError naming it.
    """
    if len(fam) and not all(m.bit_count() == r for m in fam.members):
        raise PreconditionError("family is not r-uniform")
    if not is_t_intersecting(fam, t):
        raise PreconditionError("family is not t-intersecting")
    if not r - t <= level <= r:
        raise PreconditionError(f"need r - t <= level <= r, got level={level}")
    sh = len(shadow(fam, level))
    num = binomial(2 * r - t, level)
    den = binomial(2 * r - t, r)
    if den == 0:
        raise PreconditionError("degenerate ratio: C(2r-t, r) = 0")
    holds = sh * den >= num * len(fam)
    return ShadowRatioCheck(holds=holds, shadow_size=sh, required=Fraction(num * len(fam), den))
