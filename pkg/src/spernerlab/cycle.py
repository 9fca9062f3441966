"""Interval families on a cyclic order of [n].

Positions run 0..n-1 clockwise; an interval is (start, length) with
1 <= length <= n-1 (the full set and the empty set are never intervals).
The h-th chain consists of the n-1 nested intervals starting at h.  All
overlap computations are exact arc arithmetic, so the machinery works for
ground sets far beyond the bitmask enumeration limit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .families import (
    Family,
    InvariantViolation,
    Params,
    PreconditionError,
)


@dataclass(frozen=True, slots=True)
class CyclicPerm:
    """A cyclic order of [n]: order[p] is the element at position p."""

    order: tuple[int, ...]

    def __post_init__(self):
        n = len(self.order)
        if n < 3:
            raise PreconditionError("cyclic orders need n >= 3")
        if sorted(self.order) != list(range(1, n + 1)):
            raise PreconditionError("order must be a permutation of 1..n")

    @property
    def n(self) -> int:
        return len(self.order)

    def position_of(self) -> dict[int, int]:
        return {e: p for p, e in enumerate(self.order)}


def identity_perm(n: int) -> CyclicPerm:
    return CyclicPerm(tuple(range(1, n + 1)))


def all_cyclic_perms(n: int):
    """One representative per cyclic order: element 1 pinned at position 0.

    Yields (n-1)! permutations; full enumeration is only sane for n <= 7.
    """
    for rest in itertools.permutations(range(2, n + 1)):
        yield CyclicPerm((1,) + rest)


@dataclass(frozen=True, slots=True, order=True)
class Interval:
    """A run of consecutive positions: starts at `start`, covers `length`
    positions clockwise.  Ordered by (length, start)."""

    length: int
    start: int


def make_interval(start: int, length: int, n: int) -> Interval:
    if not 1 <= length <= n - 1:
        raise PreconditionError(f"interval length must lie in [1, {n - 1}], got {length}")
    return Interval(length=length, start=start % n)


def arc_overlap(n: int, a: Interval, b: Interval) -> int:
    """Exact number of shared positions of two cyclic arcs."""
    d = (b.start - a.start) % n
    # b relative to a occupies [d, d+len_b); a occupies [0, len_a)
    seg1 = max(0, min(a.length, min(d + b.length, n)) - d)
    seg2 = max(0, min(a.length, d + b.length - n))
    return seg1 + seg2


def interval_mask(perm: CyclicPerm, iv: Interval) -> int:
    """Element bitmask of an interval under the given cyclic order."""
    n = perm.n
    m = 0
    for off in range(iv.length):
        m |= 1 << (perm.order[(iv.start + off) % n] - 1)
    return m


class IntervalFamily:
    """Immutable, canonically ordered family of intervals on one cyclic
    order."""

    __slots__ = ("perm", "members")

    def __init__(self, perm: CyclicPerm, members=()):
        n = perm.n
        seen = set()
        for iv in members:
            if not 1 <= iv.length <= n - 1:
                raise PreconditionError(f"interval length {iv.length} outside [1, {n - 1}]")
            if not 0 <= iv.start < n:
                raise PreconditionError(f"interval start {iv.start} outside [0, {n})")
            seen.add(iv)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "members", tuple(sorted(seen)))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("IntervalFamily is immutable")

    @property
    def n(self) -> int:
        return self.perm.n

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, iv):
        return iv in set(self.members)

    def __eq__(self, other):
        return (isinstance(other, IntervalFamily)
                and self.perm == other.perm and self.members == other.members)

    def __hash__(self):
        return hash((self.perm, self.members))

    def __repr__(self):
        return f"IntervalFamily(n={self.n}, members={len(self.members)})"

    def replace(self, members) -> "IntervalFamily":
        return IntervalFamily(self.perm, members)

    def by_chain(self) -> dict[int, list[Interval]]:
        """Group members by their chain (= start position), lengths sorted."""
        chains: dict[int, list[Interval]] = {}
        for iv in self.members:
            chains.setdefault(iv.start, []).append(iv)
        for run in chains.values():
            run.sort()
        return chains

    def to_family(self) -> Family:
        return Family(self.n, (interval_mask(self.perm, iv) for iv in self.members))


def interval_weight(G: IntervalFamily) -> int:
    """Sum of C(n, length) over members."""
    n = G.n
    return sum(math.comb(n, iv.length) for iv in G.members)


@dataclass(frozen=True, slots=True)
class CycleRestriction:
    intervals: IntervalFamily
    skipped: tuple[int, ...]  # members of size 0 or n: never intervals


def restrict_to_cycle(fam: Family, perm: CyclicPerm) -> CycleRestriction:
    """Members of fam whose elements are consecutive under perm, as
    intervals.  The empty set and the full set are reported separately."""
    n = perm.n
    if fam.n != n:
        raise PreconditionError("family and cyclic order disagree on n")
    pos = perm.position_of()
    ivs = []
    skipped = []
    for mask in fam.members:
        c = mask.bit_count()
        if c == 0 or c == n:
            skipped.append(mask)
            continue
        ps = {pos[e + 1] for e in range(n) if mask >> e & 1}
        starts = [p for p in ps if (p - 1) % n not in ps]
        if len(starts) != 1:
            continue
        ivs.append(Interval(length=c, start=starts[0]))
    return CycleRestriction(intervals=IntervalFamily(perm, ivs), skipped=tuple(skipped))


def chain_intervals(n: int, h: int) -> list[Interval]:
    """The n-1 nested intervals starting at position h, lengths 1..n-1."""
    return [Interval(length=ell, start=h % n) for ell in range(1, n)]


def is_sigma_ks_ti(G: IntervalFamily, params: Params) -> bool:
    """True iff G is pairwise t-intersecting and meets every chain in at
    most k intervals.

    Weaker than global k-Sperner-ness: nesting across different chains is
    deliberately ignored.
    """
    n, t, k = G.n, params.t, params.k
    per_chain: dict[int, int] = {}
    for iv in G.members:
        per_chain[iv.start] = per_chain.get(iv.start, 0) + 1
        if per_chain[iv.start] > k:
            return False
    ms = G.members
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            if arc_overlap(n, ms[i], ms[j]) < t:
                return False
    return True


def _chain_minima_ti(members_by_chain: dict[int, list[Interval]], n: int, t: int) -> bool:
    """t-intersection of a per-chain-nested family via its chain minima."""
    minima = [run[0] for run in members_by_chain.values()]
    if len(minima) == 1 and sum(len(r) for r in members_by_chain.values()) > 1:
        if minima[0].length < t:
            return False
    for i in range(len(minima)):
        for j in range(i + 1, len(minima)):
            if arc_overlap(n, minima[i], minima[j]) < t:
                return False
    return True


def make_consecutive(G: IntervalFamily, params: Params, validate: bool = True) -> IntervalFamily:
    """Close the length gaps inside every chain.

    While some chain holds a missing length strictly between its minimum
    and maximum, the gap interval replaces the chain maximum when the gap
    length is at least n/2 and the chain minimum otherwise.  Every
    replacement strictly increases the total weight; per-chain counts and
    both defining properties are untouched.
    """
    if validate and not is_sigma_ks_ti(G, params):
        raise PreconditionError("make_consecutive input is not sigma-k-Sperner t-intersecting")
    n = G.n
    chains = G.by_chain()
    guard = n * n + len(G.members) * n
    changed = True
    while changed:
        changed = False
        for h in sorted(chains):
            run = chains[h]
            lengths = [iv.length for iv in run]
            have = set(lengths)
            gaps = [ell for ell in range(lengths[0] + 1, lengths[-1]) if ell not in have]
            while gaps:
                guard -= 1
                if guard < 0:
                    raise InvariantViolation("make_consecutive failed to terminate")
                g = gaps[0]
                gap_iv = Interval(length=g, start=h)
                if 2 * g >= n:
                    old = run[-1]
                else:
                    old = run[0]
                if math.comb(n, g) <= math.comb(n, old.length):
                    raise InvariantViolation(
                        f"gap fill did not increase weight: len {old.length} -> {g} at n={n}")
                run.remove(old)
                run.append(gap_iv)
                run.sort()
                changed = True
                lengths = [iv.length for iv in run]
                have = set(lengths)
                gaps = [ell for ell in range(lengths[0] + 1, lengths[-1]) if ell not in have]
    out = G.replace([iv for run in chains.values() for iv in run])
    if len(out) != len(G):
        raise InvariantViolation("make_consecutive changed the family size")
    return out


def is_consecutive(G: IntervalFamily) -> bool:
    for run in G.by_chain().values():
        lens = [iv.length for iv in run]
        if lens != list(range(lens[0], lens[0] + len(lens))):
            return False
    return True


def is_full_consecutive(G: IntervalFamily, k: int) -> bool:
    chains = G.by_chain()
    if len(chains) != G.n:
        return False
    for run in chains.values():
        if len(run) != k:
            return False
        lens = [iv.length for iv in run]
        if lens != list(range(lens[0], lens[0] + k)):
            return False
    return True


def fill_full(G: IntervalFamily, params: Params, validate: bool = True) -> IntervalFamily:
    """Extend to a full consecutive family (exactly k intervals per chain)
    without decreasing weight.

    Chains grow one step above their current maximum; a chain whose run is
    pinned against the band top (or is empty) instead receives the interval
    of size mid+m, which meets every band member in at least t elements.
    """
    if (params.n + params.t) % 2:
        raise PreconditionError("fill_full band arithmetic requires n + t even")
    n, t, k = G.n, params.t, params.k
    mid = (n + t) // 2
    if validate and not is_sigma_ks_ti(G, params):
        raise PreconditionError("fill_full input is not sigma-k-Sperner t-intersecting")
    lens = [iv.length for iv in G.members]
    m = 0
    if lens:
        m = max(0, mid - min(lens), max(lens) - (mid + k - 1))
    if m > k - 1:
        raise PreconditionError(f"band half-width {m} exceeds k-1={k - 1}")
    top = mid + k - 1 + m
    if not 1 <= mid - m <= top <= n - 1:
        raise PreconditionError("band does not fit inside [1, n-1]")
    cur = make_consecutive(G, params, validate=False)
    for _ in range(k * n + 1):
        chains = cur.by_chain()
        deficit = [h for h in range(n) if len(chains.get(h, ())) < k]
        if not deficit:
            break
        h = deficit[0]
        run = chains.get(h, [])
        if not run:
            add = Interval(length=mid + m, start=h)
        elif run[-1].length + 1 <= top:
            add = Interval(length=run[-1].length + 1, start=h)
        else:
            add = Interval(length=mid + m, start=h)
            if add in set(run):
                raise InvariantViolation("fill_full patch interval already present")
        cur = cur.replace(cur.members + (add,))
        cur = make_consecutive(cur, params, validate=False)
    if not is_full_consecutive(cur, k):
        raise InvariantViolation("fill_full did not reach a full consecutive family")
    if not is_sigma_ks_ti(cur, params):
        raise InvariantViolation("fill_full broke the t-intersecting property")
    if interval_weight(cur) < interval_weight(G):
        raise InvariantViolation("fill_full decreased the weight")
    return cur


def bar_complement(iv: Interval, n: int, t: int) -> Interval:
    """The complement arc extended back into the interval by floor(t/2)
    positions at one end and ceil(t/2) at the other: size n + t - length,
    overlapping the input in exactly t positions."""
    if iv.length < t:
        raise PreconditionError(f"bar complement needs length >= t, got {iv.length} < {t}")
    out_len = n + t - iv.length
    if out_len > n - 1:
        raise PreconditionError(
            f"bar complement of a length-{iv.length} interval would cover the whole cycle")
    return Interval(length=out_len, start=(iv.start + iv.length - t // 2) % n)


def _proper_subintervals(iv: Interval, n: int):
    for ell in range(1, iv.length):
        for off in range(iv.length - ell + 1):
            yield Interval(length=ell, start=(iv.start + off) % n)


@dataclass(frozen=True, slots=True)
class ComplementCheck:
    holds: bool
    failures: tuple[str, ...]


def check_complement_closure(G: IntervalFamily, params: Params, validate: bool = True) -> ComplementCheck:
    """For a full consecutive family inside the band: no proper subinterval
    of any member's bar complement is a member, and the bar complement of
    every bottom-size member is itself a member.  Failures are bug traps
    reported with witnesses.

    Requires t >= 2: with t = 1 the bar complement overlaps its interval at
    one end only, and a proper subinterval keeping that end still meets the
    interval in t elements, so the closure claim genuinely fails (see the
    frozen counterexample in the test suite).
    """
    if (params.n + params.t) % 2:
        raise PreconditionError("complement closure check requires n + t even")
    if params.t < 2:
        raise PreconditionError(
            "complement closure needs t >= 2: the t = 1 bar complement overlaps "
            "only at one end and the no-proper-subinterval claim fails")
    n, t, k = G.n, params.t, params.k
    mid = (n + t) // 2
    if validate and not is_full_consecutive(G, k):
        raise PreconditionError("complement closure check needs a full consecutive family")
    lens = [iv.length for iv in G.members]
    m = mid - min(lens)
    if m < 0 or max(lens) > mid + k - 1 + m:
        raise PreconditionError("member sizes do not fit the band")
    if mid - m < t + 1:
        raise PreconditionError("band bottom too small for bar complements")
    members = set(G.members)
    failures = []
    for iv in G.members:
        bc = bar_complement(iv, n, t)
        for sub in _proper_subintervals(bc, n):
            if sub in members:
                failures.append(
                    f"proper subinterval {sub} of bar complement of {iv} is a member")
                break
        if iv.length == mid - m and bc not in members:
            failures.append(f"bar complement {bc} of bottom member {iv} is missing")
    return ComplementCheck(holds=not failures, failures=tuple(failures))


@dataclass(frozen=True, slots=True)
class GProfile:
    """Interval counts per size class: counts[i + m] intervals of size
    mid + i, for i = -m .. k+m-1."""

    n: int
    t: int
    k: int
    m: int
    counts: tuple[int, ...]

    def g(self, i: int) -> int:
        if not -self.m <= i <= self.k + self.m - 1:
            return 0
        return self.counts[i + self.m]

    def total(self) -> int:
        return sum(self.counts)


def g_profile(G: IntervalFamily, params: Params) -> GProfile:
    """Count members per size class centered at (n+t)/2."""
    if (params.n + params.t) % 2:
        raise PreconditionError("g-profile requires n + t even")
    n, t, k = G.n, params.t, params.k
    mid = (n + t) // 2
    lens = [iv.length for iv in G.members]
    if not lens:
        return GProfile(n=n, t=t, k=k, m=0, counts=(0,) * k)
    m = max(0, mid - min(lens))
    if min(lens) < mid - m or max(lens) > mid + k - 1 + m:
        raise PreconditionError("member sizes do not fit the band")
    counts = [0] * (k + 2 * m)
    for ell in lens:
        counts[ell - mid + m] += 1
    return GProfile(n=n, t=t, k=k, m=m, counts=tuple(counts))


@dataclass(frozen=True, slots=True)
class InequalityRecord:
    name: str
    j: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True, slots=True)
class InequalitiesCheck:
    records: tuple[InequalityRecord, ...]
    disjoint: bool

    @property
    def holds(self) -> bool:
        return self.disjoint and all(r.holds for r in self.records)


def _missing_side_families(G: IntervalFamily, mid: int, j: int):
    """Missing intervals of sizes mid..mid+j, split into those containing
    no member (can only sit below members) and those inside no member (can
    only sit above).  Containment is arc containment across all chains."""
    n = G.n
    members = set(G.members)
    spans = {h: (run[0].length, run[-1].length) for h, run in G.by_chain().items()}
    h1 = set()
    h2 = set()
    for h in range(n):
        for ell in range(mid, mid + j + 1):
            iv = Interval(length=ell, start=h)
            if iv in members:
                continue
            contains = False
            inside = False
            for h2start, (lo, hi) in spans.items():
                d = (h2start - h) % n
                if d + lo <= ell:
                    contains = True
                d_back = (h - h2start) % n
                if d_back + ell <= hi:
                    inside = True
                if contains and inside:
                    break
            if not contains:
                h1.add(iv)
            if not inside:
                h2.add(iv)
    return h1, h2


def check_count_inequalities(G: IntervalFamily, params: Params, validate: bool = True) -> InequalitiesCheck:
    """Evaluate the four counting inequalities a full consecutive family
    inside the band must satisfy, and verify the two missing-interval side
    families are disjoint.  Any failure is a bug trap."""
    n, t, k = G.n, params.t, params.k
    if (n + t) % 2:
        raise PreconditionError("count inequalities require n + t even")
    mid = (n + t) // 2
    if validate and not is_full_consecutive(G, k):
        raise PreconditionError("count inequalities need a full consecutive family")
    prof = g_profile(G, params)
    m = prof.m
    if m >= k:
        raise PreconditionError(f"count inequalities need m < k, got m={m}")
    g = prof.g
    records = []
    for j in range(0, m):
        if j < k - m:
            records.append(InequalityRecord("one", j, g(-j - 1) + g(j), n))
        else:
            lhs = sum(g(i) for i in range(-(j + 1), j + 1))
            rhs = (j + 1) * n - sum(g(-i) for i in range(k - j, m + 1))
            records.append(InequalityRecord("two", j, lhs, rhs))
    for j in range(1, m + 1):
        if j < k - m:
            lhs = sum(g(i) for i in range(-m, k - j + 1))
            rhs = (k - j + 1) * n - sum(g(-i) for i in range(j, m + 1))
            records.append(InequalityRecord("three", j, lhs, rhs))
    for j in range(1, m + 1):
        lhs = sum(g(i) for i in range(-m, k - 1 + j))
        rhs = k * n - sum(g(i) for i in range(-m, -j + 1))
        records.append(InequalityRecord("four", j, lhs, rhs))
    # materialize the missing-interval side families at every level the
    # counting inequalities draw on, and confirm they never overlap
    levels = {j for j in range(0, m) if j >= k - m}
    levels.update(k - j for j in range(1, m + 1) if j < k - m)
    disjoint = True
    for level in sorted(levels):
        h1, h2 = _missing_side_families(G, mid, level)
        if h1 & h2:
            disjoint = False
    return InequalitiesCheck(records=tuple(records), disjoint=disjoint)


@dataclass(frozen=True, slots=True)
class WeightBoundCheck:
    holds: bool
    total_weight: int
    bound: int


def check_weight_bound(G: IntervalFamily, params: Params) -> WeightBoundCheck:
    """Compare the family weight against n * sum of the k middle-layer
    binomials.  A violation is reported, not raised: below the (unknown)
    size threshold it is a legitimate finding."""
    n, t, k = G.n, params.t, params.k
    if (n + t) % 2:
        raise PreconditionError("weight bound requires n + t even")
    mid = (n + t) // 2
    bound = n * sum(math.comb(n, mid + i) for i in range(k))
    w = interval_weight(G)
    return WeightBoundCheck(holds=w <= bound, total_weight=w, bound=bound)


@dataclass(frozen=True, slots=True)
class AveragingCheck:
    holds: bool
    lhs: int
    rhs: int


def averaging_identity(fam: Family) -> AveragingCheck:
    """Sum of interval-restriction weights over all (n-1)! cyclic orders
    equals n! times the member count, exactly.

    Members of size 0 or n are never intervals and are excluded from both
    sides.  Full enumeration: n <= 7 only.
    """
    n = fam.n
    if n > 7:
        raise PreconditionError("averaging identity enumerates (n-1)! orders; need n <= 7")
    inner = [m for m in fam.members if 0 < m.bit_count() < n]
    lhs = 0
    for perm in all_cyclic_perms(n):
        res = restrict_to_cycle(Family(n, inner), perm)
        lhs += interval_weight(res.intervals)
    rhs = math.factorial(n) * len(inner)
    return AveragingCheck(holds=lhs == rhs, lhs=lhs, rhs=rhs)
