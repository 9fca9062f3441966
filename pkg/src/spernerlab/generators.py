"""Seeded random instance generators for the property harnesses.

Every generator takes an explicit random.Random so a single seed pins the
whole harness.  The distributions aim at nontrivial cases, not uniformity:
valid set families grow around a random t-element core and are thinned
back to k-Sperner; full consecutive interval families pick per-chain
bottoms inside the band and repair pairwise intersections by raising
bottoms.
"""

from __future__ import annotations

import random

from .cycle import (
    Interval,
    IntervalFamily,
    arc_overlap,
    identity_perm,
    is_full_consecutive,
    is_sigma_ks_ti,
)
from .families import Family, Params, PreconditionError, is_t_intersecting, longest_chain


def _longest_chain_members(members: list[int]) -> list[int]:
    """One longest nested chain among the masks, as a list of masks."""
    ms = sorted(members, key=lambda m: (m.bit_count(), m))
    best = [1] * len(ms)
    back = [-1] * len(ms)
    top = 0
    for i, a in enumerate(ms):
        for j in range(i):
            b = ms[j]
            if b != a and (a & b) == b and best[j] + 1 > best[i]:
                best[i] = best[j] + 1
                back[i] = j
        if best[i] > best[top]:
            top = i
    out = []
    i = top
    while i != -1:
        out.append(ms[i])
        i = back[i]
    return out


def random_valid_family(rng: random.Random, n: int, t: int, k: int) -> Family:
    """A random t-intersecting k-Sperner family over [n].

    Supersets of a random t-element core are sampled inside a random size
    window, then members of over-long chains are deleted at random until no
    chain exceeds k.
    """
    if not 1 <= t <= n:
        raise PreconditionError("need 1 <= t <= n")
    core_elems = rng.sample(range(n), t)
    core = 0
    for e in core_elems:
        core |= 1 << e
    free = [i for i in range(n) if not core >> i & 1]
    lo = rng.randint(t, n)
    hi = rng.randint(lo, n)
    count = rng.randint(1, 24)
    members: set[int] = set()
    for _ in range(4 * count):
        if len(members) >= count:
            break
        size = rng.randint(lo, hi)
        m = core
        for b in rng.sample(free, size - t):
            m |= 1 << b
        members.add(m)
    pool = list(members)
    while True:
        chain = _longest_chain_members(pool)
        if len(chain) <= k:
            break
        pool.remove(rng.choice(chain))
    return Family(n, pool)


def random_uniform_t_intersecting(rng: random.Random, n: int, r: int, t: int,
                                  target: int = 12) -> Family:
    """An r-uniform t-intersecting family: a random core superset first,
    then random layer sets kept only when compatible with everything so
    far."""
    if not (0 < t <= r <= n):
        raise PreconditionError("need 0 < t <= r <= n")
    core_elems = rng.sample(range(n), t)
    rest = [i for i in range(n) if i not in core_elems]
    first = sum(1 << e for e in core_elems) | sum(1 << e for e in rng.sample(rest, r - t))
    members = [first]
    attempts = 30 * target
    while len(members) < target and attempts:
        attempts -= 1
        cand = sum(1 << e for e in rng.sample(range(n), r))
        if all((cand & m).bit_count() >= t for m in members):
            if cand not in members:
                members.append(cand)
    return Family(n, members)


def random_antichain_above_middle(rng: random.Random, n: int) -> Family:
    """A nonempty antichain whose minimum member size exceeds n/2."""
    floor_size = n // 2 + 1
    while True:
        lo = rng.randint(floor_size, n)
        members: list[int] = []
        for _ in range(rng.randint(1, 3 * n)):
            size = rng.randint(lo, n)
            cand = sum(1 << e for e in rng.sample(range(n), size))
            if all(not ((cand & m) == m or (cand & m) == cand) for m in members):
                members.append(cand)
        if members:
            return Family(n, members)


def random_inner_family(rng: random.Random, n: int, density: float = 0.35) -> Family:
    """A random family avoiding the empty and the full set."""
    members = [m for m in range(1, (1 << n) - 1) if rng.random() < density]
    return Family(n, members)


def random_full_consecutive(rng: random.Random, n: int, t: int, k: int, m: int,
                            max_tries: int = 200) -> IntervalFamily:
    """A full consecutive sigma-k-Sperner t-intersecting interval family
    with minimum size exactly (n+t)/2 - m and maximum within the band.

    Per-chain bottom lengths are sampled from [mid-m, mid+m] with one chain
    pinned at mid-m; bottoms are raised until all chain minima pairwise
    share at least t positions.  The runs [bottom, bottom+k-1] then form
    the family.
    """
    if (n + t) % 2:
        raise PreconditionError("full consecutive generator needs n + t even")
    if not 0 <= m <= k - 1:
        raise PreconditionError("need 0 <= m <= k-1")
    mid = (n + t) // 2
    if mid - m < 1 or mid + m + k - 1 > n - 1:
        raise PreconditionError("band does not fit inside [1, n-1]")
    perm = identity_perm(n)
    for _ in range(max_tries):
        pinned = rng.randrange(n)
        bottoms = [rng.randint(mid - m, mid + m) for _ in range(n)]
        bottoms[pinned] = mid - m
        ok = True
        for _ in range(4 * n * n):
            bad = None
            for h1 in range(n):
                iv1 = Interval(length=bottoms[h1], start=h1)
                for h2 in range(h1 + 1, n):
                    if arc_overlap(n, iv1, Interval(length=bottoms[h2], start=h2)) < t:
                        bad = (h1, h2)
                        break
                if bad:
                    break
            if bad is None:
                break
            h1, h2 = bad
            raisable = [h for h in bad if h != pinned and bottoms[h] < mid + m]
            if not raisable:
                ok = False
                break
            bottoms[rng.choice(raisable)] += 1
        else:
            ok = False
        if not ok or min(bottoms) != mid - m:
            continue
        members = [Interval(length=b + i, start=h)
                   for h, b in enumerate(bottoms) for i in range(k)]
        fam = IntervalFamily(perm, members)
        params = Params(n=n, t=t, k=k)
        if is_full_consecutive(fam, k) and is_sigma_ks_ti(fam, params):
            return fam
    raise PreconditionError(
        f"could not generate a full consecutive instance for n={n}, t={t}, k={k}, m={m}")


def random_sigma_ksti(rng: random.Random, n: int, t: int, k: int, m: int,
                      target: int | None = None) -> IntervalFamily:
    """A (generally non-consecutive, non-full) sigma-k-Sperner
    t-intersecting family with member sizes inside the band."""
    if (n + t) % 2:
        raise PreconditionError("band sampling needs n + t even")
    mid = (n + t) // 2
    if mid - m < 1 or mid + m + k - 1 > n - 1:
        raise PreconditionError("band does not fit inside [1, n-1]")
    perm = identity_perm(n)
    if target is None:
        target = rng.randint(1, k * n // 2)
    members: list[Interval] = []
    per_chain = [0] * n
    attempts = 40 * target
    while len(members) < target and attempts:
        attempts -= 1
        h = rng.randrange(n)
        if per_chain[h] >= k:
            continue
        cand = Interval(length=rng.randint(mid - m, mid + k - 1 + m), start=h)
        if cand in members:
            continue
        if all(arc_overlap(n, cand, iv) >= t for iv in members):
            members.append(cand)
            per_chain[h] += 1
    return IntervalFamily(perm, members)


def random_dominance_triple(rng: random.Random, length: int, cap: int = 30):
    """(a, b, d) satisfying the rearrangement-dominance hypotheses: d
    non-increasing, equal totals, every proper suffix of a at most b's."""
    d = sorted((rng.randint(0, cap) for _ in range(length)), reverse=True)
    b = [rng.randint(0, cap) for _ in range(length)]
    a = list(b)
    for _ in range(rng.randint(0, 3 * length)):
        src = rng.randrange(1, length) if length > 1 else 0
        dst = rng.randrange(0, src) if src else 0
        if a[src] == 0 or src == dst:
            continue
        delta = rng.randint(1, a[src])
        a[src] -= delta
        a[dst] += delta
    return a, b, d


def random_family_json(rng: random.Random, n: int, density: float = 0.3) -> dict:
    """A canonical family JSON dict, handy for CLI round-trip tests."""
    fam = random_inner_family(rng, n, density)
    return fam.to_json_dict()


def seeded(seed: int) -> random.Random:
    return random.Random(seed)


def validity_report(fam: Family, t: int, k: int) -> tuple[bool, bool]:
    return is_t_intersecting(fam, t), longest_chain(fam) <= k
