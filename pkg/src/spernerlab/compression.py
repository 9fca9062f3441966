"""Size-band normalization of t-intersecting k-Sperner families.

Two rewriting passes, each of which never shrinks the family and preserves
both defining properties:

* up_compress lifts the bottom layer through its shades until every member
  has size at least ceil((n+t)/2) - (k-1);
* down_shift peels the family into at most k antichains and replaces each
  antichain's oversized tail by its shadow at a per-antichain threshold.

normalize composes the two, landing all member sizes in the band
[ceil((n+t)/2) - m, ceil((n+t)/2) + k - 1 + m] for some 0 <= m <= k-1.
Counting facts that the underlying arguments guarantee are checked at run
time; a failure raises InvariantViolation (a bug trap, never a valid
outcome).
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import (
    Family,
    InvariantViolation,
    Params,
    PreconditionError,
    is_k_sperner,
    is_t_intersecting,
    longest_chain,
    shade,
    shadow,
)


@dataclass(frozen=True, slots=True)
class NormalizationReport:
    """What a normalization pass did.

    m is the attained band half-width (ceil((n+t)/2) minus the final
    minimum size, clamped at 0), c the down-shift parameter actually
    applied, steps a trace of (operation, size before, size after), and
    band the final (min size, max size) or None for an empty family.
    """

    m: int
    c: int
    steps: tuple[tuple[str, int, int], ...]
    band: tuple[int, int] | None


def _validate(fam: Family, params: Params, who: str):
    if fam.n != params.n:
        raise PreconditionError(f"{who}: family over [{fam.n}] but params.n={params.n}")
    if not is_t_intersecting(fam, params.t):
        raise PreconditionError(f"{who}: family is not {params.t}-intersecting")
    if not is_k_sperner(fam, params.k):
        raise PreconditionError(f"{who}: family has a chain longer than k={params.k}")


def shade_expansion_holds(fam: Family, params: Params, i: int) -> bool:
    """Check |shade_{i+1}(layer_i)| >= |layer_i| for a t-intersecting family.

    Guaranteed whenever i <= floor((n+t-1)/2); a False return would expose
    a bug, not a legitimate outcome.
    """
    if i > (params.n + params.t - 1) // 2:
        raise PreconditionError(f"shade expansion needs i <= floor((n+t-1)/2), got i={i}")
    if not is_t_intersecting(fam, params.t):
        raise PreconditionError("shade expansion requires a t-intersecting family")
    layer = Family(fam.n, fam.layer(i))
    return len(shade(layer, i + 1)) >= len(layer)


def up_compress(fam: Family, params: Params, validate: bool = True) -> tuple[Family, NormalizationReport]:
    """Lift all members to size >= ceil((n+t)/2) - (k-1) without losing
    cardinality or either defining property.

    One round replaces the bottom layer L_i by its (i+1)-shade and cascades
    the displaced copies upward (shade of the overlap with the next layer,
    and so on) until the overlap dies out, which happens within k levels.
    Rounds repeat until the floor is reached.
    """
    if validate:
        _validate(fam, params, "up_compress")
    n, k = params.n, params.k
    target = params.half_up - (k - 1)
    steps: list[tuple[str, int, int]] = []
    cur = fam
    rounds = 0
    while len(cur) and cur.min_size() < target:
        rounds += 1
        if rounds > n + 1:
            raise InvariantViolation("up_compress failed to terminate")
        i = cur.min_size()
        # cascade: H_i = bottom layer; H_{j+1} = shade(H_j) meet layer j+1
        new_masks = set(m for m in cur.members if m.bit_count() != i)
        h = set(cur.layer(i))
        j = i
        while h:
            if j >= i + k:
                raise InvariantViolation(
                    "up_compress cascade ran past k levels: input had a chain longer than k")
            lifted = shade(Family(n, h), j + 1)
            new_masks.update(lifted.members)
            nxt_layer = set(cur.layer(j + 1))
            h = set(lifted.members) & nxt_layer
            j += 1
        nxt = Family(n, new_masks)
        if len(nxt) < len(cur):
            raise InvariantViolation(
                f"up_compress round at level {i} shrank the family "
                f"({len(cur)} -> {len(nxt)}): shade expansion failed")
        steps.append((f"lift_level_{i}", len(cur), len(nxt)))
        cur = nxt
    band = (cur.min_size(), cur.max_size()) if len(cur) else None
    m = max(0, params.half_up - band[0]) if band else 0
    return cur, NormalizationReport(m=m, c=0, steps=tuple(steps), band=band)


def antichain_shadow_holds(fam: Family, j: int) -> bool:
    """Check |shadow_j(fam)| >= |fam| for an antichain living above the
    middle, floor(n/2) <= j <= min size.

    Double counting guarantees this; False is a bug trap.
    """
    if len(fam) == 0:
        return True
    if longest_chain(fam) > 1:
        raise PreconditionError("shadow expansion requires an antichain")
    mn = fam.min_size()
    if 2 * mn <= fam.n:
        raise PreconditionError("antichain must have minimum size > n/2")
    if not fam.n // 2 <= j <= mn:
        raise PreconditionError(f"need floor(n/2) <= j <= {mn}, got j={j}")
    return len(shadow(fam, j)) >= len(fam)


def _peel_antichains(fam: Family, k: int) -> list[list[int]]:
    """Partition members into at most k antichains by repeatedly removing
    the minimal sets."""
    remaining = list(fam.members)
    layers: list[list[int]] = []
    while remaining:
        if len(layers) == k:
            raise InvariantViolation(
                "peeling needed more than k antichains: input had a chain longer than k")
        minimal = []
        rest = []
        for m in remaining:
            if any(o != m and (m & o) == o for o in remaining):
                rest.append(m)
            else:
                minimal.append(m)
        layers.append(minimal)
        remaining = rest
    return layers


def down_shift(fam: Family, params: Params, validate: bool = True) -> tuple[Family, NormalizationReport]:
    """Pull oversized members down so the maximum size lands below
    ceil((n+t)/2) + c + k - 1, where c is the deficiency of the minimum
    size below ceil((n+t)/2) (clamped at 0 when the family already sits
    above the middle).

    Members are peeled into antichains; in the j-th antichain everything
    above the threshold ceil((n+t)/2) + c + j - 1 is replaced by its shadow
    at exactly that threshold.  Cardinality never drops and no set is
    created twice; either failure is a bug trap.
    """
    if validate:
        _validate(fam, params, "down_shift")
    if len(fam) == 0:
        return fam, NormalizationReport(m=0, c=0, steps=(), band=None)
    mid = params.half_up
    # The literal parameter may be negative for families living entirely
    # above the middle; thresholds below the middle would not keep the
    # family t-intersecting, so clamp at 0 (see design notes).
    c = max(0, mid - fam.min_size())
    layers = _peel_antichains(fam, params.k)
    pieces: list[set[int]] = []
    steps: list[tuple[str, int, int]] = []
    for idx, members in enumerate(layers, start=1):
        threshold = mid + c + idx - 1
        keep = [m for m in members if m.bit_count() <= threshold]
        high = [m for m in members if m.bit_count() > threshold]
        if high:
            dropped = shadow(Family(fam.n, high), threshold)
            piece = set(keep) | set(dropped.members)
            if len(piece) < len(members):
                raise InvariantViolation(
                    f"down_shift antichain {idx} shrank ({len(members)} -> {len(piece)})")
            steps.append((f"shift_antichain_{idx}_to_{threshold}", len(members), len(piece)))
        else:
            piece = set(keep)
        pieces.append(piece)
    total = sum(len(p) for p in pieces)
    merged: set[int] = set()
    for p in pieces:
        merged |= p
    if len(merged) != total:
        raise InvariantViolation("down_shift produced a duplicate set across antichains")
    out = Family(fam.n, merged)
    if len(out) < len(fam):
        raise InvariantViolation(f"down_shift shrank the family ({len(fam)} -> {len(out)})")
    band = (out.min_size(), out.max_size())
    return out, NormalizationReport(m=max(0, mid - band[0]), c=c, steps=tuple(steps), band=band)


def normalize(fam: Family, params: Params, validate: bool = True) -> tuple[Family, NormalizationReport]:
    """up_compress then down_shift: land every member size in
    [ceil((n+t)/2) - m, ceil((n+t)/2) + k - 1 + m] with 0 <= m <= k-1,
    never losing cardinality."""
    lifted, up_rep = up_compress(fam, params, validate=validate)
    shifted, down_rep = down_shift(lifted, params, validate=False)
    steps = up_rep.steps + down_rep.steps
    if len(shifted) == 0:
        return shifted, NormalizationReport(m=0, c=down_rep.c, steps=steps, band=None)
    mid = params.half_up
    m = mid - shifted.min_size()
    band = (shifted.min_size(), shifted.max_size())
    if not 0 <= m <= params.k - 1:
        raise InvariantViolation(f"normalize landed outside the band: m={m}, k={params.k}")
    if band[1] > mid + params.k - 1 + m:
        raise InvariantViolation(
            f"normalize max size {band[1]} exceeds band top {mid + params.k - 1 + m}")
    if len(shifted) < len(fam):
        raise InvariantViolation("normalize shrank the family")
    return shifted, NormalizationReport(m=m, c=down_rep.c, steps=steps, band=band)
