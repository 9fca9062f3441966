import itertools
import random

import pytest

from spernerlab.families import (
    Family,
    Params,
    PreconditionError,
    binomial,
    complement_family,
    elements_of,
    is_k_sperner,
    is_t_intersecting,
    longest_chain,
    mask_from,
    shade,
    shadow,
    verify_katona_shadow,
    weight,
)
from spernerlab.generators import random_uniform_t_intersecting


def pascal_binomial(n, r):
    """Independent oracle: Pascal triangle accumulation."""
    if r < 0 or r > n:
        return 0
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[r]


def brute_longest_chain(fam):
    """Independent oracle: DFS over all nested sequences."""
    ms = list(fam.members)
    best = 0
    def grow(last, depth):
        nonlocal best
        best = max(best, depth)
        for m in ms:
            if m != last and (m & last) == last:
                grow(m, depth + 1)
    for m in ms:
        grow(m, 1)
    return best


class TestBinomial:
    def test_direct(self):
        assert binomial(6, 4) == 15

    def test_out_of_range_is_zero(self):
        assert binomial(5, 7) == 0
        assert binomial(5, -1) == 0

    def test_large_value_against_pascal(self):
        v = binomial(100, 50)
        assert v == pascal_binomial(100, 50)
        assert v.bit_length() == 97

    def test_negative_n_rejected(self):
        with pytest.raises(PreconditionError):
            binomial(-1, 0)


class TestFamilyCanonical:
    def test_round_trip_identity(self):
        rng = random.Random(0)
        for _ in range(100):
            n = rng.randint(1, 10)
            masks = [rng.randrange(1 << n) for _ in range(rng.randint(0, 20))]
            fam = Family(n, masks)
            again = Family.from_json_dict(fam.to_json_dict())
            assert again == fam

    def test_sorted_by_size_then_value(self):
        fam = Family.from_sets(4, [[3], [1, 2, 3], [1], [2, 4]])
        assert fam.to_sets() == [[1], [3], [2, 4], [1, 2, 3]]

    def test_dedup(self):
        fam = Family.from_sets(4, [[1, 2], [2, 1], [1, 2]])
        assert len(fam) == 1

    def test_rejects_out_of_range_bits(self):
        with pytest.raises(PreconditionError):
            Family(3, [1 << 3])

    def test_rejects_large_n(self):
        with pytest.raises(PreconditionError):
            Family(25, [])

    def test_layer_slices(self):
        fam = Family.from_sets(5, [[1], [2], [1, 2], [1, 2, 3]])
        assert len(fam.layer(1)) == 2
        assert fam.profile() == {1: 2, 2: 1, 3: 1}

    def test_mask_helpers(self):
        assert elements_of(mask_from([3, 1], 5)) == [1, 3]


class TestParams:
    def test_parity_recomputed(self):
        assert Params(n=6, t=2, k=1).even_case
        assert not Params(n=6, t=3, k=1).even_case

    def test_validation(self):
        with pytest.raises(PreconditionError):
            Params(n=5, t=6, k=1)
        with pytest.raises(PreconditionError):
            Params(n=5, t=0, k=1)
        with pytest.raises(PreconditionError):
            Params(n=5, t=1, k=0)


class TestIntersecting:
    def test_share_one(self):
        fam = Family.from_sets(3, [[1, 2], [1, 3]])
        assert is_t_intersecting(fam, 1)
        assert not is_t_intersecting(fam, 2)

    def test_forced_by_size(self):
        fam = Family.from_sets(6, itertools.combinations(range(1, 7), 4))
        assert is_t_intersecting(fam, 2)

    def test_small_families_vacuous(self):
        assert is_t_intersecting(Family(4), 3)
        assert is_t_intersecting(Family.from_sets(4, [[1]]), 3)


class TestLongestChain:
    def test_explicit_chain(self):
        fam = Family.from_sets(3, [[1], [1, 2], [1, 2, 3]])
        assert longest_chain(fam) == 3

    def test_single_layer(self):
        fam = Family.from_sets(4, itertools.combinations(range(1, 5), 2))
        assert longest_chain(fam) == 1

    def test_mixed(self):
        fam = Family.from_sets(3, [[1], [2], [1, 2], [1, 2, 3]])
        assert longest_chain(fam) == 3

    def test_against_brute_force(self):
        rng = random.Random(1)
        for _ in range(60):
            n = rng.randint(1, 6)
            fam = Family(n, [rng.randrange(1 << n) for _ in range(rng.randint(0, 12))])
            assert longest_chain(fam) == brute_longest_chain(fam)

    def test_k_sperner(self):
        fam = Family.from_sets(3, [[1], [1, 2]])
        assert is_k_sperner(fam, 2) and not is_k_sperner(fam, 1)


class TestShadowShade:
    def test_shadow_example(self):
        fam = Family.from_sets(3, [[1, 2], [2, 3]])
        assert shadow(fam, 1).to_sets() == [[1], [2], [3]]

    def test_shade_example(self):
        fam = Family.from_sets(4, [[1, 2]])
        assert shade(fam, 3).to_sets() == [[1, 2, 3], [1, 2, 4]]

    def test_shadow_of_full_layer(self):
        fam = Family.from_sets(5, itertools.combinations(range(1, 6), 3))
        assert len(shadow(fam, 2)) == 10

    def test_monotone(self):
        rng = random.Random(2)
        for _ in range(40):
            n = rng.randint(2, 8)
            big = Family(n, [rng.randrange(1 << n) for _ in range(10)])
            small = Family(n, [m for m in big.members if rng.random() < 0.5])
            lvl = rng.randint(0, n)
            assert set(shadow(small, lvl).members) <= set(shadow(big, lvl).members)
            assert set(shade(small, lvl).members) <= set(shade(big, lvl).members)

    def test_uniform_identities(self):
        fam = Family.from_sets(5, itertools.combinations(range(1, 6), 3))
        assert shadow(fam, 3) == fam
        assert shade(fam, 5).to_sets() == [[1, 2, 3, 4, 5]]


class TestComplement:
    def test_example(self):
        fam = Family.from_sets(3, [[1, 2]])
        assert complement_family(fam).to_sets() == [[3]]

    def test_involution(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(1, 10)
            fam = Family(n, [rng.randrange(1 << n) for _ in range(rng.randint(0, 15))])
            assert complement_family(complement_family(fam)) == fam

    def test_duality_with_shadow(self):
        # complement of the level-l shadow is the level-(n-l) shade of the
        # complement family
        rng = random.Random(4)
        for _ in range(50):
            n = rng.randint(2, 12)
            fam = Family(n, [rng.randrange(1 << n) for _ in range(rng.randint(1, 10))])
            lvl = rng.randint(0, n)
            lhs = complement_family(shadow(fam, lvl))
            rhs = shade(complement_family(fam), n - lvl)
            assert lhs == rhs

    def test_uniform_intersecting_maps_to_intersecting(self):
        rng = random.Random(5)
        for _ in range(30):
            n = rng.randint(4, 10)
            r = rng.randint(2, n - 1)
            t = rng.randint(1, r)
            fam = random_uniform_t_intersecting(rng, n, r, t)
            assert is_t_intersecting(fam, t)
            comp = complement_family(fam)
            assert is_t_intersecting(comp, max(0, n + t - 2 * r))


class TestWeight:
    def test_empty(self):
        assert weight(Family(4)) == 0

    def test_one_layer(self):
        fam = Family.from_sets(4, itertools.combinations(range(1, 5), 2))
        assert weight(fam) == 36

    def test_one_per_size(self):
        fam = Family.from_sets(5, [list(range(1, i + 1)) for i in range(0, 6)])
        assert weight(fam) == 32


class TestKatonaShadow:
    def test_star(self):
        fam = Family.from_sets(5, [[1, x] for x in range(2, 6)])
        chk = verify_katona_shadow(fam, 2, 1, 1)
        assert chk.holds and chk.shadow_size == 5
        assert chk.required == 4

    def test_full_layer_equality(self):
        fam = Family.from_sets(6, itertools.combinations(range(1, 7), 4))
        chk = verify_katona_shadow(fam, 4, 2, 3)
        assert chk.holds and chk.shadow_size == 20 and chk.required == 20

    def test_single_set(self):
        fam = Family.from_sets(6, [[1, 2, 3, 4]])
        for lvl in range(2, 5):
            assert verify_katona_shadow(fam, 4, 2, lvl).holds

    def test_rejects_nonuniform(self):
        fam = Family.from_sets(4, [[1], [1, 2]])
        with pytest.raises(PreconditionError, match="uniform"):
            verify_katona_shadow(fam, 2, 1, 1)

    def test_rejects_non_intersecting(self):
        fam = Family.from_sets(4, [[1, 2], [3, 4]])
        with pytest.raises(PreconditionError, match="intersecting"):
            verify_katona_shadow(fam, 2, 1, 1)

    def test_rejects_bad_level(self):
        fam = Family.from_sets(4, [[1, 2]])
        with pytest.raises(PreconditionError, match="level"):
            verify_katona_shadow(fam, 2, 1, 0)

    def test_thousand_random_families(self):
        rng = random.Random(6)
        for _ in range(1000):
            n = rng.randint(3, 10)
            r = rng.randint(2, n - 1)
            t = rng.randint(1, r)
            fam = random_uniform_t_intersecting(rng, n, r, t, target=rng.randint(1, 14))
            lvl = rng.randint(max(0, r - t), r)
            assert verify_katona_shadow(fam, r, t, lvl).holds
