import random

import pytest

from nttkit import (
    DEFAULT_PRIME,
    FieldParams,
    NotPowerOfTwo,
    NotPrime,
    bit_reverse_index,
    bit_reverse_permute,
    find_primitive_root,
    mod_add,
    mod_mul_wide,
    mod_pow,
    mod_sub,
    shoup_mul,
    shoup_precompute,
)


@pytest.mark.parametrize("a,b,p,want", [(10, 12, 17, 5), (0, 0, 17, 0), (16, 16, 17, 15)])
def test_mod_add_examples(a, b, p, want):
    assert mod_add(a, b, p) == want


@pytest.mark.parametrize("a,b,p,want", [(5, 9, 17, 13), (9, 9, 17, 0), (16, 0, 17, 16)])
def test_mod_sub_examples(a, b, p, want):
    assert mod_sub(a, b, p) == want


def test_mod_add_sub_property():
    """Random and boundary pairs agree with the generic remainder."""
    rng = random.Random(0)
    p = DEFAULT_PRIME
    pairs = [(rng.randrange(p), rng.randrange(p)) for _ in range(2000)]
    pairs += [(0, 0), (p - 1, p - 1), (p - 1, 0), (0, p - 1), (1, p - 1)]
    for a, b in pairs:
        s = mod_add(a, b, p)
        assert s == (a + b) % p and 0 <= s < p
        d = mod_sub(a, b, p)
        assert d == (a - b) % p and 0 <= d < p


@pytest.mark.parametrize(
    "a,b,p,want",
    [
        (13, 13, 17, 16),
        (0, 5, 17, 0),
        (65536, 65536, DEFAULT_PRIME, (1 << 32) % DEFAULT_PRIME),
    ],
)
def test_mod_mul_wide_examples(a, b, p, want):
    assert mod_mul_wide(a, b, p) == want


def test_shoup_precompute_examples(params17):
    assert shoup_precompute(0, params17) == 0
    assert shoup_precompute(1, params17) == 252645135
    assert 252645135 * 17 == (1 << 32) - 1
    assert shoup_precompute(16, params17) == 4042322160


def test_shoup_mul_identity_and_zero(params_big):
    p = params_big.p
    for tw in (0, 1, 12345, p - 1):
        tw_h = shoup_precompute(tw, params_big)
        assert shoup_mul(0, tw, tw_h, params_big) == 0
        assert shoup_mul(1, tw, tw_h, params_big) == tw


def test_shoup_mul_exhaustive_p17(params17):
    """All 289 pairs over [0,17)^2 match the wide reference product."""
    for tw in range(17):
        tw_h = shoup_precompute(tw, params17)
        for x in range(17):
            assert shoup_mul(x, tw, tw_h, params17) == mod_mul_wide(x, tw, 17)


def test_shoup_mul_random_default_prime(params_big):
    rng = random.Random(1)
    p = params_big.p
    for _ in range(20000):
        x = rng.randrange(p)
        tw = rng.randrange(p)
        tw_h = shoup_precompute(tw, params_big)
        assert shoup_mul(x, tw, tw_h, params_big) == mod_mul_wide(x, tw, p)


@pytest.mark.parametrize("b,e,p,want", [(3, 0, 17, 1), (3, 8, 17, 16)])
def test_mod_pow_examples(b, e, p, want):
    assert mod_pow(b, e, p) == want


def test_mod_pow_matches_builtin():
    rng = random.Random(2)
    p = DEFAULT_PRIME
    for _ in range(500):
        b = rng.randrange(p)
        e = rng.randrange(1 << 40)
        assert mod_pow(b, e, p) == pow(b, e, p)


def test_fermat(params_big, params17):
    for params in (params_big, params17):
        assert mod_pow(params.g, params.p - 1, params.p) == 1


def test_find_primitive_root_known_values():
    assert find_primitive_root(17) == 3
    assert find_primitive_root(7681) == 17
    assert find_primitive_root(DEFAULT_PRIME) == 5


def test_find_primitive_root_brute_force_order():
    """For small p, the returned g really has order p - 1 and is smallest."""
    for p in (17, 97, 257):
        g = find_primitive_root(p)
        seen = {pow(g, k, p) for k in range(1, p)}
        assert len(seen) == p - 1
        for cand in range(2, g):
            assert len({pow(cand, k, p) for k in range(1, p)}) < p - 1


def test_find_primitive_root_rejects_composite():
    with pytest.raises(NotPrime):
        find_primitive_root(3221225475)


def test_field_params_validation():
    with pytest.raises(NotPrime):
        FieldParams(15, 2)
    with pytest.raises(ValueError):
        FieldParams(17, 4)  # 4 has order 4, not 16
    params = FieldParams.for_prime(97)
    assert pow(params.g, 96, 97) == 1


@pytest.mark.parametrize("i,log2n,want", [(1, 3, 4), (0, 5, 0), (6, 3, 3)])
def test_bit_reverse_index(i, log2n, want):
    assert bit_reverse_index(i, log2n) == want


def test_bit_reverse_permute():
    assert bit_reverse_permute(["a", "b", "c", "d"]) == ["a", "c", "b", "d"]
    assert bit_reverse_permute([9]) == [9]
    with pytest.raises(NotPowerOfTwo):
        bit_reverse_permute([1, 2, 3])


@pytest.mark.parametrize("log2n", [1, 2, 5, 10, 16])
def test_bit_reverse_involution(log2n):
    x = list(range(1 << log2n))
    assert bit_reverse_permute(bit_reverse_permute(x)) == x
