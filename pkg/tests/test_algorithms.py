import random

import pytest

from nttkit import (
    BadFactorization,
    SizeMismatch,
    intt,
    make_plan,
    naive_dft,
    ntt,
    ntt_pease,
    ntt_pease_nc,
    ntt_sixstep,
    ntt_stockham,
    run_plan,
)
from nttkit import algorithms
from nttkit.twiddle import FORWARD, INVERSE, build_table

VARIANTS7 = ("dit", "dif", "flat", "pease", "pease_nc", "stockham", "sixstep")


def rand_vec(rng, n, p):
    return [rng.randrange(p) for _ in range(n)]


def test_naive_examples(params17):
    table = build_table(params17, 8, FORWARD)
    assert naive_dft([0] * 8, table) == [0] * 8
    assert naive_dft([1] + [0] * 7, table) == [1] * 8
    assert naive_dft([3] * 8, table) == [24 % 17] + [0] * 7


@pytest.mark.parametrize("variant", VARIANTS7)
def test_two_point_butterfly(params17, variant):
    table = build_table(params17, 2, FORWARD)
    a, b = 11, 5
    assert ntt([a, b], table, variant) == [(a + b) % 17, (a - b) % 17]


@pytest.mark.parametrize("variant", VARIANTS7)
def test_delta_gives_all_ones(params_big, variant):
    n = 16
    table = build_table(params_big, n, FORWARD)
    assert ntt([1] + [0] * (n - 1), table, variant) == [1] * n


@pytest.mark.parametrize("variant", VARIANTS7)
def test_constant_vector(params_big, variant):
    n = 32
    c = 123456
    table = build_table(params_big, n, FORWARD)
    want = [(n * c) % params_big.p] + [0] * (n - 1)
    assert ntt([c] * n, table, variant) == want


@pytest.mark.parametrize("variant", VARIANTS7)
@pytest.mark.parametrize("log2n", [1, 2, 3, 4, 5, 6, 7, 8])
def test_oracle_equivalence(params_big, variant, log2n):
    rng = random.Random(log2n)
    n = 1 << log2n
    table = build_table(params_big, n, FORWARD)
    for _ in range(5):
        x = rand_vec(rng, n, params_big.p)
        assert ntt(x, table, variant) == naive_dft(x, table)


@pytest.mark.parametrize("variant", VARIANTS7)
def test_oracle_equivalence_p17(params17, variant):
    rng = random.Random(5)
    for log2n in (1, 2, 3, 4):
        n = 1 << log2n
        table = build_table(params17, n, FORWARD)
        for _ in range(10):
            x = rand_vec(rng, n, 17)
            assert ntt(x, table, variant) == naive_dft(x, table)


def test_dif_equals_dit(params_big):
    rng = random.Random(6)
    table = build_table(params_big, 64, FORWARD)
    for _ in range(10):
        x = rand_vec(rng, 64, params_big.p)
        assert ntt(x, table, "dif") == ntt(x, table, "dit")


def test_linearity(params_big):
    """NTT(a*x + b*y) == a*NTT(x) + b*NTT(y), independent of the oracle."""
    rng = random.Random(7)
    p = params_big.p
    n = 128
    table = build_table(params_big, n, FORWARD)
    for variant in VARIANTS7:
        x = rand_vec(rng, n, p)
        y = rand_vec(rng, n, p)
        a, b = rng.randrange(p), rng.randrange(p)
        combo = [(a * u + b * v) % p for u, v in zip(x, y)]
        lhs = ntt(combo, table, variant)
        fx = ntt(x, table, variant)
        fy = ntt(y, table, variant)
        rhs = [(a * u + b * v) % p for u, v in zip(fx, fy)]
        assert lhs == rhs


def test_pease_nc_bit_identical(params_big):
    rng = random.Random(8)
    for log2n in (1, 3, 6, 9):
        n = 1 << log2n
        table = build_table(params_big, n, FORWARD)
        for _ in range(5):
            x = rand_vec(rng, n, params_big.p)
            assert ntt_pease_nc(x, table) == ntt_pease(x, table)


def test_pease_copies_and_pease_nc_zero_copies(params_big, monkeypatch):
    calls = []
    real = algorithms._stage_copy
    monkeypatch.setattr(algorithms, "_stage_copy", lambda d, s: (calls.append(1), real(d, s)))
    table = build_table(params_big, 64, FORWARD)
    x = rand_vec(random.Random(9), 64, params_big.p)
    ntt_pease(x, table)
    assert len(calls) == 6  # one copy back per stage
    calls.clear()
    ntt_pease_nc(x, table)
    assert calls == []


def test_stockham_never_bit_reverses(params_big, monkeypatch):
    def boom(_):
        raise AssertionError("stockham must not bit-reverse")

    monkeypatch.setattr(algorithms, "bit_reverse_permute", boom)
    table = build_table(params_big, 32, FORWARD)
    x = rand_vec(random.Random(10), 32, params_big.p)
    got = ntt_stockham(x, table)
    monkeypatch.undo()
    assert got == naive_dft(x, table)
    with pytest.raises(AssertionError):
        monkeypatch.setattr(algorithms, "bit_reverse_permute", boom)
        algorithms.ntt_dit(x, table)


def test_stockham_natural_order_constant(params_big):
    n = 16
    table = build_table(params_big, n, FORWARD)
    c = 7
    assert ntt_stockham([c] * n, table) == [n * c] + [0] * (n - 1)


@pytest.mark.parametrize("n", [16, 64, 256, 1024, 4096])
def test_sixstep_oracle(params_big, n):
    rng = random.Random(n)
    plan = make_plan(params_big, "sixstep", n)
    x = rand_vec(rng, n, params_big.p)
    table = build_table(params_big, n, FORWARD)
    assert ntt_sixstep(x, plan) == naive_dft(x, table)


def test_sixstep_n4_matches_naive(params17):
    plan = make_plan(params17, "sixstep", 4, n1=2, n2=2)
    table = build_table(params17, 4, FORWARD)
    x = [1, 2, 3, 4]
    assert ntt_sixstep(x, plan) == naive_dft(x, table)


def test_sixstep_degenerate_n1_equals_subtransform(params_big):
    n = 16
    plan = make_plan(params_big, "sixstep", n, n1=1, n2=n)
    table = build_table(params_big, n, FORWARD)
    x = rand_vec(random.Random(11), n, params_big.p)
    assert ntt_sixstep(x, plan) == ntt(x, table, "dit")


def test_sixstep_bad_factorization(params_big):
    with pytest.raises(BadFactorization):
        make_plan(params_big, "sixstep", 8, n1=4, n2=4)


@pytest.mark.parametrize("variant", VARIANTS7)
def test_round_trip(params_big, variant):
    rng = random.Random(12)
    for log2n in (1, 4, 7):
        n = 1 << log2n
        fwd = build_table(params_big, n, FORWARD)
        inv = build_table(params_big, n, INVERSE)
        x = rand_vec(rng, n, params_big.p)
        assert intt(ntt(x, fwd, variant), inv, variant) == x


def test_intt_examples(params_big):
    n = 8
    inv = build_table(params_big, n, INVERSE)
    assert intt([1] * n, inv) == [1] + [0] * (n - 1)
    assert intt([n] + [0] * (n - 1), inv) == [1] * n


def test_intt_requires_inverse_table(params_big):
    fwd = build_table(params_big, 8, FORWARD)
    with pytest.raises(ValueError):
        intt([0] * 8, fwd)


def test_run_plan_dispatch(params_big):
    rng = random.Random(13)
    n = 64
    x = rand_vec(rng, n, params_big.p)
    table = build_table(params_big, n, FORWARD)
    assert run_plan(make_plan(params_big, "naive", n), x) == naive_dft(x, table)
    assert run_plan(make_plan(params_big, "dit", n), x) == run_plan(
        make_plan(params_big, "stockham", n), x
    )
    fwd_plan = make_plan(params_big, "pease", n)
    inv_plan = make_plan(params_big, "pease", n, INVERSE)
    assert run_plan(inv_plan, run_plan(fwd_plan, x)) == x


def test_size_mismatch(params_big):
    table = build_table(params_big, 8, FORWARD)
    with pytest.raises(SizeMismatch):
        naive_dft([0] * 4, table)
    with pytest.raises(SizeMismatch):
        ntt([0] * 4, table, "dit")
    with pytest.raises(SizeMismatch):
        run_plan(make_plan(params_big, "dit", 8), [0] * 16)
