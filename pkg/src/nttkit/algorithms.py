"""The seven NTT variants, the O(N^2) oracle, and the inverse transform.

Every variant consumes a residue vector (list of ints < p) plus a
TwiddleTable and returns the same transform output, element for element:

* ``naive_dft``  - direct evaluation of X[k] = sum x[n] * w**(nk); the oracle.
* ``ntt_dit``    - iterative decimation in time, bit-reverse first.
* ``ntt_dif``    - decimation in frequency, bit-reverse last.
* ``ntt_flat``   - DIT with the two inner loops flattened to one fixed-trip
                   loop of N/2 butterflies per stage.
* ``ntt_pease``  - constant-geometry out-of-place form: every stage reads
                   (2r, 2r+1) and writes (r, r+N/2), copying back between
                   stages.
* ``ntt_pease_nc`` - same dataflow as pease but the two buffers swap roles
                   after each stage instead of copying.
* ``ntt_stockham`` - self-sorting ping-pong form with no bit reversal.
* ``ntt_sixstep``  - N split as N1*N2: row transforms, twiddle corrections,
                   and transposes realized as strided gathers.

The in-place stage kernels mutate a working copy; the public operations are
pure.  Butterflies inline the Shoup multiplication from modmath.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadFactorization, NotPowerOfTwo, SizeMismatch, UnsupportedVariant
from .modmath import FieldParams, bit_reverse_permute, shoup_mul
from .twiddle import FORWARD, INVERSE, TwiddleTable, build_table

VARIANTS = ("naive", "dit", "dif", "flat", "pease", "pease_nc", "stockham", "sixstep")

# Rows per chunk so the naive oracle's temporaries stay around 16 MB.
_NAIVE_BLOCK_ELEMS = 1 << 21
_EXP_INDEX_CACHE: dict[int, np.ndarray] = {}


def _check_size(x, table):
    if len(x) != table.N:
        raise SizeMismatch(f"vector length {len(x)} != table size {table.N}")


def _log2(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise NotPowerOfTwo(f"{n} is not a power of two")
    return n.bit_length() - 1


def naive_dft(x: list[int], table: TwiddleTable) -> list[int]:
    """Direct O(N^2) evaluation; the correctness oracle for every variant.

    Products are reduced mod p before accumulation so row sums stay well
    below 2**64, letting the whole row run vectorized.
    """
    _check_size(x, table)
    n = table.N
    p = table.params.p
    w64 = np.asarray(table.w_pow, dtype=np.uint64)
    x64 = np.asarray(x, dtype=np.uint64)
    cols = np.arange(n, dtype=np.int64)
    if n <= 1024:
        idx = _EXP_INDEX_CACHE.get(n)
        if idx is None:
            idx = (cols[:, None] * cols[None, :]) % n
            _EXP_INDEX_CACHE[n] = idx
        sums = ((w64[idx] * x64[None, :]) % p).sum(axis=1) % p
        return [int(v) for v in sums]
    out = [0] * n
    block = max(1, _NAIVE_BLOCK_ELEMS // n)
    for k0 in range(0, n, block):
        ks = np.arange(k0, min(k0 + block, n), dtype=np.int64)
        idx = (ks[:, None] * cols[None, :]) % n
        sums = ((w64[idx] * x64[None, :]) % p).sum(axis=1) % p
        for off, v in enumerate(sums):
            out[k0 + off] = int(v)
    return out


def _dit_stages(work: list[int], table: TwiddleTable) -> None:
    """In-place Cooley-Tukey stages over bit-reversed data.

    Stage s (1..L) pairs (j+k, j+k+m/2) with span m = 2**s; the twiddle for
    butterfly k of a group is w**(k * N/m).
    """
    n = table.N
    p = table.params.p
    w = table.params.w
    log2n = _log2(n)
    w_pow = table.w_pow
    w_shoup = table.w_shoup
    for s in range(1, log2n + 1):
        m = 1 << s
        half = m >> 1
        stride = n >> s
        tws = w_pow[::stride][:half]
        twhs = w_shoup[::stride][:half]
        for j in range(0, n, m):
            for k in range(half):
                lo = j + k
                hi = lo + half
                t = work[hi]
                q = (t * twhs[k]) >> w
                f2 = t * tws[k] - q * p
                if f2 >= p:
                    f2 -= p
                f1 = work[lo]
                total = f1 + f2
                work[lo] = total - p if total >= p else total
                diff = f1 - f2
                work[hi] = diff + p if diff < 0 else diff


def ntt_dit(x: list[int], table: TwiddleTable) -> list[int]:
    """Decimation in time: bit-reverse the input, then L butterfly stages."""
    _check_size(x, table)
    work = bit_reverse_permute(list(x))
    _dit_stages(work, table)
    return work


def ntt_dif(x: list[int], table: TwiddleTable) -> list[int]:
    """Decimation in frequency: stages run L..1, bit-reverse at the end.

    The butterfly multiplies the difference on the way out:
    x[lo] <- f1 + f2, x[hi] <- tw * (f1 - f2).
    """
    _check_size(x, table)
    n = table.N
    p = table.params.p
    w = table.params.w
    log2n = _log2(n)
    w_pow = table.w_pow
    w_shoup = table.w_shoup
    work = list(x)
    for s in range(log2n, 0, -1):
        m = 1 << s
        half = m >> 1
        stride = n >> s
        tws = w_pow[::stride][:half]
        twhs = w_shoup[::stride][:half]
        for j in range(0, n, m):
            for k in range(half):
                lo = j + k
                hi = lo + half
                f1 = work[lo]
                f2 = work[hi]
                total = f1 + f2
                work[lo] = total - p if total >= p else total
                diff = f1 - f2
                if diff < 0:
                    diff += p
                q = (diff * twhs[k]) >> w
                z = diff * tws[k] - q * p
                work[hi] = z - p if z >= p else z
    return bit_reverse_permute(work)


def ntt_flat(x: list[int], table: TwiddleTable) -> list[int]:
    """DIT with group and butterfly indices recovered from one flat counter.

    Each stage is a single loop of exactly N/2 iterations (fixed trip count):
    k = r mod m/2 and j = (r div m/2) * m via shift/mask arithmetic.
    """
    _check_size(x, table)
    n = table.N
    p = table.params.p
    w = table.params.w
    log2n = _log2(n)
    w_pow = table.w_pow
    w_shoup = table.w_shoup
    work = bit_reverse_permute(list(x))
    half_n = n >> 1
    for s in range(1, log2n + 1):
        shift = s - 1
        kmask = (1 << shift) - 1
        stride = n >> s
        for r in range(half_n):
            k = r & kmask
            lo = ((r >> shift) << s) + k
            hi = lo + (1 << shift)
            e = stride * k
            t = work[hi]
            q = (t * w_shoup[e]) >> w
            f2 = t * w_pow[e] - q * p
            if f2 >= p:
                f2 -= p
            f1 = work[lo]
            total = f1 + f2
            work[lo] = total - p if total >= p else total
            diff = f1 - f2
            work[hi] = diff + p if diff < 0 else diff
    return work


def _stage_copy(dst: list[int], src: list[int]) -> None:
    """Inter-stage element copy used by the plain pease form."""
    dst[:] = src


def _pease_stage(src, dst, s, log2n, table) -> None:
    """One constant-geometry stage: read (2r, 2r+1), write (r, r+N/2).

    Butterfly r of stage s uses the twiddle exponent r with its low L-s bits
    cleared (equivalently (r >> (L-s)) * N/2**s), which is the diagonal the
    shuffle-based factorization induces over bit-reversed input.
    """
    p = table.params.p
    w = table.params.w
    w_pow = table.w_pow
    w_shoup = table.w_shoup
    half_n = 1 << (log2n - 1)
    low = log2n - s
    for r in range(half_n):
        e = (r >> low) << low
        t = src[2 * r + 1]
        q = (t * w_shoup[e]) >> w
        f2 = t * w_pow[e] - q * p
        if f2 >= p:
            f2 -= p
        f1 = src[2 * r]
        total = f1 + f2
        dst[r] = total - p if total >= p else total
        diff = f1 - f2
        dst[r + half_n] = diff + p if diff < 0 else diff


def ntt_pease(x: list[int], table: TwiddleTable) -> list[int]:
    """Constant-geometry transform with a copy back after every stage.

    The read addresses {2r, 2r+1} and write addresses {r, r+N/2} are the
    same in every stage; only the twiddle schedule changes.
    """
    _check_size(x, table)
    log2n = _log2(table.N)
    cur = bit_reverse_permute(list(x))
    nxt = [0] * table.N
    for s in range(1, log2n + 1):
        _pease_stage(cur, nxt, s, log2n, table)
        _stage_copy(cur, nxt)
    return cur


def ntt_pease_nc(x: list[int], table: TwiddleTable) -> list[int]:
    """Pease without the copies: the buffers swap roles after each stage.

    Odd stages run one direction, even stages the other, so the result lands
    in whichever buffer the final stage wrote; output is bit-identical to
    ntt_pease.
    """
    _check_size(x, table)
    log2n = _log2(table.N)
    buf_a = bit_reverse_permute(list(x))
    buf_b = [0] * table.N
    src, dst = buf_a, buf_b
    for s in range(1, log2n + 1):
        _pease_stage(src, dst, s, log2n, table)
        src, dst = dst, src
    return src


def ntt_stockham(x: list[int], table: TwiddleTable) -> list[int]:
    """Self-sorting transform: natural order in, natural order out.

    Ping-pongs between two buffers, folding the reordering into each stage
    so no bit-reversal pass ever runs.
    """
    _check_size(x, table)
    n = table.N
    p = table.params.p
    w = table.params.w
    log2n = _log2(n)
    w_pow = table.w_pow
    w_shoup = table.w_shoup
    cur = list(x)
    nxt = [0] * n
    half_n = n >> 1
    for s in range(log2n):
        span = 1 << s
        stride = n >> (s + 1)
        for j in range(span):
            e = j * stride
            tw = w_pow[e]
            twh = w_shoup[e]
            jin = 2 * j * stride
            jout = j * stride
            for i in range(stride):
                t = cur[jin + stride + i]
                q = (t * twh) >> w
                f2 = t * tw - q * p
                if f2 >= p:
                    f2 -= p
                f1 = cur[jin + i]
                total = f1 + f2
                nxt[jout + i] = total - p if total >= p else total
                diff = f1 - f2
                nxt[jout + i + half_n] = diff + p if diff < 0 else diff
        cur, nxt = nxt, cur
    return cur


@dataclass(eq=False)
class NttPlan:
    """Executable transform description: variant, size, direction, tables.

    Six-step plans additionally carry the factor split (n1, n2) and the two
    sub-tables; every other variant needs only the main table.
    """

    variant: str
    N: int
    direction: str
    table: TwiddleTable
    n1: int | None = None
    n2: int | None = None
    table_n1: TwiddleTable | None = None
    table_n2: TwiddleTable | None = None


def make_plan(
    params: FieldParams,
    variant: str,
    n: int,
    direction: str = FORWARD,
    n1: int | None = None,
    n2: int | None = None,
) -> NttPlan:
    """Build a plan, constructing (cached) twiddle tables as needed."""
    if variant not in VARIANTS:
        raise UnsupportedVariant(f"unknown variant {variant!r}")
    if n < 2 or n & (n - 1):
        raise NotPowerOfTwo(f"transform size {n} is not a power of two >= 2")
    table = build_table(params, n, direction)
    plan = NttPlan(variant, n, direction, table)
    if variant == "sixstep":
        log2n = _log2(n)
        if n1 is None and n2 is None:
            n1 = 1 << ((log2n + 1) // 2)
            n2 = n // n1
        elif n1 is None:
            n1 = n // n2
        elif n2 is None:
            n2 = n // n1
        if n1 * n2 != n or n1 & (n1 - 1) or n2 & (n2 - 1) or n1 < 1 or n2 < 1:
            raise BadFactorization(f"{n1} * {n2} != {n} (powers of two required)")
        plan.n1 = n1
        plan.n2 = n2
        plan.table_n1 = build_table(params, n1, direction)
        plan.table_n2 = build_table(params, n2, direction)
    return plan


def ntt_sixstep(x: list[int], plan: NttPlan) -> list[int]:
    """Split transform: N1 size-N2 rows, twiddle corrections, N2 size-N1 rows.

    The input is read as an N2 x N1 matrix; the three transposes of the
    textbook formulation appear here as the strided gathers/scatters.
    """
    if plan.variant != "sixstep" or plan.n1 is None:
        raise BadFactorization("plan is not a six-step plan")
    if len(x) != plan.N:
        raise SizeMismatch(f"vector length {len(x)} != plan size {plan.N}")
    n1, n2, n = plan.n1, plan.n2, plan.N
    params = plan.table.params
    w_pow = plan.table.w_pow
    w_shoup = plan.table.w_shoup

    rows = []
    for i in range(n1):
        row = list(x[i::n1])
        if n2 > 1:
            row = bit_reverse_permute(row)
            _dit_stages(row, plan.table_n2)
        for k2 in range(1, n2):
            e = (i * k2) % n
            row[k2] = shoup_mul(row[k2], w_pow[e], w_shoup[e], params)
        rows.append(row)

    out = [0] * n
    for k2 in range(n2):
        col = [rows[i][k2] for i in range(n1)]
        if n1 > 1:
            col = bit_reverse_permute(col)
            _dit_stages(col, plan.table_n1)
        for k1 in range(n1):
            out[n2 * k1 + k2] = col[k1]
    return out


_VARIANT_FUNCS = {
    "dit": ntt_dit,
    "dif": ntt_dif,
    "flat": ntt_flat,
    "pease": ntt_pease,
    "pease_nc": ntt_pease_nc,
    "stockham": ntt_stockham,
}


def ntt(x: list[int], table: TwiddleTable, variant: str = "dit") -> list[int]:
    """Forward transform of x by the chosen variant."""
    if variant == "naive":
        return naive_dft(x, table)
    if variant == "sixstep":
        plan = make_plan(table.params, "sixstep", table.N, table.direction)
        return ntt_sixstep(x, plan)
    func = _VARIANT_FUNCS.get(variant)
    if func is None:
        raise UnsupportedVariant(f"unknown variant {variant!r}")
    return func(x, table)


def intt(x: list[int], table: TwiddleTable, variant: str = "dit") -> list[int]:
    """Inverse transform: run the variant with inverse twiddles, scale by 1/N."""
    if table.direction != INVERSE:
        raise ValueError("intt requires an inverse-direction table")
    y = ntt(x, table, variant)
    params = table.params
    n_inv = table.n_inv
    n_inv_sh = table.n_inv_shoup
    return [shoup_mul(v, n_inv, n_inv_sh, params) for v in y]


def run_plan(plan: NttPlan, x: list[int]) -> list[int]:
    """Dispatch a plan: forward plans return the NTT, inverse plans the INTT."""
    if len(x) != plan.N:
        raise SizeMismatch(f"vector length {len(x)} != plan size {plan.N}")
    if plan.direction == FORWARD:
        if plan.variant == "sixstep":
            return ntt_sixstep(x, plan)
        return ntt(x, plan.table, plan.variant)
    return intt(x, plan.table, plan.variant)
