"""Cyclic polynomial multiplication in Z_p[X]/(X^N - 1).

The NTT route (forward, pointwise, inverse) must agree exactly with the
O(N^2) schoolbook convolution, which runs vectorized as the oracle.
"""

from __future__ import annotations

import numpy as np

from .errors import SizeMismatch
from .modmath import FieldParams, mod_mul_wide
from .twiddle import FORWARD, INVERSE, build_table
from .algorithms import intt, ntt

_SHIFT_INDEX_CACHE: dict[int, np.ndarray] = {}


def schoolbook_cyclic(a: list[int], b: list[int], p: int) -> list[int]:
    """c[k] = sum over i+j = k (mod N) of a[i]*b[j], reduced mod p."""
    n = len(a)
    if len(b) != n:
        raise SizeMismatch(f"operand lengths differ: {n} vs {len(b)}")
    a64 = np.asarray(a, dtype=np.uint64)
    b64 = np.asarray(b, dtype=np.uint64)
    cols = np.arange(n, dtype=np.int64)
    if n <= 1024:
        idx = _SHIFT_INDEX_CACHE.get(n)
        if idx is None:
            idx = (cols[:, None] - cols[None, :]) % n  # idx[k][i] = (k - i) mod n
            _SHIFT_INDEX_CACHE[n] = idx
        prods = (a64[None, :] * b64[idx]) % p
        return [int(v) for v in prods.sum(axis=1) % p]
    out = [0] * n
    block = max(1, (1 << 21) // n)
    for k0 in range(0, n, block):
        ks = np.arange(k0, min(k0 + block, n), dtype=np.int64)
        idx = (ks[:, None] - cols[None, :]) % n
        sums = ((a64[None, :] * b64[idx]) % p).sum(axis=1) % p
        for off, v in enumerate(sums):
            out[k0 + off] = int(v)
    return out


def pointwise_mul(a: list[int], b: list[int], p: int) -> list[int]:
    """Elementwise product mod p (evaluation-domain multiply)."""
    if len(a) != len(b):
        raise SizeMismatch(f"operand lengths differ: {len(a)} vs {len(b)}")
    return [mod_mul_wide(u, v, p) for u, v in zip(a, b)]


def cyclic_mul_ntt(
    a: list[int], b: list[int], params: FieldParams, variant: str = "dit"
) -> list[int]:
    """Multiply via the convolution theorem: intt(ntt(a) . ntt(b))."""
    n = len(a)
    if len(b) != n:
        raise SizeMismatch(f"operand lengths differ: {n} vs {len(b)}")
    fwd = build_table(params, n, FORWARD)
    inv = build_table(params, n, INVERSE)
    a_hat = ntt(a, fwd, variant)
    b_hat = ntt(b, fwd, variant)
    return intt(pointwise_mul(a_hat, b_hat, params.p), inv, variant)
