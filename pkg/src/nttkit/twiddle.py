"""Root-of-unity tables with paired Shoup constants.

Tables are built once per (p, N, direction) and cached, so repeated plan
construction and benchmarking never pay for precomputation twice.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .errors import NotPowerOfTwo, SizeNotSupported
from .modmath import FieldParams, mod_mul_wide, mod_pow, shoup_precompute

FORWARD = "forward"
INVERSE = "inverse"


@dataclass(eq=False)
class TwiddleTable:
    """Powers of a primitive N-th root of unity and their Shoup high words.

    w_pow[i] = omega**i mod p for i in [0, N); indexing is always taken mod N.
    Inverse tables carry n_inv = N**-1 mod p (and its Shoup word) for the
    final scaling of the inverse transform.
    """

    params: FieldParams
    N: int
    direction: str
    w_pow: list[int] = field(repr=False)
    w_shoup: list[int] = field(repr=False)
    n_inv: int | None = None
    n_inv_shoup: int | None = None

    @property
    def omega(self) -> int:
        return self.w_pow[1] if self.N > 1 else 1


def root_of_unity(params: FieldParams, n: int) -> int:
    """Element of multiplicative order exactly n: g**((p-1)/n) mod p."""
    if n < 1 or n & (n - 1):
        raise NotPowerOfTwo(f"size {n} is not a power of two")
    if (params.p - 1) % n:
        raise SizeNotSupported(f"{n} does not divide p-1 = {params.p - 1}")
    omega = mod_pow(params.g, (params.p - 1) // n, params.p)
    # g primitive guarantees order exactly n; cheap paranoia for n >= 2:
    assert n == 1 or mod_pow(omega, n // 2, params.p) == params.p - 1
    return omega


_CACHE: dict[tuple, TwiddleTable] = {}
_CACHE_LOCK = threading.Lock()


def build_table(params: FieldParams, n: int, direction: str = FORWARD) -> TwiddleTable:
    """Build (or fetch from cache) the twiddle table for one transform size.

    The forward table uses omega = g**((p-1)/n); the inverse table uses
    omega**-1 and sets n_inv = n**-1 mod p via Fermat inversion.
    """
    if direction not in (FORWARD, INVERSE):
        raise ValueError(f"unknown direction {direction!r}")
    key = (params.p, params.g, params.w, n, direction)
    with _CACHE_LOCK:
        cached = _CACHE.get(key)
    if cached is not None:
        return cached

    p = params.p
    omega = root_of_unity(params, n)
    if direction == INVERSE:
        omega = mod_pow(omega, p - 2, p)

    w_pow = [1] * n
    for i in range(1, n):
        w_pow[i] = mod_mul_wide(w_pow[i - 1], omega, p)
    w_shoup = [shoup_precompute(v, params) for v in w_pow]

    n_inv = n_inv_shoup = None
    if direction == INVERSE:
        n_inv = mod_pow(n % p, p - 2, p)
        n_inv_shoup = shoup_precompute(n_inv, params)

    table = TwiddleTable(params, n, direction, w_pow, w_shoup, n_inv, n_inv_shoup)
    with _CACHE_LOCK:
        return _CACHE.setdefault(key, table)


def clear_cache() -> None:
    """Drop all cached tables (tests and memory-sensitive callers)."""
    with _CACHE_LOCK:
        _CACHE.clear()
