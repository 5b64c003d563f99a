"""Exact arithmetic in Z_p for odd primes p < 2**32.

Residues are plain Python ints in [0, p).  The optimized kernels here — the
branch-based add/sub and the Shoup multiplication by a constant with a
precomputed high word — are the ones the transform stages inline.
`mod_mul_wide` is the reference product used by oracles and precomputation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPowerOfTwo, NotPrime

# 3 * 2**30 + 1: admits power-of-two transform sizes up to 2**30 while
# keeping every residue in 32 bits.
DEFAULT_PRIME = 3221225473

# Witness set proving primality for every n < 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2**64."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division (n < 2**64-ish)."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def find_primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group of Z_p.

    Raises NotPrime when p fails the deterministic primality check.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1
    phi = p - 1
    factors = prime_factors(phi)
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g
    raise NotPrime(f"no generator found for {p}")  # unreachable for prime p


@dataclass(frozen=True)
class FieldParams:
    """Prime modulus p, a primitive root g, and the word width w.

    Intermediate products use 2w bits; residues and Shoup constants fit in
    w bits.
    """

    p: int
    g: int
    w: int = 32

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.p == 2 or self.p >= (1 << self.w):
            raise ValueError(f"p must be odd and fit in {self.w} bits")
        if not 2 <= self.g < self.p:
            raise ValueError("generator out of range")
        phi = self.p - 1
        for q in prime_factors(phi):
            if pow(self.g, phi // q, self.p) == 1:
                raise ValueError(f"{self.g} is not a primitive root of {self.p}")

    @classmethod
    def for_prime(cls, p: int, w: int = 32) -> "FieldParams":
        """Construct params for p, discovering the smallest primitive root."""
        return cls(p, find_primitive_root(p), w)


def mod_add(a: int, b: int, p: int) -> int:
    """(a + b) mod p via one compare and one conditional subtract."""
    assert 0 <= a < p and 0 <= b < p
    s = a + b
    return s - p if s >= p else s


def mod_sub(a: int, b: int, p: int) -> int:
    """(a - b) mod p via one conditional add."""
    assert 0 <= a < p and 0 <= b < p
    d = a - b
    return d + p if d < 0 else d


def mod_mul_wide(a: int, b: int, p: int) -> int:
    """(a * b) mod p with a double-width intermediate product."""
    return a * b % p


def shoup_precompute(tw: int, params: FieldParams) -> int:
    """High word floor(tw * 2**w / p) used by shoup_mul."""
    assert 0 <= tw < params.p
    return (tw << params.w) // params.p


def shoup_mul(x: int, tw: int, tw_h: int, params: FieldParams) -> int:
    """(x * tw) mod p using the precomputed high word tw_h of tw.

    Two double-width multiplies and one conditional subtraction; agrees with
    mod_mul_wide on every valid input pair.
    """
    # z lies in [0, 2p), which no longer fits w bits once p > 2**(w-1); keep
    # the full-width difference so the single correction stays exact.
    q = (x * tw_h) >> params.w
    z = x * tw - q * params.p
    return z - params.p if z >= params.p else z


def mod_pow(b: int, e: int, p: int) -> int:
    """b**e mod p by square-and-multiply."""
    assert 0 <= b < p and e >= 0
    result = 1 if p > 1 else 0
    base = b
    while e > 0:
        if e & 1:
            result = mod_mul_wide(result, base, p)
        base = mod_mul_wide(base, base, p)
        e >>= 1
    return result


def bit_reverse_index(i: int, log2n: int) -> int:
    """Reversal of the low log2n bits of i."""
    assert 0 <= i < (1 << log2n)
    r = 0
    for _ in range(log2n):
        r = (r << 1) | (i & 1)
        i >>= 1
    return r


def bit_reverse_permute(x: list[int]) -> list[int]:
    """New list with element i moved to bit_reverse_index(i); involutive."""
    n = len(x)
    if n == 0 or n & (n - 1):
        raise NotPowerOfTwo(f"length {n} is not a power of two")
    log2n = n.bit_length() - 1
    return [x[bit_reverse_index(i, log2n)] for i in range(n)]
