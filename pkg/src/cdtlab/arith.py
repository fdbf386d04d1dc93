"""Integer and real arithmetic substrate.

Primality, prime generation, multiplicative functions, Kronecker-style
symbols, modular square roots, and the logarithmic integral.  Everything
here is pure and reentrant; a PrimeCache is immutable after construction
and safe to share across threads or forked workers.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate

__all__ = [
    "PrimeCache",
    "is_prime",
    "primes_up_to",
    "kronecker",
    "sqrt_mod",
    "factorize",
    "mobius",
    "euler_phi",
    "tau",
    "divisors",
    "li",
]

# Deterministic Miller-Rabin witness set covering all n < 3.3 * 10^24,
# in particular every 64-bit integer (Sorenson-Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for nonnegative integers up to 64 bits."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
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


_CACHE_MAGIC = b"PCHE"
_CACHE_VERSION = 1


@dataclass(frozen=True)
class PrimeCache:
    """Bit-set of primality flags for 0..limit inclusive.

    Invariant: ``flags[n]`` is True exactly when n is prime.
    """

    limit: int
    flags: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.flags.setflags(write=False)

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.limit and bool(self.flags[n])

    def count(self) -> int:
        return int(np.count_nonzero(self.flags))

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.flags)

    def save(self, path) -> None:
        """Write the documented little-endian layout.

        Byte layout: 4-byte magic ``PCHE``, ``<I`` version, ``<Q`` limit,
        then the bit-set packed LSB-first (bit n of the stream set iff n
        is prime).
        """
        packed = np.packbits(self.flags, bitorder="little")
        with open(path, "wb") as fh:
            fh.write(_CACHE_MAGIC)
            fh.write(struct.pack("<IQ", _CACHE_VERSION, self.limit))
            fh.write(packed.tobytes())

    @classmethod
    def load(cls, path) -> "PrimeCache":
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != _CACHE_MAGIC:
                raise ValueError(f"bad prime cache magic {magic!r}")
            version, limit = struct.unpack("<IQ", fh.read(12))
            if version != _CACHE_VERSION:
                raise ValueError(f"unsupported prime cache version {version}")
            packed = np.frombuffer(fh.read(), dtype=np.uint8)
        flags = np.unpackbits(packed, bitorder="little")[: limit + 1].astype(bool)
        cache = cls(limit=limit, flags=flags)
        return cache


def primes_up_to(x: int, segment: int = 1 << 20) -> PrimeCache:
    """Segmented sieve of Eratosthenes producing a PrimeCache up to x."""
    if x < 2:
        raise ValueError("primes_up_to requires x >= 2")
    x = int(x)
    # ~1 byte per integer; refuse absurd requests before allocating.
    if x > 1 << 33:
        raise MemoryError(f"prime cache up to {x} exceeds the memory budget")
    root = math.isqrt(x)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p :: p] = False
    base_primes = np.flatnonzero(base)

    flags = np.zeros(x + 1, dtype=bool)
    flags[: root + 1] = base
    lo = root + 1
    while lo <= x:
        hi = min(lo + segment, x + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base_primes:
            p = int(p)
            start = ((lo + p - 1) // p) * p
            seg[start - lo :: p] = False
        flags[lo:hi] = seg
        lo = hi
    return PrimeCache(limit=x, flags=flags)


def _jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd positive m."""
    if m <= 0 or m % 2 == 0:
        raise ValueError("jacobi symbol needs odd positive lower argument")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def _symbol_at_2(D: int) -> int:
    if D % 2 == 0:
        return 0
    r = D % 8
    if r == 1:
        return 1
    if r == 5:
        return -1
    raise ValueError(
        f"symbol (D/2) undefined for D = {D}: discriminants satisfy D = 0, 1 (mod 4)"
    )


def kronecker(D: int, n: int) -> int:
    """Completely multiplicative symbol (D/n) for positive n.

    Agrees with the Legendre symbol at odd primes; at 2 it is 0 when
    2 | D, +1 when D = 1 (mod 8) and -1 when D = 5 (mod 8).  Values of D
    that are 3 (mod 4) are rejected when n is even, since they are not
    discriminants of quadratic forms.
    """
    if n <= 0:
        raise ValueError("kronecker requires positive n")
    v2 = 0
    while n % 2 == 0:
        n //= 2
        v2 += 1
    result = 1
    if v2:
        s2 = _symbol_at_2(D)
        if s2 == 0:
            return 0
        if v2 % 2 == 1:
            result = s2
    return result * _jacobi(D, n) if n > 1 else result


def sqrt_mod(a: int, p: int) -> int | None:
    """Canonical square root of a modulo an odd prime p, or None.

    Returns min(r, p - r) when a is a quadratic residue (0 for a = 0).
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"sqrt_mod requires an odd prime modulus, got {p}")
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    # Tonelli-Shanks.
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        out.append((n, 1))
    return out


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorize(n):
        out *= (p - 1) * p ** (e - 1)
    return out


def tau(n: int) -> int:
    out = 1
    for _, e in factorize(n):
        out *= e + 1
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=4096)
def li(x: float) -> float:
    """Logarithmic integral Li(x) = int_2^x dt/log t by adaptive quadrature.

    Lower limit fixed at 2; absolute error <= 1e-6 * max(1, Li(x)).
    """
    if x < 2:
        raise ValueError("li requires x >= 2")
    if x == 2:
        return 0.0
    value, _ = integrate.quad(lambda t: 1.0 / math.log(t), 2.0, x, limit=200)
    return value
