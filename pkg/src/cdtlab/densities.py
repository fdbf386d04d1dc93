"""Local densities for the coprimality sieve on form coordinates.

The densities g', g'' live at primes of the sieving modulus P, the Euler
product delta_f(P) collects them, and the parity casework decides when a
form represents no odd prime with both coordinates odd.  All arithmetic
is exact rational; floats appear only when a caller converts the final
product.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, kronecker
from .quadforms import Form

__all__ = [
    "SievingModulus",
    "g_prime",
    "g_dprime",
    "delta_f",
    "represents_odd_primes_obstructed",
]


@dataclass(frozen=True)
class SievingModulus:
    """A squarefree modulus P together with its sifting level z."""

    P: int
    z: float
    prime_factors: tuple[int, ...]

    @classmethod
    def from_int(cls, P: int, z: float | None = None) -> "SievingModulus":
        if P < 1:
            raise ValueError("sieving modulus must be positive")
        fac = factorize(P)
        if any(e > 1 for _, e in fac):
            warnings.warn(
                f"P = {P} is not squarefree; replaced by its radical",
                stacklevel=2,
            )
        primes = tuple(sorted(p for p, _ in fac))
        radical = 1
        for p in primes:
            radical *= p
        if z is None:
            z = float(max(primes, default=2))
        if any(p > z for p in primes):
            raise ValueError(f"prime factor of P exceeds the sifting level z = {z}")
        return cls(P=radical, z=z, prime_factors=primes)


def _local_factor(p: int, D: int) -> Fraction:
    return Fraction(1, p - kronecker(D, p))


def g_prime(p: int, f: Form, P: SievingModulus) -> Fraction:
    """Density of the condition p | u: 1/(p - (D/p)) when p | P and
    p does not divide c, else 0."""
    if p not in P.prime_factors or f.c % p == 0:
        return Fraction(0)
    return _local_factor(p, f.discriminant)


def g_dprime(p: int, f: Form, P: SievingModulus) -> Fraction:
    """Density of the condition p | v; symmetric to g_prime with a in
    place of c."""
    if p not in P.prime_factors or f.a % p == 0:
        return Fraction(0)
    return _local_factor(p, f.discriminant)


def delta_f(f: Form, P: SievingModulus) -> Fraction:
    """Euler product over p | P of
    1 - (2 - [p|a] - [p|c]) / (p - (D/p)); always >= 0."""
    if not f.is_primitive:
        raise ValueError("delta_f requires a primitive form")
    D = f.discriminant
    out = Fraction(1)
    for p in P.prime_factors:
        missing = 2 - (f.a % p == 0) - (f.c % p == 0)
        out *= 1 - Fraction(missing, p - kronecker(D, p))
    assert out >= 0
    return out


def represents_odd_primes_obstructed(f: Form, P: SievingModulus) -> bool:
    """True exactly when 2 | P and parity forces the restricted sum empty:
    either D = 1 (mod 8) with a + b + c even, or 2 | D with a, c both odd.
    In these cases g'(2) + g''(2) = 1 and delta_f(P) = 0."""
    if not f.is_primitive:
        raise ValueError("obstruction test requires a primitive form")
    if 2 not in P.prime_factors:
        return False
    D = f.discriminant
    if D % 8 == 1 and (f.a + f.b + f.c) % 2 == 0:
        return True
    if D % 2 == 0 and f.a % 2 == 1 and f.c % 2 == 1:
        return True
    return False
