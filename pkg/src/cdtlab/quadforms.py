"""Binary quadratic form arithmetic.

Reduction, class enumeration, composition, class numbers of orders,
induced forms, and lattice-point enumeration of represented values.
Only positive definite (negative discriminant) forms are supported.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .arith import factorize, is_prime, kronecker, sqrt_mod

__all__ = [
    "Form",
    "ClassList",
    "OrderData",
    "reduce_form",
    "class_representatives",
    "class_number",
    "stab_order",
    "compose",
    "is_fundamental",
    "class_number_order",
    "induced_form",
    "enumerate_represented",
    "represented_blocks",
    "prime_to_class",
]


@dataclass(frozen=True, order=True)
class Form:
    """The positive definite integral form a*u^2 + b*u*v + c*v^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def __call__(self, u: int, v: int) -> int:
        return self.a * u * u + self.b * u * v + self.c * v * v

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def check_positive_definite(self) -> None:
        if self.a <= 0 or self.discriminant >= 0:
            raise ValueError(f"form {tuple(self)} is not positive definite")


def reduce_form(f: Form) -> Form:
    """Unique reduced SL2-equivalent of f: |b| <= a <= c, with b >= 0
    whenever |b| = a or a = c.  Idempotent."""
    f = Form(*f) if not isinstance(f, Form) else f
    f.check_positive_definite()
    a, b, c = f.a, f.b, f.c
    D = f.discriminant
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b <= -a or b > a:
            # translate b into (-a, a]
            b = b % (2 * a)
            if b > a:
                b -= 2 * a
            c = (b * b - D) // (4 * a)
            continue
        break
    if b < 0 and (a == c or a == -b):
        b = -b
    return Form(a, b, c)


@dataclass(frozen=True)
class ClassList:
    """All reduced primitive forms of one negative discriminant."""

    D: int
    representatives: tuple[Form, ...]

    @property
    def h(self) -> int:
        return len(self.representatives)

    def index_of(self, f: Form) -> int:
        return self.representatives.index(reduce_form(f))

    def to_json(self) -> str:
        return json.dumps(
            {"D": self.D, "h": self.h, "forms": [list(f) for f in self.representatives]}
        )

    @classmethod
    def from_json(cls, text: str) -> "ClassList":
        data = json.loads(text)
        return cls(D=data["D"], representatives=tuple(Form(*f) for f in data["forms"]))


def _check_discriminant(D: int) -> None:
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative form discriminant")


@lru_cache(maxsize=None)
def class_representatives(D: int) -> ClassList:
    """Enumerate all reduced primitive forms of discriminant D < 0.

    Loops b = D (mod 2) with 0 <= b <= sqrt(|D|/3) and splits
    (b^2 - D)/4 = a*c with b <= a <= c, applying the reduction tie rules.
    """
    _check_discriminant(D)
    reps: list[Form] = []
    bmax = math.isqrt(-D // 3)
    for b in range(abs(D) % 2, bmax + 1, 2):
        m = (b * b - D) // 4
        a = np.arange(max(b, 1), math.isqrt(m) + 1, dtype=np.int64)
        a = a[m % a == 0]
        if a.size == 0:
            continue
        c = m // a
        prim = np.gcd(np.gcd(a, b), c) == 1
        for ai, ci in zip(a[prim].tolist(), c[prim].tolist()):
            reps.append(Form(ai, b, ci))
            if 0 < b < ai < ci:
                reps.append(Form(ai, -b, ci))
    return ClassList(D=D, representatives=tuple(sorted(reps)))


def class_number(D: int) -> int:
    return class_representatives(D).h


def stab_order(D: int) -> int:
    """Order of the SL2 stabilizer of a primitive form of discriminant D."""
    if D >= 0:
        raise ValueError("stab_order requires D < 0")
    if D == -3:
        return 6
    if D == -4:
        return 4
    return 2


@dataclass(frozen=True)
class OrderData:
    """The order of conductor d inside the maximal order of disc D0."""

    D0: int
    d: int

    @property
    def discriminant(self) -> int:
        return self.D0 * self.d * self.d

    @property
    def unit_order(self) -> int:
        return stab_order(self.discriminant)

    @property
    def unit_index(self) -> int:
        # [O^x : O_d^x]
        return stab_order(self.D0) // self.unit_order


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    g, p, _ = _extended_gcd(m1, m2)
    if (r2 - r1) % g != 0:
        raise ArithmeticError("incompatible congruences")
    lcm = m1 // g * m2
    return (r1 + (r2 - r1) // g * p % (m2 // g) * m1) % lcm


def _equivalent_with_coprime_lead(f: Form, m: int) -> Form:
    """Return a form SL2-equivalent to f whose leading coefficient is
    coprime to m.  A primitive form represents such values with (u,v)
    coprime and small."""
    for bound in (4, 8, 16, 32, 64):
        for u in range(-bound, bound + 1):
            for v in range(-bound, bound + 1):
                if math.gcd(u, v) != 1:
                    continue
                if math.gcd(f(u, v), m) == 1:
                    g, s, t = _extended_gcd(u, v)
                    if g < 0:
                        s, t = -s, -t
                    # matrix [[u, -t], [v, s]] has determinant u*s + v*t = 1
                    a2 = f(u, v)
                    b2 = 2 * f.a * u * -t + f.b * (u * s - t * v) + 2 * f.c * v * s
                    c2 = f(-t, s)
                    return Form(a2, b2, c2)
    raise ArithmeticError(f"no value of {tuple(f)} coprime to {m} found")


def compose(f1: Form, f2: Form) -> Form:
    """Reduced representative of the Gauss-composed class (Dirichlet
    composition via united forms).  Identity is the principal form."""
    if f1.discriminant != f2.discriminant:
        raise ValueError("compose requires equal discriminants")
    if not (f1.is_primitive and f2.is_primitive):
        raise ValueError("compose requires primitive forms")
    D = f1.discriminant
    g1 = reduce_form(f1)
    g2 = _equivalent_with_coprime_lead(f2, 2 * g1.a)
    a1, a2 = g1.a, g2.a
    # unite: B = b1 (mod 2*a1), B = b2 (mod 2*a2); both are = D (mod 2)
    B = _crt(g1.b, 2 * a1, g2.b, 2 * a2)
    A = a1 * a2
    C = (B * B - D) // (4 * A)
    return reduce_form(Form(A, B, C))


def principal_form(D: int) -> Form:
    _check_discriminant(D)
    if D % 4 == 0:
        return Form(1, 0, -D // 4)
    return Form(1, 1, (1 - D) // 4)


def inverse_form(f: Form) -> Form:
    return reduce_form(Form(f.a, -f.b, f.c))


def is_fundamental(D: int) -> bool:
    if D >= 0 or D % 4 not in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for _, e in factorize(-D))
    m = D // 4
    if m % 4 not in (-2, -3, 2, 3):  # m = 2,3 mod 4 up to sign convention
        return False
    return all(e == 1 for _, e in factorize(-m))


def class_number_order(D0: int, d: int) -> int:
    """h(D0 * d^2) from h(D0) by the conductor formula, in exact integer
    arithmetic:

        h(D0 d^2) = h(D0) * prod_{p^e || d} p^(e-1) * (p - (D0/p)) / [O^x : O_d^x]
    """
    if not is_fundamental(D0):
        raise ValueError(f"{D0} is not a fundamental discriminant")
    if d < 1:
        raise ValueError("conductor must be >= 1")
    num = class_number(D0)
    for p, e in factorize(d) if d > 1 else []:
        num *= p ** (e - 1) * (p - kronecker(D0, p))
    index = OrderData(D0, d).unit_index
    if num % index != 0:
        raise ArithmeticError("class number formula did not divide evenly")
    return num // index


def induced_form(f: Form, d1: int, d2: int) -> Form:
    """The form f(d1*s, d2*t); its discriminant is D*(d1*d2)^2."""
    return Form(f.a * d1 * d1, f.b * d1 * d2, f.c * d2 * d2)


def _u_bound(f: Form, x: float) -> int:
    return math.isqrt(int(4 * f.c * x / abs(f.discriminant))) + 1


def represented_blocks(
    f: Form,
    x: float,
    u_lo: int | None = None,
    u_hi: int | None = None,
    max_block: int = 4_000_000,
) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Yield numpy blocks (U, V, N) covering every integer pair with
    0 < f(u, v) <= x and u in [u_lo, u_hi], each pair exactly once.

    The u-range defaults to the full ellipse; disjoint u-ranges partition
    the solution set, which is what the parallel counters rely on.
    """
    f.check_positive_definite()
    if x < 1:
        return
    a, b, c = f.a, f.b, f.c
    D = f.discriminant
    U = _u_bound(f, x)
    lo = -U if u_lo is None else max(u_lo, -U)
    hi = U if u_hi is None else min(u_hi, U)
    if lo > hi:
        return
    # per-u row length is about 2*sqrt(x/c); chunk the u-range accordingly
    rows_per_block = max(1, int(max_block / (2 * math.sqrt(x / c) + 3)))
    for start in range(lo, hi + 1, rows_per_block):
        us = np.arange(start, min(start + rows_per_block, hi + 1), dtype=np.int64)
        disc = D * us * us + 4 * c * int(x)
        keep = disc >= 0
        us = us[keep]
        if us.size == 0:
            continue
        root = np.sqrt(disc[keep].astype(np.float64))
        vlo = np.ceil((-b * us - root) / (2 * c)).astype(np.int64) - 1
        vhi = np.floor((-b * us + root) / (2 * c)).astype(np.int64) + 1
        counts = np.maximum(vhi - vlo + 1, 0)
        total = int(counts.sum())
        if total == 0:
            continue
        Ub = np.repeat(us, counts)
        offsets = np.repeat(np.cumsum(counts) - counts, counts)
        Vb = np.repeat(vlo, counts) + (np.arange(total, dtype=np.int64) - offsets)
        N = a * Ub * Ub + b * Ub * Vb + c * Vb * Vb
        mask = (N >= 1) & (N <= int(x))
        yield Ub[mask], Vb[mask], N[mask]


def enumerate_represented(
    f: Form, x: float, visitor: Callable[[int, int, int], None]
) -> None:
    """Visit every integer pair (u, v) with 0 < f(u, v) <= x exactly once,
    u ascending."""
    for U, V, N in represented_blocks(f, x):
        for u, v, n in zip(U.tolist(), V.tolist(), N.tolist()):
            visitor(u, v, n)


def prime_to_class(p: int, D: int) -> Form | None:
    """The reduced class attached to a split odd prime p: a form (p, b, *)
    with b^2 = D (mod 4p).  Returns None when p is inert.

    Of the two roots b and 2p - b the smaller is taken; the other root
    yields the conjugate (inverse) class.
    """
    _check_discriminant(D)
    if p == 2 or D % p == 0:
        raise ValueError(f"prime_to_class requires an odd prime not dividing D, got {p}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if kronecker(D, p) == -1:
        return None
    r = sqrt_mod(D % p, p)
    assert r is not None
    # lift to b (mod 2p) with b = D (mod 2)
    b = r if r % 2 == abs(D) % 2 else p + r if (p + r) % 2 == abs(D) % 2 else p - r
    b %= 2 * p
    b = min(b, 2 * p - b)
    if b % 2 != abs(D) % 2:
        b = 2 * p - b
    return reduce_form(Form(p, b, (b * b - D) // (4 * p)))
