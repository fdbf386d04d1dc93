"""Beta-sieve weights, their composition, and the inversion identity.

The truncated Moebius weights lambda_d are exact rationals; composing two
sieves against a pair of densities can be done divisor-by-divisor or via
the inverted double sum, and the two agree exactly.
"""

from fractions import Fraction

from cdtlab import (
    DensityPair,
    SieveSpec,
    beta_sieve_weights,
    composition_bounds_check,
    invert_composition,
    reduced_composition,
)

support = (3, 5, 7)
spec = SieveSpec(z=8.0, R=1e10, kind="upper", support=support)
w = beta_sieve_weights(spec)
print(f"upper sieve, z = {spec.z}, R = {spec.R:.0e}, s = {spec.s:.2f}")
print("lambda:", dict(sorted(w.lam.items())))
print()

dens = DensityPair(
    {p: Fraction(1, p + 1) for p in support},
    {p: Fraction(1, p + 2) for p in support},
)
direct = reduced_composition(w, w, dens)
inverted = invert_composition(w, w, dens)
print("composition, direct  :", direct)
print("composition, inverted:", inverted)
print("identical:", direct == inverted)
print()

# the two-sided bounds need a much longer sieve (s above the kappa threshold)
support = (2, 3, 5, 7, 11, 13)
dens = DensityPair(
    {p: Fraction(1, p + 1) for p in support},
    {p: Fraction(1, p + 2) for p in support},
)
mk = lambda kind: SieveSpec(z=14.0, R=14.0**27, kind=kind, support=support, K_const=5.0)
rep = composition_bounds_check(mk("lower"), mk("upper"), dens)
print(f"lower/upper composition bounds at s = {mk('upper').s:.0f}: ok = {rep.ok}")
