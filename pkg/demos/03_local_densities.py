"""Local coordinate densities and the obstruction test.

g'(p) and g''(p) measure how often a coordinate divisible by p can still
yield a prime form value coprime to P.  Their product over p | P gives
delta_f(P); when it vanishes the sifted count must be identically zero.
"""

from cdtlab import Form, SievingModulus, delta_f, g_dprime, g_prime
from cdtlab.densities import represents_odd_primes_obstructed

f = Form(1, 0, 1)
P = SievingModulus.from_int(15015)  # 3*5*7*11*13
print(f"form {tuple(f)}, P = {P.P}")
for p in P.prime_factors:
    print(f"  p = {p:2d}: g' = {g_prime(p, f, P)}, g'' = {g_dprime(p, f, P)}")
print("delta_f(P) =", delta_f(f, P))
print()

# 2 | P forces u^2 + v^2 even for the surviving residues, so no odd prime
P2 = SievingModulus.from_int(30)
print(f"P = {P2.P}: delta_f = {delta_f(f, P2)},",
      "obstructed" if represents_odd_primes_obstructed(f, P2) else "open")
