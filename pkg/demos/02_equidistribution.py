"""Primes split evenly among the ideal classes.

For each reduced form of discriminant D we count primes up to x that the
form represents, and compare against the common target Li(x)/h.
"""

from cdtlab import equidistribution_report

x = 1e6
for D in (-23, -47):
    rep = equidistribution_report(D, x)
    print(f"D = {D}, h = {rep['h']}, target Li(x)/h = {rep['expected']:.1f}")
    for row in rep["rows"]:
        print(
            f"  {tuple(row['form'])}: {row['count']:.1f} "
            f"(off by {row['rel_error']:.3%})"
        )
    print(f"  worst class: {rep['max_rel_error']:.3%}")
    print()
