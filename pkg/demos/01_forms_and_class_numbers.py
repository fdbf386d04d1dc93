"""Reduction, class numbers, and the conductor formula.

Every positive definite form is equivalent to a unique reduced one; the
reduced forms of a fixed discriminant are the class group elements.
"""

from cdtlab import Form, class_number, class_number_order, class_representatives, reduce_form

f = Form(94, 61, 10)
print(f"{tuple(f)} has discriminant {f.discriminant}")
print("reduced:", tuple(reduce_form(f)))
print()

for D in (-23, -47, -71):
    cl = class_representatives(D)
    print(f"D = {D}: h = {cl.h}, classes {[tuple(g) for g in cl.representatives]}")
print()

# class numbers of non-maximal orders come from h(D0) and local factors
for d in range(1, 7):
    direct = class_number(-23 * d * d)
    formula = class_number_order(-23, d)
    print(f"conductor {d}: h(-23*{d}^2) = {direct} (formula gives {formula})")
