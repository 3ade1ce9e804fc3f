# Two one-parameter families whose ratio mu/tau creeps upwards.
#
# Family A:  x^(2m+1) + x^m y^(m+1) + y^(2m)
# Family B:  x^(2m+1) + y^(2m+1) + x^(m+1) y^(m+1)
#
# For both, rho = mu/tau grows with m but stays below 4/3 on every member
# we can compute.

from fractions import Fraction

from curvesing.explorer import FamilyTemplate, parse_range, scan_family

families = {
    "A": FamilyTemplate("x^(2m+1)+x^m*y^(m+1)+y^(2m)"),
    "B": FamilyTemplate("x^(2m+1)+y^(2m+1)+x^(m+1)*y^(m+1)"),
}

for name, fam in families.items():
    res = scan_family(fam, parse_range("2..8"))
    print(f"family {name}")
    print("   m    mu   tau  rho        4/3 - rho")
    for e in res.entries:
        rho = Fraction(int(e.rho.numerator), int(e.rho.denominator))
        print(f"{e.key:4} {e.record['mu']:5} {e.record['tau']:5}  {str(rho):9}  {float(Fraction(4, 3) - rho):.4f}")
    s = res.summary
    print("strictly increasing:", s["strictly_increasing"], " all below 4/3:", s["all_below_4_3"])
    print()

# The closed forms behind the tables:
#   A: mu = 2m(2m-1), tau = 3m^2
#   B: mu = 4m^2,     tau = 4m^2 - (m-1)^2

for m in range(2, 9):
    a = Fraction(2 * m * (2 * m - 1), 3 * m * m)
    b = Fraction(4 * m * m, 4 * m * m - (m - 1) ** 2)
    print(m, a, b)
