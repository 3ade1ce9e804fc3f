# A first look at the invariants of a plane curve germ.
#
# We start from the cusp y^2 = x^3 and work our way up to a germ that is
# not quasihomogeneous.

from curvesing import full_record, parse_polynomial
from curvesing.invariants import milnor, tjurina

cusp = parse_polynomial("y^2 - x^3")
print("cusp:", cusp)
print("mu  =", milnor(cusp))
print("tau =", tjurina(cusp))

# The full record bundles everything together with eight consistency checks.

rec = full_record(cusp)
print(rec.mu, rec.tau, rec.m, rec.r, rec.delta, rec.rho)
for c in rec.checks:
    print(f"  {c.name}  {c.status:5}  {c.detail}")

# mu = tau exactly for quasihomogeneous germs. Adding a term of higher
# weight to E12 breaks the symmetry and tau drops by one.

for text in ["x^3 + y^7", "x^3 + y^7 + x*y^5"]:
    r = full_record(parse_polynomial(text))
    print(f"{text:20} mu={r.mu:3} tau={r.tau:3} rho={r.rho}  quasihomogeneous={r.quasihomogeneous}")

# Germs with a non-isolated singularity are rejected.

for text in ["y^2*(x - y)", "x^2*y"]:
    try:
        full_record(parse_polynomial(text))
    except ValueError as exc:
        print(f"{text}: rejected, {exc}")
