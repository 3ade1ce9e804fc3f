# Differential forms pulled back to an irreducible branch.
#
# The pulled-back holomorphic forms miss finitely many orders. Their
# number is tau - delta, and it equals delta exactly when mu = tau.

from curvesing import parse_polynomial
from curvesing.invariants import full_record
from curvesing.omega import omega_span, pol_report
from curvesing.puiseux import puiseux_branches

for text in ["y^2 - x^3", "y^3 - x^4", "x^5 + x^2*y^3 + y^4", "x^3 + y^7 + x*y^5", "x^4 + y^5 + x^2*y^3"]:
    f = parse_polynomial(text)
    rec = full_record(f)
    (b,) = puiseux_branches(f)
    V = omega_span(b, 30)
    missing = [k for k in range(31) if k not in V.orders]
    print(f"{text:22} tau={rec.tau:3} delta={rec.delta:3} missing orders={missing}")

# The pulled-back Jacobian ideal is the form span multiplied by a series of
# order 2*delta. Only on monomial branches is that series a pure power of t.

for text in ["y^3 - x^4", "x^5 + x^2*y^3 + y^4"]:
    rep = pol_report(parse_polynomial(text))
    print(text, "generator form:", rep.generator_form, " literal t^(2 delta):", rep.shift_form,
          " codim J =", rep.jacobian_codim)
