# Puiseux branches, value semigroups and the delta invariant.

from curvesing import parse_polynomial
from curvesing.puiseux import (
    PuiseuxBranch, branch_values, delta_oracle, intersection_multiplicity,
    puiseux_branches, render_branch, semigroup_data,
)

# Reducible germs split into several branches. Branches over a number
# field stand for all their conjugates.

for text in ["y^2 - x^2", "x^2 + y^2", "(y - x^2)*(y^2 - x^3)", "x^3 - y^3", "x*(y^2 - x^3)"]:
    B = puiseux_branches(parse_polynomial(text))
    print(f"{text}   r = {B.r}")
    for b in B:
        print("   ", render_branch(b, 8).replace("\n", "\n    "))

# A branch with two characteristic exponents. Its semigroup <4, 6, 13>
# needs the term t^7 to see the generator 13.

f = parse_polynomial("(y^2 - x^3)^2 - 4*x^5*y - x^7")
(b,) = puiseux_branches(f)
print(render_branch(b, 10))
c, gaps = semigroup_data(b)
print("conductor", c, "gaps", gaps, "delta", len(gaps))

# Values are orders of pulled-back functions.

b = PuiseuxBranch.from_parametrization([0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0, 1, 1])
print(sorted(branch_values(b, 20)))
print("(y^2 - x^3) has order", intersection_multiplicity(b, parse_polynomial("y^2 - x^3")))

# delta of a reducible germ adds the branch deltas and the pairwise
# intersection numbers.

for text in ["x^3 - y^3", "x*y*(x - y)*(x + y)", "(y^2 - x^3)*(y^2 + x^3)"]:
    print(text, "delta =", delta_oracle(puiseux_branches(parse_polynomial(text))))
