"""Recovering primitive generators from a scrambled basis.

Run: python3 demos/04_friedrichs.py
"""
import random

from qbialg import CommutatorTable, UEAElement, friedrichs_primitivize, su2_standard
from qbialg import primitive_coproduct, random_scramble

names = ("J3", "J+", "J-")
table = CommutatorTable.from_bialgebra(su2_standard())

# Y3 = J3 + J3^2 and Y+- = J+- + J3^2 J+- have cocommutative coproducts
# but are not primitive
Y3 = UEAElement.generator(names, "J3") + UEAElement.monomial(names, (2, 0, 0))
print("Delta(Y3) =", primitive_coproduct(Y3).render())

basis = {
    "J3": Y3,
    "J+": UEAElement.generator(names, "J+") + UEAElement.monomial(names, (2, 1, 0)),
    "J-": UEAElement.generator(names, "J-") + UEAElement.monomial(names, (2, 0, 1)),
}
recovered, log = friedrichs_primitivize(basis, table, 4)
for step, i, poly in log.entries:
    print(f"step {step}: {names[i]} -= {poly.render()}")
print("recovered:", {k: v.render() for k, v in recovered.items()})

# random scrambles with degree <= 3 admixtures
for seed in range(3):
    scrambled = random_scramble(list(names), random.Random(seed))
    rec, log = friedrichs_primitivize(scrambled, table, 5)
    print(f"seed {seed}: X(J+) = {scrambled['J+'].render()}")
    print(f"        {len(log)} subtractions ->", {k: v.render() for k, v in rec.items()})
