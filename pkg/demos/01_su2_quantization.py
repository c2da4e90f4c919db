"""Quantizing the standard su(2) bialgebra order by order.

Run: python3 demos/01_su2_quantization.py
"""
from qbialg import quantize, su2_standard, coassoc_residual, homomorphism_residual

g = su2_standard()
print("generators:", g.names)
print("[J+, J-] =", g.bracket("J+", "J-"))
print("delta(J+) =", g.delta("J+"))  # wedge pairs -> coefficient

r = quantize(g, K=6)

# each order of the coproduct of J+ is homogeneous of degree k + 1
for k in range(r.K + 1):
    print(f"Delta_{k}(J+) =", r.coproducts.order("J+", k).render())

# only [J+, J-] picks up corrections, and only at even orders
print("[J+, J-] =", r.commutators.bracket("J+", "J-", r.K).render())
print("[J3, J+] =", r.commutators.bracket("J3", "J+", r.K).render())

# nothing was left to choose at any order
print("leftover gauge freedom per order:", r.residual_gauge_dims)

# the axioms hold exactly, order by order
clean = all(v == 0 for k in range(r.K + 1)
            for v in list(coassoc_residual(r.coproducts, k, r.commutators).values())
            + list(homomorphism_residual(r.coproducts, r.commutators, k).values()))
print("coassociative and multiplicative through z^6:", clean)
