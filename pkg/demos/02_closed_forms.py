"""Resumming the su(2) series: exp factors and sinh(z J3)/z.

Run: python3 demos/02_closed_forms.py
"""
from qbialg import factor_coproduct, quantize, recognize_factor, su2_standard
from qbialg.scalars import ONE, series_eval_pattern

r = quantize(su2_standard(), K=6)

f = factor_coproduct(r.coproducts, "J+")
print("Delta(J+) =", f.render())
print("  left factor:", f.left.to_dict())

for key, form in r.recognized.items():
    print(f"{key:10s}", form.render() if form else "unknown")

# recognition is exact or nothing: perturb one coefficient and it gives up
s = series_eval_pattern("cosh", ONE, 6)
coeffs = [s.coefficient(k) for k in range(7)]
print("cosh(z) ->", recognize_factor(coeffs).render("x"))
coeffs[4] = coeffs[4] + ONE / 10 ** 6
print("perturbed ->", recognize_factor(coeffs))
