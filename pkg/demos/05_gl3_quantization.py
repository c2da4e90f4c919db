"""Beyond su(2): the first orders of the gl(3) quantization.

Takes about ten seconds.
Run: python3 demos/05_gl3_quantization.py
"""
import time

from qbialg import build_family, extract_delta, quantize

g = build_family("gl:3").physical
print("generators:", g.names)
print("delta(F12) =", {k: str(v) for k, v in g.delta("F12").items()})

t = time.perf_counter()
r = quantize(g, K=3)
print(f"quantized through z^3 in {time.perf_counter() - t:.1f}s")

print("Delta_2(F12) =", r.coproducts.order("F12", 2).render())
print("[F12, F21] =", r.commutators.bracket("F12", "F21", 3).render())
print("[F12, F23] =", r.commutators.bracket("F12", "F23", 3).render())

print("delta recovered from Delta_1:", extract_delta(r) == g.cocommutators)
for key, form in r.recognized.items():
    if form:
        print(f"  {key}: {form.render()}")
