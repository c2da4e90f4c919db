"""Drinfeld doubles: su(2)+t1 and gl(N)+t_N, and why the normalization is forced.

Run: python3 demos/03_drinfeld_doubles.py
"""
from qbialg import (
    build_family, canonical_cocommutator_gl, check_jacobi, check_pairing_invariance,
    is_self_dual, rescaled_double, restrict_trivial_t,
)

d = build_family("su2+t1")
print("full generators:", d.full.names)
print("[Z1, Z2] =", d.full.bracket("Z1", "Z2"))
print("physical generators:", d.physical.names)
print("self-dual:", bool(is_self_dual(d)), " pairing invariant:", bool(check_pairing_invariance(d)))

# drop the central I and su(2) comes back with [J+, J-] = J3 exactly
g = restrict_trivial_t(d, ["I"])
print("[J+, J-] =", g.bracket("J+", "J-"))

for N in (2, 3, 4):
    d = build_family(f"gl:{N}")
    same = d.physical.cocommutators == canonical_cocommutator_gl(N - 1)
    print(f"gl:{N}: {d.n} + {d.n} generators, Jacobi {bool(check_jacobi(d.full))},"
          f" self-dual {bool(is_self_dual(d))}, canonical delta {same}")

# rescaling a root generator survives as a Lie algebra but not as a self-dual double
bad = rescaled_double(build_family("gl:2"), "F12", 2)
print("F12 -> 2 F12: Jacobi", bool(check_jacobi(bad.full)), " self-dual", bool(is_self_dual(bad)))
