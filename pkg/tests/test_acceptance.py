"""Acceptance checks, one PASS/FAIL line each.

Run directly (``python3 tests/test_acceptance.py``) for the summary, or via
pytest where each criterion is its own test. Every comparison is exact.
"""
import random
import sys
import time
from math import factorial

import pytest

from qbialg.bialgebra import check_compatibility, check_jacobi
from qbialg.closedform import factor_coproduct, recognize_factor
from qbialg.double import (
    build_family, canonical_cocommutator_gl, check_pairing_invariance, is_self_dual,
    rescaled_double, restrict_trivial_t, su2_standard,
)
from qbialg.quantize import (
    _defect, coassoc_residual, extract_delta, friedrichs_primitivize, homomorphism_residual,
    quantize, random_scramble,
)
from qbialg.scalars import ONE, ZERO
from qbialg.uea import CommutatorTable, UEAElement, commutator, normal_order

NAMES = ("J3", "J+", "J-")
_CACHE = {}


def su2_q6():
    if "q6" not in _CACHE:
        t = time.perf_counter()
        _CACHE["q6"] = quantize(su2_standard(), K=6)
        _CACHE["q6_time"] = time.perf_counter() - t
    return _CACHE["q6"]


def _terms(r, i, k):
    return {pair: v for (_, pair), v in r.coproducts.orders[i][k].items()}


def _j3(k):
    return (k, 0, 0)


def _sinh_taylor(K):
    # sinh(z x)/z = sum_m z^(2m) x^(2m+1) / (2m+1)!
    return {(2 * m, _j3(2 * m + 1)): ONE / factorial(2 * m + 1) for m in range(K // 2 + 1)}


def criterion_1():
    r = su2_q6()
    jp = (0, 1, 0)
    ok = _terms(r, 1, 2) == {(_j3(2), jp): ONE / 8, (jp, _j3(2)): ONE / 8}
    ok &= _terms(r, 1, 3) == {(_j3(3), jp): ONE / 48, (jp, _j3(3)): -ONE / 48}
    for k in range(7):
        c = ONE / (factorial(k) * 2 ** k)
        want = {(_j3(k), jp): c, (jp, _j3(k)): c * (-1) ** k}
        ok &= _terms(r, 1, k) == want
    ok &= _CACHE["q6_time"] < 60
    return ok, f"Delta(J+) through z^6, {_CACHE['q6_time']:.2f}s"


def criterion_2():
    r = su2_q6()
    t = r.commutators
    ok = t.bracket("J3", "J+", 6) == UEAElement.generator(NAMES, "J+", K=6)
    ok &= t.bracket("J3", "J-", 6) == UEAElement.generator(NAMES, "J-", K=6, coeff=-1)
    ok &= t.bracket("J+", "J-", 6).data == _sinh_taylor(6)
    return ok, "[J3,J+-] = +-J+-, [J+,J-] = sinh(z J3)/z through z^6"


def criterion_3():
    r = su2_q6()
    f = factor_coproduct(r.coproducts, "J+")
    ok = bool(f) and f.left.pattern == "exp" and f.left.rate == ONE / 2 and f.argument == "J3"
    ok &= f.right.pattern == "exp" and f.right.rate == -ONE / 2
    coeffs = [r.commutators.bracket("J+", "J-", 6).coefficient(_j3(k + 1)).coefficient(k)
              for k in range(7)]
    g = recognize_factor(coeffs, argument="J3")
    ok &= bool(g) and g.pattern == "sinh_over_arg" and g.rate == ONE
    return ok, f"{f.render()}; [J+,J-] -> {g.pattern} rate {g.rate}"


def criterion_4():
    ok = True
    slow = 0.0
    for fam in ("su2+t1", "gl:2", "gl:3", "gl:4"):
        t = time.perf_counter()
        d = build_family(fam)
        ok &= bool(check_jacobi(d.full)) and bool(check_compatibility(d.full))
        ok &= bool(check_pairing_invariance(d)) and bool(is_self_dual(d))
        if fam.startswith("gl:"):
            n = int(fam[3:]) - 1
            ok &= d.physical.cocommutators == canonical_cocommutator_gl(n)
        elapsed = time.perf_counter() - t
        if fam == "gl:4":
            slow = elapsed
            ok &= elapsed < 10
    return ok, f"doubles valid and self-dual; gl:4 in {slow:.2f}s"


def criterion_5():
    g = restrict_trivial_t(build_family("su2+t1"), ["I"])
    f = g.brackets.coeff(g.index("J3"), g.index("J+"), g.index("J-"))
    ok = f == ONE and g == su2_standard()
    d = rescaled_double(build_family("gl:2"), "F12", 2)
    broken = not check_jacobi(d.full) or not is_self_dual(d)
    return ok and broken, f"f3_(+,-) = {f}; rescaled F12 breaks structure: {broken}"


def criterion_6():
    table = CommutatorTable.from_bialgebra(su2_standard())

    def el(*terms):
        out = UEAElement.zero(NAMES)
        for exps, c in terms:
            out = out + UEAElement.monomial(NAMES, exps, c)
        return out

    basis = {"J3": el((_j3(1), 1), (_j3(2), 1)),
             "J+": el(((0, 1, 0), 1), ((2, 1, 0), 1)),
             "J-": el(((0, 0, 1), 1), ((2, 0, 1), 1))}
    rec, _ = friedrichs_primitivize(basis, table, 4)
    ok = all(rec[n] == UEAElement.generator(NAMES, n) for n in NAMES)
    for seed in range(20):
        rec, _ = friedrichs_primitivize(random_scramble(list(NAMES), random.Random(seed)), table, 5)
        for x in rec.values():
            ok &= all(sum(map(sum, key[1])) > 5 for key in _defect(x, None, 3, 0))
    return ok, "cocommutative basis and 20 scrambles recovered"


def criterion_7():
    r = su2_q6()
    ok = r.residual_gauge_dims == [0] * 6
    builtins = [su2_standard()]
    for fam in ("su2+t1", "gl:2", "gl:3", "gl:4"):
        d = build_family(fam)
        builtins += [d.physical, d.full]
    for b in builtins:
        ok &= extract_delta(quantize(b, K=1)) == b.cocommutators
    return ok, f"gauge dims {r.residual_gauge_dims}; delta round trip on {len(builtins)} builtins"


def criterion_8():
    r = su2_q6()
    s, t = r.coproducts, r.commutators
    ok = True
    for k in range(7):
        ok &= all(v == 0 for v in coassoc_residual(s, k, t).values())
        ok &= all(v == 0 for v in homomorphism_residual(s, t, k).values())
    for a in NAMES:
        for b in NAMES:
            ok &= t.bracket(a, b, 6) == t.bracket(b, a, 6) * -1
            X = UEAElement.generator(NAMES, a, K=6)
            Y = UEAElement.generator(NAMES, b, K=6)
            ok &= commutator(X, Y, t, K=6) == t.bracket(a, b, 6)

    def sign(m):
        return -1 if (m[1] + m[2]) % 2 else 1

    for i, sg in ((0, 1), (1, -1), (2, -1)):
        for k in range(7):
            ok &= all(sign(a) * sign(b) == sg for (_, (a, b)) in s.orders[i][k])
    rng = random.Random(2024)
    for _ in range(50):
        word = [rng.choice(NAMES) for _ in range(rng.randint(1, 6))]
        ok &= normal_order(word, t, K=6) == normal_order(word, t, K=6, rng=random.Random(rng.random()))
    from qbialg.bialgebra import dualize
    for fam in ("su2+t1", "gl:2", "gl:3"):
        b = build_family(fam).full
        ok &= dualize(dualize(b), b.names) == b
    return ok, "coassociativity, homomorphism, antisymmetry, involution, confluence, dualize"


CRITERIA = [
    (1, "coproduct reproduction", criterion_1),
    (2, "deformed commutators", criterion_2),
    (3, "closed-form recognition", criterion_3),
    (4, "Drinfeld doubles", criterion_4),
    (5, "alpha fixing", criterion_5),
    (6, "Friedrichs recovery", criterion_6),
    (7, "uniqueness and delta round trip", criterion_7),
    (8, "property suites", criterion_8),
]


def _report(num, title, fn):
    ok, detail = fn()
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} ({detail})")
    return ok


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    with capsys.disabled():
        print()
        ok = _report(num, title, fn)
    assert ok


if __name__ == "__main__":
    results = [_report(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
