import random
from math import factorial

from fractions import Fraction

import pytest

from qbialg.bialgebra import CocommutatorTensor, LieBialgebra
from qbialg.double import build_family, su2_standard
from qbialg.quantize import (
    InvalidInput, _defect, coassoc_residual, extract_delta, friedrichs_primitivize,
    gauge_basis, gauge_pivot, homomorphism_residual, quantize, random_scramble,
)
from qbialg.scalars import ONE, ZERO, parse_scalar
from qbialg.uea import (
    CommutatorTable, TensorElement, UEAElement, commutator, primitive_coproduct,
)

NAMES = ("J3", "J+", "J-")


def mono(*exps):
    return tuple(exps)


def J3(k):
    return mono(k, 0, 0)


JP = mono(0, 1, 0)
JM = mono(0, 0, 1)


def expected_delta_plus(k):
    c = ONE / (factorial(k) * 2 ** k)
    if k == 0:
        return {(J3(0), JP): ONE, (JP, J3(0)): ONE}
    return {(J3(k), JP): c, (JP, J3(k)): c * (-1) ** k}


def order_terms(r, gen, k):
    return {pair: v for (_, pair), v in r.coproducts.orders[NAMES.index(gen)][k].items()}


def test_su2_second_and_third_order(su2_q6):
    e = ONE / 8
    assert order_terms(su2_q6, "J+", 2) == {(J3(2), JP): e, (JP, J3(2)): e}
    f = ONE / 48
    assert order_terms(su2_q6, "J+", 3) == {(J3(3), JP): f, (JP, J3(3)): -f}


@pytest.mark.parametrize("k", range(7))
def test_su2_general_pattern(su2_q6, k):
    assert order_terms(su2_q6, "J+", k) == expected_delta_plus(k)


def test_su2_lower_mirrors_raise(su2_q6):
    for k in range(7):
        want = {(a if a != JP else JM, b if b != JP else JM): v
                for (a, b), v in expected_delta_plus(k).items()}
        assert order_terms(su2_q6, "J-", k) == want


def taylor_sinh_over_z(K):
    # (exp(zx) - exp(-zx)) / 2z, expanded term by term: {k: (degree in x, coefficient)}
    out = {}
    for n in range(K + 2):
        c = (Fraction(1, factorial(n)) - Fraction((-1) ** n, factorial(n))) / 2
        if c:
            out[n - 1] = (n, c)
    return out


def test_su2_commutators(su2_q6):
    table = su2_q6.commutators
    assert table.bracket("J3", "J+", 6) == UEAElement.generator(NAMES, "J+", K=6)
    assert table.bracket("J3", "J-", 6) == UEAElement.generator(NAMES, "J-", K=6, coeff=-1)
    got = table.bracket("J+", "J-", 6)
    want = {}
    for k, (deg, c) in taylor_sinh_over_z(6).items():
        want[(k, J3(deg))] = parse_scalar(f"{c.numerator}/{c.denominator}")
    assert got.data == want
    assert want[(2, J3(3))] == ONE / 6 and want[(4, J3(5))] == ONE / 120


def test_su2_gauge_dims(su2_q6):
    assert su2_q6.residual_gauge_dims == [0] * 6


def test_residuals_vanish(su2_q6):
    for k in range(7):
        assert all(v == 0 for v in coassoc_residual(su2_q6.coproducts, k, su2_q6.commutators).values())
        assert all(v == 0 for v in homomorphism_residual(su2_q6.coproducts, su2_q6.commutators, k).values())


def test_j3_stays_primitive(su2_q6):
    for k in range(1, 7):
        assert not su2_q6.coproducts.orders[0][k]


def test_involution_equivariance(su2_q6):
    # J+- -> -J+- is a bialgebra automorphism; the quantization must commute with it
    def sign(m):
        return -1 if (m[1] + m[2]) % 2 else 1

    for i, s in ((0, 1), (1, -1), (2, -1)):
        for k in range(7):
            for (kk, (a, b)), v in su2_q6.coproducts.orders[i][k].items():
                assert sign(a) * sign(b) == s
    for (i, j), entry in su2_q6.commutators.entries.items():
        s = (1 if i == 0 else -1) * (1 if j == 0 else -1)
        for (k, m), v in entry.items():
            assert sign(m) == s


def test_bracket_matches_normal_ordering(su2_q6):
    table = su2_q6.commutators
    for a in NAMES:
        for b in NAMES:
            X = UEAElement.generator(NAMES, a, K=6)
            Y = UEAElement.generator(NAMES, b, K=6)
            assert commutator(X, Y, table, K=6) == table.bracket(a, b, 6)
            assert table.bracket(a, b, 6) == table.bracket(b, a, 6) * -1


def test_missing_second_order_breaks_coassociativity(su2_q6):
    series = su2_q6.coproducts.truncated(1).extended(2, {})
    res = coassoc_residual(series, 2, su2_q6.commutators)
    assert res["J+"] != 0


def test_order_zero(su2):
    r = quantize(su2, K=0)
    assert r.residual_gauge_dims == []
    assert r.commutators.bracket("J+", "J-", 0) == UEAElement.generator(NAMES, "J3")
    assert order_terms(r, "J+", 0) == expected_delta_plus(0)


def test_zero_cocommutator_short_circuits(su2):
    r = quantize(su2.with_cocommutators(CocommutatorTensor(3)), K=3)
    for i in range(3):
        assert all(not r.coproducts.orders[i][k] for k in range(1, 4))
    assert r.commutators.bracket("J+", "J-", 3) == UEAElement.generator(NAMES, "J3", K=3)


def test_invalid_input(su2):
    bad = su2.with_cocommutators(CocommutatorTensor(3, {0: {(1, 2): ONE}}))
    with pytest.raises(InvalidInput):
        quantize(bad, K=2)


BUILTINS = [("su2", "base")] + [(f, w) for f in ("su2+t1", "gl:2", "gl:3", "gl:4")
                                 for w in ("physical", "full")]


@pytest.mark.parametrize("family,which", BUILTINS)
def test_delta_round_trip(family, which):
    b = su2_standard() if family == "su2" else getattr(build_family(family), which)
    assert extract_delta(quantize(b, K=1)) == b.cocommutators


@pytest.fixture(scope="module")
def gl3():
    return quantize(build_family("gl:3").physical, K=3)


@pytest.mark.parametrize("family,K", [("su2+t1", 4), ("gl:2", 4)])
def test_family_residuals(family, K):
    r = quantize(build_family(family).physical, K=K)
    for k in range(K + 1):
        assert all(v == 0 for v in coassoc_residual(r.coproducts, k, r.commutators).values())
        assert all(v == 0 for v in homomorphism_residual(r.coproducts, r.commutators, k).values())


def test_gl3_residuals(gl3):
    for k in range(4):
        assert all(v == 0 for v in coassoc_residual(gl3.coproducts, k, gl3.commutators).values())
        assert all(v == 0 for v in homomorphism_residual(gl3.coproducts, gl3.commutators, k).values())
    assert extract_delta(gl3) == gl3.bialgebra.cocommutators


def test_gl3_table_is_confluent(gl3):
    from qbialg.uea import normal_order
    names = gl3.names
    rng = random.Random(11)
    for _ in range(15):
        word = [rng.choice(names) for _ in range(4)]
        a = normal_order(word, gl3.commutators, K=3)
        b = normal_order(word, gl3.commutators, K=3, rng=random.Random(rng.random()))
        assert a == b


def test_gauge_basis_counts():
    assert len(gauge_basis(1, NAMES).elements) == 6
    assert len(gauge_basis(2, NAMES).elements) == 10
    with pytest.raises(ValueError):
        gauge_basis(0, NAMES)


def test_gauge_basis_square():
    g = gauge_basis(1, ["H"]).elements
    assert len(g) == 1
    # the mixed part 2 H (x) H, normalized by the row reduction
    assert g[0].data == {(0, ((1,), (1,))): ONE}


def test_gauge_pivot_prefers_single_generator_splits():
    M = (2, 1, 0)
    m1, m2 = gauge_pivot(M)
    assert sorted([sum(m1), sum(m2)]) == [1, 2]


# -- Friedrichs ----------------------------------------------------------------

TABLE = CommutatorTable.from_bialgebra(su2_standard())


def cocommutative_basis():
    def el(*terms):
        out = UEAElement.zero(NAMES)
        for exps, c in terms:
            out = out + UEAElement.monomial(NAMES, exps, c)
        return out

    return {
        "J3": el((J3(1), 1), (J3(2), 1)),
        "J+": el((JP, 1), ((2, 1, 0), 1)),
        "J-": el((JM, 1), ((2, 0, 1), 1)),
    }


def test_cocommutative_basis_has_cocommutative_coproduct():
    from qbialg.uea import flip
    for el in cocommutative_basis().values():
        d = primitive_coproduct(el)
        assert flip(d) == d


def test_friedrichs_recovers_generators():
    rec, log = friedrichs_primitivize(cocommutative_basis(), TABLE, 4)
    for name in NAMES:
        assert rec[name] == UEAElement.generator(NAMES, name)
    assert len(log) > 0
    replay = log.apply({i: el for i, el in enumerate(cocommutative_basis().values())})
    for i, name in enumerate(NAMES):
        assert replay[i].truncate(D=4) == UEAElement.generator(NAMES, name)


@pytest.mark.parametrize("seed", range(20))
def test_friedrichs_scrambles(seed):
    basis = random_scramble(list(NAMES), random.Random(seed))
    rec, _ = friedrichs_primitivize(basis, TABLE, 5)
    for name, el in rec.items():
        res = _defect(el, None, 3, 0)
        assert all(sum(map(sum, key[1])) > 5 for key in res)
        assert el == UEAElement.generator(NAMES, name)


def test_friedrichs_with_quantized_coproduct(su2_q6):
    basis = random_scramble(list(NAMES), random.Random(5), degree=2, terms=2)
    basis = {k: UEAElement(NAMES, v.data, K=2) for k, v in basis.items()}
    rec, _ = friedrichs_primitivize(basis, su2_q6.commutators, 4,
                                    series=su2_q6.coproducts.truncated(2), K=2)
    engine = su2_q6.coproducts.truncated(2).engine(su2_q6.commutators)
    for el in rec.values():
        res = _defect(el, engine, 3, 2)
        assert all(sum(map(sum, key[1])) > 4 for key, v in res.items() if not v.is_zero())


def test_friedrichs_singular():
    from qbialg.quantize import NonInvertibleBasis
    basis = {"J3": UEAElement.generator(NAMES, "J+"), "J+": UEAElement.generator(NAMES, "J+"),
             "J-": UEAElement.generator(NAMES, "J-")}
    with pytest.raises(NonInvertibleBasis):
        friedrichs_primitivize(basis, TABLE, 3)
