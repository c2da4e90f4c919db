import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qbialg.double import su2_standard
from qbialg.scalars import ONE, ZERO
from qbialg.uea import (
    CommutatorTable, PBWMonomial, TableIncomplete, TensorElement, UEAElement, commutator,
    flip, multiply, normal_order, primitive_coproduct, render_monomial,
)

NAMES = ["J3", "J+", "J-"]
TABLE = CommutatorTable.from_bialgebra(su2_standard())

# 2x2 matrices with [J3, J+-] = +-J+- and [J+, J-] = J3
H = Fraction(1, 2)
REP = {
    0: ((H, 0), (0, -H)),
    1: ((0, 1), (0, 0)),
    2: ((0, 0), (H, 0)),
}


def matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
                 for i in range(2))


def ident():
    return ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def rep_word(word):
    m = ident()
    for g in word:
        m = matmul(m, REP[NAMES.index(g) if isinstance(g, str) else g])
    return m


def rep_element(el):
    out = [[Fraction(0)] * 2 for _ in range(2)]
    for mono, series in el.terms.items():
        c = series.coefficient(0)
        assert c.is_rational()
        c = c.components()[0]
        m = rep_word(PBWMonomial(mono).letters())
        for i in range(2):
            for j in range(2):
                out[i][j] += c * m[i][j]
    return tuple(map(tuple, out))


def test_basic_reorderings():
    assert normal_order(["J+", "J3"], TABLE).render() == "-J+ + J3 J+"
    assert normal_order(["J-", "J+"], TABLE).render() == "-J3 + J+ J-"
    assert commutator(UEAElement.generator(NAMES, "J+"), UEAElement.generator(NAMES, "J-"),
                      TABLE) == UEAElement.generator(NAMES, "J3")


def test_commutator_with_square():
    J3sq = UEAElement.monomial(NAMES, (2, 0, 0))
    c = commutator(J3sq, UEAElement.generator(NAMES, "J+"), TABLE)
    assert c.render() == "-J+ + 2 J3 J+"


def test_deformed_reordering(su2):
    from qbialg.quantize import quantize
    r = quantize(su2, K=2)
    el = normal_order(["J-", "J+"], r.commutators, K=2)
    assert el.render() == "-J3 + J+ J- - (1/6) z^2 J3^3"


def test_table_incomplete():
    table = CommutatorTable.from_bialgebra(su2_standard()).truncated(0)
    with pytest.raises(TableIncomplete):
        normal_order(["J-", "J+"], table, K=2)


def test_render_monomial():
    assert render_monomial((2, 1, 0), NAMES) == "J3^2 J+"
    assert render_monomial((0, 0, 0), NAMES) == "1"


words = st.lists(st.sampled_from(NAMES), min_size=0, max_size=7)


@settings(max_examples=60, deadline=None)
@given(words)
def test_matrix_oracle(word):
    assert rep_element(normal_order(word, TABLE)) == rep_word(word)


@settings(max_examples=60, deadline=None)
@given(words, st.integers(0, 10 ** 6))
def test_confluence(word, seed):
    a = normal_order(word, TABLE)
    b = normal_order(word, TABLE, rng=random.Random(seed))
    assert a == b


def test_confluence_deformed(su2_q6):
    table = su2_q6.commutators
    rng = random.Random(7)
    for _ in range(40):
        word = [rng.choice(NAMES) for _ in range(rng.randint(2, 6))]
        a = normal_order(word, table, K=6)
        b = normal_order(word, table, K=6, rng=random.Random(rng.random()))
        assert a == b


def element(draw_terms):
    el = UEAElement.zero(NAMES)
    for exps, c in draw_terms:
        el = el + UEAElement.monomial(NAMES, exps, c)
    return el


terms = st.lists(
    st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
              st.integers(-3, 3)),
    max_size=3,
)


@settings(max_examples=40, deadline=None)
@given(terms, terms, terms)
def test_associativity(a, b, c):
    a, b, c = element(a), element(b), element(c)
    assert multiply(multiply(a, b, TABLE), c, TABLE) == multiply(a, multiply(b, c, TABLE), TABLE)


def test_associativity_deformed(su2_q6):
    table = su2_q6.commutators
    rng = random.Random(3)
    for _ in range(10):
        els = []
        for _ in range(3):
            el = UEAElement.zero(NAMES, K=4)
            for _ in range(2):
                exps = tuple(rng.randint(0, 2) for _ in range(3))
                el = el + UEAElement.monomial(NAMES, exps, rng.randint(-2, 2), K=4)
            els.append(el)
        a, b, c = els
        lhs = multiply(multiply(a, b, table, K=4), c, table, K=4)
        rhs = multiply(a, multiply(b, c, table, K=4), table, K=4)
        assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(terms, terms)
def test_primitive_coproduct_is_algebra_map(a, b):
    a, b = element(a), element(b)
    lhs = primitive_coproduct(multiply(a, b, TABLE))
    prod = TABLE.engine.tmul(primitive_coproduct(a).data, primitive_coproduct(b).data, 0)
    assert lhs == TensorElement._wrap(tuple(NAMES), 2, prod, 0)


@settings(max_examples=40, deadline=None)
@given(terms)
def test_primitive_coproduct_cocommutative(a):
    d = primitive_coproduct(element(a))
    assert flip(d) == d


def test_arithmetic():
    x = UEAElement.generator(NAMES, "J+")
    assert (x - x).is_zero()
    assert (x * 3).coefficient((0, 1, 0)).coefficient(0) == 3 * ONE
    assert x.coefficient((1, 0, 0)).coefficient(0) == ZERO
