"""Order-by-order quantization of a Lie bialgebra.

At each order k the coproduct correction Delta_(k) is found from
coassociativity, gauge-fixed against the cocommutative terms that a nonlinear
change of basis can remove, and then the z^k corrections to the brackets are
read off the homomorphism identity.

Both linear problems split into independent blocks labelled by the
commutative content of a tensor term (the sum of the exponent vectors of its
slots), because the undeformed coproduct of an ordered monomial never needs
reordering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb

from .bialgebra import (
    CocommutatorTensor,
    check_cocycle,
    check_compatibility,
    check_jacobi,
    invert_matrix,
)
from .linsolve import Inconsistent, Reducer, row_reduce, solve
from .scalars import ONE, ZERO, as_scalar
from .uea import (
    CommutatorTable,
    CoproductEngine,
    PBWMonomial,
    SeriesIncomplete,
    TensorElement,
    UEAElement,
    _acc,
    _resolve,
    _splits,
    _unit,
    primitive_data,
)

__all__ = [
    "CoproductSeries",
    "GaugeBasis",
    "QuantizationResult",
    "BasisChangeLog",
    "NoSolution",
    "NonInvertibleBasis",
    "InvalidInput",
    "coassoc_residual",
    "homomorphism_residual",
    "gauge_basis",
    "solve_coproduct_order",
    "solve_commutators_order",
    "solve_skew_order",
    "quantize",
    "extract_delta",
    "friedrichs_primitivize",
    "gauge_pivot",
    "random_scramble",
]


class NoSolution(ArithmeticError):
    def __init__(self, message, order=None, generator=None, residual=None):
        super().__init__(message)
        self.order = order
        self.generator = generator
        self.residual = residual


class NonInvertibleBasis(ValueError):
    pass


class InvalidInput(ValueError):
    def __init__(self, message, reports=()):
        super().__init__(message)
        self.reports = list(reports)


# -- coproduct series ------------------------------------------------------------

class CoproductSeries:
    """Per generator, the list ``[Delta_(0), ..., Delta_(K)]`` of raw rank-2 dicts.

    ``orders[i][k]`` holds ``{(k, (m1, m2)): coefficient}``.
    """

    def __init__(self, names, orders):
        self.names = tuple(names)
        self.orders = {i: [dict(o) for o in lst] for i, lst in orders.items()}
        self.K = min(len(lst) for lst in self.orders.values()) - 1 if self.orders else 0
        self._engines = {}

    @classmethod
    def primitive(cls, names):
        n = len(names)
        u = _unit(n)
        orders = {}
        for i in range(n):
            g = PBWMonomial.generator(n, i)
            orders[i] = [{(0, (g, u)): ONE, (0, (u, g)): ONE}]
        return cls(names, orders)

    def extended(self, k, new):
        """A series one order longer; ``new[i]`` is the raw order-k dict."""
        if k != self.K + 1:
            raise ValueError(f"next order is {self.K + 1}, got {k}")
        orders = {i: lst + [new.get(i, {})] for i, lst in self.orders.items()}
        return CoproductSeries(self.names, orders)

    def truncated(self, K):
        return CoproductSeries(self.names, {i: lst[:K + 1] for i, lst in self.orders.items()})

    def raw(self, i, upto=None):
        upto = self.K if upto is None else upto
        out = {}
        for d in self.orders[i][:upto + 1]:
            out.update(d)
        return out

    def order(self, which, k):
        i = _resolve(self.names, which)
        if k > self.K:
            raise SeriesIncomplete(f"order {k} requested, series has {self.K}")
        return TensorElement._wrap(self.names, 2, dict(self.orders[i][k]), k)

    def delta(self, which):
        i = _resolve(self.names, which)
        return TensorElement._wrap(self.names, 2, self.raw(i), self.K)

    def engine(self, table):
        key = id(table)
        hit = self._engines.get(key)
        if hit is None or hit.table is not table:
            hit = CoproductEngine(table, {i: self.raw(i) for i in self.orders}, self.K)
            self._engines[key] = hit
        return hit

    def __eq__(self, other):
        return isinstance(other, CoproductSeries) and self.orders == other.orders


@dataclass
class GaugeBasis:
    order: int
    elements: list


@dataclass
class BasisChangeLog:
    entries: list = field(default_factory=list)  # (step, generator index, UEAElement)

    def append(self, step, generator, poly):
        self.entries.append((step, generator, poly))

    def apply(self, basis):
        """Replay the subtractions on ``basis`` (index -> element)."""
        out = dict(basis)
        for _, i, poly in self.entries:
            out[i] = out[i] - poly
        return out

    def __len__(self):
        return len(self.entries)


@dataclass
class QuantizationResult:
    bialgebra: object
    coproducts: CoproductSeries
    commutators: CommutatorTable
    recognized: dict
    residual_gauge_dims: list
    K: int
    D: int
    log: BasisChangeLog = field(default_factory=BasisChangeLog)

    @property
    def names(self):
        return self.coproducts.names


# -- combinatorics of content blocks ------------------------------------------------

def _content(ms):
    return tuple(sum(col) for col in zip(*ms))


def _nonempty_parts(M, r):
    """Ordered r-tuples of nonzero exponent vectors summing to M."""
    if r == 1:
        if any(M):
            yield (M,)
        return
    for left in product(*(range(e + 1) for e in M)):
        if not any(left):
            continue
        rest = tuple(e - l for e, l in zip(M, left))
        for tail in _nonempty_parts(rest, r - 1):
            yield (left,) + tail


def _cobar_column(m1, m2):
    """L(m1 (x) m2) on the nonempty rank-3 triples (the Delta_(0) cobar differential)."""
    col = {}
    for a, b, mult in _splits(m1):
        if any(a) and any(b):
            col[(a, b, m2)] = col.get((a, b, m2), 0) + mult
    for a, b, mult in _splits(m2):
        if any(a) and any(b):
            col[(m1, a, b)] = col.get((m1, a, b), 0) - mult
    return {t: v for t, v in col.items() if v}


def _multinomial_pair(M, left):
    out = 1
    for e, l in zip(M, left):
        out *= comb(e, l)
    return out


def _distinct(m):
    return sum(1 for e in m if e)


def gauge_pivot(M):
    """The unordered split of content ``M`` whose symmetric component is gauged away.

    Preference: most distinct generators across the two slots, then the most
    balanced split, then the lexicographically largest pair.  Splits of the
    form (pure power, single generator) therefore survive gauge fixing.
    """
    best = None
    for m1, m2 in _nonempty_parts(M, 2):
        if m1 < m2:
            continue
        key = (_distinct(m1) + _distinct(m2), min(sum(m1), sum(m2)), m1, m2)
        if best is None or key > best:
            best = key
    return None if best is None else (best[2], best[3])


_NULLITY = {}


def _block_nullity(M):
    pattern = tuple(sorted(e for e in M if e))
    hit = _NULLITY.get(pattern)
    if hit is not None:
        return hit
    pairs = list(_nonempty_parts(pattern, 2))
    red = Reducer()
    rows = {}
    for p in pairs:
        for t, v in _cobar_column(*p).items():
            rows.setdefault(t, {})[p] = as_scalar(v)
    for t in sorted(rows):
        red.add(rows[t])
    _NULLITY[pattern] = len(pairs) - red.rank
    return _NULLITY[pattern]


def _contents_of_degree(n, d):
    if n == 0:
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _contents_of_degree(n - 1, d - first):
            yield (first,) + rest


def _residual_gauge_dim(n, k):
    total = 0
    for M in _contents_of_degree(n, k + 1):
        free = _block_nullity(M) - 1
        if k == 1 and _distinct(M) == 2:
            free -= 1  # skew direction fixed by delta
        total += free
    return total


# -- residuals ---------------------------------------------------------------------

def _with_zero_order(series, k):
    if series.K >= k:
        return series.truncated(k - 1).extended(k, {}) if k >= 1 else series
    if series.K == k - 1:
        return series.extended(k, {})
    raise SeriesIncomplete(f"series holds order {series.K}, order {k - 1} needed")


def _coassoc_raw(series, k, table, i):
    engine = series.engine(table)
    T = series.raw(i, k)
    out = engine.apply_slot(T, 0, k)
    for key, v in engine.apply_slot(T, 1, k).items():
        _acc(out, key, -v)
    return {key: v for key, v in out.items() if key[0] == k}


def coassoc_residual(series, k, table):
    """Order-k part of ``(Delta (x) 1 - 1 (x) Delta) Delta(Y_i)`` per generator."""
    if series.K < k:
        raise SeriesIncomplete(f"series holds order {series.K}, order {k} requested")
    return {series.names[i]: TensorElement._wrap(series.names, 3, _coassoc_raw(series, k, table, i), k)
            for i in sorted(series.orders)}


def _commutator_tensor(engine, S, T, K):
    out = engine.eng.tmul(S, T, K)
    for key, v in engine.eng.tmul(T, S, K).items():
        _acc(out, key, -v)
    return out


def homomorphism_residual(series, table, k):
    """``Delta([Y_i, Y_j]) - [Delta Y_i, Delta Y_j]`` at order k, per pair i < j."""
    engine = series.engine(table)
    n = len(series.names)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            lhs = engine.element(table.raw(i, j), k)
            rhs = _commutator_tensor(engine, series.raw(i, k), series.raw(j, k), k)
            res = {key: v for key, v in lhs.items() if key[0] == k}
            for key, v in rhs.items():
                if key[0] == k:
                    _acc(res, key, -v)
            out[(series.names[i], series.names[j])] = TensorElement._wrap(series.names, 2, res, k)
    return out


# -- gauge basis ---------------------------------------------------------------------

def gauge_basis(k, generators, table=None):
    """Mixed parts ``Delta_(0)(P) - P (x) 1 - 1 (x) P`` of degree-(k+1) monomials, reduced."""
    if k < 1:
        raise ValueError("gauge basis is defined for k >= 1")
    names = tuple(generators)
    n = len(names)
    u = _unit(n)
    vectors = []
    for M in _contents_of_degree(n, k + 1):
        data = primitive_data({(0, M): ONE})
        data.pop((0, (M, u)), None)
        data.pop((0, (u, M)), None)
        vectors.append({key[1]: v for key, v in data.items()})

    def rank_key(pair):
        return (sum(map(sum, pair)), pair)

    basis, _ = row_reduce(vectors, rank_key)
    elements = [TensorElement._wrap(names, 2, {(0, key): v for key, v in vec.items()}, 0)
                for vec in basis]
    return GaugeBasis(k, elements)


# -- order-k solves ------------------------------------------------------------------

def _solve_block(M, rhs_rows, extra_rows):
    """Solve L x = rhs on content block M; returns {pair: value}."""
    pairs = list(_nonempty_parts(M, 2))
    rows = {}
    for p in pairs:
        for t, v in _cobar_column(*p).items():
            rows.setdefault(t, {})[p] = as_scalar(v)
    equations, rhs = [], []
    for t in sorted(set(rows) | set(rhs_rows)):
        equations.append(rows.get(t, {}))
        rhs.append(rhs_rows.get(t, ZERO))
    for eq, b in extra_rows:
        equations.append(eq)
        rhs.append(b)
    sol, _ = solve(equations, rhs, pairs, rank_key=lambda p: (p[0], p[1]))
    return sol


def _gauge_fix(M, sol):
    pivot = gauge_pivot(M)
    if pivot is None:
        return sol
    p1, p2 = pivot
    mult = _multinomial_pair(M, p1)
    if p1 == p2:
        t = -sol.get((p1, p2), ZERO) * as_scalar(1) / mult
    else:
        t = -(sol.get((p1, p2), ZERO) + sol.get((p2, p1), ZERO)) / (2 * mult)
    if t.is_zero():
        return sol
    out = dict(sol)
    for m1, m2 in _nonempty_parts(M, 2):
        _acc(out, (m1, m2), t * _multinomial_pair(M, m1))
    return out


def _delta_rows(delta, i, n):
    """Skew constraints ``x[a,b] - x[b,a] = 2 delta[a,b]`` grouped by content."""
    blocks = {}
    for (p, q), v in delta.wedge(i).items():
        a = PBWMonomial.generator(n, p)
        b = PBWMonomial.generator(n, q)
        M = _content((a, b))
        blocks.setdefault(M, []).append(({(a, b): ONE, (b, a): -ONE}, v * 2))
    return blocks


def solve_coproduct_order(series, k, table, delta, D=None):
    """Gauge-fixed ``Delta_(k)`` per generator and the leftover freedom at order k."""
    if k < 1:
        raise ValueError("order must be >= 1")
    if series.K < k - 1:
        raise SeriesIncomplete(f"series holds order {series.K}, order {k - 1} needed")
    n = len(series.names)
    trial = _with_zero_order(series, k)
    new = {}
    for i in range(n):
        R = _coassoc_raw(trial, k, table, i)
        blocks = {}
        for (_, t), v in R.items():
            blocks.setdefault(_content(t), {})[t] = -v
        extra = _delta_rows(delta, i, n) if k == 1 else {}
        solved = {}
        for M in sorted(set(blocks) | set(extra)):
            if D is not None and sum(M) > D:
                raise NoSolution(f"order {k} needs degree {sum(M)} above the cap {D}",
                                 order=k, generator=series.names[i])
            try:
                sol = _solve_block(M, blocks.get(M, {}), extra.get(M, []))
            except Inconsistent as exc:
                raise NoSolution(
                    f"coassociativity has no solution at order {k} for {series.names[i]}",
                    order=k, generator=series.names[i],
                    residual=TensorElement._wrap(series.names, 3, R, k)) from exc
            for pair, v in _gauge_fix(M, sol).items():
                if not v.is_zero():
                    solved[(k, pair)] = v
        new[i] = solved
    return new, _residual_gauge_dim(n, k)


def _homomorphism_defects(series, table, k):
    """Order-k defect ``[Delta Y_i, Delta Y_j] - Delta(entry)`` with the order-k brackets read as 0."""
    provisional = table.provisional(k)
    engine = series.engine(provisional)
    n = len(series.names)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            rhs = _commutator_tensor(engine, series.raw(i, k), series.raw(j, k), k)
            lhs = engine.element(provisional.raw(i, j), k)
            E = {key[1]: v for key, v in rhs.items() if key[0] == k}
            for key, v in lhs.items():
                if key[0] == k:
                    _acc(E, key[1], -v)
            out[(i, j)] = {p: v for p, v in E.items() if not v.is_zero()}
    return out


def _blocks(E):
    grouped = {}
    for pair, v in E.items():
        grouped.setdefault(_content(pair), {})[pair] = v
    return grouped


def _block_coefficient(M, block):
    """c with ``block == c * g_M``, or None."""
    parts = list(_nonempty_parts(M, 2))
    if len(block) != len(parts) or any(p not in block for p in parts):
        return None
    first = parts[0]
    c = block[first] / _multinomial_pair(M, first[0])
    if all(block[p] == c * _multinomial_pair(M, p[0]) for p in parts):
        return c
    return None


def solve_skew_order(series, table, k):
    """Series whose order-k coproduct carries the degree-2 skew terms the homomorphism needs.

    Coassociativity leaves ``Y_a (x) Y_b - Y_b (x) Y_a`` at order k >= 2
    unconstrained. When a lower-order bracket correction makes the order-k
    homomorphism defect fail to be a mixed part, these terms are solved for;
    free directions (cocycles, i.e. reparametrizations of z and twists) are
    set to zero. Returns ``(series, free_dim)``; the series is unchanged when
    nothing is needed.
    """
    if k < 2:
        return series, 0
    defects = _homomorphism_defects(series, table, k)
    if all(_block_coefficient(M, b) is not None
           for E in defects.values() for M, b in _blocks(E).items()):
        return series, 0
    n = len(series.names)
    u = _unit(n)
    gens = [PBWMonomial.generator(n, a) for a in range(n)]
    eng = series.engine(table.provisional(k)).eng
    base = table.truncated(0)
    unknowns = [(r, a, b) for r in range(n) for a in range(n) for b in range(a + 1, n)]
    delta0 = [{(0, (gens[a], u)): ONE, (0, (u, gens[a])): ONE} for a in range(n)]
    responses = {}
    for idx, (r, a, b) in enumerate(unknowns):
        S = {(0, (gens[a], gens[b])): ONE, (0, (gens[b], gens[a])): -ONE}
        for i in range(n):
            for j in range(i + 1, n):
                R = {}
                if r == i:
                    R = _commutator_tensor_raw(eng, S, delta0[j])
                elif r == j:
                    R = _commutator_tensor_raw(eng, delta0[i], S)
                f = base.raw(i, j).get((0, gens[r]), ZERO)
                if not f.is_zero():
                    for key, v in S.items():
                        _acc(R, key, -f * v)
                R = {key[1]: v for key, v in R.items() if key[0] == 0 and not v.is_zero()}
                if R:
                    responses.setdefault((i, j), []).append((idx, R))
    equations, rhs = [], []
    for (i, j), E0 in defects.items():
        touched = {}
        for pair, v in E0.items():
            touched.setdefault(_content(pair), None)
        for idx, R in responses.get((i, j), ()):
            for pair in R:
                touched.setdefault(_content(pair), None)
        for M in touched:
            parts = list(_nonempty_parts(M, 2))
            first = parts[0]
            g0 = _multinomial_pair(M, first[0])
            for p in parts[1:]:
                gp = _multinomial_pair(M, p[0])
                row = {}
                for idx, R in responses.get((i, j), ()):
                    v = R.get(p, ZERO) * g0 - R.get(first, ZERO) * gp
                    if not v.is_zero():
                        row[idx] = row.get(idx, ZERO) + v
                const = E0.get(p, ZERO) * g0 - E0.get(first, ZERO) * gp
                if row or not const.is_zero():
                    equations.append(row)
                    rhs.append(-const)
            for pair in set(E0) | {q for _, R in responses.get((i, j), ()) for q in R}:
                if pair[0] == u or pair[1] == u:
                    raise NoSolution(f"homomorphism defect has unit slots at order {k}",
                                     order=k, generator=(series.names[i], series.names[j]))
    try:
        sol, free = solve(equations, rhs, range(len(unknowns)), rank_key=lambda c: c)
    except Inconsistent:
        raise NoSolution(f"homomorphism defect at order {k} cannot be absorbed by skew terms",
                         order=k) from None
    new = {i: dict(series.orders[i][k]) for i in range(n)}
    for idx, v in sol.items():
        if v.is_zero():
            continue
        r, a, b = unknowns[idx]
        _acc(new[r], (k, (gens[a], gens[b])), v)
        _acc(new[r], (k, (gens[b], gens[a])), -v)
    for i in new:
        new[i] = {key: v for key, v in new[i].items() if not v.is_zero()}
    return series.truncated(k - 1).extended(k, new), len(free)


def _commutator_tensor_raw(eng, S, T):
    out = eng.tmul(S, T, 0)
    for key, v in eng.tmul(T, S, 0).items():
        _acc(out, key, -v)
    return out



def solve_commutators_order(series, table, k, D=None):
    """Table extended with the z^k bracket corrections forced by the homomorphism identity.

    The order-k correction C enters as ``Delta_(0)(C)`` on the left and as
    ``C (x) 1 + 1 (x) C`` on the right, so only its mixed part is determined
    there. Linear terms are then chosen so that the order-k Jacobiator
    vanishes, with free directions set to zero; for su(2) they are all zero.
    """
    if series.K < k:
        raise SeriesIncomplete(f"series holds order {series.K}, order {k} needed")
    n = len(series.names)
    u = _unit(n)
    cap = k + 1 if D is None else min(k + 1, D)
    corrections = {}
    for (i, j), E in _homomorphism_defects(series, table, k).items():
            name = (series.names[i], series.names[j])
            if any(m1 == u or m2 == u for m1, m2 in E):
                raise NoSolution(f"homomorphism defect has unit slots at order {k} for {name}",
                                 order=k, generator=name)
            poly = {}
            for M, block in sorted(_blocks(E).items()):
                c = _block_coefficient(M, block)
                if c is None:
                    raise NoSolution(
                        f"homomorphism defect at order {k} for {name} is not a coboundary",
                        order=k, generator=name,
                        residual=TensorElement._wrap(series.names, 2,
                                                     {(k, p): v for p, v in E.items()}, k))
                if sum(M) > cap:
                    raise NoSolution(
                        f"bracket correction for {name} at order {k} needs degree {sum(M)} > {cap}",
                        order=k, generator=name)
                poly[M] = c
            if poly:
                corrections[(i, j)] = poly
    updated = table.with_order(k, corrections)
    linear = _jacobi_linear_parts(updated, k)
    if not linear:
        return updated
    for key, poly in linear.items():
        target = corrections.setdefault(key, {})
        for m, v in poly.items():
            target[m] = target.get(m, ZERO) + v
    return table.with_order(k, corrections)


def jacobiator(table, a, b, c, k):
    """Order-k part of the cyclic sum ``[Y_a, [Y_b, Y_c]] + ...`` in the deformed algebra."""
    names = table.names
    eng = table.engine
    out = {}
    for x, y, w in ((a, b, c), (b, c, a), (c, a, b)):
        inner = table.bracket(y, w, k).data
        gen = {(0, PBWMonomial.generator(len(names), x)): ONE}
        for key, v in eng.mul(gen, inner, k).items():
            _acc(out, key, v)
        for key, v in eng.mul(inner, gen, k).items():
            _acc(out, key, -v)
    return {m: v for (kk, m), v in out.items() if kk == k}


def _jacobi_linear_parts(table, k):
    """Linear z^k bracket terms that restore the Jacobi identity at order k.

    The mixed part of each correction is fixed by the coproduct; the linear
    part is not, and it is chosen here (free directions set to zero).
    """
    n = table.n
    f = {}
    for (i, j), data in table.entries.items():
        for (kk, m), v in data.items():
            if kk == 0:
                f[(i, j, m.index(1))] = v

    def f0(i, j):
        if i == j:
            return {}
        if i < j:
            return {r: v for (p, q, r), v in f.items() if (p, q) == (i, j)}
        return {r: -v for (p, q, r), v in f.items() if (p, q) == (j, i)}

    def ell(i, j, r):
        # unknown coefficient of Y_r in the linear part of [Y_i, Y_j]
        if i < j:
            return {(i, j, r): ONE}
        return {(j, i, r): -ONE}

    rows = {}
    known = {}
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                jac = jacobiator(table, a, b, c, k)
                for m, v in jac.items():
                    if sum(m) != 1:
                        raise NoSolution(f"Jacobi identity fails at order {k} beyond linear terms",
                                         order=k, generator=(table.names[a], table.names[b],
                                                             table.names[c]))
                    known[(a, b, c, m.index(1))] = v
                for x, y, w in ((a, b, c), (b, c, a), (c, a, b)):
                    # [Y_x, l(y, w)] and l(x, [Y_y, Y_w])
                    for r in range(n):
                        if y == w:
                            continue
                        for s, fv in f0(x, r).items():
                            for col, cv in ell(y, w, r).items():
                                _acc(rows.setdefault((a, b, c, s), {}), col, fv * cv)
                    for r, fv in f0(y, w).items():
                        if r == x:
                            continue
                        for s in range(n):
                            for col, cv in ell(x, r, s).items():
                                _acc(rows.setdefault((a, b, c, s), {}), col, fv * cv)
    if not any(not v.is_zero() for v in known.values()):
        return {}
    keys = sorted(set(rows) | set(known))
    columns = [(i, j, r) for i in range(n) for j in range(i + 1, n) for r in range(n)]
    try:
        sol, _ = solve([rows.get(t, {}) for t in keys], [-known.get(t, ZERO) for t in keys],
                       columns, rank_key=lambda col: col)
    except Inconsistent as exc:
        raise NoSolution(f"no linear bracket correction restores Jacobi at order {k}",
                         order=k) from exc
    out = {}
    for (i, j, r), v in sol.items():
        out.setdefault((i, j), {})[PBWMonomial.generator(n, r)] = v
    return out


# -- driver --------------------------------------------------------------------------

def _validate(g):
    reports = [check_jacobi(g), check_cocycle(g), check_compatibility(g)]
    if not all(reports):
        bad = ", ".join(r.check for r in reports if not r)
        raise InvalidInput(f"not a Lie bialgebra: {bad}", reports)


def quantize(g, K=4, D=None, validate=True, recognize=True):
    """Analytical quantization of ``g`` through z^K."""
    if K < 0:
        raise ValueError("K must be >= 0")
    D = K + 2 if D is None else D
    if D < K + 1:
        raise ValueError("degree cap must be at least K + 1")
    if validate:
        _validate(g)
    names = g.names
    n = g.n
    series = CoproductSeries.primitive(names)
    table = CommutatorTable.from_bialgebra(g).truncated(0)
    dims = []
    if g.cocommutators.is_zero():
        # a zero cocommutator quantizes to the primitive coproduct and the
        # classical brackets at every order
        for k in range(1, K + 1):
            series = series.extended(k, {})
            dims.append(_residual_gauge_dim(n, k))
        table = CommutatorTable(names, table.entries, K)
    else:
        for k in range(1, K + 1):
            new, dim = solve_coproduct_order(series, k, table, g.cocommutators, D)
            series = series.extended(k, new)
            dims.append(dim)
            series, _ = solve_skew_order(series, table, k)
            table = solve_commutators_order(series, table, k, D)
    result = QuantizationResult(g, series, table, {}, dims, K, D)
    if recognize and K >= 2:
        from .closedform import recognize_result
        result.recognized = recognize_result(result)
    return result


def extract_delta(result):
    """Skew part of the order-1 coproduct, i.e. ``(Delta - sigma Delta)/2z`` at z = 0."""
    series = result.coproducts if isinstance(result, QuantizationResult) else result
    n = len(series.names)
    if series.K < 1:
        raise SeriesIncomplete("extract_delta needs order 1")
    entries = {}
    for i in range(n):
        x = {pair: v for (_, pair), v in series.orders[i][1].items()}
        row = {}
        for (a, b), v in x.items():
            if sum(a) != 1 or sum(b) != 1:
                continue
            p, q = a.index(1), b.index(1)
            if p < q:
                skew = (v - x.get((b, a), ZERO)) * as_scalar(1) / 2
                if not skew.is_zero():
                    row[(p, q)] = skew
            elif p > q and (b, a) not in x:
                row[(q, p)] = -v / 2
        if row:
            entries[i] = row
    return CocommutatorTensor(n, entries)


# -- Friedrichs primitivization -----------------------------------------------------

def _linear_matrix(basis, n, order):
    rows = []
    for i in order:
        el = basis[i]
        rows.append([el.data.get((0, PBWMonomial.generator(n, j)), ZERO) for j in range(n)])
    return rows


def _defect(X, engine, n, K):
    """Mixed part of Delta(X) beyond what its linear part already carries."""
    u = _unit(n)
    lin = {key: v for key, v in X.data.items() if sum(key[1]) == 1}
    nonlin = {key: v for key, v in X.data.items() if sum(key[1]) != 1}
    if engine is None:
        out = primitive_data(nonlin)
    else:
        out = engine.element(X.data, K)
        for key, v in engine.element(lin, K).items():
            _acc(out, key, -v)
    for (k, m), v in nonlin.items():
        _acc(out, (k, (m, u)), -v)
        _acc(out, (k, (u, m)), -v)
    return out


def friedrichs_primitivize(basis, table, K_deg, series=None, K=None):
    """Strip the nonlinear admixtures from a basic set, lowest order first.

    ``basis`` maps generator (index or name) to an element whose linear part
    is invertible.  Without ``series`` the undeformed coproduct is used and the
    recovered elements are primitive through degree ``K_deg``; with a
    quantization series the recovered elements carry the analytical coproduct
    of their linear part through degree ``K_deg`` and z-order ``K``.
    """
    names = table.names
    n = len(names)
    X = {_resolve(names, g): el for g, el in basis.items()}
    order = sorted(X)
    M = _linear_matrix(X, n, order)
    if len(order) == n:
        try:
            invert_matrix(M)
        except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
            raise NonInvertibleBasis("linear part of the basis is singular") from exc
    else:
        red = Reducer()
        for row in M:
            if red.add({j: v for j, v in enumerate(row) if not v.is_zero()}) is None:
                raise NonInvertibleBasis("linear parts are dependent")
    if series is None:
        K = 0 if K is None else K
        engine = None
    else:
        K = series.K if K is None else K
        engine = series.engine(table)
    log = BasisChangeLog()
    step = 0
    for i in order:
        cur = X[i].truncate(K=K)
        while True:
            res = _defect(cur, engine, n, K)
            live = [(key, v) for key, v in res.items() if sum(map(sum, key[1])) <= K_deg]
            if not live:
                break
            j, d = min((key[0], sum(map(sum, key[1]))) for key, _ in live)
            blocks = {}
            for (k, pair), v in live:
                if k == j and sum(map(sum, pair)) == d:
                    blocks.setdefault(_content(pair), {})[pair] = v
            poly = {}
            for Mc, block in sorted(blocks.items()):
                first = min(block)
                c = block[first] / _multinomial_pair(Mc, first[0])
                if not all(block.get(p, ZERO) == c * _multinomial_pair(Mc, p[0])
                           for p in _nonempty_parts(Mc, 2)):
                    raise NoSolution(f"defect of {names[i]} at degree {d} is not removable",
                                     order=j, generator=names[i])
                poly[(j, Mc)] = c
            step += 1
            P = UEAElement._wrap(names, poly, cur.K)
            log.append(step, i, P)
            cur = cur - P
        X[i] = cur.truncate(D=K_deg)
    return {names[i]: X[i] for i in order}, log


def random_scramble(names, rng, degree=3, terms=3):
    """``Y_i + P_i`` with ``P_i`` a few random rational monomials of degree 2..``degree``.

    ``rng`` is a :class:`random.Random`; the same seed gives the same basis.
    """
    from fractions import Fraction
    n = len(names)
    basis = {}
    for i in range(n):
        el = UEAElement.generator(names, i)
        for _ in range(terms):
            d = rng.randint(2, degree)
            exps = [0] * n
            for _ in range(d):
                exps[rng.randrange(n)] += 1
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
            el = el + UEAElement.monomial(names, exps, c)
        basis[names[i]] = el
    return basis
