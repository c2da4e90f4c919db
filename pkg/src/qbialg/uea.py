"""PBW normal ordering, tensor products and coproducts in U(g) and its deformations.

Elements store their terms as ``{(z_order, monomial): coefficient}`` where a
monomial is a tuple of exponents in the fixed generator order.  Rank-r tensors
use ``{(z_order, (m_1, ..., m_r)): coefficient}``.  Truncation in the
deformation parameter is exact (it is an ideal); the degree cap only filters
final results, since rewriting can lower the degree of intermediate terms.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from math import comb

from .scalars import ONE, ZERO, ZSeries, as_scalar, format_scalar

__all__ = [
    "PBWMonomial",
    "UEAElement",
    "TensorElement",
    "CommutatorTable",
    "TableIncomplete",
    "RankMismatch",
    "SeriesIncomplete",
    "normal_order",
    "multiply",
    "commutator",
    "primitive_coproduct",
    "flip",
    "coproduct_extend",
    "render_monomial",
    "monomial_key",
]


class TableIncomplete(LookupError):
    """A rewrite needed a commutator at a z-order the table does not hold."""


class RankMismatch(ValueError):
    pass


class SeriesIncomplete(LookupError):
    pass


class PBWMonomial(tuple):
    """Exponent vector of an ordered monomial; the all-zero vector is the unit."""

    __slots__ = ()

    def __new__(cls, exponents):
        return super().__new__(cls, tuple(int(e) for e in exponents))

    @classmethod
    def unit(cls, n):
        return cls((0,) * n)

    @classmethod
    def generator(cls, n, i):
        return cls(tuple(1 if j == i else 0 for j in range(n)))

    @property
    def exponents(self):
        return tuple(self)

    @property
    def degree(self):
        return sum(self)

    def letters(self):
        """The generator indices of the ordered word, with multiplicity."""
        out = []
        for i, e in enumerate(self):
            out.extend([i] * e)
        return out


def monomial_key(m):
    """Graded-lex: lower degree first, then larger leading exponents first."""
    return (sum(m), tuple(-e for e in m))


def _unit(n):
    return (0,) * n


def _bump(m, i, by=1):
    return m[:i] + (m[i] + by,) + m[i + 1:]


def _acc(acc, key, val):
    cur = acc.get(key)
    new = val if cur is None else cur + val
    if new.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = new


def _clean(data):
    return {k: v for k, v in data.items() if not v.is_zero()}


# -- rendering -----------------------------------------------------------------

def render_monomial(m, names):
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return " ".join(parts) if parts else "1"


def _is_negative(c):
    for comp in c.components():
        if comp:
            return comp < 0
    return False


def _coeff_text(c):
    if c.is_rational():
        q = c.components()[0]
        return str(q.numerator) if q.denominator == 1 else f"({q})"
    return f"({format_scalar(c)})"


def _render_terms(items):
    """``items`` is a sorted list of (coefficient, z_order, body)."""
    if not items:
        return "0"
    out = []
    for idx, (c, k, body) in enumerate(items):
        neg = _is_negative(c)
        if neg:
            c = -c
        pieces = []
        if c != ONE or (k == 0 and body == "1"):
            pieces.append(_coeff_text(c))
        if k == 1:
            pieces.append("z")
        elif k > 1:
            pieces.append(f"z^{k}")
        if body != "1" or not pieces:
            pieces.append(body)
        text = " ".join(pieces)
        if idx == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(out)


# -- elements ------------------------------------------------------------------

def _max_order(data):
    return max((k for k, _ in data), default=0)


class UEAElement:
    """Finite combination of PBW monomials with z-series coefficients.

    ``K`` is the z-order through which the coefficients are meaningful; ``D``
    (optional) is the degree cap the element was produced under.
    """

    __slots__ = ("names", "data", "K", "D")

    def __init__(self, names, data=None, K=None, D=None):
        self.names = tuple(names)
        n = len(self.names)
        clean = {}
        for (k, m), v in (data or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError("monomial length does not match the generator count")
            v = as_scalar(v)
            if not v.is_zero():
                clean[(k, m)] = v
        self.K = _max_order(clean) if K is None else K
        self.D = D
        self.data = {key: v for key, v in clean.items() if key[0] <= self.K
                     and (D is None or sum(key[1]) <= D)}

    @classmethod
    def _wrap(cls, names, data, K, D=None):
        obj = cls.__new__(cls)
        obj.names = names
        obj.K = K
        obj.D = D
        obj.data = data if D is None else {key: v for key, v in data.items() if sum(key[1]) <= D}
        return obj

    @classmethod
    def zero(cls, names, K=0):
        return cls(names, {}, K)

    @classmethod
    def unit(cls, names, K=0, coeff=1):
        return cls(names, {(0, _unit(len(names))): coeff}, K)

    @classmethod
    def generator(cls, names, which, K=0, coeff=1):
        names = tuple(names)
        i = _resolve(names, which)
        return cls(names, {(0, PBWMonomial.generator(len(names), i)): coeff}, K)

    @classmethod
    def monomial(cls, names, exponents, coeff=1, z_order=0, K=None):
        return cls(names, {(z_order, tuple(exponents)): coeff}, K)

    @property
    def n(self):
        return len(self.names)

    @property
    def terms(self):
        """``{PBWMonomial: ZSeries}`` view."""
        grouped = {}
        for (k, m), v in self.data.items():
            grouped.setdefault(m, {})[k] = v
        return {PBWMonomial(m): ZSeries(c, self.K) for m, c in grouped.items()}

    def coefficient(self, mono, k=None):
        mono = tuple(mono)
        if k is not None:
            return self.data.get((k, mono), ZERO)
        return ZSeries({kk: v for (kk, m), v in self.data.items() if m == mono}, self.K)

    def order(self, k):
        """The z^k component, as an element with z-order 0."""
        return UEAElement._wrap(self.names, {(0, m): v for (kk, m), v in self.data.items()
                                             if kk == k}, 0)

    def is_zero(self):
        return not self.data

    def max_degree(self):
        return max((sum(m) for _, m in self.data), default=0)

    def truncate(self, K=None, D=None):
        K = self.K if K is None else min(K, self.K)
        data = {key: v for key, v in self.data.items() if key[0] <= K
                and (D is None or sum(key[1]) <= D)}
        return UEAElement._wrap(self.names, data, K, D if D is not None else self.D)

    def _check(self, other):
        if not isinstance(other, UEAElement) or other.names != self.names:
            raise TypeError("elements over different generator sets")

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            other = UEAElement.unit(self.names, self.K, other)
        self._check(other)
        K = min(self.K, other.K)
        data = {key: v for key, v in self.data.items() if key[0] <= K}
        for key, v in other.data.items():
            if key[0] <= K:
                _acc(data, key, v)
        return UEAElement._wrap(self.names, data, K)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement._wrap(self.names, {k: -v for k, v in self.data.items()}, self.K, self.D)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, UEAElement):
            raise TypeError("use multiply(a, b, table) for products of elements")
        c = as_scalar(c)
        return UEAElement._wrap(self.names, _clean({k: v * c for k, v in self.data.items()}),
                                self.K, self.D)

    __rmul__ = __mul__

    def shift(self, k, K=None):
        """Multiply by z^k."""
        K = self.K + k if K is None else K
        data = {(kk + k, m): v for (kk, m), v in self.data.items() if kk + k <= K}
        return UEAElement._wrap(self.names, data, K, self.D)

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.names == other.names and self.data == other.data
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.data
        return NotImplemented

    def __hash__(self):
        return hash((self.names, frozenset(self.data.items())))

    def sorted_terms(self):
        return sorted(self.data.items(), key=lambda kv: (kv[0][0], monomial_key(kv[0][1])))

    def render(self):
        items = [(v, k, render_monomial(m, self.names)) for (k, m), v in self.sorted_terms()]
        return _render_terms(items)

    __str__ = render

    def __repr__(self):
        return f"UEAElement({self.render()!r})"


class TensorElement:
    """Rank-r tensor of PBW monomials with z-series coefficients."""

    __slots__ = ("names", "rank", "data", "K")

    def __init__(self, names, rank, data=None, K=None):
        if rank < 2:
            raise RankMismatch("tensors have rank >= 2")
        self.names = tuple(names)
        self.rank = rank
        clean = {}
        for (k, ms), v in (data or {}).items():
            ms = tuple(tuple(m) for m in ms)
            if len(ms) != rank:
                raise RankMismatch(f"expected {rank} slots, got {len(ms)}")
            v = as_scalar(v)
            if not v.is_zero():
                clean[(k, ms)] = v
        self.K = _max_order(clean) if K is None else K
        self.data = {key: v for key, v in clean.items() if key[0] <= self.K}

    @classmethod
    def _wrap(cls, names, rank, data, K):
        obj = cls.__new__(cls)
        obj.names = names
        obj.rank = rank
        obj.data = data
        obj.K = K
        return obj

    @classmethod
    def simple(cls, *slots, coeff=1, z_order=0, K=None):
        """``coeff * z^k * a_1 (x) ... (x) a_r`` from elements (sums expanded)."""
        names = slots[0].names
        data = {}
        for combo in product(*(s.data.items() for s in slots)):
            k = z_order + sum(key[0] for key, _ in combo)
            v = as_scalar(coeff)
            for _, c in combo:
                v = v * c
            _acc(data, (k, tuple(key[1] for key, _ in combo)), v)
        return cls(names, len(slots), data, K)

    @property
    def terms(self):
        grouped = {}
        for (k, ms), v in self.data.items():
            grouped.setdefault(tuple(PBWMonomial(m) for m in ms), {})[k] = v
        return {ms: ZSeries(c, self.K) for ms, c in grouped.items()}

    def order(self, k):
        return TensorElement._wrap(self.names, self.rank,
                                   {(0, ms): v for (kk, ms), v in self.data.items() if kk == k}, 0)

    def is_zero(self):
        return not self.data

    def _check(self, other):
        if not isinstance(other, TensorElement) or other.names != self.names:
            raise TypeError("tensors over different generator sets")
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        K = min(self.K, other.K)
        data = {key: v for key, v in self.data.items() if key[0] <= K}
        for key, v in other.data.items():
            if key[0] <= K:
                _acc(data, key, v)
        return TensorElement._wrap(self.names, self.rank, data, K)

    def __neg__(self):
        return TensorElement._wrap(self.names, self.rank, {k: -v for k, v in self.data.items()},
                                   self.K)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, TensorElement):
            raise TypeError("use EnvelopingAlgebra.tensor_multiply for tensor products")
        c = as_scalar(c)
        return TensorElement._wrap(self.names, self.rank,
                                   _clean({k: v * c for k, v in self.data.items()}), self.K)

    __rmul__ = __mul__

    def shift(self, k, K=None):
        K = self.K + k if K is None else K
        data = {(kk + k, ms): v for (kk, ms), v in self.data.items() if kk + k <= K}
        return TensorElement._wrap(self.names, self.rank, data, K)

    def truncate(self, K):
        K = min(K, self.K)
        return TensorElement._wrap(self.names, self.rank,
                                   {key: v for key, v in self.data.items() if key[0] <= K}, K)

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return (self.names, self.rank, self.data) == (other.names, other.rank, other.data)
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.data
        return NotImplemented

    def __hash__(self):
        return hash((self.names, self.rank, frozenset(self.data.items())))

    def sorted_terms(self):
        def key(kv):
            (k, ms), _ = kv
            return (k, sum(sum(m) for m in ms), tuple(monomial_key(m) for m in ms))
        return sorted(self.data.items(), key=key)

    def render(self):
        items = []
        for (k, ms), v in self.sorted_terms():
            body = " (x) ".join(render_monomial(m, self.names) for m in ms)
            items.append((v, k, body))
        return _render_terms(items)

    __str__ = render

    def __repr__(self):
        return f"TensorElement({self.render()!r})"


def _resolve(names, which):
    if isinstance(which, int):
        if not 0 <= which < len(names):
            raise IndexError(which)
        return which
    idx = getattr(which, "index", None)
    if isinstance(idx, int):
        return idx
    try:
        return names.index(which)
    except ValueError:
        raise KeyError(f"unknown generator {which!r}") from None


# -- commutator table and rewriting engine ---------------------------------------

class CommutatorTable:
    """Brackets ``[Y_i, Y_j]`` (i < j) as z-series of PBW elements.

    ``populated`` is the highest z-order at which every entry is known;
    ``math.inf`` marks a table with no corrections at any order (the
    classical enveloping algebra).
    """

    def __init__(self, names, entries=None, populated=math.inf):
        self.names = tuple(names)
        self.n = len(self.names)
        self.entries = {}
        for (i, j), data in (entries or {}).items():
            if i == j:
                continue
            sign = ONE
            if i > j:
                i, j, sign = j, i, -ONE
            data = _clean({(k, tuple(m)): as_scalar(v) * sign for (k, m), v in data.items()})
            if data:
                self.entries[(i, j)] = data
        self.populated = populated
        self._engine = None

    @classmethod
    def from_bialgebra(cls, b):
        """The classical table of a Lie (bi)algebra."""
        n = b.n
        entries = {}
        for (p, q), row in b.brackets.items():
            entries[(p, q)] = {(0, PBWMonomial.generator(n, r)): v for r, v in row.items()}
        return cls(b.names, entries)

    def raw(self, i, j):
        """Entry data for i < j (order-sorted dict, possibly empty)."""
        return self.entries.get((i, j), {})

    def bracket(self, i, j, K=None):
        i, j = _resolve(self.names, i), _resolve(self.names, j)
        if i == j:
            return UEAElement.zero(self.names, K or 0)
        if i < j:
            data = dict(self.raw(i, j))
        else:
            data = {k: -v for k, v in self.raw(j, i).items()}
        if K is None:
            K = self.populated if self.populated != math.inf else _max_order(data)
        return UEAElement(self.names, {k: v for k, v in data.items() if k[0] <= K}, K)

    def with_order(self, k, corrections):
        """Return a new table populated through ``k`` with the given order-k parts.

        ``corrections`` maps (i, j), i < j, to a ``{monomial: coefficient}`` dict.
        """
        entries = {key: {kk: v for kk, v in data.items() if kk[0] < k}
                   for key, data in self.entries.items()}
        for (i, j), poly in corrections.items():
            target = entries.setdefault((i, j), {})
            for m, v in poly.items():
                v = as_scalar(v)
                if not v.is_zero():
                    target[(k, tuple(m))] = v
        return CommutatorTable(self.names, entries, k)

    def provisional(self, k):
        """Same entries, declared complete through ``k`` (missing order-k parts read as 0)."""
        return CommutatorTable(self.names, self.entries, max(self.populated, k)
                               if self.populated != math.inf else math.inf)

    def truncated(self, k):
        entries = {key: {kk: v for kk, v in data.items() if kk[0] <= k}
                   for key, data in self.entries.items()}
        pop = k if self.populated == math.inf else min(k, self.populated)
        return CommutatorTable(self.names, entries, pop)

    def max_order(self):
        return max((k for data in self.entries.values() for k, _ in data), default=0)

    def __eq__(self, other):
        return (isinstance(other, CommutatorTable) and self.names == other.names
                and self.entries == other.entries)

    @property
    def engine(self):
        if self._engine is None:
            self._engine = _Engine(self)
        return self._engine


class _Engine:
    """Memoized normal ordering against one frozen table."""

    def __init__(self, table):
        self.table = table
        self.n = table.n
        self._gen = {}
        self._mono = {}

    def mono_gen(self, m, g, b):
        """Normal form of ``m * Y_g`` through relative z-order ``b``."""
        key = (m, g, b)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        h = len(m) - 1
        while h >= 0 and m[h] == 0:
            h -= 1
        if h <= g:
            res = {(0, _bump(m, g)): ONE}
        else:
            if b > self.table.populated:
                raise TableIncomplete(
                    f"rewrite needs [{self.table.names[g]}, {self.table.names[h]}] "
                    f"through z^{b}; table populated through z^{self.table.populated}")
            mp = _bump(m, h, -1)
            res = {}
            # m Y_g = (mp Y_g) Y_h - mp [Y_g, Y_h]
            for (k, mm), c in self.mono_gen(mp, g, b).items():
                for (k2, m2), c2 in self.mono_gen(mm, h, b - k).items():
                    _acc(res, (k + k2, m2), c * c2)
            for (k, cm), c in self.table.raw(g, h).items():
                if k > b:
                    continue
                for (k2, m2), c2 in self.mono_mono(mp, cm, b - k).items():
                    _acc(res, (k + k2, m2), -(c * c2))
        self._gen[key] = res
        return res

    def mono_mono(self, a, c, b):
        """Normal form of the product of two ordered monomials."""
        key = (a, c, b)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        cur = {(0, a): ONE}
        for i, e in enumerate(c):
            for _ in range(e):
                nxt = {}
                for (k, m), v in cur.items():
                    for (k2, m2), v2 in self.mono_gen(m, i, b - k).items():
                        _acc(nxt, (k + k2, m2), v * v2)
                cur = nxt
        self._mono[key] = cur
        return cur

    def mul(self, A, B, K):
        """Product of raw element dicts truncated at z-order K."""
        out = {}
        for (ka, ma), va in A.items():
            for (kb, mb), vb in B.items():
                b = K - ka - kb
                if b < 0:
                    continue
                v = va * vb
                for (k, m), c in self.mono_mono(ma, mb, b).items():
                    _acc(out, (ka + kb + k, m), v * c)
        return out

    def slots_mul(self, xs, ys, b):
        """Slot-wise product of two monomial tuples; yields (k, slots, coeff)."""
        partial = [(0, (), ONE)]
        for a, c in zip(xs, ys):
            nxt = []
            for k0, ms, v in partial:
                for (k, m), val in self.mono_mono(a, c, b - k0).items():
                    nxt.append((k0 + k, ms + (m,), v * val))
            partial = nxt
        return partial

    def tmul(self, S, T, K):
        out = {}
        for (ka, xs), va in S.items():
            for (kb, ys), vb in T.items():
                b = K - ka - kb
                if b < 0:
                    continue
                v = va * vb
                for k, ms, c in self.slots_mul(xs, ys, b):
                    _acc(out, (ka + kb + k, ms), v * c)
        return out


def _default_K(*elements):
    return min((e.K for e in elements), default=0)


def normal_order(word, table, D=None, K=None, coeff=1, rng=None):
    """Normal form of ``coeff * Y_{w_1} ... Y_{w_l}``.

    With ``rng`` given, adjacent inversions are rewritten in random order
    directly on words instead of through the memoized monomial products;
    both strategies must agree.
    """
    names = table.names
    letters = [_resolve(names, w) for w in word]
    if isinstance(coeff, ZSeries):
        start = {k: v for k, v in coeff.items()}
        K = coeff.K if K is None else K
    else:
        start = {0: as_scalar(coeff)}
    K = 0 if K is None else K
    if rng is None:
        eng = table.engine
        cur = {(k, _unit(len(names))): v for k, v in start.items() if k <= K and not v.is_zero()}
        for g in letters:
            nxt = {}
            for (k, m), v in cur.items():
                for (k2, m2), v2 in eng.mono_gen(m, g, K - k).items():
                    _acc(nxt, (k + k2, m2), v * v2)
            cur = nxt
        return UEAElement._wrap(names, cur, K, D)
    return _word_rewrite(letters, start, table, D, K, rng)


def _word_rewrite(letters, start, table, D, K, rng):
    n = table.n
    words = {}
    for k, v in start.items():
        if k <= K and not v.is_zero():
            words[(k, tuple(letters))] = v
    done = {}
    while words:
        (k, w), v = words.popitem()
        inversions = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
        if not inversions:
            m = [0] * n
            for g in w:
                m[g] += 1
            _acc(done, (k, tuple(m)), v)
            continue
        p = rng.choice(inversions)
        hi, lo = w[p], w[p + 1]
        if K - k > table.populated:
            raise TableIncomplete("rewrite beyond the populated z-order")
        swapped = w[:p] + (lo, hi) + w[p + 2:]
        _acc(words, (k, swapped), v)
        # Y_hi Y_lo = Y_lo Y_hi - [Y_lo, Y_hi]
        for (kc, cm), c in table.raw(lo, hi).items():
            if k + kc > K:
                continue
            mid = tuple(PBWMonomial(cm).letters())
            _acc(words, (k + kc, w[:p] + mid + w[p + 2:]), -(v * c))
    return UEAElement._wrap(table.names, done, K, D)


def multiply(a, b, table, D=None, K=None):
    K = _default_K(a, b) if K is None else K
    return UEAElement._wrap(table.names, table.engine.mul(a.data, b.data, K), K, D)


def commutator(a, b, table, D=None, K=None):
    K = _default_K(a, b) if K is None else K
    eng = table.engine
    data = eng.mul(a.data, b.data, K)
    for key, v in eng.mul(b.data, a.data, K).items():
        _acc(data, key, -v)
    return UEAElement._wrap(table.names, data, K, D)


def _splits(m):
    """All (left, right, multiplicity) with left + right = m."""
    ranges = [range(e + 1) for e in m]
    for left in product(*ranges):
        mult = 1
        for e, l in zip(m, left):
            mult *= comb(e, l)
        yield tuple(left), tuple(e - l for e, l in zip(m, left)), mult


def primitive_data(data):
    out = {}
    for (k, m), v in data.items():
        for left, right, mult in _splits(m):
            _acc(out, (k, (left, right)), v * mult)
    return out


def primitive_coproduct(a):
    """``Y -> Y (x) 1 + 1 (x) Y`` extended as an algebra map.

    Slots of an ordered monomial stay ordered, so no rewriting is needed.
    """
    return TensorElement._wrap(a.names, 2, primitive_data(a.data), a.K)


def flip(t):
    if t.rank != 2:
        raise RankMismatch("flip needs a rank-2 tensor")
    return TensorElement._wrap(t.names, 2, {(k, (b, a)): v for (k, (a, b)), v in t.data.items()},
                               t.K)


class CoproductEngine:
    """Algebra-map extension of a generator coproduct series, memoized.

    ``generator_data[i]`` is the raw rank-2 dict of Delta(Y_i) through
    z-order ``K_series``.
    """

    def __init__(self, table, generator_data, K_series):
        self.table = table
        self.eng = table.engine
        self.n = table.n
        self.gen = generator_data
        self.K_series = K_series
        self._memo = {}

    def monomial(self, m, b):
        key = (m, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if b > self.K_series:
            raise SeriesIncomplete(f"coproduct needed through z^{b}, series has z^{self.K_series}")
        h = len(m) - 1
        while h >= 0 and m[h] == 0:
            h -= 1
        if h < 0:
            u = _unit(self.n)
            res = {(0, (u, u)): ONE}
        else:
            rest = self.monomial(_bump(m, h, -1), b)
            gen = {key2: v for key2, v in self.gen[h].items() if key2[0] <= b}
            res = self.eng.tmul(rest, gen, b)
        self._memo[key] = res
        return res

    def element(self, data, K):
        out = {}
        for (k, m), v in data.items():
            if k > K:
                continue
            for (k2, ms), c in self.monomial(m, K - k).items():
                _acc(out, (k + k2, ms), v * c)
        return out

    def apply_slot(self, tdata, slot, K):
        """Apply the coproduct to one slot of a tensor, raising the rank by one."""
        out = {}
        for (k, ms), v in tdata.items():
            if k > K:
                continue
            for (k2, pair), c in self.monomial(ms[slot], K - k).items():
                new = ms[:slot] + pair + ms[slot + 1:]
                _acc(out, (k + k2, new), v * c)
        return out


def coproduct_extend(series, a, table, D=None, K=None):
    """Delta(a) for the algebra map determined by the generator coproducts."""
    K = a.K if K is None else K
    if series.K < K:
        raise SeriesIncomplete(f"series holds z^{series.K}, z^{K} requested")
    engine = series.engine(table)
    data = engine.element(a.data, K)
    if D is not None:
        data = {key: v for key, v in data.items() if all(sum(m) <= D for m in key[1])}
    return TensorElement._wrap(table.names, 2, data, K)
