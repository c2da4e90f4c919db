"""Finite-dimensional Lie bialgebras given by exact structure tensors.

Brackets ``[Y_p, Y_q] = f^r_{p,q} Y_r`` are stored on ordered pairs ``p < q``;
cocommutators ``delta(Y_p) = sum_{q<r} c_p^{q,r} Y_q ^ Y_r`` are stored on
wedge pairs ``q < r``, with ``Y_q ^ Y_r = Y_q (x) Y_r - Y_r (x) Y_q``.
Everything else is derived by antisymmetry on read.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .linsolve import solve
from .scalars import ONE, ZERO, as_scalar, format_scalar

__all__ = [
    "GeneratorId",
    "BracketTensor",
    "CocommutatorTensor",
    "LieBialgebra",
    "ValidationReport",
    "DuplicateEntry",
    "UnknownGenerator",
    "check_jacobi",
    "check_cocycle",
    "check_compatibility",
    "dualize",
    "change_basis",
    "drop_generators",
    "invert_matrix",
]


class DuplicateEntry(ValueError):
    pass


class UnknownGenerator(KeyError):
    pass


@dataclass(frozen=True)
class GeneratorId:
    index: int
    name: str

    def __str__(self):
        return self.name


def _clean(entries):
    out = {}
    for k, v in entries.items():
        v = as_scalar(v)
        if not v.is_zero():
            out[k] = v
    return out


class BracketTensor:
    """Antisymmetric ``f^r_{p,q}``, stored for ``p < q`` only."""

    def __init__(self, n, entries=None):
        self.n = n
        self._data = {}
        for (p, q), row in (entries or {}).items():
            self._set(p, q, row)

    def _set(self, p, q, row):
        if not (0 <= p < self.n and 0 <= q < self.n):
            raise IndexError(f"bracket index out of range: {(p, q)}")
        row = _clean(row)
        if p == q:
            if row:
                raise ValueError(f"[Y_{p}, Y_{p}] must vanish")
            return
        if p > q:
            p, q = q, p
            row = {r: -v for r, v in row.items()}
        if (p, q) in self._data:
            raise DuplicateEntry(f"duplicate bracket entry for pair {(p, q)}")
        if any(not 0 <= r < self.n for r in row):
            raise IndexError("bracket output index out of range")
        if row:
            self._data[(p, q)] = row

    def bracket(self, p, q):
        """``{r: f^r_{p,q}}`` for any ordered pair."""
        if p == q:
            return {}
        if p < q:
            return self._data.get((p, q), {})
        return {r: -v for r, v in self._data.get((q, p), {}).items()}

    def coeff(self, r, p, q):
        return self.bracket(p, q).get(r, ZERO)

    def items(self):
        return sorted(self._data.items())

    def full(self):
        """Dict over all ordered pairs (both orientations) with nonzero rows."""
        out = {}
        for (p, q), row in self._data.items():
            out[(p, q)] = row
            out[(q, p)] = {r: -v for r, v in row.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, BracketTensor) and self.n == other.n and self._data == other._data

    def is_zero(self):
        return not self._data


class CocommutatorTensor:
    """Skew ``c_p^{q,r}``, stored on wedge pairs ``q < r``."""

    def __init__(self, n, entries=None):
        self.n = n
        self._data = {}
        for p, row in (entries or {}).items():
            if not 0 <= p < n:
                raise IndexError(f"cocommutator index out of range: {p}")
            store = {}
            for (q, r), v in row.items():
                v = as_scalar(v)
                if not (0 <= q < n and 0 <= r < n):
                    raise IndexError("cocommutator wedge index out of range")
                if q == r:
                    if not v.is_zero():
                        raise ValueError("wedge Y_q ^ Y_q vanishes identically")
                    continue
                if q > r:
                    q, r, v = r, q, -v
                if (q, r) in store:
                    raise DuplicateEntry(f"duplicate cocommutator entry {(q, r)} for generator {p}")
                if not v.is_zero():
                    store[(q, r)] = v
            if store:
                self._data[p] = store

    def wedge(self, p):
        """``{(q, r): c_p^{q,r}}`` for ``q < r``."""
        return self._data.get(p, {})

    def tensor(self, p):
        """``{(q, r): c_p^{q,r}}`` over both orientations."""
        out = {}
        for (q, r), v in self.wedge(p).items():
            out[(q, r)] = v
            out[(r, q)] = -v
        return out

    def coeff(self, p, q, r):
        if q == r:
            return ZERO
        if q < r:
            return self.wedge(p).get((q, r), ZERO)
        return -self.wedge(p).get((r, q), ZERO)

    def items(self):
        return sorted((p, sorted(row.items())) for p, row in self._data.items())

    def scaled(self, factor):
        factor = as_scalar(factor)
        return CocommutatorTensor(
            self.n, {p: {k: v * factor for k, v in row.items()} for p, row in self._data.items()}
        )

    def __eq__(self, other):
        return isinstance(other, CocommutatorTensor) and self.n == other.n and self._data == other._data

    def is_zero(self):
        return not self._data


class LieBialgebra:
    """Generators plus exact bracket and cocommutator tensors."""

    def __init__(self, names, brackets, cocommutators=None):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        n = len(names)
        self.generators = tuple(GeneratorId(i, s) for i, s in enumerate(names))
        self.brackets = brackets if isinstance(brackets, BracketTensor) else BracketTensor(n, brackets)
        if cocommutators is None:
            cocommutators = CocommutatorTensor(n)
        elif not isinstance(cocommutators, CocommutatorTensor):
            cocommutators = CocommutatorTensor(n, cocommutators)
        self.cocommutators = cocommutators
        if self.brackets.n != n or self.cocommutators.n != n:
            raise ValueError("tensor dimension does not match generator count")

    @classmethod
    def from_names(cls, names, brackets=None, cocommutators=None):
        """Build from name-keyed dicts: ``{("J+", "J-"): {"J3": 1}}`` etc."""
        names = list(names)
        idx = {s: i for i, s in enumerate(names)}

        def look(s):
            try:
                return idx[s]
            except KeyError:
                raise UnknownGenerator(s) from None

        n = len(names)
        bt = BracketTensor(n)
        for (a, b), row in (brackets or {}).items():
            bt._set(look(a), look(b), {look(r): v for r, v in row.items()})
        cc = {}
        for p, row in (cocommutators or {}).items():
            pi = look(p)
            if pi in cc:
                raise DuplicateEntry(f"duplicate cocommutator for {p}")
            cc[pi] = {(look(q), look(r)): v for (q, r), v in row.items()}
        return cls(names, bt, CocommutatorTensor(n, cc))

    @property
    def n(self):
        return len(self.generators)

    @property
    def names(self):
        return [g.name for g in self.generators]

    def index(self, name):
        for g in self.generators:
            if g.name == name:
                return g.index
        raise UnknownGenerator(name)

    def bracket(self, a, b):
        """Name-keyed bracket ``{name: coeff}``."""
        row = self.brackets.bracket(self.index(a), self.index(b))
        return {self.generators[r].name: v for r, v in sorted(row.items())}

    def delta(self, a):
        """Name-keyed cocommutator ``{(q, r): c}`` over wedge pairs ``q < r``."""
        row = self.cocommutators.wedge(self.index(a))
        return {(self.generators[q].name, self.generators[r].name): v for (q, r), v in sorted(row.items())}

    def with_cocommutators(self, cocommutators):
        return LieBialgebra(self.names, self.brackets, cocommutators)

    def __eq__(self, other):
        return (isinstance(other, LieBialgebra) and self.names == other.names
                and self.brackets == other.brackets and self.cocommutators == other.cocommutators)

    def __repr__(self):
        return f"LieBialgebra({self.names})"

    def to_dict(self):
        """Name-keyed JSON-ready dict (the bialgebra input document schema)."""
        g = self.names
        br = {}
        for (p, q), row in self.brackets.items():
            br[f"{g[p]},{g[q]}"] = {g[r]: format_scalar(v) for r, v in sorted(row.items())}
        co = {}
        for p, row in self.cocommutators.items():
            co[g[p]] = {f"{g[q]},{g[r]}": format_scalar(v) for (q, r), v in row}
        return {"generators": g, "brackets": br, "cocommutator": co}


@dataclass
class ValidationReport:
    """Outcome of an axiom check; ``failures`` holds ``(key, residual)`` pairs."""

    check: str
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def __bool__(self):
        return self.passed

    def to_dict(self, names=None):
        def key_text(key):
            if names is None:
                return list(key)
            return [names[k] for k in key]

        out = []
        for key, residual in self.failures:
            if isinstance(residual, dict):
                res = {
                    (",".join(names[i] for i in k) if names and isinstance(k, tuple)
                     else (names[k] if names else str(k))): format_scalar(v)
                    for k, v in sorted(residual.items())
                }
            else:
                res = format_scalar(residual)
            out.append({"key": key_text(key), "residual": res})
        return {"check": self.check, "passed": self.passed, "failures": out}


def _add_into(acc, key, val):
    cur = acc.get(key)
    new = val if cur is None else cur + val
    if new.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = new


def _bracket_vec(bt, vec, q):
    """``[sum_p vec[p] Y_p, Y_q]`` as a coefficient dict."""
    out = {}
    for p, a in vec.items():
        for r, v in bt.bracket(p, q).items():
            _add_into(out, r, a * v)
    return out


def check_jacobi(b):
    """Cyclic sum ``[[Y_p,Y_q],Y_r] + [[Y_q,Y_r],Y_p] + [[Y_r,Y_p],Y_q]``."""
    bt = b.brackets if isinstance(b, LieBialgebra) else b
    report = ValidationReport("jacobi")
    for p, q, r in combinations(range(bt.n), 3):
        res = {}
        for x, y, w in ((p, q, r), (q, r, p), (r, p, q)):
            for k, v in _bracket_vec(bt, bt.bracket(x, y), w).items():
                _add_into(res, k, v)
        if res:
            report.failures.append(((p, q, r), res))
    return report


def _ad_on_tensor(bt, s, tensor):
    """``(ad_s (x) 1 + 1 (x) ad_s)`` applied to ``{(a, b): coeff}``."""
    out = {}
    for (a, b), v in tensor.items():
        for x, w in bt.bracket(s, a).items():
            _add_into(out, (x, b), v * w)
        for x, w in bt.bracket(s, b).items():
            _add_into(out, (a, x), v * w)
    return out


def check_cocycle(b):
    """``delta([Y_p,Y_q]) = ad_p delta(Y_q) - ad_q delta(Y_p)`` on g (x) g."""
    bt, cc = b.brackets, b.cocommutators
    report = ValidationReport("cocycle")
    for p, q in combinations(range(b.n), 2):
        res = {}
        for r, f in bt.bracket(p, q).items():
            for k, v in cc.tensor(r).items():
                _add_into(res, k, f * v)
        for k, v in _ad_on_tensor(bt, p, cc.tensor(q)).items():
            _add_into(res, k, -v)
        for k, v in _ad_on_tensor(bt, q, cc.tensor(p)).items():
            _add_into(res, k, v)
        if res:
            report.failures.append(((p, q), res))
    return report


def check_compatibility(b):
    """Index form ``c^{p,q}_r f^r_{s,t} = c^{p,r}_s f^q_{r,t} + c^{r,q}_s f^p_{r,t}
    + c^{p,r}_t f^q_{s,r} + c^{r,q}_t f^p_{s,r}``, reported per ``(p,q,s,t)``."""
    bt, cc = b.brackets, b.cocommutators
    n = b.n
    ctens = [cc.tensor(r) for r in range(n)]
    # c_x^{p,r} indexed by second slot r -> {p: c}
    by_second = []
    by_first = []
    for x in range(n):
        sec, fst = {}, {}
        for (p, r), v in ctens[x].items():
            sec.setdefault(r, {})[p] = v
            fst.setdefault(p, {})[r] = v
        by_second.append(sec)
        by_first.append(fst)
    report = ValidationReport("compatibility")
    for s, t in combinations(range(n), 2):
        res = {}
        for r, f in bt.bracket(s, t).items():
            for pq, v in ctens[r].items():
                _add_into(res, pq, f * v)
        for x, y, sign in ((s, t, 1), (t, s, -1)):
            # c^{p,r}_x f^q_{r,y}  and  c^{r,q}_x f^p_{r,y}   (f_{s,r} = -f_{r,s})
            for r, row in by_second[x].items():
                br = bt.bracket(r, y)
                for p, c in row.items():
                    for q, f in br.items():
                        _add_into(res, (p, q), -sign * c * f)
            for r, row in by_first[x].items():
                br = bt.bracket(r, y)
                for q, c in row.items():
                    for p, f in br.items():
                        _add_into(res, (p, q), -sign * c * f)
        for (p, q), v in sorted(res.items()):
            report.failures.append(((p, q, s, t), v))
    return report


def _dual_name(name):
    return name[:-1] if name.endswith("*") else name + "*"


def dualize(b, names=None):
    """Bialgebra on the dual generators: brackets from c, cocommutators from f."""
    n = b.n
    brackets = {}
    for r in range(n):
        for (p, q), v in b.cocommutators.wedge(r).items():
            brackets.setdefault((p, q), {})[r] = v
    cocom = {}
    for (q, r), row in b.brackets.items():
        for p, v in row.items():
            cocom.setdefault(p, {})[(q, r)] = v
    names = names or [_dual_name(s) for s in b.names]
    return LieBialgebra(names, BracketTensor(n, brackets), CocommutatorTensor(n, cocom))


def invert_matrix(matrix):
    """Exact inverse of a square matrix given as a list of rows."""
    n = len(matrix)
    cols = list(range(n))
    inv = [[ZERO] * n for _ in range(n)]
    # solve M^T-columns one unit vector at a time: M x = e_j
    eqs = [{c: as_scalar(matrix[r][c]) for c in range(n) if not as_scalar(matrix[r][c]).is_zero()}
           for r in range(n)]
    for j in range(n):
        rhs = [ONE if r == j else ZERO for r in range(n)]
        sol, free = solve(eqs, rhs, cols, rank_key=lambda c: c)
        if free:
            raise ZeroDivisionError("matrix is singular")
        for r in range(n):
            inv[r][j] = sol.get(r, ZERO)
    return inv


def change_basis(b, names, matrix):
    """Re-express ``b`` in new generators ``X_a = sum_p matrix[a][p] Y_p``."""
    n = b.n
    M = [[as_scalar(x) for x in row] for row in matrix]
    Minv = invert_matrix(M)

    def to_new(vec):
        out = {}
        for r, v in vec.items():
            for c in range(n):
                w = Minv[r][c]
                if not w.is_zero():
                    _add_into(out, c, v * w)
        return out

    brackets = {}
    for a, bb in combinations(range(n), 2):
        vec = {}
        for p in range(n):
            if M[a][p].is_zero():
                continue
            for q in range(n):
                if M[bb][q].is_zero():
                    continue
                for r, f in b.brackets.bracket(p, q).items():
                    _add_into(vec, r, M[a][p] * M[bb][q] * f)
        row = to_new(vec)
        if row:
            brackets[(a, bb)] = row
    cocom = {}
    for a in range(n):
        ten = {}
        for p in range(n):
            if M[a][p].is_zero():
                continue
            for (q, r), v in b.cocommutators.tensor(p).items():
                for x in range(n):
                    if Minv[q][x].is_zero():
                        continue
                    for y in range(n):
                        if Minv[r][y].is_zero():
                            continue
                        _add_into(ten, (x, y), M[a][p] * v * Minv[q][x] * Minv[r][y])
        wedge = {(x, y): v for (x, y), v in ten.items() if x < y}
        if wedge:
            cocom[a] = wedge
    return LieBialgebra(names, BracketTensor(n, brackets), CocommutatorTensor(n, cocom))


def drop_generators(b, drop):
    """Remove generators (by index), deleting every term that mentions them."""
    drop = set(drop)
    keep = [i for i in range(b.n) if i not in drop]
    pos = {old: new for new, old in enumerate(keep)}
    brackets = {}
    for (p, q), row in b.brackets.items():
        if p in drop or q in drop:
            continue
        row = {pos[r]: v for r, v in row.items() if r in pos}
        if row:
            brackets[(pos[p], pos[q])] = row
    cocom = {}
    for p, row in b.cocommutators.items():
        if p in drop:
            continue
        row = {(pos[q], pos[r]): v for (q, r), v in row if q in pos and r in pos}
        if row:
            cocom[pos[p]] = row
    return LieBialgebra([b.names[i] for i in keep], BracketTensor(len(keep), brackets),
                        CocommutatorTensor(len(keep), cocom))
