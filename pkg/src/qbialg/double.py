"""Drinfeld doubles: crossed brackets, pairing checks and concrete families."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .bialgebra import (
    BracketTensor,
    CocommutatorTensor,
    LieBialgebra,
    ValidationReport,
    change_basis,
    check_compatibility,
    check_cocycle,
    check_jacobi,
    drop_generators,
    dualize,
    invert_matrix,
)
from .scalars import I, ONE, R2, ZERO, as_scalar

__all__ = [
    "DrinfeldDouble",
    "DoubleFamilySpec",
    "InvalidBialgebra",
    "UnsupportedFamily",
    "NotCentral",
    "build_double",
    "check_pairing_invariance",
    "is_self_dual",
    "build_family",
    "parse_family",
    "canonical_cocommutator_gl",
    "gl_commutators",
    "restrict_trivial_t",
    "rescaled_double",
    "su2_standard",
]

INV_R2 = R2 * Fraction(1, 2)  # 1/sqrt2


class InvalidBialgebra(ValueError):
    def __init__(self, message, reports=()):
        super().__init__(message)
        self.reports = list(reports)


class UnsupportedFamily(ValueError):
    pass


class NotCentral(ValueError):
    pass


@dataclass
class DrinfeldDouble:
    """The double ``g + g*`` with Z-half generators first, then the z-half.

    ``physical`` optionally carries the same Lie bialgebra in the H/I/F (or
    J/I) basis; ``basis_map[a][p]`` writes physical generator ``a`` in terms of
    generator ``p`` of ``full``.
    """

    half_plus: LieBialgebra
    half_minus: LieBialgebra
    full: LieBialgebra
    pairing: list
    physical: LieBialgebra | None = None
    basis_map: list | None = None
    family: str | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.half_plus.n


@dataclass(frozen=True)
class DoubleFamilySpec:
    family: str
    n: int = 1

    def __post_init__(self):
        if self.family == "gl_tn" and self.n < 1:
            raise ValueError("gl family needs n >= 1")


def _identity_pairing(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def build_double(g, names_minus=None, check=True):
    """Crossed brackets ``[z^p, Z_q] = f^p_{q,r} z^r - c_q^{p,r} Z_r`` and the
    double cocommutator ``delta(Z_p) = -c_p^{q,r} Z_q Z_r``,
    ``delta(z^p) = f^p_{q,r} z^q z^r``."""
    if check:
        reports = [check_jacobi(g), check_cocycle(g), check_compatibility(g)]
        if not all(reports):
            bad = ", ".join(r.check for r in reports if not r)
            raise InvalidBialgebra(f"input fails: {bad}", reports)
    n = g.n
    half_minus = dualize(g, names_minus)
    f, c = g.brackets, g.cocommutators
    brackets = {}
    for (p, q), row in f.items():
        brackets[(p, q)] = dict(row)
    for (p, q), row in half_minus.brackets.items():
        brackets[(n + p, n + q)] = {n + r: v for r, v in row.items()}
    for p in range(n):
        for q in range(n):
            row = {}
            # [z^p, Z_q] = f^p_{q,r} z^r - c_q^{p,r} Z_r ; stored as [Z_q, z^p] = -(...)
            for r in range(n):
                fv = f.coeff(p, q, r)
                if not fv.is_zero():
                    row[n + r] = row.get(n + r, ZERO) - fv
                cv = c.coeff(q, p, r)
                if not cv.is_zero():
                    row[r] = row.get(r, ZERO) + cv
            row = {k: v for k, v in row.items() if not v.is_zero()}
            if row:
                brackets[(q, n + p)] = row
    cocom = {}
    for p in range(n):
        row = {k: -v for k, v in c.wedge(p).items()}
        if row:
            cocom[p] = row
    for (q, r), frow in f.items():
        for p, v in frow.items():
            cocom.setdefault(n + p, {})[(n + q, n + r)] = v
    full = LieBialgebra(g.names + half_minus.names, BracketTensor(2 * n, brackets),
                        CocommutatorTensor(2 * n, cocom))
    return DrinfeldDouble(g, half_minus, full, _identity_pairing(n))


def check_pairing_invariance(d):
    """``<[x,y], w> + <y, [x,w]> = 0`` over all basis triples of the double."""
    n = d.n
    bt = d.full.brackets
    N = 2 * n
    partner = lambda a: a + n if a < n else a - n  # noqa: E731
    report = ValidationReport("pairing_invariance")
    for x in range(N):
        for y in range(N):
            bxy = bt.bracket(x, y)
            for w in range(N):
                # <[x,y], w> picks the coefficient of w's partner
                val = bxy.get(partner(w), ZERO) * _pair_coeff(d, partner(w), w)
                bxw = bt.bracket(x, w)
                val = val + bxw.get(partner(y), ZERO) * _pair_coeff(d, y, partner(y))
                if not val.is_zero():
                    report.failures.append(((x, y, w), val))
    return report


def _pair_coeff(d, a, b):
    n = d.n
    if a < n <= b:
        return as_scalar(d.pairing[a][b - n])
    if b < n <= a:
        return as_scalar(d.pairing[b][a - n])
    return ZERO


def is_self_dual(d):
    """``c_p^{q,r} = -f^p_{q,r}`` on the Z-half.

    For a double the cocommutator constants are also read back from the
    crossed brackets of the full algebra, so a double whose mixed brackets
    disagree with its halves is not self-dual.
    """
    g = d.half_plus if isinstance(d, DrinfeldDouble) else d
    n = g.n
    f = g.brackets
    for q, r in combinations(range(n), 2):
        row = f.bracket(q, r)
        for p in range(n):
            if g.cocommutators.coeff(p, q, r) != -row.get(p, ZERO):
                return False
    if not isinstance(d, DrinfeldDouble):
        return True
    full = d.full.brackets
    for q in range(n):
        for p in range(n):
            row = full.bracket(q, n + p)
            for r in range(n):
                # [Z_q, z^p] = c_q^{p,r} Z_r - f^p_{q,r} z^r
                if row.get(r, ZERO) != -f.coeff(q, p, r):
                    return False
                if row.get(n + r, ZERO) != -f.coeff(p, q, r):
                    return False
    return True


# -- concrete families -----------------------------------------------------------

def su2_standard():
    """su(2) with [J3,J+-] = +-J+-, [J+,J-] = J3 and delta(J+-) = 1/2 J3 ^ J+-."""
    half = Fraction(1, 2)
    return LieBialgebra.from_names(
        ["J3", "J+", "J-"],
        {("J3", "J+"): {"J+": 1}, ("J3", "J-"): {"J-": -1}, ("J+", "J-"): {"J3": 1}},
        {"J+": {("J3", "J+"): half}, "J-": {("J3", "J-"): half}},
    )


def _self_dual_half(names, brackets):
    n = len(names)
    bt = BracketTensor(n, brackets)
    cocom = {}
    for (q, r), row in bt.items():
        for p, v in row.items():
            cocom.setdefault(p, {})[(q, r)] = -v
    return LieBialgebra(names, bt, CocommutatorTensor(n, cocom))


def _attach_physical(d, names, basis_map):
    d.basis_map = [[as_scalar(x) for x in row] for row in basis_map]
    d.physical = change_basis(d.full, names, d.basis_map)
    return d


def _su2_t1():
    half_plus = _self_dual_half(["Z1", "Z2"], {(0, 1): {1: INV_R2}})
    d = build_double(half_plus, names_minus=["z1", "z2"])
    d.family = "su2+t1"
    # full order: Z1, Z2, z1, z2
    rows = [
        [INV_R2, ZERO, INV_R2, ZERO],            # J3 = (Z1 + z1)/sqrt2
        [ZERO, ONE, ZERO, ZERO],                 # J+ = Z2
        [ZERO, ZERO, ZERO, ONE],                 # J- = z2
        [-I * INV_R2, ZERO, I * INV_R2, ZERO],   # I  = -i (Z1 - z1)/sqrt2
    ]
    return _attach_physical(d, ["J3", "J+", "J-", "I"], rows)


def _gl_labels(N):
    sep = "" if N < 10 else "_"
    roots = [(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    return sep, roots


def _gl_tn(n):
    N = n + 1
    sep, roots = _gl_labels(N)
    names = [f"Z{i}" for i in range(1, N + 1)] + [f"Z{i}{sep}{j}" for i, j in roots]
    pos = {("C", i): i - 1 for i in range(1, N + 1)}
    for k, ij in enumerate(roots):
        pos[ij] = N + k
    brackets = {}
    for i in range(1, N + 1):
        for (j, k) in roots:
            coeff = Fraction((i == j) - (i == k))
            if coeff:
                brackets[(pos[("C", i)], pos[(j, k)])] = {pos[(j, k)]: INV_R2 * coeff}
    for a, b in combinations(roots, 2):
        (i, j), (k, l) = a, b
        row = {}
        if j == k:
            row[pos[(i, l)]] = ONE
        if i == l:
            row[pos[(k, j)]] = row.get(pos[(k, j)], ZERO) - ONE
        if row:
            brackets[(pos[a], pos[b])] = row
    half_plus = _self_dual_half(names, brackets)
    minus_names = [s.replace("Z", "z", 1) for s in names]
    d = build_double(half_plus, names_minus=minus_names)
    d.family = f"gl:{N}"
    m = len(names)
    # physical order: H_i, F_ij (i<j), F_ji (i<j), I_i
    phys = ([f"H{i}" for i in range(1, N + 1)] + [f"F{i}{sep}{j}" for i, j in roots]
            + [f"F{j}{sep}{i}" for i, j in roots] + [f"I{i}" for i in range(1, N + 1)])
    rows = []
    for i in range(1, N + 1):
        row = [ZERO] * (2 * m)
        row[pos[("C", i)]] = INV_R2
        row[m + pos[("C", i)]] = INV_R2
        rows.append(row)
    for ij in roots:
        row = [ZERO] * (2 * m)
        row[pos[ij]] = ONE
        rows.append(row)
    for ij in roots:
        row = [ZERO] * (2 * m)
        row[m + pos[ij]] = ONE
        rows.append(row)
    for i in range(1, N + 1):
        row = [ZERO] * (2 * m)
        row[pos[("C", i)]] = -I * INV_R2
        row[m + pos[("C", i)]] = I * INV_R2
        rows.append(row)
    return _attach_physical(d, phys, rows)


def build_family(spec):
    if isinstance(spec, str):
        spec = parse_family(spec)
    if spec.family == "su2_t1":
        return _su2_t1()
    if spec.family == "gl_tn":
        return _gl_tn(spec.n)
    raise UnsupportedFamily(f"unsupported double family {spec.family!r}")


def parse_family(name):
    """``"su2+t1"`` or ``"gl:N"`` (N = matrix size, N >= 2)."""
    if name == "su2+t1":
        return DoubleFamilySpec("su2_t1")
    if name.startswith("gl:"):
        try:
            N = int(name[3:])
        except ValueError:
            raise UnsupportedFamily(f"bad gl size in {name!r}") from None
        if N < 2:
            raise UnsupportedFamily("gl:N needs N >= 2")
        return DoubleFamilySpec("gl_tn", N - 1)
    raise UnsupportedFamily(f"unknown family {name!r}")


def gl_commutators(n):
    """gl(n+1) + t_{n+1} brackets in the physical basis, from matrix units.

    ``[E_ij, E_kl] = delta_jk E_il - delta_li E_kj`` with ``E_ii = H_i``;
    the ``I_i`` are central.  Returns a bialgebra with zero cocommutator.
    """
    N = n + 1
    sep, roots = _gl_labels(N)
    phys = ([f"H{i}" for i in range(1, N + 1)] + [f"F{i}{sep}{j}" for i, j in roots]
            + [f"F{j}{sep}{i}" for i, j in roots] + [f"I{i}" for i in range(1, N + 1)])
    idx = {}
    for i in range(1, N + 1):
        idx[(i, i)] = i - 1
    for k, (i, j) in enumerate(roots):
        idx[(i, j)] = N + k
        idx[(j, i)] = N + len(roots) + k
    units = sorted(idx)
    brackets = {}
    for a, b in combinations(units, 2):
        (i, j), (k, l) = a, b
        row = {}
        if j == k:
            row[idx[(i, l)]] = row.get(idx[(i, l)], ZERO) + ONE
        if l == i:
            row[idx[(k, j)]] = row.get(idx[(k, j)], ZERO) - ONE
        row = {r: v for r, v in row.items() if not v.is_zero()}
        if row:
            key = (idx[a], idx[b])
            brackets[key] = row
    return LieBialgebra(phys, BracketTensor(len(phys), brackets))


def canonical_cocommutator_gl(n):
    """The canonical cocommutator on gl(n+1) + t_{n+1}, physical basis order."""
    N = n + 1
    sep, roots = _gl_labels(N)
    phys = ([f"H{i}" for i in range(1, N + 1)] + [f"F{i}{sep}{j}" for i, j in roots]
            + [f"F{j}{sep}{i}" for i, j in roots] + [f"I{i}" for i in range(1, N + 1)])
    pos = {s: k for k, s in enumerate(phys)}
    H = lambda i: pos[f"H{i}"]  # noqa: E731
    Iv = lambda i: pos[f"I{i}"]  # noqa: E731
    F = lambda i, j: pos[f"F{i}{sep}{j}"]  # noqa: E731
    half = Fraction(1, 2)
    cocom = {}

    def wedge(acc, a, b, v):
        # accumulate v * (a ^ b)
        if a == b:
            return
        if a > b:
            a, b, v = b, a, -v
        acc[(a, b)] = acc.get((a, b), ZERO) + v

    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i == j:
                continue
            acc = {}
            f = F(i, j)
            s = -1 if i < j else 1
            # s/2 F_ij ^ (H_i - H_j) - i/2 F_ij ^ (I_i - I_j)
            wedge(acc, f, H(i), as_scalar(half * s))
            wedge(acc, f, H(j), as_scalar(-half * s))
            wedge(acc, f, Iv(i), -I * half)
            wedge(acc, f, Iv(j), I * half)
            if i < j:
                for k in range(i + 1, j):
                    wedge(acc, F(i, k), F(k, j), ONE)
            else:
                for k in range(j + 1, i):
                    wedge(acc, F(i, k), F(k, j), -ONE)
            acc = {k: v for k, v in acc.items() if not v.is_zero()}
            if acc:
                cocom[f] = acc
    return CocommutatorTensor(len(phys), cocom)


def restrict_trivial_t(d, t_generators):
    """Drop central generators (trivial representation of the t sector)."""
    b = d.physical if isinstance(d, DrinfeldDouble) and d.physical is not None else d
    if isinstance(d, DrinfeldDouble) and d.physical is not None:
        if any(t not in d.physical.names for t in t_generators):
            b = d.full
    elif isinstance(d, DrinfeldDouble):
        b = d.full
    drop = []
    for t in t_generators:
        ti = b.index(t)
        for q in range(b.n):
            if b.brackets.bracket(ti, q):
                raise NotCentral(f"{t} has a nonzero bracket with {b.names[q]}")
        drop.append(ti)
    return drop_generators(b, drop)


def rescaled_double(d, name, k):
    """Rescale physical generator ``name -> k * name`` and re-run the change of
    basis verbatim; returns the resulting (possibly broken) double structure."""
    if d.physical is None:
        raise ValueError("double has no physical basis")
    phys = d.physical
    a = phys.index(name)
    m = phys.n
    diag = [[(as_scalar(k) if (i == j == a) else (ONE if i == j else ZERO)) for j in range(m)]
            for i in range(m)]
    scaled = change_basis(phys, phys.names, diag)
    # full generators written in physical ones (verbatim change of basis)
    inv = invert_matrix(d.basis_map)
    full = change_basis(scaled, d.full.names, inv)
    n = d.n
    plus = _restrict_half(full, range(n), sign=-1)
    minus = _restrict_half(full, range(n, 2 * n), sign=1)
    return DrinfeldDouble(plus, minus, full, _identity_pairing(n), family=d.family,
                          meta={"rescaled": (name, str(k))})


def _restrict_half(full, indices, sign):
    indices = list(indices)
    pos = {old: new for new, old in enumerate(indices)}
    brackets = {}
    for (p, q), row in full.brackets.items():
        if p in pos and q in pos:
            sub = {pos[r]: v for r, v in row.items() if r in pos}
            if sub:
                brackets[(pos[p], pos[q])] = sub
    cocom = {}
    for p, row in full.cocommutators.items():
        if p in pos:
            sub = {(pos[q], pos[r]): v * sign for (q, r), v in row if q in pos and r in pos}
            if sub:
                cocom[pos[p]] = sub
    n = len(indices)
    return LieBialgebra([full.names[i] for i in indices], BracketTensor(n, brackets),
                        CocommutatorTensor(n, cocom))
