"""Recognition of truncated coefficient series as exp / sinh / cosh factors.

Every pattern is normalized to take the value 1 at z = 0, so the only fitted
parameter is the rate; a match is exact through the available order or it is
rejected.
"""
from __future__ import annotations

from dataclasses import dataclass

from .scalars import ONE, ZERO, ZSeries, as_scalar, series_eval_pattern
from .uea import _coeff_text, _is_negative, _resolve

__all__ = [
    "ClosedForm",
    "Unknown",
    "UNKNOWN",
    "FactoredCoproduct",
    "CommutatorForm",
    "recognize_factor",
    "factor_coproduct",
    "recognize_commutator",
    "recognize_result",
]

PATTERNS = ("exp", "sinh_over_arg", "cosh", "polynomial")


class Unknown:
    """No pattern matched; falsy, and rendered as ``unknown``."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "Unknown"

    def to_dict(self):
        return {"pattern": "unknown"}


UNKNOWN = Unknown()


@dataclass(frozen=True)
class ClosedForm:
    pattern: str
    rate: object
    argument: object = None  # GeneratorId / name, or None
    verified_order: int = 0

    def reference(self, K=None):
        return series_eval_pattern(self.pattern, self.rate, self.verified_order if K is None else K)

    def render(self, arg=None):
        arg = arg if arg is not None else (str(self.argument) if self.argument is not None else "x")
        r = as_scalar(self.rate)
        if self.pattern == "polynomial":
            return _coeff_text(r) if not _is_negative(r) else f"-{_coeff_text(-r)}"
        scaled = _rate_prefix(r) + f"z {arg}"
        if self.pattern == "exp":
            return f"exp({scaled})"
        if self.pattern == "cosh":
            return f"cosh({scaled})"
        denom = "z" if r == ONE else f"({_rate_prefix(r)}z)"
        return f"sinh({scaled})/{denom}"

    def to_dict(self):
        from .scalars import format_scalar
        return {
            "pattern": self.pattern,
            "rate": format_scalar(self.rate),
            "argument": None if self.argument is None else str(self.argument),
            "verified_order": self.verified_order,
        }


def _rate_prefix(r):
    if r == ONE:
        return ""
    if r == -ONE:
        return "-"
    return f"{_coeff_text(r) if not _is_negative(r) else '(-' + _coeff_text(-r).strip('()') + ')'} "


def _coeff_list(series, K):
    if isinstance(series, ZSeries):
        K = series.K if K is None else K
        return [series.coefficient(k) for k in range(K + 1)]
    coeffs = [as_scalar(c) for c in series]
    K = len(coeffs) - 1 if K is None else K
    coeffs = coeffs[:K + 1] + [ZERO] * max(0, K + 1 - len(coeffs))
    return coeffs


def _matches(pattern, rate, coeffs):
    ref = series_eval_pattern(pattern, rate, len(coeffs) - 1)
    return all(ref.coefficient(k) == c for k, c in enumerate(coeffs))


def recognize_factor(series, K=None, argument=None):
    """Fit ``series`` (coefficients by z-order) to a normalized pattern, exactly."""
    coeffs = _coeff_list(series, K)
    K = len(coeffs) - 1
    if K < 2 or coeffs[0] != ONE:
        return UNKNOWN
    if all(c.is_zero() for c in coeffs[1:]):
        return ClosedForm("polynomial", ONE, argument, K)
    candidates = []
    if not coeffs[1].is_zero():
        candidates.append(("exp", coeffs[1]))
    elif not coeffs[2].is_zero():
        root = (coeffs[2] * 6).sqrt()
        if root is not None:
            candidates.append(("sinh_over_arg", root))
        root = (coeffs[2] * 2).sqrt()
        if root is not None:
            candidates.append(("cosh", root))
    for pattern, rate in candidates:
        if _matches(pattern, rate, coeffs):
            return ClosedForm(pattern, rate, argument, K)
    return UNKNOWN


@dataclass(frozen=True)
class FactoredCoproduct:
    """``F(z H) (x) Y + Y (x) G(z H)`` for a generator Y."""

    generator: str
    argument: str | None
    left: ClosedForm
    right: ClosedForm

    def render(self):
        arg = self.argument or "x"
        y = self.generator
        return f"{self.left.render(arg)} (x) {y} + {y} (x) {self.right.render(arg)}"

    def to_dict(self):
        return {"generator": self.generator, "argument": self.argument,
                "left": self.left.to_dict(), "right": self.right.to_dict(),
                "rendered": self.render()}


def _is_primitive(series, h):
    return all(not series.orders[h][k] for k in range(1, series.K + 1))


def factor_coproduct(series, generator):
    """Detect ``c_k H^k (x) Y + d_k Y (x) H^k`` at every order, H primitive."""
    names = series.names
    n = len(names)
    y = _resolve(names, generator)
    Y = tuple(1 if j == y else 0 for j in range(n))
    u = (0,) * n
    H = None
    left, right = [], []
    for k in range(series.K + 1):
        terms = {pair: v for (_, pair), v in series.orders[y][k].items()}
        if k == 0:
            if terms != {(Y, u): ONE, (u, Y): ONE}:
                return None
            left.append(ONE)
            right.append(ONE)
            continue
        for m1, m2 in terms:
            other = m1 if m2 == Y else m2 if m1 == Y else None
            if other is None or sum(other) != k:
                return None
            support = [j for j, e in enumerate(other) if e]
            if len(support) != 1:
                return None
            if H is None:
                H = support[0]
            elif support[0] != H:
                return None
        if H is None:
            left.append(ZERO)
            right.append(ZERO)
            continue
        Hk = tuple(k if j == H else 0 for j in range(n))
        left.append(terms.get((Hk, Y), ZERO))
        right.append(terms.get((Y, Hk), ZERO))
        if len(terms) != sum(1 for p in ((Hk, Y), (Y, Hk)) if p in terms):
            return None
    if H is not None and not _is_primitive(series, H):
        return None
    arg = names[H] if H is not None else None
    lf = recognize_factor(left, argument=arg)
    rf = recognize_factor(right, argument=arg)
    if not lf or not rf:
        return None
    return FactoredCoproduct(names[y], arg, lf, rf)


@dataclass(frozen=True)
class CommutatorForm:
    """``[A, B] = scale * H * F(z H)`` with F normalized."""

    pair: tuple
    scale: object
    argument: str
    form: ClosedForm

    def render(self):
        s = as_scalar(self.scale)
        if self.form.pattern == "polynomial":
            body = self.argument
        elif self.form.pattern == "sinh_over_arg":
            body = self.form.render(self.argument)
        else:
            body = f"{self.argument} {self.form.render(self.argument)}"
        if s == ONE:
            return body
        if s == -ONE:
            return f"-{body}"
        return f"{_coeff_text(s)} {body}"

    def to_dict(self):
        from .scalars import format_scalar
        d = self.form.to_dict()
        d.update({"pair": list(self.pair), "scale": format_scalar(self.scale),
                  "rendered": self.render()})
        return d


def recognize_commutator(table, i, j, K):
    """Recognize ``[Y_i, Y_j] = c H F(z H)`` from the order-by-order table entries."""
    names = table.names
    i, j = _resolve(names, i), _resolve(names, j)
    el = table.bracket(i, j, K)
    H = None
    coeffs = []
    for k in range(K + 1):
        part = {m: v for (kk, m), v in el.data.items() if kk == k}
        if len(part) > 1:
            return UNKNOWN
        if not part:
            coeffs.append(ZERO)
            continue
        (m, v), = part.items()
        support = [g for g, e in enumerate(m) if e]
        if len(support) != 1 or sum(m) != k + 1:
            return UNKNOWN
        if H is None:
            H = support[0]
        elif H != support[0]:
            return UNKNOWN
        coeffs.append(v)
    if H is None or coeffs[0].is_zero():
        return UNKNOWN
    scale = coeffs[0]
    form = recognize_factor([c / scale for c in coeffs], argument=names[H])
    if not form:
        return UNKNOWN
    return CommutatorForm((names[i], names[j]), scale, names[H], form)


def recognize_result(result):
    """Closed forms for every coproduct and every nonzero bracket of a result."""
    out = {}
    series = result.coproducts
    names = series.names
    for i, name in enumerate(names):
        out[f"Delta({name})"] = factor_coproduct(series, i) or UNKNOWN
    table = result.commutators
    for (i, j) in sorted(table.entries):
        out[f"[{names[i]},{names[j]}]"] = recognize_commutator(table, i, j, result.K)
    return out
