"""Exact coefficients: the field Q(i, sqrt2) and truncated power series in z.

An :class:`AlgebraicScalar` is ``a + b*r2 + c*i + d*i*r2`` with rational
components.  A :class:`ZSeries` is a sparse truncated series in the
deformation parameter ``z`` whose coefficients are algebraic scalars.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

__all__ = [
    "AlgebraicScalar",
    "ZSeries",
    "DivisionByZero",
    "UnknownPattern",
    "ONE",
    "ZERO",
    "I",
    "R2",
    "as_scalar",
    "scalar_arith",
    "series_mul",
    "series_eval_pattern",
    "parse_scalar",
    "format_scalar",
]


class DivisionByZero(ZeroDivisionError):
    pass


class UnknownPattern(ValueError):
    pass


_F0 = Fraction(0)
_F1 = Fraction(1)


class AlgebraicScalar:
    """Element ``a + b*sqrt2 + c*i + d*i*sqrt2`` of Q(i, sqrt2)."""

    __slots__ = ("a", "b", "c", "d", "_rational", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)
        self._rational = not (self.b or self.c or self.d)
        self._hash = None

    @classmethod
    def _raw(cls, a, b, c, d):
        # components already Fractions
        x = object.__new__(cls)
        x.a, x.b, x.c, x.d = a, b, c, d
        x._rational = not (b or c or d)
        x._hash = None
        return x

    @classmethod
    def rational(cls, q):
        return cls._raw(Fraction(q), _F0, _F0, _F0)

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return self._rational and not self.a

    def is_rational(self):
        return self._rational

    def __bool__(self):
        return not self.is_zero()

    def components(self):
        return (self.a, self.b, self.c, self.d)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, AlgebraicScalar):
            other = as_scalar(other)
        if self._rational and other._rational:
            return AlgebraicScalar._raw(self.a + other.a, _F0, _F0, _F0)
        return AlgebraicScalar._raw(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar._raw(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        if not isinstance(other, AlgebraicScalar):
            other = as_scalar(other)
        if self._rational and other._rational:
            return AlgebraicScalar._raw(self.a - other.a, _F0, _F0, _F0)
        return AlgebraicScalar._raw(
            self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d
        )

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgebraicScalar):
            other = as_scalar(other)
        if other._rational:
            q = other.a
            if self._rational:
                return AlgebraicScalar._raw(self.a * q, _F0, _F0, _F0)
            return AlgebraicScalar._raw(self.a * q, self.b * q, self.c * q, self.d * q)
        if self._rational:
            q = self.a
            return AlgebraicScalar._raw(q * other.a, q * other.b, q * other.c, q * other.d)
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return AlgebraicScalar._raw(
            a * e + 2 * b * f - c * g - 2 * d * h,
            a * f + b * e - c * h - d * g,
            a * g + c * e + 2 * b * h + 2 * d * f,
            a * h + d * e + b * g + c * f,
        )

    __rmul__ = __mul__

    def conjugate(self):
        """Complex conjugate (i -> -i)."""
        return AlgebraicScalar._raw(self.a, self.b, -self.c, -self.d)

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(i, sqrt2)")
        if self._rational:
            return AlgebraicScalar._raw(1 / self.a, _F0, _F0, _F0)
        # x = P + iQ with P, Q in Q(sqrt2); 1/x = (P - iQ) / (P^2 + Q^2)
        p0, p1, q0, q1 = self.a, self.b, self.c, self.d
        u = p0 * p0 + 2 * p1 * p1 + q0 * q0 + 2 * q1 * q1
        v = 2 * p0 * p1 + 2 * q0 * q1
        den = u * u - 2 * v * v
        # 1/(u + v r2) = (u - v r2) / den
        nu, nv = u / den, -v / den
        # (p0 + p1 r2 - i(q0 + q1 r2)) * (nu + nv r2)
        return AlgebraicScalar._raw(
            p0 * nu + 2 * p1 * nv,
            p0 * nv + p1 * nu,
            -(q0 * nu + 2 * q1 * nv),
            -(q0 * nv + q1 * nu),
        )

    def __truediv__(self, other):
        if not isinstance(other, AlgebraicScalar):
            other = as_scalar(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self):
        """Square root inside the field when it has an obvious form, else None.

        Handles ``q``, ``2q``, ``-q`` and ``-2q`` for ``q`` a rational square;
        the returned root has a non-negative leading component.
        """
        if not self._rational:
            return None
        q = self.a
        if q == 0:
            return ZERO
        sign = 1 if q > 0 else -1
        q = abs(q)
        for scale, half in ((1, False), (Fraction(1, 2), True)):
            r = _rational_sqrt(q * scale)
            if r is None:
                continue
            # sqrt(q) = r / sqrt(scale); scale 1/2 -> r * r2
            if sign > 0:
                return AlgebraicScalar(0, r) if half else AlgebraicScalar(r)
            return AlgebraicScalar(0, 0, 0, r) if half else AlgebraicScalar(0, 0, r)
        return None

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, AlgebraicScalar):
            return (self.a == other.a and self.b == other.b
                    and self.c == other.c and self.d == other.d)
        if isinstance(other, (int, Fraction)):
            return self._rational and self.a == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self._rational:
                self._hash = hash(self.a)
            else:
                self._hash = hash((self.a, self.b, self.c, self.d))
        return self._hash

    def __repr__(self):
        return f"AlgebraicScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _rational_sqrt(q):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


ZERO = AlgebraicScalar()
ONE = AlgebraicScalar(1)
I = AlgebraicScalar(0, 0, 1)
R2 = AlgebraicScalar(0, 1)


def as_scalar(x):
    if isinstance(x, AlgebraicScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return AlgebraicScalar._raw(Fraction(x), _F0, _F0, _F0)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to AlgebraicScalar")


def scalar_arith(x, y, op):
    """Apply ``op`` in {"add", "sub", "mul", "div"}."""
    x, y = as_scalar(x), as_scalar(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# -- text encoding ------------------------------------------------------------

_UNITS = ("", "*r2", "*i", "*i*r2")


def _format_fraction(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x):
    """Render as e.g. ``"1/2 + 1/2*r2"``; inverse of :func:`parse_scalar`."""
    x = as_scalar(x)
    parts = []
    for comp, unit in zip(x.components(), _UNITS):
        if not comp:
            continue
        body = _format_fraction(abs(comp)) + unit
        if not parts:
            parts.append(("-" if comp < 0 else "") + body)
        else:
            parts.append((" - " if comp < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


_TERM_RE = re.compile(
    r"([+-]?)(?:(\d+)(?:/(\d+))?(\*i)?(\*r2)?|(i)(\*r2)?|(r2))"
)


def parse_scalar(text):
    """Parse the ``p/q``, ``p/q*r2``, ``p/q*i``, ``p/q*i*r2`` sum format."""
    if not isinstance(text, str):
        raise TypeError("scalar text must be a string")
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty scalar string")
    comps = [Fraction(0)] * 4
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise ValueError(f"cannot parse scalar {text!r} near {s[pos:]!r}")
        sign, num, den, star_i, star_r2, bare_i, bare_i_r2, bare_r2 = m.groups()
        if num is not None:
            if den is not None and int(den) == 0:
                raise ValueError(f"zero denominator in scalar {text!r}")
            coeff = Fraction(int(num), int(den) if den else 1)
            has_i, has_r2 = bool(star_i), bool(star_r2)
        else:
            coeff = Fraction(1)
            has_i, has_r2 = bool(bare_i), bool(bare_i_r2 or bare_r2)
        if sign == "-":
            coeff = -coeff
        comps[(2 if has_i else 0) + (1 if has_r2 else 0)] += coeff
        pos = m.end()
    return AlgebraicScalar(*comps)


# -- truncated series ----------------------------------------------------------

class ZSeries:
    """Sparse series ``sum_k c_k z^k`` truncated at order ``K`` (inclusive)."""

    __slots__ = ("K", "_coeffs")

    def __init__(self, coeffs=None, K=0):
        if K < 0:
            raise ValueError("truncation order must be non-negative")
        self.K = K
        store = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for k, c in items:
                if k < 0:
                    raise ValueError("negative z-order")
                if k > K:
                    continue
                c = as_scalar(c)
                if not c.is_zero():
                    store[k] = c
        self._coeffs = store

    @classmethod
    def constant(cls, c, K):
        return cls({0: c}, K)

    def coefficient(self, k):
        return self._coeffs.get(k, ZERO)

    def __getitem__(self, k):
        return self.coefficient(k)

    def items(self):
        return sorted(self._coeffs.items())

    def coefficients(self):
        """Dense list of coefficients for orders 0..K."""
        return [self.coefficient(k) for k in range(self.K + 1)]

    def is_zero(self):
        return not self._coeffs

    def _other(self, other):
        if isinstance(other, ZSeries):
            return other
        return ZSeries.constant(as_scalar(other), self.K)

    def __add__(self, other):
        other = self._other(other)
        K = min(self.K, other.K)
        out = {k: c for k, c in self._coeffs.items() if k <= K}
        for k, c in other._coeffs.items():
            if k <= K:
                out[k] = out[k] + c if k in out else c
        return ZSeries(out, K)

    __radd__ = __add__

    def __neg__(self):
        return ZSeries({k: -c for k, c in self._coeffs.items()}, self.K)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __mul__(self, other):
        if not isinstance(other, ZSeries):
            c = as_scalar(other)
            return ZSeries({k: v * c for k, v in self._coeffs.items()}, self.K)
        K = min(self.K, other.K)
        out = {}
        for i, x in self._coeffs.items():
            for j, y in other._coeffs.items():
                if i + j > K:
                    continue
                p = x * y
                out[i + j] = out[i + j] + p if i + j in out else p
        return ZSeries(out, K)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.K == other.K and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.K, tuple(self.items())))

    def __repr__(self):
        if not self._coeffs:
            return f"ZSeries(0, K={self.K})"
        terms = []
        for k, c in self.items():
            zpart = "" if k == 0 else (" z" if k == 1 else f" z^{k}")
            terms.append(f"({format_scalar(c)}){zpart}")
        return f"ZSeries({' + '.join(terms)}, K={self.K})"


def series_mul(x, y):
    return x * y


def series_eval_pattern(name, rate, K):
    """Taylor truncation of a reference pattern in ``rate * z``.

    ``exp``: sum r^k z^k / k!;  ``sinh_over_arg``: sinh(r z)/(r z);
    ``cosh``: cosh(r z);  ``poly`` (or ``polynomial``): the constant ``rate``.
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    rate = as_scalar(rate)
    coeffs = {}
    if name == "exp":
        for k in range(K + 1):
            coeffs[k] = rate ** k * Fraction(1, math.factorial(k))
    elif name == "sinh_over_arg":
        for k in range(0, K + 1, 2):
            coeffs[k] = rate ** k * Fraction(1, math.factorial(k + 1))
    elif name == "cosh":
        for k in range(0, K + 1, 2):
            coeffs[k] = rate ** k * Fraction(1, math.factorial(k))
    elif name in ("poly", "polynomial"):
        coeffs[0] = rate
    else:
        raise UnknownPattern(f"unknown pattern {name!r}")
    return ZSeries(coeffs, K)
