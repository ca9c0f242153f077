"""Exact arithmetic over Q: polynomials, rational functions, the projective
line, quadratic extensions and cross-ratios.

Scalars are :class:`fractions.Fraction`.  Polynomials store coefficients
lowest degree first and are immutable.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RatQ = Fraction
Scalar = Union[int, Fraction]


class ArithmeticErrorBase(ValueError):
    pass


class ZeroDenominator(ArithmeticErrorBase):
    pass


class ConstantFunction(ArithmeticErrorBase):
    pass


class NotMonic(ArithmeticErrorBase):
    pass


class DegeneratePoints(ArithmeticErrorBase):
    pass


def parse_rat(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"``, an integer literal, or pass a number through."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except ZeroDivisionError:
        raise ZeroDenominator(f"zero denominator in {text!r}") from None


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Univariate polynomials over Q


class PolyQ:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: Scalar) -> PolyQ:
        return cls([c])

    @classmethod
    def x(cls) -> PolyQ:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> PolyQ:
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyQ([other])
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyQ({[format_rat(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("U" if k == 1 else f"U^{k}")
            if mono and c in (1, -1):
                s = ("-" if c < 0 else "+") + mono
            else:
                s = ("-" if c < 0 else "+") + format_rat(abs(c)) + ("*" + mono if mono else "")
            terms.append(s)
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> PolyQ:
        if isinstance(other, PolyQ):
            return other
        return PolyQ([other])

    def __add__(self, other) -> PolyQ:
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyQ(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> PolyQ:
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other) -> PolyQ:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> PolyQ:
        return self._coerce(other) - self

    def __mul__(self, other) -> PolyQ:
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PolyQ:
        result = PolyQ([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: PolyQ) -> tuple[PolyQ, PolyQ]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lc
            quot[k - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= f * b
        return PolyQ(quot), PolyQ(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> PolyQ:
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> PolyQ:
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other: PolyQ) -> PolyQ:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> PolyQ:
        if not self.coeffs:
            return self
        lc = self.lc
        return PolyQ(c / lc for c in self.coeffs)

    def derivative(self) -> PolyQ:
        return PolyQ(k * c for k, c in enumerate(self.coeffs) if k)

    def shift(self, c: Scalar) -> PolyQ:
        """Return p(U + c)."""
        out = PolyQ()
        lin = PolyQ([c, 1])
        for coeff in reversed(self.coeffs):
            out = out * lin + coeff
        return out

    def to_json(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> PolyQ:
        return cls(parse_rat(c) for c in data)


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: PolyQ) -> list[tuple[PolyQ, int]]:
    """Yun's algorithm: ``p = lc * prod f_k^k`` with the ``f_k`` squarefree,
    pairwise coprime and monic.  Only factors of positive degree are returned,
    ordered by multiplicity."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    g = poly_gcd(p, dp)
    b = p.exact_div(g)
    c = dp.exact_div(g)
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        if a.degree >= 1:
            out.append((a, k))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        k += 1
    return out


def _integer_divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for k in range(1, math.isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def squarefree_part_int(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * f`` with ``f`` squarefree (sign kept on ``f``)."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, f = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    f *= n
    return s, sign * f


def integer_content_poly(p: PolyQ) -> list[int]:
    """Integer coefficients of a primitive scalar multiple of ``p``."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


def rational_roots(p: PolyQ) -> list[Fraction]:
    """Distinct rational roots of ``p``, sorted."""
    if p.degree < 1:
        return []
    roots: set[Fraction] = set()
    cs = integer_content_poly(p)
    lo = 0
    while cs[lo] == 0:
        lo += 1
    if lo:
        roots.add(Fraction(0))
    cs = cs[lo:]
    if len(cs) > 1:
        q = PolyQ(cs)
        for num in _integer_divisors(cs[0]):
            for den in _integer_divisors(cs[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand not in roots and q(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# Projective line over Q


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
P1Q = Union[Fraction, _Infinity]


def parse_p1(text) -> P1Q:
    if text is INF:
        return INF
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return INF
    return parse_rat(text)


def format_p1(t: P1Q) -> str:
    return "inf" if t is INF else format_rat(t)


# ---------------------------------------------------------------------------
# Rational functions


@dataclass(frozen=True)
class RatFunc:
    """Reduced ``a/b`` with ``gcd(a, b) = 1`` and ``b`` monic."""

    a: PolyQ
    b: PolyQ

    @property
    def N(self) -> int:
        return max(self.a.degree, self.b.degree)

    @property
    def degree(self) -> int:
        return self.N

    def __str__(self) -> str:
        if self.b == PolyQ([1]):
            return str(self.a)
        return f"({self.a})/({self.b})"

    def __call__(self, u: P1Q) -> P1Q:
        if u is INF:
            if self.a.degree > self.b.degree:
                return INF
            if self.a.degree < self.b.degree:
                return Fraction(0)
            return self.a.lc / self.b.lc
        den = self.b(u)
        if den == 0:
            return INF
        return self.a(u) / den

    def homogeneous(self, c: PolyQ, e: PolyQ, n: int | None = None) -> tuple[PolyQ, PolyQ]:
        """Numerator and denominator of ``self(c/e)`` after clearing ``e^N``."""
        n = self.N if n is None else n

        def hom(p: PolyQ) -> PolyQ:
            out = PolyQ()
            for k, coeff in enumerate(p.coeffs):
                if coeff:
                    out = out + (c ** k) * (e ** (n - k)) * coeff
            return out

        return hom(self.a), hom(self.b)

    def compose(self, inner: RatFunc) -> RatFunc:
        """``self ∘ inner``, i.e. ``U ↦ self(inner(U))``."""
        num, den = self.homogeneous(inner.a, inner.b)
        return reduce_ratfunc(num, den)

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> RatFunc:
        return reduce_ratfunc(PolyQ.from_json(data["a"]), PolyQ.from_json(data.get("b", ["1"])))


def reduce_ratfunc(a: PolyQ, b: PolyQ, allow_constant: bool = False) -> RatFunc:
    if b.is_zero():
        raise ZeroDenominator("denominator polynomial is zero")
    g = poly_gcd(a, b)
    a, b = a.exact_div(g), b.exact_div(g)
    lc = b.lc
    a, b = PolyQ(c / lc for c in a.coeffs), b.monic()
    f = RatFunc(a, b)
    if f.N < 1 and not allow_constant:
        raise ConstantFunction(f"{f} is constant")
    return f


def mobius(alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar) -> RatFunc:
    """``(alpha U + beta) / (gamma U + delta)``; requires a nonzero determinant."""
    if Fraction(alpha) * delta - Fraction(beta) * gamma == 0:
        raise ValueError("degenerate Möbius transformation")
    return reduce_ratfunc(PolyQ([beta, alpha]), PolyQ([delta, gamma]))


def parse_ratfunc(text: str, var: str = "U") -> RatFunc:
    """Parse expressions such as ``U^2/(2*U^2-2U+1)``; JSON ``{"a": .., "b": ..}``
    is accepted too.  Implicit multiplication ``2U`` is allowed."""
    text = text.strip()
    if text.startswith("{"):
        import json
        return RatFunc.from_json(json.loads(text))
    tokens = re.findall(r"\d+(?:/\d+)?|[A-Za-z]+|\*\*|[-+*/^()]|\S", text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    one = PolyQ([1])

    def div(x, y):
        if y[0].is_zero():
            raise ZeroDenominator(f"division by zero in {text!r}")
        return (x[0] * y[1], x[1] * y[0])

    def expr():
        val = term()
        while peek() in ("+", "-"):
            op, rhs = take(), term()
            sign = 1 if op == "+" else -1
            val = (val[0] * rhs[1] + rhs[0] * val[1] * sign, val[1] * rhs[1])
        return val

    def term():
        val = unary()
        while peek() is not None and (peek() in ("*", "/") or peek() == "(" or peek() == var
                                      or peek()[0].isdigit()):
            op = take() if peek() in ("*", "/") else "*"
            rhs = unary()
            val = (val[0] * rhs[0], val[1] * rhs[1]) if op == "*" else div(val, rhs)
        return val

    def unary():
        if peek() == "-":
            take()
            v = unary()
            return (-v[0], v[1])
        if peek() == "+":
            take()
        return power_()

    def power_():
        base = atom()
        if peek() in ("^", "**"):
            take()
            tok = take()
            if not tok.isdigit():
                raise ValueError(f"exponent must be a natural number, got {tok!r}")
            k = int(tok)
            base = (base[0] ** k, base[1] ** k)
        return base

    def atom():
        tok = take() if peek() is not None else None
        if tok is None:
            raise ValueError(f"unexpected end of {text!r}")
        if tok == "(":
            v = expr()
            if take() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return v
        if tok == var:
            return (PolyQ([0, 1]), one)
        if tok[0].isdigit():
            return (PolyQ([Fraction(tok)]), one)
        raise ValueError(f"unexpected token {tok!r} in {text!r}")

    num, den = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return reduce_ratfunc(num, den)


# ---------------------------------------------------------------------------
# Fiber profiles


@dataclass(frozen=True)
class FiberEntry:
    """Points of a fiber sharing one multiplicity.

    ``factor`` is a monic squarefree polynomial whose roots are the finite
    points, or ``None`` for the point at infinity.  ``degree`` counts the
    distinct points the entry stands for.
    """

    multiplicity: int
    degree: int
    factor: PolyQ | None

    @property
    def is_infinity(self) -> bool:
        return self.factor is None

    def describe(self) -> str:
        return "inf" if self.factor is None else str(self.factor)


@dataclass(frozen=True)
class FiberProfile:
    t: P1Q
    N: int
    entries: tuple[FiberEntry, ...]

    def multiset(self) -> list[tuple[int, int]]:
        """Sorted ``(multiplicity, point count)`` pairs, merged by multiplicity."""
        acc: dict[int, int] = {}
        for e in self.entries:
            acc[e.multiplicity] = acc.get(e.multiplicity, 0) + e.degree
        return sorted(acc.items())

    def total(self) -> int:
        return sum(e.multiplicity * e.degree for e in self.entries)

    def ramification(self) -> int:
        return sum((e.multiplicity - 1) * e.degree for e in self.entries)


def fiber_polynomial(T0: RatFunc, t: P1Q) -> PolyQ:
    return T0.b if t is INF else T0.a - T0.b * t


def fiber_profile(T0: RatFunc, t: P1Q) -> FiberProfile:
    if T0.N < 1:
        raise ConstantFunction("fiber of a constant function")
    poly = fiber_polynomial(T0, t)
    entries = [FiberEntry(k, f.degree, f) for f, k in squarefree_decomposition(poly)]
    deficit = T0.N - poly.degree
    if deficit > 0:
        entries.append(FiberEntry(deficit, 1, None))
    return FiberProfile(t, T0.N, tuple(entries))


def ramification_at_infinity(T0: RatFunc) -> int:
    """Multiplicity of ``U = ∞`` in its own fiber."""
    da, db = T0.a.degree, T0.b.degree
    if da != db:
        return abs(da - db)
    c = T0.a.lc / T0.b.lc
    return T0.N - (T0.a - T0.b * c).degree


def wronskian(T0: RatFunc) -> PolyQ:
    """``a'b - ab'``; its roots (with multiplicity) are the finite ramification."""
    return T0.a.derivative() * T0.b - T0.a * T0.b.derivative()


def global_ramification_weight(T0: RatFunc) -> int:
    """Sum of ``multiplicity - 1`` over every point of the source line.

    A finite point of multiplicity ``m`` in its fiber (pole or not) is a root
    of ``a'b - ab'`` of order exactly ``m - 1``; the point ``U = ∞`` is added
    from degree bookkeeping.
    """
    if T0.N < 1:
        raise ConstantFunction("constant function")
    return wronskian(T0).degree + ramification_at_infinity(T0) - 1


def rational_critical_values(T0: RatFunc) -> list[P1Q]:
    """Critical values that are images of rational critical points."""
    vals: list[P1Q] = []
    for u in rational_roots(wronskian(T0)):
        v = T0(u)
        if v not in vals:
            vals.append(v)
    if ramification_at_infinity(T0) > 1:
        v = T0(INF)
        if v not in vals:
            vals.append(v)
    return vals


# ---------------------------------------------------------------------------
# Bivariate polynomials and discriminants


def _det_bareiss(matrix: list[list[PolyQ]]) -> PolyQ:
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return PolyQ([1])
    sign = 1
    prev = PolyQ([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return PolyQ()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def resultant_y(p: Sequence[PolyQ], q: Sequence[PolyQ]) -> PolyQ:
    """Sylvester resultant in ``Y`` of polynomials given as coefficient lists
    (lowest ``Y`` power first) with entries in ``Q[T]``."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = PolyQ()
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return _det_bareiss(rows)


def discriminant_y(P: Sequence[PolyQ]) -> PolyQ:
    """``Res_Y(P, dP/dY)`` for ``P`` monic in ``Y`` (no sign normalization)."""
    P = [c if isinstance(c, PolyQ) else PolyQ(c) for c in P]
    while P and P[-1].is_zero():
        P.pop()
    if len(P) < 2:
        raise NotMonic("P must have positive degree in Y")
    if P[-1] != PolyQ([1]):
        raise NotMonic("P must be monic in Y")
    dP = [P[k] * k for k in range(1, len(P))]
    return resultant_y(P, dP)


def bivariate_from_json(data) -> list[PolyQ]:
    """``[[coeffs of Y^0 in T], [coeffs of Y^1 in T], ...]``."""
    return [PolyQ.from_json(row) for row in data]


# ---------------------------------------------------------------------------
# Quadratic extensions


@dataclass(frozen=True, eq=False)
class QuadExt:
    """``x + y*sqrt(d)`` with ``d`` a squarefree integer other than 0, 1."""

    d: int
    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if self.d in (0, 1) or squarefree_part_int(self.d)[0] != 1:
            raise ValueError(f"{self.d} is not a squarefree integer != 0, 1")

    def _lift(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            if other.y and self.y and other.d != self.d:
                raise ValueError("mixing different quadratic fields")
            if other.d != self.d:
                if other.y:
                    return other
                return QuadExt(self.d, other.x)
            return other
        return QuadExt(self.d, Fraction(other))

    def _field(self, other: QuadExt) -> int:
        return other.d if (other.y and not self.y) else self.d

    def __add__(self, other) -> QuadExt:
        o = self._lift(other)
        return QuadExt(self._field(o), self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(self.d, -self.x, -self.y)

    def __sub__(self, other) -> QuadExt:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> QuadExt:
        return self._lift(other) - self

    def __mul__(self, other) -> QuadExt:
        o = self._lift(other)
        d = self._field(o)
        return QuadExt(d, self.x * o.x + d * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadExt(self.d, self.x / n, -self.y / n)

    def __truediv__(self, other) -> QuadExt:
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> QuadExt:
        return self._lift(other) * self.inverse()

    def is_rational(self) -> bool:
        return self.y == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadExt):
            if self.y == 0 and other.y == 0:
                return self.x == other.x
            return (self.d, self.x, self.y) == (other.d, other.x, other.y)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.x) if self.y == 0 else hash((self.d, self.x, self.y))

    def __str__(self) -> str:
        if self.y == 0:
            return format_rat(self.x)
        return f"{format_rat(self.x)}{'+' if self.y > 0 else '-'}{format_rat(abs(self.y))}*sqrt({self.d})"

    __repr__ = __str__


def simplify(z):
    """Collapse rational ``QuadExt`` values to ``Fraction``."""
    if isinstance(z, QuadExt) and z.y == 0:
        return z.x
    return z


def quadratic_roots(p: PolyQ) -> tuple:
    """Both roots of a degree-2 polynomial, as Fractions or QuadExt values."""
    if p.degree != 2:
        raise ValueError("degree-2 polynomial required")
    c0, c1, c2 = p.coeffs
    disc = c1 * c1 - 4 * c2 * c0
    if disc == 0:
        r = -c1 / (2 * c2)
        return (r, r)
    # disc = num/den = num*den/den^2
    s, f = squarefree_part_int(disc.numerator * disc.denominator)
    root_scale = Fraction(s, disc.denominator)
    if f == 1:
        r1 = (-c1 + root_scale) / (2 * c2)
        r2 = (-c1 - root_scale) / (2 * c2)
        return tuple(sorted((r1, r2)))
    x = -c1 / (2 * c2)
    y = root_scale / (2 * c2)
    return (QuadExt(f, x, y), QuadExt(f, x, -y))


def expand_points(factor: PolyQ) -> list | None:
    """Explicit coordinates for the roots of a squarefree factor when every
    irreducible piece has degree at most 2; ``None`` otherwise."""
    pts: list = []
    rest = factor.monic()
    for r in rational_roots(rest):
        pts.append(r)
        rest = rest.exact_div(PolyQ([-r, 1]))
    if rest.degree == 0:
        return pts
    if rest.degree == 2:
        return pts + list(quadratic_roots(rest))
    return None


# ---------------------------------------------------------------------------
# Cross-ratio


def _is_inf(z) -> bool:
    return z is INF


def _common_field(points) -> int | None:
    ds = {z.d for z in points if isinstance(z, QuadExt) and z.y != 0}
    if len(ds) > 1:
        raise ValueError("points lie in different quadratic fields")
    return ds.pop() if ds else None


def cross_ratio(z1, z2, z3, z4):
    """``(z3-z1)(z4-z2) / ((z3-z2)(z4-z1))`` extended to ``∞``.

    With this convention ``cross_ratio(0, 1, -1, λ) = (λ-1)/(2λ)``.
    """
    pts = [z1, z2, z3, z4]
    d = _common_field(pts)
    if d is None:
        pts = [z if _is_inf(z) else Fraction(simplify(z)) for z in pts]
    else:
        pts = [z if _is_inf(z) else (z if isinstance(z, QuadExt) else QuadExt(d, z)) for z in pts]
        pts = [z if _is_inf(z) else QuadExt(d, z.x, z.y) for z in pts]
    for i, j in itertools.combinations(range(4), 2):
        a, b = pts[i], pts[j]
        if (_is_inf(a) and _is_inf(b)) or (not _is_inf(a) and not _is_inf(b) and a == b):
            raise DegeneratePoints(f"points {i} and {j} coincide")
    z1, z2, z3, z4 = pts
    num = Fraction(1) if d is None else QuadExt(d, 1)
    den = Fraction(1) if d is None else QuadExt(d, 1)
    # a factor containing ∞ cancels against its partner
    for a, b in ((z3, z1), (z4, z2)):
        if not (_is_inf(a) or _is_inf(b)):
            num = num * (a - b)
    for a, b in ((z3, z2), (z4, z1)):
        if not (_is_inf(a) or _is_inf(b)):
            den = den * (a - b)
    return simplify(num / den)


def orbit_of(lam) -> frozenset:
    """The six anharmonic images of ``lam``."""
    one = Fraction(1)

    def inv(z):
        return one / z if isinstance(z, Fraction) else z.inverse()

    vals = [lam, inv(lam), one - lam, inv(one - lam), lam * inv(lam - one), (lam - one) * inv(lam)]
    return frozenset(simplify(v) for v in vals)


def cross_ratio_orbit(p1, p2, p3, p4) -> frozenset:
    """Orbit of the cross-ratio under reordering of the four points."""
    return orbit_of(cross_ratio(p1, p2, p3, p4))
