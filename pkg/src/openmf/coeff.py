"""Exact scalars: the rationals and the rational function field Q(v), with q = v^2.

A :class:`Scalar` is stored in one of two canonical shapes.

* Rational values (no ``v`` dependence) are kept as a :class:`fractions.Fraction`.
* Everything else is ``v**shift * num(v) / den(v)`` with ``num, den`` integer
  polynomials, ``num(0) != 0``, ``den(0) != 0``, ``gcd(num, den) = 1`` over ``Q[v]``,
  the two integer contents coprime and ``den`` with positive leading coefficient.

The polynomial gcd is delegated to FLINT through ``python-flint``.
The public view of a Laurent polynomial is a sparse ``{exponent: int}`` map,
see :meth:`Scalar.num_terms` and :meth:`Scalar.den_terms`.

String grammar accepted by :func:`parse_scalar`::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' exponent)?
    exponent:= ['-'] INT | '(' ['-'] INT ')'
    atom    := INT | 'v' | 'q' | '(' expr ')'

``q`` is shorthand for ``v^2``. Juxtaposition is not multiplication; write ``2*v``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

import flint

__all__ = [
    "Scalar",
    "ScalarError",
    "PoleError",
    "parse_scalar",
    "as_scalar",
    "scalar_eval",
    "v",
    "ZERO",
    "ONE",
    "qint",
    "Matrix",
    "mat_identity",
    "mat_mul",
    "mat_inverse",
    "mat_rank",
    "mat_is_identity",
]

_fz = flint.fmpz_poly


class ScalarError(ArithmeticError):
    """Invalid scalar operation, for example division by zero or a parse failure."""


class PoleError(ScalarError):
    """Evaluation at a point where the denominator vanishes."""


def _strip_v(p: flint.fmpz_poly) -> tuple[flint.fmpz_poly, int]:
    """Split off the largest power of v dividing ``p`` (``p`` nonzero)."""
    coeffs = p.coeffs()
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        return _fz(coeffs[k:]), k
    return p, 0


class Scalar:
    """Element of Q(v) in canonical form. Immutable and hashable."""

    __slots__ = ("_q", "_s", "_n", "_d", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._q, self._s, self._n, self._d = value._q, value._s, value._n, value._d
        elif isinstance(value, (int, Fraction)) or isinstance(value, Rational):
            self._q = Fraction(value)
            self._s = 0
            self._n = self._d = None
        elif isinstance(value, str):
            other = parse_scalar(value)
            self._q, self._s, self._n, self._d = other._q, other._s, other._n, other._d
        else:
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        self._hash = None

    # construction ---------------------------------------------------------------
    @classmethod
    def _rational(cls, q: Fraction) -> Scalar:
        out = object.__new__(cls)
        out._q = q
        out._s = 0
        out._n = out._d = None
        out._hash = None
        return out

    @classmethod
    def _from_polys(cls, shift: int, num: flint.fmpz_poly, den: flint.fmpz_poly) -> Scalar:
        """Normalize ``v**shift * num / den``; ``den`` must be nonzero."""
        if num.is_zero():
            return cls._rational(Fraction(0))
        num, kn = _strip_v(num)
        den, kd = _strip_v(den)
        shift += kn - kd
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        # integer contents: make them coprime, den leading coefficient positive
        cn, cd = int(num.content()), int(den.content())
        c = math.gcd(cn, cd)
        if den.leading_coefficient() < 0:
            c = -c
        if c != 1:
            num = _fz([int(x) // c for x in num.coeffs()])
            den = _fz([int(x) // c for x in den.coeffs()])
        if shift == 0 and num.degree() == 0 and den.degree() == 0:
            return cls._rational(Fraction(int(num[0]), int(den[0])))
        out = object.__new__(cls)
        out._q = None
        out._s = shift
        out._n = num
        out._d = den
        out._hash = None
        return out

    @classmethod
    def from_terms(cls, num: dict[int, int], den: dict[int, int] | None = None) -> Scalar:
        """Build ``num / den`` from sparse Laurent maps ``{exponent: coefficient}``."""
        den = {0: 1} if den is None else den
        sn, pn = _laurent_to_poly(num)
        sd, pd = _laurent_to_poly(den)
        if pd.is_zero():
            raise ScalarError("division by zero: denominator is the zero polynomial")
        return cls._from_polys(sn - sd, pn, pd)

    @classmethod
    def monomial(cls, exponent: int, coeff: int | Fraction = 1) -> Scalar:
        """Return ``coeff * v**exponent``."""
        c = Fraction(coeff)
        if exponent == 0 or c == 0:
            return cls._rational(c)
        return cls._from_polys(exponent, _fz([c.numerator]), _fz([c.denominator]))

    # polynomial view --------------------------------------------------------------
    def _parts(self) -> tuple[int, flint.fmpz_poly, flint.fmpz_poly]:
        if self._q is not None:
            return 0, _fz([self._q.numerator]), _fz([self._q.denominator])
        return self._s, self._n, self._d

    def num_terms(self) -> dict[int, int]:
        """Sparse Laurent numerator ``{exponent: coefficient}`` of the canonical form."""
        s, n, _ = self._parts()
        return {s + k: int(c) for k, c in enumerate(n.coeffs()) if c != 0}

    def den_terms(self) -> dict[int, int]:
        """Sparse denominator polynomial ``{exponent: coefficient}`` of the canonical form."""
        _, _, d = self._parts()
        return {k: int(c) for k, c in enumerate(d.coeffs()) if c != 0}

    @property
    def is_rational(self) -> bool:
        return self._q is not None

    def to_fraction(self) -> Fraction:
        if self._q is None:
            raise ScalarError(f"{self} depends on v")
        return self._q

    def is_zero(self) -> bool:
        return self._q is not None and self._q == 0

    def is_one(self) -> bool:
        return self._q is not None and self._q == 1

    # arithmetic -----------------------------------------------------------------
    def __add__(self, other) -> Scalar:
        other = as_scalar(other)
        if self._q is not None and other._q is not None:
            return Scalar._rational(self._q + other._q)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s1, n1, d1 = self._parts()
        s2, n2, d2 = other._parts()
        s = min(s1, s2)
        if s1 > s:
            n1 = n1.left_shift(s1 - s)
        if s2 > s:
            n2 = n2.left_shift(s2 - s)
        if d1 == d2:
            return Scalar._from_polys(s, n1 + n2, d1)
        return Scalar._from_polys(s, n1 * d2 + n2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        if self._q is not None:
            return Scalar._rational(-self._q)
        out = object.__new__(Scalar)
        out._q = None
        out._s, out._n, out._d = self._s, -self._n, self._d
        out._hash = None
        return out

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other) -> Scalar:
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> Scalar:
        return as_scalar(other) + (-self)

    def __mul__(self, other) -> Scalar:
        other = as_scalar(other)
        if self._q is not None and other._q is not None:
            return Scalar._rational(self._q * other._q)
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.is_one():
            return other
        if other.is_one():
            return self
        s1, n1, d1 = self._parts()
        s2, n2, d2 = other._parts()
        return Scalar._from_polys(s1 + s2, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        """Multiplicative inverse; raises :class:`ScalarError` on zero."""
        if self.is_zero():
            raise ScalarError("division by zero")
        if self._q is not None:
            return Scalar._rational(1 / self._q)
        return Scalar._from_polys(-self._s, self._d, self._n)

    def __truediv__(self, other) -> Scalar:
        return self * as_scalar(other).inv()

    def __rtruediv__(self, other) -> Scalar:
        return as_scalar(other) * self.inv()

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        if self._q is not None:
            return Scalar._rational(self._q**k)
        if k == 0:
            return ONE
        return Scalar._from_polys(self._s * k, self._n**k, self._d**k)

    # comparison -----------------------------------------------------------------
    def _key(self):
        if self._q is not None:
            return (0, self._q.numerator, self._q.denominator)
        return (1, self._s, tuple(int(c) for c in self._n.coeffs()), tuple(int(c) for c in self._d.coeffs()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return self._q is not None and self._q == other
            return NotImplemented
        if self._q is not None or other._q is not None:
            return self._q == other._q
        return self._s == other._s and self._n == other._n and self._d == other._d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key()) if self._q is None else hash(self._q)
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # evaluation and printing ----------------------------------------------------
    def eval(self, at) -> Fraction:
        """Exact value at the rational point ``v = at``."""
        return scalar_eval(self, at)

    def __str__(self) -> str:
        if self._q is not None:
            return str(self._q)
        num = _format_laurent(self.num_terms())
        den = self.den_terms()
        if den == {0: 1}:
            return num
        num_s = num if len(self.num_terms()) == 1 and not num.startswith("-") else f"({num})"
        den_s = _format_laurent(den)
        den_s = den_s if len(den) == 1 and not den_s.startswith("-") else f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


def _laurent_to_poly(terms: dict[int, int]) -> tuple[int, flint.fmpz_poly]:
    terms = {e: c for e, c in terms.items() if c != 0}
    if not terms:
        return 0, _fz([])
    lo = min(terms)
    coeffs = [0] * (max(terms) - lo + 1)
    for e, c in terms.items():
        coeffs[e - lo] = c
    return lo, _fz(coeffs)


def _format_laurent(terms: dict[int, int]) -> str:
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = "v" if e == 1 else f"v^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


ZERO = Scalar._rational(Fraction(0))
ONE = Scalar._rational(Fraction(1))
v = Scalar.monomial(1)


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions and strings to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._rational(Fraction(x))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a Scalar")


def scalar_eval(a: Scalar, at) -> Fraction:
    """Evaluate ``a`` at the rational point ``v = at``.

    Raises
    ------
    PoleError
        If the canonical denominator vanishes at ``at`` (or ``at = 0`` with a pole at 0).
    """
    a = as_scalar(a)
    at = Fraction(at)
    if a._q is not None:
        return a._q
    s, n, d = a._parts()
    dv = d(flint.fmpq(at.numerator, at.denominator))
    if dv == 0 or (at == 0 and s < 0):
        den = _format_laurent(a.den_terms()) if s >= 0 else f"v^{-s}*({_format_laurent(a.den_terms())})"
        raise PoleError(f"pole at v={at}: denominator {den} vanishes")
    nv = n(flint.fmpq(at.numerator, at.denominator))
    val = Fraction(int(nv.p), int(nv.q)) / Fraction(int(dv.p), int(dv.q))
    return val * at**s


def qint(n: int) -> Scalar:
    """Balanced quantum integer ``[n] = (v^{2n} - v^{-2n}) / (v^2 - v^{-2})``."""
    if n == 0:
        return ZERO
    sign = 1
    if n < 0:
        n, sign = -n, -1
    # [n] = sum_{k=0}^{n-1} v^{2(n-1) - 4k}
    return Scalar.from_terms({2 * (n - 1) - 4 * k: sign for k in range(n)})


# parser ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([vq])|(.))")


def parse_scalar(text: str) -> Scalar:
    """Parse the documented scalar grammar into a canonical :class:`Scalar`."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2)))
        elif m.group(3).strip():
            tokens.append(("op", m.group(3)))
        pos = m.end()
    if not tokens:
        raise ScalarError(f"empty scalar expression {text!r}")
    parser = _Parser(tokens, text)
    value = parser.expr()
    if parser.i != len(tokens):
        raise ScalarError(f"unexpected trailing input in scalar {text!r}")
    return value


class _Parser:
    def __init__(self, tokens, text):
        self.t = tokens
        self.i = 0
        self.text = text

    def _peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def _take(self, kind=None, val=None):
        tok = self._peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise ScalarError(f"cannot parse scalar {self.text!r} near token {self.i}")
        self.i += 1
        return tok

    def expr(self) -> Scalar:
        acc = self.term()
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Scalar:
        acc = self.unary()
        while self._peek() in (("op", "*"), ("op", "/")):
            op = self._take()[1]
            rhs = self.unary()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def unary(self) -> Scalar:
        if self._peek() == ("op", "-"):
            self._take()
            return -self.unary()
        if self._peek() == ("op", "+"):
            self._take()
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self._peek() == ("op", "^"):
            self._take()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        paren = self._peek() == ("op", "(")
        if paren:
            self._take()
        sign = 1
        if self._peek() == ("op", "-"):
            self._take()
            sign = -1
        k = sign * self._take("int")[1]
        if paren:
            self._take("op", ")")
        return k

    def atom(self) -> Scalar:
        kind, val = self._peek()
        if kind == "int":
            self._take()
            return Scalar._rational(Fraction(val))
        if kind == "var":
            self._take()
            return v if val == "v" else v * v
        if (kind, val) == ("op", "("):
            self._take()
            inner = self.expr()
            self._take("op", ")")
            return inner
        raise ScalarError(f"cannot parse scalar {self.text!r} near token {self.i}")


# exact linear algebra -------------------------------------------------------------

Matrix = list  # list[list[Scalar]], row-major


def mat_identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        new = [ZERO] * m
        for k, x in enumerate(row):
            if x.is_zero():
                continue
            for j, y in enumerate(b[k]):
                if not y.is_zero():
                    new[j] = new[j] + x * y
        out.append(new)
    return out


def _row_reduce(a: Matrix, augment: Matrix | None = None):
    """Gauss-Jordan elimination on copies; returns (reduced, augmented, pivot columns)."""
    a = [list(r) for r in a]
    aug = [list(r) for r in augment] if augment is not None else None
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        if aug is not None:
            aug[r], aug[p] = aug[p], aug[r]
        inv = a[r][c].inv()
        a[r] = [x * inv for x in a[r]]
        if aug is not None:
            aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                if aug is not None:
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, aug, pivots


def mat_rank(a: Matrix) -> int:
    """Exact rank over Q(v)."""
    if not a or not a[0]:
        return 0
    return len(_row_reduce(a)[2])


def mat_inverse(a: Matrix) -> Matrix:
    """Exact inverse; raises :class:`ScalarError` when ``a`` is singular."""
    n = len(a)
    if n == 0:
        return []
    if any(len(r) != n for r in a):
        raise ScalarError("inverse of a non-square matrix")
    _, inv, piv = _row_reduce(a, mat_identity(n))
    if len(piv) != n:
        raise ScalarError("matrix is singular")
    return inv


def mat_is_identity(a: Matrix) -> bool:
    return all(x == (ONE if i == j else ZERO) for i, row in enumerate(a) for j, x in enumerate(row))
