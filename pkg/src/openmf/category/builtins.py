"""Builtin categories: Z2, Z3 (pointed, trivial data), Fibonacci (fusion only) and TL at generic q.

TL conventions
--------------
Labels are ``V0, V1, ...`` with ``V_m ⊗ V_n = ⊕ V_k``, ``k = |m-n|, ..., m+n`` in steps of 2.
Twists are ``θ_n = v^{n(n+2)}`` and dimensions ``d_n = [n+1]`` with
``[m] = (v^{2m} - v^{-2m}) / (v^2 - v^{-2})``.

F-symbols are the Kauffman-Lins recoupling coefficients at ``A = v``. In this gauge
all data is rational in ``v`` (no square roots), every F-entry with a unit leg is 1,
and the loop value is ``-[2]``. Consequently the pivotal scalar of ``V_n``
(see :meth:`Category.pivotal`) is ``(-1)^n``: the spherical structure with positive
dimensions differs from the planar one by the Frobenius-Schur sign.

R-symbols are ``R^{ab}_c = (-1)^{(a+b-c)/2} v^{(c(c+2) - a(a+2) - b(b+2))/2}``.
"""

from __future__ import annotations

from functools import lru_cache

from ..coeff import ONE, ZERO, Scalar, qint
from .core import Category, CategoryError, I, TableCategory

__all__ = ["z2", "z3", "fibonacci", "TLCategory", "tl", "builtin"]


def _group_fusion(n: int):
    return {(a, b): {(a + b) % n: 1} for a in range(n) for b in range(n)}


def z2() -> TableCategory:
    """Vec_{Z/2} with trivial associator, braiding and twist."""
    return TableCategory(
        "Z2", ["0", "1"], _group_fusion(2), [0, 1], tier=2,
        twist=[ONE, ONE], qdim=[ONE, ONE], F_default=ONE, R_default=ONE,
    )


def z3() -> TableCategory:
    """Vec_{Z/3}, symmetric with trivial data. Its labels 1 and 2 are dual to each other."""
    return TableCategory(
        "Z3", ["0", "1", "2"], _group_fusion(3), [0, 2, 1], tier=2,
        twist=[ONE] * 3, qdim=[ONE] * 3, F_default=ONE, R_default=ONE,
    )


def fibonacci() -> TableCategory:
    """Fibonacci fusion rules only; twists and dimensions would need cyclotomic scalars."""
    fusion = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1, 1: 1}}
    return TableCategory("Fib", ["1", "tau"], fusion, [0, 1], tier=0)


# -- TL ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _kl_int(n: int) -> Scalar:
    return qint(n)


@lru_cache(maxsize=None)
def _kl_fact(n: int) -> Scalar:
    if n < 0:
        raise CategoryError("negative quantum factorial")
    out = ONE
    for k in range(1, n + 1):
        out = out * _kl_int(k)
    return out


def _loop(n: int) -> Scalar:
    """Δ_n = (-1)^n [n+1], the evaluation of the closed n-coloured loop."""
    return -qint(n + 1) if n % 2 else qint(n + 1)


def _admissible(a: int, b: int, c: int) -> bool:
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


@lru_cache(maxsize=None)
def _theta(a: int, b: int, c: int) -> Scalar:
    m, n, p = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    sign = -1 if (m + n + p) % 2 else 1
    num = _kl_fact(m + n + p + 1) * _kl_fact(m) * _kl_fact(n) * _kl_fact(p)
    den = _kl_fact(m + n) * _kl_fact(n + p) * _kl_fact(m + p)
    return num / den * sign


@lru_cache(maxsize=None)
def _tet(A: int, B: int, E: int, C: int, D: int, F: int) -> Scalar:
    """Tet[A B E; C D F] with triples (A,D,E), (B,C,E), (A,B,F), (C,D,F)."""
    a = ((A + D + E) // 2, (B + C + E) // 2, (A + B + F) // 2, (C + D + F) // 2)
    b = ((B + D + E + F) // 2, (A + C + E + F) // 2, (A + B + C + D) // 2)
    inner = ONE
    for bj in b:
        for ai in a:
            inner = inner * _kl_fact(bj - ai)
    outer = ONE
    for x in (A, B, C, D, E, F):
        outer = outer * _kl_fact(x)
    total = ZERO
    for s in range(max(a), min(b) + 1):
        den = ONE
        for ai in a:
            den = den * _kl_fact(s - ai)
        for bj in b:
            den = den * _kl_fact(bj - s)
        term = _kl_fact(s + 1) / den
        total = total - term if s % 2 else total + term
    return inner / outer * total


@lru_cache(maxsize=None)
def tl_f_symbol(a: int, b: int, c: int, d: int, e: int, f: int) -> Scalar:
    """F^{abc}_d[e, f] for TL in the Kauffman-Lins gauge (0 when not admissible)."""
    if not (_admissible(a, b, e) and _admissible(e, c, d) and _admissible(b, c, f) and _admissible(a, f, d)):
        return ZERO
    return _tet(a, b, f, c, d, e) * _loop(f) / (_theta(a, d, f) * _theta(b, c, f))


class TLCategory(Category):
    """Temperley-Lieb category at generic q, lazily generated, window ``V0..VL``, cap ``4L``."""

    def __init__(self, level: int):
        if level < 0:
            raise CategoryError("TL level must be non-negative")
        super().__init__("TL", tier=2, level=level)

    @property
    def window(self):
        return tuple(range(self.level + 1))

    @property
    def cap(self):
        return 4 * self.level

    def _level_for(self, i):
        # smallest L with i <= 4L
        return -(-i // 4)

    def with_level(self, level: int) -> TLCategory:
        return TLCategory(level)

    def label_name(self, i):
        return f"V{i}"

    def label_id(self, name):
        if isinstance(name, int):
            return self.check_label(name)
        s = str(name)
        if s.startswith("V") and s[1:].isdigit():
            return self.check_label(int(s[1:]))
        if s.isdigit():
            return self.check_label(int(s))
        raise CategoryError(f"unknown TL label {name!r}")

    def _fuse_raw(self, m, n):
        return {k: 1 for k in range(abs(m - n), m + n + 1, 2)}

    def _dual_raw(self, i):
        return i

    def _twist_raw(self, n):
        return Scalar.monomial(n * (n + 2))

    def _qdim_raw(self, n):
        return qint(n + 1)

    def _F_raw(self, a, b, c, d, e, f):
        return tl_f_symbol(a, b, c, d, e, f)

    def _R_raw(self, a, b, c):
        sign = -1 if ((a + b - c) // 2) % 2 else 1
        return Scalar.monomial((c * (c + 2) - a * (a + 2) - b * (b + 2)) // 2, sign)


def tl(level: int) -> TLCategory:
    return TLCategory(level)


def builtin(name: str, level: int | None = None) -> Category:
    """Look up a builtin by name: ``Z2``, ``Z3``, ``Fib`` or ``TL`` (the latter needs a level)."""
    key = name.lower()
    if key == "z2":
        return z2()
    if key == "z3":
        return z3()
    if key in ("fib", "fibonacci"):
        return fibonacci()
    if key == "tl":
        if level is None:
            raise CategoryError("TL needs a truncation level")
        return TLCategory(level)
    raise CategoryError(f"unknown builtin category {name!r}")


