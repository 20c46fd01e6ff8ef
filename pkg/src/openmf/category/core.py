"""Skeletal semisimple ribbon categories: labels, fusion, duals, twists, F/R data."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable

from ..coeff import ONE, ZERO, Scalar, ScalarError, as_scalar, mat_inverse

__all__ = [
    "Category",
    "CategoryError",
    "TierError",
    "WindowExhausted",
    "FMatrix",
    "Obj",
    "as_obj",
    "obj_summands",
]

I = 0  # the unit label id in every category


class CategoryError(ValueError):
    """Malformed category data or an invalid label reference."""


class TierError(CategoryError):
    """The requested operation needs a higher capability tier."""


class WindowExhausted(RuntimeError):
    """A label beyond the hard cap of a lazily generated family was requested.

    Attributes
    ----------
    needed_level : int
        Smallest truncation level whose cap would contain the label.
    label_level : int
        Level of the offending label itself.
    """

    def __init__(self, label_level: int, needed_level: int, cap: int):
        self.label_level = label_level
        self.needed_level = needed_level
        self.cap = cap
        super().__init__(
            f"window exhausted: label at level {label_level} exceeds cap {cap}; needs level >= {needed_level}"
        )


@dataclass(frozen=True)
class FMatrix:
    """F^{abc}_d as a matrix: rows indexed by ``es`` (channel of a⊗b), columns by ``fs`` (channel of b⊗c)."""

    es: tuple
    fs: tuple
    mat: tuple  # tuple of row tuples of Scalar

    def entry(self, e: int, f: int) -> Scalar:
        try:
            return self.mat[self.es.index(e)][self.fs.index(f)]
        except ValueError:
            return ZERO


# Objects are finitely supported multiplicity vectors {label: multiplicity}, stored
# as sorted tuples of (label, mult) with mult > 0 so they hash.
Obj = tuple


def as_obj(x) -> Obj:
    """Normalize an int label, a dict or an iterable of pairs to an :data:`Obj`."""
    if isinstance(x, int):
        return ((x, 1),)
    if isinstance(x, dict):
        items = x.items()
    else:
        items = list(x)
        if items and isinstance(items[0], int):
            counts: dict[int, int] = {}
            for lab in items:
                counts[lab] = counts.get(lab, 0) + 1
            items = counts.items()
    return tuple(sorted((int(k), int(m)) for k, m in items if m > 0))


def obj_summands(x: Obj) -> list[tuple[int, int]]:
    """Simple summands of an object as (label, copy) pairs, label-major order."""
    return [(lab, c) for lab, m in x for c in range(m)]


class Category:
    """Base class for skeletal categories.

    Subclasses supply the raw data through ``_fuse_raw``, ``_dual_raw``,
    ``_twist_raw``, ``_qdim_raw``, ``_F_raw`` and ``_R_raw``. This class adds
    window handling, caching, overrides used by mutation fixtures and the
    derived duality scalars.

    Labels are ints; ``0`` is always the unit.
    """

    unit = I

    def __init__(self, name: str, tier: int, level: int | None = None):
        if tier not in (0, 1, 2):
            raise CategoryError(f"tier must be 0, 1 or 2, got {tier}")
        self.name = name
        self.tier = tier
        self.level = level
        self._fuse_cache: dict = {}
        self._F_cache: dict = {}
        self._Finv_cache: dict = {}
        self._R_cache: dict = {}
        self.F_overrides: dict = {}
        self.R_overrides: dict = {}
        self.twist_overrides: dict = {}
        self.qdim_overrides: dict = {}
        self.coev_table: dict = {}
        self._extent_lock = threading.Lock()
        self._extent = -1

    # window --------------------------------------------------------------------
    @property
    def window(self) -> tuple[int, ...]:
        """Labels materialized at the current truncation level."""
        raise NotImplementedError

    @property
    def cap(self) -> int | None:
        """Largest usable label id for lazy families, ``None`` when finite."""
        return None

    @property
    def is_lazy(self) -> bool:
        return self.cap is not None

    @property
    def extent(self) -> int:
        """Largest label touched so far; grows monotonically."""
        return self._extent

    def check_label(self, i: int) -> int:
        if not isinstance(i, int) or i < 0:
            raise CategoryError(f"invalid label {i!r}")
        cap = self.cap
        if cap is None:
            if i >= len(self.window):
                raise CategoryError(f"unknown label {i!r} in {self.name}")
        elif i > cap:
            raise WindowExhausted(i, self._level_for(i), cap)
        if i > self._extent:
            with self._extent_lock:
                if i > self._extent:
                    self._extent = i
        return i

    def _level_for(self, i: int) -> int:
        return i

    def with_level(self, level: int) -> Category:
        raise CategoryError(f"{self.name} has no truncation level")

    # names -----------------------------------------------------------------------
    def label_name(self, i: int) -> str:
        raise NotImplementedError

    def label_id(self, name) -> int:
        raise NotImplementedError

    # fusion --------------------------------------------------------------------
    def fuse(self, i: int, j: int) -> dict[int, int]:
        """Fusion multiplicities ``{k: N_ij^k}`` with labels in ascending order."""
        key = (i, j)
        out = self._fuse_cache.get(key)
        if out is None:
            self.check_label(i)
            self.check_label(j)
            raw = self._fuse_raw(i, j)
            for k in raw:
                self.check_label(k)
            out = dict(sorted((k, m) for k, m in raw.items() if m > 0))
            self._fuse_cache[key] = out
        return out

    def _fuse_loose(self, i: int, j: int) -> dict[int, int]:
        # products may leave the cap; callers filter before touching any label
        key = ("loose", i, j)
        out = self._fuse_cache.get(key)
        if out is None:
            self.check_label(i)
            self.check_label(j)
            out = dict(sorted((k, m) for k, m in self._fuse_raw(i, j).items() if m > 0))
            self._fuse_cache[key] = out
        return out

    def _fuse_free(self, i: int, j: int) -> dict[int, int]:
        # no bounds checks at all; callers check every label that can reach their root
        key = ("free", i, j)
        out = self._fuse_cache.get(key)
        if out is None:
            out = dict(sorted((k, m) for k, m in self._fuse_raw(i, j).items() if m > 0))
            self._fuse_cache[key] = out
        return out

    def N(self, i: int, j: int, k: int) -> int:
        m = self._fuse_loose(i, j).get(k, 0)
        if m:
            self.check_label(k)
        return m

    def fuse_obj(self, x: Obj, y: Obj) -> Obj:
        out: dict[int, int] = {}
        for a, ma in x:
            for b, mb in y:
                for c, n in self.fuse(a, b).items():
                    out[c] = out.get(c, 0) + ma * mb * n
        return as_obj(out)

    def dual(self, i: int) -> int:
        self.check_label(i)
        return self._dual_raw(i)

    def dual_obj(self, x: Obj) -> Obj:
        return as_obj({self.dual(a): m for a, m in x})

    # tier-1 data ---------------------------------------------------------------
    def _need(self, tier: int, what: str):
        if self.tier < tier:
            raise TierError(f"{what} needs tier {tier}; {self.name} is tier {self.tier}")

    def twist(self, i: int) -> Scalar:
        self._need(1, "twist")
        self.check_label(i)
        if i in self.twist_overrides:
            return self.twist_overrides[i]
        return self._twist_raw(i)

    def qdim(self, i: int) -> Scalar:
        self._need(1, "quantum dimension")
        self.check_label(i)
        if i in self.qdim_overrides:
            return self.qdim_overrides[i]
        return self._qdim_raw(i)

    # tier-2 data ---------------------------------------------------------------
    def F(self, a: int, b: int, c: int, d: int) -> FMatrix:
        """F^{abc}_d with the splitting-tree convention

        ``|((a b)_e c)_d> = sum_f F^{abc}_d[e, f] |(a (b c)_f)_d>``.
        """
        key = (a, b, c, d)
        out = self._F_cache.get(key)
        if out is None:
            self._need(2, "F-symbols")
            self.check_label(d)
            # e must also lie in d ⊗ c̄ and f in ā ⊗ d, which bounds them by the cap
            es = tuple(e for e in self._fuse_loose(a, b) if self._fuse_loose(d, self.dual(c)).get(e) and self.N(e, c, d))
            fs = tuple(f for f in self._fuse_loose(b, c) if self._fuse_loose(self.dual(a), d).get(f) and self.N(a, f, d))
            rows = []
            for e in es:
                row = []
                for f in fs:
                    k = (a, b, c, d, e, f)
                    row.append(self.F_overrides[k] if k in self.F_overrides else self._F_raw(*k))
                rows.append(tuple(row))
            out = FMatrix(es, fs, tuple(rows))
            self._F_cache[key] = out
        return out

    def Finv(self, a: int, b: int, c: int, d: int) -> FMatrix:
        """Inverse of F^{abc}_d: rows indexed by f, columns by e."""
        key = (a, b, c, d)
        out = self._Finv_cache.get(key)
        if out is None:
            Fm = self.F(a, b, c, d)
            if len(Fm.es) != len(Fm.fs):
                raise CategoryError(f"F^{{{a}{b}{c}}}_{d} is not square")
            try:
                inv = mat_inverse([list(r) for r in Fm.mat])
            except ScalarError as exc:
                raise CategoryError(f"F^{{{a}{b}{c}}}_{d} is singular") from exc
            out = FMatrix(Fm.fs, Fm.es, tuple(tuple(r) for r in inv))
            self._Finv_cache[key] = out
        return out

    def R(self, a: int, b: int, c: int) -> Scalar:
        """R^{ab}_c with ``c_{a,b} X^{ab}_c = R^{ab}_c X^{ba}_c``."""
        key = (a, b, c)
        out = self._R_cache.get(key)
        if out is None:
            self._need(2, "R-symbols")
            if not self.N(a, b, c):
                raise CategoryError(f"R^{{{a}{b}}}_{c} requested for a non-admissible channel")
            out = self.R_overrides[key] if key in self.R_overrides else self._R_raw(a, b, c)
            self._R_cache[key] = out
        return out

    def clear_caches(self) -> None:
        self._F_cache.clear()
        self._Finv_cache.clear()
        self._R_cache.clear()

    # duality scalars -----------------------------------------------------------
    def coev_scale(self, a: int) -> Scalar:
        """Scalar c_a with coev_a = c_a X^{a ā}_I (1 unless a fixture overrides it)."""
        return self.coev_table.get(a, ONE)

    def ev_scale(self, a: int) -> Scalar:
        """Scalar e_a with ev_a = e_a Y^{ā a}_I, fixed by the F-symbols alone."""
        ab = self.dual(a)
        return self.F(a, ab, a, a).entry(I, I).inv()

    def pivotal(self, a: int) -> Scalar:
        """Pivotal scalar ε_a so that the right evaluation is ε_a · ev_{ā}.

        Chosen so that ẽv_a ∘ coev_a = d_a.
        """
        ab = self.dual(a)
        return self.qdim(a) * self.F(ab, a, ab, ab).entry(I, I) / self.coev_scale(a)

    # raw data hooks ------------------------------------------------------------
    def _fuse_raw(self, i: int, j: int) -> dict[int, int]:
        raise NotImplementedError

    def _dual_raw(self, i: int) -> int:
        raise NotImplementedError

    def _twist_raw(self, i: int) -> Scalar:
        raise NotImplementedError

    def _qdim_raw(self, i: int) -> Scalar:
        raise NotImplementedError

    def _F_raw(self, a, b, c, d, e, f) -> Scalar:
        raise NotImplementedError

    def _R_raw(self, a, b, c) -> Scalar:
        raise NotImplementedError

    def multiplicity_free(self, labels: Iterable[int] | None = None) -> bool:
        labels = self.window if labels is None else labels
        return all(m <= 1 for i in labels for j in labels for m in self.fuse(i, j).values())

    def __repr__(self) -> str:
        lvl = f", level={self.level}" if self.level is not None else ""
        return f"<Category {self.name} tier={self.tier}{lvl}>"


class TableCategory(Category):
    """Category given by explicit finite tables (from a document or a builtin)."""

    def __init__(
        self,
        name: str,
        labels: list[str],
        fusion: dict[tuple[int, int], dict[int, int]],
        dual: list[int],
        tier: int,
        twist: list[Scalar] | None = None,
        qdim: list[Scalar] | None = None,
        F: dict | None = None,
        R: dict | None = None,
        F_default: Scalar | None = None,
        R_default: Scalar | None = None,
    ):
        super().__init__(name, tier)
        self.labels = list(labels)
        self._index = {n: i for i, n in enumerate(self.labels)}
        self._fusion = fusion
        self._duals = list(dual)
        self._twists = twist
        self._qdims = qdim
        self._F = F or {}
        self._R = R or {}
        self._F_default = F_default
        self._R_default = R_default

    @property
    def window(self) -> tuple[int, ...]:
        return tuple(range(len(self.labels)))

    def label_name(self, i: int) -> str:
        return self.labels[i]

    def label_id(self, name) -> int:
        if isinstance(name, int) and 0 <= name < len(self.labels):
            return name
        key = str(name)
        if key not in self._index:
            raise CategoryError(f"unknown label {name!r} in {self.name}")
        return self._index[key]

    def _fuse_raw(self, i, j):
        return dict(self._fusion.get((i, j), {}))

    def _dual_raw(self, i):
        return self._duals[i]

    def _twist_raw(self, i):
        return self._twists[i]

    def _qdim_raw(self, i):
        return self._qdims[i]

    def _F_raw(self, a, b, c, d, e, f):
        k = (a, b, c, d, e, f)
        if k in self._F:
            return self._F[k]
        if I in (a, b, c):
            return ONE
        if self._F_default is not None:
            return self._F_default
        raise CategoryError(f"missing F-symbol F^{{{a},{b},{c}}}_{d}[{e},{f}] in {self.name}")

    def _R_raw(self, a, b, c):
        k = (a, b, c)
        if k in self._R:
            return self._R[k]
        if I in (a, b):
            return ONE
        if self._R_default is not None:
            return self._R_default
        raise CategoryError(f"missing R-symbol R^{{{a},{b}}}_{c} in {self.name}")


def scalar_table(values) -> list[Scalar]:
    return [as_scalar(x) for x in values]
