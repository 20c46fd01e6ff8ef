r"""Combinatorial open surfaces, interval gluing and canonical cuts.

A surface is a list of connected components, each with a genus and boundary circles.
A circle is a word of interval ids read from its basepoint; the word is cyclic, and the
basepoint only fixes how it is stored. Interval ids are unique across the surface.

Splice rule
-----------
Gluing interval ``a`` to interval ``b`` removes both and reconnects the boundary.
Capital letters stand for (possibly empty) runs of intervals; every new circle starts
right after a seam.

Same circle, ``[A a X b B]``: the circle splits in two::

        A   a   X   b   B              B A         X
      --+---=---+---=---+--    ==>   --+--+--  ,  --+--
            \_______/                (in place)   (appended)

    b' = b + 1, g' = g.

Different circles of one component, ``[A a B]`` and ``[D b E]``: they merge::

      --A--=a=--B--               --B--A--E--D--
      --D--=b=--E--      ==>      (at the first circle's place)

    b' = b - 1, g' = g + 1.

Different components: the same merge as above. The merged component takes the
position of the first one, its circles keep their places and the second component's
other circles are appended. g' = g1 + g2, b' = b1 + b2 - 1.

Every gluing lowers the Euler characteristic Σ (2 - 2g - b) by exactly one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

__all__ = [
    "SurfaceError",
    "Component",
    "Surface",
    "GluingWord",
    "make_surface",
    "disk",
    "disjoint_union",
    "glue",
    "canonical_cut",
    "replay",
    "isomorphic",
    "surface_key",
    "load_surface",
    "surface_to_document",
]


class SurfaceError(ValueError):
    """Invalid surface data or gluing request."""


@dataclass(frozen=True)
class Component:
    genus: int
    boundaries: tuple  # tuple of tuples of interval ids

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - len(self.boundaries)

    @property
    def intervals(self) -> tuple:
        return tuple(x for circ in self.boundaries for x in circ)


@dataclass(frozen=True)
class Surface:
    components: tuple
    labels: Mapping = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        seen: set = set()
        for comp in self.components:
            if comp.genus < 0:
                raise SurfaceError("genus must be non-negative")
            if not comp.boundaries:
                raise SurfaceError("every component needs at least one boundary circle")
            for x in comp.intervals:
                if x in seen:
                    raise SurfaceError(f"interval id {x!r} is used twice")
                seen.add(x)
        stray = set(self.labels) - seen
        if stray:
            raise SurfaceError(f"labels reference unknown intervals {sorted(stray)}")

    @property
    def euler(self) -> int:
        return sum(c.euler for c in self.components)

    @property
    def intervals(self) -> tuple:
        return tuple(x for c in self.components for x in c.intervals)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    def locate(self, x) -> tuple[int, int, int]:
        """(component, circle, position) of interval ``x``."""
        for ci, comp in enumerate(self.components):
            for bi, circ in enumerate(comp.boundaries):
                if x in circ:
                    return ci, bi, circ.index(x)
        raise SurfaceError(f"dangling interval id {x!r}")

    def component(self, ci: int) -> Surface:
        comp = self.components[ci]
        ids = set(comp.intervals)
        return Surface((comp,), {k: v for k, v in self.labels.items() if k in ids})

    def with_labels(self, labels: Mapping) -> Surface:
        merged = dict(self.labels)
        merged.update(labels)
        return Surface(self.components, merged)

    def fresh_id(self) -> int:
        ints = [x for x in self.intervals if isinstance(x, int)]
        return max(ints, default=0) + 1

    def __repr__(self) -> str:
        parts = [f"g={c.genus} {[list(b) for b in c.boundaries]}" for c in self.components]
        return f"Surface({'; '.join(parts)})"


def make_surface(genus: int, boundaries: int, layout: Sequence | int = 0,
                 labels: Mapping | None = None) -> Surface:
    """A connected surface of the given genus and number of boundary circles.

    Parameters
    ----------
    layout : int or list of lists
        An int ``n`` puts intervals ``1..n`` on the first circle. A list gives the
        interval words circle by circle (missing circles are empty).
    """
    if boundaries < 1:
        raise SurfaceError("a surface needs at least one boundary circle")
    if isinstance(layout, int):
        circles = [tuple(range(1, layout + 1))] + [()] * (boundaries - 1)
    else:
        if len(layout) > boundaries:
            raise SurfaceError("layout has more circles than boundaries")
        circles = [tuple(c) for c in layout] + [()] * (boundaries - len(layout))
    return Surface((Component(genus, tuple(circles)),), dict(labels or {}))


def disk(n: int, start: int = 1, labels: Mapping | None = None) -> Surface:
    return Surface((Component(0, (tuple(range(start, start + n)),)),), dict(labels or {}))


def disjoint_union(*surfaces: Surface) -> Surface:
    comps: list = []
    labels: dict = {}
    for s in surfaces:
        comps.extend(s.components)
        labels.update(s.labels)
    return Surface(tuple(comps), labels)


def glue(S: Surface, a, b) -> Surface:
    """Glue interval ``a`` to interval ``b``; see the module docstring for the splice rule."""
    if a == b:
        raise SurfaceError("cannot glue an interval to itself")
    ca, ba, pa = S.locate(a)
    cb, bb, pb = S.locate(b)
    comps = list(S.components)
    labels = {k: v for k, v in S.labels.items() if k not in (a, b)}
    if ca == cb and ba == bb:
        comp = comps[ca]
        circ = comp.boundaries[ba]
        i, j = sorted((pa, pb))
        A, X, B = circ[:i], circ[i + 1:j], circ[j + 1:]
        circles = list(comp.boundaries)
        circles[ba] = B + A
        circles.append(X)
        comps[ca] = Component(comp.genus, tuple(circles))
    else:
        A, B = _split(comps[ca].boundaries[ba], pa)
        D, E = _split(comps[cb].boundaries[bb], pb)
        merged = B + A + E + D
        if ca == cb:
            comp = comps[ca]
            circles = list(comp.boundaries)
            circles[ba] = merged
            del circles[bb]
            comps[ca] = Component(comp.genus + 1, tuple(circles))
        else:
            first, second = comps[ca], comps[cb]
            circles = list(first.boundaries)
            circles[ba] = merged
            circles.extend(c for k, c in enumerate(second.boundaries) if k != bb)
            comps[ca] = Component(first.genus + second.genus, tuple(circles))
            del comps[cb]
    return Surface(tuple(comps), labels)


def _split(circ: tuple, pos: int) -> tuple[tuple, tuple]:
    return circ[:pos], circ[pos + 1:]


# -- canonical cut --------------------------------------------------------------------


@dataclass(frozen=True)
class GluingWord:
    """A disk with ``len(base)`` intervals and the gluing steps that rebuild a surface.

    ``steps`` lists the auxiliary interval pairs in gluing order; the first of each
    pair carries ``P^∨`` and the second ``P`` in block bases. ``kinds`` tags each
    step as ``"handle"`` or ``"circle"``.
    """

    base: tuple
    steps: tuple
    kinds: tuple
    labels: Mapping = field(default_factory=dict, compare=False, hash=False)

    @property
    def r(self) -> int:
        return len(self.steps)

    def slots(self) -> tuple:
        """Positions in ``base`` of each step's (P^∨, P) pair."""
        pos = {x: i for i, x in enumerate(self.base)}
        return tuple((pos[x], pos[y]) for x, y in self.steps)


def _circle_order(comp: Component) -> list[tuple]:
    def key(item):
        k, circ = item
        if not circ:
            return (1, k, 0)
        return (0, min(_sort_key(x) for x in circ), k)
    return [c for _, c in sorted(enumerate(comp.boundaries), key=key)]


def _sort_key(x):
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


def canonical_cut(S: Surface) -> GluingWord:
    """Cut a connected surface into a disk with ``n + 2r`` intervals, ``r = 2g + b - 1``.

    The disk word is ``C1, (a_1 b_1 a'_1 b'_1), ..., (c_2 C_2 c'_2), ...`` where
    ``C1, C2, ...`` are the circles in canonical order (by smallest interval id, empty
    circles last), one quadruple per handle and one bracket per further circle.
    Steps glue ``(a, a')`` and then ``(b', b)`` for a handle, ``(c, c')`` for a circle;
    replaying them returns every circle read from its original basepoint.
    """
    if not S.connected:
        raise SurfaceError("canonical_cut needs a connected surface; cut components separately")
    comp = S.components[0]
    circles = _circle_order(comp)
    nxt = S.fresh_id()
    base: list = list(circles[0])
    steps: list = []
    kinds: list = []
    for _ in range(comp.genus):
        a, b, a2, b2 = nxt, nxt + 1, nxt + 2, nxt + 3
        nxt += 4
        base.extend((a, b, a2, b2))
        steps.extend(((a, a2), (b2, b)))
        kinds.extend(("handle", "handle"))
    for circ in circles[1:]:
        c, c2 = nxt, nxt + 1
        nxt += 2
        base.extend((c,) + tuple(circ) + (c2,))
        steps.append((c, c2))
        kinds.append("circle")
    return GluingWord(tuple(base), tuple(steps), tuple(kinds), dict(S.labels))


def replay(gw: GluingWord) -> Surface:
    S = Surface((Component(0, (gw.base,)),), dict(gw.labels))
    for a, b in gw.steps:
        S = glue(S, a, b)
    return S


# -- comparison -----------------------------------------------------------------------


def _min_rotation(circ: tuple) -> tuple:
    if not circ:
        return ()
    keyed = [tuple(_sort_key(x) for x in circ[k:] + circ[:k]) for k in range(len(circ))]
    k = min(range(len(circ)), key=keyed.__getitem__)
    return circ[k:] + circ[:k]


def surface_key(S: Surface) -> tuple:
    """Invariant up to basepoints and circle/component order: (genus, sorted cyclic words)."""
    comps = []
    for comp in S.components:
        circs = sorted((_min_rotation(c) for c in comp.boundaries),
                       key=lambda c: tuple(_sort_key(x) for x in c))
        comps.append((comp.genus, tuple(circs)))
    return tuple(sorted(comps, key=lambda k: (k[0], [[_sort_key(x) for x in c] for c in k[1]])))


def isomorphic(S: Surface, T: Surface) -> bool:
    """Same genus, boundary count and cyclic interval structure per component."""
    return surface_key(S) == surface_key(T)


# -- documents ------------------------------------------------------------------------


def load_surface(document) -> Surface:
    """Read ``{components: [{genus, boundaries}], labels: {id: expression}}``.

    Numeric interval ids are turned into ints; label expressions stay strings until a
    category interprets them.
    """
    doc = document if isinstance(document, dict) else json.loads(Path(document).read_text())
    try:
        comps = tuple(
            Component(int(c.get("genus", 0)), tuple(tuple(_id(x) for x in circ) for circ in c["boundaries"]))
            for c in doc["components"]
        )
    except (KeyError, TypeError) as exc:
        raise SurfaceError(f"malformed surface document: {exc}") from exc
    labels = {_id(k): v for k, v in doc.get("labels", {}).items()}
    return Surface(comps, labels)


def _id(x):
    if isinstance(x, int):
        return x
    s = str(x)
    return int(s) if s.lstrip("-").isdigit() else s


def surface_to_document(S: Surface) -> dict:
    return {
        "components": [{"genus": c.genus, "boundaries": [list(b) for b in c.boundaries]} for c in S.components],
        "labels": {str(k): v if isinstance(v, str) else str(v) for k, v in S.labels.items()},
    }

