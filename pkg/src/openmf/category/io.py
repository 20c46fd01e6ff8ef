"""Category documents (JSON) and their validation.

Two shapes are accepted. An explicit table::

    {"name": "Z2", "labels": ["0", "1"], "tier": 2,
     "fusion": [["1", "1", "0", 1]],
     "dual": {"0": "0", "1": "1"},
     "twist": {"0": "1", "1": "1"}, "qdim": {"0": "1", "1": "1"},
     "F": "trivial", "R": "trivial"}

and a builtin generator::

    {"generator": {"name": "TL", "level": 3}}

The first label is the unit. Fusion rows with the unit are implied when absent.
``F`` is a list of ``[a, b, c, d, e, f, scalar]`` rows (or ``"trivial"``: every
admissible entry is 1), ``R`` a list of ``[a, b, c, scalar]`` rows (or ``"trivial"``).
F and R entries with a unit leg default to 1. Any document may carry an
``overrides`` object with ``F``, ``R``, ``twist``, ``qdim`` and ``coev`` entries;
mutation fixtures use it, and ``coev`` sets the coevaluation scale c_a.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from ..coeff import ONE, ScalarError, as_scalar
from .builtins import builtin
from .core import Category, CategoryError, I, Obj, TableCategory, WindowExhausted, as_obj

__all__ = [
    "DocumentError", "load_category", "category_to_document", "parse_object", "object_name", "SCHEMA_PATH",
]

SCHEMA_PATH = Path(__file__).resolve().parents[1] / "data" / "category.schema.json"


class DocumentError(CategoryError):
    """Invalid category document; ``code`` names the failed requirement."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


def _read(document) -> dict:
    if isinstance(document, dict):
        return document
    path = Path(document)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError("parse_error", f"{path}: {exc}") from exc


def _scalar(x, where: str):
    try:
        return as_scalar(x if not isinstance(x, float) else str(x))
    except (ScalarError, TypeError) as exc:
        raise DocumentError("bad_scalar", f"{where}: {x!r}") from exc


def load_category(document, level: int | None = None) -> Category:
    """Build and validate a :class:`Category` from a JSON path or a parsed dict.

    Parameters
    ----------
    document : path or dict
    level : int, optional
        Truncation level for generator documents; overrides the document's level.
    """
    doc = _read(document)
    if "generator" in doc:
        gen = doc["generator"]
        name = gen["name"] if isinstance(gen, dict) else str(gen)
        lvl = level if level is not None else (gen.get("level") if isinstance(gen, dict) else None)
        try:
            C = builtin(name, lvl)
        except CategoryError as exc:
            raise DocumentError("unknown_generator", str(exc)) from exc
    elif "labels" in doc:
        C = _load_table(doc)
    else:
        raise DocumentError("missing_labels", "document needs 'labels' or 'generator'")
    _apply_overrides(C, doc.get("overrides", {}))
    if "coev" in doc:
        _apply_overrides(C, {"coev": doc["coev"]})
    _validate_structure(C)
    return C


def _load_table(doc: dict) -> TableCategory:
    labels = [str(x) for x in doc["labels"]]
    if not labels:
        raise DocumentError("missing_labels", "empty label list")
    if len(set(labels)) != len(labels):
        raise DocumentError("duplicate_label", "label names must be unique")
    index = {n: i for i, n in enumerate(labels)}

    def lab(x, where):
        key = str(x)
        if key in index:
            return index[key]
        raise DocumentError("unknown_label", f"{where} references unknown label {x!r}")

    tier = int(doc.get("tier", 0))
    fusion: dict[tuple[int, int], dict[int, int]] = {}
    for row in doc.get("fusion", []):
        if len(row) not in (3, 4):
            raise DocumentError("bad_fusion_row", f"{row!r}")
        a, b, c = (lab(x, "fusion") for x in row[:3])
        m = int(row[3]) if len(row) == 4 else 1
        fusion.setdefault((a, b), {})[c] = m
    for i in range(len(labels)):
        fusion.setdefault((I, i), {i: 1})
        fusion.setdefault((i, I), {i: 1})

    if "dual" not in doc:
        raise DocumentError("missing_dual", "no dual table")
    dual_doc = doc["dual"]
    duals = []
    for name in labels:
        if name not in dual_doc:
            raise DocumentError("missing_dual", f"label {name!r} has no dual")
        duals.append(lab(dual_doc[name], "dual"))

    twist = qdim = None
    if tier >= 1:
        for key in ("twist", "qdim"):
            if key not in doc:
                raise DocumentError(f"missing_{key}", f"tier {tier} needs '{key}'")
            missing = [n for n in labels if n not in doc[key]]
            if missing:
                raise DocumentError(f"missing_{key}", f"no {key} for {missing}")
        twist = [_scalar(doc["twist"][n], f"twist[{n}]") for n in labels]
        qdim = [_scalar(doc["qdim"][n], f"qdim[{n}]") for n in labels]

    F: dict = {}
    R: dict = {}
    F_default = R_default = None
    if tier >= 2:
        if "F" not in doc or "R" not in doc:
            raise DocumentError("missing_FR", "tier 2 needs 'F' and 'R'")
        if doc["F"] == "trivial":
            F_default = ONE
        else:
            for row in doc["F"]:
                key = tuple(lab(x, "F") for x in row[:6])
                F[key] = _scalar(row[6], f"F{row[:6]}")
        if doc["R"] == "trivial":
            R_default = ONE
        else:
            for row in doc["R"]:
                key = tuple(lab(x, "R") for x in row[:3])
                R[key] = _scalar(row[3], f"R{row[:3]}")
    return TableCategory(str(doc.get("name", "custom")), labels, fusion, duals, tier,
                         twist=twist, qdim=qdim, F=F, R=R, F_default=F_default, R_default=R_default)


def _apply_overrides(C: Category, ov: dict) -> None:
    def lab(x):
        try:
            return C.label_id(x)
        except CategoryError as exc:
            raise DocumentError("unknown_label", f"override references {x!r}") from exc

    for row in ov.get("F", []):
        C.F_overrides[tuple(lab(x) for x in row[:6])] = _scalar(row[6], "override F")
    for row in ov.get("R", []):
        C.R_overrides[tuple(lab(x) for x in row[:3])] = _scalar(row[3], "override R")
    for name, val in ov.get("twist", {}).items():
        C.twist_overrides[lab(name)] = _scalar(val, "override twist")
    for name, val in ov.get("qdim", {}).items():
        C.qdim_overrides[lab(name)] = _scalar(val, "override qdim")
    for name, val in ov.get("coev", {}).items():
        C.coev_table[lab(name)] = _scalar(val, "coev")
    C.clear_caches()


def _validate_structure(C: Category) -> None:
    W = C.window
    for i in W:
        d = C.dual(i)
        if C.dual(d) != i:
            raise DocumentError("dual_not_involutive", f"dual(dual({C.label_name(i)})) != {C.label_name(i)}")
    if C.dual(I) != I:
        raise DocumentError("dual_not_involutive", "the unit must be self-dual")
    for i in W:
        if C.fuse(i, I) != {i: 1} or C.fuse(I, i) != {i: 1}:
            raise DocumentError("unit_constraint", f"unit fusion with {C.label_name(i)} is not the identity")
        for j in W:
            m = C.N(i, j, I)
            if m != (1 if j == C.dual(i) else 0):
                raise DocumentError(
                    "unit_channel", f"N_{{{C.label_name(i)},{C.label_name(j)}}}^I = {m}, expected the dual pairing"
                )
    if C.tier >= 1 and C.twist(I) != ONE:
        raise DocumentError("twist_unit", f"θ_I = {C.twist(I)} != 1")


def category_to_document(C: Category) -> dict:
    """Serialize a table category (or a generator reference) back to a document."""
    if isinstance(C, TableCategory):
        W = C.window
        doc: dict = {
            "name": C.name,
            "labels": list(C.labels),
            "tier": C.tier,
            "fusion": [[C.labels[a], C.labels[b], C.labels[c], m]
                       for a in W for b in W for c, m in C.fuse(a, b).items() if a != I and b != I],
            "dual": {C.labels[i]: C.labels[C.dual(i)] for i in W},
        }
        if C.tier >= 1:
            doc["twist"] = {C.labels[i]: str(C.twist(i)) for i in W}
            doc["qdim"] = {C.labels[i]: str(C.qdim(i)) for i in W}
        return doc
    return {"generator": {"name": C.name, "level": C.level}}


_TOKEN = re.compile(r"\s*(?:(?P<op>[+*()])|(?P<name>[A-Za-z0-9_.]+))")


def parse_object(C: Category, expr) -> Obj:
    """Parse an object expression: ``+`` is direct sum, ``*`` is tensor product.

    A token naming a label of ``C`` is that label; any other integer ``n`` is ``n·I``.
    So ``"V1*V1 + 2"`` in TL is ``V0 ⊕ V2 ⊕ 2·V0``, and ``"2*1"`` in Z2 is two copies
    of the label named ``1``. Ints, dicts and :data:`Obj` values pass through
    :func:`as_obj`.
    """
    if not isinstance(expr, str):
        return as_obj(expr)
    tokens = []
    pos = 0
    s = expr.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise DocumentError("bad_object", f"cannot parse {expr!r} at {pos}")
        tokens.append(m.group("op") or m.group("name"))
        pos = m.end()
    if not tokens:
        raise DocumentError("bad_object", "empty object expression")
    it = iter(tokens + [None])
    cur = [next(it)]

    def take():
        tok = cur[0]
        cur[0] = next(it, None)
        return tok

    def atom() -> Obj:
        tok = take()
        if tok == "(":
            out = total()
            if take() != ")":
                raise DocumentError("bad_object", f"unbalanced parentheses in {expr!r}")
            return out
        if tok is None or tok in "+*)":
            raise DocumentError("bad_object", f"unexpected {tok!r} in {expr!r}")
        if tok.isdigit():
            try:
                lab = C.label_id(tok)
            except (CategoryError, WindowExhausted):
                lab = None
            # a bare integer is a label only where it is that label's exact name
            if lab is None or C.label_name(lab) != tok:
                return ((I, int(tok)),) if int(tok) else ()
            return ((lab, 1),)
        try:
            return ((C.label_id(tok), 1),)
        except CategoryError:
            raise DocumentError("unknown_label", f"{tok!r} in object expression {expr!r}") from None

    def product() -> Obj:
        out = atom()
        while cur[0] == "*":
            take()
            out = C.fuse_obj(out, atom())
        return out

    def total() -> Obj:
        acc: dict = {}
        while True:
            for lab, m in product():
                acc[lab] = acc.get(lab, 0) + m
            if cur[0] != "+":
                return as_obj(acc)
            take()

    out = total()
    if cur[0] is not None:
        raise DocumentError("bad_object", f"trailing {cur[0]!r} in {expr!r}")
    return out


def object_name(C: Category, x: Obj) -> str:
    """Inverse of :func:`parse_object` for display: ``"V0 + 2*V2"``."""
    if not x:
        return "0"
    return " + ".join(C.label_name(lab) if m == 1 else f"{m}*{C.label_name(lab)}" for lab, m in x)
