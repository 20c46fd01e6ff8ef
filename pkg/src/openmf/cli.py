"""Command-line interface: ``check``, ``blocks``, ``frob`` and ``corpus run``.

Every command prints one canonical JSON :class:`RunReport` (sorted keys, exact
scalars unless ``--eval v=<rational>`` is given). Exit codes: 0 pass, 1 mathematical
failure (the report carries a witness), 2 input or format error, 3 window exhaustion.
``OPENMF_LEVEL`` sets the default truncation level for generator categories.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .blocks import (
    BlockError,
    annulus_flip,
    block_basis,
    block_dim,
    dehn_twist_enclosing,
    rotate_disk,
)
from .category import CategoryError, WindowExhausted, check_axioms, load_category, parse_object
from .category.core import TierError
from .coeff import PoleError, ScalarError, scalar_eval
from .duality import check_pb, check_snake
from .frobenius import (
    FrobeniusError,
    algebra_from_document,
    algebra_from_spec,
    check_frobenius,
    correlator,
    correlator_disk,
    correlator_disk_dual,
    mcg_invariance_suite,
)
from .surface import SurfaceError, load_surface

__all__ = ["RunReport", "main", "run", "resolve_input", "DATA_DIR"]

DATA_DIR = Path(__file__).resolve().parent / "data"
EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_WINDOW = 0, 1, 2, 3


class InputError(ValueError):
    """Bad command-line input (exit code 2)."""


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    level: int | None
    mode: str
    results: dict
    exit_code: int = EXIT_PASS
    wall_time: float | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "level": self.level,
            "mode": self.mode,
            "results": self.results,
            "exit_code": self.exit_code,
        }
        if self.wall_time is not None:
            doc["wall_time"] = round(self.wall_time, 6)
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- inputs ------------------------------------------------------------------------------------


def resolve_input(name: str, kind: str = "") -> Path:
    """A path as given, else a bundled document (``Z2.json``, ``disk3.json`` ...)."""
    p = Path(name)
    if p.exists():
        return p
    for cand in (DATA_DIR / name, DATA_DIR / "surfaces" / name, DATA_DIR / kind / name):
        if cand.exists():
            return cand
    raise InputError(f"no such input file: {name}")


def _digest(paths: Sequence[Path], argv: Sequence[str]) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(p.read_bytes())
    # only arguments that change the mathematics; --jobs and --timing do not
    skip = {"--jobs", "--timing", "--output"}
    it = iter(argv)
    for a in it:
        if a in skip:
            if a != "--timing":
                next(it, None)
            continue
        if a.split("=", 1)[0] in skip:
            continue
        h.update(a.encode() + b"\0")
    return "sha256:" + h.hexdigest()[:16]


def _default_level(args) -> int | None:
    if args.level is not None:
        return args.level
    env = os.environ.get("OPENMF_LEVEL")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"OPENMF_LEVEL must be an integer, got {env!r}") from exc
    return None


def _formatter(args) -> tuple[str, Callable]:
    if not getattr(args, "eval", None):
        return "exact", str
    key, _, val = args.eval.partition("=")
    if key.strip() != "v" or not val:
        raise InputError("--eval expects v=<rational>")
    try:
        at = Fraction(val.strip())
    except ValueError as exc:
        raise InputError(f"--eval: {val!r} is not a rational") from exc

    def fmt(s):
        x = scalar_eval(s, at)
        return str(x) if x.denominator == 1 else f"{x} ~ {float(x):.12g}"
    return f"eval v={at}", fmt


def _load_category(args):
    path = resolve_input(args.category)
    C = load_category(path, level=_default_level(args))
    return C, path


def _labels(C, S, args, default=None) -> dict:
    labels = dict(S.labels)
    for item in getattr(args, "label", None) or []:
        key, sep, expr = item.partition("=")
        if not sep:
            raise InputError(f"--label expects ID=EXPR, got {item!r}")
        key = int(key) if key.lstrip("-").isdigit() else key
        if key not in S.intervals:
            raise InputError(f"--label: no interval {key!r}")
        labels[key] = expr
    fill = getattr(args, "default_label", None) or default
    for x in S.intervals:
        if x not in labels:
            if fill is None:
                raise InputError(f"interval {x!r} is unlabelled; use --label or --default-label")
            labels[x] = fill
    return {x: parse_object(C, v) for x, v in labels.items()}


# -- commands --------------------------------------------------------------------------------------


def cmd_check(args, fmt) -> tuple[dict, int, list]:
    C, path = _load_category(args)
    rep = check_axioms(C)
    out = {"axioms": rep.to_dict()}
    ok = rep.passed
    if C.tier >= 2:
        snakes = {}
        for P in C.window:
            r = check_snake(C, P)
            snakes[C.label_name(P)] = {"passed": r.passed} if r else \
                {"passed": False, "witness": [r.witness[0], [C.label_name(x) for x in r.witness[1] or ()], fmt(r.witness[2])]}
            ok &= r.passed
        out["snake"] = snakes
    if C.tier >= 1:
        pb = {"passed": True, "checked": 0}
        for X in C.window:
            for Y in C.window:
                r = check_pb(C, {X: 1}, {Y: 1})
                pb["checked"] += 1
                if not r and pb["passed"]:
                    t, lhs, rhs = r.witness
                    pb.update(passed=False, witness={"pair": [C.label_name(X), C.label_name(Y)],
                                                     "leaves": [C.label_name(x) for x in t],
                                                     "theta_X": fmt(lhs), "theta_Y": fmt(rhs)})
        out["pb"] = pb
        ok &= pb["passed"]
    out["window"] = [C.label_name(i) for i in C.window]
    return out, (EXIT_PASS if ok else EXIT_FAIL), [path]


def _matrix(M, fmt) -> list:
    return [[fmt(x) for x in row] for row in M]


def _generators(C, B, fmt) -> dict:
    gens = {}
    n = len(B.cut.base)
    maps = []
    if n:
        maps.append(dehn_twist_enclosing(C, B, 0, n - 1))
    for (x, y), kind in zip(B.cut.steps, B.cut.kinds):
        if kind == "circle" and C.tier >= 2:
            i, j = B.cut.base.index(x), B.cut.base.index(y)
            maps.append(dehn_twist_enclosing(C, B, i, j))
    try:
        maps.append(annulus_flip(C, B))
    except BlockError:
        pass
    if C.tier >= 2:
        try:
            maps.append(rotate_disk(C, B))
        except BlockError:
            pass
    for m in maps:
        gens[m.name] = {"matrix": _matrix(m.matrix, fmt), "invertible": m.is_invertible()}
    return gens


def cmd_blocks(args, fmt) -> tuple[dict, int, list]:
    C, cpath = _load_category(args)
    spath = resolve_input(args.surface, "surfaces")
    S = load_surface(spath)
    objs = _labels(C, S, args, default=C.label_name(0))
    dim = block_dim(C, S, objs, jobs=args.jobs)
    out = {
        "category": C.name,
        "surface": {"euler": S.euler, "components": [
            {"genus": c.genus, "boundaries": [list(b) for b in c.boundaries]} for c in S.components]},
        "dimension": dim.dimension,
        "stale": dim.stale,
        "window": [C.label_name(i) for i in C.window],
        "window_level": C.level,
    }
    ok = True
    if (args.basis or args.generators) and S.connected:
        B = block_basis(C, S, objs, jobs=args.jobs)
        if args.basis:
            out["basis"] = B.to_json()
        if args.generators:
            out["generators"] = _generators(C, B, fmt)
            ok = all(g["invertible"] for g in out["generators"].values())
    elif args.basis or args.generators:
        out["note"] = "basis and generators are reported for connected surfaces only"
    return out, (EXIT_PASS if ok else EXIT_FAIL), [cpath, spath]


def _vector(x: dict, C, fmt) -> list:
    return [{"leaves": [C.label_name(a) for a in t.leaves], "copies": list(t.copies),
             "channels": [C.label_name(a) for a in t.internals + ((t.root,) if t.leaves else ())],
             "value": fmt(c)} for t, c in sorted(x.items()) if not c.is_zero()]


def cmd_frob(args, fmt) -> tuple[dict, int, list]:
    C, cpath = _load_category(args)
    paths = [cpath]
    spec = args.algebra
    if spec.endswith(".json"):
        apath = resolve_input(spec)
        paths.append(apath)
        A = algebra_from_document(C, json.loads(apath.read_text()))
    else:
        A = algebra_from_spec(C, spec)
    spath = resolve_input(args.surface, "surfaces")
    paths.append(spath)
    S = load_surface(spath)
    if S.labels:
        S = S.with_labels({x: parse_object(C, v) for x, v in S.labels.items()})
    rep = check_frobenius(C, A)
    out: dict = {"algebra": A.to_json(C), "frobenius": rep.to_dict()}
    ok = rep.passed
    if not rep.frobenius:
        return out, EXIT_FAIL, paths
    xi = correlator(C, A, S)
    out["correlator"] = {
        "dimension": xi.space.dimension,
        "vector": [fmt(c) for c in xi.vector],
        "basis": xi.space.to_json() if args.basis else None,
    }
    comp = S.components[0]
    if comp.genus == 0 and len(comp.boundaries) == 1:
        n = len(S.intervals)
        a, b = correlator_disk(C, A, n, check=False), correlator_disk_dual(C, A, n)
        out["cross_check"] = {"passed": a == b, "comultiplication": _vector(a, C, fmt),
                              "dualized_multiplication": _vector(b, C, fmt)}
        ok &= a == b
    suite = mcg_invariance_suite(C, A, S)
    out["invariance"] = suite
    fixed = [v for v in suite.values() if v in ("fixed", "not fixed")]
    ok &= all(v == "fixed" for v in fixed)
    if "rotation" in suite and suite["rotation"] in ("fixed", "not fixed"):
        out["consistent"] = (suite["rotation"] == "fixed") == rep.symmetric
    return out, (EXIT_PASS if ok else EXIT_FAIL), paths


# -- corpus ----------------------------------------------------------------------------------


def _corpus_entries(manifest: Path) -> list[dict]:
    try:
        doc = json.loads(manifest.read_text())
        return [{"name": str(e["name"]), "argv": [str(a) for a in e["argv"]]} for e in doc["entries"]]
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad corpus manifest {manifest}: {exc}") from exc


def cmd_corpus_run(args) -> int:
    manifest = resolve_input(args.manifest, "corpus")
    golden = Path(args.golden) if args.golden else DATA_DIR / "golden"
    entries = _corpus_entries(manifest)

    def one(entry):
        argv = list(entry["argv"]) + (["--jobs", str(args.jobs)] if args.jobs > 1 else [])
        code, text = run(argv)
        return entry["name"], code, text

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(one, entries))
    else:
        results = [one(e) for e in entries]
    failed = 0
    for name, code, text in results:
        gold = golden / f"{name}.json"
        blob = json.dumps({"exit_code": code, "report": json.loads(text)}, sort_keys=True, indent=2) + "\n"
        if args.update:
            golden.mkdir(parents=True, exist_ok=True)
            gold.write_text(blob)
            print(f"WROTE {name}")
            continue
        same = gold.exists() and gold.read_text() == blob
        failed += not same
        print(f"{'PASS' if same else 'FAIL'} {name} (exit {code})")
    return EXIT_PASS if not failed else EXIT_FAIL


# -- entry points ---------------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="openmf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--level", type=int, default=None, help="truncation level (default: $OPENMF_LEVEL)")
        sp.add_argument("--eval", default=None, metavar="v=RATIONAL", help="evaluate scalars at a rational point")
        sp.add_argument("--jobs", type=int, default=1, help="worker threads for coend sums")
        sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
        sp.add_argument("--output", default=None, help="write the report here instead of stdout")

    sp = sub.add_parser("check", help="axioms, snake identities and (PB) of a category")
    sp.add_argument("category")
    common(sp)

    sp = sub.add_parser("blocks", help="block dimension, basis and generator matrices")
    sp.add_argument("category")
    sp.add_argument("surface")
    sp.add_argument("--basis", action="store_true")
    sp.add_argument("--generators", action="store_true")
    sp.add_argument("--label", action="append", metavar="ID=EXPR")
    sp.add_argument("--default-label", default=None, metavar="EXPR",
                    help="object for unlabelled intervals (default: the unit)")
    common(sp)

    sp = sub.add_parser("frob", help="Frobenius check, correlator and invariance report")
    sp.add_argument("category")
    sp.add_argument("algebra", help="unit | group | pair:<label> | qext[:q] | group-nonsym | file.json")
    sp.add_argument("surface")
    sp.add_argument("--basis", action="store_true")
    common(sp)

    sp = sub.add_parser("corpus", help="regression corpus")
    csub = sp.add_subparsers(dest="action", required=True)
    rp = csub.add_parser("run", help="run the corpus and compare with golden reports")
    rp.add_argument("--manifest", default="corpus/manifest.json")
    rp.add_argument("--golden", default=None)
    rp.add_argument("--jobs", type=int, default=1)
    rp.add_argument("--update", action="store_true", help="rewrite the golden files")
    return p


_COMMANDS = {"check": cmd_check, "blocks": cmd_blocks, "frob": cmd_frob}


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run one report command in-process; returns (exit code, report text)."""
    args = _parser().parse_args(list(argv))
    t0 = time.perf_counter()
    level = None
    mode = "exact"
    try:
        mode, fmt = _formatter(args)
        level = _default_level(args)
        results, code, paths = _COMMANDS[args.command](args, fmt)
        digest = _digest(paths, argv)
    except WindowExhausted as exc:
        results, code, digest = {"error": "window_exhausted", "message": str(exc),
                                 "needed_level": exc.needed_level}, EXIT_WINDOW, ""
    except (InputError, SurfaceError, BlockError, FrobeniusError, TierError, CategoryError,
            ScalarError, PoleError, OSError, json.JSONDecodeError) as exc:
        results, code, digest = {"error": type(exc).__name__, "message": str(exc)}, EXIT_INPUT, ""
    rep = RunReport(args.command, digest, level, mode, results, code)
    if args.timing:
        rep.wall_time = time.perf_counter() - t0
    return code, rep.to_json()


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv[:1] == ["corpus"]:
        args = _parser().parse_args(argv)
        try:
            return cmd_corpus_run(args)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    code, text = run(argv)
    out = _parser().parse_args(argv).output
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
