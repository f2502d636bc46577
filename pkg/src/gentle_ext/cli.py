"""Command-line entry point: ``gentle-ext <command> --algebra <file> ...``.

Exit codes: 0 success, 1 a violation or mismatch was found, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FsPath

from gentle_ext.cohomology import cohomology
from gentle_ext.extensions import ExtClass, ext_basis, middle_dimension_ok
from gentle_ext.homotopy import homotopy_string_from_dict, homotopy_string_from_walk
from gentle_ext.morphisms import UnclassifiableError, classify, hom_basis
from gentle_ext.oracle import DEFAULT_PRIME, ext1_breakdown
from gentle_ext.presentation import (
    GentlenessError,
    GentlePresentation,
    PresentationError,
    load_fixture,
    load_presentation,
)
from gentle_ext.resolution import project
from gentle_ext.strings import (
    BandWord,
    StringWord,
    Word,
    canonical_form,
    dimension_vector,
    enumerate_bands,
    enumerate_strings,
    is_band,
    is_string,
    parse_walk,
)


class UsageError(Exception):
    pass


def _load_algebra(source: str) -> GentlePresentation:
    path = FsPath(source)
    if path.is_file():
        return load_presentation(path.read_text("utf-8"))
    name = path.name.removesuffix(".json")
    try:
        return load_fixture(name)
    except FileNotFoundError as exc:
        raise UsageError(f"no algebra file or bundled fixture named {source!r}") from exc


def _word(p: GentlePresentation, text: str, band: bool) -> Word:
    walk = parse_walk(text, p)
    if band:
        if not is_band(p, walk):
            raise UsageError(f"{text!r} is not a band")
        return BandWord(walk)
    if not is_string(p, walk):
        raise UsageError(f"{text!r} is not a string")
    return StringWord(walk)


def _word_text(w: Word) -> str:
    return ("B" if w.is_band else "M") + f"({w})"


def _dims(p: GentlePresentation, w: Word) -> list[int]:
    d = dimension_vector(p, w)
    return [d[x] for x in p.vertices]


def _class_dict(p: GentlePresentation, c: ExtClass) -> dict:
    out = {
        "kind": c.kind,
        "describe": c.describe(),
        "middle": [{"word": str(u), "is_band": u.is_band, "dims": _dims(p, u)} for u in c.middle],
        "witness": json.loads(json.dumps(c.witness)),
    }
    if c.kind == "arrow":
        out["arrow"] = c.arrow
    else:
        o = c.overlap
        out["m"] = str(o.m)
        out.update({k: getattr(o, k) for k in "ABCD"})
    if c.parameter_note:
        out["parameter"] = c.parameter_note
    return out


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        print(text)


def cmd_validate(args) -> int:
    try:
        p = _load_algebra(args.algebra)
    except GentlenessError as exc:
        data = {"gentle": False, "violations": [str(v) for v in exc.violations]}
        _emit(args, data, "not gentle:\n" + "\n".join(f"  {v}" for v in exc.violations))
        return 1
    data = {"gentle": True, "vertices": len(p.vertices), "arrows": len(p.arrows), "relations": len(p.relations)}
    _emit(args, data, f"gentle: {len(p.vertices)} vertices, {len(p.arrows)} arrows, {len(p.relations)} relations")
    return 0


def cmd_strings(args) -> int:
    p = _load_algebra(args.algebra)
    words = enumerate_strings(p, args.max_len) if args.command == "strings" else enumerate_bands(p, args.max_len)
    data = [{"word": str(w), "length": len(w.walk), "dims": _dims(p, w)} for w in words]
    _emit(args, data, "\n".join(str(w) for w in words))
    return 0


def cmd_resolve(args) -> int:
    p = _load_algebra(args.algebra)
    w = _word(p, args.walk, args.band)
    parts = project(p, w, min_degree=args.min_degree)
    sigma = parts.core
    data = {"word": str(w), "homotopy_string": sigma.to_dict(), "text": str(sigma),
            "degrees": sorted(set(sigma.degrees())), "case": parts.case_tag}
    _emit(args, data, f"π({w}) = {sigma}\n{sigma.diagram()}")
    return 0


def _read_sigma(p: GentlePresentation, args):
    raw = args.sigma
    if raw.startswith("@"):
        raw = FsPath(raw[1:]).read_text("utf-8")
    raw = raw.strip()
    if raw.startswith("{"):
        return homotopy_string_from_dict(p, json.loads(raw))
    return homotopy_string_from_walk(p, parse_walk(raw, p), args.base_degree)


def cmd_cohomology(args) -> int:
    p = _load_algebra(args.algebra)
    sigma = _read_sigma(p, args)
    result = cohomology(p, sigma)
    rows = [f"H^{d} = " + " ⊕ ".join(_word_text(s.word) for s in ss) for d, ss in result.summands.items()]
    trace = [f"  {a.rule}{' (dual)' if a.dual else ''} on {a.segment}"
             + (f" → {_word_text(a.output.word)} in degree {a.output.degree}" if a.output else "")
             for a in result.trace]
    data = {
        "summands": {str(d): [str(s.word) for s in ss] for d, ss in result.summands.items()},
        "unreliable_degrees": sorted(result.unreliable),
        "trace": [{"rule": a.rule, "segment": list(a.segment), "dual": a.dual,
                   "output": None if a.output is None else {"degree": a.output.degree, "word": str(a.output.word)}}
                  for a in result.trace],
    }
    _emit(args, data, "\n".join(rows or ["all cohomology vanishes"]) + "\nrules:\n" + "\n".join(trace))
    return 0


def _pair(args):
    p = _load_algebra(args.algebra)
    return p, _word(p, args.v, args.band_v), _word(p, args.w, args.band_w)


def cmd_ext(args) -> int:
    p, v, w = _pair(args)
    diagnostics: list[str] = []
    basis = ext_basis(p, v, w, diagnostics)
    lines = [f"dim Ext¹({_word_text(v)}, {_word_text(w)}) = {len(basis)}"]
    for c in basis:
        dims = " + ".join(str(tuple(_dims(p, u))) for u in c.middle)
        lines.append(f"  {c.describe()}  dims {dims}")
    lines += [f"  note: {d}" for d in diagnostics]
    data = {"dimension": len(basis), "classes": [_class_dict(p, c) for c in basis], "diagnostics": diagnostics}
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_hom_basis(args) -> int:
    p, v, w = _pair(args)
    basis = hom_basis(p, v, w)
    data = {"dimension": len(basis), "elements": [f.to_dict() for f in basis]}
    _emit(args, data, "\n".join([f"{len(basis)} basis maps"] + [f"  {f.describe()}" for f in basis]))
    return 0


def cmd_classify(args) -> int:
    p, v, w = _pair(args)
    ext = ext_basis(p, v, w)
    rows, data, status = [], [], 0
    for f in hom_basis(p, v, w):
        try:
            c = classify(p, f, v, w, ext)
            rows.append(f"  {f.describe()}  ↦  {c.describe()}")
            data.append({"map": f.to_dict(), "class": _class_dict(p, c)})
        except UnclassifiableError as exc:
            status = 1
            rows.append(f"  {f.describe()}  ↦  unclassifiable: {exc}")
            data.append({"map": f.to_dict(), "class": None, "error": str(exc)})
    _emit(args, data, "\n".join(rows or ["no basis maps"]))
    return status


def cmd_oracle_ext(args) -> int:
    p, v, w = _pair(args)
    info = ext1_breakdown(p, v, w, args.field, args.lam, args.mu)
    text = f"dim Ext¹ = {info['ext1']} over F_{args.field}\n" + "\n".join(
        f"  {k}: {val}" for k, val in info.items() if k != "ext1")
    _emit(args, {"field": args.field, **info}, text)
    return 0


def crosscheck(p: GentlePresentation, max_len: int, band_len: int, prime: int) -> list[dict]:
    """Pairs where ext_basis, hom_basis, the oracle or classify disagree."""
    words = enumerate_strings(p, max_len) + enumerate_bands(p, band_len)
    problems = []
    for v in words:
        for w in words:
            ext = ext_basis(p, v, w)
            hom = hom_basis(p, v, w)
            oracle = ext1_breakdown(p, v, w, prime)["ext1"]
            issue = None
            if not len(ext) == len(hom) == oracle:
                issue = "count"
            elif not all(middle_dimension_ok(p, c, v, w) for c in ext):
                issue = "middle dimension"
            else:
                try:
                    got = [classify(p, f, v, w, ext).witness for f in hom]
                except UnclassifiableError:
                    got = None
                if got is None or len(set(got)) != len(got) or set(got) != {c.witness for c in ext}:
                    issue = "classify"
            if issue:
                problems.append({"v": str(v), "w": str(w), "issue": issue,
                                 "ext_basis": len(ext), "hom_basis": len(hom), "oracle": oracle})
    return problems


def cmd_crosscheck(args) -> int:
    p = _load_algebra(args.algebra)
    band_len = args.band_max_len if args.band_max_len is not None else args.max_len
    problems = crosscheck(p, args.max_len, band_len, args.field)
    n = len(enumerate_strings(p, args.max_len) + enumerate_bands(p, band_len))
    lines = [f"{n * n} pairs checked, {len(problems)} mismatches"]
    lines += [f"  {x['issue']}: v={x['v']} w={x['w']} ext={x['ext_basis']} hom={x['hom_basis']} "
              f"oracle={x['oracle']}" for x in problems]
    _emit(args, {"pairs": n * n, "mismatches": problems}, "\n".join(lines))
    return 1 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, help="presentation JSON file or bundled fixture name")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("v")
    pair.add_argument("w")
    pair.add_argument("--band-v", action="store_true", help="read v as a band")
    pair.add_argument("--band-w", action="store_true", help="read w as a band")

    parser = argparse.ArgumentParser(prog="gentle-ext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common]).set_defaults(run=cmd_validate)
    for name in ("strings", "bands"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--max-len", type=int, default=3)
        sp.set_defaults(run=cmd_strings)
    sp = sub.add_parser("resolve", parents=[common])
    sp.add_argument("walk")
    sp.add_argument("--band", action="store_true")
    sp.add_argument("--min-degree", type=int, default=-2)
    sp.set_defaults(run=cmd_resolve)
    sp = sub.add_parser("cohomology", parents=[common])
    sp.add_argument("sigma", help="homotopy string as JSON, @file.json, or walk text")
    sp.add_argument("--base-degree", type=int, default=0, help="degree of slot 0 when given as walk text")
    sp.set_defaults(run=cmd_cohomology)
    for name, run in (("ext", cmd_ext), ("hom-basis", cmd_hom_basis), ("classify", cmd_classify)):
        sub.add_parser(name, parents=[common, pair]).set_defaults(run=run)
    sp = sub.add_parser("oracle-ext", parents=[common, pair])
    sp.add_argument("--field", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--lambda", dest="lam", type=int, default=1)
    sp.add_argument("--mu", type=int, default=2)
    sp.set_defaults(run=cmd_oracle_ext)
    sp = sub.add_parser("crosscheck", parents=[common])
    sp.add_argument("--max-len", type=int, default=3)
    sp.add_argument("--band-max-len", type=int, default=None, help="defaults to --max-len")
    sp.add_argument("--field", type=int, default=DEFAULT_PRIME)
    sp.set_defaults(run=cmd_crosscheck)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except (UsageError, PresentationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
