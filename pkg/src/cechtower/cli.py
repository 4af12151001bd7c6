"""Command-line frontend.

Exit status: 0 on success, 1 when a mathematical check fails, 2 on bad input.
Inputs that expect a file also accept inline JSON; complexes accept a
catalog name (``catalog:torus7`` or plain ``torus7``) and groups accept
shorthand such as ``Z``, ``Z/2`` or ``Z^2 + Z/4``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .abelian import AbelianGroup
from .cech import Cochain, TransitionData, coboundary, cohomology, cone_contraction, giraud_cocycle, is_coboundary
from .complexes import CATALOG_NAMES, Complex, catalog
from .exactseq import ShortExactSequence, bockstein, long_exact_sequence
from .spectral import build_filtered, e_infinity, e_page, prop31_sequence, total_cohomology
from .towers import TowerCocycle, classify, equivalent, extend_from_class, validate_tower

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class Outcome:
    status: int
    report: dict
    text: str
    document: bool = False  # emit JSON regardless of --format
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------


def _read_json(arg: str, what: str):
    text = arg.strip()
    source = "inline JSON"
    if not text.startswith(("{", "[")):
        path = Path(arg)
        if not path.is_file():
            raise InputError(f"{what}: file not found: {arg}")
        text = path.read_text()
        source = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{what}: malformed JSON in {source} at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _schema(what: str, build: Callable, *args):
    try:
        return build(*args)
    except InputError:
        raise
    except (ValueError, TypeError, KeyError) as e:
        raise InputError(f"{what}: {e}") from None


def _is_literal(arg: str) -> bool:
    return arg.strip().startswith(("{", "[")) or Path(arg).is_file()


def load_complex(arg: str) -> Complex:
    name = arg[len("catalog:"):] if arg.startswith("catalog:") else arg
    if arg.startswith("catalog:") or not _is_literal(arg):
        try:
            return catalog(name)
        except ValueError:
            if arg.startswith("catalog:"):
                raise InputError(f"--complex: unknown catalog entry {name!r}; known: {', '.join(CATALOG_NAMES)}") from None
    return _schema("--complex", Complex.from_json, _read_json(arg, "--complex"))


def load_group(arg: str, flag: str = "--group") -> AbelianGroup:
    if _is_literal(arg):
        return _schema(flag, AbelianGroup.from_json, _read_json(arg, flag))
    if arg.endswith(".json"):
        raise InputError(f"{flag}: file not found: {arg}")
    return _schema(flag, AbelianGroup.parse, arg)


def load_stack(arg: str) -> list[AbelianGroup]:
    if _is_literal(arg):
        doc = _read_json(arg, "--stack")
        if isinstance(doc, dict):
            doc = doc.get("links")
        if not isinstance(doc, list):
            raise InputError("--stack: expected a list of groups or an object with field 'links'")
        return [_schema(f"--stack entry {i}", AbelianGroup.from_json, g) for i, g in enumerate(doc)]
    return [_schema("--stack", AbelianGroup.parse, part) for part in arg.split(",")]


def load_cochain(arg: str, complex_arg: str | None) -> Cochain:
    doc = _read_json(arg, "--cochain")
    if not isinstance(doc, dict):
        raise InputError("--cochain: expected a JSON object")
    if complex_arg is not None:
        x = load_complex(complex_arg)
    elif "complex" in doc:
        x = _schema("--cochain field 'complex'", Complex.from_json, doc["complex"])
    else:
        raise InputError("--cochain: no field 'complex' and no --complex given")
    return _schema("--cochain", Cochain.from_json, doc, x)


def load_tower(arg: str, flag: str = "tower") -> TowerCocycle:
    return _schema(flag, TowerCocycle.from_json, _read_json(arg, flag))


_SES_SHORT = re.compile(r"^(int-mod|prime-square):(\d+)$")


def load_ses(arg: str) -> ShortExactSequence:
    m = _SES_SHORT.match(arg)
    if m and not Path(arg).is_file():
        build = ShortExactSequence.integer_mod if m[1] == "int-mod" else ShortExactSequence.prime_square
        return _schema("--ses", build, int(m[2]))
    return _schema("--ses", ShortExactSequence.from_json, _read_json(arg, "--ses"))


def parse_degrees(arg: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", arg)
    if not m:
        raise InputError(f"--degrees: expected 'a..b', got {arg!r}")
    a = int(m[1])
    b = int(m[2]) if m[2] is not None else a
    if b < a:
        raise InputError(f"--degrees: empty range {arg!r}")
    return a, b


def parse_class(arg: str) -> tuple[int, ...]:
    arg = arg.strip()
    if not arg:
        return ()
    try:
        return tuple(int(v) for v in arg.split(","))
    except ValueError:
        raise InputError(f"--class: expected comma-separated integers, got {arg!r}") from None


# ---------------------------------------------------------------------------
# formatting helpers
# ---------------------------------------------------------------------------


def _class_text(coords) -> str:
    return "0" if not any(coords) else ",".join(str(v) for v in coords)


def _cochain_lines(c: Cochain) -> list[str]:
    vals = c.to_json()["values"]
    if not vals:
        return ["  (zero cochain)"]
    return [f"  [{key}] -> {vals[key]}" for key in sorted(vals, key=lambda k: tuple(int(v) for v in k.split(",")))]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_complex_validate(a) -> Outcome:
    x = load_complex(a.file)
    report = {
        "valid": True,
        "dimension": x.dim,
        "vertices": len(x.vertices),
        "f_vector": list(x.f_vector),
        "euler_characteristic": x.euler_characteristic(),
    }
    text = f"valid complex: dimension {x.dim}, f-vector {list(x.f_vector)}, Euler characteristic {x.euler_characteristic()}"
    return Outcome(OK, report, text)


def cmd_complex_catalog(a) -> Outcome:
    try:
        x = catalog(a.name)
    except ValueError as e:
        raise InputError(str(e)) from None
    return Outcome(OK, x.to_json(), "", document=True)


def cmd_cech_cohomology(a) -> Outcome:
    x, g = load_complex(a.complex), load_group(a.group)
    if a.degree < 0:
        raise InputError("--degree must be nonnegative")
    h = cohomology(x, g, a.degree)
    report = {"degree": a.degree, "group": str(g), "cohomology": h.invariants.to_json(),
              "summary": f"H^{a.degree} = {h.invariants}"}
    lines = [report["summary"]]
    if a.basis:
        report["basis"] = [c.to_json() for c in h.basis]
        for i, (c, order) in enumerate(zip(h.basis, h.invariants.orders)):
            lines.append(f"generator {i} (order {'inf' if order == 0 else order}):")
            lines += _cochain_lines(c)
    return Outcome(OK, report, "\n".join(lines))


def cmd_cech_verify(a) -> Outcome:
    c = load_cochain(a.cochain, a.complex)
    if a.coboundary:
        primitive = is_coboundary(c)
        ok = primitive is not None
        report = {"check": "coboundary", "degree": c.degree, "passed": ok,
                  "primitive": primitive.to_json() if ok else None}
        lines = [f"degree-{c.degree} cochain is {'a coboundary' if ok else 'not a coboundary'}"]
        if ok and primitive.degree >= 0:
            lines.append("primitive:")
            lines += _cochain_lines(primitive)
    else:
        d = coboundary(c)
        ok = d.is_zero()
        report = {"check": "cocycle", "degree": c.degree, "passed": ok,
                  "failing_simplices": [",".join(map(str, s)) for s in d.support()]}
        lines = [f"degree-{c.degree} cochain is {'a cocycle' if ok else 'not a cocycle'}"]
        if not ok:
            lines.append("coboundary nonzero on: " + " ".join(report["failing_simplices"]))
    return Outcome(OK if ok else FAILED, report, "\n".join(lines))


def cmd_cech_giraud(a) -> Outcome:
    doc = _read_json(a.transitions, "--transitions")
    t = _schema("--transitions", TransitionData.from_json, doc)
    c = giraud_cocycle(t)
    ok = coboundary(c).is_zero()
    report = {"cocycle": c.to_json(), "is_cocycle": ok}
    lines = [f"Giraud 2-cocycle ({'cocycle' if ok else 'NOT a cocycle'}):"] + _cochain_lines(c)
    return Outcome(OK if ok else FAILED, report, "\n".join(lines))


def cmd_cech_contract(a) -> Outcome:
    c = load_cochain(a.cochain, a.complex)
    try:
        h = cone_contraction(c, a.apex)
    except ValueError as e:
        report = {"apex": a.apex, "passed": False, "error": str(e), "primitive": None}
        return Outcome(FAILED, report, f"contraction failed: {e}")
    ok = coboundary(h) == c
    report = {"apex": a.apex, "passed": ok, "error": None, "primitive": h.to_json()}
    lines = [f"primitive of degree {h.degree} (d(h) = c: {'yes' if ok else 'NO'}):"] + _cochain_lines(h)
    return Outcome(OK if ok else FAILED, report, "\n".join(lines))


def cmd_tower_validate(a) -> Outcome:
    t = load_tower(a.file)
    r = validate_tower(t)
    lines = []
    for lv in r.levels:
        verdict = "ok" if lv.passed else "FAIL"
        notes = []
        if not lv.degree_ok:
            notes.append(f"degree {lv.degree}, expected {lv.expected_degree}")
        if not lv.group_ok:
            notes.append(f"group {lv.group}, expected {lv.expected_group}")
        if not lv.cocycle:
            notes.append("not a cocycle")
        if lv.trivial is not None:
            notes.append("coboundary" if lv.trivial else "not a coboundary")
        lines.append(f"level {lv.level}: {verdict} ({'; '.join(notes)})")
    lines.append("tower valid" if r.passed else f"tower invalid at levels {r.failures()}")
    return Outcome(OK if r.passed else FAILED, r.to_json(), "\n".join(lines))


def _classified(t: TowerCocycle) -> tuple[tuple[int, ...], AbelianGroup]:
    coords = classify(t)
    return coords, cohomology(t.complex, t.stack[t.height], t.height + 1).invariants


def cmd_tower_classify(a) -> Outcome:
    t = load_tower(a.file)
    coords, h = _classified(t)
    report = {"class": _class_text(coords), "coordinates": list(coords), "group": str(h), "degree": t.height + 1}
    return Outcome(OK, report, f"class {report['class']} in H^{t.height + 1} = {h}")


def cmd_tower_trivial(a) -> Outcome:
    t = load_tower(a.file)
    coords, _ = _classified(t)
    trivial = not any(coords)
    return Outcome(OK, {"trivial": trivial, "class": _class_text(coords)}, "trivial" if trivial else "not trivial")


def cmd_tower_extend(a) -> Outcome:
    t = load_tower(a.file)
    link = load_group(a.link, "--link")
    return Outcome(OK, extend_from_class(t, link, parse_class(a.cls)).to_json(), "", document=True)


def cmd_tower_equivalent(a) -> Outcome:
    t1, t2 = load_tower(a.first, "first tower"), load_tower(a.second, "second tower")
    same = equivalent(t1, t2)
    return Outcome(OK, {"equivalent": same}, "equivalent" if same else "not equivalent")


def cmd_spectral_pages(a) -> Outcome:
    x, stack = load_complex(a.complex), load_stack(a.stack)
    if a.rmax < 1:
        raise InputError("--rmax must be at least 1")
    fc = build_filtered(x, stack)
    rows, lines = [], [f"{'r':>3} {'p':>3} {'q':>3}  E^pq_r"]
    for r in list(range(1, a.rmax + 1)) + [None]:
        for p in range(len(stack)):
            terms = e_infinity(fc, p) if r is None else {n: e_page(fc, p, n - p, r) for n in fc.degrees}
            for n in fc.degrees:
                term = terms[n]
                rows.append(term.to_json())
                lines.append(f"{'inf' if r is None else r:>3} {p:>3} {n - p:>3}  {term.invariants}")
    total = {str(n): total_cohomology(fc, n).to_json() for n in fc.degrees}
    lines += [f"H^{n}(X, L) = {total_cohomology(fc, n)}" for n in fc.degrees]
    report = {"stack": [str(g) for g in stack], "terms": rows, "total": total}
    return Outcome(OK, report, "\n".join(lines))


def cmd_spectral_prop31(a) -> Outcome:
    x = load_complex(a.complex)
    l0, ln = load_group(a.l0, "--l0"), load_group(a.ln, "--ln")
    if a.n < 1:
        raise InputError("--n must be at least 1")
    first, last = parse_degrees(a.degrees)
    fc = build_filtered(x, [l0] + [AbelianGroup()] * (a.n - 1) + [ln])
    report = prop31_sequence(fc, a.n, first, last)
    verdict = "sequence exact" if report.exact else "sequence NOT exact"
    return Outcome(OK if report.exact else FAILED, report.to_json(), report.to_text() + "\n" + verdict)


def cmd_les_run(a) -> Outcome:
    x, s = load_complex(a.complex), load_ses(a.ses)
    first, last = parse_degrees(a.degrees)
    report = long_exact_sequence(s, x, first, last)
    verdict = "sequence exact" if report.exact else "sequence NOT exact"
    return Outcome(OK if report.exact else FAILED, report.to_json(), report.to_text() + "\n" + verdict)


def cmd_les_bockstein(a) -> Outcome:
    x = load_complex(a.complex)
    if a.p < 2:
        raise InputError("--p must be at least 2")
    if a.degree < 0:
        raise InputError("--degree must be nonnegative")
    zp = AbelianGroup.cyclic(a.p)
    src, tgt = cohomology(x, zp, a.degree).invariants, cohomology(x, zp, a.degree + 1).invariants
    matrix = bockstein(x, a.p, a.degree)
    report = {"p": a.p, "degree": a.degree, "source": str(src), "target": str(tgt), "columns": matrix}
    text = f"Bockstein H^{a.degree}(X, Z/{a.p}) = {src} -> H^{a.degree + 1}(X, Z/{a.p}) = {tgt}: columns {matrix}"
    return Outcome(OK, report, text)


def cmd_selftest(a) -> Outcome:
    from .selftest import selftest

    ok, rendered = selftest(a.seed, a.format)
    return Outcome(OK if ok else FAILED, {}, rendered, extra={"rendered": rendered})


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report here instead of standard output")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="cechtower", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="module", required=True)

    def group(name, help):
        return top.add_parser(name, help=help).add_subparsers(dest="command", required=True)

    def leaf(sub, name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    cx = group("complex", "simplicial complexes")
    p = leaf(cx, "validate", cmd_complex_validate, "load a complex and report its f-vector")
    p.add_argument("file")
    p = leaf(cx, "catalog", cmd_complex_catalog, "write a catalog complex as JSON")
    p.add_argument("name")

    ch = group("cech", "Čech cochains and cohomology")
    p = leaf(ch, "cohomology", cmd_cech_cohomology, "compute H^k(X, G)")
    p.add_argument("--complex", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--basis", action="store_true")
    p = leaf(ch, "verify", cmd_cech_verify, "test the cocycle or coboundary condition")
    p.add_argument("--cochain", required=True)
    p.add_argument("--complex")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--cocycle", action="store_true")
    mode.add_argument("--coboundary", action="store_true")
    p = leaf(ch, "giraud", cmd_cech_giraud, "2-cocycle of a family of transition data")
    p.add_argument("--transitions", required=True)
    p = leaf(ch, "contract", cmd_cech_contract, "primitive of a cocycle on a cone")
    p.add_argument("--cochain", required=True)
    p.add_argument("--complex")
    p.add_argument("--apex", type=int, required=True)

    tw = group("tower", "gerbed towers")
    for name, func in (("validate", cmd_tower_validate), ("classify", cmd_tower_classify), ("trivial", cmd_tower_trivial)):
        leaf(tw, name, func, f"{name} a tower").add_argument("file")
    p = leaf(tw, "extend", cmd_tower_extend, "add a level realizing a given class")
    p.add_argument("file")
    p.add_argument("--link", required=True)
    p.add_argument("--class", dest="cls", required=True)
    p = leaf(tw, "equivalent", cmd_tower_equivalent, "compare the classes of two towers")
    p.add_argument("first")
    p.add_argument("second")

    sp = group("spectral", "spectral sequence of the coefficient filtration")
    p = leaf(sp, "pages", cmd_spectral_pages, "table of E_r terms")
    p.add_argument("--complex", required=True)
    p.add_argument("--stack", required=True)
    p.add_argument("--rmax", type=int, default=3)
    p = leaf(sp, "prop31", cmd_spectral_prop31, "exact sequence for a two-step filtration")
    p.add_argument("--complex", required=True)
    p.add_argument("--l0", required=True)
    p.add_argument("--ln", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degrees", required=True)

    ls = group("les", "long exact sequences of coefficients")
    p = leaf(ls, "run", cmd_les_run, "long exact sequence with exactness verdicts")
    p.add_argument("--complex", required=True)
    p.add_argument("--ses", required=True)
    p.add_argument("--degrees", required=True)
    p = leaf(ls, "bockstein", cmd_les_bockstein, "Bockstein of 0 -> Z/p -> Z/p^2 -> Z/p -> 0")
    p.add_argument("--complex", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)

    st = top.add_parser("selftest", parents=[common], help="run the acceptance checks")
    st.set_defaults(func=cmd_selftest)
    return parser


def render(outcome: Outcome, fmt: str) -> str:
    if "rendered" in outcome.extra:
        return outcome.extra["rendered"]
    if outcome.document or fmt == "json":
        return json.dumps(outcome.report, indent=2, sort_keys=True) + "\n"
    return outcome.text.rstrip("\n") + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    try:
        outcome = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT
    except ValueError as e:
        # well-formed input that the mathematics rejects
        print(f"failed: {e}", file=sys.stderr)
        return FAILED
    out = render(outcome, args.format)
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
