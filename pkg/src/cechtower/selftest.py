"""Acceptance checks shared by ``cechtower selftest`` and the test suite.

Every check is exact. Randomness only chooses instances; a fixed seed gives
byte-identical reports.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from itertools import combinations

from .abelian import AbelianGroup, Z
from .cech import (
    Cochain,
    TransitionData,
    coboundary,
    cohomology,
    cone_contraction,
    giraud_cocycle,
    is_cocycle,
)
from .complexes import Complex, catalog
from .exactseq import ShortExactSequence, bockstein, connecting, long_exact_sequence
from .spectral import b_term, build_filtered, e_page, image_of_filtration, prop31_sequence
from .towers import (
    TowerCocycle,
    classify,
    enumerate_classes,
    extend_from_class,
    is_trivial,
)

GROUPS = {
    "Z": Z,
    "Z/2": AbelianGroup.cyclic(2),
    "Z/6": AbelianGroup.cyclic(6),
    "Z+Z/4": AbelianGroup(1, (4,)),
}

CATALOG = ("circle(3)", "circle(5)", "sphere2", "torus7", "rp2_6", "klein8", "simplex(4)", "sphere(2)", "sphere(3)")

COHOMOLOGY_TABLE = {
    "circle(3)": ["Z", "Z", "0"],
    "sphere(2)": ["Z", "0", "Z", "0"],
    "torus7": ["Z", "Z^2", "Z", "0"],
    "rp2_6": ["Z", "0", "Z/2", "0"],
    "klein8": ["Z", "Z", "Z/2", "0"],
}


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2} {self.name}: {self.detail}"

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}


def random_cochain(rng: random.Random, x: Complex, g: AbelianGroup, k: int, spread: int = 5) -> Cochain:
    vec = [rng.randint(-spread, spread) for _ in range(x.count(k) * g.ngens)]
    return Cochain(x, g, k, vec)


# ---------------------------------------------------------------------------
# independent cohomology oracle: straight-line boundary matrices and a
# diagonal-only Smith reduction, sharing no code with the main engine
# ---------------------------------------------------------------------------


def oracle_integer_cohomology(maximal: list[tuple[int, ...]]) -> list[str]:
    faces = set()
    for s in maximal:
        for r in range(1, len(s) + 1):
            faces.update(combinations(sorted(s), r))
    top = max(len(s) for s in faces)
    layers = [sorted(s for s in faces if len(s) == r + 1) for r in range(top)]

    def delta(k):
        # rows: (k+1)-simplices, columns: k-simplices
        if k < 0 or k + 1 >= len(layers):
            return []
        col = {s: i for i, s in enumerate(layers[k])}
        rows = []
        for t in layers[k + 1]:
            row = [0] * len(layers[k])
            for j in range(len(t)):
                row[col[t[:j] + t[j + 1:]]] = (-1) ** j
            rows.append(row)
        return rows

    diags = [_oracle_diagonal(delta(k)) for k in range(len(layers))]
    out = []
    for k in range(len(layers) + 1):
        n_k = len(layers[k]) if k < len(layers) else 0
        rank_out = len(diags[k]) if k < len(diags) else 0
        rank_in = len(diags[k - 1]) if k >= 1 else 0
        free = n_k - rank_out - rank_in
        tors = [d for d in (diags[k - 1] if k >= 1 else []) if d > 1]
        parts = ([("Z" if free == 1 else f"Z^{free}")] if free else []) + [f"Z/{d}" for d in sorted(tors)]
        out.append(" + ".join(parts) if parts else "0")
    return out


def _oracle_diagonal(rows: list[list[int]]) -> list[int]:
    a = [list(r) for r in rows]
    diag = []
    while a and a[0]:
        nz = [(abs(v), i, j) for i, r in enumerate(a) for j, v in enumerate(r) if v]
        if not nz:
            break
        _, i, j = min(nz)
        a[0], a[i] = a[i], a[0]
        for r in a:
            r[0], r[j] = r[j], r[0]
        while True:
            p = a[0][0]
            changed = False
            for r in a[1:]:
                q = r[0] // p
                if q:
                    for c in range(len(r)):
                        r[c] -= q * a[0][c]
                changed |= r[0] != 0
            q_row = [a[0][c] // p for c in range(len(a[0]))]
            for c in range(1, len(a[0])):
                if q_row[c]:
                    for r in a:
                        r[c] -= q_row[c] * r[0]
                changed |= a[0][c] != 0
            if changed:
                nz = [(abs(r[0]), i, 0) for i, r in enumerate(a) if r[0]] + [
                    (abs(v), 0, c) for c, v in enumerate(a[0]) if v
                ]
                _, i, j = min(nz)
                a[0], a[i] = a[i], a[0]
                for r in a:
                    r[0], r[j] = r[j], r[0]
                continue
            bad = next((r for r in a[1:] if any(v % p for v in r[1:])), None)
            if bad is None:
                break
            a[0] = [x + y for x, y in zip(a[0], bad)]
        diag.append(abs(a[0][0]))
        a = [r[1:] for r in a[1:]]
    # diagonal entries after elimination already form a divisor chain
    return diag


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def check_coboundary_soundness(rng: random.Random) -> CheckResult:
    names = list(GROUPS)
    complexes = [catalog(n) for n in CATALOG]
    bad = 0
    for _ in range(1000):
        x = rng.choice(complexes)
        g = GROUPS[rng.choice(names)]
        k = rng.randint(0, x.dim)
        c = random_cochain(rng, x, g, k)
        if not coboundary(coboundary(c)).is_zero():
            bad += 1
    return CheckResult(1, "coboundary soundness", bad == 0, f"d(d(c)) = 0 on 1000 random cochains, {bad} failures")


def check_giraud(rng: random.Random) -> CheckResult:
    complexes = [catalog("torus7"), catalog("rp2_6")]
    names = list(GROUPS)
    bad = 0
    for _ in range(200):
        x = rng.choice(complexes)
        g = GROUPS[rng.choice(names)]
        u = random_cochain(rng, x, g, 1)
        c = giraud_cocycle(TransitionData(x, g, u))
        if not is_cocycle(c) or c != coboundary(u):
            bad += 1
    return CheckResult(2, "Giraud 2-cocycle", bad == 0, f"200 transition families, {bad} non-cocycles")


def check_cohomology_table(rng: random.Random) -> CheckResult:
    problems = []
    for name, expected in COHOMOLOGY_TABLE.items():
        x = catalog(name)
        oracle = oracle_integer_cohomology([tuple(s) for s in x.maximal_simplices()])[: len(expected)]
        if oracle != expected:
            problems.append(f"oracle disagrees on {name}: {oracle}")
            continue
        start = time.perf_counter()
        got = [str(cohomology(x, Z, k).invariants) for k in range(len(expected))]
        elapsed = time.perf_counter() - start
        if got != expected:
            problems.append(f"{name}: {got}")
        if elapsed >= 1.0:
            problems.append(f"{name} took over 1 s")
    detail = "; ".join(problems) if problems else f"{len(COHOMOLOGY_TABLE)} spaces match the oracle"
    return CheckResult(3, "classical cohomology table", not problems, detail)


def check_cone_contraction(rng: random.Random) -> CheckResult:
    x = catalog("simplex(5)")
    names = list(GROUPS)
    bad = 0
    for _ in range(100):
        k = rng.randint(1, 4)
        g = GROUPS[rng.choice(names)]
        c = coboundary(random_cochain(rng, x, g, k - 1))
        if coboundary(cone_contraction(c, 0)) != c:
            bad += 1
    nonzero = [
        (name, k) for name, g in GROUPS.items() for k in range(1, x.dim + 2)
        if not cohomology(x, g, k).is_zero()
    ]
    ok = bad == 0 and not nonzero
    return CheckResult(4, "cone contraction", ok, f"100 cocycles, {bad} failures; nonzero cone groups: {nonzero or 'none'}")


def _towers_on_spheres():
    z3 = AbelianGroup.cyclic(3)
    out = []
    for n in (1, 2):
        x = catalog(f"sphere({n + 1})")
        base = TowerCocycle.base(x)
        if n == 2:
            base = extend_from_class(base, AbelianGroup.cyclic(2), ())
        out.append((n, x, base, z3))
    return out


def check_round_trip(rng: random.Random) -> CheckResult:
    problems = []
    for n, x, base, z3 in _towers_on_spheres():
        reps = enumerate_classes(x, z3, n + 1)
        if len(reps) != 3:
            problems.append(f"n={n}: {len(reps)} classes")
        seen = {classify(TowerCocycle(x, base.stack.extended(z3), base.cocycles + (r,))) for r in reps}
        if len(seen) != len(reps):
            problems.append(f"n={n}: enumerated classes collide")
        for v in range(3):
            if classify(extend_from_class(base, z3, (v,))) != (v,):
                problems.append(f"n={n}: class {v} does not round-trip")
    detail = "; ".join(problems) if problems else "n = 1, 2: 3 classes each, all round-trip"
    return CheckResult(5, "tower classification round-trip", not problems, detail)


def check_representative_independence(rng: random.Random) -> CheckResult:
    bad = 0
    for n, x, base, z3 in _towers_on_spheres():
        for v in range(3):
            t = extend_from_class(base, z3, (v,))
            for _ in range(50):
                b = random_cochain(rng, x, z3, n)
                if classify(t.with_top(t.top + coboundary(b))) != (v,):
                    bad += 1
    return CheckResult(6, "representative independence", bad == 0, f"300 coboundary shifts, {bad} changed the class")


def check_triviality(rng: random.Random) -> CheckResult:
    problems = []
    for n, x, base, z3 in _towers_on_spheres():
        for _ in range(10):
            top = coboundary(random_cochain(rng, x, z3, n))
            t = TowerCocycle(x, base.stack.extended(z3), base.cocycles + (top,))
            if not is_trivial(t):
                problems.append(f"n={n}: coboundary top reported nontrivial")
        for v in (1, 2):
            if is_trivial(extend_from_class(base, z3, (v,))):
                problems.append(f"n={n}: class {v} reported trivial")
    detail = "; ".join(problems) if problems else "coboundary tops trivial, nonzero classes nontrivial"
    return CheckResult(7, "triviality", not problems, detail)


def check_spectral_terms(rng: random.Random) -> CheckResult:
    z2, z3 = AbelianGroup.cyclic(2), AbelianGroup.cyclic(3)
    stacks = [(Z,), (Z, z2), (z2, Z, z3)]
    count, problems = 0, []
    for stack in stacks:
        for name in ("circle(3)", "sphere(2)", "torus7"):
            x = catalog(name)
            fc = build_filtered(x, stack)
            for r in (1, 2, 3):
                for p in range(3):
                    for n in range(4):
                        count += 1
                        got = e_page(fc, p, n - p, r).invariants
                        want = cohomology(x, fc.link(p), n).invariants
                        if got != want:
                            problems.append(f"{name} {[str(g) for g in stack]} E^{p},{n - p}_{r}: {got} != {want}")
                        if b_term(fc, p, r, [n])[n] != image_of_filtration(fc, p, n):
                            problems.append(f"{name} B^{p}_{r} in degree {n} differs from d(K_{p})")
    detail = "; ".join(problems[:3]) if problems else f"{count} terms equal H^(p+q)(X, L_p); B^p_r = d(K_p)"
    return CheckResult(8, "spectral terms", not problems, detail)


def check_prop31(rng: random.Random) -> CheckResult:
    fc = build_filtered(catalog("sphere(2)"), (Z, AbelianGroup(), AbelianGroup.cyclic(2)))
    report = prop31_sequence(fc, 2, 0, 3)
    return CheckResult(9, "two-step exact sequence", report.exact,
                       f"{report.checked()} nodes checked on sphere(2), degrees 0..3")


def check_bockstein(rng: random.Random) -> CheckResult:
    rp2 = catalog("rp2_6")
    z2 = AbelianGroup.cyclic(2)
    problems = []
    h1 = cohomology(rp2, z2, 1)
    image = connecting(ShortExactSequence.prime_square(2), rp2, h1.basis[0])
    if not any(image) or bockstein(rp2, 2, 1) != [[1]]:
        problems.append(f"Bockstein of the generator is {image}")
    for s, name in ((ShortExactSequence.prime_square(2), "Z/2->Z/4->Z/2"), (ShortExactSequence.integer_mod(2), "Z->Z->Z/2")):
        for space in ("rp2_6", "torus7"):
            if name.startswith("Z/2") and space == "torus7":
                continue
            if not long_exact_sequence(s, catalog(space), 0, 2).exact:
                problems.append(f"{name} on {space} not exact")
    detail = "; ".join(problems) if problems else "nonzero Bockstein on RP^2; long exact sequences exact"
    return CheckResult(10, "Bockstein and long exact sequence", not problems, detail)


CHECKS = [
    check_coboundary_soundness,
    check_giraud,
    check_cohomology_table,
    check_cone_contraction,
    check_round_trip,
    check_representative_independence,
    check_triviality,
    check_spectral_terms,
    check_prop31,
    check_bockstein,
]


def run_checks(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    return [check(rng) for check in CHECKS]


def render(results: list[CheckResult], fmt: str = "text") -> str:
    if fmt == "json":
        doc = {"passed": all(r.passed for r in results), "checks": [r.to_json() for r in results]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"


def selftest(seed: int = 0, fmt: str = "text") -> tuple[bool, str]:
    """Run every check twice with the same seed and require identical reports."""
    first = run_checks(seed)
    second = run_checks(seed)
    same = render(first, "json") == render(second, "json")
    results = first + [CheckResult(11, "determinism", same, "two runs with the same seed give identical reports")]
    return all(r.passed for r in results), render(results, fmt)
