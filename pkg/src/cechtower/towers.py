"""Abelian gerbed towers held as families of Čech cocycles.

A tower of height n over a complex X carries links ``(L_1, ..., L_n)`` and
cocycles ``(c_2, ..., c_{n+1})`` where ``c_{j+1}`` has degree j + 1 and values
in ``L_j``. Its class is ``[c_{n+1}]`` in ``H^{n+1}(X, L_n)``; the lower
cocycles are scaffolding and do not enter the classification.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .abelian import AbelianGroup
from .cech import Cochain, coboundary, cohomology, is_coboundary
from .complexes import Complex

__all__ = [
    "LinkStack",
    "TowerCocycle",
    "TowerError",
    "LevelReport",
    "TowerReport",
    "validate_tower",
    "classify",
    "is_trivial",
    "equivalent",
    "extend_from_class",
    "enumerate_classes",
]

MAX_ENUMERATION = 1 << 20


class TowerError(ValueError):
    pass


@dataclass(frozen=True)
class LinkStack:
    """Links ``(L_1, ..., L_n)``; empty only for the bare base of a tower."""

    links: tuple[AbelianGroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        for g in self.links:
            if not isinstance(g, AbelianGroup):
                raise TypeError(f"link {g!r} is not an AbelianGroup")

    def __len__(self):
        return len(self.links)

    def __getitem__(self, j: int) -> AbelianGroup:
        """The link ``L_j`` (1-based, as in the tower notation)."""
        if not 1 <= j <= len(self.links):
            raise IndexError(f"no link L_{j} in a stack of height {len(self.links)}")
        return self.links[j - 1]

    def extended(self, g: AbelianGroup) -> "LinkStack":
        return LinkStack(self.links + (g,))


@dataclass(frozen=True)
class TowerCocycle:
    complex: Complex
    stack: LinkStack
    cocycles: tuple[Cochain, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "cocycles", tuple(self.cocycles))
        if len(self.cocycles) != len(self.stack):
            raise TowerError(
                f"{len(self.stack)} links need {len(self.stack)} cocycles, got {len(self.cocycles)}"
            )

    @classmethod
    def base(cls, complex: Complex) -> "TowerCocycle":
        """The height-0 tower: just the base space."""
        return cls(complex, LinkStack(), ())

    @classmethod
    def zero(cls, complex: Complex, links: Sequence[AbelianGroup]) -> "TowerCocycle":
        stack = LinkStack(tuple(links))
        return cls(complex, stack, tuple(Cochain(complex, g, j + 2) for j, g in enumerate(stack.links)))

    @property
    def height(self) -> int:
        return len(self.stack)

    @property
    def top(self) -> Cochain:
        if not self.cocycles:
            raise TowerError("a height-0 tower has no classifying cocycle")
        return self.cocycles[-1]

    def with_top(self, c: Cochain) -> "TowerCocycle":
        return TowerCocycle(self.complex, self.stack, self.cocycles[:-1] + (c,))

    def to_json(self) -> dict:
        return {
            "complex": self.complex.to_json(),
            "links": [g.to_json() for g in self.stack.links],
            "cocycles": [c.to_json() for c in self.cocycles],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "TowerCocycle":
        if not isinstance(obj, Mapping):
            raise ValueError("tower must be a JSON object")
        for name in ("complex", "links", "cocycles"):
            if name not in obj:
                raise ValueError(f"tower is missing field '{name}'")
        if not isinstance(obj["links"], list) or not isinstance(obj["cocycles"], list):
            raise ValueError("fields 'links' and 'cocycles' must be lists")
        complex = Complex.from_json(obj["complex"])
        links = tuple(AbelianGroup.from_json(g) for g in obj["links"])
        cocycles = tuple(Cochain.from_json(c, complex) for c in obj["cocycles"])
        return cls(complex, LinkStack(links), cocycles)


@dataclass(frozen=True)
class LevelReport:
    level: int
    degree: int
    expected_degree: int
    group: AbelianGroup
    expected_group: AbelianGroup
    cocycle: bool
    trivial: bool | None

    @property
    def degree_ok(self) -> bool:
        return self.degree == self.expected_degree

    @property
    def group_ok(self) -> bool:
        return self.group == self.expected_group

    @property
    def passed(self) -> bool:
        return self.degree_ok and self.group_ok and self.cocycle

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "degree": self.degree,
            "expected_degree": self.expected_degree,
            "group": str(self.group),
            "expected_group": str(self.expected_group),
            "degree_ok": self.degree_ok,
            "group_ok": self.group_ok,
            "cocycle": self.cocycle,
            "coboundary": self.trivial,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class TowerReport:
    levels: tuple[LevelReport, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.levels)

    def failures(self) -> list[int]:
        return [r.level for r in self.levels if not r.passed]

    def to_json(self) -> dict:
        return {"passed": self.passed, "levels": [r.to_json() for r in self.levels]}


def validate_tower(t: TowerCocycle) -> TowerReport:
    """Check each level: degree j + 1, values in ``L_j`` and the cocycle condition.

    Each passing level also records whether its cocycle is a coboundary.
    """
    levels = []
    for j, (g, c) in enumerate(zip(t.stack.links, t.cocycles), start=1):
        shape_ok = c.complex == t.complex
        cocycle = shape_ok and coboundary(c).is_zero()
        trivial = None
        if cocycle and c.degree == j + 1 and c.group == g:
            trivial = is_coboundary(c) is not None
        levels.append(LevelReport(j, c.degree, j + 1, c.group, g, cocycle, trivial))
    return TowerReport(tuple(levels))


def _require_valid(t: TowerCocycle):
    if t.height == 0:
        raise TowerError("a height-0 tower has no class")
    report = validate_tower(t)
    if not report.passed:
        raise TowerError(f"invalid tower: levels {report.failures()} fail validation")


def classify(t: TowerCocycle) -> tuple[int, ...]:
    """Coordinates of ``[c_{n+1}]`` in ``H^{n+1}(X, L_n)``."""
    _require_valid(t)
    h = cohomology(t.complex, t.stack[t.height], t.height + 1)
    return h.reduce(t.top)


def is_trivial(t: TowerCocycle) -> bool:
    return not any(classify(t))


def equivalent(t1: TowerCocycle, t2: TowerCocycle) -> bool:
    if t1.complex != t2.complex or t1.stack != t2.stack:
        raise TowerError("towers over different complexes or link stacks cannot be compared")
    return classify(t1) == classify(t2)


def extend_from_class(t: TowerCocycle, link: AbelianGroup, x: Sequence[int]) -> TowerCocycle:
    """Append a representative of class ``x`` in ``H^{n+2}(X, link)`` as the next cocycle."""
    if t.height:
        _require_valid(t)
    h = cohomology(t.complex, link, t.height + 2)
    x = tuple(int(v) for v in x)
    if h.is_zero():
        if any(x):
            raise TowerError(f"H^{t.height + 2}(X, {link}) is zero; only the zero class exists")
        x = ()
    if len(x) != h.invariants.ngens:
        raise TowerError(
            f"class in H^{t.height + 2}(X, {link}) = {h.invariants} needs "
            f"{h.invariants.ngens} coordinates, got {len(x)}"
        )
    top = h.representative(x)
    return TowerCocycle(t.complex, t.stack.extended(link), t.cocycles + (top,))


def enumerate_classes(x: Complex, g: AbelianGroup, k: int) -> list[Cochain]:
    """One cocycle per class of ``H^k(x, g)``, by exhaustive search.

    All k-cochains are enumerated, cocycles kept, and cocycles are joined
    whenever they differ by an elementary coboundary ``d(g_j at one simplex)``.
    The representative of each class is its lexicographically least vector.
    Independent of the Smith normal form machinery, so it serves as an oracle.
    """
    if not g.is_finite():
        raise ValueError(f"cannot enumerate cochains with infinite coefficients {g}")
    n = x.count(k)
    total = g.order ** n
    if total > MAX_ENUMERATION:
        raise ValueError(f"{total} cochains is too many to enumerate")
    m = g.ngens
    orders = g.torsion

    def norm(vec):
        return tuple(v % orders[i % m] for i, v in enumerate(vec))

    cocycles = set()
    for flat in itertools.product(*(range(d) for d in orders * n)):
        if coboundary(Cochain(x, g, k, flat)).is_zero():
            cocycles.add(flat)

    moves = []
    if k > 0:
        for s in range(x.count(k - 1)):
            for j in range(m):
                e = [0] * (x.count(k - 1) * m)
                e[s * m + j] = 1
                moves.append(coboundary(Cochain(x, g, k - 1, e)).vector)

    reps, seen = [], set()
    for start in sorted(cocycles):
        if start in seen:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for mv in moves:
                nxt = norm(a + b for a, b in zip(cur, mv))
                if nxt not in orbit:
                    orbit.add(nxt)
                    queue.append(nxt)
        seen |= orbit
        reps.append(Cochain(x, g, k, min(orbit)))
    return reps

