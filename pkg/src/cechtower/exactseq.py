"""Short exact coefficient sequences and their long exact cohomology sequences.

For ``0 -> A' -> A -> A'' -> 0`` the connecting map lifts a cocycle over
``A''`` valuewise to ``A``, takes the coboundary and pulls the result back
along the injection. Induced maps are recorded as integer matrices (images
of basis classes) so exactness becomes a finite lattice comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .abelian import (
    AbelianGroup,
    GroupHom,
    Subquotient,
    Z,
    image_and_kernel,
    relation_lattice,
)
from .cech import Cochain, CohomologyGroup, coboundary, cohomology, induced_map, map_cochain
from .complexes import Complex

__all__ = [
    "ShortExactSequence",
    "SESReport",
    "SequenceNode",
    "ExactnessReport",
    "sequence_report",
    "validate_ses",
    "connecting",
    "connecting_cocycle",
    "connecting_map",
    "long_exact_sequence",
    "AcyclicityVerdict",
    "theorem51_model",
    "bockstein",
]


class ShortExactSequence:
    """``0 -> sub -inject-> mid -project-> quo -> 0``.

    Exactness is checked on construction unless ``check=False``; use
    :func:`validate_ses` for a per-axiom report.
    """

    def __init__(self, sub: AbelianGroup, mid: AbelianGroup, quo: AbelianGroup,
                 inject, project, check: bool = True):
        self.sub, self.mid, self.quo = sub, mid, quo
        self.inject = inject if isinstance(inject, GroupHom) else GroupHom(sub, mid, inject)
        self.project = project if isinstance(project, GroupHom) else GroupHom(mid, quo, project)
        if (self.inject.source, self.inject.target) != (sub, mid):
            raise ValueError("injection must map the subgroup into the middle group")
        if (self.project.source, self.project.target) != (mid, quo):
            raise ValueError("projection must map the middle group onto the quotient")
        if check:
            report = validate_ses(self)
            if not report.passed:
                raise ValueError(f"not a short exact sequence: {report.failures()}")

    @classmethod
    def integer_mod(cls, m: int) -> "ShortExactSequence":
        """``0 -> Z -m-> Z -> Z/m -> 0``."""
        return cls(Z, Z, AbelianGroup.cyclic(m), [[m]], [[1]])

    @classmethod
    def prime_square(cls, p: int) -> "ShortExactSequence":
        """``0 -> Z/p -p-> Z/p^2 -> Z/p -> 0``."""
        zp = AbelianGroup.cyclic(p)
        return cls(zp, AbelianGroup.cyclic(p * p), zp, [[p]], [[1]])

    def to_json(self) -> dict:
        return {
            "A'": self.sub.to_json(),
            "A": self.mid.to_json(),
            "A''": self.quo.to_json(),
            "inject": self.inject.matrix,
            "project": self.project.matrix,
        }

    @classmethod
    def from_json(cls, obj: Mapping, check: bool = True) -> "ShortExactSequence":
        if not isinstance(obj, Mapping):
            raise ValueError("short exact sequence must be a JSON object")
        for name in ("A'", "A", "A''", "inject", "project"):
            if name not in obj:
                raise ValueError(f"short exact sequence is missing field '{name}'")
        groups = [AbelianGroup.from_json(obj[k]) for k in ("A'", "A", "A''")]
        for name in ("inject", "project"):
            mat = obj[name]
            if not isinstance(mat, list) or not all(isinstance(r, list) for r in mat):
                raise ValueError(f"field '{name}' must be a matrix (list of rows)")
        return cls(*groups, obj["inject"], obj["project"], check=check)

    def __repr__(self):
        return f"0 -> {self.sub} -> {self.mid} -> {self.quo} -> 0"


@dataclass(frozen=True)
class SESReport:
    injective: bool
    surjective: bool
    exact_middle: bool

    @property
    def passed(self) -> bool:
        return self.injective and self.surjective and self.exact_middle

    def failures(self) -> list[str]:
        names = ("injective", "surjective", "exact_middle")
        return [n for n in names if not getattr(self, n)]

    def to_json(self) -> dict:
        return {"injective": self.injective, "surjective": self.surjective,
                "exact_middle": self.exact_middle, "passed": self.passed}


def validate_ses(s: ShortExactSequence) -> SESReport:
    image, kernel = image_and_kernel(s.inject.columns(), s.project.columns(), s.mid, s.quo)
    return SESReport(s.inject.is_injective(), s.project.is_surjective(), image == kernel)


# ---------------------------------------------------------------------------
# exactness bookkeeping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceNode:
    label: str
    group: AbelianGroup
    image: AbelianGroup | None
    kernel: AbelianGroup | None
    composite_zero: bool | None
    exact: bool | None

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "group": str(self.group),
            "image_in": None if self.image is None else str(self.image),
            "kernel_out": None if self.kernel is None else str(self.kernel),
            "composite_zero": self.composite_zero,
            "exact": self.exact,
        }


@dataclass(frozen=True)
class ExactnessReport:
    nodes: tuple[SequenceNode, ...]
    maps: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def exact(self) -> bool:
        return all(n.exact is not False for n in self.nodes)

    def checked(self) -> int:
        return sum(n.exact is not None for n in self.nodes)

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "nodes": [n.to_json() for n in self.nodes],
            "maps": [[list(c) for c in m] for m in self.maps],
        }

    def to_text(self) -> str:
        lines = []
        for node in self.nodes:
            verdict = {None: "-", True: "exact", False: "NOT EXACT"}[node.exact]
            extra = ""
            if node.exact is not None:
                extra = f"  (im {node.image}, ker {node.kernel})"
            lines.append(f"{node.label:<24} {str(node.group):<16} {verdict}{extra}")
        return "\n".join(lines)


def sequence_report(labels: Sequence[str], groups: Sequence[AbelianGroup],
                    maps: Sequence[Sequence[Sequence[int]]]) -> ExactnessReport:
    """Exactness of ``G_0 -> G_1 -> ... -> G_N`` at every interior node.

    ``maps[t]`` lists the images of the canonical generators of ``G_t`` in
    canonical coordinates of ``G_{t+1}``.
    """
    if len(maps) != len(groups) - 1:
        raise ValueError("need one map between each pair of consecutive groups")
    for t, m in enumerate(maps):
        # well-definedness check on the torsion of the source
        GroupHom.from_columns(groups[t], groups[t + 1], m)
    nodes = []
    for t, g in enumerate(groups):
        if 0 < t < len(groups) - 1:
            image, kernel = image_and_kernel(maps[t - 1], maps[t], g, groups[t + 1])
            rel = relation_lattice(g.orders)
            nodes.append(SequenceNode(
                labels[t], g,
                Subquotient(image, rel).invariants,
                Subquotient(kernel, rel).invariants,
                kernel.contains_lattice(image),
                image == kernel,
            ))
        else:
            nodes.append(SequenceNode(labels[t], g, None, None, None, None))
    return ExactnessReport(tuple(nodes), tuple(tuple(tuple(c) for c in m) for m in maps))


# ---------------------------------------------------------------------------
# connecting homomorphism
# ---------------------------------------------------------------------------


def lift_cochain(s: ShortExactSequence, c: Cochain) -> Cochain:
    """A cochain over ``A`` projecting to ``c``, lifted value by value."""
    if c.group != s.quo:
        raise ValueError(f"cochain over {c.group} does not live in the quotient {s.quo}")
    values = {}
    for simplex, val in c.values.items():
        pre = s.project.preimage(val)
        if pre is None:
            raise ArithmeticError(f"value {val} at {list(simplex)} has no preimage; projection is not onto")
        values[simplex] = pre
    return Cochain.from_values(c.complex, s.mid, c.degree, values)


def connecting_cocycle(s: ShortExactSequence, c: Cochain, lift: Cochain | None = None) -> Cochain:
    """The cocycle over ``A'`` representing the connecting image of ``c``."""
    if lift is None:
        lift = lift_cochain(s, c)
    elif map_cochain(s.project, lift) != c:
        raise ValueError("the supplied lift does not project to the cocycle")
    db = coboundary(lift)
    values = {}
    for simplex, val in db.values.items():
        pre = s.inject.preimage(val)
        if pre is None:
            raise ArithmeticError(f"coboundary value at {list(simplex)} is outside the image of the injection")
        values[simplex] = pre
    return Cochain.from_values(c.complex, s.sub, c.degree + 1, values)


def connecting(s: ShortExactSequence, x: Complex, c: Cochain, lift: Cochain | None = None) -> tuple[int, ...]:
    """Class of the connecting image of the cocycle ``c`` in ``H^{k+1}(x, A')``."""
    if c.complex != x:
        raise ValueError("cochain lives on a different complex")
    if not coboundary(c).is_zero():
        raise ValueError("connecting map needs a cocycle")
    target = cohomology(x, s.sub, c.degree + 1)
    return target.reduce(connecting_cocycle(s, c, lift))


def connecting_map(s: ShortExactSequence, source: CohomologyGroup, target: CohomologyGroup) -> list[list[int]]:
    """Images of the basis classes of ``H^k(A'')`` in ``H^{k+1}(A')``."""
    return [list(target.reduce(connecting_cocycle(s, b))) for b in source.basis]


def long_exact_sequence(s: ShortExactSequence, x: Complex, first: int, last: int) -> ExactnessReport:
    """``H^k(A') -> H^k(A) -> H^k(A'') -> H^{k+1}(A') -> ...`` for ``first <= k <= last``.

    Starting at degree 0 prepends the zero group, so injectivity of the first
    map is checked as well.
    """
    if first < 0 or last < first:
        raise ValueError("need 0 <= first <= last")
    labels, groups, maps = [], [], []
    if first == 0:
        labels.append("0")
        groups.append(AbelianGroup())
    prev_quo = None
    for k in range(first, last + 2):
        h_sub = cohomology(x, s.sub, k)
        if prev_quo is not None:
            maps.append(connecting_map(s, prev_quo, h_sub))
        elif groups:
            maps.append([])
        labels.append(f"H^{k}(X, {s.sub})")
        groups.append(h_sub.invariants)
        if k > last:
            break
        h_mid = cohomology(x, s.mid, k)
        h_quo = cohomology(x, s.quo, k)
        maps.append(induced_map(s.inject, h_sub, h_mid))
        maps.append(induced_map(s.project, h_mid, h_quo))
        labels += [f"H^{k}(X, {s.mid})", f"H^{k}(X, {s.quo})"]
        groups += [h_mid.invariants, h_quo.invariants]
        prev_quo = h_quo
    return sequence_report(labels, groups, maps)


def bockstein(x: Complex, p: int, k: int) -> list[list[int]]:
    """The connecting map ``H^k(x, Z/p) -> H^{k+1}(x, Z/p)`` of ``Z/p -> Z/p^2 -> Z/p``."""
    s = ShortExactSequence.prime_square(p)
    zp = AbelianGroup.cyclic(p)
    return connecting_map(s, cohomology(x, zp, k), cohomology(x, zp, k + 1))


# ---------------------------------------------------------------------------
# middle-acyclicity model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AcyclicityVerdict:
    status: str  # "hypothesis-not-met", "isomorphism" or "not-isomorphism"
    degree: int
    middle: tuple[AbelianGroup, AbelianGroup]
    source: AbelianGroup | None = None
    target: AbelianGroup | None = None
    checked_by: str | None = None

    @property
    def hypothesis(self) -> bool:
        return self.status != "hypothesis-not-met"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "degree": self.degree,
            "middle": [str(g) for g in self.middle],
            "source": None if self.source is None else str(self.source),
            "target": None if self.target is None else str(self.target),
            "checked_by": self.checked_by,
        }


def theorem51_model(s: ShortExactSequence, x: Complex, k: int) -> AcyclicityVerdict:
    """When ``H^k(A) = H^{k+1}(A) = 0``, check that the connecting map
    ``H^k(A'') -> H^{k+1}(A')`` is bijective.

    Finite groups are checked by enumerating every class; infinite ones by
    comparing kernel and image lattices.
    """
    middle = (cohomology(x, s.mid, k).invariants, cohomology(x, s.mid, k + 1).invariants)
    if not (middle[0].is_zero() and middle[1].is_zero()):
        return AcyclicityVerdict("hypothesis-not-met", k, middle)
    h_src = cohomology(x, s.quo, k)
    h_tgt = cohomology(x, s.sub, k + 1)
    cols = connecting_map(s, h_src, h_tgt)
    src, tgt = h_src.invariants, h_tgt.invariants
    if src.is_finite() and tgt.is_finite():
        images = set()
        for coords in itertools.product(*(range(d) for d in src.torsion)):
            img = [0] * tgt.ngens
            for c, col in zip(coords, cols):
                for i in range(tgt.ngens):
                    img[i] += c * col[i]
            images.add(tuple(v % d for v, d in zip(img, tgt.torsion)))
        bijective = len(images) == src.order == tgt.order
        how = "enumeration"
    else:
        hom = GroupHom.from_columns(src, tgt, cols)
        bijective = hom.is_injective() and hom.is_surjective()
        how = "lattices"
    status = "isomorphism" if bijective else "not-isomorphism"
    return AcyclicityVerdict(status, k, middle, src, tgt, how)

