"""Finite abstract simplicial complexes, used as nerves of covers.

A simplex is a strictly increasing tuple of nonnegative vertex labels.
Labels index the open sets of a cover and need not be contiguous.
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import Iterable, Mapping, Sequence

__all__ = ["Complex", "closure", "nerve_from_cover", "is_cone", "catalog", "CATALOG_NAMES"]


def _normalize(simplex: Sequence[int]) -> tuple[int, ...]:
    t = tuple(sorted(int(v) for v in simplex))
    if any(v < 0 for v in t):
        raise ValueError(f"vertex labels must be nonnegative: {list(simplex)}")
    if len(set(t)) != len(t):
        raise ValueError(f"simplex {list(simplex)} repeats a vertex")
    return t


class Complex:
    """An immutable finite simplicial complex.

    The constructor expects a face-closed family; use :func:`closure` to build
    one from generating simplices.
    """

    __slots__ = ("_by_dim", "_index", "_vertices", "_tables")

    def __init__(self, simplices: Iterable[Sequence[int]] = ()):
        found = {_normalize(s) for s in simplices}
        found.discard(())
        for s in found:
            if len(s) > 1:
                for face in combinations(s, len(s) - 1):
                    if face not in found:
                        raise ValueError(f"face {list(face)} of {list(s)} is missing")
        top = max((len(s) for s in found), default=0)
        by_dim = [[] for _ in range(top)]
        for s in found:
            by_dim[len(s) - 1].append(s)
        self._by_dim = tuple(tuple(sorted(layer)) for layer in by_dim)
        self._index = tuple({s: i for i, s in enumerate(layer)} for layer in self._by_dim)
        self._vertices = tuple(s[0] for s in self._by_dim[0]) if self._by_dim else ()
        self._tables = {}

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def dim(self) -> int:
        """Largest simplex dimension; -1 for the empty complex."""
        return len(self._by_dim) - 1

    def simplices(self, k: int) -> tuple[tuple[int, ...], ...]:
        if 0 <= k < len(self._by_dim):
            return self._by_dim[k]
        return ()

    def all_simplices(self) -> list[tuple[int, ...]]:
        return [s for layer in self._by_dim for s in layer]

    def count(self, k: int) -> int:
        return len(self.simplices(k))

    def index(self, simplex: Sequence[int]) -> int:
        s = tuple(simplex)
        return self._index[len(s) - 1][s]

    def __contains__(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        return 0 < len(s) <= len(self._index) and s in self._index[len(s) - 1]

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self._by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def coboundary_table(self, k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each (k+1)-simplex, the pairs ``(index of face, sign)``.

        The face omitting the j-th vertex enters with sign (-1)^j.
        """
        table = self._tables.get(k)
        if table is None:
            index = self._index[k] if 0 <= k < len(self._index) else {}
            table = tuple(
                tuple((index[s[:j] + s[j + 1:]], -1 if j % 2 else 1) for j in range(len(s)))
                for s in self.simplices(k + 1)
            )
            self._tables[k] = table
        return table

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self._by_dim == other._by_dim

    def __hash__(self) -> int:
        return hash(self._by_dim)

    def __repr__(self) -> str:
        return f"Complex(f_vector={list(self.f_vector)})"

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "simplices": [list(s) for s in self.maximal_simplices()],
        }

    def maximal_simplices(self) -> list[tuple[int, ...]]:
        out = []
        for k, layer in enumerate(self._by_dim):
            above = self.simplices(k + 1)
            covered = {f for s in above for f in combinations(s, k + 1)}
            out.extend(s for s in layer if s not in covered)
        return sorted(out, key=lambda s: (len(s), s))

    @classmethod
    def from_json(cls, obj: Mapping) -> "Complex":
        """Load ``{"vertices": [...], "simplices": [[...], ...]}``; faces may be omitted."""
        if not isinstance(obj, Mapping):
            raise ValueError("complex must be a JSON object")
        if "simplices" not in obj:
            raise ValueError("complex is missing field 'simplices'")
        simplices = obj["simplices"]
        vertices = obj.get("vertices", [])
        if not isinstance(simplices, list) or not all(isinstance(s, list) for s in simplices):
            raise ValueError("field 'simplices' must be a list of lists")
        if not isinstance(vertices, list):
            raise ValueError("field 'vertices' must be a list")
        for v in vertices + [x for s in simplices for x in s]:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"vertex label {v!r} is not an integer")
        return closure(simplices + [[v] for v in vertices])


def closure(generators: Iterable[Sequence[int]]) -> Complex:
    """Smallest simplicial complex containing every generator."""
    found = set()
    for g in generators:
        s = _normalize(g)
        for k in range(1, len(s) + 1):
            found.update(combinations(s, k))
    return Complex(found)


def nerve_from_cover(records: Iterable) -> Complex:
    """Nerve of a cover from intersection records.

    Each record is ``(index_subset, nonempty)`` or a mapping with keys ``sets``
    and ``nonempty``. Subsets flagged nonempty are closed under faces; a face
    explicitly flagged empty is an inconsistency.
    """
    flagged, empty = [], set()
    for rec in records:
        if isinstance(rec, Mapping):
            subset, nonempty = rec["sets"], rec.get("nonempty", True)
        else:
            subset, nonempty = rec
        s = _normalize(subset)
        if not s:
            continue
        if nonempty:
            flagged.append(s)
        else:
            empty.add(s)
    nerve = closure(flagged)
    for s in sorted(empty):
        if s in nerve:
            owner = next(f for f in flagged if set(s) <= set(f))
            raise ValueError(
                f"intersection {list(owner)} is flagged nonempty but its face {list(s)} is flagged empty"
            )
    return nerve


def is_cone(c: Complex, apex: int) -> bool:
    """Whether every simplex extends by ``apex``."""
    return cone_obstruction(c, apex) is None


def cone_obstruction(c: Complex, apex: int) -> tuple[int, ...] | None:
    """A simplex that fails to extend by ``apex``, or None for a cone."""
    if (apex,) not in c:
        raise ValueError(f"apex {apex} is not a vertex of the complex")
    for s in c.all_simplices():
        if apex not in s and tuple(sorted(s + (apex,))) not in c:
            return s
    return None


# ---------------------------------------------------------------------------
# Catalog of classical triangulations
# ---------------------------------------------------------------------------

_RP2_6 = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]

# 8-vertex Klein bottle: each edge lies in two triangles, non-orientable, chi = 0
_KLEIN_8 = [
    (0, 1, 5), (0, 1, 7), (0, 2, 3), (0, 2, 6), (0, 3, 4), (0, 4, 5), (0, 6, 7), (1, 2, 5),
    (1, 2, 6), (1, 3, 4), (1, 3, 6), (1, 4, 7), (2, 3, 5), (3, 5, 6), (4, 5, 7), (5, 6, 7),
]

CATALOG_NAMES = (
    "circle(n)", "sphere2", "torus7", "rp2_6", "klein8", "simplex(n)", "sphere(n)",
)

_PARAM = re.compile(r"^(circle|simplex|sphere)\s*[(:]?\s*(\d+)\s*\)?$")


def _circle(n: int) -> Complex:
    if n < 3:
        raise ValueError("circle(n) needs n >= 3")
    return closure([(i, (i + 1) % n) for i in range(n)])


def _simplex(n: int) -> Complex:
    return closure([tuple(range(n + 1))])


def _sphere(n: int) -> Complex:
    full = tuple(range(n + 2))
    return closure(combinations(full, n + 1))


def catalog(name: str) -> Complex:
    """A named classical triangulation.

    >>> catalog("sphere(2)").f_vector
    (4, 6, 4)
    """
    key = name.strip().lower()
    fixed = {
        "sphere2": lambda: closure(
            (a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)
        ),
        "torus7": lambda: closure(
            [tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))) for i in range(7)]
            + [tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))) for i in range(7)]
        ),
        "rp2_6": lambda: closure(_RP2_6),
        "klein8": lambda: closure(_KLEIN_8),
    }
    if key in fixed:
        return fixed[key]()
    m = _PARAM.match(key)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"circle": _circle, "simplex": _simplex, "sphere": _sphere}[kind](n)
    raise ValueError(f"unknown catalog entry {name!r}; available: {', '.join(CATALOG_NAMES)}")
