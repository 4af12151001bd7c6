"""Čech cochains with constant abelian coefficients.

Cochains are alternating: a value is stored on each sorted simplex, a
permuted index tuple picks up the sign of the sorting permutation and a tuple
with a repeated index evaluates to zero. The coboundary is

    (dc)(i_0, ..., i_{k+1}) = sum_j (-1)^j c(i_0, ..., î_j, ..., i_{k+1}).

Cohomology is computed on the lifted integer lattices: a k-cochain with
values in ``Z^r + Z/d_1 + ...`` is an integer vector modulo the relation
lattice generated by ``d_i`` on the torsion coordinates, so one exact
lattice engine serves every coefficient group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .abelian import (
    AbelianGroup,
    GroupElement,
    GroupHom,
    Lattice,
    Subquotient,
    reduce_coords,
    relation_columns,
    solve_combination,
)
from .complexes import Complex, cone_obstruction

__all__ = [
    "Cochain",
    "CohomologyGroup",
    "TransitionData",
    "coboundary",
    "is_cocycle",
    "is_coboundary",
    "cohomology",
    "giraud_cocycle",
    "cone_contraction",
    "map_cochain",
    "induced_map",
]


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if an entry repeats)."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    seen = list(seq)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def _parse_key(key) -> tuple[int, ...]:
    if isinstance(key, str):
        return tuple(int(x) for x in key.split(",") if x.strip())
    return tuple(int(x) for x in key)


class Cochain:
    """A degree-k alternating Čech cochain.

    ``vector`` lists the coordinates of the value on each sorted k-simplex, in
    the complex's simplex order, with torsion coordinates reduced. Degree -1
    holds only the zero cochain, so every coboundary has a witness.
    """

    __slots__ = ("complex", "group", "degree", "vector")

    def __init__(self, complex: Complex, group: AbelianGroup, degree: int, vector: Iterable[int] | None = None):
        if degree < -1:
            raise ValueError("cochain degree must be at least -1")
        m = group.ngens
        size = complex.count(degree) * m
        vec = [0] * size if vector is None else list(vector)
        if len(vec) != size:
            raise ValueError(f"expected {size} coordinates for a {degree}-cochain, got {len(vec)}")
        orders = group.orders
        if any(orders):
            vec = [x % orders[i % m] if orders[i % m] else x for i, x in enumerate(vec)]
        self.complex = complex
        self.group = group
        self.degree = degree
        self.vector = tuple(vec)

    @classmethod
    def zero(cls, complex: Complex, group: AbelianGroup, degree: int) -> "Cochain":
        return cls(complex, group, degree)

    @classmethod
    def from_values(cls, complex: Complex, group: AbelianGroup, degree: int, values: Mapping) -> "Cochain":
        """Build from ``{index tuple: value}``; tuples may be in any order.

        Values are GroupElements or coordinate sequences; an unsorted tuple
        stores the value times the sign of the sorting permutation.
        """
        m = group.ngens
        vec = [0] * (complex.count(degree) * m)
        seen = set()
        for key, val in values.items():
            idx = _parse_key(key)
            coords = val.coords if isinstance(val, GroupElement) else tuple(int(x) for x in val)
            if isinstance(val, GroupElement) and val.owner != group:
                raise ValueError(f"value {val} does not lie in {group}")
            if len(coords) != m:
                raise ValueError(f"value at {list(idx)} needs {m} coordinates, got {len(coords)}")
            if len(idx) != degree + 1:
                raise ValueError(f"index {list(idx)} does not have {degree + 1} entries")
            sign = permutation_sign(idx)
            if sign == 0:
                if any(reduce_coords(group.orders, coords)):
                    raise ValueError(f"nonzero value on degenerate index {list(idx)}")
                continue
            s = tuple(sorted(idx))
            if s not in complex:
                raise ValueError(f"{list(idx)} is not a simplex of the complex")
            if s in seen:
                raise ValueError(f"simplex {list(s)} is assigned twice")
            seen.add(s)
            base = complex.index(s) * m
            for j, x in enumerate(coords):
                vec[base + j] = sign * x
        return cls(complex, group, degree, vec)

    def __getitem__(self, key) -> GroupElement:
        idx = _parse_key(key)
        if len(idx) != self.degree + 1:
            raise KeyError(f"index {list(idx)} does not have {self.degree + 1} entries")
        sign = permutation_sign(idx)
        if sign == 0:
            return self.group.zero()
        s = tuple(sorted(idx))
        if s not in self.complex:
            raise KeyError(f"{list(idx)} is not a simplex of the complex")
        m = self.group.ngens
        base = self.complex.index(s) * m
        return GroupElement(self.group, tuple(sign * x for x in self.vector[base: base + m]))

    @property
    def values(self) -> dict[tuple[int, ...], GroupElement]:
        return {s: self[s] for s in self.complex.simplices(self.degree)}

    def support(self) -> list[tuple[int, ...]]:
        return [s for s, v in self.values.items() if not v.is_zero()]

    def is_zero(self) -> bool:
        return not any(self.vector)

    def _like(self, vec) -> "Cochain":
        return Cochain(self.complex, self.group, self.degree, vec)

    def _check(self, other):
        if not isinstance(other, Cochain):
            raise TypeError(f"cannot combine a cochain with {type(other).__name__}")
        if (other.complex, other.group, other.degree) != (self.complex, self.group, self.degree):
            raise ValueError("cochains live on different complexes, groups or degrees")

    def __add__(self, other):
        self._check(other)
        return self._like(a + b for a, b in zip(self.vector, other.vector))

    def __sub__(self, other):
        self._check(other)
        return self._like(a - b for a, b in zip(self.vector, other.vector))

    def __neg__(self):
        return self._like(-a for a in self.vector)

    def __rmul__(self, n: int):
        return self._like(n * a for a in self.vector)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.complex, self.group, self.degree, self.vector) == (
            other.complex, other.group, other.degree, other.vector)

    def __hash__(self):
        return hash((self.group, self.degree, self.vector))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, group={self.group}, support={len(self.support())})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "group": self.group.to_json(),
            "values": {",".join(map(str, s)): list(v.coords) for s, v in self.values.items() if not v.is_zero()},
        }

    @classmethod
    def from_json(cls, obj: Mapping, complex: Complex) -> "Cochain":
        """Load ``{"degree": k, "group": {...}, "values": {"0,1,2": [coords]}}``."""
        if not isinstance(obj, Mapping):
            raise ValueError("cochain must be a JSON object")
        for name in ("degree", "group"):
            if name not in obj:
                raise ValueError(f"cochain is missing field '{name}'")
        degree = obj["degree"]
        if isinstance(degree, bool) or not isinstance(degree, int) or degree < 0:
            raise ValueError("field 'degree' must be a nonnegative integer")
        values = obj.get("values", {})
        if not isinstance(values, Mapping):
            raise ValueError("field 'values' must be an object")
        group = AbelianGroup.from_json(obj["group"])
        norm = {}
        for key, val in values.items():
            if isinstance(val, int) and not isinstance(val, bool):
                val = [val]
            if not isinstance(val, list):
                raise ValueError(f"value at '{key}' must be a coordinate list")
            norm[key] = val
        return cls.from_values(complex, group, degree, norm)


# ---------------------------------------------------------------------------
# coboundary
# ---------------------------------------------------------------------------


def _coboundary_vector(complex: Complex, m: int, k: int, vec: Sequence[int]) -> list[int]:
    out = []
    for faces in complex.coboundary_table(k):
        acc = [0] * m
        for f, sign in faces:
            base = f * m
            for j in range(m):
                x = vec[base + j]
                if x:
                    acc[j] += sign * x
        out.extend(acc)
    return out


def coboundary(c: Cochain) -> Cochain:
    """The Čech coboundary ``dc``, a cochain of degree ``c.degree + 1``."""
    if c.degree == -1:
        return Cochain(c.complex, c.group, 0)
    vec = _coboundary_vector(c.complex, c.group.ngens, c.degree, c.vector)
    return Cochain(c.complex, c.group, c.degree + 1, vec)


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


def coboundary_columns(complex: Complex, orders: Sequence[int], k: int) -> list[list[int]]:
    """Images of the coordinate basis of C^k under d, as vectors of C^{k+1}."""
    m = len(orders)
    n_next = complex.count(k + 1) * m
    cols = [[0] * n_next for _ in range(complex.count(k) * m)]
    for t, faces in enumerate(complex.coboundary_table(k)):
        for f, sign in faces:
            for j in range(m):
                cols[f * m + j][t * m + j] += sign
    return cols


def is_coboundary(c: Cochain) -> Cochain | None:
    """A cochain ``b`` with ``db == c``, or None."""
    k = c.degree
    if k == 0:
        # the only (-1)-cochain is zero
        return Cochain(c.complex, c.group, -1) if c.is_zero() else None
    orders = c.group.orders
    cols = coboundary_columns(c.complex, orders, k - 1)
    rel = relation_columns(orders, c.complex.count(k))
    y = solve_combination(cols + rel, c.vector, len(c.vector))
    if y is None:
        return None
    return Cochain(c.complex, c.group, k - 1, y[: len(cols)])


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------


@lru_cache(maxsize=512)
def lattice_cohomology(complex: Complex, orders: tuple[int, ...], k: int) -> Subquotient:
    """``H^k`` as (lifted cocycles) / (lifted coboundaries + relations)."""
    m = len(orders)
    n_k = complex.count(k) * m
    rel_k = relation_columns(orders, complex.count(k))
    rel_next = Lattice(complex.count(k + 1) * m, relation_columns(orders, complex.count(k + 1)))
    cocycles = Lattice.full(n_k).preimage(coboundary_columns(complex, orders, k), rel_next)
    below = coboundary_columns(complex, orders, k - 1) if k > 0 else []
    coboundaries = Lattice(n_k, below + rel_k)
    return Subquotient(cocycles, coboundaries)


class CohomologyGroup:
    """``H^k(X, G)`` with canonical invariants, representative cocycles and a reduction map."""

    def __init__(self, complex: Complex, group: AbelianGroup, degree: int):
        self.complex = complex
        self.group = group
        self.degree = degree
        self._sq = lattice_cohomology(complex, group.orders, degree)
        self.invariants: AbelianGroup = self._sq.invariants
        self.basis = [Cochain(complex, group, degree, g) for g in self._sq.generators]

    def reduce(self, c: Cochain) -> tuple[int, ...]:
        """Coordinates of the class of the cocycle ``c``; zero exactly on coboundaries."""
        if (c.complex, c.group, c.degree) != (self.complex, self.group, self.degree):
            raise ValueError("cochain does not match this cohomology group")
        try:
            return self._sq.reduce(c.vector)
        except ValueError:
            raise ValueError("cochain is not a cocycle") from None

    def representative(self, coords: Sequence[int]) -> Cochain:
        """The combination of basis cocycles with the given coordinates."""
        return Cochain(self.complex, self.group, self.degree, self._sq.lift(list(coords)))

    def is_zero(self) -> bool:
        return self.invariants.is_zero()

    def classes(self) -> list[tuple[int, ...]]:
        """All class coordinates of a finite group, in lexicographic order."""
        return [e.coords for e in self.invariants.elements()]

    def __repr__(self):
        return f"H^{self.degree}({self.group}) = {self.invariants}"


def cohomology(x: Complex, g: AbelianGroup, k: int) -> CohomologyGroup:
    """``H^k(x, g)``.

    >>> from cechtower.complexes import catalog
    >>> from cechtower.abelian import Z
    >>> str(cohomology(catalog("circle(3)"), Z, 1).invariants)
    'Z'
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return CohomologyGroup(x, g, k)


def map_cochain(f: GroupHom, c: Cochain) -> Cochain:
    """Apply a coefficient homomorphism valuewise."""
    if c.group != f.source:
        raise ValueError(f"cochain over {c.group} cannot be pushed along a map from {f.source}")
    m = f.source.ngens
    out = []
    for i in range(0, len(c.vector), m):
        chunk = c.vector[i: i + m]
        out.extend(sum(row[j] * chunk[j] for j in range(m)) for row in f.matrix)
    return Cochain(c.complex, f.target, c.degree, out)


def induced_map(f: GroupHom, source: CohomologyGroup, target: CohomologyGroup) -> list[list[int]]:
    """The map ``H^k(X, A) -> H^k(X, B)`` as images of the source basis classes."""
    return [list(target.reduce(map_cochain(f, b))) for b in source.basis]


# ---------------------------------------------------------------------------
# transition data and cone contraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransitionData:
    """Edge transitions ``u_ij`` of a gerbe-like gluing, ``u_ji = -u_ij``."""

    complex: Complex
    group: AbelianGroup
    u: Cochain

    def __post_init__(self):
        if self.u.degree != 1 or self.u.group != self.group or self.u.complex != self.complex:
            raise ValueError("transition data must be a 1-cochain over the given complex and group")

    @classmethod
    def from_json(cls, obj: Mapping) -> "TransitionData":
        if not isinstance(obj, Mapping) or "complex" not in obj:
            raise ValueError("transition data needs a 'complex' field")
        complex = Complex.from_json(obj["complex"])
        doc = dict(obj)
        doc.setdefault("degree", 1)
        u = Cochain.from_json(doc, complex)
        return cls(complex, u.group, u)


def giraud_cocycle(t: TransitionData) -> Cochain:
    """``c_ijk = u_jk - u_ik + u_ij`` on every triangle ``i < j < k``."""
    u, x = t.u, t.complex
    values = {}
    for i, j, k in x.simplices(2):
        values[(i, j, k)] = u[(j, k)] - u[(i, k)] + u[(i, j)]
    return Cochain.from_values(x, t.group, 2, values)


def cone_contraction(c: Cochain, apex: int) -> Cochain:
    """A cochain ``h`` of one degree lower with ``dh == c``, for a cocycle on a cone.

    ``h(s) = (-1)^k c(s, apex)`` with the apex in last position, and zero on
    simplices containing the apex.
    """
    k = c.degree
    if k < 1:
        raise ValueError("cone contraction needs a cocycle of degree >= 1")
    missing = cone_obstruction(c.complex, apex)
    if missing is not None:
        raise ValueError(f"not a cone at {apex}: {sorted(missing + (apex,))} is not a simplex")
    if not is_cocycle(c):
        raise ValueError("cone contraction needs a cocycle")
    sign = -1 if k % 2 else 1
    values = {}
    for s in c.complex.simplices(k - 1):
        if apex not in s:
            values[s] = sign * c[s + (apex,)]
    return Cochain.from_values(c.complex, c.group, k - 1, values)
