"""
Finitely generated abelian groups and exact integer lattice algebra.

Every group is held in canonical form

    Z^r (+) Z/d_1 (+) ... (+) Z/d_t,      d_1 | d_2 | ... | d_t,  d_i >= 2,

and elements are integer coordinate vectors (free coordinates first).
All computations use Python integers, so nothing overflows.

The workhorses are

* :func:`smith_normal_form`, returning unimodular transforms,
* :class:`Lattice`, a subgroup of Z^n kept in column echelon form
  (membership, coordinates, sums, intersections, preimages),
* :class:`Subquotient`, the quotient of one lattice by a smaller one,
  with canonical invariants, generators and a reduction map.

>>> quotient_invariants(AbelianGroup(2), [AbelianGroup(2).element([2, 0])])
AbelianGroup(free_rank=1, torsion=(2,))
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator, Sequence

Vector = list[int]
Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("matrix shapes do not match")
        out.append([sum(row[k] * b[k][j] for k in range(inner) if row[k]) for j in range(cols)])
    return out


def matvec(a: Matrix, v: Sequence[int]) -> Vector:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def _snf(m: Matrix, ncols: int | None = None):
    """Return (U, D, V, U^-1) with U m V = D."""
    n = len(m)
    p = len(m[0]) if n else (ncols or 0)
    a = [list(row) for row in m]
    u = identity(n)
    uinv = identity(n)
    v = identity(p)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]
            for row in uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        ra, rs = a[dst], a[src]
        for k in range(p):
            if rs[k]:
                ra[k] += q * rs[k]
        ud, us = u[dst], u[src]
        for k in range(n):
            if us[k]:
                ud[k] += q * us[k]
        for row in uinv:
            if row[dst]:
                row[src] -= q * row[dst]

    def add_col(dst, src, q):
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        for row in v:
            if row[src]:
                row[dst] += q * row[src]

    t = 0
    while t < min(n, p):
        best = None
        for i in range(t, n):
            row = a[i]
            for j in range(t, p):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            dirty = False
            piv = a[t][t]
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, p):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                best = (abs(a[t][t]), t, t)
                for i in range(t + 1, n):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, p):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # divisibility: fold an offending row into the pivot row
            offender = next(
                (i for i in range(t + 1, n) if any(a[i][j] % piv for j in range(t + 1, p))),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
            for row in uinv:
                row[t] = -row[t]
        t += 1
    return u, a, v, uinv


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form of an integer matrix.

    Returns ``(U, D, V)`` with ``U @ m @ V == D``, ``U`` and ``V`` unimodular and
    ``D`` diagonal with nonnegative entries ``d_1 | d_2 | ...``. Pivots are chosen
    by minimal absolute value, ties broken by lowest row then column index.

    >>> smith_normal_form([[2, 4], [6, 8]])[1]
    [[2, 0], [0, 4]]
    """
    u, d, v, _ = _snf(m)
    return u, d, v


def snf_diagonal(m: Matrix) -> list[int]:
    """Nonzero diagonal of the Smith normal form."""
    _, d, _, _ = _snf(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


# ---------------------------------------------------------------------------
# Lattices in Z^n
# ---------------------------------------------------------------------------


def _echelon(dim: int, gens: Sequence[Sequence[int]], track: bool = False):
    """Unimodular column reduction of ``gens``.

    Returns ``(basis, pivots, kernel, made)`` where ``basis`` is a lower echelon
    basis of the span and ``pivots[i]`` the leading row of ``basis[i]``. When
    ``track`` is set, ``kernel`` is a basis of the integer relations among the
    inputs and ``made[i]`` expresses ``basis[i]`` through the inputs.
    """
    cols = [list(g) for g in gens]
    for c in cols:
        if len(c) != dim:
            raise ValueError(f"vector of length {len(c)} in lattice of dimension {dim}")
    ngen = len(cols)
    trans = identity(ngen) if track else None
    active = [i for i in range(ngen) if any(cols[i])]
    zero = [i for i in range(ngen) if not any(cols[i])]
    basis, pivots, used = [], [], []
    for r in range(dim):
        nz = [c for c in active if cols[c][r]]
        while len(nz) > 1:
            c0 = min(nz, key=lambda c: (abs(cols[c][r]), c))
            piv = cols[c0][r]
            v0 = cols[c0]
            for c in nz:
                if c == c0:
                    continue
                q = cols[c][r] // piv
                vc = cols[c]
                for k in range(r, dim):
                    if v0[k]:
                        vc[k] -= q * v0[k]
                if track:
                    t0, tc = trans[c0], trans[c]
                    for k in range(ngen):
                        if t0[k]:
                            tc[k] -= q * t0[k]
            nz = [c for c in nz if cols[c][r]]
        if nz:
            c0 = nz[0]
            if cols[c0][r] < 0:
                cols[c0] = [-x for x in cols[c0]]
                if track:
                    trans[c0] = [-x for x in trans[c0]]
            basis.append(cols[c0])
            pivots.append(r)
            used.append(c0)
            active.remove(c0)
            # drop columns that became zero
            still = []
            for c in active:
                if any(cols[c][r + 1:]):
                    still.append(c)
                else:
                    zero.append(c)
            active = still
    zero.extend(active)
    if not track:
        return basis, pivots, None, None
    return basis, pivots, [trans[c] for c in sorted(zero)], [trans[c] for c in used]


def integer_kernel(columns: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Basis of ``{y : sum_j y_j columns[j] = 0}``."""
    return _echelon(dim, columns, track=True)[2]


class LinearSolver:
    """Solves ``sum_j y_j columns[j] == v`` for many right-hand sides."""

    def __init__(self, columns: Sequence[Sequence[int]], dim: int):
        self.ncols = len(columns)
        basis, pivots, _, self._made = _echelon(dim, columns, track=True)
        self._lattice = Lattice.__new__(Lattice)
        self._lattice.dim, self._lattice.basis, self._lattice._pivots = dim, basis, pivots

    def solve(self, v: Sequence[int]) -> Vector | None:
        y = self._lattice.coordinates(v)
        if y is None:
            return None
        return _combine(self._made, y, self.ncols)


def solve_combination(columns: Sequence[Sequence[int]], v: Sequence[int], dim: int) -> Vector | None:
    """Integer coefficients ``y`` with ``sum_j y_j columns[j] == v``, or None."""
    return LinearSolver(columns, dim).solve(v)


class Lattice:
    """A subgroup of Z^dim, stored by a lower echelon basis."""

    __slots__ = ("dim", "basis", "_pivots")

    def __init__(self, dim: int, gens: Iterable[Sequence[int]] = ()):
        self.dim = dim
        self.basis, self._pivots, _, _ = _echelon(dim, list(gens))

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls(dim, identity(dim))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Coefficients ``y`` with ``sum y_i basis_i == v``, or None."""
        if len(v) != self.dim:
            raise ValueError(f"vector of length {len(v)} in lattice of dimension {self.dim}")
        rest = list(v)
        y = []
        for b, r in zip(self.basis, self._pivots):
            q, rem = divmod(rest[r], b[r])
            if rem:
                return None
            y.append(q)
            if q:
                for k in range(r, self.dim):
                    if b[k]:
                        rest[k] -= q * b[k]
        if any(rest):
            return None
        return y

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.rank == other.rank
            and self.contains_lattice(other)
            and other.contains_lattice(self)
        )

    __hash__ = None

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(self.dim, self.basis + other.basis)

    def intersection(self, other: "Lattice") -> "Lattice":
        a, b = self.basis, other.basis
        rel = integer_kernel(a + [[-x for x in v] for v in b], self.dim)
        vecs = []
        for y in rel:
            vec = [0] * self.dim
            for coef, v in zip(y[: len(a)], a):
                if coef:
                    for k in range(self.dim):
                        vec[k] += coef * v[k]
            vecs.append(vec)
        return Lattice(self.dim, vecs)

    def image(self, columns: Sequence[Sequence[int]], out_dim: int) -> "Lattice":
        """Image under the map sending e_j to ``columns[j]``."""
        return Lattice(out_dim, [_combine(columns, b, out_dim) for b in self.basis])

    def preimage(self, columns: Sequence[Sequence[int]], target: "Lattice") -> "Lattice":
        """``{x in self : M x in target}`` where M sends e_j to ``columns[j]``."""
        images = [_combine(columns, b, target.dim) for b in self.basis]
        rel = integer_kernel(images + [[-x for x in t] for t in target.basis], target.dim)
        k = len(images)
        return Lattice(self.dim, [_combine(self.basis, y[:k], self.dim) for y in rel])

    def __repr__(self):
        return f"Lattice(dim={self.dim}, rank={self.rank})"


def _combine(columns: Sequence[Sequence[int]], coefs: Sequence[int], dim: int) -> Vector:
    out = [0] * dim
    for c, col in zip(coefs, columns):
        if c:
            for k, x in enumerate(col):
                if x:
                    out[k] += c * x
    return out


class Subquotient:
    """The group ``top / bottom`` for lattices ``bottom <= top`` in Z^n.

    ``invariants`` is canonical, ``generators[j]`` is a vector of ``top`` whose
    class is the j-th canonical generator, and ``reduce`` maps a vector of ``top``
    to its canonical coordinates.
    """

    def __init__(self, top: Lattice, bottom: Lattice):
        self.top = top
        self.bottom = bottom
        s = top.rank
        coords = []
        for b in bottom.basis:
            y = top.coordinates(b)
            if y is None:
                raise ValueError("bottom lattice is not contained in top lattice")
            coords.append(y)
        # s x len(bottom) relation matrix in top coordinates
        rel = transpose(coords) if coords else [[] for _ in range(s)]
        u, d, _, uinv = _snf(rel, ncols=len(coords))
        diag = [d[i][i] if i < len(coords) else 0 for i in range(s)]
        free = [i for i in range(s) if diag[i] == 0]
        tors = [i for i in range(s) if diag[i] > 1]
        self._u = u
        self._slots = free + tors
        self._mods = [0] * len(free) + [diag[i] for i in tors]
        self.invariants = AbelianGroup(len(free), tuple(diag[i] for i in tors))
        self.generators = [
            _combine(top.basis, [uinv[r][i] for r in range(s)], top.dim) for i in self._slots
        ]

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        y = self.top.coordinates(v)
        if y is None:
            raise ValueError("vector does not lie in the top lattice")
        z = matvec(self._u, y) if y else []
        return tuple(z[i] % m if m else z[i] for i, m in zip(self._slots, self._mods))

    def lift(self, coords: Sequence[int]) -> Vector:
        if len(coords) != len(self.generators):
            raise ValueError(
                f"expected {len(self.generators)} coordinates, got {len(coords)}"
            )
        return _combine(self.generators, coords, self.top.dim)


# ---------------------------------------------------------------------------
# Groups, elements, homomorphisms
# ---------------------------------------------------------------------------

_TERM = re.compile(r"^(?:Z(?:\^(\d+))?|Z/(\d+)|0)$")


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank (+) Z/torsion[0] (+) ... with a divisor chain of torsion orders."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {list(self.torsion)} is not a divisor chain")

    @classmethod
    def cyclic(cls, m: int) -> "AbelianGroup":
        """Z for m == 0, Z/m otherwise."""
        if m == 0:
            return cls(1)
        if m < 0:
            raise ValueError("cyclic order must be nonnegative")
        return cls(0, (m,) if m > 1 else ())

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Canonical form of a direct sum of cyclic groups (0 meaning Z)."""
        orders = list(orders)
        m = len(orders)
        rel = [[orders[j] if i == j else 0 for j in range(m)] for i in range(m)]
        return Subquotient(Lattice.full(m), Lattice(m, transpose(rel) if m else [])).invariants

    @property
    def orders(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.torsion

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def is_zero(self) -> bool:
        return self.ngens == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Cardinality, or None for infinite groups."""
        return prod(self.torsion) if self.is_finite() else None

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def generators(self) -> list["GroupElement"]:
        return [self.element(row) for row in identity(self.ngens)]

    def elements(self) -> Iterator["GroupElement"]:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        for coords in itertools.product(*(range(d) for d in self.torsion)):
            yield GroupElement(self, coords)

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_orders(self.orders + other.orders)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj) -> "AbelianGroup":
        """Accepts the full form, ``{"mod": m}``, ``{"Z": r}`` or a text shorthand."""
        if isinstance(obj, AbelianGroup):
            return obj
        if isinstance(obj, str):
            return cls.parse(obj)
        if not isinstance(obj, dict):
            raise ValueError(f"group must be an object or string, got {type(obj).__name__}")
        if "mod" in obj:
            return cls.cyclic(_as_int(obj["mod"], "mod")) if obj["mod"] != 0 else cls(1)
        if "Z" in obj:
            return cls(_as_int(obj["Z"], "Z"))
        if "free_rank" not in obj and "torsion" not in obj:
            raise ValueError("group object needs 'free_rank'/'torsion', 'mod' or 'Z'")
        torsion = obj.get("torsion", [])
        if not isinstance(torsion, list):
            raise ValueError("field 'torsion' must be a list")
        return cls(_as_int(obj.get("free_rank", 0), "free_rank"), tuple(_as_int(d, "torsion") for d in torsion))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse ``"Z^2 + Z/2 + Z/4"``-style shorthand; summands need not be canonical."""
        orders = []
        for term in text.replace(" ", "").replace("(+)", "+").split("+"):
            mt = _TERM.match(term)
            if not mt:
                raise ValueError(f"cannot parse group term {term!r}")
            if term == "0":
                continue
            if mt.group(2) is not None:
                orders.append(int(mt.group(2)))
            else:
                orders.extend([0] * int(mt.group(1) or 1))
        return cls.from_orders(orders)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _as_int(x, name) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"field '{name}' must be an integer")
    return x


Z = AbelianGroup(1)


def reduce_coords(orders: Sequence[int], coords: Iterable[int]) -> tuple[int, ...]:
    return tuple(c % m if m else c for c, m in zip(coords, orders))


@dataclass(frozen=True)
class GroupElement:
    owner: AbelianGroup
    coords: tuple[int, ...] = field(default=())

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.owner.ngens:
            raise ValueError(
                f"element of {self.owner} needs {self.owner.ngens} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", reduce_coords(self.owner.orders, coords))

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.owner != self.owner:
            raise ValueError("elements belong to different groups")

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.owner, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return GroupElement(self.owner, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElement(self.owner, tuple(-a for a in self.coords))

    def __rmul__(self, n: int):
        return GroupElement(self.owner, tuple(n * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return "(" + ", ".join(map(str, self.coords)) + ")"


def relation_columns(orders: Sequence[int], blocks: int = 1) -> list[Vector]:
    """Generators of the relation lattice of ``blocks`` copies of a presentation."""
    m = len(orders)
    dim = m * blocks
    out = []
    for b in range(blocks):
        for j, o in enumerate(orders):
            if o:
                v = [0] * dim
                v[b * m + j] = o
                out.append(v)
    return out


def relation_lattice(orders: Sequence[int], blocks: int = 1) -> Lattice:
    return Lattice(len(orders) * blocks, relation_columns(orders, blocks))


class GroupHom:
    """Homomorphism given by an integer matrix on coordinates (target rows, source columns)."""

    def __init__(self, source: AbelianGroup, target: AbelianGroup, matrix: Matrix):
        matrix = [[int(x) for x in row] for row in matrix]
        if len(matrix) != target.ngens or any(len(row) != source.ngens for row in matrix):
            raise ValueError(
                f"matrix must be {target.ngens}x{source.ngens} for a map {source} -> {target}"
            )
        # each torsion relation of the source must map to a relation of the target
        for j, d in enumerate(source.orders):
            if d:
                img = [d * matrix[i][j] for i in range(target.ngens)]
                if any(reduce_coords(target.orders, img)):
                    raise ValueError(
                        f"matrix is not well defined on the order-{d} generator {j} of {source}"
                    )
        self.source = source
        self.target = target
        self.matrix = matrix
        self._solver = None

    @classmethod
    def from_columns(cls, source: AbelianGroup, target: AbelianGroup, columns: Sequence[Sequence[int]]):
        return cls(source, target, [[col[i] for col in columns] for i in range(target.ngens)])

    def columns(self) -> list[Vector]:
        return [[row[j] for row in self.matrix] for j in range(self.source.ngens)]

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.owner != self.source:
            raise ValueError(f"element of {x.owner} is not in the source {self.source}")
        return GroupElement(self.target, tuple(matvec(self.matrix, x.coords)))

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self`` after ``first``."""
        if first.target != self.source:
            raise ValueError("maps are not composable")
        inner = self.source.ngens
        m = [
            [sum(row[k] * first.matrix[k][j] for k in range(inner)) for j in range(first.source.ngens)]
            for row in self.matrix
        ]
        return GroupHom(first.source, self.target, m)

    def preimage(self, y: GroupElement) -> GroupElement | None:
        """Some ``x`` with ``self(x) == y``, or None."""
        if y.owner != self.target:
            raise ValueError(f"element of {y.owner} is not in the target {self.target}")
        if self._solver is None:
            cols = self.columns() + relation_columns(self.target.orders)
            self._solver = LinearSolver(cols, self.target.ngens)
        w = self._solver.solve(y.coords)
        if w is None:
            return None
        return GroupElement(self.source, tuple(w[: self.source.ngens]))

    def kernel_lattice(self) -> Lattice:
        """Lifted kernel: ``{x in Z^n : M x in relations(target)}``."""
        full = Lattice.full(self.source.ngens)
        return full.preimage(self.columns(), relation_lattice(self.target.orders))

    def image_lattice(self) -> Lattice:
        """Lifted image: ``M Z^n + relations(target)``."""
        return Lattice(self.target.ngens, self.columns()) + relation_lattice(self.target.orders)

    def is_injective(self) -> bool:
        return relation_lattice(self.source.orders).contains_lattice(self.kernel_lattice())

    def is_surjective(self) -> bool:
        return self.image_lattice().contains_lattice(Lattice.full(self.target.ngens))

    def __repr__(self):
        return f"GroupHom({self.source} -> {self.target}, {self.matrix})"


def solve_in_image(h: GroupHom, y: GroupElement) -> GroupElement | None:
    """Some ``x`` with ``h(x) == y``, or None when ``y`` is not in the image.

    >>> solve_in_image(GroupHom(Z, Z, [[2]]), Z.element([4])).coords
    (2,)
    """
    return h.preimage(y)


def quotient_invariants(ambient: AbelianGroup, subgen: Iterable[GroupElement]) -> AbelianGroup:
    """Canonical invariants of ``ambient / <subgen>``."""
    subgen = list(subgen)
    for s in subgen:
        if s.owner != ambient:
            raise ValueError(f"generator {s} does not lie in {ambient}")
    m = ambient.ngens
    bottom = Lattice(m, [list(s.coords) for s in subgen] + relation_columns(ambient.orders))
    return Subquotient(Lattice.full(m), bottom).invariants


def is_exact(
    f_cols: Sequence[Sequence[int]],
    g_cols: Sequence[Sequence[int]],
    middle: AbelianGroup,
    target: AbelianGroup,
) -> bool:
    """Whether ``A -f-> middle -g-> target`` is exact at ``middle``.

    Maps are given by the images of the source generators, in canonical
    coordinates.
    """
    image, kernel = image_and_kernel(f_cols, g_cols, middle, target)
    return image == kernel


def image_and_kernel(f_cols, g_cols, middle: AbelianGroup, target: AbelianGroup):
    rel = relation_lattice(middle.orders)
    image = Lattice(middle.ngens, f_cols) + rel
    kernel = Lattice.full(middle.ngens).preimage(g_cols, relation_lattice(target.orders))
    return image, kernel

