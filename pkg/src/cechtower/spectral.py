"""The spectral sequence of Čech cochains with coefficients in a graded sum.

For links ``L_0, ..., L_s`` put ``L = L_0 + ... + L_s`` and filter the
cochains by ``K_p = C^*(X, L_p + L_{p+1} + ...)``. Terms follow the
definitions

    Z^p_r = {x in K_p : dx in K_{p+r}}
    B^p_r = d(K_{p-r} ∩ K_p)
    E^{pq}_r = Z^{pq}_r / (B^{pq}_{r-1} + Z^{p+1,q-1}_{r-1})

where a superscript pair ``pq`` restricts to total degree ``p + q``.
Subgroups of ``C^n(X, L)`` are represented by their preimages in the
integer lattice of coordinates, which always contain the torsion relations.
Coordinates of a cochain are ordered simplex by simplex, and within a
simplex link by link.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .abelian import AbelianGroup, Lattice, Subquotient, relation_columns
from .cech import Cochain, coboundary_columns, lattice_cohomology
from .complexes import Complex
from .exactseq import ExactnessReport, sequence_report
from .towers import LinkStack

__all__ = [
    "FilteredComplex",
    "SpectralTerm",
    "build_filtered",
    "z_term",
    "b_term",
    "e_page",
    "e_infinity",
    "total_cohomology",
    "prop31_sequence",
    "image_of_filtration",
]


class FilteredComplex:
    """Total Čech complex of ``L_0 + ... + L_s`` with its coefficient filtration."""

    def __init__(self, complex: Complex, links: Sequence[AbelianGroup]):
        links = tuple(links.links if isinstance(links, LinkStack) else links)
        if not links:
            raise ValueError("a filtered complex needs at least one link")
        self.complex = complex
        self.links = links
        self.orders = tuple(o for g in links for o in g.orders)
        self._offsets = []
        off = 0
        for g in links:
            self._offsets.append(off)
            off += g.ngens
        self.width = off
        self._cache = {}

    @property
    def top(self) -> int:
        """Index s of the last link."""
        return len(self.links) - 1

    @cached_property
    def degrees(self) -> range:
        """Total degrees carrying a nonzero differential source or target."""
        return range(0, self.complex.dim + 2)

    def ambient(self, n: int) -> int:
        return self.complex.count(n) * self.width

    def link(self, p: int) -> AbelianGroup:
        if 0 <= p < len(self.links):
            return self.links[p]
        return AbelianGroup()

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def relations(self, n: int) -> Lattice:
        return self._memo(("R", n), lambda: Lattice(self.ambient(n), relation_columns(self.orders, self.complex.count(n))))

    def d_columns(self, n: int) -> list[list[int]]:
        """Coboundary ``C^n(X, L) -> C^{n+1}(X, L)``, diagonal in the links."""
        return self._memo(("d", n), lambda: coboundary_columns(self.complex, self.orders, n))

    def filtration(self, p: int, n: int) -> Lattice:
        """Lifted ``K_p`` in total degree n."""
        def build():
            dim = self.ambient(n)
            keep = [j for q in range(max(p, 0), len(self.links)) for j in self._block(q)]
            gens = []
            for i in range(self.complex.count(n)):
                for j in keep:
                    v = [0] * dim
                    v[i * self.width + j] = 1
                    gens.append(v)
            return Lattice(dim, gens) + self.relations(n)
        return self._memo(("K", p, n), build)

    def graded(self, p: int, n: int) -> Lattice:
        """Lifted ``C^n(X, L_p)`` inside ``C^n(X, L)``."""
        def build():
            dim = self.ambient(n)
            gens = []
            if 0 <= p < len(self.links):
                for i in range(self.complex.count(n)):
                    for j in self._block(p):
                        v = [0] * dim
                        v[i * self.width + j] = 1
                        gens.append(v)
            return Lattice(dim, gens) + self.relations(n)
        return self._memo(("G", p, n), build)

    def _block(self, q: int) -> range:
        return range(self._offsets[q], self._offsets[q] + self.links[q].ngens)

    def component(self, vec: Sequence[int], p: int, n: int) -> Cochain:
        """The ``L_p`` part of a total cochain vector."""
        g = self.link(p)
        vals = []
        if 0 <= p < len(self.links):
            block = self._block(p)
            for i in range(self.complex.count(n)):
                vals.extend(vec[i * self.width + j] for j in block)
        return Cochain(self.complex, g, n, vals)

    def embed(self, c: Cochain, p: int) -> list[int]:
        """A cochain over ``L_p`` as a total cochain vector."""
        if c.group != self.link(p):
            raise ValueError(f"cochain over {c.group} is not over L_{p} = {self.link(p)}")
        n = c.degree
        out = [0] * self.ambient(n)
        if 0 <= p < len(self.links):
            block = list(self._block(p))
            m = len(block)
            for i in range(self.complex.count(n)):
                for t, j in enumerate(block):
                    out[i * self.width + j] = c.vector[i * m + t]
        return out

    def __repr__(self):
        return f"FilteredComplex({self.complex!r}, links={[str(g) for g in self.links]})"


def build_filtered(x: Complex, stack: Sequence[AbelianGroup]) -> FilteredComplex:
    return FilteredComplex(x, stack)


def _z(fc: FilteredComplex, p: int, r: int, n: int) -> Lattice:
    return fc._memo(
        ("Z", p, r, n),
        lambda: fc.filtration(p, n).preimage(fc.d_columns(n), fc.filtration(p + r, n + 1)),
    )


def _b(fc: FilteredComplex, p: int, r: int, n: int) -> Lattice:
    def build():
        rel = fc.relations(n)
        if n == 0:
            return rel
        source = fc.filtration(p - r, n - 1).intersection(fc.filtration(p, n - 1))
        return source.image(fc.d_columns(n - 1), fc.ambient(n)) + rel
    return fc._memo(("B", p, r, n), build)


def z_term(fc: FilteredComplex, p: int, r: int, degrees: Iterable[int] | None = None) -> dict[int, Lattice]:
    """Lifted ``Z^p_r`` in each total degree."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return {n: _z(fc, p, r, n) for n in (fc.degrees if degrees is None else degrees)}


def b_term(fc: FilteredComplex, p: int, r: int, degrees: Iterable[int] | None = None) -> dict[int, Lattice]:
    """Lifted ``B^p_r = d(K_{p-r} ∩ K_p)`` in each total degree."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return {n: _b(fc, p, r, n) for n in (fc.degrees if degrees is None else degrees)}


def image_of_filtration(fc: FilteredComplex, p: int, n: int) -> Lattice:
    """Lifted ``d(K_p)`` in total degree n."""
    if n == 0:
        return fc.relations(0)
    return fc.filtration(p, n - 1).image(fc.d_columns(n - 1), fc.ambient(n)) + fc.relations(n)


@dataclass(frozen=True)
class SpectralTerm:
    p: int
    q: int
    r: int | None  # None stands for r = infinity
    invariants: AbelianGroup
    representatives: tuple[Cochain, ...]

    def to_json(self) -> dict:
        return {
            "p": self.p, "q": self.q, "r": "inf" if self.r is None else self.r,
            "invariants": self.invariants.to_json(),
        }


def _term(fc: FilteredComplex, p: int, q: int, r: int | None, sq: Subquotient) -> SpectralTerm:
    n = p + q
    reps = tuple(fc.component(g, p, n) for g in sq.generators)
    return SpectralTerm(p, q, r, sq.invariants, reps)


def e_page(fc: FilteredComplex, p: int, q: int, r: int) -> SpectralTerm:
    """``E^{pq}_r`` from the definitions."""
    if r < 1:
        raise ValueError("pages start at r = 1")
    n = p + q
    if n < 0:
        return SpectralTerm(p, q, r, AbelianGroup(), ())

    def build():
        top = _z(fc, p, r, n)
        bottom = _b(fc, p, r - 1, n) + _z(fc, p + 1, r - 1, n)
        return Subquotient(top, bottom)
    return _term(fc, p, q, r, fc._memo(("E", p, r, n), build))


def e_infinity(fc: FilteredComplex, p: int) -> dict[int, SpectralTerm]:
    """``E^p_∞ = Z^p_∞ / (Z^{p+1}_∞ + B^p_∞)`` in each total degree."""
    out = {}
    for n in fc.degrees:
        def build(n=n):
            nxt = fc.relations(n + 1)
            z_p = fc.filtration(p, n).preimage(fc.d_columns(n), nxt)
            z_next = fc.filtration(p + 1, n).preimage(fc.d_columns(n), nxt)
            all_b = image_of_filtration(fc, 0, n)
            b_p = all_b.intersection(fc.filtration(p, n))
            return Subquotient(z_p, z_next + b_p)
        out[n] = _term(fc, p, n - p, None, fc._memo(("Einf", p, n), build))
    return out


def total_cohomology(fc: FilteredComplex, n: int) -> AbelianGroup:
    """``H^n(X, L)`` for the whole sum of links."""
    return lattice_cohomology(fc.complex, fc.orders, n).invariants


# ---------------------------------------------------------------------------
# two-step exact sequence
# ---------------------------------------------------------------------------


def prop31_sequence(fc: FilteredComplex, n: int, first: int, last: int) -> ExactnessReport:
    """``... -> H^i(X, L_n) -> H^i(X, L) -> H^i(X, L_0) -> H^{i+1}(X, L_n) -> ...``

    Requires every link other than ``L_0`` and ``L_n`` to vanish. The maps are
    inclusion of the ``L_n`` summand, projection onto ``L_0`` and the connecting
    map of ``0 -> K_n -> K_0 -> K_0/K_n -> 0``: lift an ``L_0`` cocycle to a total
    cochain, apply d, and read the result in ``K_n``.
    """
    if n < 1 or n > fc.top:
        raise ValueError(f"n must index a link of the stack (1 <= n <= {fc.top})")
    bad = [p for p in range(1, len(fc.links)) if p != n and not fc.link(p).is_zero()]
    if bad:
        raise ValueError(f"hypothesis violated: links L_{bad} are nonzero")
    if first < 0 or last < first:
        raise ValueError("need 0 <= first <= last")
    cx = fc.complex
    l0, ln = fc.link(0), fc.link(n)

    def h_total(i):
        return lattice_cohomology(cx, fc.orders, i)

    def h_link(p, i):
        return lattice_cohomology(cx, fc.link(p).orders, i)

    labels, groups, maps = [], [], []
    if first == 0:
        labels.append("0")
        groups.append(AbelianGroup())
    prev = None
    for i in range(first, last + 2):
        hn = h_link(n, i)
        if prev is not None:
            # connecting map: lift, differentiate, read in K_n
            cols = []
            for g in prev.generators:
                lifted = fc.embed(Cochain(cx, l0, i - 1, g), 0)
                dx = _apply(fc.d_columns(i - 1), lifted, fc.ambient(i))
                if dx not in fc.filtration(n, i):
                    raise ArithmeticError("coboundary of a lifted cocycle left K_n")
                cols.append(list(hn.reduce(list(fc.component(dx, n, i).vector))))
            maps.append(cols)
        elif groups:
            maps.append([])
        labels.append(f"H^{i}(X, L_{n})")
        groups.append(hn.invariants)
        if i > last:
            break
        ht = h_total(i)
        h0 = h_link(0, i)
        incl = [list(ht.reduce(fc.embed(Cochain(cx, ln, i, g), n))) for g in hn.generators]
        proj = [list(h0.reduce(list(fc.component(g, 0, i).vector))) for g in ht.generators]
        maps += [incl, proj]
        labels += [f"H^{i}(X, L)", f"H^{i}(X, L_0)"]
        groups += [ht.invariants, h0.invariants]
        prev = h0
    return sequence_report(labels, groups, maps)


def _apply(columns, vec, dim):
    out = [0] * dim
    for c, col in zip(vec, columns):
        if c:
            for k, v in enumerate(col):
                if v:
                    out[k] += c * v
    return out
