import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from cechtower.abelian import (
    AbelianGroup,
    GroupElement,
    GroupHom,
    Lattice,
    Subquotient,
    Z,
    determinant,
    integer_kernel,
    is_exact,
    matmul,
    quotient_invariants,
    smith_normal_form,
    snf_diagonal,
    solve_combination,
    solve_in_image,
)

small = st.integers(-6, 6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def sympy_diagonal(m):
    d = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    return sorted(abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0)


# --- Smith normal form -----------------------------------------------------


def test_snf_identity():
    _, d, _ = smith_normal_form([[1, 0], [0, 1]])
    assert d == [[1, 0], [0, 1]]


def test_snf_hand_example():
    _, d, _ = smith_normal_form([[2, 4], [6, 8]])
    assert d == [[2, 0], [0, 4]]


def test_snf_zero():
    _, d, _ = smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert d == [[0, 0, 0], [0, 0, 0]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_transforms(m):
    u, d, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert diag[: len(nz)] == nz  # nonzero entries first
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_snf_matches_sympy(m):
    assert sorted(snf_diagonal(m)) == sympy_diagonal(m)


# --- groups ----------------------------------------------------------------


def test_group_canonical_form():
    g = AbelianGroup.from_orders([0, 6, 4, 1])
    assert g == AbelianGroup(1, (2, 12))
    assert str(g) == "Z + Z/2 + Z/12"
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))


def test_zero_group():
    assert AbelianGroup().is_zero()
    assert str(AbelianGroup()) == "0"
    assert not Z.is_zero()


@pytest.mark.parametrize(
    "doc, expected",
    [
        ({"free_rank": 2, "torsion": [2]}, AbelianGroup(2, (2,))),
        ({"mod": 6}, AbelianGroup(0, (6,))),
        ({"Z": 3}, AbelianGroup(3)),
        ({"mod": 0}, Z),
        ("Z^2 + Z/4", AbelianGroup(2, (4,))),
    ],
)
def test_group_json(doc, expected):
    g = AbelianGroup.from_json(doc)
    assert g == expected
    assert AbelianGroup.from_json(g.to_json()) == g


@pytest.mark.parametrize("doc", [{"free_rank": -1}, {"free_rank": "x"}, {"mod": "2"}, {"mod": -3}, 7, {"torsion": [2, 3.5]}])
def test_group_json_rejects(doc):
    with pytest.raises(ValueError):
        AbelianGroup.from_json(doc)


def test_element_reduction():
    g = AbelianGroup(1, (4,))
    x = g.element((3, 7))
    assert x.coords == (3, 3)
    assert (x + x).coords == (6, 2)
    assert (-x).coords == (-3, 1)
    with pytest.raises(ValueError):
        GroupElement(g, (1,))


def test_finite_elements():
    g = AbelianGroup(0, (2, 4))
    assert g.order == 8
    assert len(list(g.elements())) == 8


# --- solving and quotients -------------------------------------------------


def test_solve_in_image_examples():
    h = GroupHom(Z, Z, [[2]])
    assert solve_in_image(h, Z.element((4,))).coords == (2,)
    assert solve_in_image(h, Z.element((3,))) is None


@settings(max_examples=80, deadline=None)
@given(matrices(4, 4), st.data())
def test_solve_round_trip(m, data):
    rows, cols = len(m), len(m[0])
    h = GroupHom(AbelianGroup(cols), AbelianGroup(rows), m)
    x0 = data.draw(st.lists(small, min_size=cols, max_size=cols))
    y = h(AbelianGroup(cols).element(x0))
    x = solve_in_image(h, y)
    assert x is not None and h(x) == y


def test_hom_well_defined_on_torsion():
    z2, z4 = AbelianGroup.cyclic(2), AbelianGroup.cyclic(4)
    GroupHom(z2, z4, [[2]])
    with pytest.raises(ValueError):
        GroupHom(z2, z4, [[1]])


def test_quotient_examples():
    z2 = AbelianGroup(2)
    assert quotient_invariants(z2, [z2.element((2, 0))]) == AbelianGroup(1, (2,))
    g = AbelianGroup(1, (6,))
    assert quotient_invariants(g, [g.zero()]) == g
    assert quotient_invariants(Z, [Z.element((1,))]).is_zero()


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_quotient_independent_of_order_and_redundancy(gens, rnd):
    g = AbelianGroup(3)
    elems = [g.element(v) for v in gens]
    base = quotient_invariants(g, elems)
    shuffled = elems[:]
    rnd.shuffle(shuffled)
    extra = shuffled + [elems[0] + elems[-1], g.zero()]
    assert quotient_invariants(g, extra) == base
    relation_rank = len([x for x in snf_diagonal([list(r) for r in zip(*gens)]) if x])
    assert base.free_rank == 3 - relation_rank


def test_quotient_matches_sympy():
    rng = random.Random(3)
    for _ in range(40):
        cols = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(rng.randint(1, 4))]
        g = AbelianGroup(3)
        q = quotient_invariants(g, [g.element(c) for c in cols])
        diag = sympy_diagonal([list(r) for r in zip(*cols)])
        assert q.free_rank == 3 - len(diag)
        assert q.torsion == tuple(d for d in diag if d > 1)


# --- lattices --------------------------------------------------------------


def test_lattice_membership_and_ops():
    a = Lattice(2, [[2, 0], [0, 3]])
    b = Lattice(2, [[4, 0], [0, 1]])
    assert [2, 3] in a and [1, 0] not in a
    inter = a.intersection(b)
    assert inter == Lattice(2, [[4, 0], [0, 3]])
    assert a + b == Lattice(2, [[2, 0], [0, 1]])
    assert Lattice.full(2).contains_lattice(a)


def test_lattice_preimage_and_image():
    cols = [[2, 0], [0, 1]]
    target = Lattice(2, [[4, 0], [0, 1]])
    pre = Lattice.full(2).preimage(cols, target)
    assert pre == Lattice(2, [[2, 0], [0, 1]])
    assert Lattice.full(2).image(cols, 2) == Lattice(2, [[2, 0], [0, 1]])


def test_integer_kernel_and_solve():
    cols = [[1, 1], [2, 2], [0, 1]]
    ker = integer_kernel(cols, 2)
    assert len(ker) == 1
    k = ker[0]
    assert [sum(k[j] * cols[j][i] for j in range(3)) for i in range(2)] == [0, 0]
    x = solve_combination(cols, [3, 5], 2)
    assert [sum(x[j] * cols[j][i] for j in range(3)) for i in range(2)] == [3, 5]
    assert solve_combination([[2]], [1], 1) is None


def test_subquotient_reduce():
    sq = Subquotient(Lattice.full(2), Lattice(2, [[2, 0]]))
    assert sq.invariants == AbelianGroup(1, (2,))
    assert sq.reduce([3, 5]) == (5, 1)
    for coords in [(0, 0), (4, 1), (-2, 1)]:
        assert sq.reduce(sq.lift(list(coords))) == (coords[0], coords[1] % 2)


def test_is_exact():
    # Z -2-> Z -> Z/2
    assert is_exact([[2]], [[1]], Z, AbelianGroup.cyclic(2))
    assert not is_exact([[4]], [[1]], Z, AbelianGroup.cyclic(2))
