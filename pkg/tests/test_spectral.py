import random

import pytest

from cechtower.abelian import AbelianGroup, Lattice, Z
from cechtower.cech import cohomology
from cechtower.complexes import catalog, closure
from cechtower.spectral import (
    b_term,
    build_filtered,
    e_infinity,
    e_page,
    image_of_filtration,
    prop31_sequence,
    total_cohomology,
    z_term,
)

Z2, Z3 = AbelianGroup.cyclic(2), AbelianGroup.cyclic(3)
ZERO = AbelianGroup()


def test_single_link_is_plain_complex():
    fc = build_filtered(catalog("circle(3)"), [Z])
    for n in fc.degrees:
        assert fc.filtration(0, n) == Lattice.full(fc.ambient(n))
        assert fc.filtration(1, n) == Lattice(fc.ambient(n), [])
        assert total_cohomology(fc, n) == cohomology(fc.complex, Z, n).invariants


def test_second_link_filtration():
    x = catalog("circle(3)")
    fc = build_filtered(x, [Z, Z2])
    k1 = fc.filtration(1, 1)
    assert k1 == fc.graded(1, 1)
    assert all(k1.contains_lattice(fc.filtration(p, 1)) for p in (1, 2))
    assert fc.filtration(0, 1).contains_lattice(k1)


def test_empty_complex():
    fc = build_filtered(closure([]), [Z, Z2])
    assert fc.ambient(0) == 0
    assert e_page(fc, 0, 0, 1).invariants.is_zero()


def test_z_for_large_r_is_cocycles():
    fc = build_filtered(catalog("torus7"), [Z, Z2])
    zero_next = {n: fc.relations(n + 1) for n in fc.degrees}
    for p in range(2):
        z = z_term(fc, p, 5)
        for n in fc.degrees:
            assert z[n] == fc.filtration(p, n).preimage(fc.d_columns(n), zero_next[n])


def test_z01_is_not_everything():
    fc = build_filtered(catalog("circle(3)"), [Z, Z2])
    z = z_term(fc, 0, 1, [0])[0]
    assert z != fc.filtration(0, 0)
    rng = random.Random(0)
    vec = [rng.randint(1, 5) if i % 2 == 0 else 0 for i in range(fc.ambient(0))]
    vec[0] += 1  # an L_0 part that is not constant, hence not a cocycle
    assert vec not in z


@pytest.mark.parametrize("stack", [(Z,), (Z, Z2), (Z2, Z, Z3)])
def test_b_literal_equals_image(stack):
    fc = build_filtered(catalog("sphere(2)"), stack)
    for p in range(len(stack) + 1):
        for r in (1, 2, 3):
            b = b_term(fc, p, r)
            for n in fc.degrees:
                assert b[n] == image_of_filtration(fc, p, n)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_e_page_examples(r):
    assert str(e_page(build_filtered(catalog("circle(3)"), [Z]), 0, 1, r).invariants) == "Z"
    assert str(e_page(build_filtered(catalog("rp2_6"), [Z, Z2]), 1, 1, r).invariants) == "Z/2"
    zero_link = build_filtered(catalog("torus7"), [Z, ZERO, Z3])
    for q in range(-1, 3):
        assert e_page(zero_link, 1, q, r).invariants.is_zero()


def test_e_page_representatives_are_cocycles():
    fc = build_filtered(catalog("torus7"), [Z2, Z])
    term = e_page(fc, 1, 0, 2)
    h = cohomology(fc.complex, Z, 1)
    assert len(term.representatives) == 2
    assert sorted(h.reduce(c) for c in term.representatives) == [(0, 1), (1, 0)]


def test_e_infinity():
    fc = build_filtered(catalog("torus7"), [Z])
    assert [str(t.invariants) for t in e_infinity(fc, 0).values()] == ["Z", "Z^2", "Z", "0"]
    fc = build_filtered(catalog("torus7"), [Z, Z])
    assert [str(t.invariants) for t in e_infinity(fc, 1).values()] == ["Z", "Z^2", "Z", "0"]
    assert all(t.invariants.is_zero() for t in e_infinity(fc, 2).values())


def test_prop31_sphere():
    fc = build_filtered(catalog("sphere(2)"), [Z, ZERO, Z2])
    report = prop31_sequence(fc, 2, 0, 3)
    assert report.exact and report.checked() == 12


def test_prop31_degenerate_and_cone():
    fc = build_filtered(catalog("torus7"), [Z, ZERO])
    report = prop31_sequence(fc, 1, 0, 2)
    assert report.exact
    groups = [str(n.group) for n in report.nodes]
    assert groups[2:4] == ["Z", "Z"] and groups[5:7] == ["Z^2", "Z^2"]
    cone = build_filtered(catalog("simplex(4)"), [Z, Z3])
    report = prop31_sequence(cone, 1, 0, 3)
    assert report.exact
    assert all(n.group.is_zero() for n in report.nodes if not n.label.startswith("H^0") and n.label != "0")


def test_prop31_hypothesis():
    fc = build_filtered(catalog("circle(3)"), [Z, Z2, Z3])
    with pytest.raises(ValueError, match="hypothesis"):
        prop31_sequence(fc, 2, 0, 1)
    with pytest.raises(ValueError):
        prop31_sequence(fc, 0, 0, 1)
