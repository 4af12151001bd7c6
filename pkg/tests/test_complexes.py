import pytest
from hypothesis import given, settings, strategies as st

from cechtower.complexes import CATALOG_NAMES, Complex, catalog, closure, cone_obstruction, is_cone, nerve_from_cover


def test_closure_of_triangle():
    x = closure([[0, 1, 2]])
    assert x.all_simplices() == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]


def test_closure_empty():
    x = closure([])
    assert x.dim == -1 and x.f_vector == ()


def test_hollow_triangle():
    x = closure([[0, 1], [1, 2], [0, 2]])
    assert x.f_vector == (3, 3)


def test_closure_rejects_repeated_vertex():
    with pytest.raises(ValueError, match=r"\[0, 0, 1\]"):
        closure([[0, 0, 1]])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True), max_size=6))
def test_closure_idempotent(gens):
    x = closure(gens)
    assert closure(x.all_simplices()) == x
    assert Complex.from_json(x.to_json()) == x
    for s in x.all_simplices():
        for v in range(len(s)):
            if len(s) > 1:
                assert s[:v] + s[v + 1:] in x


def test_nerve_examples():
    arcs = [((0, 1), True), ((1, 2), True), ((0, 2), True), ((0, 1, 2), False)]
    assert nerve_from_cover(arcs) == closure([[0, 1], [1, 2], [0, 2]])
    assert nerve_from_cover([{"sets": [0, 1], "nonempty": True}]) == closure([[0, 1]])
    full = [((0, 1, 2, 3), True)]
    assert nerve_from_cover(full) == catalog("simplex(3)")


def test_nerve_inconsistent():
    with pytest.raises(ValueError, match="flagged empty"):
        nerve_from_cover([((0, 1, 2), True), ((0, 1), False)])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 5), min_size=1, max_size=4, unique=True), max_size=5))
def test_nerve_contains_flagged_sets(sets):
    nerve = nerve_from_cover([(s, True) for s in sets])
    for s in sets:
        assert tuple(sorted(s)) in nerve
    assert nerve == closure(sets)


def test_cone_examples():
    assert is_cone(catalog("simplex(3)"), 0)
    hollow = closure([[0, 1], [1, 2], [0, 2]])
    assert not is_cone(hollow, 0)
    assert cone_obstruction(hollow, 0) == (1, 2)
    star = closure([[0, 1], [0, 2], [0, 3]])
    assert is_cone(star, 0)
    with pytest.raises(ValueError):
        is_cone(star, 9)


@pytest.mark.parametrize(
    "name, f_vector, chi",
    [
        ("circle(3)", (3, 3), 0),
        ("sphere(2)", (4, 6, 4), 2),
        ("sphere2", (6, 12, 8), 2),
        ("torus7", (7, 21, 14), 0),
        ("rp2_6", (6, 15, 10), 1),
        ("klein8", (8, 24, 16), 0),
        ("simplex(5)", (6, 15, 20, 15, 6, 1), 1),
    ],
)
def test_catalog(name, f_vector, chi):
    x = catalog(name)
    assert x.f_vector == f_vector
    assert x.euler_characteristic() == chi


def test_catalog_aliases_and_errors():
    assert catalog("circle3") == catalog("circle(3)") == closure([[0, 1], [1, 2], [0, 2]])
    with pytest.raises(ValueError) as err:
        catalog("moebius")
    assert "torus7" in str(err.value)
    assert "rp2_6" in CATALOG_NAMES


def test_surfaces_are_closed_pseudomanifolds():
    for name in ("sphere2", "torus7", "rp2_6", "klein8"):
        x = catalog(name)
        for edge in x.simplices(1):
            assert sum(1 for t in x.simplices(2) if set(edge) <= set(t)) == 2


def test_from_json_validation():
    with pytest.raises(ValueError, match="simplices"):
        Complex.from_json({"vertices": [0]})
    with pytest.raises(ValueError, match="integer"):
        Complex.from_json({"simplices": [[0, "a"]]})
    x = Complex.from_json({"vertices": [5], "simplices": [[0, 1]]})
    assert x.vertices == (0, 1, 5)
