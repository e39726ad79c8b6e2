import math
import random
from fractions import Fraction

import pytest

from symbic.counting import (
    RationalSeries,
    SizeCapError,
    colored_branch_shapes,
    count_full_trunk,
    count_one_vertex_trunk,
    count_regular,
    egf_coefficients,
    enumerate_faces,
    enumerate_regular,
    face_catalog,
    random_regular_tree,
    series_full_trunk,
    series_one_vertex_trunk,
    series_regular,
    set_partitions,
)

REGULAR_COUNTS = [1, 1, 2, 12, 111, 1395]


def test_one_vertex_trunk_recurrence():
    assert [count_one_vertex_trunk(n) for n in range(5)] == [0, 1, 1, 6, 54]
    assert count_one_vertex_trunk(2) == 1


def test_full_trunk_counts():
    assert [count_full_trunk(n) for n in range(5)] == [1, 1, 1, 3, 12]
    assert count_full_trunk(6) == 360


def test_series_arithmetic():
    s = RationalSeries([1, -4, 2], 12)
    root = s.sqrt()
    assert root * root == s
    geom = RationalSeries([1, -1], 8).reciprocal()
    assert geom.coeffs == tuple(Fraction(1) for _ in range(9))
    assert (geom * RationalSeries([1, -1], 8)).coeffs[0] == 1
    with pytest.raises(ValueError):
        RationalSeries([2, 1], 4).sqrt()
    with pytest.raises(ValueError):
        RationalSeries([0, 1], 4).reciprocal()


def test_series_composition_needs_zero_constant():
    outer = RationalSeries([1, 1, 1], 6)
    with pytest.raises(ValueError):
        outer.compose(RationalSeries([1, 1], 6))


def test_egf_values():
    e1 = series_one_vertex_trunk(12)
    assert [int(e1.egf_count(n)) for n in range(5)] == [0, 1, 1, 6, 54]
    for n in range(13):
        assert e1.egf_count(n) == count_one_vertex_trunk(n)
    e2 = series_full_trunk(10)
    for n in range(11):
        assert e2.egf_count(n) == count_full_trunk(n)
    e = series_regular(8)
    assert [int(e.egf_count(n)) for n in range(6)] == REGULAR_COUNTS
    assert e.coefficient(0) == 1


def test_composition_identity():
    """The full generating function is the trunk arrangement series composed
    with the one-vertex-trunk series."""
    order = 14
    composed = series_full_trunk(order).compose(series_one_vertex_trunk(order))
    assert composed == series_regular(order)


def test_egf_coefficients_dispatch():
    assert egf_coefficients("E", 6) == series_regular(6)
    with pytest.raises(ValueError):
        egf_coefficients("nope", 6)
    with pytest.raises(SizeCapError):
        egf_coefficients("E", 99)


def test_counting_methods_agree():
    for n in range(6):
        values = {count_regular(n, m) for m in ("recurrence", "egf", "constructive")}
        assert values == {REGULAR_COUNTS[n]}
    assert count_regular(8, "egf") == count_regular(8, "recurrence")


def test_branch_shape_counts_match_recurrence():
    for k in range(1, 6):
        labels = tuple(range(1, k + 1))
        assert len(colored_branch_shapes(labels)) == count_one_vertex_trunk(k)


def test_set_partitions_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52]
    for n, value in enumerate(bell):
        assert sum(1 for _ in set_partitions(tuple(range(n)))) == value


def test_catalog_entries_are_regular_with_right_orbit_count():
    for n in (1, 2, 3, 4, 5):
        catalog = enumerate_regular(n)
        assert len(catalog) == REGULAR_COUNTS[n]
        for key, tree in catalog.items():
            assert len(key) == max(n - 1, 0)
            assert tree.validate() is None
        # full validation of regularity is costly; sample at n=5
        sample = list(catalog)[:: max(1, len(catalog) // 40)]
        for tree in sample:
            assert tree.is_regular()


def test_trunk_block_statistics_match_composition_formula():
    """Group the catalog by its multiset of trunk block sizes and compare
    each group against the set-partition/arrangement product."""
    for n in (3, 4, 5):
        counts: dict[tuple, int] = {}
        for tree in enumerate_regular(n):
            trunk = tree.trunk()
            sizes = []
            for v in trunk:
                labels = {
                    abs(l)
                    for br in tree.branches()
                    if br.trunk_vertex == v
                    for l in br.labels
                }
                sizes.append(len(labels))
            counts[tuple(sorted(sizes))] = counts.get(tuple(sorted(sizes)), 0) + 1
        for shape, got in counts.items():
            m = len(shape)
            mult: dict[int, int] = {}
            for k in shape:
                mult[k] = mult.get(k, 0) + 1
            partitions = math.factorial(n)
            for k, c in mult.items():
                partitions //= math.factorial(k) ** c * math.factorial(c)
            arrangements = 1 if m <= 1 else math.factorial(m) // 2
            shapes_product = 1
            for k in shape:
                shapes_product *= count_one_vertex_trunk(k)
            assert got == partitions * arrangements * shapes_product


def test_enumeration_caps():
    with pytest.raises(SizeCapError):
        enumerate_regular(8)
    with pytest.raises(ValueError):
        enumerate_regular(0)


def test_random_trees_are_regular():
    rng = random.Random(2)
    seen_n = set()
    for _ in range(60):
        n = rng.randint(1, 6)
        tree = random_regular_tree(n, rng)
        assert tree.is_regular()
        seen_n.add(n)
    assert seen_n == set(range(1, 7))


def test_faces_of_n2():
    by_dim = enumerate_faces(2)
    assert set(by_dim) == {1}
    assert len(by_dim[1]) == 2


def test_faces_of_n3():
    by_dim = enumerate_faces(3)
    assert len(by_dim[2]) == 12
    # ray types: 3 trunk splits {i,i'}, 3 cherry orbits, and 3 color-swapped
    # halvings like {1,3,2'}|{1',3',2} (the coarse fan's 6 rays plus the 3
    # subdivision rays)
    assert len(by_dim[1]) == 9
    for key, face in face_catalog(3).items():
        assert face.validate() is None
        assert face.split_orbits() == key


def test_faces_are_downward_closed():
    faces = set(face_catalog(4))
    for key in faces:
        for orbit in key:
            smaller = key - {orbit}
            if smaller:
                assert smaller in faces


@pytest.mark.long
def test_catalog_n6_count_and_orbits():
    catalog = enumerate_regular(6)
    assert len(catalog) == count_regular(6, "egf")
    for key, tree in catalog.items():
        assert len(key) == 5
