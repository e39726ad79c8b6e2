import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symbic.tropical import (
    Minor,
    MinorSizeError,
    TropMatrix,
    TropicalError,
    all_minors,
    canonicalize_mod_lineality,
    hilbert_distance,
    minor_degenerate,
    monomial_of_permutation,
    parse_rational,
    rank_one_matrix,
    sym_minor_degenerate,
    sym_trop_rank,
    trop_det,
    trop_rank,
)

IDENTITY_LIKE = TropMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
PERMUTED = TropMatrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
FULL3 = Minor((1, 2, 3), (1, 2, 3))

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=9
)


def brute_min_expansion(m, rows, cols):
    """Independent recursive (Laplace-style) min-plus expansion, k <= 4."""
    if len(rows) == 1:
        return m.entry(rows[0], cols[0])
    best = None
    for i, r in enumerate(rows):
        rest = rows[:i] + rows[i + 1 :]
        value = m.entry(r, cols[0]) + brute_min_expansion(m, rest, cols[1:])
        if best is None or value < best:
            best = value
    return best


def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_rational(2) == Fraction(2)
    with pytest.raises(TropicalError):
        parse_rational("a/b")
    with pytest.raises(TropicalError):
        parse_rational("1/0")


def test_matrix_must_be_square():
    with pytest.raises(TropicalError):
        TropMatrix([[1, 2]])
    with pytest.raises(TropicalError):
        TropMatrix([])


def test_trop_det_identity_pattern():
    value, perms = trop_det(IDENTITY_LIKE, FULL3)
    assert value == 0
    # exactly the two 3-cycles attain the minimum
    assert perms == frozenset({(1, 2, 0), (2, 0, 1)})


def test_trop_det_two_by_two_all_zero():
    m = TropMatrix([[0, 0], [0, 0]])
    value, perms = trop_det(m, Minor((1, 2), (1, 2)))
    assert value == 0
    assert len(perms) == 2


def test_trop_det_matches_brute_force_expansion():
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randint(2, 4)
        n = rng.randint(k, 5)
        m = TropMatrix(
            [[Fraction(rng.randint(-6, 6)) for _ in range(n)] for _ in range(n)]
        )
        rows = tuple(sorted(rng.sample(range(1, n + 1), k)))
        cols = tuple(sorted(rng.sample(range(1, n + 1), k)))
        value, perms = trop_det(m, Minor(rows, cols))
        assert value == brute_min_expansion(m, rows, cols)
        for perm in perms:
            assert sum(m.entry(rows[i], cols[perm[i]]) for i in range(k)) == value


def test_minor_validation():
    with pytest.raises(TropicalError):
        Minor((1,), (1,))
    with pytest.raises(TropicalError):
        Minor((2, 1), (1, 2))
    with pytest.raises(TropicalError):
        trop_det(TropMatrix([[0, 0], [0, 0]]), Minor((1, 3), (1, 2)))
    big = Minor(tuple(range(1, 11)), tuple(range(1, 11)))
    with pytest.raises(MinorSizeError):
        big.check_against(TropMatrix([[0] * 12] * 12))


def test_monomials_of_permutations():
    assert monomial_of_permutation(FULL3, (0, 1, 2)) == ((1, 1), (2, 2), (3, 3))
    cycle = monomial_of_permutation(FULL3, (1, 2, 0))
    other_cycle = monomial_of_permutation(FULL3, (2, 0, 1))
    assert cycle == other_cycle == ((1, 2), (1, 3), (2, 3))
    swap = monomial_of_permutation(FULL3, (1, 0, 2))
    assert swap == ((1, 2), (1, 2), (3, 3))
    with pytest.raises(TropicalError):
        monomial_of_permutation(FULL3, (0, 0, 1))


def test_symmetric_degeneracy_examples():
    # unique monomial despite two argmin permutations
    assert minor_degenerate(IDENTITY_LIKE, FULL3)
    assert not sym_minor_degenerate(IDENTITY_LIKE, FULL3)
    assert sym_minor_degenerate(PERMUTED, FULL3)
    zero = TropMatrix([[0] * 3] * 3)
    for minor in all_minors(3, 2):
        assert sym_minor_degenerate(zero, minor)
    assert sym_minor_degenerate(zero, FULL3)


def test_rank_examples():
    assert trop_rank(IDENTITY_LIKE) == 2
    assert sym_trop_rank(IDENTITY_LIKE) == 3
    assert sym_trop_rank(PERMUTED) == 2
    assert trop_rank(TropMatrix([[0] * 3] * 3)) == 1
    x = [Fraction(0), Fraction(1), Fraction(2)]
    assert sym_trop_rank(rank_one_matrix(x)) == 1


def test_sym_rank_needs_symmetry():
    asym = TropMatrix([[0, 1], [2, 0]])
    with pytest.raises(TropicalError):
        sym_trop_rank(asym)


def test_sym_rank_dominates_ordinary_rank_on_random_symmetric():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(2, 5)
        entries = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                entries[i][j] = entries[j][i] = Fraction(rng.randint(-4, 4))
        m = TropMatrix(entries)
        assert sym_trop_rank(m) >= trop_rank(m)


def test_hilbert_examples():
    assert hilbert_distance([1, 2, 3], [1, 2, 3]) == 0
    assert hilbert_distance([1, 0, 0], [0, 1, 0]) == 2
    # two columns of the worked 4x4 matrix at a=1, b=2, c=3
    a = TropMatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 2], [0, 0, 2, 5]])
    assert hilbert_distance(a.column(1), a.column(2)) == 2
    with pytest.raises(TropicalError):
        hilbert_distance([1], [1, 2])


@given(st.lists(rationals, min_size=1, max_size=6), st.data())
@settings(max_examples=120, deadline=None)
def test_hilbert_pseudometric_laws(x, data):
    y = data.draw(st.lists(rationals, min_size=len(x), max_size=len(x)))
    z = data.draw(st.lists(rationals, min_size=len(x), max_size=len(x)))
    c = data.draw(rationals)
    assert hilbert_distance(x, x) == 0
    assert hilbert_distance(x, y) == hilbert_distance(y, x) >= 0
    assert hilbert_distance(x, z) <= hilbert_distance(x, y) + hilbert_distance(y, z)
    assert hilbert_distance([v + c for v in x], y) == hilbert_distance(x, y)


def test_hilbert_zero_iff_constant_difference():
    assert hilbert_distance([1, 2, 3], [0, 1, 2]) == 0
    assert hilbert_distance([1, 2, 3], [0, 1, 3]) != 0


@given(
    st.integers(min_value=1, max_value=5),
    st.data(),
)
@settings(max_examples=80, deadline=None)
def test_canonicalize_kills_lineality(n, data):
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            q = data.draw(rationals)
            entries[i][j] = entries[j][i] = q
    m = TropMatrix(entries)
    x = data.draw(st.lists(rationals, min_size=n, max_size=n))
    shifted = m.add(rank_one_matrix(x))
    canon = canonicalize_mod_lineality(m)
    assert canonicalize_mod_lineality(shifted) == canon
    # idempotent, first row zero
    assert canonicalize_mod_lineality(canon) == canon
    assert all(v == 0 for v in canon.rows[0])


def test_canonicalize_rank_one_is_zero():
    x = [Fraction(3, 2), Fraction(-1), Fraction(7)]
    zero = canonicalize_mod_lineality(rank_one_matrix(x))
    assert all(v == 0 for row in zero.rows for v in row)


def test_matrix_json_round_trip():
    m = TropMatrix([["1/2", "0"], ["0", "-3"]])
    again = TropMatrix.from_json_dict(m.to_json_dict())
    assert again == m
    with pytest.raises(TropicalError):
        TropMatrix.from_json_dict({"n": 3, "entries": [["0"]]})
