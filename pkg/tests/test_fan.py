import itertools
from fractions import Fraction

import pytest

from symbic.acceptance import four_pair_chain_tree
from symbic.correspond import matrix_from_tree
from symbic.counting import enumerate_regular
from symbic.fan import (
    RefinementCounterExample,
    coarse_cell_count,
    generic_length_tuples,
    refinement_check,
    sample_interior,
    signature,
    subdivision_witness,
)
from symbic.tropical import (
    Minor,
    TropMatrix,
    TropicalError,
    argmin_monomials,
    rank_one_matrix,
    sym_minor_degenerate,
)
from symbic.trees import InvalidMoveError


def test_generic_tuples_are_distinct_positive():
    for values in generic_length_tuples(4, 5):
        assert len(set(values)) == 5
        assert all(v > 0 for v in values)
    with pytest.raises(Exception):
        generic_length_tuples(40, 10)


def test_sample_interior_stays_in_the_cone():
    tree = four_pair_chain_tree(1, 1, 1)  # lengths replaced by the sample
    sample = sample_interior(tree, generic_length_tuples(1, 3)[0])
    # the sample must live in the same cone: its tree reconstructs to the
    # same combinatorial type
    from symbic.correspond import tree_from_matrix

    assert tree_from_matrix(sample).canonical_key() == tree.canonical_key()


def test_sample_interior_rejects_bad_lengths():
    tree = four_pair_chain_tree(1, 2, 3)
    with pytest.raises(InvalidMoveError):
        sample_interior(tree, (Fraction(1), Fraction(2), Fraction(0)))
    with pytest.raises(InvalidMoveError):
        sample_interior(tree, (Fraction(1), Fraction(2), Fraction(2)))
    with pytest.raises(InvalidMoveError):
        sample_interior(tree, (Fraction(1), Fraction(2)))


def test_signature_of_permuted_matrix():
    m = TropMatrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    sig = dict()
    for rows, cols, monomials in signature(m):
        sig[(rows, cols)] = monomials
    full = sig[((1, 2, 3), (1, 2, 3))]
    assert full == argmin_monomials(m, Minor((1, 2, 3), (1, 2, 3)))
    assert full == frozenset(
        {(((1, 2), (1, 2), (3, 3))), (((1, 3), (1, 3), (2, 2)))}
    )


def test_signature_of_zero_matrix_has_every_monomial():
    m = TropMatrix([[0] * 3] * 3)
    from symbic.tropical import monomial_of_permutation

    for rows, cols, monomials in signature(m):
        minor = Minor(rows, cols)
        every = {
            monomial_of_permutation(minor, perm)
            for perm in itertools.permutations(range(3))
        }
        assert monomials == frozenset(every)


def test_signature_needs_n_at_least_3():
    with pytest.raises(TropicalError):
        signature(TropMatrix([[0, 0], [0, 0]]))


def test_signature_is_lineality_invariant():
    tree = four_pair_chain_tree(2, 3, 5)
    m = matrix_from_tree(tree)
    shifted = m.add(rank_one_matrix([Fraction(1, 3), -2, 7, Fraction(5, 2)]))
    assert signature(m) == signature(shifted)


def test_samples_of_one_cone_share_signatures():
    tree = four_pair_chain_tree(1, 2, 3)
    first, second = generic_length_tuples(2, 3)
    assert signature(sample_interior(tree, first)) == signature(
        sample_interior(tree, second)
    )


def test_every_symmetric_minor_is_degenerate_on_cone_samples():
    from symbic.tropical import sym_trop_rank

    for n in (3, 4):
        for tree in enumerate_regular(n):
            sample = sample_interior(tree, generic_length_tuples(1, n - 1)[0])
            assert sym_trop_rank(sample) <= 2
            for minor in (Minor((1, 2, 3), (1, 2, 3)),):
                assert sym_minor_degenerate(sample, minor)


def test_refinement_check_small_n():
    assert refinement_check(3, samples_per_tree=5) is None
    assert refinement_check(4, samples_per_tree=3) is None


def test_refinement_check_catches_mixed_samples():
    catalog = enumerate_regular(3)
    trees = list(catalog)
    calls = []

    def corrupted_sampler(tree, lengths):
        # first call per tree answers honestly, later calls sample a
        # different tree's cone
        calls.append(tree)
        bait = trees[0] if tree.canonical_key() != trees[0].canonical_key() else trees[1]
        honest = calls.count(tree) == 1
        return sample_interior(tree if honest else bait, lengths)

    bad = refinement_check(3, samples_per_tree=2, sampler=corrupted_sampler)
    assert isinstance(bad, RefinementCounterExample)


def test_coarse_cells_n3():
    assert coarse_cell_count(3) == 9
    groups = subdivision_witness(3)
    assert sorted(len(keys) for _, keys in groups) == [1, 1, 1, 1, 1, 1, 2, 2, 2]
    assert sum(len(keys) for _, keys in groups) == 12


def test_coarse_cells_n4_bounded_by_catalog():
    count = coarse_cell_count(4)
    assert count <= 111
    assert count == 75  # computed value; no published expectation
