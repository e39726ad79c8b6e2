"""Relating the symbic-tree fan to the coarse fan cut out by 3x3 minors.

A cone of the coarse fan is determined by which monomials attain the minimum
in every 3x3 minor.  Sampling a tree's cone at generic (distinct prime based)
edge lengths and comparing those argmin-monomial signatures tests that the
tree fan refines the coarse fan and counts coarse cells.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .correspond import matrix_from_tree
from .counting import SizeCapError, TreeCatalog, enumerate_regular, orbit_sort_key
from .tropical import (
    TropMatrix,
    TropicalError,
    all_minors,
    argmin_monomials,
    canonicalize_mod_lineality,
)
from .trees import InvalidMoveError, SymbicTree

FAN_CAP = 5

_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
)

Signature = frozenset  # of (rows, cols, frozenset of monomials)


def generic_length_tuples(count: int, size: int) -> list[tuple[Fraction, ...]]:
    """Deterministic tuples of pairwise-distinct positive rationals: runs of
    primes and of prime reciprocals."""
    out = []
    for i in range(count):
        block = _PRIMES[(i // 2) * size : (i // 2) * size + size]
        if len(block) < size:
            raise SizeCapError("not enough primes for that many samples")
        values = tuple(Fraction(p) if i % 2 == 0 else Fraction(1, p) for p in block)
        out.append(values)
    return out


def sample_interior(tree: SymbicTree, lengths: Sequence[object]) -> TropMatrix:
    """Canonicalized matrix of the tree at the given orbit lengths: a point
    in the relative interior of the tree's cone.  Lengths are assigned to
    split orbits in a fixed deterministic order and must be positive and
    pairwise distinct."""
    orbits = sorted(tree.split_orbits(), key=orbit_sort_key)
    values = [Fraction(v) if not isinstance(v, Fraction) else v for v in lengths]
    if len(values) != len(orbits):
        raise InvalidMoveError("need exactly one length per split orbit")
    if any(v <= 0 for v in values):
        raise InvalidMoveError("interior sample needs strictly positive lengths")
    if len(set(values)) != len(values):
        raise InvalidMoveError("interior sample wants pairwise distinct lengths")
    sampled = tree.with_orbit_lengths(dict(zip(orbits, values)))
    return canonicalize_mod_lineality(matrix_from_tree(sampled))


def signature(matrix: TropMatrix) -> Signature:
    """Argmin monomial sets of every 3x3 minor (all row/column index pairs)."""
    if matrix.n < 3:
        raise TropicalError("signatures need n >= 3")
    out = []
    for minor in all_minors(matrix.n, 3):
        out.append((minor.rows, minor.cols, argmin_monomials(matrix, minor)))
    return frozenset(out)


class RefinementCounterExample(NamedTuple):
    tree_key: frozenset
    lengths_a: tuple
    lengths_b: tuple


def refinement_check(
    n: int,
    samples_per_tree: int = 3,
    catalog: Optional[TreeCatalog] = None,
    sampler=sample_interior,
) -> Optional[RefinementCounterExample]:
    """Within each tree's cone, generic samples must share their signature
    (the tree fan refines the coarse 3x3-minor fan).  Sampling-based: two
    independent generic samples agreeing is the practical test.  ``sampler``
    exists for fault injection in tests."""
    if n > FAN_CAP:
        raise SizeCapError(f"n={n} exceeds fan cap {FAN_CAP}")
    if catalog is None:
        catalog = enumerate_regular(n)
    tuples = generic_length_tuples(samples_per_tree, n - 1)
    for key, tree in catalog.items():
        seen = None
        for lengths in tuples:
            sig = signature(sampler(tree, lengths))
            if seen is None:
                seen = (sig, lengths)
            elif sig != seen[0]:
                return RefinementCounterExample(key, seen[1], lengths)
    return None


def signature_by_tree(
    n: int, catalog: Optional[TreeCatalog] = None
) -> dict[frozenset, Signature]:
    if n > FAN_CAP:
        raise SizeCapError(f"n={n} exceeds fan cap {FAN_CAP}")
    if catalog is None:
        catalog = enumerate_regular(n)
    lengths = generic_length_tuples(1, n - 1)[0]
    return {
        key: signature(sample_interior(tree, lengths))
        for key, tree in catalog.items()
    }


def coarse_cell_count(n: int, catalog: Optional[TreeCatalog] = None) -> int:
    """Number of distinct coarse-fan signatures over the catalog."""
    return len(set(signature_by_tree(n, catalog).values()))


def subdivision_witness(
    n: int = 3, catalog: Optional[TreeCatalog] = None
) -> list[tuple[Signature, tuple]]:
    """Group trees by coarse signature; at n=3 the 12 symbic cones fall onto
    9 coarse cells, three of which split into two cones each."""
    groups: dict[Signature, list] = {}
    for key, sig in signature_by_tree(n, catalog).items():
        groups.setdefault(sig, []).append(key)
    return [
        (sig, tuple(sorted(keys, key=_key_sort)))
        for sig, keys in sorted(groups.items(), key=lambda kv: _group_sort(kv[1]))
    ]


def _key_sort(key: frozenset) -> tuple:
    return tuple(sorted(orbit_sort_key(o) for o in key))


def _group_sort(keys: list) -> tuple:
    return (len(keys), tuple(sorted(_key_sort(k) for k in keys)))
