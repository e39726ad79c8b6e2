"""Cayley matrices of symbic-tree cones and their column matroids.

The cone of matrices of one tree is parameterized by one coordinate per
split orbit (node parameters: path distance from the base point O to each
internal node) plus n simultaneous-scaling directions.  Each symmetric
matrix coordinate (i, j) then reads off a column: an indicator of the node
where the paths O -> i and O -> j' diverge, stacked over e_i + e_j.  All
rank decisions are fraction-free and exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .correspond import base_point
from .counting import SizeCapError, TreeCatalog, enumerate_regular
from .trees import InvalidMoveError, SymbicTree

GroundPair = tuple[int, int]

BASES_CAP = 5
TRANSITION_CAP = 4


def ground_set(n: int) -> tuple[GroundPair, ...]:
    """Coordinates of a symmetric n x n matrix: pairs (i, j), i <= j, lex."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i, n + 1))


class CayleyMatrix(NamedTuple):
    """Node-parameter rows (one per non-base internal vertex orbit) stacked
    over the n lineality rows e_i + e_j, columns indexed by ground pairs."""

    n: int
    node_count: int
    columns: tuple[GroundPair, ...]
    rows: tuple[tuple[int, ...], ...]

    def column(self, pair: GroundPair) -> tuple[int, ...]:
        idx = self.columns.index(pair)
        return tuple(row[idx] for row in self.rows)

    def rank(self) -> int:
        return exact_rank(self.rows)


def cayley_matrix(tree: SymbicTree, base: Optional[int] = None) -> CayleyMatrix:
    if not tree.is_regular():
        raise InvalidMoveError("Cayley matrix wants a regular tree")
    o = base_point(tree, base)
    sigma = tree.involution()
    n = tree.n
    pairs = ground_set(n)
    divergence_orbit: dict[GroundPair, frozenset] = {}
    for i, j in pairs:
        v = tree.divergence_vertex(o, tree.pos(i), tree.pos(-j))
        divergence_orbit[(i, j)] = frozenset((v, sigma[v]))
    base_orbit = frozenset((o,))
    node_orbits = sorted(
        {orb for orb in divergence_orbit.values() if orb != base_orbit},
        key=lambda orb: min(p for p, o_ in divergence_orbit.items() if o_ == orb),
    )
    if len(node_orbits) != n - 1:
        raise AssertionError("regular tree must have n-1 node-parameter orbits")
    rows = []
    for orb in node_orbits:
        rows.append(tuple(1 if divergence_orbit[p] == orb else 0 for p in pairs))
    for coordinate in range(1, n + 1):
        rows.append(
            tuple((i == coordinate) + (j == coordinate) for i, j in pairs)
        )
    return CayleyMatrix(n, len(node_orbits), pairs, tuple(rows))


def exact_rank(rows: Iterable[Sequence[object]]) -> int:
    """Fraction-free (Bareiss) rank of a matrix with rational entries."""
    work = []
    for row in rows:
        scaled = [Fraction(x) for x in row]
        lcm = 1
        for x in scaled:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        work.append([int(x * lcm) for x in scaled])
    if not work:
        return 0
    cols = len(work[0])
    rank = 0
    prev = 1
    row_at = 0
    for col in range(cols):
        pivot = None
        for r in range(row_at, len(work)):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_at], work[pivot] = work[pivot], work[row_at]
        p = work[row_at][col]
        for r in range(row_at + 1, len(work)):
            for c in range(col + 1, cols):
                work[r][c] = (p * work[r][c] - work[r][col] * work[row_at][c]) // prev
            work[r][col] = 0
        prev = p
        row_at += 1
        rank += 1
        if row_at == len(work):
            break
    return rank



def matroid_bases(tree: SymbicTree, base: Optional[int] = None) -> frozenset:
    """All (2n-1)-subsets of matrix coordinates independent in the cone's
    span: exhaustive enumeration with incremental elimination."""
    if tree.n > BASES_CAP:
        raise SizeCapError(f"n={tree.n} exceeds basis enumeration cap {BASES_CAP}")
    cm = cayley_matrix(tree, base)
    pairs = cm.columns
    vectors = {p: [Fraction(x) for x in cm.column(p)] for p in pairs}
    target = 2 * tree.n - 1
    results: list[frozenset] = []

    def reduce(vec: list[Fraction], echelon: list[tuple[int, list[Fraction]]]):
        vec = list(vec)
        for pivot, basis_vec in echelon:
            if vec[pivot]:
                factor = vec[pivot]
                vec = [a - factor * b for a, b in zip(vec, basis_vec)]
        for idx, value in enumerate(vec):
            if value:
                return idx, [a / value for a in vec]
        return None

    def extend(start: int, chosen: list[GroundPair], echelon) -> None:
        if len(chosen) == target:
            results.append(frozenset(chosen))
            return
        remaining_needed = target - len(chosen)
        for idx in range(start, len(pairs) - remaining_needed + 1):
            step = reduce(vectors[pairs[idx]], echelon)
            if step is None:
                continue
            extend(idx + 1, chosen + [pairs[idx]], echelon + [step])

    extend(0, [], [])
    return frozenset(results)


def union_bases(
    n: int, which: str = "all", catalog: Optional[TreeCatalog] = None
) -> frozenset:
    """Union of the basis collections over the catalog, optionally
    restricted to trees with caterpillar branches or full caterpillars."""
    predicates = {
        "all": lambda t: True,
        "caterpillar_branches": lambda t: t.has_caterpillar_branches(),
        "full_caterpillar": lambda t: t.is_caterpillar(),
    }
    if which not in predicates:
        raise ValueError("which must be all, caterpillar_branches, or full_caterpillar")
    if n > BASES_CAP:
        raise SizeCapError(f"n={n} exceeds basis enumeration cap {BASES_CAP}")
    if catalog is None:
        catalog = enumerate_regular(n)
    keep = predicates[which]
    out: set = set()
    for tree in catalog:
        if keep(tree):
            out |= matroid_bases(tree)
    return frozenset(out)


class TransitionCounterExample(NamedTuple):
    face: frozenset
    cell: frozenset
    basis: frozenset


def basis_transition_table(n: int, catalog: Optional[TreeCatalog] = None):
    """(face -> cells containing it, cell -> bases) for the codimension-1
    faces of the complex; n=2 uses the empty face shared by every cell."""
    if n > TRANSITION_CAP:
        raise SizeCapError(f"n={n} exceeds transition check cap {TRANSITION_CAP}")
    if catalog is None:
        catalog = enumerate_regular(n)
    bases = {key: matroid_bases(tree) for key, tree in catalog.items()}
    faces: dict[frozenset, list[frozenset]] = {}
    if n == 2:
        faces[frozenset()] = list(bases)
    else:
        for key in bases:
            for orbit in key:
                faces.setdefault(key - {orbit}, []).append(key)
    return faces, bases


def check_basis_transitions(
    faces: dict[frozenset, list[frozenset]], bases: dict[frozenset, frozenset]
) -> Optional[TransitionCounterExample]:
    """Every basis of a maximal cone containing a codimension-1 face must be
    a basis of another maximal cone containing that face."""
    for face, cells in faces.items():
        for cell in cells:
            others: frozenset = frozenset()
            for other in cells:
                if other != cell:
                    others = others | bases[other]
            for basis in bases[cell]:
                if basis not in others:
                    return TransitionCounterExample(face, cell, basis)
    return None


def basis_transition_check(
    n: int, catalog: Optional[TreeCatalog] = None
) -> Optional[TransitionCounterExample]:
    faces, bases = basis_transition_table(n, catalog)
    return check_basis_transitions(faces, bases)


class ConjectureReport(NamedTuple):
    n: int
    equal: bool
    union_all_count: int
    union_caterpillar_count: int
    missing_bases: tuple


def conjecture_scan(n: int, catalog: Optional[TreeCatalog] = None) -> ConjectureReport:
    """Compare the full basis union against full-caterpillar trees only.
    Reports data; asserts nothing (the equality is an open question)."""
    if catalog is None:
        catalog = enumerate_regular(n)
    union_all = union_bases(n, "all", catalog)
    union_cat = union_bases(n, "full_caterpillar", catalog)
    missing = tuple(
        sorted(tuple(sorted(b)) for b in union_all - union_cat)
    )
    return ConjectureReport(
        n=n,
        equal=union_all == union_cat,
        union_all_count=len(union_all),
        union_caterpillar_count=len(union_cat),
        missing_bases=missing,
    )


def render_conjecture_report(report: ConjectureReport) -> str:
    lines = [
        f"# Caterpillar basis scan, n = {report.n}",
        "",
        f"- bases over all regular trees: {report.union_all_count}",
        f"- bases over caterpillar trees only: {report.union_caterpillar_count}",
        f"- collections equal: {report.equal}",
        "",
    ]
    if report.missing_bases:
        lines.append("Bases not realized by any caterpillar tree:")
        lines.extend(
            "- " + ", ".join(f"({i},{j})" for i, j in basis)
            for basis in report.missing_bases
        )
    else:
        lines.append("Every basis is realized by a caterpillar tree.")
    lines += [
        "",
        "Caveat: trunk-edge contractions need not admit trunk-shortening",
        "transitions, so the reduction argument used for caterpillar branches",
        "does not settle this; the scan reports data only.",
    ]
    return "\n".join(lines) + "\n"
