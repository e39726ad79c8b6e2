"""The bijection between symmetric tropical rank-2 matrices and symbic trees.

``matrix_from_tree`` reads path divergences off a tree; ``tree_from_matrix``
rebuilds the tree from the matrix through an exact leaf metric.  Round trips
are exact: rationals in, rationals out, tolerance zero.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

from .tropical import (
    TropMatrix,
    TropicalError,
    canonicalize_mod_lineality,
    hilbert_distance,
    sym_trop_rank,
)
from .trees import (
    MalformedTreeError,
    SymbicTree,
    label_key,
    tree_of_single_pair,
)


class NotRankTwoError(TropicalError):
    """The matrix has symmetric tropical rank > 2; no tree exists."""


class RankOneMatrixError(TropicalError):
    """The matrix has symmetric tropical rank 1: its tree degenerates to a
    star, which we report instead of emitting."""


class ReconstructionError(TropicalError):
    """The derived leaf metric was not realizable; impossible for genuine
    rank-2 input and so indicates an internal contradiction."""


def base_point(tree: SymbicTree, base: Optional[int] = None) -> int:
    """Resolve and sanity-check the base point O: any fixed trunk vertex.
    The default is the trunk endpoint whose nearest branch carries the
    smallest row-leaf index (the single trunk vertex for one-point trunks),
    which lines up with how the worked matrices read off a tree."""
    trunk = tree.trunk()
    if base is None:
        if len(trunk) == 1:
            return trunk[0]
        ends = (trunk[0], trunk[-1])
        return min(ends, key=lambda v: (tree.endpoint_min_row(v), v))
    if base not in trunk:
        raise MalformedTreeError("base point must be a fixed trunk vertex")
    return base


def matrix_from_tree(tree: SymbicTree, base: Optional[int] = None) -> TropMatrix:
    """Entry (i, j): distance from O to the divergence of the paths O -> i
    and O -> j'; symmetric of symmetric tropical rank <= 2."""
    o = base_point(tree, base)
    n = tree.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            meet = tree.divergence_vertex(o, tree.pos(i), tree.pos(-j))
            row.append(tree.distance(o, meet))
        rows.append(row)
    matrix = TropMatrix(rows)
    assert matrix.is_symmetric(), "tree symmetry must make the matrix symmetric"
    return matrix


def path_matrix_from_tree(tree: SymbicTree) -> TropMatrix:
    """Entry (i, j): total internal length of the path from leaf i to leaf
    j'.  Its negative has symmetric tropical rank 2 max-plus-wise."""
    n = tree.n
    rows = []
    for i in range(1, n + 1):
        pi = tree.pos(i)
        rows.append([tree.distance(pi, tree.pos(-j)) for j in range(1, n + 1)])
    return TropMatrix(rows)


def leaf_distances(tree: SymbicTree, base: Optional[int] = None) -> tuple[Fraction, ...]:
    """Internal distances from the base point to the row leaves 1..n."""
    o = base_point(tree, base)
    return tuple(tree.distance(o, tree.pos(i)) for i in range(1, tree.n + 1))


def lineality_identity_check(tree: SymbicTree, base: Optional[int] = None) -> bool:
    """2 A_T + B_T must equal D (tropical-times) D^T with D the distances
    from O to the leaves; true for every valid tree."""
    o = base_point(tree, base)
    a = matrix_from_tree(tree, o)
    b = path_matrix_from_tree(tree)
    d = leaf_distances(tree, o)
    n = tree.n
    return all(
        2 * a.entry(i, j) + b.entry(i, j) == d[i - 1] + d[j - 1]
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )


class LeafMetric:
    """Exact pairwise internal path lengths between the 2n leaf labels."""

    __slots__ = ("labels", "dist")

    def __init__(self, labels: Sequence[int], dist: dict[tuple[int, int], Fraction]):
        self.labels = tuple(sorted(labels, key=label_key))
        self.dist = dist

    def distance(self, x: int, y: int) -> Fraction:
        if x == y:
            return Fraction(0)
        return self.dist[(x, y) if (x, y) in self.dist else (y, x)]

    def four_point_violation(self) -> Optional[tuple]:
        """First quadruple where the two largest of the three pair-sums
        differ, or None when the metric is additive."""
        for quad in itertools.combinations(self.labels, 4):
            w, x, y, z = quad
            sums = sorted(
                (
                    self.distance(w, x) + self.distance(y, z),
                    self.distance(w, y) + self.distance(x, z),
                    self.distance(w, z) + self.distance(x, y),
                )
            )
            if sums[1] != sums[2]:
                return quad
        return None


def leaf_metric_from_matrix(matrix: TropMatrix) -> LeafMetric:
    """Distances between leaf attachment points recovered from the matrix.

    The tree lives inside the tropical convex hull of the columns with the
    tropical Hilbert metric: row leaf i sits at column i, and column leaf j'
    sits where the j-th coordinate ray attaches, at the point with
    coordinates min_l (M_kl - M_jl).  Both positions shift by a common
    translation under simultaneous tropical row/column scaling, so every
    pairwise distance is invariant on the matrix's lineality class.
    """
    matrix.require_symmetric()
    rank = sym_trop_rank(matrix)
    if rank > 2:
        raise NotRankTwoError(f"symmetric tropical rank {rank} > 2")
    n = matrix.n
    position: dict[int, tuple[Fraction, ...]] = {}
    for i in range(1, n + 1):
        position[i] = matrix.column(i)
        position[-i] = tuple(
            min(matrix.entry(k, l) - matrix.entry(i, l) for l in range(1, n + 1))
            for k in range(1, n + 1)
        )
    labels = [s * i for i in range(1, n + 1) for s in (1, -1)]
    dist = {}
    for x, y in itertools.combinations(labels, 2):
        dist[(x, y)] = hilbert_distance(position[x], position[y])
    return LeafMetric(labels, dist)


def _steiner_tree(metric: LeafMetric) -> tuple[dict, dict]:
    """Exact sequential insertion of labeled points into a metric tree.

    Returns (adjacency of internal vertices with Fraction lengths,
    position vertex of every label).  Labels may share positions.
    """
    labels = list(metric.labels)
    adj: dict[int, dict[int, Fraction]] = {0: {}}
    pos: dict[int, int] = {labels[0]: 0}
    placed = [labels[0]]
    counter = 0

    def fresh() -> int:
        nonlocal counter
        counter += 1
        return counter

    for z in labels[1:]:
        x0 = placed[0]
        gammas = [
            (
                (metric.distance(x0, z) + metric.distance(x0, y) - metric.distance(y, z)),
                y,
            )
            for y in placed
        ]
        best2, ystar = max(gammas)
        gamma = best2 / 2
        stub = metric.distance(x0, z) - gamma
        if gamma < 0 or stub < 0:
            raise ReconstructionError("metric is not a tree metric")
        # walk from pos(x0) toward pos(ystar) for distance gamma
        a = pos[x0]
        target = pos[ystar]
        walked = Fraction(0)
        attach = a
        while walked < gamma:
            # step to the neighbor toward target
            nxt = _step_toward(adj, attach, target)
            if nxt is None:
                raise ReconstructionError("metric is not a tree metric")
            length = adj[attach][nxt]
            if walked + length <= gamma:
                walked += length
                attach = nxt
            else:
                mid = fresh()
                first = gamma - walked
                second = length - first
                del adj[attach][nxt]
                del adj[nxt][attach]
                adj[mid] = {attach: first, nxt: second}
                adj[attach][mid] = first
                adj[nxt][mid] = second
                attach = mid
                walked = gamma
        if stub == 0:
            pos[z] = attach
        else:
            w = fresh()
            adj[w] = {attach: stub}
            adj[attach][w] = stub
            pos[z] = w
        placed.append(z)
    return adj, pos


def _step_toward(adj: dict, source: int, target: int) -> Optional[int]:
    if source == target:
        return None
    parent = {source: None}
    queue = [source]
    while queue:
        nxt_queue = []
        for a in queue:
            for b in adj[a]:
                if b not in parent:
                    parent[b] = a
                    nxt_queue.append(b)
        queue = nxt_queue
    if target not in parent:
        return None
    step = target
    while parent[step] != source:
        step = parent[step]
    return step


def tree_from_matrix(matrix: TropMatrix) -> SymbicTree:
    """Reconstruct the symbic tree of a symmetric matrix of symmetric
    tropical rank 2 (singular cone boundaries give singular-type trees).

    Rank-1 input degenerates to a star and is reported via
    :class:`RankOneMatrixError` rather than returned; the 1x1 case is the
    honest single-pair tree.
    """
    matrix.require_symmetric()
    if matrix.n == 1:
        return tree_of_single_pair()
    rank = sym_trop_rank(matrix)
    if rank > 2:
        raise NotRankTwoError(f"symmetric tropical rank {rank} > 2")
    if rank == 1:
        raise RankOneMatrixError(
            "rank-one matrix: the tree degenerates to a star"
        )
    metric = leaf_metric_from_matrix(matrix)
    bad = metric.four_point_violation()
    if bad is not None:
        raise ReconstructionError(f"four-point condition fails on {bad}")
    adj, pos = _steiner_tree(metric)
    # attach explicit leaf vertices
    full_adj: dict[int, dict[int, Optional[Fraction]]] = {
        u: dict(nbrs) for u, nbrs in adj.items()
    }
    leaf_vertex = {}
    nxt = max(full_adj) + 1
    for label, vertex in pos.items():
        full_adj[nxt] = {vertex: None}
        full_adj[vertex][nxt] = None
        leaf_vertex[label] = nxt
        nxt += 1
    tree = SymbicTree(matrix.n, full_adj, leaf_vertex)
    for x, y in itertools.combinations(tree.labels(), 2):
        if tree.distance(tree.pos(x), tree.pos(y)) != metric.distance(x, y):
            raise ReconstructionError("reconstructed tree does not fit the metric")
    violation = tree.validate()
    if violation is not None:
        raise ReconstructionError(f"reconstruction is not symbic: {violation}")
    return tree


def matrices_agree_mod_lineality(a: TropMatrix, b: TropMatrix) -> bool:
    return canonicalize_mod_lineality(a) == canonicalize_mod_lineality(b)
