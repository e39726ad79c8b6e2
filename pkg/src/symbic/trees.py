"""Symmetric bicolored trees ("symbic trees"): structure, validation, surgery.

A tree on 2n leaves labeled 1..n (row color) and 1'..n' (column color) with
rational internal edge lengths.  Leaf labels are signed integers internally:
+i is the row leaf i, -i is the column leaf i'.  Leaf edges carry no length
(``None``) and never enter metric computations.

Normal form maintained by the builder:

* every leaf label hangs off its own degree-1 leaf vertex;
* zero-length internal edges are contracted (singular trees are represented
  by honest smaller trees);
* internal edges whose far side holds a single leaf are contracted (a finite
  stub under a leaf edge is meaningless since leaf lengths are ignored);
* degree-2 internal vertices with two internal edges are smoothed, then, if
  the color-swapping involution flips an edge end-for-end, that edge is
  re-subdivided by an explicit fixed midpoint vertex.  This makes "the fixed
  points form a path" checkable on vertices alone.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from .tropical import format_rational, parse_rational

Label = int  # +i row leaf, -i column leaf
Split = frozenset  # frozenset of labels: one side of an internal edge
Orbit = frozenset  # frozenset of one or two Splits swapped by the involution


class MalformedTreeError(ValueError):
    """The input graph is not a usable leaf-labeled tree at all."""


class InvalidMoveError(ValueError):
    """An attachment/transition choice that cannot yield a symbic tree."""

    def __init__(self, message: str, violation: "Violation | None" = None):
        super().__init__(message)
        self.violation = violation


class Violation(NamedTuple):
    """A failed symbic axiom: condition 1 bicolored splits, 2 positive
    lengths, 3 involution symmetry, 4 fixed set is a path."""

    condition: int
    detail: str
    witness: object = None


def swap_label(label: Label) -> Label:
    return -label


def label_key(label: Label) -> tuple[int, int]:
    return (abs(label), 0 if label > 0 else 1)


def format_label(label: Label) -> str:
    return str(label) if label > 0 else f"{-label}p"


def parse_label(text: str) -> Label:
    text = text.strip()
    neg = text.endswith("p") or text.endswith("'")
    body = text[:-1] if neg else text
    try:
        idx = int(body)
    except ValueError as exc:
        raise MalformedTreeError(f"bad leaf label {text!r}") from exc
    if idx < 1:
        raise MalformedTreeError(f"bad leaf label {text!r}")
    return -idx if neg else idx


def swap_split(side: frozenset) -> frozenset:
    return frozenset(-l for l in side)


class Branch(NamedTuple):
    trunk_vertex: int
    root: int  # first vertex off the trunk (may be a leaf vertex)
    labels: frozenset


class SymbicTree:
    """Immutable-by-convention symbic tree candidate.

    Construction normalizes the graph; :meth:`validate` checks the four
    symbic axioms and is the only place that *reports* failures rather than
    raising.  Structurally broken inputs raise :class:`MalformedTreeError`.
    """

    __slots__ = ("n", "adj", "leaf_vertex", "_cache")

    def __init__(
        self,
        n: int,
        adj: dict[int, dict[int, Optional[Fraction]]],
        leaf_vertex: dict[Label, int],
        involution_hint: Optional[dict[int, int]] = None,
    ):
        self.n = n
        self.adj = adj
        self.leaf_vertex = leaf_vertex
        self._cache: dict = {}
        _normalize(self, involution_hint)

    # -- basic structure ---------------------------------------------------

    def labels(self) -> list[Label]:
        return sorted(self.leaf_vertex, key=label_key)

    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def leaf_vertices(self) -> set[int]:
        return set(self.leaf_vertex.values())

    def internal_vertices(self) -> list[int]:
        leaves = self.leaf_vertices()
        return sorted(v for v in self.adj if v not in leaves)

    def label_of_vertex(self) -> dict[int, Label]:
        return {v: l for l, v in self.leaf_vertex.items()}

    def pos(self, label: Label) -> int:
        """Attachment vertex of a leaf: the unique neighbor of its leaf vertex."""
        lv = self.leaf_vertex[label]
        (att,) = self.adj[lv]
        return att

    def internal_edges(self) -> list[tuple[int, int, Fraction]]:
        leaves = self.leaf_vertices()
        out = []
        for u in self.adj:
            if u in leaves:
                continue
            for v, length in self.adj[u].items():
                if v in leaves or v < u:
                    continue
                out.append((u, v, length))
        return sorted(out)

    def edges(self) -> list[tuple[int, int, Optional[Fraction]]]:
        out = []
        for u in self.adj:
            for v, length in self.adj[u].items():
                if v < u:
                    continue
                out.append((u, v, length))
        return sorted(out, key=lambda e: (e[0], e[1]))

    # -- metric ------------------------------------------------------------

    def distance(self, u: int, v: int) -> Fraction:
        """Internal path length between two vertices (leaf edges count 0)."""
        if u == v:
            return Fraction(0)
        dist = {u: Fraction(0)}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            if a == v:
                return dist[a]
            for b, length in self.adj[a].items():
                if b not in dist:
                    dist[b] = dist[a] + (length or Fraction(0))
                    queue.append(b)
        raise MalformedTreeError("disconnected tree")

    def path(self, u: int, v: int) -> list[int]:
        parent = {u: u}
        queue = deque([u])
        while queue and v not in parent:
            a = queue.popleft()
            for b in self.adj[a]:
                if b not in parent:
                    parent[b] = a
                    queue.append(b)
        if v not in parent:
            raise MalformedTreeError("disconnected tree")
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        out.reverse()
        return out

    def divergence_vertex(self, base: int, u: int, v: int) -> int:
        """Last common vertex of the paths base->u and base->v."""
        pu, pv = self.path(base, u), self.path(base, v)
        meet = base
        for a, b in zip(pu, pv):
            if a != b:
                break
            meet = a
        return meet

    # -- splits and keys ----------------------------------------------------

    def side_labels(self, u: int, v: int) -> frozenset:
        """Labels in the component of v when the edge (u, v) is removed."""
        seen = {u, v}
        queue = deque([v])
        found = set()
        label_of = self.label_of_vertex()
        while queue:
            a = queue.popleft()
            if a in label_of:
                found.add(label_of[a])
            for b in self.adj[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return frozenset(found)

    def edge_descriptor(self, u: int, v: int) -> Split:
        """Canonical identity of an edge across isomorphic copies: the labels
        on the side not containing the canonical trunk endpoint.  Unlike the
        split, this distinguishes the two color-swapped halves of a
        midpoint-subdivided edge (they yield different attachments)."""
        v0 = self.canonical_endpoint()
        comp = self._component_vertices(u, v)
        if v0 in comp:
            comp = self._component_vertices(v, u)
        label_of = self.label_of_vertex()
        return frozenset(label_of[w] for w in comp if w in label_of)

    def _component_vertices(self, u: int, v: int) -> set[int]:
        """Vertices in the component of v when the edge (u, v) is removed."""
        seen = {u, v}
        queue = deque([v])
        while queue:
            a = queue.popleft()
            for b in self.adj[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        seen.discard(u)
        return seen

    def splits(self) -> dict[frozenset, Split]:
        """Map internal edge {u, v} -> its split side not containing +1."""
        if "splits" not in self._cache:
            out = {}
            for u, v, _ in self.internal_edges():
                side = self.side_labels(u, v)
                if 1 in side:
                    side = self.side_labels(v, u)
                out[frozenset((u, v))] = side
            self._cache["splits"] = out
        return self._cache["splits"]

    def split_set(self) -> frozenset:
        return frozenset(self.splits().values())

    def split_orbits(self) -> frozenset:
        """Splits grouped into orbits of the involution; one element per
        internal edge up to symmetry."""
        if "orbits" in self._cache:
            return self._cache["orbits"]
        sigma = self.involution()
        by_edge = self.splits()
        orbits = set()
        for edge, split in by_edge.items():
            u, v = tuple(edge)
            mirror = frozenset((sigma[u], sigma[v]))
            orbits.add(frozenset((split, by_edge[mirror])))
        result = frozenset(orbits)
        self._cache["orbits"] = result
        return result

    def canonical_key(self) -> frozenset:
        """Equal keys iff equal combinatorial type; blind to lengths/ids."""
        return self.split_orbits()

    def orbit_of_edge(self, u: int, v: int) -> Orbit:
        sigma = self.involution()
        split = self.splits()[frozenset((u, v))]
        mirror = self.splits()[frozenset((sigma[u], sigma[v]))]
        return frozenset((split, mirror))

    def edges_of_orbit(self, orbit: Orbit) -> list[frozenset]:
        return [e for e, s in self.splits().items() if s in orbit]

    # -- involution and validation ------------------------------------------

    def involution(self) -> dict[int, int]:
        sigma = self._cache.get("sigma")
        if sigma is None:
            sigma = _find_involution(self)
            if sigma is None:
                raise MalformedTreeError(
                    "no length-preserving color-swapping symmetry"
                )
            self._cache["sigma"] = sigma
        return sigma

    def has_involution(self) -> bool:
        try:
            self.involution()
            return True
        except MalformedTreeError:
            return False

    def fixed_vertices(self) -> set[int]:
        sigma = self.involution()
        return {v for v in self.internal_vertices() if sigma[v] == v}

    def validate(self) -> Optional[Violation]:
        """Check the four symbic axioms; returns the first violation found."""
        for u, v, _ in self.internal_edges():
            for side in (self.side_labels(u, v), self.side_labels(v, u)):
                if all(l > 0 for l in side) or all(l < 0 for l in side):
                    return Violation(1, "split with one color on a side", side)
        for u, v, length in self.internal_edges():
            if length <= 0:
                return Violation(2, "nonpositive internal edge length", (u, v))
        if not self.has_involution():
            return Violation(3, "no length-preserving color-swapping symmetry")
        fixed = self.fixed_vertices()
        if not fixed:
            return Violation(4, "involution has no fixed vertex")
        fixed_deg = {v: sum(1 for w in self.adj[v] if w in fixed) for v in fixed}
        if any(d > 2 for d in fixed_deg.values()):
            worst = max(fixed_deg, key=lambda v: fixed_deg[v])
            return Violation(4, "fixed set is not a path", worst)
        start = next(iter(fixed))
        seen = {start}
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in self.adj[a]:
                if b in fixed and b not in seen:
                    seen.add(b)
                    queue.append(b)
        if seen != fixed:
            return Violation(4, "fixed set is disconnected", fixed - seen)
        return None

    def require_valid(self) -> "SymbicTree":
        violation = self.validate()
        if violation is not None:
            raise InvalidMoveError(f"not a symbic tree: {violation}", violation)
        return self

    # -- trunk, branches, shape predicates -----------------------------------

    def trunk(self) -> tuple[int, ...]:
        """The fixed path, ordered; starts at the canonical endpoint."""
        if "trunk" in self._cache:
            return self._cache["trunk"]
        fixed = self.fixed_vertices()
        if len(fixed) == 1:
            path = tuple(fixed)
        else:
            deg = {v: sum(1 for w in self.adj[v] if w in fixed) for v in fixed}
            ends = [v for v in fixed if deg[v] <= 1]
            if len(ends) != 2:
                raise MalformedTreeError("fixed set is not a path")
            start = self._trunk_anchor(ends, fixed)
            path = [start]
            prev = None
            while True:
                nxt = [w for w in self.adj[path[-1]] if w in fixed and w != prev]
                if not nxt:
                    break
                prev = path[-1]
                path.append(nxt[0])
            path = tuple(path)
        self._cache["trunk"] = path
        return path

    def endpoint_min_row(self, v: int, fixed: Optional[set[int]] = None) -> int:
        """Smallest row index carried by the branches at a trunk vertex."""
        if fixed is None:
            fixed = self.fixed_vertices()
        best = self.n + 1
        for w in self.adj[v]:
            if w in fixed:
                continue
            rows = [l for l in self.side_labels(v, w) if l > 0]
            if rows:
                best = min(best, min(rows))
        return best

    def _trunk_anchor(self, ends: list[int], fixed: set[int]) -> int:
        # the anchor endpoint is the one whose branches carry the *larger*
        # smallest row index; anchoring at the smaller one breaks the
        # shelling (the two trunk-extension cells of a smaller tree share
        # the {n, n'} split, and only this orientation yields an earlier
        # one-swap neighbor for the later of them)
        return max(ends, key=lambda v: (self.endpoint_min_row(v, fixed), -v))

    def canonical_endpoint(self) -> int:
        """The anchor trunk endpoint (single trunk vertex when the trunk is
        a point): reference point for edge descriptors and the shelling
        order's least element."""
        return self.trunk()[0]

    def branches(self) -> tuple[Branch, ...]:
        if "branches" in self._cache:
            return self._cache["branches"]
        trunk = set(self.trunk())
        out = []
        for t in sorted(trunk):
            for nb in sorted(self.adj[t]):
                if nb in trunk:
                    continue
                out.append(Branch(t, nb, self.side_labels(t, nb)))
        result = tuple(out)
        self._cache["branches"] = result
        return result

    def branch_vertices(self, branch: Branch) -> set[int]:
        seen = {branch.trunk_vertex, branch.root}
        queue = deque([branch.root])
        while queue:
            a = queue.popleft()
            for b in self.adj[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        seen.discard(branch.trunk_vertex)
        return seen

    def cherries(self) -> frozenset:
        """Pairs (i, j) such that row leaf i and column leaf j' share an
        attachment vertex."""
        at: dict[int, list[Label]] = {}
        for label in self.leaf_vertex:
            at.setdefault(self.pos(label), []).append(label)
        found = set()
        for labels in at.values():
            rows = [l for l in labels if l > 0]
            cols = [-l for l in labels if l < 0]
            found.update((i, j) for i in rows for j in cols)
        return frozenset(found)

    def is_regular(self) -> bool:
        """n-1 split orbits, positive lengths, trivalent branches, and every
        trunk vertex carrying exactly one color-swapped branch pair."""
        if self.validate() is not None:
            return False
        if len(self.split_orbits()) != self.n - 1:
            return False
        sigma = self.involution()
        trunk = set(self.trunk())
        by_vertex: dict[int, list[Branch]] = {}
        for br in self.branches():
            by_vertex.setdefault(br.trunk_vertex, []).append(br)
        for t in trunk:
            brs = by_vertex.get(t, [])
            if len(brs) != 2 or sigma[brs[0].root] != brs[1].root:
                return False
        for v in self.internal_vertices():
            if v not in trunk and len(self.adj[v]) != 3:
                return False
        return True

    def is_caterpillar(self) -> bool:
        """Single-vertex trunk and internal vertices forming a path."""
        if len(self.trunk()) != 1:
            return False
        leaves = self.leaf_vertices()
        for v in self.internal_vertices():
            if sum(1 for w in self.adj[v] if w not in leaves) > 2:
                return False
        return True

    def has_caterpillar_branches(self) -> bool:
        """Every branch contains at most one cherry."""
        cherry_vertices = {self.pos(i) for i, _ in self.cherries()}
        for br in self.branches():
            inside = self.branch_vertices(br)
            if sum(1 for v in cherry_vertices if v in inside) > 1:
                return False
        return True

    # -- brittle twigs -------------------------------------------------------

    def brittle_twig(self) -> Optional[tuple[int, ...]]:
        """The uni-colored caterpillar (i_1, ..., i_k), k >= 2, exposed by
        removing the column leaf n'; None when deleting n, n' stays symbic.
        i_1 is the cherry partner of n'; the sequence runs along the twig."""
        nprime = -self.n
        best: Optional[frozenset] = None
        for u, v, _ in self.internal_edges():
            side = self.side_labels(u, v)
            if nprime not in side:
                side = self.side_labels(v, u)
            exposed = side - {nprime}
            if len(exposed) >= 2 and all(l > 0 for l in exposed):
                if best is None or len(exposed) > len(best):
                    best = exposed
        if best is None:
            return None
        anchor = self.pos(nprime)
        return tuple(
            sorted(best, key=lambda l: self.distance(anchor, self.pos(l)))
        )

    # -- surgery --------------------------------------------------------------

    def _graph_copy(self) -> tuple[dict, dict]:
        return (
            {u: dict(nbrs) for u, nbrs in self.adj.items()},
            dict(self.leaf_vertex),
        )

    def relabel(self, index_map: dict[int, int]) -> "SymbicTree":
        """Rename leaf indices; ``index_map`` must send the surviving indices
        bijectively onto 1..m."""
        new_leaves = {}
        for label, lv in self.leaf_vertex.items():
            idx = index_map[abs(label)]
            new_leaves[idx if label > 0 else -idx] = lv
        adj, _ = self._graph_copy()
        return SymbicTree(len(new_leaves) // 2, adj, new_leaves)

    def delete_leaves(self, labels: Iterable[Label]) -> "SymbicTree":
        """Drop leaf labels (both colors of each index) and renumber the
        survivors to 1..m preserving order."""
        doomed = set(labels)
        if {abs(l) for l in doomed} != {l for l in doomed if l > 0}:
            raise MalformedTreeError("deletion must remove index pairs i, i'")
        adj, leaf_vertex = self._graph_copy()
        for label in doomed:
            lv = leaf_vertex.pop(label)
            (att,) = adj[lv]
            del adj[att][lv]
            del adj[lv]
        remaining = sorted({abs(l) for l in leaf_vertex})
        index_map = {old: new for new, old in enumerate(remaining, start=1)}
        leaf_vertex = {
            (index_map[abs(l)] if l > 0 else -index_map[abs(l)]): v
            for l, v in leaf_vertex.items()
        }
        return SymbicTree(len(remaining), adj, leaf_vertex)

    def delete_top_pair(self) -> tuple["SymbicTree", tuple]:
        """Delete leaves n and n', returning the smaller tree and the place
        n was attached at, as an element of the smaller tree's edge order:
        ("near",), ("far",) or ("edge", edge descriptor)."""
        k = self.n
        if k < 2:
            raise MalformedTreeError("nothing to delete below n=2")
        x, xp = self.pos(k), self.pos(-k)
        leaves = self.leaf_vertices()
        place: tuple
        endpoint_branch_labels: Optional[frozenset] = None
        if x == xp:
            others = [w for w in self.adj[x] if w not in leaves]
            if len(others) == 1:
                u = others[0]
                trunk = set(self.trunk())
                sides = [
                    self.side_labels(u, w)
                    for w in self.adj[u]
                    if w not in trunk
                ]
                endpoint_branch_labels = frozenset().union(*sides) if sides else frozenset()
                place = ("endpoint",)
            elif len(others) == 2:
                u1, u2 = others
                sides = (self.side_labels(x, u1), self.side_labels(x, u2))
                place = ("trunk-edge", sides)
            else:
                raise MalformedTreeError("unexpected valence at the (n, n') vertex")
        else:
            others = [w for w in self.adj[x] if w != self.leaf_vertex[k]]
            if len(others) != 2:
                raise MalformedTreeError("leaf n must sit at a trivalent vertex")
            leaf_nbrs = [w for w in others if w in leaves]
            if leaf_nbrs:
                partner = self.label_of_vertex()[leaf_nbrs[0]]
                if partner > 0:
                    raise MalformedTreeError("same-color cherry at leaf n")
                place = ("edge", frozenset((partner,)))
            else:
                # the side away from n' is the side away from the trunk, hence
                # away from the canonical endpoint of the smaller tree
                y1, y2 = others
                a = self.side_labels(x, y1)
                if -k in a:
                    a = self.side_labels(x, y2)
                place = ("edge", a)
        smaller = self.delete_leaves({k, -k})
        if place[0] == "trunk-edge":
            v0 = smaller.canonical_endpoint()
            anchor_labels = frozenset().union(
                *(br.labels for br in smaller.branches() if br.trunk_vertex == v0)
            )
            a, b = place[1]
            place = ("edge", a if not anchor_labels & a else b)
        if place == ("endpoint",):
            trunk = smaller.trunk()
            if len(trunk) == 1:
                place = ("near",)
            else:
                near = smaller.canonical_endpoint()
                near_labels = frozenset().union(
                    *(br.labels for br in smaller.branches() if br.trunk_vertex == near)
                )
                assert endpoint_branch_labels is not None
                place = ("near",) if endpoint_branch_labels <= near_labels else ("far",)
        return smaller, place

    def attach_top_pair(self, place: tuple, length: Fraction | int = 1) -> "SymbicTree":
        """Attach a new leaf pair (n+1, (n+1)') at a place descriptor from
        :meth:`delete_top_pair` / the shelling edge order.  Raises
        :class:`InvalidMoveError` when the result is not symbic."""
        k = self.n + 1
        length = parse_rational(length)
        if length <= 0:
            raise InvalidMoveError("attachment edge length must be positive")
        adj, leaf_vertex = self._graph_copy()
        counter = max(adj)

        def new_vertex() -> int:
            nonlocal counter
            counter += 1
            return counter

        def hang(x: int, label: Label) -> None:
            lv = new_vertex()
            adj[lv] = {x: None}
            adj[x][lv] = None
            leaf_vertex[label] = lv

        leaves = self.leaf_vertices()

        def subdivide(a: int, b: int) -> int:
            old = adj[a].pop(b)
            del adj[b][a]
            x = new_vertex()
            if old is None:
                leafv, att = (a, b) if a in leaves else (b, a)
                adj[x] = {leafv: None, att: length}
                adj[leafv][x] = None
                adj[att][x] = length
            else:
                half = old / 2
                adj[x] = {a: half, b: half}
                adj[a][x] = half
                adj[b][x] = half
            return x

        if place in (("near",), ("far",)):
            trunk = self.trunk()
            if place == ("far",) and len(trunk) == 1:
                raise InvalidMoveError("one-vertex trunk has no far endpoint")
            v = trunk[0] if place == ("near",) else trunk[-1]
            x = new_vertex()
            adj[x] = {v: length}
            adj[v][x] = length
            hang(x, k)
            hang(x, -k)
        elif len(place) == 2 and place[0] == "edge":
            descriptor = place[1]
            target = None
            for u, v, _ in self.edges():
                if self.edge_descriptor(u, v) == descriptor:
                    target = (u, v)
                    break
            if target is None:
                raise InvalidMoveError(f"no edge with descriptor {set(descriptor)}")
            sigma = self.involution()
            u, v = target
            mirror = (sigma[u], sigma[v])
            if frozenset(mirror) == frozenset(target):
                x = subdivide(u, v)
                hang(x, k)
                hang(x, -k)
            else:
                x = subdivide(u, v)
                hang(x, k)
                x2 = subdivide(*mirror)
                hang(x2, -k)
        else:
            raise InvalidMoveError(f"unknown place {place!r}")
        tree = SymbicTree(k, adj, leaf_vertex)
        violation = tree.validate()
        if violation is not None:
            raise InvalidMoveError(f"attachment breaks axiom: {violation}", violation)
        return tree

    def contract_orbit(self, orbit: Orbit) -> "SymbicTree":
        """Contract the edge(s) of one split orbit; the singular type is
        represented as the honest smaller-orbit tree."""
        edges = self.edges_of_orbit(orbit)
        if not edges:
            raise InvalidMoveError("orbit not present in this tree")
        adj, leaf_vertex = self._graph_copy()
        merged: dict[int, int] = {}

        def find(w: int) -> int:
            while w in merged:
                w = merged[w]
            return w

        for edge in edges:
            u, v = (find(w) for w in tuple(edge))
            if u == v:
                continue
            for w, length in list(adj[v].items()):
                if w == u:
                    continue
                del adj[w][v]
                adj[w][u] = length
                adj[u][w] = length
            adj[u].pop(v, None)
            del adj[v]
            merged[v] = u
        return SymbicTree(self.n, adj, leaf_vertex)

    def expansions(self, orbit: Orbit) -> dict[Orbit, "SymbicTree"]:
        """All regular symbic trees reachable by contracting ``orbit`` and
        re-expanding the fat vertex it leaves behind, keyed by the newly
        created orbit.  The original tree appears under ``orbit`` itself."""
        singular = self.contract_orbit(orbit)
        sigma = singular.involution()
        leaves = singular.leaf_vertices()

        def allowed_degree(v: int) -> int:
            if sigma[v] != v:
                return 3
            trunk_edges = sum(
                1 for w in singular.adj[v] if w not in leaves and sigma[w] == w
            )
            return 2 + trunk_edges

        fat = [
            v
            for v in singular.internal_vertices()
            if len(singular.adj[v]) > allowed_degree(v)
        ]
        if not fat:
            raise InvalidMoveError("contraction produced no expandable vertex")
        f = min(fat)
        out: dict[Orbit, SymbicTree] = {}
        incident = sorted(singular.adj[f])
        for r in range(2, len(incident) - 1):
            for group in itertools.combinations(incident, r):
                candidate = _expand_vertex(singular, f, group)
                if candidate is None or candidate.validate() is not None:
                    continue
                if not candidate.is_regular():
                    continue
                new_orbits = candidate.split_orbits() - singular.split_orbits()
                if len(new_orbits) != 1:
                    continue
                out[next(iter(new_orbits))] = candidate
        return out

    def transition(self, contract: Orbit, expand: Orbit) -> "SymbicTree":
        """Contract one orbit and expand another: the basic move between
        regular symbic trees.  ``expand`` names the orbit to create."""
        if expand == contract:
            raise InvalidMoveError("transition must change the tree")
        options = self.expansions(contract)
        if expand not in options:
            raise InvalidMoveError("expansion choice does not yield a symbic tree")
        return options[expand]

    def with_orbit_lengths(self, lengths: dict[Orbit, object]) -> "SymbicTree":
        """Reassign internal edge lengths: every edge of an orbit gets the
        orbit's value (the midpoint normal form keeps halves symmetric by
        construction since both halves belong to the same orbit)."""
        adj, leaf_vertex = self._graph_copy()
        sigma = self.involution()
        for edge in self.splits():
            orbit = self.orbit_of_edge(*tuple(edge))
            if orbit not in lengths:
                raise InvalidMoveError("missing length for an orbit")
            value = parse_rational(lengths[orbit])
            if value <= 0:
                raise InvalidMoveError("orbit lengths must be positive")
            u, v = tuple(edge)
            adj[u][v] = value
            adj[v][u] = value
        return SymbicTree(self.n, adj, leaf_vertex, involution_hint=sigma)

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": self.vertices(),
            "edges": [
                {
                    "u": u,
                    "v": v,
                    "len": None if length is None else format_rational(length),
                }
                for u, v, length in self.edges()
            ],
            "leaves": {
                format_label(l): v
                for l, v in sorted(self.leaf_vertex.items(), key=lambda kv: label_key(kv[0]))
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SymbicTree":
        try:
            edges = data["edges"]
            leaves = data["leaves"]
        except (TypeError, KeyError) as exc:
            raise MalformedTreeError("tree JSON needs 'edges' and 'leaves'") from exc
        adj: dict[int, dict[int, Optional[Fraction]]] = {}
        for v in data.get("vertices", []):
            adj[int(v)] = {}
        for e in edges:
            u, v = int(e["u"]), int(e["v"])
            raw = e.get("len")
            length = None if raw is None else parse_rational(raw)
            adj.setdefault(u, {})[v] = length
            adj.setdefault(v, {})[u] = length
        leaf_vertex = {parse_label(key): int(v) for key, v in leaves.items()}
        indices = sorted({abs(l) for l in leaf_vertex})
        n = len(indices)
        if indices != list(range(1, n + 1)) or len(leaf_vertex) != 2 * n:
            raise MalformedTreeError("leaves must be exactly 1..n and 1'..n'")
        return cls(n, adj, leaf_vertex)

    def to_dot(self) -> str:
        """DOT export: row leaves blue, column leaves red, trunk edges bold."""
        label_of = self.label_of_vertex()
        try:
            trunk = set(self.trunk())
        except MalformedTreeError:
            trunk = set()
        lines = ["graph symbic {", "  node [shape=point];"]
        for v in self.vertices():
            if v in label_of:
                l = label_of[v]
                color = "blue" if l > 0 else "red"
                lines.append(
                    f'  v{v} [shape=plaintext, label="{format_label(l)}", fontcolor={color}];'
                )
        for u, v, length in self.edges():
            attrs = []
            if length is None:
                leaf = u if u in label_of else v
                attrs.append("color=" + ("blue" if label_of[leaf] > 0 else "red"))
            else:
                attrs.append(f'label="{format_rational(length)}"')
                if u in trunk and v in trunk:
                    attrs.append("style=bold")
                    attrs.append("penwidth=2")
            lines.append(f"  v{u} -- v{v} [{', '.join(attrs)}];")
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"SymbicTree(n={self.n})"


# -- construction internals ----------------------------------------------------


def _normalize(tree: SymbicTree, involution_hint: Optional[dict[int, int]]) -> None:
    adj, leaf_vertex = tree.adj, tree.leaf_vertex
    n = tree.n
    expected = {s * i for i in range(1, n + 1) for s in (1, -1)}
    if n < 1 or set(leaf_vertex) != expected:
        raise MalformedTreeError("leaf labels must be exactly 1..n and 1'..n'")
    leaves = set(leaf_vertex.values())
    if len(leaves) != 2 * n:
        raise MalformedTreeError("leaf vertices must be distinct")
    for lv in leaves:
        if len(adj.get(lv, {})) != 1 or next(iter(adj[lv].values())) is not None:
            raise MalformedTreeError("each leaf needs one lengthless leaf edge")
    for u, nbrs in adj.items():
        for v, length in nbrs.items():
            if adj.get(v, {}).get(u, "missing") != length:
                raise MalformedTreeError("asymmetric adjacency")
            if length is not None and length < 0:
                raise MalformedTreeError("negative edge length")
            if length is None and u not in leaves and v not in leaves:
                raise MalformedTreeError("lengthless edge between internal vertices")
    edge_count = sum(len(nbrs) for nbrs in adj.values()) // 2
    if edge_count != len(adj) - 1:
        raise MalformedTreeError("not a tree (wrong edge count)")
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    if seen != set(adj):
        raise MalformedTreeError("not a tree (disconnected)")

    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if v in leaves or v not in adj:
                continue
            nbrs = adj[v]
            zero = [w for w, L in nbrs.items() if L is not None and L == 0]
            if zero:
                w = zero[0]
                for t, L in list(adj[w].items()):
                    if t == v:
                        continue
                    del adj[t][w]
                    adj[v][t] = L
                    adj[t][v] = L
                adj[v].pop(w, None)
                del adj[w]
                changed = True
                break
            if len(nbrs) == 0:
                raise MalformedTreeError("isolated internal vertex")
            if len(nbrs) == 1:
                (u,) = nbrs
                del adj[u][v]
                del adj[v]
                changed = True
                break
            if len(nbrs) == 2:
                (a, la), (b, lb) = nbrs.items()
                if la is not None and lb is not None:
                    del adj[a][v]
                    del adj[b][v]
                    del adj[v]
                    adj[a][b] = la + lb
                    adj[b][a] = la + lb
                    changed = True
                    break
                if (la is None) != (lb is None):
                    # a stub under a leaf edge carries no information: the
                    # leaf re-attaches at the inner endpoint
                    leaf_side, inner = (a, b) if la is None else (b, a)
                    del adj[inner][v]
                    del adj[v]
                    adj[leaf_side] = {inner: None}
                    adj[inner][leaf_side] = None
                    changed = True
                    break
    if not any(v not in leaves for v in adj):
        raise MalformedTreeError("tree has no internal vertex")

    sigma: Optional[dict[int, int]]
    if involution_hint is not None and _check_involution(tree, involution_hint):
        sigma = {v: involution_hint[v] for v in adj}
    else:
        sigma = _find_involution(tree)
    if sigma is not None:
        flipped = [
            (u, v)
            for u in adj
            for v in adj[u]
            if u < v and sigma.get(u) == v
        ]
        if flipped:
            ((u, v),) = flipped  # an involution of a tree has a single center
            length = adj[u].pop(v)
            del adj[v][u]
            m = max(adj) + 1
            half = length / 2
            adj[m] = {u: half, v: half}
            adj[u][m] = half
            adj[v][m] = half
            sigma[m] = m
        tree._cache["sigma"] = sigma


def _check_involution(tree: SymbicTree, sigma: dict[int, int]) -> bool:
    adj = tree.adj
    if not set(adj) <= set(sigma):
        return False
    for label, lv in tree.leaf_vertex.items():
        if sigma.get(lv) != tree.leaf_vertex.get(-label):
            return False
    for u in adj:
        if sigma[u] not in adj or sigma.get(sigma[u]) != u:
            return False
        for v, length in adj[u].items():
            if adj.get(sigma[u], {}).get(sigma[v], "missing") != length:
                return False
    return True


def _find_involution(tree: SymbicTree) -> Optional[dict[int, int]]:
    """Reconstruct the color-swapping symmetry from internal distances; the
    map is unique when it exists because distance vectors to the leaf
    attachment points separate internal vertices."""
    internals = tree.internal_vertices()
    labels = tree.labels()
    leafset = tree.leaf_vertices()
    pos = {}
    for l in labels:
        lv = tree.leaf_vertex[l]
        (att,) = tree.adj[lv]
        pos[l] = att
    dist: dict[int, dict[int, Fraction]] = {}
    for v in internals:
        d = {v: Fraction(0)}
        queue = deque([v])
        while queue:
            a = queue.popleft()
            for b, length in tree.adj[a].items():
                if b in leafset or b in d:
                    continue
                d[b] = d[a] + length
                queue.append(b)
        dist[v] = d
    index: dict[tuple, int] = {}
    for v in internals:
        key = tuple(dist[v][pos[l]] for l in labels)
        if key in index:
            return None
        index[key] = v
    sigma: dict[int, int] = {}
    for v in internals:
        target = tuple(dist[v][pos[-l]] for l in labels)
        w = index.get(target)
        if w is None:
            return None
        sigma[v] = w
    for label, lv in tree.leaf_vertex.items():
        sigma[lv] = tree.leaf_vertex[-label]
    if not _check_involution(tree, sigma):
        return None
    return sigma


def _expand_vertex(
    tree: SymbicTree, f: int, group: tuple[int, ...]
) -> Optional[SymbicTree]:
    """Pull the ``group`` neighbors of f onto a new vertex (mirrored through
    the involution); returns None for structurally impossible choices."""
    sigma = tree.involution()
    adj, leaf_vertex = tree._graph_copy()
    group_set = set(group)
    mirror_set = {sigma[w] for w in group}
    if sigma[f] == f:
        if group_set == mirror_set:
            moves = [(f, group_set)]
        elif not group_set & mirror_set:
            moves = [(f, group_set), (f, mirror_set)]
        else:
            return None
    else:
        if sigma[f] in group_set:
            return None
        moves = [(f, group_set), (sigma[f], mirror_set)]
    counter = max(adj)
    for origin, members in moves:
        if not members <= set(adj[origin]):
            return None
        if len(adj[origin]) - len(members) < 1:
            return None
        counter += 1
        g = counter
        adj[g] = {}
        for w in members:
            length = adj[origin].pop(w)
            del adj[w][origin]
            adj[g][w] = length
            adj[w][g] = length
        adj[origin][g] = Fraction(1)
        adj[g][origin] = Fraction(1)
    try:
        return SymbicTree(tree.n, adj, leaf_vertex)
    except MalformedTreeError:
        return None


# -- basic constructions --------------------------------------------------------


def tree_of_single_pair() -> SymbicTree:
    """The unique 1+1 symbic tree: leaves 1, 1' joined through the fixed
    midpoint vertex."""
    adj: dict[int, dict[int, Optional[Fraction]]] = {
        0: {1: None, 2: None},
        1: {0: None},
        2: {0: None},
    }
    return SymbicTree(1, adj, {1: 1, -1: 2})


def star_tree(n: int) -> SymbicTree:
    """All 2n leaves at one point: the shape of a rank-one matrix."""
    adj: dict[int, dict[int, Optional[Fraction]]] = {0: {}}
    leaf_vertex = {}
    nxt = 1
    for i in range(1, n + 1):
        for sign in (1, -1):
            adj[nxt] = {0: None}
            adj[0][nxt] = None
            leaf_vertex[sign * i] = nxt
            nxt += 1
    return SymbicTree(n, adj, leaf_vertex)
