"""Counting and enumerating regular symbic trees.

Three independent routes to the same numbers: the convolution recurrence for
one-vertex-trunk trees, exact truncated power series for the generating
functions, and constructive enumeration of the trees themselves.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .trees import Orbit, SymbicTree

SERIES_ORDER_CAP = 30
ENUM_CAP = 7
FACE_CAP = 5


class SizeCapError(ValueError):
    """Requested n exceeds the documented desk-scale cap."""


# -- closed counts -------------------------------------------------------------


def count_one_vertex_trunk(n: int) -> int:
    """Number of n+n regular symbic trees whose trunk is a single vertex:
    a_1 = a_2 = 1, a_n = sum_k C(n, k) a_k a_{n-k} for n >= 3 (a_0 = 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a = [0, 1, 1]
    for m in range(3, n + 1):
        a.append(sum(math.comb(m, k) * a[k] * a[m - k] for k in range(1, m)))
    return a[n]


def count_full_trunk(n: int) -> int:
    """Number of n+n regular symbic trees with an n-vertex trunk: a
    permutation of n read up to reversal, so n!/2 for n >= 2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return 1 if n < 2 else math.factorial(n) // 2


# -- exact truncated power series -------------------------------------------------


class RationalSeries:
    """Truncated power series with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[object], order: Optional[int] = None):
        values = [Fraction(c) for c in coeffs]
        if order is not None:
            values = values[: order + 1] + [Fraction(0)] * (order + 1 - len(values))
        if not values:
            raise ValueError("series needs at least the constant term")
        self.coeffs = tuple(values)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value: object, order: int) -> "RationalSeries":
        return cls([Fraction(value)], order)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k]

    def egf_count(self, k: int) -> Fraction:
        """k! [x^k] of the series; an integer for counting series."""
        return self.coeffs[k] * math.factorial(k)

    def _match(self, other: "RationalSeries") -> int:
        if self.order != other.order:
            raise ValueError("series order mismatch")
        return self.order

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        self._match(other)
        return RationalSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        self._match(other)
        return RationalSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, factor: object) -> "RationalSeries":
        f = Fraction(factor)
        return RationalSeries([f * a for a in self.coeffs])

    def shift_const(self, value: object) -> "RationalSeries":
        out = list(self.coeffs)
        out[0] += Fraction(value)
        return RationalSeries(out)

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        order = self._match(other)
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return RationalSeries(out)

    def reciprocal(self) -> "RationalSeries":
        if self.coeffs[0] == 0:
            raise ValueError("reciprocal needs a nonzero constant term")
        inv = [Fraction(1) / self.coeffs[0]]
        for k in range(1, self.order + 1):
            acc = sum(self.coeffs[i] * inv[k - i] for i in range(1, k + 1))
            inv.append(-acc / self.coeffs[0])
        return RationalSeries(inv)

    def sqrt(self) -> "RationalSeries":
        """Square root for constant term 1: solve y*y = s triangularly."""
        if self.coeffs[0] != 1:
            raise ValueError("sqrt needs constant term 1")
        y = [Fraction(1)]
        for k in range(1, self.order + 1):
            acc = sum(y[i] * y[k - i] for i in range(1, k))
            y.append((self.coeffs[k] - acc) / 2)
        return RationalSeries(y)

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        """self(inner(x)) by Horner's rule; inner constant term must be 0."""
        self._match(inner)
        if inner.coeffs[0] != 0:
            raise ValueError("composition needs inner constant term 0")
        result = RationalSeries.constant(self.coeffs[self.order], self.order)
        for k in range(self.order - 1, -1, -1):
            result = (result * inner).shift_const(self.coeffs[k])
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalSeries) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"RationalSeries({[str(c) for c in self.coeffs]})"


def _discriminant(order: int) -> RationalSeries:
    return RationalSeries([1, -4, 2], order)


def series_one_vertex_trunk(order: int) -> RationalSeries:
    """E1(x) = (1 - sqrt(1 - 4x + 2x^2)) / 2."""
    if order > SERIES_ORDER_CAP:
        raise SizeCapError(f"series order {order} > cap {SERIES_ORDER_CAP}")
    root = _discriminant(order).sqrt()
    return (RationalSeries([1], order) - root).scale(Fraction(1, 2))


def series_full_trunk(order: int) -> RationalSeries:
    """E2(x) = (1 + x + 1/(1 - x)) / 2."""
    if order > SERIES_ORDER_CAP:
        raise SizeCapError(f"series order {order} > cap {SERIES_ORDER_CAP}")
    geom = RationalSeries([1, -1], order).reciprocal()
    return (RationalSeries([1, 1], order) + geom).scale(Fraction(1, 2))


def series_regular(order: int) -> RationalSeries:
    """E(x) = 3/4 - sqrt(1-4x+2x^2)/4 + 1/(1 + sqrt(1-4x+2x^2))."""
    if order > SERIES_ORDER_CAP:
        raise SizeCapError(f"series order {order} > cap {SERIES_ORDER_CAP}")
    root = _discriminant(order).sqrt()
    return (
        RationalSeries.constant(Fraction(3, 4), order)
        - root.scale(Fraction(1, 4))
        + root.shift_const(1).reciprocal()
    )


def egf_coefficients(which: str, order: int) -> RationalSeries:
    series = {
        "E1": series_one_vertex_trunk,
        "E2": series_full_trunk,
        "E": series_regular,
    }
    if which not in series:
        raise ValueError("which must be one of E1, E2, E")
    return series[which](order)


def count_regular(n: int, method: str = "recurrence") -> int:
    """Total number of n+n regular symbic trees by one of three routes."""
    if method == "egf":
        value = series_regular(max(n, 1)).egf_count(n)
        assert value.denominator == 1
        return int(value)
    if method == "constructive":
        return 1 if n == 0 else len(enumerate_regular(n))
    if method != "recurrence":
        raise ValueError("method must be recurrence, egf, or constructive")
    if n == 0:
        return 1
    # set partitions into trunk blocks weighted by one-vertex-trunk counts,
    # then arranged along the trunk up to reversal
    a = [count_one_vertex_trunk(k) for k in range(n + 1)]
    parts = [[0] * (n + 1) for _ in range(n + 1)]  # parts[m][j]: j items, m blocks
    parts[0][0] = 1
    for m in range(1, n + 1):
        for j in range(1, n + 1):
            parts[m][j] = sum(
                math.comb(j - 1, k - 1) * a[k] * parts[m - 1][j - k]
                for k in range(1, j + 1)
            )
    def weight(m: int) -> int:
        return 1 if m <= 1 else math.factorial(m) // 2

    return sum(weight(m) * parts[m][n] for m in range(1, n + 1))


# -- constructive enumeration ------------------------------------------------------


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        for i in range(len(partial)):
            yield partial[:i] + [[first] + partial[i]] + partial[i + 1 :]
        yield [[first]] + partial


def colored_branch_shapes(labels: tuple[int, ...]) -> list:
    """All one-vertex-trunk branch structures on the given row indices, up
    to the color swap (normalized so the smallest index is row-colored).

    A structure is a signed index (single leaf) or a pair ("N", left, right);
    leaves sharing a parent must carry opposite colors.
    """

    def rec(subset: tuple[int, ...]) -> list:
        if len(subset) == 1:
            return [subset[0], -subset[0]]
        head, tail = subset[0], subset[1:]
        out = []
        for bits in range(2 ** len(tail) - 1):
            left = (head,) + tuple(t for i, t in enumerate(tail) if bits >> i & 1)
            right = tuple(t for i, t in enumerate(tail) if not bits >> i & 1)
            for lt in rec(left):
                for rt in rec(right):
                    if isinstance(lt, int) and isinstance(rt, int) and (lt > 0) == (rt > 0):
                        continue
                    out.append(("N", lt, rt))
        return out

    def color_of(structure, index: int) -> int:
        if isinstance(structure, int):
            return structure if abs(structure) == index else 0
        return color_of(structure[1], index) or color_of(structure[2], index)

    return [s for s in rec(labels) if color_of(s, labels[0]) > 0]


class TreeCatalog:
    """All regular n+n symbic trees, keyed by canonical combinatorial type."""

    __slots__ = ("n", "trees")

    def __init__(self, n: int, trees: dict[frozenset, SymbicTree]):
        self.n = n
        self.trees = trees

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[SymbicTree]:
        return iter(self.trees.values())

    def items(self):
        return self.trees.items()


def _assemble_tree(
    n: int,
    blocks: Sequence[tuple[int, ...]],
    structures: Sequence[object],
    rng: Optional[random.Random] = None,
) -> SymbicTree:
    """One trunk vertex per block in order, a mirrored branch pair at each.
    All lengths 1 unless an rng supplies random positive rationals; mirror
    copies share lengths so the metric stays symmetric."""

    def rand_length() -> Fraction:
        if rng is None:
            return Fraction(1)
        return Fraction(rng.randint(1, 12), rng.randint(1, 12))

    adj: dict[int, dict[int, Optional[Fraction]]] = {}
    leaf_vertex: dict[int, int] = {}
    counter = [-1]
    length_memo: dict[int, Fraction] = {}

    def vertex() -> int:
        counter[0] += 1
        adj[counter[0]] = {}
        return counter[0]

    def edge(u: int, v: int, length: Optional[Fraction]) -> None:
        adj[u][v] = length
        adj[v][u] = length

    def edge_length(structure) -> Fraction:
        key = id(structure)
        if key not in length_memo:
            length_memo[key] = rand_length()
        return length_memo[key]

    def grow(structure, mirrored: bool) -> int:
        if isinstance(structure, int):
            label = -structure if mirrored else structure
            lv = vertex()
            leaf_vertex[label] = lv
            return lv
        _, left, right = structure
        root = vertex()
        for child in (left, right):
            sub = grow(child, mirrored)
            edge(root, sub, None if isinstance(child, int) else edge_length(child))
        return root

    trunk_vertices = [vertex() for _ in blocks]
    for t1, t2 in zip(trunk_vertices, trunk_vertices[1:]):
        edge(t1, t2, rand_length())
    for t, structure in zip(trunk_vertices, structures):
        for mirrored in (False, True):
            root = grow(structure, mirrored)
            edge(t, root, None if isinstance(structure, int) else edge_length(structure))
    return SymbicTree(n, adj, leaf_vertex)


def enumerate_regular(n: int) -> TreeCatalog:
    """Constructive catalog of all regular n+n symbic trees: set partitions
    into trunk blocks (ordered up to reversal), each block realized by every
    one-vertex-trunk branch structure."""
    if n < 1:
        raise ValueError("n must be >= 1 (n=0 counts the empty tree)")
    if n > ENUM_CAP:
        raise SizeCapError(f"n={n} exceeds enumeration cap {ENUM_CAP}")
    shapes_memo: dict[tuple[int, ...], list] = {}

    def shapes(block: tuple[int, ...]) -> list:
        if block not in shapes_memo:
            shapes_memo[block] = colored_branch_shapes(block)
        return shapes_memo[block]

    trees: dict[frozenset, SymbicTree] = {}
    for partition in set_partitions(tuple(range(1, n + 1))):
        blocks = [tuple(sorted(b)) for b in partition]
        if len(blocks) == 1:
            orders = [tuple(blocks)]
        else:
            orders = [
                seq
                for seq in itertools.permutations(blocks)
                if seq[0][0] < seq[-1][0]
            ]
        for seq in orders:
            for combo in itertools.product(*(shapes(b) for b in seq)):
                tree = _assemble_tree(n, seq, combo)
                key = tree.canonical_key()
                if key in trees:
                    raise AssertionError("duplicate combinatorial type generated")
                trees[key] = tree
    return TreeCatalog(n, trees)


def random_regular_tree(n: int, rng: random.Random) -> SymbicTree:
    """A random regular n+n symbic tree with random positive rational
    lengths (every shape reachable; uniformity not promised)."""
    items = list(range(1, n + 1))
    blocks: list[list[int]] = []
    for item in items:
        if blocks and rng.random() < 0.6:
            rng.choice(blocks).append(item)
        else:
            blocks.append([item])
    rng.shuffle(blocks)
    seq = [tuple(sorted(b)) for b in blocks]

    def random_structure(subset: tuple[int, ...]):
        if len(subset) == 1:
            return subset[0] if rng.random() < 0.5 else -subset[0]
        head, *tail = subset
        chosen = [t for t in tail if rng.random() < 0.5]
        left = tuple([head] + chosen)
        right = tuple(t for t in tail if t not in chosen)
        if not right:
            right = (left[-1],)
            left = left[:-1]
        lt = random_structure(left)
        rt = random_structure(right)
        if isinstance(lt, int) and isinstance(rt, int) and (lt > 0) == (rt > 0):
            rt = -rt
        return ("N", lt, rt)

    def normalize(structure, smallest: int):
        def color(s):
            if isinstance(s, int):
                return s if abs(s) == smallest else 0
            return color(s[1]) or color(s[2])

        if color(structure) < 0:
            def flip(s):
                if isinstance(s, int):
                    return -s
                return ("N", flip(s[1]), flip(s[2]))

            return flip(structure)
        return structure

    combo = [normalize(random_structure(b), b[0]) for b in seq]
    return _assemble_tree(n, seq, combo, rng=rng)


# -- faces of the simplicial complex -----------------------------------------------


def face_catalog(n: int) -> dict[frozenset, SymbicTree]:
    """Every face (nonempty orbit subset of a maximal cell) of the complex
    of n+n symbic trees, with a representative contracted tree.  The empty
    face is the lineality class and is excluded."""
    if n > FACE_CAP:
        raise SizeCapError(f"n={n} exceeds face enumeration cap {FACE_CAP}")
    faces: dict[frozenset, SymbicTree] = {}
    for tree in enumerate_regular(n):
        orbits = sorted(tree.split_orbits(), key=orbit_sort_key)
        for r in range(1, len(orbits) + 1):
            for keep in itertools.combinations(orbits, r):
                key = frozenset(keep)
                if key in faces:
                    continue
                face = tree
                for orbit in orbits:
                    if orbit not in key:
                        face = face.contract_orbit(orbit)
                faces[key] = face
    return faces


def enumerate_faces(n: int) -> dict[int, set[frozenset]]:
    """Map dimension (number of surviving orbits) -> set of face keys."""
    by_dim: dict[int, set[frozenset]] = {}
    for key in face_catalog(n):
        by_dim.setdefault(len(key), set()).add(key)
    return by_dim


def orbit_sort_key(orbit: Orbit) -> tuple:
    return tuple(
        sorted(tuple(sorted(split, key=lambda l: (abs(l), l < 0))) for split in orbit)
    )
