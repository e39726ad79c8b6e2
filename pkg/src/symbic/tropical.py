"""Exact min-plus linear algebra: tropical determinants, minors and rank tests.

Everything runs over ``fractions.Fraction``.  The "minimum attained twice"
predicates that define tropical rank are not robust under floating point,
so no float ever enters these computations.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

# 9! = 362880 permutations per minor; enough for desk-scale matrices.
MAX_MINOR_SIZE = 9

Monomial = tuple[tuple[int, int], ...]
Permutation = tuple[int, ...]


class TropicalError(ValueError):
    """Bad input to a tropical-arithmetic operation."""


class MinorSizeError(TropicalError):
    """Minor exceeds the permutation-enumeration cap."""


def parse_rational(cell: object) -> Fraction:
    """Accept Fraction, int, or a string like ``3`` / ``-5/7``."""
    if isinstance(cell, Fraction):
        return cell
    if isinstance(cell, int):
        return Fraction(cell)
    if isinstance(cell, str):
        try:
            return Fraction(cell.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise TropicalError(f"cannot parse rational {cell!r}") from exc
    raise TropicalError(f"cannot parse rational from {type(cell).__name__}")


def format_rational(q: Fraction) -> str:
    return str(q)


class TropMatrix:
    """A square matrix with exact rational entries, read min-plus-wise.

    Indices are 1-based throughout, matching the leaf labels of the trees
    this package pairs matrices with.
    """

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable[object]]):
        grid = tuple(tuple(parse_rational(x) for x in row) for row in rows)
        if not grid or any(len(row) != len(grid) for row in grid):
            raise TropicalError("matrix must be square and nonempty")
        self.n = len(grid)
        self.rows = grid

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i - 1][j - 1]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i - 1]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j - 1] for row in self.rows)

    def is_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def require_symmetric(self) -> "TropMatrix":
        if not self.is_symmetric():
            raise TropicalError("symmetric matrix required")
        return self

    def transpose(self) -> "TropMatrix":
        return TropMatrix(zip(*self.rows))

    def add(self, other: "TropMatrix") -> "TropMatrix":
        """Entrywise (classical) sum; used for lineality shifts."""
        if other.n != self.n:
            raise TropicalError("size mismatch")
        return TropMatrix(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        )

    def sub(self, other: "TropMatrix") -> "TropMatrix":
        if other.n != self.n:
            raise TropicalError("size mismatch")
        return TropMatrix(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TropMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.rows)
        return f"TropMatrix[{body}]"

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "entries": [[format_rational(x) for x in row] for row in self.rows],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TropMatrix":
        try:
            entries = data["entries"]
        except (TypeError, KeyError) as exc:
            raise TropicalError("matrix JSON needs an 'entries' field") from exc
        mat = cls(entries)
        if "n" in data and data["n"] != mat.n:
            raise TropicalError("declared n does not match entry grid")
        return mat


def rank_one_matrix(x: Sequence[object]) -> TropMatrix:
    """X (tropical-times) X^T: the matrix with entries x_i + x_j."""
    xs = [parse_rational(v) for v in x]
    return TropMatrix(tuple(a + b for b in xs) for a in xs)


class Minor:
    """Row/column index sets (1-based, strictly increasing) of a k x k minor."""

    __slots__ = ("rows", "cols")

    def __init__(self, rows: Iterable[int], cols: Iterable[int]):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        if len(self.rows) != len(self.cols) or len(self.rows) < 2:
            raise TropicalError("minor needs equal row/col counts, size >= 2")
        for idx in (self.rows, self.cols):
            if any(a >= b for a, b in zip(idx, idx[1:])) or idx[0] < 1:
                raise TropicalError("minor indices must be strictly increasing, >= 1")

    @property
    def size(self) -> int:
        return len(self.rows)

    def check_against(self, m: TropMatrix) -> None:
        if self.rows[-1] > m.n or self.cols[-1] > m.n:
            raise TropicalError("minor indices exceed matrix size")
        if self.size > MAX_MINOR_SIZE:
            raise MinorSizeError(f"minor size {self.size} > cap {MAX_MINOR_SIZE}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Minor)
            and self.rows == other.rows
            and self.cols == other.cols
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols))

    def __repr__(self) -> str:
        return f"Minor(rows={self.rows}, cols={self.cols})"


def all_minors(n: int, size: int) -> Iterator[Minor]:
    for rows in itertools.combinations(range(1, n + 1), size):
        for cols in itertools.combinations(range(1, n + 1), size):
            yield Minor(rows, cols)


def trop_det(m: TropMatrix, minor: Minor) -> tuple[Fraction, frozenset[Permutation]]:
    """Tropical determinant of a minor: the minimum over permutations of the
    entry sum, together with the full set of minimizing permutations.

    A permutation is the tuple (s(0), ..., s(k-1)) pairing minor row i with
    minor column s(i) (0-based positions into the index tuples).
    """
    minor.check_against(m)
    rows = [m.rows[i - 1] for i in minor.rows]
    cols = [j - 1 for j in minor.cols]
    best: Fraction | None = None
    argmin: list[Permutation] = []
    for perm in itertools.permutations(range(minor.size)):
        total = sum(rows[i][cols[perm[i]]] for i in range(minor.size))
        if best is None or total < best:
            best = total
            argmin = [perm]
        elif total == best:
            argmin.append(perm)
    assert best is not None
    return best, frozenset(argmin)


def monomial_of_permutation(minor: Minor, perm: Permutation) -> Monomial:
    """The monomial in the variables x_{ij} (i <= j) picked out by a
    permutation of a symmetric minor: a sorted multiset of unordered pairs."""
    if sorted(perm) != list(range(minor.size)):
        raise TropicalError("not a permutation of the minor size")
    pairs = []
    for i, p in enumerate(perm):
        r, c = minor.rows[i], minor.cols[p]
        pairs.append((min(r, c), max(r, c)))
    return tuple(sorted(pairs))


def argmin_monomials(m: TropMatrix, minor: Minor) -> frozenset[Monomial]:
    _, perms = trop_det(m, minor)
    return frozenset(monomial_of_permutation(minor, p) for p in perms)


def minor_degenerate(m: TropMatrix, minor: Minor) -> bool:
    """Ordinary degeneracy: the minimum is attained by >= 2 permutations."""
    _, perms = trop_det(m, minor)
    return len(perms) >= 2


def sym_minor_degenerate(m: TropMatrix, minor: Minor) -> bool:
    """Symmetric degeneracy: the argmin permutations cover >= 2 distinct
    monomials of the symmetric determinant."""
    m.require_symmetric()
    return len(argmin_monomials(m, minor)) >= 2


def trop_rank(m: TropMatrix) -> int:
    """Smallest r such that every (r+1) x (r+1) minor is degenerate."""
    if m.n > MAX_MINOR_SIZE:
        raise MinorSizeError(f"matrix size {m.n} > cap {MAX_MINOR_SIZE}")
    for r in range(1, m.n):
        if all(minor_degenerate(m, mi) for mi in all_minors(m.n, r + 1)):
            return r
    return m.n


def sym_trop_rank(m: TropMatrix) -> int:
    """Smallest r such that every (r+1) x (r+1) minor is degenerate as a
    polynomial in the symmetric variables x_{ij}.  Scans all minors, not
    only principal ones."""
    m.require_symmetric()
    if m.n > MAX_MINOR_SIZE:
        raise MinorSizeError(f"matrix size {m.n} > cap {MAX_MINOR_SIZE}")
    for r in range(1, m.n):
        if all(sym_minor_degenerate(m, mi) for mi in all_minors(m.n, r + 1)):
            return r
    return m.n


def hilbert_distance(x: Sequence[object], y: Sequence[object]) -> Fraction:
    """Tropical Hilbert metric: max_i(x_i - y_i) - min_i(x_i - y_i)."""
    xs = [parse_rational(v) for v in x]
    ys = [parse_rational(v) for v in y]
    if len(xs) != len(ys) or not xs:
        raise TropicalError("vectors must be nonempty and of equal length")
    diffs = [a - b for a, b in zip(xs, ys)]
    return max(diffs) - min(diffs)


def canonicalize_mod_lineality(m: TropMatrix) -> TropMatrix:
    """Subtract the unique X (tropical) X^T making the first row zero.

    Two symmetric matrices differing by a simultaneous tropical row/column
    scaling canonicalize to the same matrix; the map is idempotent.
    """
    m.require_symmetric()
    x1 = m.rows[0][0] / 2
    xs = [x1] + [m.rows[0][j] - x1 for j in range(1, m.n)]
    return m.sub(rank_one_matrix(xs))
