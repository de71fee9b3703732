"""Projective geometry over F2: points, quadratic forms, quadrics and their lines.

Vectors are stored as tuples of 0/1 coordinates.  Over F2 the only nonzero
scalar is 1, so a projective point *is* its nonzero coordinate vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

GF2Vector = tuple[int, ...]

ELLIPTIC = "elliptic"
HYPERBOLIC = "hyperbolic"
DEGENERATE = "degenerate"


def _bits_to_int(coords: Sequence[int]) -> int:
    return sum(bit << i for i, bit in enumerate(coords))


def _int_to_bits(value: int, length: int) -> GF2Vector:
    return tuple((value >> i) & 1 for i in range(length))


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^n(F2), i.e. a nonzero vector of length n + 1."""

    coords: GF2Vector

    def __post_init__(self) -> None:
        coords = tuple(int(c) for c in self.coords)
        if not coords:
            raise ValueError("a point needs at least one coordinate")
        if any(c not in (0, 1) for c in coords):
            raise ValueError(f"coordinates must be 0 or 1, got {coords}")
        if not any(coords):
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_int(cls, value: int, dim: int) -> "ProjectivePoint":
        """Little-endian: bit i of ``value`` is coordinate i."""
        return cls(_int_to_bits(value, dim + 1))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def to_int(self) -> int:
        return _bits_to_int(self.coords)

    def __add__(self, other: "ProjectivePoint") -> "ProjectivePoint":
        if len(other.coords) != len(self.coords):
            raise ValueError("points live in different ambient spaces")
        return ProjectivePoint(tuple(a ^ b for a, b in zip(self.coords, other.coords)))

    def __lt__(self, other: "ProjectivePoint") -> bool:
        return (self.dim, self.to_int()) < (other.dim, other.to_int())

    def __str__(self) -> str:
        return "(" + ":".join(map(str, self.coords)) + ")"


def enumerate_projective_points(n: int) -> list[ProjectivePoint]:
    """All 2^(n+1) - 1 points of P^n(F2), in increasing little-endian integer order."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return [ProjectivePoint.from_int(m, n) for m in range(1, 2 ** (n + 1))]


@dataclass(frozen=True)
class QuadraticForm:
    """sum c_ij x_i x_j over i <= j, on P^dim(F2).

    ``monomials`` holds the (i, j) pairs with c_ij = 1, using 0-based indices.
    """

    dim: int
    monomials: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        cleaned = set()
        for i, j in self.monomials:
            i, j = min(i, j), max(i, j)
            if i < 0 or j > self.dim:
                raise ValueError(f"monomial x{i + 1}x{j + 1} outside P^{self.dim}")
            cleaned.add((i, j))
        object.__setattr__(self, "monomials", frozenset(cleaned))

    @classmethod
    def from_monomials(cls, dim: int, monomials: Iterable[tuple[int, int]]) -> "QuadraticForm":
        """Build from 1-based index pairs, so (1, 2) is x1 x2."""
        return cls(dim, frozenset((i - 1, j - 1) for i, j in monomials))

    @property
    def nvars(self) -> int:
        return self.dim + 1

    def value(self, coords: Sequence[int]) -> int:
        if len(coords) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(coords)}")
        total = 0
        for i, j in self.monomials:
            total ^= coords[i] & coords[j]
        return total

    def polar(self, x: Sequence[int], y: Sequence[int]) -> int:
        """b(x, y) = q(x + y) + q(x) + q(y)."""
        s = tuple(a ^ b for a, b in zip(x, y))
        return self.value(s) ^ self.value(x) ^ self.value(y)

    def radical_dimension(self) -> int:
        """Dimension of the radical of the polar form (as a linear subspace)."""
        n = self.nvars
        rows = []
        for i in range(n):
            mask = 0
            for j in range(n):
                if i != j and ((min(i, j), max(i, j)) in self.monomials):
                    mask |= 1 << j
            rows.append(mask)
        return n - _gf2_rank(rows)

    def __str__(self) -> str:
        terms = []
        for i, j in sorted(self.monomials):
            terms.append(f"x{i + 1}^2" if i == j else f"x{i + 1}x{j + 1}")
        return " + ".join(terms) if terms else "0"


def _gf2_rank(rows: list[int]) -> int:
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rank


def minus_quadric(n: int) -> QuadraticForm:
    """x1^2 + x2^2 + x1x2 + x3x4 + ... + x_{2n-1}x_{2n} on P^{2n-1}."""
    if n < 1:
        raise ValueError("half-rank must be at least 1")
    monomials = [(1, 1), (2, 2), (1, 2)]
    monomials += [(2 * k - 1, 2 * k) for k in range(2, n + 1)]
    return QuadraticForm.from_monomials(2 * n - 1, monomials)


def evaluate(form: QuadraticForm, p: ProjectivePoint) -> int:
    if p.dim != form.dim:
        raise ValueError(f"point in P^{p.dim} but form on P^{form.dim}")
    return form.value(p.coords)


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: tuple[ProjectivePoint, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points")
        for p in pts:
            if p.dim != self.dim:
                raise ValueError(f"{p} is not a point of P^{self.dim}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        return p in self.points


def variety_points(form: QuadraticForm) -> PointSet:
    pts = [p for p in enumerate_projective_points(form.dim) if evaluate(form, p) == 0]
    return PointSet(form.dim, tuple(pts))


def lines_in_point_set(points: PointSet) -> list[tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint]]:
    """Every F2-line {p, q, p+q} lying inside ``points``, each reported once.

    Lines are sorted triples (by enumeration order), listed lexicographically.
    """
    members = {p.to_int() for p in points}
    found = []
    for a, b in combinations(sorted(members), 2):
        c = a ^ b
        if c > b and c in members:
            found.append(tuple(ProjectivePoint.from_int(v, points.dim) for v in (a, b, c)))
    return sorted(found, key=lambda line: tuple(p.to_int() for p in line))


def point_count_formula(n: int) -> int:
    """Number of points of the elliptic quadric in P^{2n-1}(F2)."""
    if n < 1:
        raise ValueError("half-rank must be at least 1")
    return 2 ** (n - 1) * (2**n - 1) - 1


def hyperbolic_point_count(n: int) -> int:
    return 2 ** (n - 1) * (2**n + 1) - 1


@dataclass(frozen=True)
class QuadricClass:
    tag: str
    point_count: int
    radical_dim: int = 0


def classify_quadric(form: QuadraticForm) -> QuadricClass:
    """Elliptic / hyperbolic / degenerate, decided by radical and point count."""
    if form.nvars % 2:
        raise ValueError(
            f"nondegenerate classification needs odd ambient dimension, got P^{form.dim}"
        )
    count = len(variety_points(form))
    rad = form.radical_dimension()
    if rad:
        return QuadricClass(DEGENERATE, count, rad)
    half = form.nvars // 2
    if count == point_count_formula(half):
        return QuadricClass(ELLIPTIC, count)
    if count == hyperbolic_point_count(half):
        return QuadricClass(HYPERBOLIC, count)
    # a nonsingular polar form in even rank always gives one of the two counts
    raise AssertionError(f"unexpected point count {count} for nondegenerate {form}")


def point_set_schema(points: PointSet, lines=None) -> dict:
    """{"dim", "points", "lines"} with lines as sorted index triples."""
    pts = sorted(points.points, key=ProjectivePoint.to_int)
    index = {p: i for i, p in enumerate(pts)}
    if lines is None:
        lines = lines_in_point_set(points)
    idx_lines = sorted(tuple(sorted(index[p] for p in line)) for line in lines)
    return {
        "dim": points.dim,
        "points": [list(p.coords) for p in pts],
        "lines": [list(line) for line in idx_lines],
    }
