"""Line configurations: point sets with 3-point lines meeting in at most one point."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Hashable, Iterable, Sequence

from . import search
from .gf2geom import PointSet, ProjectivePoint, lines_in_point_set

Line = tuple[int, int, int]


@dataclass(frozen=True)
class LineConfiguration:
    """Points are indices 0..N-1 carrying opaque labels; lines are index triples.

    The constructor does not enforce the configuration axiom so that broken
    inputs can still be inspected with :func:`validate`.
    """

    labels: tuple[Hashable, ...]
    lines: tuple[tuple[int, ...], ...]
    dim: int | None = None  # ambient projective dimension for algebraic configurations

    def __post_init__(self) -> None:
        n = len(self.labels)
        norm = []
        for line in self.lines:
            line = tuple(sorted(int(x) for x in line))
            if any(x < 0 or x >= n for x in line):
                raise ValueError(f"line {line} refers to a point outside 0..{n - 1}")
            norm.append(line)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "lines", tuple(sorted(norm)))

    @classmethod
    def from_lines(cls, labels: Iterable[Hashable], lines: Iterable[Iterable[Hashable]],
                   dim: int | None = None) -> "LineConfiguration":
        """Build from lines written in terms of labels."""
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        return cls(labels, tuple(tuple(index[x] for x in line) for line in lines), dim)

    @classmethod
    def from_point_set(cls, points: PointSet) -> "LineConfiguration":
        pts = sorted(points.points, key=ProjectivePoint.to_int)
        return cls.from_lines(pts, lines_in_point_set(PointSet(points.dim, tuple(pts))), points.dim)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        """Indices (into ``lines``) of the lines through each point."""
        through: list[list[int]] = [[] for _ in range(self.n)]
        for k, line in enumerate(self.lines):
            for p in set(line):
                through[p].append(k)
        return tuple(tuple(t) for t in through)

    @cached_property
    def line_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.lines)

    @cached_property
    def third(self) -> dict[tuple[int, int], int]:
        """(p, q) -> third point of the line through p and q (valid configurations)."""
        out = {}
        for a, b, c in self.lines:
            for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
                out[(x, y)] = z
                out[(y, x)] = z
        return out

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for line in self.lines:
            for x, y in combinations(line, 2):
                if x != y:
                    nb[x].add(y)
                    nb[y].add(x)
        return tuple(frozenset(s) for s in nb)

    def degree(self, p: int) -> int:
        return len(self.lines_through[p])

    def structure(self) -> search.Structure:
        return search.Structure.from_lines(self.n, self.lines)

    def relabel(self, perm: Sequence[int]) -> "LineConfiguration":
        """Move point i to position perm[i] (labels travel with their points)."""
        labels = [None] * self.n
        for i, j in enumerate(perm):
            labels[j] = self.labels[i]
        lines = tuple(tuple(perm[x] for x in line) for line in self.lines)
        return LineConfiguration(tuple(labels), lines, self.dim)


def isolated_points(n: int) -> LineConfiguration:
    return LineConfiguration(tuple(range(n)), ())


@dataclass
class ValidityReport:
    valid: bool
    bad_lines: list[tuple[int, ...]] = field(default_factory=list)
    bad_pairs: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate(c: LineConfiguration) -> ValidityReport:
    """Check that lines have 3 distinct points and pairwise share at most one."""
    bad_lines = [line for line in c.lines if len(line) != 3 or len(set(line)) != 3]
    bad_pairs = []
    seen: dict[tuple[int, int], tuple[int, ...]] = {}
    dup = set()
    for k, line in enumerate(c.lines):
        if k and c.lines[k - 1] == line:
            dup.add(line)
    for line in dup:
        bad_pairs.append((line, line))
    for line in dict.fromkeys(c.lines):
        for x, y in combinations(sorted(set(line)), 2):
            other = seen.get((x, y))
            if other is not None and other != line:
                pair = (other, line)
                if pair not in bad_pairs:
                    bad_pairs.append(pair)
            else:
                seen[(x, y)] = line
    return ValidityReport(not bad_lines and not bad_pairs, bad_lines, bad_pairs)


def collinear(c: LineConfiguration, p: int, q: int) -> bool:
    if p == q:
        raise ValueError("collinearity is only defined for distinct points")
    return q in c.neighbors[p]


def find_embedding(source: LineConfiguration, target: LineConfiguration,
                   seed: dict[int, int] | None = None) -> dict[int, int] | None:
    """An injective point map sending every source line onto a target line.

    Lines among image points need not come from the source (subconfigurations
    are images, not induced substructures).  ``seed`` prescribes part of the map.
    """
    f: dict[int, int] = {}
    used: set[int] = set()
    src_lines = [tuple(l) for l in source.lines]

    def assign(pairs: list[tuple[int, int]], trail: list[int]) -> bool:
        while pairs:
            v, t = pairs.pop()
            if v in f:
                if f[v] != t:
                    return False
                continue
            if t in used:
                return False
            f[v] = t
            used.add(t)
            trail.append(v)
            for k in source.lines_through[v]:
                a, b, cc = src_lines[k]
                known = [x for x in (a, b, cc) if x in f]
                if len(known) >= 2:
                    x, y = known[0], known[1]
                    r = target.third.get((f[x], f[y]))
                    if r is None:
                        return False
                    rest = [z for z in (a, b, cc) if z not in (x, y)][0]
                    pairs.append((rest, r))
        return True

    def undo(trail: list[int]) -> None:
        for v in trail:
            used.discard(f.pop(v))

    def dfs() -> bool:
        free = [v for v in range(source.n) if v not in f]
        if not free:
            return True
        # prefer points on lines that already have a mapped point
        v = max(free, key=lambda u: (sum(1 for k in source.lines_through[u]
                                         if any(x in f for x in src_lines[k])), -u))
        for t in range(target.n):
            if t in used:
                continue
            trail: list[int] = []
            if assign([(v, t)], trail) and dfs():
                return True
            undo(trail)
        return False

    trail: list[int] = []
    if seed and not assign(list(seed.items()), trail):
        return None
    return dict(f) if dfs() else None


def _fano() -> LineConfiguration:
    from .catalog import fano
    return fano()


def coplanar(c: LineConfiguration, l1: Sequence[int], l2: Sequence[int]) -> bool:
    """True iff some Fano-plane image in ``c`` has both lines among its lines.

    A line is coplanar with itself by convention.  For distinct lines the Fano
    plane is seeded with two of its lines through a common point; if the lines
    are disjoint no embedding exists since any two Fano lines meet.
    """
    l1, l2 = tuple(sorted(l1)), tuple(sorted(l2))
    for line in (l1, l2):
        if line not in c.line_set:
            raise ValueError(f"{line} is not a line of the configuration")
    if l1 == l2:
        return True
    common = set(l1) & set(l2)
    if not common:
        return False
    p = common.pop()
    a, b = [x for x in l1 if x != p]
    x, y = [z for z in l2 if z != p]
    fano = _fano()
    fl = fano.lines
    # two Fano lines through a common point
    m1, m2 = next((s, t) for s, t in combinations(fl, 2) if set(s) & set(t))
    q = (set(m1) & set(m2)).pop()
    fa, fb = [z for z in m1 if z != q]
    fx, fy = [z for z in m2 if z != q]
    seed = {q: p, fa: a, fb: b, fx: x, fy: y}
    return find_embedding(fano, c, seed) is not None


def coplanarity_graph(c: LineConfiguration, p: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Lines through p and the coplanar pairs among them (as positions in that list)."""
    through = list(c.lines_through[p])
    edges = []
    for i, j in combinations(range(len(through)), 2):
        if coplanar(c, c.lines[through[i]], c.lines[through[j]]):
            edges.append((i, j))
    return through, edges


def incidence_graph(c: LineConfiguration) -> list[tuple[int, int]]:
    """Edges (p, q), p < q, between collinear points."""
    return sorted((p, q) for p in range(c.n) for q in c.neighbors[p] if p < q)


def distances(c: LineConfiguration) -> list[list[float]]:
    """All-pairs graph distances in the incidence graph; math.inf if unreachable."""
    out = []
    for s in range(c.n):
        d = [math.inf] * c.n
        d[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in c.neighbors[u]:
                if d[w] == math.inf:
                    d[w] = d[u] + 1
                    queue.append(w)
        out.append(d)
    return out


@dataclass
class IncidenceProfile:
    """Distance-layer counts of the incidence graph.

    ``point_counts[p][i]`` is v_i(p); ``pair_counts[(p, q)][j]`` is v_{i,j}(p, q)
    for q at distance i from p.  When ``symmetric`` is set, ``v`` and ``vij``
    hold the common values (with v_{i,j} stored for j in i-1, i, i+1).
    """

    n: int
    dist: list[list[float]]
    point_counts: list[tuple[int, ...]]
    pair_counts: dict[tuple[int, int], tuple[int, ...]]
    symmetric: bool
    diameter: float
    components: list[list[int]]
    v: tuple[int, ...] | None = None
    vij: dict[tuple[int, int], int] | None = None

    @property
    def connected(self) -> bool:
        return len(self.components) <= 1

    def layer(self, i: int) -> int:
        assert self.v is not None
        return self.v[i] if 0 <= i < len(self.v) else 0

    def layer_pair(self, i: int, j: int) -> int:
        assert self.vij is not None
        return self.vij.get((i, j), 0)

    def summary(self) -> dict:
        out: dict = {
            "symmetric": self.symmetric,
            "diameter": None if self.diameter == math.inf else int(self.diameter),
            "components": len(self.components),
        }
        if self.symmetric:
            out["v"] = list(self.v)
            out["vij"] = {f"{i},{j}": val for (i, j), val in sorted(self.vij.items())}
        return out


def profile(c: LineConfiguration) -> IncidenceProfile:
    dist = distances(c)
    n = c.n
    finite_max = [max((d for d in row if d != math.inf), default=0) for row in dist]
    width = int(max(finite_max, default=0)) + 1
    point_counts = []
    layers = []
    for p in range(n):
        counts = [0] * width
        lay: list[set[int]] = [set() for _ in range(width)]
        for q in range(n):
            if dist[p][q] != math.inf:
                counts[int(dist[p][q])] += 1
                lay[int(dist[p][q])].add(q)
        point_counts.append(tuple(counts))
        layers.append(lay)
    pair_counts: dict[tuple[int, int], tuple[int, ...]] = {}
    for p in range(n):
        for q in range(n):
            if dist[p][q] == math.inf:
                continue
            i = int(dist[p][q])
            nq = c.neighbors[q]
            pair_counts[(p, q)] = tuple(
                len(layers[p][j] & nq) if 0 <= j < width else 0 for j in (i - 1, i, i + 1)
            )
    comps = _components(c)
    diameter = math.inf if len(comps) > 1 else (int(max(finite_max)) if n else 0)
    symmetric = len(set(point_counts)) <= 1
    by_dist: dict[int, set] = {}
    for (p, q), vec in pair_counts.items():
        by_dist.setdefault(int(dist[p][q]), set()).add(vec)
    symmetric = symmetric and all(len(s) == 1 for s in by_dist.values())
    prof = IncidenceProfile(n, dist, point_counts, pair_counts, symmetric, diameter, comps)
    if symmetric and n:
        v = point_counts[0]
        while len(v) > 1 and v[-1] == 0:
            v = v[:-1]
        vij = {}
        for i, vecs in by_dist.items():
            (vec,) = vecs
            for j, val in zip((i - 1, i, i + 1), vec):
                if j >= 0:
                    vij[(i, j)] = val
        prof.v, prof.vij = tuple(v), vij
    return prof


def _components(c: LineConfiguration) -> list[list[int]]:
    seen = [False] * c.n
    comps = []
    for s in range(c.n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in c.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_morphism(f: Sequence[int] | dict[int, int], v: LineConfiguration, w: LineConfiguration) -> bool:
    """Injective point map under which every line of v lands on a line of w."""
    fmap = dict(f) if isinstance(f, dict) else dict(enumerate(f))
    if sorted(fmap) != list(range(v.n)):
        raise ValueError("map must be defined on every source point")
    if len(set(fmap.values())) != len(fmap):
        raise ValueError("morphisms are injective on points")
    return all(tuple(sorted(fmap[x] for x in line)) in w.line_set for line in v.lines)


def identity_map(v: LineConfiguration) -> list[int]:
    return list(range(v.n))


def compose(g: Sequence[int], f: Sequence[int]) -> list[int]:
    """g after f."""
    return [g[x] for x in f]


def inverse(f: Sequence[int]) -> list[int]:
    inv = [0] * len(f)
    for i, j in enumerate(f):
        inv[j] = i
    return inv


def canonical_form(c: LineConfiguration, colors: Sequence[int] | None = None) -> search.CanonicalResult:
    return search.canonical_form(c.n, c.lines, colors)


def are_isomorphic(v: LineConfiguration, w: LineConfiguration) -> list[int] | None:
    """A point bijection f with f(lines of v) = lines of w, or None.

    Decided by comparing canonical forms; the witness composes the two
    canonical labellings.
    """
    if v.n != w.n or len(v.lines) != len(w.lines):
        return None
    if sorted(map(v.degree, range(v.n))) != sorted(map(w.degree, range(w.n))):
        return None
    cv, cw = canonical_form(v), canonical_form(w)
    if cv.form != cw.form:
        return None
    f = compose(inverse(cw.labeling), cv.labeling)
    assert is_isomorphism(f, v, w)
    return f


def is_isomorphism(f: Sequence[int], v: LineConfiguration, w: LineConfiguration) -> bool:
    if v.n != w.n or sorted(f) != list(range(w.n)):
        return False
    image = {tuple(sorted(f[x] for x in line)) for line in v.lines}
    return image == set(w.lines)


def automorphism_group_order(c: LineConfiguration) -> int:
    order, _ = search.automorphism_group_order(c.structure())
    return order


def automorphism_generators(c: LineConfiguration) -> list[list[int]]:
    _, gens = search.automorphism_group_order(c.structure())
    return gens


def point_orbit(c: LineConfiguration, p: int = 0) -> set[int]:
    """Orbit of p under Aut(c), testing each unreached point with one search."""
    s = c.structure()
    orbit = {p}
    gens: list[list[int]] = []
    for q in range(c.n):
        if q in orbit:
            continue
        g = search.find_isomorphism(s, s, {p: q})
        if g is None:
            continue
        gens.append([g[v] for v in range(c.n)])
        frontier = list(orbit)
        while frontier:
            x = frontier.pop()
            for h in gens:
                if h[x] not in orbit:
                    orbit.add(h[x])
                    frontier.append(h[x])
    return orbit


def product_configuration(factors: Sequence[LineConfiguration]) -> LineConfiguration:
    """Points are tuples of factor labels; lines vary one coordinate along a factor line."""
    if not factors:
        raise ValueError("need at least one factor")
    index_tuples = list(product(*(range(f.n) for f in factors)))
    position = {t: i for i, t in enumerate(index_tuples)}
    lines = []
    for t in index_tuples:
        for axis, f in enumerate(factors):
            for line in f.lines:
                if t[axis] != line[0]:
                    continue
                pts = []
                for x in line:
                    u = list(t)
                    u[axis] = x
                    pts.append(position[tuple(u)])
                lines.append(tuple(pts))
    if len(factors) == 1:
        return factors[0]
    labels = tuple(tuple(f.labels[i] for f, i in zip(factors, t)) for t in index_tuples)
    return LineConfiguration(labels, tuple(lines))


def disjoint_union(*parts: LineConfiguration) -> LineConfiguration:
    labels, lines, offset = [], [], 0
    for k, part in enumerate(parts):
        labels += [(k, lab) for lab in part.labels]
        lines += [tuple(x + offset for x in line) for line in part.lines]
        offset += part.n
    return LineConfiguration(tuple(labels), tuple(lines))
