"""Backtracking machinery shared by the configuration algorithms.

Structures are described by neighbour bitmasks, an optional third-point map
(for line configurations: the third point on the line through a collinear
pair) and integer vertex colours.  Everything here is deterministic: ties are
always broken by the smallest vertex index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass
class Structure:
    """Finite structure: symmetric adjacency, optional line closure, colours."""

    nbrs: list[int]
    third: dict[tuple[int, int], int] | None = None
    colors: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.colors:
            self.colors = [0] * len(self.nbrs)

    @property
    def n(self) -> int:
        return len(self.nbrs)

    @classmethod
    def from_lines(cls, n: int, lines: Sequence[Sequence[int]], colors=None) -> "Structure":
        nbrs = [0] * n
        third: dict[tuple[int, int], int] = {}
        for a, b, c in lines:
            for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
                nbrs[x] |= 1 << y
                nbrs[y] |= 1 << x
                third[(x, y)] = z
                third[(y, x)] = z
        return cls(nbrs, third, list(colors) if colors is not None else [])

    @classmethod
    def from_edges(cls, n: int, edges, colors=None) -> "Structure":
        nbrs = [0] * n
        for a, b in edges:
            nbrs[a] |= 1 << b
            nbrs[b] |= 1 << a
        return cls(nbrs, None, list(colors) if colors is not None else [])


def joint_refine(structs: Sequence[Structure], seeds: Sequence[dict[int, int]] = ()) -> list[list[int]]:
    """Colour refinement run simultaneously on several structures.

    ``seeds`` optionally gives per-structure extra labels (vertex -> tag) that
    individualise vertices; equal tags in different structures stay comparable.
    Colours are comparable across the structures.
    """
    cols = []
    for k, s in enumerate(structs):
        seed = seeds[k] if k < len(seeds) else {}
        cols.append([(s.colors[v], seed.get(v, -1)) for v in range(s.n)])
    ncls = -1
    while True:
        table: dict = {}
        keys = []
        for s, col in zip(structs, cols):
            ks = []
            for v in range(s.n):
                ks.append((col[v], tuple(sorted(col[u] for u in bits(s.nbrs[v])))))
            keys.append(ks)
        for k in sorted({k for ks in keys for k in ks}):
            table[k] = len(table)
        cols = [[table[k] for k in ks] for ks in keys]
        if len(table) == ncls:
            return cols
        ncls = len(table)


class _IsoSearch:
    """Finds a colour-, adjacency- and line-preserving bijection A -> B."""

    def __init__(self, a: Structure, b: Structure, fixed: dict[int, int] | None = None,
                 node_limit: int | None = None):
        self.a, self.b = a, b
        self.fixed = dict(fixed or {})
        self.nodes = 0
        self.node_limit = node_limit

    def run(self) -> dict[int, int] | None:
        a, b = self.a, self.b
        if a.n != b.n:
            return None
        if (a.third is None) != (b.third is None):
            return None
        seed_a = {u: i for i, u in enumerate(sorted(self.fixed))}
        seed_b = {self.fixed[u]: i for i, u in enumerate(sorted(self.fixed))}
        if len(seed_b) != len(seed_a):
            return None
        ca, cb = joint_refine([a, b], [seed_a, seed_b])
        if sorted(ca) != sorted(cb):
            return None
        self.ca, self.cb = ca, cb
        self.f = [-1] * a.n
        self.finv = [-1] * b.n
        self.mapped_a = 0
        self.mapped_b = 0
        trail: list[int] = []
        for u in sorted(self.fixed):
            if not self._assign(u, self.fixed[u], trail):
                return None
        if self._dfs():
            return {v: self.f[v] for v in range(a.n)}
        return None

    def _compatible(self, v: int, c: int) -> bool:
        if self.ca[v] != self.cb[c] or self.finv[c] != -1:
            return False
        na = self.a.nbrs[v] & self.mapped_a
        nb = self.b.nbrs[c] & self.mapped_b
        if na.bit_count() != nb.bit_count():
            return False
        for u in bits(na):
            if not (nb >> self.f[u]) & 1:
                return False
        return True

    def _assign(self, v: int, c: int, trail: list[int]) -> bool:
        queue = [(v, c)]
        while queue:
            v, c = queue.pop()
            if self.f[v] != -1:
                if self.f[v] != c:
                    return False
                continue
            if not self._compatible(v, c):
                return False
            self.f[v] = c
            self.finv[c] = v
            self.mapped_a |= 1 << v
            self.mapped_b |= 1 << c
            trail.append(v)
            if self.a.third is None:
                continue
            for u in bits(self.a.nbrs[v] & self.mapped_a & ~(1 << v)):
                r = self.a.third[(u, v)]
                s = self.b.third[(self.f[u], c)]
                if self.f[r] != -1:
                    if self.f[r] != s:
                        return False
                elif self.finv[s] != -1:
                    return False
                else:
                    queue.append((r, s))
        return True

    def _undo(self, trail: list[int]) -> None:
        for v in trail:
            c = self.f[v]
            self.f[v] = -1
            self.finv[c] = -1
            self.mapped_a &= ~(1 << v)
            self.mapped_b &= ~(1 << c)
        trail.clear()

    def _pick(self) -> int:
        best, best_key = -1, None
        for v in range(self.a.n):
            if self.f[v] != -1:
                continue
            key = (-(self.a.nbrs[v] & self.mapped_a).bit_count(), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def _dfs(self) -> bool:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SearchBudgetExceeded(self.nodes)
        v = self._pick()
        if v == -1:
            return True
        for c in range(self.b.n):
            if not self._compatible(v, c):
                continue
            trail: list[int] = []
            if self._assign(v, c, trail) and self._dfs():
                return True
            self._undo(trail)
        return False


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


def find_isomorphism(a: Structure, b: Structure, fixed: dict[int, int] | None = None) -> dict[int, int] | None:
    """A bijection A -> B preserving colours, adjacency and thirds, or None."""
    return _IsoSearch(a, b, fixed).run()


def _orbits(n: int, gens: Sequence[Sequence[int]]) -> list[int]:
    parent = list(range(n))

    def root(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            rx, ry = root(x), root(g[x])
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    return [root(x) for x in range(n)]


def automorphism_group_order(s: Structure) -> tuple[int, list[list[int]]]:
    """Order of Aut(s) via a stabiliser chain, plus the generators found.

    At each base point b the orbit of b under the pointwise stabiliser of the
    earlier base points is measured: candidates already reached by known
    generators are skipped, and a failed candidate rules out its whole orbit.
    """
    n = s.n
    order = 1
    fixed: dict[int, int] = {}
    all_gens: list[list[int]] = []
    while len(fixed) < n:
        seed = {u: i for i, u in enumerate(sorted(fixed))}
        col = joint_refine([s], [seed])[0]
        counts: dict[int, int] = {}
        for c in col:
            counts[c] = counts.get(c, 0) + 1
        if all(v == 1 for v in counts.values()):
            break
        b = next(v for v in range(n) if v not in fixed and counts[col[v]] > 1)
        gens = [g for g in all_gens if all(g[u] == u for u in fixed)]
        rejected: set[int] = set()
        for c in range(n):
            if col[c] != col[b] or c == b:
                continue
            orb = _orbits(n, gens)
            if orb[c] == orb[b] or orb[c] in rejected:
                continue
            target = dict(fixed)
            target[b] = c
            g = find_isomorphism(s, s, target)
            if g is None:
                rejected.add(orb[c])
            else:
                perm = [g[v] for v in range(n)]
                gens.append(perm)
                all_gens.append(perm)
        orb = _orbits(n, gens)
        order *= sum(1 for v in range(n) if orb[v] == orb[b])
        fixed[b] = b
    return order, all_gens


@dataclass
class CanonicalResult:
    labeling: list[int]  # vertex -> canonical label
    form: tuple
    automorphisms: list[list[int]]
    leaves: int


class _Canon:
    """Individualisation-refinement over line structures.

    The refinement signature of a point is its cell together with the sorted
    cell-pairs of the other two points on each line through it, plus the cells
    of its plain neighbours (for edges not carried by a line).
    """

    def __init__(self, n: int, lines: Sequence[Sequence[int]], colors: Sequence[int],
                 edges: Sequence[tuple[int, int]] = ()):
        self.n = n
        self.lines = [tuple(l) for l in lines]
        self.edges = [tuple(e) for e in edges]
        self.colors = list(colors)
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for a, b, c in self.lines:
            self.pairs[a].append((b, c))
            self.pairs[b].append((a, c))
            self.pairs[c].append((a, b))
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.edges:
            self.adj[a].append(b)
            self.adj[b].append(a)
        self.best: tuple | None = None
        self.best_lab: list[int] | None = None
        self.autos: list[list[int]] = []
        self.leaves = 0

    def refine(self, cell: list[int]) -> list[int]:
        ncells = len(set(cell))
        pairs, adj = self.pairs, self.adj
        while True:
            sigs = []
            for v in range(self.n):
                lp = sorted((cell[x], cell[y]) if cell[x] <= cell[y] else (cell[y], cell[x])
                            for x, y in pairs[v])
                sigs.append((cell[v], tuple(lp), tuple(sorted(cell[u] for u in adj[v]))))
            rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
            cell = [rank[s] for s in sigs]
            if len(rank) == ncells:
                return cell
            ncells = len(rank)

    def encode(self, lab: list[int]) -> tuple:
        cols = [0] * self.n
        for v in range(self.n):
            cols[lab[v]] = self.colors[v]
        lines = sorted(tuple(sorted(lab[v] for v in line)) for line in self.lines)
        edges = sorted(tuple(sorted((lab[a], lab[b]))) for a, b in self.edges)
        return (tuple(cols), tuple(lines), tuple(edges))

    def run(self) -> CanonicalResult:
        rank = {c: i for i, c in enumerate(sorted(set(self.colors)))}
        cell = self.refine([rank[c] for c in self.colors])
        self._leaf_codes: dict[tuple, tuple[list[int], list[int]]] = {}
        self._dfs(cell, [])
        assert self.best_lab is not None
        return CanonicalResult(self.best_lab, self.best, self.autos, self.leaves)

    def _dfs(self, cell: list[int], path: list[int]) -> int:
        """Explore below ``path``; return the depth to resume at.

        A leaf equivalent to an earlier one yields an automorphism mapping the
        current branch onto an explored one, so the search jumps back to the
        depth where the two branches split.
        """
        counts: dict[int, int] = {}
        for c in cell:
            counts[c] = counts.get(c, 0) + 1
        open_cells = [(size, c) for c, size in counts.items() if size > 1]
        if not open_cells:
            return self._leaf(cell, path)
        target = min(open_cells)[1]
        depth = len(path)
        members = [v for v in range(self.n) if cell[v] == target]
        done: list[int] = []
        orb: list[int] | None = None
        known = -1
        for v in members:
            if done and len(self.autos) != known:
                known = len(self.autos)
                gens = [g for g in self.autos if all(g[u] == u for u in path)]
                orb = _orbits(self.n, gens) if gens else None
            if orb is not None and any(orb[v] == orb[d] for d in done):
                continue
            child = [2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(cell)]
            back = self._dfs(self.refine(child), path + [v])
            done.append(v)
            if back < depth:
                return back
        return depth

    def _leaf(self, cell: list[int], path: list[int]) -> int:
        self.leaves += 1
        code = self.encode(cell)
        seen = self._leaf_codes.get(code)
        if seen is not None:
            other, other_path = seen
            # other[v] = cell[g(v)] defines an automorphism g
            inv = [0] * self.n
            for v in range(self.n):
                inv[cell[v]] = v
            g = [inv[other[v]] for v in range(self.n)]
            if any(g[v] != v for v in range(self.n)):
                self.autos.append(g)
            split = 0
            while split < min(len(path), len(other_path)) and path[split] == other_path[split]:
                split += 1
            return split
        self._leaf_codes[code] = (cell, path)
        if self.best is None or code < self.best:
            self.best = code
            self.best_lab = cell
        return len(path)


def canonical_form(n: int, lines: Sequence[Sequence[int]], colors: Sequence[int] | None = None,
                   edges: Sequence[tuple[int, int]] = ()) -> CanonicalResult:
    """Canonical labelling of a coloured line structure (optionally with extra edges).

    Two inputs get equal ``form`` iff they are isomorphic; ``labeling`` maps
    each vertex to its canonical index.
    """
    if colors is None:
        colors = [0] * n
    return _Canon(n, lines, colors, edges).run()
