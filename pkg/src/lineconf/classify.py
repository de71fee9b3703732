"""Isomorph-free search for symmetric V-configurations with a given parameter table.

The search fixes a root point 0 and its |P_V| lines {0, 2i-1, 2i}, so that the
first layer is 1..2|P_V| and the second layer is everything else.  It then
completes the lines through points in index order.  Pruning uses only the
derived parameter table:

* every point lies on exactly |P_V| lines;
* collinear pairs have at most w11 common neighbours, non-collinear pairs at
  most w21 (the incidence graph must end up strongly regular);
* when w21 = |P_V|, every line through a second-layer point carries exactly one
  first-layer point.

Two kinds of isomorph rejection are combined.  Untouched second-layer points
are interchangeable, so a step may only use a prefix of them.  Every
intermediate state is reduced to a canonical form (root coloured apart), and
a state whose form was already seen is dropped.  Isomorphic states have
isomorphic sets of completions, so no class is lost.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import search
from .config import LineConfiguration, profile, validate
from .vconfig import ParameterTable, is_v_configuration, parameters_for


class BudgetExhausted(Exception):
    pass


@dataclass
class Budget:
    nodes: int | None = None
    seconds: float | None = None

    def __post_init__(self) -> None:
        if self.nodes is None and self.seconds is None:
            raise ValueError("a node or time budget is required")


@dataclass
class ClassificationResult:
    complete: bool
    classes: list[LineConfiguration]
    table: ParameterTable
    stats: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "complete" if self.complete else "budget-exhausted"

    def manifest(self) -> dict:
        return {
            "status": self.status,
            "class_count": len(self.classes) if self.complete else None,
            "classes_found": len(self.classes),
            "parameters": self.table.as_dict(),
            "stats": dict(self.stats),
        }


class _Search:
    def __init__(self, v: LineConfiguration, table: ParameterTable, budget: Budget):
        self.v = v
        self.table = table
        self.budget = budget
        self.k = v.n
        self.N = table.order
        self.lam = table.wij[(1, 1)]
        self.mu = table.wij.get((2, 1), self.N) if table.diameter >= 2 else None
        self.layer1 = 0
        for i in range(1, 2 * self.k + 1):
            self.layer1 |= 1 << i
        self.layer2 = ((1 << self.N) - 1) & ~self.layer1 & ~1
        self.one_w1_per_line = table.diameter >= 2 and table.wij[(2, 1)] == self.k
        self.stats = {"nodes": 0, "states_expanded": 0, "duplicate_states": 0,
                      "constraint_rejections": 0, "fresh_prefix_rejections": 0,
                      "leaves": 0, "leaves_rejected": 0, "classes": 0}
        self.start = time.monotonic()
        self.seen: set = set()
        self.class_forms: dict = {}
        self.colors = [0] + [1] * (self.N - 1)

    def _tick(self) -> None:
        self.stats["nodes"] += 1
        b = self.budget
        if b.nodes is not None and self.stats["nodes"] > b.nodes:
            raise BudgetExhausted
        if b.seconds is not None and (self.stats["nodes"] & 255) == 0:
            if time.monotonic() - self.start > b.seconds:
                raise BudgetExhausted

    def initial(self) -> tuple:
        return tuple((0, 2 * i - 1, 2 * i) for i in range(1, self.k + 1))

    def run(self) -> None:
        stack = [self.initial()]
        self.seen.add(self._key(stack[0]))
        while stack:
            state = stack.pop()
            self.stats["states_expanded"] += 1
            self._tick()
            nb, deg = self._load(state)
            focus = next((p for p in range(self.N) if deg[p] < self.k), None)
            if focus is None:
                self._leaf(state)
                continue
            children = []
            need = self.k - deg[focus]
            fresh = self._fresh(deg, focus)
            self._extend(list(state), nb, deg, focus, need, -1, fresh, set(fresh[:2 * need]),
                         set(fresh), children)
            for child in reversed(children):
                key = self._key(child)
                if key in self.seen:
                    self.stats["duplicate_states"] += 1
                    continue
                self.seen.add(key)
                stack.append(child)

    def _load(self, lines) -> tuple[list[int], list[int]]:
        nb = [0] * self.N
        deg = [0] * self.N
        for a, b, c in lines:
            nb[a] |= (1 << b) | (1 << c)
            nb[b] |= (1 << a) | (1 << c)
            nb[c] |= (1 << a) | (1 << b)
            deg[a] += 1
            deg[b] += 1
            deg[c] += 1
        return nb, deg

    def _key(self, lines) -> tuple:
        return search.canonical_form(self.N, lines, self.colors).form

    def _fresh(self, deg: list[int], focus: int) -> list[int]:
        return [q for q in range(1, self.N) if deg[q] == 0 and q != focus]

    def _extend(self, lines, nb, deg, p, need, last_x, fresh, allowed_fresh, fresh_set, out) -> None:
        if need == 0:
            used = {q for line in lines for q in line} & set(fresh)
            if used != set(fresh[:len(used)]):
                self.stats["fresh_prefix_rejections"] += 1
                return
            out.append(tuple(sorted(lines)))
            return
        k = self.k
        for x in range(last_x + 1, self.N):
            if x == p or deg[x] >= k or (nb[p] >> x) & 1:
                continue
            if x in fresh_set and x not in allowed_fresh:
                continue
            for y in range(x + 1, self.N):
                if y == p or deg[y] >= k or (nb[p] >> y) & 1 or (nb[x] >> y) & 1:
                    continue
                if y in fresh_set and y not in allowed_fresh:
                    continue
                self._tick()
                if not self._admissible(nb, p, x, y):
                    self.stats["constraint_rejections"] += 1
                    continue
                line = (p, x, y)
                saved = (nb[p], nb[x], nb[y])
                nb[p] |= (1 << x) | (1 << y)
                nb[x] |= (1 << p) | (1 << y)
                nb[y] |= (1 << p) | (1 << x)
                if self._counts_ok(nb, line):
                    for q in line:
                        deg[q] += 1
                    lines.append(tuple(sorted(line)))
                    self._extend(lines, nb, deg, p, need - 1, x, fresh, allowed_fresh, fresh_set, out)
                    lines.pop()
                    for q in line:
                        deg[q] -= 1
                else:
                    self.stats["constraint_rejections"] += 1
                nb[p], nb[x], nb[y] = saved

    def _admissible(self, nb, p, x, y) -> bool:
        if not self.one_w1_per_line:
            return True
        pts = (p, x, y)
        in2 = sum((self.layer2 >> q) & 1 for q in pts)
        in1 = sum((self.layer1 >> q) & 1 for q in pts)
        return in2 == 0 or in1 == 1

    def _counts_ok(self, nb, line) -> bool:
        lam, mu = self.lam, self.mu
        a, b, c = line
        for u, v in ((a, b), (a, c), (b, c)):
            if (nb[u] & nb[v]).bit_count() > lam:
                return False
            if mu is None:
                continue
            for s, t in ((u, v), (v, u)):
                rest = nb[t] & ~(1 << s)
                while rest:
                    low = rest & -rest
                    z = low.bit_length() - 1
                    rest ^= low
                    bound = lam if (nb[s] >> z) & 1 else mu
                    if (nb[s] & nb[z]).bit_count() > bound:
                        return False
        return True

    def _leaf(self, lines) -> None:
        self.stats["leaves"] += 1
        w = LineConfiguration(tuple(range(self.N)), tuple(lines))
        if not self._verify(w):
            self.stats["leaves_rejected"] += 1
            return
        form = search.canonical_form(self.N, lines).form
        if form not in self.class_forms:
            self.class_forms[form] = w
            self.stats["classes"] += 1

    def _verify(self, w: LineConfiguration) -> bool:
        if not validate(w):
            return False
        wp = profile(w)
        t = self.table
        if not (wp.connected and wp.symmetric and wp.diameter == t.diameter):
            return False
        if any(wp.layer(i) != val for i, val in t.w.items()):
            return False
        if any(wp.layer_pair(i, j) != val for (i, j), val in t.wij.items()):
            return False
        return bool(is_v_configuration(w, self.v))


def classify_v_configurations(v: LineConfiguration, budget: Budget) -> ClassificationResult:
    """All connected symmetric V-configurations matching V's parameter table, up to isomorphism.

    Raises nothing on budget exhaustion: the result then has ``complete``
    False and carries the classes found so far.
    """
    table = parameters_for(v)
    s = _Search(v, table, budget)
    complete = True
    try:
        s.run()
    except BudgetExhausted:
        complete = False
    s.stats["wall_time"] = round(time.monotonic() - s.start, 3)
    classes = [s.class_forms[f] for f in sorted(s.class_forms)]
    return ClassificationResult(complete, classes, table, s.stats)
