"""V-configurations, the distance-layer identities they satisfy, and the
parameter table those identities force."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import search
from .config import IncidenceProfile, LineConfiguration, coplanarity_graph, profile


def collinearity_structure(v: LineConfiguration) -> search.Structure:
    edges = [(p, q) for p in range(v.n) for q in v.neighbors[p] if p < q]
    return search.Structure.from_edges(v.n, edges)


@dataclass
class LocalCorrespondence:
    """phi_p: lines of W through ``point`` -> points of V."""

    point: int
    phi: dict[tuple[int, ...], int]


@dataclass
class VConfigResult:
    ok: bool
    witnesses: list[LocalCorrespondence] = field(default_factory=list)
    failing_point: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def local_correspondence(w: LineConfiguration, v: LineConfiguration, p: int,
                         target: search.Structure | None = None) -> LocalCorrespondence | None:
    through, edges = coplanarity_graph(w, p)
    if len(through) != v.n:
        return None
    if target is None:
        target = collinearity_structure(v)
    iso = search.find_isomorphism(search.Structure.from_edges(len(through), edges), target)
    if iso is None:
        return None
    return LocalCorrespondence(p, {w.lines[through[i]]: iso[i] for i in range(len(through))})


def is_v_configuration(w: LineConfiguration, v: LineConfiguration) -> VConfigResult:
    """Search phi_p at every point of W; stop at the first point without one."""
    target = collinearity_structure(v)
    witnesses = []
    for p in range(w.n):
        if w.degree(p) != v.n:
            return VConfigResult(False, witnesses, p,
                                 f"point {p} lies on {w.degree(p)} lines, V has {v.n} points")
        lc = local_correspondence(w, v, p, target)
        if lc is None:
            return VConfigResult(False, witnesses, p,
                                 f"coplanarity at point {p} does not match collinearity of V")
        witnesses.append(lc)
    return VConfigResult(True, witnesses)


@dataclass
class NumericItem:
    name: str
    applicable: bool
    passed: bool | None = None
    lhs: object = None
    rhs: object = None
    note: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "applicable": self.applicable, "passed": self.passed,
                "lhs": self.lhs, "rhs": self.rhs, "note": self.note}


@dataclass
class NumericsReport:
    items: list[NumericItem]

    @property
    def passed(self) -> bool:
        """No applicable item failed."""
        return all(it.passed for it in self.items if it.applicable)

    def get(self, name: str) -> NumericItem:
        return next(it for it in self.items if it.name == name)


def effective_v2(vp: IncidenceProfile, v: LineConfiguration) -> tuple[int, str]:
    """v_2 of V, or |P_V| - 1 - v_1 when V has no lines at all."""
    if not v.lines:
        return v.n - 1, "no lines: every other point counted at distance 2"
    return vp.layer(2), "measured"


def _v1(vp: IncidenceProfile) -> int:
    return vp.layer(1)


def check_numeric_relations(w: LineConfiguration, v: LineConfiguration | None = None,
                            wp: IncidenceProfile | None = None,
                            vp: IncidenceProfile | None = None,
                            v_configuration: bool | None = None) -> NumericsReport:
    """Evaluate the distance-layer identities of W, and of W over V, on measured profiles.

    Items: row-sum (v1 = v_{i,i-1} + v_{i,i} + v_{i,i+1}), layer-balance
    (v1 v_i = sum_j v_{j,i} v_j), base values, layer-edges (edges between
    layers i and j counted from both ends).  These need W connected and
    symmetric.  Given a V with W a V-configuration, also w22>=w21,
    w1=2|P_V|, w11=2v1+1 and the w2-dichotomy (w2 = |P_V| or w2 = 4 v2).
    Pass ``v_configuration`` to skip re-verifying that W is one.
    """
    wp = wp or profile(w)
    items: list[NumericItem] = []
    base_ok = wp.connected and wp.symmetric
    why = "" if base_ok else "W is not connected and symmetric"
    diam = int(wp.diameter) if base_ok else -1

    if base_ok:
        for i in range(diam + 1):
            rhs = sum(wp.layer_pair(i, j) for j in (i - 1, i, i + 1))
            items.append(NumericItem(f"row-sum i={i}", True, wp.layer(1) == rhs, wp.layer(1), rhs))
        for i in range(diam + 1):
            lhs = wp.layer(1) * wp.layer(i)
            rhs = sum(wp.layer_pair(j, i) * wp.layer(j) for j in (i - 1, i, i + 1))
            items.append(NumericItem(f"layer-balance i={i}", True, lhs == rhs, lhs, rhs))
        for name, lhs, rhs in (("base v0=1", wp.layer(0), 1),
                               ("base v00=0", wp.layer_pair(0, 0), 0),
                               ("base v01=v1", wp.layer_pair(0, 1), wp.layer(1)),
                               ("base v10=1", wp.layer_pair(1, 0), 1 if diam >= 1 else 0)):
            items.append(NumericItem(name, True, lhs == rhs, lhs, rhs))
        for i in range(diam + 1):
            for j in range(diam + 1):
                if i < j:
                    lhs = wp.layer(i) * wp.layer_pair(i, j)
                    rhs = wp.layer(j) * wp.layer_pair(j, i)
                    items.append(NumericItem(f"layer-edges ({i},{j})", True, lhs == rhs, lhs, rhs,
                                             "edges between distance layers counted from both sides"))
    else:
        for name in ("row-sum", "layer-balance", "base"):
            items.append(NumericItem(name, False, note=why))

    if v is None:
        return NumericsReport(items)

    vp = vp or profile(v)
    if v_configuration is None:
        v_configuration = bool(is_v_configuration(w, v))
    if not (base_ok and v_configuration):
        note = why or "W is not a V-configuration"
        for name in ("w22>=w21", "w1=2|P_V|", "w11=2v1+1", "w2-dichotomy"):
            items.append(NumericItem(name, False, note=note))
        return NumericsReport(items)

    has_w2 = diam >= 2
    if has_w2:
        items.append(NumericItem("w22>=w21", True, wp.layer_pair(2, 2) >= wp.layer_pair(2, 1),
                                 wp.layer_pair(2, 2), wp.layer_pair(2, 1), "w22 >= w21"))
    else:
        items.append(NumericItem("w22>=w21", False, note="diameter 1: no second layer"))
    items.append(NumericItem("w1=2|P_V|", True, wp.layer(1) == 2 * v.n, wp.layer(1), 2 * v.n, "w1 = 2|P_V|"))
    if vp.symmetric:
        v1 = _v1(vp)
        items.append(NumericItem("w11=2v1+1", True, wp.layer_pair(1, 1) == 2 * v1 + 1,
                                 wp.layer_pair(1, 1), 2 * v1 + 1, "w11 = 2 v1 + 1"))
    else:
        items.append(NumericItem("w11=2v1+1", False, note="V is not symmetric"))
    if not has_w2:
        items.append(NumericItem("w2-dichotomy", False, note="diameter 1: no second layer"))
    elif not vp.symmetric or vp.layer(3):
        items.append(NumericItem("w2-dichotomy", False, note="needs a symmetric V with v3 = 0"))
    elif wp.layer(3):
        items.append(NumericItem("w2-dichotomy", False, note="needs w3 = 0"))
    else:
        v2, how = effective_v2(vp, v)
        w2 = wp.layer(2)
        branch = "w2 = |P_V|" if w2 == v.n else ("w2 = 4 v2" if w2 == 4 * v2 else "neither")
        items.append(NumericItem("w2-dichotomy", True, branch != "neither", w2, {"|P_V|": v.n, "4 v2": 4 * v2},
                                 f"branch {branch}; v2 {how}"))
    return NumericsReport(items)


@dataclass
class ParameterTable:
    """w_i, w_{i,j} and |W| forced for a symmetric V-configuration.

    ``steps`` records each derivation with the identity it used;
    ``rejected`` lists branches of the w2 dichotomy that were eliminated.
    """

    points: int
    v1: int
    v2: int
    w: dict[int, int]
    wij: dict[tuple[int, int], int]
    order: int
    diameter: int
    steps: list[str] = field(default_factory=list)
    rejected: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "inputs": {"|P_V|": self.points, "v1": self.v1, "v2": self.v2},
            "w": {str(i): x for i, x in sorted(self.w.items())},
            "wij": {f"{i},{j}": x for (i, j), x in sorted(self.wij.items())},
            "order": self.order,
            "diameter": self.diameter,
            "steps": list(self.steps),
            "rejected": list(self.rejected),
        }


class ParameterError(ValueError):
    pass


def derive_parameters(points: int, v1: int, v2: int) -> ParameterTable:
    """Derive the w-table of a V-configuration from |P_V|, v1, v2, one identity per step."""
    if points < 1:
        raise ParameterError("V needs at least one point")
    steps = []
    w = {0: 1}
    wij = {(0, 0): 0, (1, 0): 1}
    w[1] = 2 * points
    wij[(0, 1)] = w[1]
    steps.append(f"w1 = 2|P_V| = {w[1]}")
    wij[(1, 1)] = 2 * v1 + 1
    steps.append(f"w11 = 2 v1 + 1 = {wij[(1, 1)]}")
    w12 = w[1] - 1 - wij[(1, 1)]
    if w12 < 0:
        raise ParameterError(f"w12 = w1 - 1 - w11 = {w12} is negative")
    wij[(1, 2)] = w12
    steps.append(f"w12 = w1 - w10 - w11 = {w12}  (row sum at i=1)")
    if w12 == 0:
        steps.append("w12 = 0: no second layer, diameter 1")
        table = ParameterTable(points, v1, v2, w, wij, 1 + w[1], 1, steps)
        steps.append(f"|W| = 1 + w1 = {table.order}")
        return table

    rejected = []
    survivors = []
    for label, w2 in (("w2 = |P_V|", points), ("w2 = 4 v2", 4 * v2)):
        if w2 <= 0:
            rejected.append(f"{label} = {w2}: second layer must be nonempty")
            continue
        w21 = Fraction(w[1] * w12, w2)
        if w21.denominator != 1:
            rejected.append(f"{label} = {w2}: w21 = w1 w12 / w2 = {w21} is not an integer")
            continue
        w21 = int(w21)
        w22 = w[1] - w21
        if w22 < w21:
            rejected.append(f"{label} = {w2}: w22 = {w22} < w21 = {w21} contradicts w22 >= w21")
            continue
        if (w2, w21, w22) not in [s[1:] for s in survivors]:
            survivors.append((label, w2, w21, w22))
    if not survivors:
        raise ParameterError("both branches for w2 are eliminated: " + "; ".join(rejected))
    if len(survivors) > 1:
        raise ParameterError("two admissible branches for w2: "
                             + ", ".join(f"{s[0]} = {s[1]}" for s in survivors))
    label, w2, w21, w22 = survivors[0]
    w[2] = w2
    wij[(2, 1)] = w21
    wij[(2, 2)] = w22
    wij[(2, 3)] = 0
    steps.append(f"{label} = {w2}, other branch removed by w22 >= w21")
    steps.append(f"w21 = w1 w12 / w2 = {w21}  (layer double count)")
    steps.append(f"w22 = w1 - w21 = {w22}  (row sum at i=2 with w23 = 0)")
    order = 1 + w[1] + w2
    steps.append(f"|W| = 1 + w1 + w2 = {order}")
    return ParameterTable(points, v1, v2, w, wij, order, 2, steps, rejected)


def parameters_for(v: LineConfiguration, vp: IncidenceProfile | None = None) -> ParameterTable:
    """Measure (|P_V|, v1, v2) on V and derive the table."""
    vp = vp or profile(v)
    if not vp.symmetric:
        raise ParameterError("V must be symmetric")
    if v.lines and not vp.connected:
        raise ParameterError("V must be connected (or have no lines)")
    if v.lines and vp.diameter > 2:
        raise ParameterError("V must have diameter at most 2")
    v2, _ = effective_v2(vp, v)
    return derive_parameters(v.n, _v1(vp), v2)


@dataclass
class ReconstructionReport:
    """Outcome of the second-layer reconstruction checks at one root.

    (a) is checked in the form that holds for every n: each line through a
    point of W2 meets W1 exactly once.  ``literal_a`` records the stronger
    statement "every line avoiding the root meets W1 once and W2 twice", which
    fails as soon as W1 carries lines of its own (``lines_inside_w1`` > 0).
    """

    applicable: bool
    root: int = 0
    lines_meet_layers: bool | None = None  # (a)
    half_second_layer: bool | None = None  # (b)
    choice_map_injective: bool | None = None  # (c)
    literal_a: bool | None = None
    lines_inside_w1: int | None = None
    w12: int | None = None
    w2: int | None = None
    bad_lines: list[tuple[int, ...]] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.applicable and self.lines_meet_layers and self.half_second_layer
                    and self.choice_map_injective)

    def as_dict(self) -> dict:
        return {"applicable": self.applicable, "root": self.root,
                "a_lines_through_W2_meet_W1_once": self.lines_meet_layers,
                "b_w12_is_half_w2": self.half_second_layer,
                "c_choice_map_injective": self.choice_map_injective,
                "literal_a_every_line_off_root_meets_W1_once": self.literal_a,
                "lines_inside_W1": self.lines_inside_w1,
                "w12": self.w12, "w2": self.w2, "note": self.note, "passed": self.passed}


def verify_reconstruction_argument(w: LineConfiguration, v: LineConfiguration | None = None,
                                   root: int = 0) -> ReconstructionReport:
    """Check how the second layer is rebuilt from the lines through ``root``.

    (a) lines through W2 meet W1 exactly once (hence W2 twice); (b) every point
    of W1 is collinear with exactly half of W2; (c) each point of W2 sees
    exactly one non-root point on every root line, and these choices determine it.
    """
    wp = profile(w)
    d = wp.dist[root]
    layer1 = [q for q in range(w.n) if d[q] == 1]
    layer2 = [q for q in range(w.n) if d[q] == 2]
    if not layer2:
        return ReconstructionReport(False, root, note="no second layer")
    if v is not None and w.degree(root) != v.n:
        return ReconstructionReport(False, root, note="root degree differs from |P_V|")
    in1, in2 = set(layer1), set(layer2)
    off_root = [line for line in w.lines if root not in line]
    bad = [line for line in off_root if any(x in in2 for x in line)
           and not (sum(x in in1 for x in line) == 1 and sum(x in in2 for x in line) == 2)]
    inside = [line for line in off_root if all(x in in1 for x in line)]
    counts = {len(w.neighbors[a] & in2) for a in layer1}
    b_ok = counts == {len(layer2) / 2}
    root_lines = [w.lines[k] for k in w.lines_through[root]]
    choices = []
    c_ok = True
    for q in layer2:
        pick = []
        for line in root_lines:
            seen = [x for x in line if x != root and x in w.neighbors[q]]
            if len(seen) != 1:
                c_ok = False
                break
            pick.append(seen[0])
        choices.append(tuple(pick))
    c_ok = c_ok and len(set(choices)) == len(choices)
    return ReconstructionReport(True, root, not bad, b_ok, c_ok,
                                literal_a=not bad and not inside,
                                lines_inside_w1=len(inside),
                                w12=counts.pop() if len(counts) == 1 else None,
                                w2=len(layer2), bad_lines=bad)


def reference_closed_forms(n: int) -> dict[str, int]:
    """Reference closed forms in n for the w-table of Q_{2n+2}^- over Q_{2n}^-."""
    return {
        "w1": 2 ** (2 * n) - 2**n - 2,
        "w11": 2 ** (2 * n - 1) - 2**n - 4,
        "w12": 2 ** (2 * n) - 2 ** (2 * n - 1) + 1,
        "w2": 2 ** (2 * n),
        "w21": 2 ** (n - 1) * (2**n - 1) - 1,
        "w22": 2 ** (n - 1) * (2**n - 1) - 1,
        "|W|": 2**n * (2 ** (n + 1) - 1) - 1,
    }


def discrepancy_report(ns=(2, 3)) -> list[dict]:
    """Compare the closed forms above with values measured on Q_{2n+2}^-.

    Every compared quantity is listed; ``agree`` is False where they differ.
    """
    from .catalog import quadric_configuration

    rows = []
    for n in ns:
        wp = profile(quadric_configuration(n + 1))
        measured = {
            "w1": wp.layer(1), "w11": wp.layer_pair(1, 1), "w12": wp.layer_pair(1, 2),
            "w2": wp.layer(2), "w21": wp.layer_pair(2, 1), "w22": wp.layer_pair(2, 2),
            "|W|": wp.n,
        }
        for key, closed in reference_closed_forms(n).items():
            rows.append({"n": n, "quantity": key, "closed_form": closed,
                         "measured": measured[key], "difference": measured[key] - closed,
                         "agree": measured[key] == closed})
    return rows


def discrepancies(ns=(2, 3)) -> list[dict]:
    return [row for row in discrepancy_report(ns) if not row["agree"]]

