"""Acceptance criteria, one test per criterion, each reporting a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed in the
"acceptance criteria" section at the end.  ``python3 tests/test_acceptance.py``
runs the same checks without pytest.
"""

import time

import pytest

from lineconf import catalog
from lineconf.classify import Budget, classify_v_configurations
from lineconf.config import are_isomorphic, automorphism_group_order, is_isomorphism, profile
from lineconf.gf2geom import lines_in_point_set, minus_quadric, variety_points
from lineconf.ledger import gamma00_degree, schottky_degree_ledger
from lineconf.vconfig import (check_numeric_relations, derive_parameters, discrepancies,
                              is_v_configuration, parameters_for, verify_reconstruction_argument)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:
    ACCEPTANCE_LINES = []


def report(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def measured(c):
    p = profile(c)
    return (p.layer(1), p.layer_pair(1, 1), p.layer_pair(1, 2),
            p.layer(2), p.layer_pair(2, 1), p.layer_pair(2, 2)), p


def test_1_point_counts():
    t0 = time.monotonic()
    counts = [len(variety_points(minus_quadric(n)).points) for n in (1, 2, 3, 4)]
    elapsed = time.monotonic() - t0
    formula = [2 ** (n - 1) * (2**n - 1) - 1 for n in (1, 2, 3, 4)]
    ok = counts == formula == [0, 5, 27, 119] and elapsed < 1
    report("1 point counts", ok, f"{counts} vs {formula}, {elapsed:.3f}s (< 1s)")
    assert ok


def test_2_line_counts():
    t0 = time.monotonic()
    rows = []
    ok = True
    for n, want in ((2, 0), (3, 45), (4, 1071)):
        pts = variety_points(minus_quadric(n))
        lines = lines_in_point_set(pts)
        deg_sum = sum(sum(p in line for line in lines) for p in pts.points)
        ok &= len(lines) == want and deg_sum == 3 * len(lines)
        rows.append(f"{len(lines)} (sum deg {deg_sum})")
    elapsed = time.monotonic() - t0
    ok &= elapsed < 5
    report("2 line counts", ok, f"{rows}, {elapsed:.2f}s (< 5s)")
    assert ok


def test_3_profiles(q6, q8):
    (m6, p6), (m8, p8) = measured(q6), measured(q8)
    ok = (m6 == (10, 1, 8, 16, 5, 5) and m8 == (54, 21, 32, 64, 27, 27)
          and p6.symmetric and p8.symmetric and p6.diameter == p8.diameter == 2)
    report("3 profiles", ok, f"Q6- {m6}, Q8- {m8}, symmetric, diameter 2")
    assert ok


def _numerics(q4, q6, q8):
    reports = [check_numeric_relations(q6, q4), check_numeric_relations(q8, q6)]
    failed = [it.name for r in reports for it in r.items if it.applicable and not it.passed]
    seen = {it.name.split()[0] for r in reports for it in r.items if it.applicable}
    return reports, failed, seen


def test_4_numeric_identities(q4, q6, q8):
    _, failed, seen = _numerics(q4, q6, q8)
    ok = not failed and {"row-sum", "layer-balance", "base", "layer-edges", "w22>=w21", "w1=2|P_V|", "w11=2v1+1", "w2-dichotomy"} <= seen
    report("4 numeric identities", ok, f"all applicable items pass on (Q6-,Q4-) and (Q8-,Q6-); failed={failed}")
    assert ok


@pytest.mark.xfail(strict=True, reason="the identity as written transposes v_{i,j}; it contradicts criterion 3")
def test_4_layer_identity_as_written(q6, q8):
    # literal orientation v_i v_{j,i} = v_j v_{i,j}
    bad = []
    for name, c in (("Q6-", q6), ("Q8-", q8)):
        p = profile(c)
        for i in range(3):
            for j in range(i + 1, 3):
                lhs, rhs = p.layer(i) * p.layer_pair(j, i), p.layer(j) * p.layer_pair(i, j)
                if lhs != rhs:
                    bad.append(f"{name} ({i},{j}): {lhs} != {rhs}")
    report("4 layer identity, literal orientation", not bad, "; ".join(bad) or "all equal")
    p6 = profile(q6)
    report("4 layer identity, edge-count orientation v_i v_{i,j} = v_j v_{j,i}",
           p6.layer(1) * p6.layer_pair(1, 2) == p6.layer(2) * p6.layer_pair(2, 1),
           f"Q6-: {p6.layer(1) * p6.layer_pair(1, 2)} = {p6.layer(2) * p6.layer_pair(2, 1)}")
    assert not bad


def test_5_v_configurations():
    t0 = time.monotonic()
    positive = [("p3", "p2"), ("p2", "p1"), ("p1^2", "points2"), ("p1^3", "points3"),
                ("q-minus3", "q-minus2"), ("q-minus4", "q-minus3")]
    results = {pair: bool(is_v_configuration(catalog.by_name(pair[0]), catalog.by_name(pair[1])))
               for pair in positive + [("q-minus3", "points4")]}
    elapsed = time.monotonic() - t0
    ok = all(results[p] for p in positive) and not results[("q-minus3", "points4")] and elapsed < 60
    report("5 V-configurations", ok,
           f"{sum(results[p] for p in positive)}/6 positive, negative control rejected="
           f"{not results[('q-minus3', 'points4')]}, {elapsed:.1f}s (< 60s)")
    assert ok


def test_6_isomorphism_and_symmetry(q6):
    s = catalog.schlaefli_configuration()
    f = are_isomorphic(s, q6)
    t0 = time.monotonic()
    orders = {"fano": automorphism_group_order(catalog.fano()),
              "Q6-": automorphism_group_order(q6),
              "schlaefli": automorphism_group_order(s),
              "line": automorphism_group_order(catalog.single_line())}
    elapsed = time.monotonic() - t0
    ok = (f is not None and is_isomorphism(f, s, q6)
          and orders == {"fano": 168, "Q6-": 51840, "schlaefli": 51840, "line": 6} and elapsed < 300)
    report("6 isomorphism and symmetry", ok, f"witness found={f is not None}, orders {orders}, {elapsed:.2f}s")
    assert ok


def test_7_classification(q4, q6):
    res = classify_v_configurations(q4, Budget(seconds=30 * 60))
    certified = res.complete and len(res.classes) == 1 and are_isomorphic(res.classes[0], q6) is not None
    report("7 classification over Q4-", certified,
           f"status {res.status}, {len(res.classes)} class(es), isomorphic to Q6-={certified}, "
           f"{res.stats['wall_time']}s, {res.stats['nodes']} nodes")
    if not res.complete:
        t = derive_parameters(5, 0, 4)
        fallback = (t.order == 27 and verify_reconstruction_argument(q6, q4).passed)
        report("7 fallback (parameter table + reconstruction)", fallback, f"|W| = {t.order}")
    assert certified


def test_8_reconstruction(q4, q6, q8):
    r6, r8 = verify_reconstruction_argument(q6, q4), verify_reconstruction_argument(q8, q6)
    ok = (r6.passed and r8.passed and (r6.w12, r6.w2) == (8, 16) and (r8.w12, r8.w2) == (32, 64)
          and parameters_for(q4).wij[(1, 2)] == 8 and parameters_for(q6).wij[(1, 2)] == 32)
    report("8 reconstruction", ok, f"{r6.w12} = {r6.w2}/2 and {r8.w12} = {r8.w2}/2")
    assert ok


def test_9_degree_ledger(q8):
    t0 = time.monotonic()
    g = gamma00_degree()
    led = schottky_degree_ledger()
    elapsed = time.monotonic() - t0
    ok = g == 64 and led.total == 119 == q8.n and elapsed < 1
    report("9 degree ledger", ok, f"gamma00 = {g}, total {' + '.join(str(e.value) for e in led.entries)}"
           f" = {led.total} = |Q8-| {q8.n}, {elapsed:.3f}s")
    assert ok


def test_10_closed_form_discrepancy():
    rows = discrepancies()
    quantities = {(r["n"], r["quantity"]) for r in rows}
    ok = bool(rows) and all(abs(r["difference"]) == 1 for r in rows) and \
        {(2, "w11"), (2, "w12"), (3, "w11"), (3, "w12")} <= quantities
    report("10 closed-form discrepancy report", ok,
           ", ".join(f"n={r['n']} {r['quantity']}: measured {r['measured']} vs {r['closed_form']}" for r in rows))
    assert ok


if __name__ == "__main__":
    import sys

    q4, q6, q8 = (catalog.quadric_configuration(n) for n in (2, 3, 4))
    checks = [test_1_point_counts, test_2_line_counts, lambda: test_3_profiles(q6, q8),
              lambda: test_4_numeric_identities(q4, q6, q8), lambda: test_4_layer_identity_as_written(q6, q8),
              test_5_v_configurations, lambda: test_6_isomorphism_and_symmetry(q6),
              lambda: test_7_classification(q4, q6), lambda: test_8_reconstruction(q4, q6, q8),
              lambda: test_9_degree_ledger(q8), test_10_closed_form_discrepancy]
    failures = 0
    for check in checks:
        try:
            check()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
