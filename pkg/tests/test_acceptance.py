"""Acceptance criteria 1-10, each with its tolerance (exact) and time limit."""

import itertools
import time

from conftest import B3
from ordercalc.braid import burau_trivial, sigma_classify
from ordercalc.conradian import nonconradian_witness_check, replay_certificate, soul_approximation
from ordercalc.crossings import (
    crossing_from_nonconradian,
    nonconradian_from_crossing,
    search_crossings,
    to_reinforced,
    verify_crossing,
    verify_reinforced,
)
from ordercalc.order_space import (
    klein_enumeration,
    primero_perturbation,
    recheck_evidence,
    refined_crossing_below,
    convex_subgroup_experiment,
    rigidity_experiment,
)
from ordercalc.orderings import (
    DD,
    EXOTIC_C,
    GEN_Y,
    KLEIN_CONES,
    Dehornoy,
    Sign,
    ball,
    compare,
    is_positive,
    less,
)
from ordercalc.words import FREE2, Word, parse_word


def F(s):
    return parse_word(s, FREE2)


def test_c01_word_problem_oracle_agreement(criterion):
    t = time.perf_counter()
    count = mismatches = 0
    for n in range(8):
        for letters in itertools.product((1, -1, 2, -2), repeat=n):
            w = Word.of(B3, letters)
            count += 1
            mismatches += (sigma_classify(w).kind == "trivial") != burau_trivial(w)
    dt = time.perf_counter() - t
    criterion(1, mismatches == 0, dt, 60, f"{count} B3 words of length <= 7, {mismatches} mismatches")
    assert mismatches == 0 and dt < 60


def _axioms(ord):
    b3 = ball(ord.tag, 3)
    for w in b3:
        s = is_positive(ord, w)
        if (s == Sign.ZERO) != w.is_identity() or is_positive(ord, ~w) != -s:
            return f"trichotomy fails at {w}"
    b2 = ball(ord.tag, 2)
    lt = {(u, v): less(ord, u, v) for u in b2 for v in b2}
    for u, v, x in itertools.product(b2, repeat=3):
        if lt[u, v] and lt[v, x] and not lt[u, x]:
            return f"transitivity fails at {u}, {v}, {x}"
    pos = [w for w in b3 if is_positive(ord, w) == Sign.POSITIVE]
    for u, v in itertools.product(pos, repeat=2):
        if is_positive(ord, u * v) != Sign.POSITIVE:
            return f"cone not closed at {u}, {v}"
    return None


def test_c02_order_axioms(criterion):
    t = time.perf_counter()
    failures = {str(o): _axioms(o) for o in (Dehornoy(3), DD(3), EXOTIC_C, *KLEIN_CONES)}
    bad = {k: v for k, v in failures.items() if v}
    dt = time.perf_counter() - t
    criterion(2, not bad, dt, 60, f"{len(failures)} orderings, failures: {bad or 'none'}")
    assert not bad and dt < 60


def test_c03_least_positive(criterion):
    t = time.perf_counter()
    pos = [g for g in ball(FREE2, 3) if is_positive(EXOTIC_C, g) == Sign.POSITIVE]
    below = [g for g in pos if compare(EXOTIC_C, F("Y"), g) == Sign.NEGATIVE]
    dt = time.perf_counter() - t
    criterion(3, not below, dt, 10, f"{len(pos)} positives in the F2 ball(3), {len(below)} below y^-1")
    assert not below and dt < 10


def test_c04_witness_crossing_round_trip(criterion):
    t = time.perf_counter()
    f, g = F("Y"), F("x")
    witness_ok = nonconradian_witness_check(EXOTIC_C, f, g, 25)
    c = crossing_from_nonconradian(EXOTIC_C, f, g)
    report = verify_crossing(EXOTIC_C, c, 25)
    pair = nonconradian_from_crossing(EXOTIC_C, c, 25)
    # re-derive the 25 defect inequalities independently of the constructor
    defects = all(less(EXOTIC_C, pair.h * pair.h_bar**n, pair.h_bar) for n in range(1, 26))
    ok = witness_ok and report.to_json() == {"status": "verified_up_to", "n": 25} and pair.n_checked == 25 and defects
    dt = time.perf_counter() - t
    criterion(4, ok, dt, 5, f"candidate {c.to_json()} {report}; pair h={pair.h}, h_bar={pair.h_bar}")
    assert ok and dt < 5


def test_c05_reinforced_conversion(criterion):
    t = time.perf_counter()
    found = search_crossings(EXOTIC_C, 3, 4, 4, 10, limit=20)
    statuses = [verify_reinforced(EXOTIC_C, to_reinforced(c)).status for c, _ in found]
    ok = bool(found) and all(s == "exact_verified" for s in statuses)
    dt = time.perf_counter() - t
    criterion(5, ok, dt, 120, f"{len(found)} crossings found, {statuses.count('exact_verified')} reinforced exact")
    assert ok and dt < 120


def test_c06_rigidity(criterion):
    t = time.perf_counter()
    report = rigidity_experiment(3, 3)
    ok = report.passed and recheck_evidence(report)
    in_y = sum(r["input"]["in_gen_y"] for r in report.evidence)
    dt = time.perf_counter() - t
    criterion(6, ok, dt, 120, f"{len(report.evidence)} conjugators, {in_y} in <y>, verdict {report.verdict}")
    assert ok and dt < 120


def test_c07_convex_subgroup(criterion):
    t = time.perf_counter()
    report = convex_subgroup_experiment(3)
    rows = [r for r in report.evidence if "beta" in r["input"]]
    ok = report.passed and bool(rows) and recheck_evidence(report)
    dt = time.perf_counter() - t
    criterion(7, ok, dt, 60, f"{len(rows)} 1-positive elements checked, verdict {report.verdict}")
    assert ok and dt < 60


def test_c08_klein(criterion):
    t = time.perf_counter()
    report = klein_enumeration(5)
    checks = [r["checks"] for r in report.evidence]
    ok = (
        report.passed
        and report.summary["count"] == 4
        and all(c.get("no_n2_violation", True) and c.get("no_crossing", True) for c in checks)
    )
    dt = time.perf_counter() - t
    criterion(8, ok, dt, 60, f"{report.summary['count']} distinct fingerprints, verdict {report.verdict}")
    assert ok and dt < 60


def test_c09_soul(criterion):
    t = time.perf_counter()
    soul = soul_approximation(EXOTIC_C, 2, (3, 4, 4, 10))
    y_part = [w for w in ball(FREE2, 2) if w in GEN_Y]
    retained_all_y = all(w in soul.retained for w in y_part)
    x_out = F("x") in soul.excluded and F("X") in soul.excluded
    replays = all(replay_certificate(EXOTIC_C, h, c, 10) for h, c in soul.excluded.items())
    ok = retained_all_y and x_out and replays
    dt = time.perf_counter() - t
    criterion(
        9, ok, dt, 180,
        f"retained {[str(w) for w in soul.retained]}, {len(soul.excluded)} excluded, certificates replay: {replays}",
    )
    assert ok and dt < 180


def test_c10_primero(criterion):
    t = time.perf_counter()
    c = refined_crossing_below(EXOTIC_C, F("xxx"))
    bound = 25 - (c.M + c.N)
    report = primero_perturbation(EXOTIC_C, c, [F("xxx"), F("xxxx")], bound)
    comparisons = sum(len(r["comparisons"]) for r in report.evidence)
    ok = report.passed and recheck_evidence(report)
    dt = time.perf_counter() - t
    criterion(10, ok, dt, 30, f"crossing {c.to_json()}, {comparisons} comparisons, verdict {report.verdict}")
    assert ok and dt < 30
