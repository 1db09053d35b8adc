"""Acceptance criteria, one test each. Every comparison is exact.

Each test records a single ``criterion N: PASS|FAIL`` line; pytest prints
them all in an "acceptance criteria" section at the end of the run.
"""

from __future__ import annotations

import random
import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import LINES  # noqa: E402
from oracles import decimal_cf, random_forms, random_surd_pqd  # noqa: E402
from walks import river_in_ball  # noqa: E402

from qriver.cfrac import cf_of_surd  # noqa: E402
from qriver.concord import align, theorem_evidence  # noqa: E402
from qriver.exact import QuadraticSurd  # noqa: E402
from qriver.forms import BinaryQuadraticForm, transform  # noqa: E402
from qriver.lattice import SWAP, UnimodularMap  # noqa: E402
from qriver.sail import brute_sail, certified_core, dual_check, sail_vertices_beyond  # noqa: E402
from qriver.topograph import (  # noqa: E402
    TopographEdge,
    check_ap_rule,
    edge_superbases,
    is_simple_path,
    lax,
    river,
    river_oracle,
    river_segment,
    turn_runs,
)

DISC24 = BinaryQuadraticForm(1, -2, -5)
DISC12 = BinaryQuadraticForm(11, -10, 2)
GOLDEN = BinaryQuadraticForm(1, 1, -1)


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES.append(line)
    print(line)
    assert ok, line


def _alternates(runs, x, y) -> bool:
    return len(runs) >= 2 and {runs[0], runs[1]} == {x, y} and all(r == runs[i % 2] for i, r in enumerate(runs))


# -- shared suites (criterion 7 re-reads what they touched) --------------------


@lru_cache(maxsize=None)
def theorem_suite():
    forms = random_forms(random.Random(4), 500, 30)
    return [(f, theorem_evidence(f, 8)) for f in forms]


@lru_cache(maxsize=None)
def sail_suite():
    out = []
    for form in random_forms(random.Random(5), 100, 20):
        radius = 40
        brute = certified_core(brute_sail(form, radius), radius // 2)
        built = certified_core(sail_vertices_beyond(form, radius), radius // 2)
        out.append((form, brute, built))
    return out


@lru_cache(maxsize=None)
def river_suite():
    out = []
    for form in random_forms(random.Random(6), 100, 20):
        oracle = river_oracle(form, 12)
        path, inside = river_in_ball(form, 12)
        out.append((form, oracle, path, inside))
    return out


def oracle_turn_runs(form, depth):
    """Order the oracle's sign-separating edges into a path and read its turns.

    Only integer evaluation and superbase incidence are used here; the river
    walker is not involved.
    """
    keys = river_oracle(form, depth)
    touching = {}
    for k in keys:
        for sb in edge_superbases(k):
            touching.setdefault(sb, []).append(k)
    ends = [k for k in keys if any(len(touching[sb]) == 1 for sb in edge_superbases(k))]
    chain, seen = [ends[0]], {ends[0]}
    while True:
        nxt = [n for sb in edge_superbases(chain[-1]) for n in touching[sb] if n not in seen]
        if not nxt:
            break
        chain.append(nxt[0])
        seen.add(nxt[0])
    turns = []
    for a, b in zip(chain, chain[1:]):
        u, v = sorted(a)
        e = TopographEdge.between(u, v)
        shared = set(edge_superbases(a)) & set(edge_superbases(b))
        if e.ahead_superbase() not in shared:
            e = e.reversed()
        # the two edges share exactly one face: the one kept through the turn
        kept = a & b
        turns.append("L" if lax(e.left) in kept else "R")
    return chain, "".join(turns)


# -- criteria ------------------------------------------------------------------


def test_criterion_1_disc24_example():
    ev = theorem_evidence(DISC24, 8)
    interior = ev.runs[1:-1]
    lls = list(ev.lls.terms)
    turns = river(DISC24, 24).turns
    ok = ev.report.matched and _alternates(interior, 4, 2) and _alternates(lls, 4, 2) and "LLLLRRLLLLRR" in turns
    report(1, ok, f"runs {interior} vs LLS {lls}, matched={ev.report.matched}")


def test_criterion_2_disc12_example():
    _, turns = oracle_turn_runs(DISC12, 12)
    oracle_runs = turn_runs(turns)[1:-1]
    ev = theorem_evidence(DISC12, 8)
    walked = ev.runs[1:-1]
    # period derived from the oracle and pinned: runs alternate 1, 2
    ok = (
        _alternates(oracle_runs, 1, 2)
        and len(oracle_runs) >= 4
        and _alternates(walked, 1, 2)
        and ev.report.matched
    )
    report(2, ok, f"oracle runs {oracle_runs}, river runs {walked}, matched={ev.report.matched}")


def test_criterion_3_golden_case():
    ev = theorem_evidence(GOLDEN, 8)
    turns = river(GOLDEN, 16).turns
    ok = set(ev.lls.terms) == {1} and turns in ("LR" * 8, "RL" * 8) and ev.report.matched
    report(3, ok, f"LLS {list(ev.lls.terms)}, turns {turns}")


def test_criterion_4_theorem_suite():
    suite = theorem_suite()
    bad = [f for f, ev in suite if not (ev.report.matched and ev.report.compared_length >= 4)]
    report(4, not bad, f"{len(suite) - len(bad)}/{len(suite)} forms matched" + (f", first failure {bad[0]}" if bad else ""))


def test_criterion_5_sail_oracle():
    suite = sail_suite()
    bad = [f for f, brute, built in suite if brute != built]
    nonempty = sum(1 for _, brute, _ in suite if brute)
    ok = not bad and nonempty >= 50
    report(5, ok, f"{len(suite) - len(bad)}/{len(suite)} certified cores equal, {nonempty} nonempty")


def test_criterion_6_river_oracle():
    suite = river_suite()
    bad = [f for f, oracle, _, inside in suite if set(inside) != oracle or not is_simple_path(oracle)]
    report(6, not bad, f"{len(suite) - len(bad)}/{len(suite)} oracle sets equal the walked river and are simple paths")


def test_criterion_7_ap_rule():
    checked = 0
    for form, ev in theorem_suite():
        for e in ev.river.edges:
            check_ap_rule(form, e.left, e.right)
            checked += 1
    for form, brute, _ in sail_suite():
        for prev, v, nxt in brute:
            check_ap_rule(form, prev, v)
            check_ap_rule(form, v, nxt)
            checked += 2
    for form, _, path, _ in river_suite():
        for e in path.edges:
            check_ap_rule(form, e.left, e.right)
            checked += 1
    report(7, checked > 0, f"{checked} edges satisfy Q(u+v)+Q(u-v) = 2(Q(u)+Q(v))")


def test_criterion_8_duality():
    forms = random_forms(random.Random(8), 100, 20)
    results = [dual_check(f, 2) for f in forms]
    bad = [(f, r) for f, r in zip(forms, results) if not (r.passed and r.checked == 4)]
    report(8, not bad, f"{len(forms) - len(bad)}/{len(forms)} forms pass on 4 indices")


def test_criterion_9_group_invariance():
    rng = random.Random(9)
    gens = [UnimodularMap(1, 1, 0, 1), UnimodularMap(1, -1, 0, 1), UnimodularMap(0, -1, 1, 0), SWAP]
    bad = []
    forms = random_forms(rng, 50, 20)
    for form in forms:
        m = UnimodularMap.identity()
        for _ in range(rng.randint(1, 5)):
            m = m @ rng.choice(gens)
        base = turn_runs(river_segment(form, 200, 200).turns)[1:-1]
        moved = turn_runs(river_segment(transform(form, m), 100, 100).turns)
        if not align(base, moved).matched:
            bad.append((form, m))
    report(9, not bad, f"{len(forms) - len(bad)}/{len(forms)} transformed rivers match up to shift/reversal")


def test_criterion_10_cf_correctness():
    rng = random.Random(10)
    bad = []
    for _ in range(200):
        p, q, d = random_surd_pqd(rng)
        if cf_of_surd(QuadraticSurd.from_pqd(p, q, d)).terms(40) != decimal_cf(p, q, d, 40, prec=600):
            bad.append((p, q, d))
    pinned = [
        (QuadraticSurd.sqrt(2), "[1; (2)]"),
        (1 + QuadraticSurd.sqrt(6), "[3; (2, 4)]"),
        (QuadraticSurd.from_pqd(1, 2, 5), "[(1)]"),
    ]
    wrong = [str(s) for s, text in pinned if str(cf_of_surd(s)) != text]
    report(10, not bad and not wrong, f"{200 - len(bad)}/200 random surds agree on 40 terms, pinned {3 - len(wrong)}/3")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:warnings"]))
