"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""

import filecmp
import math
import random
import time
from itertools import product

import numpy as np
import pytest

from taucomp import catalog as C
from taucomp.cli import main
from taucomp.domain import Window
from taucomp.factor import enumerate_factorizations, factorization_classes, ufd_diagnostic
from taucomp.props import TRANSFER_LAWS, check, check_transfer, replay, violation
from taucomp.relations import FULL, Compose, ModN, TauDivides, enumerate_pairs, is_subset, matrix, same_on
from taucomp.suite import SuiteConfig, _cell, Checks, run_suite, table_cells

from oracles import multiplicative_partition_classes, ordered_factorizations


@pytest.fixture
def verdict(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


def test_1_gcd_theorem(verdict):
    start = time.perf_counter()
    bad = []
    for n, m in product(range(2, 31), repeat=2):
        w = Window(200, max(200, 3 * math.lcm(n, m)))
        target = matrix(ModN(math.gcd(n, m)), w)
        for use_crt in (False, True):
            if not np.array_equal(matrix(Compose(ModN(n), ModN(m), use_crt=use_crt), w), target):
                bad.append((n, m, use_crt))
    elapsed = time.perf_counter() - start
    verdict(1, not bad and elapsed < 30,
            f"modn(n) o modn(m) = modn(gcd) for 2 <= n, m <= 30 on B=200, both paths; "
            f"mismatches={bad} time={elapsed:.1f}s (< 30s)")


def test_2_divides_corollary(verdict):
    rng = random.Random(2024)
    pairs = set()
    while len(pairs) < 20:
        n = rng.randint(2, 15)
        pairs.add((n, n * rng.randint(1, 6)))
    w = Window(100, 300)
    bad = []
    for n, m in sorted(pairs):
        comp = Compose(ModN(m), ModN(n))
        claims = (is_subset(ModN(m), ModN(n), w), same_on(comp, ModN(n), w),
                  is_subset(ModN(math.lcm(n, m)), comp, w))
        if not all(claims):
            bad.append((n, m, claims))
    verdict(2, not bad, f"20 seeded pairs n | m on B=100, three claims each; failures={bad}")


def test_3_counterexamples_replay(verdict):
    w = Window(20, 40)
    results = {}
    part = Compose(C.PARTITION_1, C.PARTITION_2)
    results["partitions"] = part.holds(2, 5, w) and not part.holds(5, 2, w)
    pat = Compose(C.PATTERN_1, C.PATTERN_2)
    results["patterns"] = pat.holds(3, 2, w) and pat.holds(3, 5, w) and not pat.holds(3, 10, w)
    results["ideal mult_right (8,4,4)"] = violation(C.IDEAL, "mult_right", {"a": 8, "b": 4, "c": 4}, w)
    rep = check(C.IDEAL, "mult_right", w)
    results["ideal mult_right check replays"] = rep.fails and replay(C.IDEAL, rep, w)
    w64 = Window(64)
    results["ideal divisive (64,8,4)"] = violation(C.IDEAL, "divisive_left", {"a": 64, "b": 8, "a_div": 4}, w64)
    rep = check(C.IDEAL, "divisive", w64)
    results["ideal divisive check replays"] = rep.fails and replay(C.IDEAL, rep, w64)
    t1, t2 = C.plus_minus_pair(2)
    results["plus/minus 2"] = enumerate_pairs(Compose(t1, t2), w) == [(2, 2), (2, -2), (-2, 2), (-2, -2)]
    failed = [k for k, v in results.items() if not v]
    verdict(3, not failed, f"{len(results)} exact membership replays; failed={failed}")


def test_4_transfer_laws(verdict):
    w = Window(30, 60)
    instances = C.law_instances(w)
    contradictions, thin = [], []
    applied = 0
    for name in TRANSFER_LAWS:
        ok = 0
        for label, t1, t2 in instances[name]:
            rep = check_transfer(name, t1, t2, w)
            if rep.verdict == "fails":
                contradictions.append((name, label, rep.counterexample))
            ok += rep.verdict == "holds_on_window"
        applied += ok
        if ok < 3:
            thin.append(name)
    verdict(4, not contradictions and not thin,
            f"{len(TRANSFER_LAWS)} laws, {applied} applicable instances on B=30; "
            f"contradictions={contradictions} under-instantiated={thin}")


def test_5_tables(verdict):
    cfg = SuiteConfig(30, 60)
    bad = []
    cells = list(table_cells())
    for conclusion, l1, l2, printed in cells:
        ck = Checks()
        _cell(cfg, ck, conclusion, l1, l2, printed)
        if not ck.ok:
            bad.append((conclusion, l1, l2))
    negatives = sum(1 for *_, p in cells if not p)
    verdict(5, len(cells) == 27 and not bad,
            f"{len(cells)} cells ({negatives} negative, each by a replaying stored counterexample); failed={bad}")


def test_6_ufd_failure(verdict):
    w = Window(50, 100)
    entry = next(e for e in ufd_diagnostic(C.FUTURE_COMPOSED, w)["elements"] if e["element"] == 36)
    composed = [tuple(c["abs_multiset"]) for c in entry["classes"]]
    entry2 = next(e for e in ufd_diagnostic(C.SQUARES, w)["elements"] if e["element"] == 36)
    single = [tuple(c["abs_multiset"]) for c in entry2["classes"]]
    full = ufd_diagnostic(FULL, Window(100))
    multi = [e["element"] for e in full["elements"] if len(e["classes"]) != 1]
    ok = composed == [(4, 9), (6, 6)] and single == [(6, 6)] and not multi
    verdict(6, ok, f"36 composed classes={composed}, tau2 classes={single}, "
                   f"full elements without exactly one class={multi}")


def test_7_tau_divides(verdict):
    w = Window(30, 60)
    wide = w.widen()
    failures = []

    def td(t):
        return TauDivides(t, w)

    for t in (FULL, C.DIVISOR_CLOSED_6, C.plus_minus_all(2)):
        assert check(t, "divisive", wide).holds
        if not same_on(td(t), Compose(td(t), td(t)), w):
            failures.append(("divisive", t.describe()))
    for t in (ModN(3), C.IDEAL, ModN(4), C.CHAIN):
        assert check(t, "transitive", wide).holds
        sq = td(Compose(t, t))
        if not is_subset(sq, Compose(td(t), td(t)), w):
            failures.append(("transitive", t.describe()))
        if check(t, "reflexive", wide).holds and not is_subset(td(t), sq, w):
            failures.append(("reflexive+transitive", t.describe()))
    suite = run_suite(SuiteConfig(30, 60), only=["tau-divides-relation", "tau-divides-transfer",
                                                 "tau-divides-composition"])
    failures += [r.item_id for r in suite if r.status != "pass"]
    verdict(7, not failures, f"|_tau composition laws and tau-divide transfer on B=30; failures={failures}")


def _oracle_tuples(a: int) -> set:
    out = set()
    for t in ordered_factorizations(abs(a)):
        for signs in product((1, -1), repeat=len(t)):
            factors = tuple(s * f for s, f in zip(signs, t))
            out.add((a // math.prod(factors), factors))
    return out


def test_8_factorization_oracle(verdict):
    w = Window(1000)
    bad = []
    for k in range(2, 1001):
        for a in (k, -k):
            fs = enumerate_factorizations(a, FULL, w, min_length=1)
            if {(f.unit, f.factors) for f in fs} != _oracle_tuples(a) or len(fs) != len(set(fs)):
                bad.append(a)
        classes = {c.abs_multiset for c in factorization_classes(k, FULL, w, 1)}
        if classes != multiplicative_partition_classes(k):
            bad.append(("classes", k))
    verdict(8, not bad, f"full relation vs trial-division tuple oracle for 2 <= |a| <= 1000; mismatches={bad[:10]}")


def test_9_determinism(verdict, tmp_path, capsys):
    start = time.perf_counter()
    codes = [main(["paper-suite", "--out", str(tmp_path / d), "--seed", "0"]) for d in ("a", "b")]
    elapsed = (time.perf_counter() - start) / 2
    capsys.readouterr()
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    match, mismatch, errors = filecmp.cmpfiles(tmp_path / "a", tmp_path / "b", names, shallow=False)
    ok = codes == [0, 0] and not mismatch and not errors and elapsed < 60
    verdict(9, ok, f"two full suite runs, {len(match)} byte-identical files, exit codes={codes}, "
                   f"mismatched={mismatch + errors}, time per run={elapsed:.1f}s (< 60s)")
