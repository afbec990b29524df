"""The reproduction suite: one item per proposition, example, table or counterexample.

Each item runs a list of named checks and passes iff every check observes
its expected value.  Items are pure functions of a :class:`SuiteConfig`.
"""

from __future__ import annotations

import json
import math
import os
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import catalog as C
from .domain import Window, crt_witness
from .factor import (
    FactorizationClass, enumerate_factorizations, factorization_classes,
    is_tau_atom, is_tau_prime, tau_prime_counterexample, ufd_diagnostic,
)
from .props import check, check_transfer, replay, violation
from .relations import (
    EMPTY, FULL, Compose, Extensional, IdentityOn, Inverse, ModN, Relation, TauDivides,
    coimage, enumerate_pairs, image, inverse_of, is_subset, matrix, same_on,
)
from .search import RelationSampler, search_counterexample

PASS, FAIL, NOT_APPLICABLE, ERROR = "pass", "fail", "not-applicable", "error"

# Every in-scope topic of the reproduction; each must be covered by at least one item.
TOPICS = (
    "composition-definition",
    "inverse-identity-image-coimage",
    "tau-factorization-definition",
    "lateral-properties",
    "ideal-containment-example",
    "plus-minus-p-example",
    "reflexive-transfer",
    "equivalence-partition-example",
    "divisive-transfer",
    "divisive-tables",
    "multiplicative-counterexample",
    "shared-witness-properties",
    "multiplicative-transfer",
    "square-laws",
    "subset-transitivity",
    "subset-equivalence-order",
    "subset-multiplicative-counterexamples",
    "modn-family",
    "modn-gcd-composition",
    "modn-divides-corollary",
    "tau-divides-relation",
    "tau-divides-transfer",
    "tau-divides-composition",
    "composed-ufd-failure",
)


@dataclass(frozen=True)
class SuiteConfig:
    bound: int = 50
    witness_bound: int = 600
    seed: int = 0

    def __post_init__(self):
        Window(self.bound, self.witness_bound)

    @property
    def window(self) -> Window:
        return Window(self.bound, self.witness_bound)

    @property
    def law_window(self) -> Window:
        """Transfer laws check factor hypotheses over the witness range, so it is kept at 2B."""
        return Window(self.bound, min(self.witness_bound, 2 * self.bound))

    @property
    def factor_window(self) -> Window:
        b = min(self.bound, 30)
        return Window(b, min(self.witness_bound, 2 * b))


class Checks:
    """Accumulates named expectations for one item."""

    def __init__(self):
        self.rows: list[dict] = []

    def expect(self, name: str, observed, expected=True, **detail) -> bool:
        ok = observed == expected
        row = {"check": name, "observed": observed, "expected": expected, "ok": ok}
        row.update(detail)
        self.rows.append(row)
        return ok

    def report(self, name: str, rep, expected_verdict: str, replays: bool | None = None) -> bool:
        detail = {"report": rep.to_dict()}
        ok = self.expect(name, rep.verdict, expected_verdict, **detail)
        if replays is not None and rep.counterexample is not None:
            ok &= self.expect(f"{name}: counterexample replays", replays)
        return ok

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.rows)


@dataclass(frozen=True)
class SuiteItem:
    id: str
    anchor: str
    topics: tuple[str, ...]
    run: Callable[[SuiteConfig, Checks], None]


@dataclass
class SuiteResult:
    item_id: str
    status: str
    anchor: str
    topics: tuple[str, ...]
    report: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "status": self.status,
            "anchor": self.anchor,
            "topics": list(self.topics),
            "report": self.report,
        }


ITEMS: list[SuiteItem] = []


def item(id: str, anchor: str, *topics: str):
    def deco(fn):
        ITEMS.append(SuiteItem(id, anchor, tuple(topics), fn))
        return fn
    return deco


def _pairs(R: Relation, window: Window) -> list[list[int]]:
    return [list(p) for p in enumerate_pairs(R, window)]


def _laws(cfg: SuiteConfig, ck: Checks, names: list[str], min_instances: int = 3):
    w = cfg.law_window
    instances = C.law_instances(w)
    for name in names:
        applicable = 0
        for label, t1, t2 in instances[name]:
            rep = check_transfer(name, t1, t2, w)
            applicable += rep.verdict != "not_applicable"
            ck.expect(f"{name} on {label}: no contradiction", rep.verdict != "fails", report=rep.to_dict())
        ck.expect(f"{name}: applicable instances >= {min_instances}", applicable >= min_instances,
                  applicable=applicable)


# ---------------------------------------------------------------- composition basics

@item("composition-basics", "composition, inverse, identity, image and coimage containments",
      "composition-definition", "inverse-identity-image-coimage")
def _composition_basics(cfg, ck):
    w = Window(min(cfg.bound, 30), min(cfg.witness_bound, 60))
    comp = Compose(Extensional([(3, 5)]), Extensional([(2, 3)]))
    ck.expect("witness c=3 links 2 R2 3 and 3 R1 5", comp.holds(2, 5, w))
    ck.expect("witness reported", comp.witness(2, 5, w), 3)
    ck.expect("no reversed composition", comp.holds(5, 2, w), False)
    rels = [ModN(3), C.IDEAL, C.PARTITION_1, C.LEFT_DIVISIVE, Extensional([(2, 3), (5, 7), (3, 3)]), C.PATTERN_1]
    for r1 in rels:
        for r2 in rels:
            c = Compose(r1, r2)
            tag = f"{r1.describe()} o {r2.describe()}"
            ck.expect(f"Coim(c) <= Coim(R2): {tag}", set(coimage(c, w)) <= set(coimage(r2, w.widen())))
            ck.expect(f"Im(c) <= Im(R1): {tag}", set(image(c, w)) <= set(image(r1, w.widen())))
            ck.expect(f"inverse reverses order: {tag}",
                      same_on(Inverse(c), Compose(inverse_of(r2), inverse_of(r1)), w))
        r = r1
        ww = w.widen()
        tag = r.describe()
        ck.expect(f"id_Im <= R o R^-1: {tag}", is_subset(IdentityOn(image(r, ww)), Compose(r, inverse_of(r)), w))
        ck.expect(f"id_Coim <= R^-1 o R: {tag}", is_subset(IdentityOn(coimage(r, ww)), Compose(inverse_of(r), r), w))
        ck.expect(f"Coim(R) = Im(R^-1): {tag}", coimage(r, w) == image(inverse_of(r), w))
        ck.expect(f"identity is neutral: {tag}", same_on(Compose(r, C.IDENTITY), r, w) and same_on(Compose(C.IDENTITY, r), r, w))


@item("tau-factorization-definition", "tau-factorizations: pairwise relatedness of all ordered distinct factors",
      "tau-factorization-definition")
def _factorization_definition(cfg, ck):
    w = cfg.factor_window
    for tau in (FULL, ModN(2), C.DIVISOR_CLOSED_6, C.IDEAL, C.LEFT_DIVISIVE):
        bad = [fz.to_dict() for a in w.elements.tolist()
               for fz in enumerate_factorizations(a, tau, w, 1) if not fz.is_valid(tau, w)]
        ck.expect(f"every emitted factorization re-verifies under {tau.describe()}", bad, [])
    ck.expect("12 under modn(2): classes", [c.to_dict() for c in factorization_classes(12, ModN(2), w)],
              [{"n": 2, "abs_multiset": [2, 6]}])
    ck.expect("36 under {2,3,6}x{2,3,6}: classes",
              [c.to_dict() for c in factorization_classes(36, C.DIVISOR_CLOSED_6, w)],
              [{"n": 2, "abs_multiset": [6, 6]}, {"n": 3, "abs_multiset": [2, 3, 6]},
               {"n": 4, "abs_multiset": [2, 2, 3, 3]}])
    # a one-directional relation never links two factors
    ck.expect("left-divisive {(+-2, 4)} gives no 8 = 2*4", factorization_classes(8, C.LEFT_DIVISIVE, w), [])
    ck.expect("7 is an atom under full", is_tau_atom(7, FULL, w))
    ck.expect("2 is a prime under full", is_tau_prime(2, FULL, w))
    cx = tau_prime_counterexample(4, FULL, w)
    ck.expect("4 is not a prime under full", cx is not None,
              witness=None if cx is None else {"b": cx[0], "factorization": cx[1].to_dict()})


# ---------------------------------------------------------------- lateral properties and examples

@item("lateral-properties", "lateral divisive, associate-preserving and multiplicative relations",
      "lateral-properties")
def _lateral(cfg, ck):
    w = cfg.window
    ck.report("modn(2) multiplicative", check(ModN(2), "multiplicative", w), "holds_on_window")
    ck.report("modn(2) assoc_pres", check(ModN(2), "assoc_pres", w), "holds_on_window")
    rep = check(ModN(3), "divisive_left", w)
    ck.report("modn(3) divisive_left", rep, "fails", replay(ModN(3), rep, w))
    ck.report("full divisive", check(FULL, "divisive", w), "holds_on_window")
    ck.report("empty divisive", check(EMPTY, "divisive", w), "holds_on_window")
    ck.report("left-divisive sample", check(C.LEFT_DIVISIVE, "divisive_left", w), "holds_on_window")
    rep = check(C.LEFT_DIVISIVE, "divisive_right", w)
    ck.report("left-divisive sample not right divisive", rep, "fails", replay(C.LEFT_DIVISIVE, rep, w))


@item("example-ideal-containment", "ideal containment relation on the integers",
      "ideal-containment-example", "lateral-properties")
def _ideal(cfg, ck):
    w = Window(min(cfg.bound, 20), cfg.witness_bound)
    R = C.IDEAL
    for prop in ("reflexive", "transitive", "divisive_right", "assoc_pres", "mult_left"):
        ck.report(f"ideal {prop}", check(R, prop, w), "holds_on_window")
    rep = check(R, "antisymmetric", w)
    ck.report("ideal antisymmetric fails on associates", rep, "fails", replay(R, rep, w))
    ck.expect("antisymmetry counterexample", rep.counterexample, {"component": "antisymmetric", "a": 2, "b": -2})
    rep = check(R, "partial_order", w)
    ck.report("ideal partial_order fails on associates", rep, "fails", replay(R, rep, w))
    rep = check(R, "mult_right", w)
    ck.report("ideal mult_right", rep, "fails", replay(R, rep, w))
    ck.expect("(8,4,4) violates mult_right", violation(R, "mult_right", {"a": 8, "b": 4, "c": 4}, w))
    rep = check(R, "divisive", w)
    ck.report("ideal divisive", rep, "fails", replay(R, rep, w))
    # integer analogue of the polynomial note: 64 tau 8, 4 | 8 and 4 | 64, yet (4, 8), (4, 64) unrelated
    ck.expect("(64, 8, 4) violates divisive_left", violation(R, "divisive_left", {"a": 64, "b": 8, "a_div": 4}, w))
    ck.expect("(4, 8) not related", R.holds(4, 8, w), False)
    ck.expect("not total: (2,3) and (3,2) both unrelated", R.holds(2, 3, w) or R.holds(3, 2, w), False)


@item("example-plus-minus-p", "the plus/minus p example: neither factor symmetric, composition divisive",
      "plus-minus-p-example", "lateral-properties")
def _plus_minus(cfg, ck):
    w = cfg.window
    for p in (2, 3, 5):
        t1, t2 = C.plus_minus_pair(p)
        comp = Compose(t1, t2)
        ck.expect(f"p={p}: composition = {{(+-p, +-p)}}", _pairs(comp, w), _pairs(C.plus_minus_all(p), w))
        ck.report(f"p={p}: composition symmetric", check(comp, "symmetric", w), "holds_on_window")
        ck.report(f"p={p}: composition divisive", check(comp, "divisive", w), "holds_on_window")
        for name, t in (("tau1", t1), ("tau2", t2)):
            rep = check(t, "symmetric", w)
            ck.report(f"p={p}: {name} not symmetric", rep, "fails", replay(t, rep, w))
        ck.report(f"p={p}: tau1 divisive_right", check(t1, "divisive_right", w), "holds_on_window")
        rep = check(t1, "divisive_left", w)
        ck.report(f"p={p}: tau1 not divisive_left", rep, "fails", replay(t1, rep, w))
        ck.report(f"p={p}: tau2 divisive_left", check(t2, "divisive_left", w), "holds_on_window")
        same = C.plus_minus_all(p)
        ck.expect(f"p={p}: tau o tau for tau = {{(+-p, +-p)}} is the same set",
                  _pairs(Compose(same, same), w), _pairs(same, w))


@item("example-partitions", "two partition equivalences whose composition is not an equivalence",
      "equivalence-partition-example")
def _partitions(cfg, ck):
    w = cfg.window
    t1, t2 = C.PARTITION_1, C.PARTITION_2
    comp = Compose(t1, t2)
    ck.report("tau1 equivalence", check(t1, "equivalence", w.widen()), "holds_on_window")
    ck.report("tau2 equivalence", check(t2, "equivalence", w.widen()), "holds_on_window")
    ck.expect("(2,5) related", comp.holds(2, 5, w))
    ck.expect("(2,5) witness", comp.witness(2, 5, w), 3)
    ck.expect("(5,2) not related", comp.holds(5, 2, w), False)
    rep = check(comp, "equivalence", w)
    ck.report("composition not an equivalence", rep, "fails", replay(comp, rep, w))
    rep = check(comp, "symmetric", w)
    ck.report("composition not symmetric", rep, "fails", replay(comp, rep, w))


# ---------------------------------------------------------------- transfer laws

@item("reflexive-transfer", "reflexive factors: containments and reflexive compositions", "reflexive-transfer")
def _reflexive(cfg, ck):
    _laws(cfg, ck, ["reflexive_left", "reflexive_right", "reflexive_both"])


@item("divisive-transfer", "lateral divisibility of a composition from its factors", "divisive-transfer")
def _divisive(cfg, ck):
    _laws(cfg, ck, ["divisive_left", "divisive_right", "divisive_mixed", "divisive_both"])


@item("multiplicative-transfer", "multiplicative compositions under the shared-witness properties",
      "multiplicative-transfer", "shared-witness-properties")
def _multiplicative(cfg, ck):
    _laws(cfg, ck, ["multiplicative_left", "multiplicative_right"])
    w = cfg.law_window
    t1, t2 = C.PATTERN_1, C.PATTERN_2
    # the stored pattern pair has no shared witness for (3, 2), (3, 5)
    rep = check(Compose(t1, t2), "property2", w)
    ck.report("pattern composition lacks the right shared-witness property", rep, "fails",
              replay(Compose(t1, t2), rep, w))
    ck.report("empty composition: property1 vacuous", check(Compose(EMPTY, FULL), "property1", w), "holds_on_window")


@item("square-laws", "reflexive, symmetric, transitive, equivalence and order squares", "square-laws")
def _squares(cfg, ck):
    _laws(cfg, ck, ["square_reflexive", "square_symmetric", "square_transitive",
                    "square_equivalence", "square_partial_order"])
    w = cfg.window
    sq = Compose(ModN(4), ModN(4))
    for prop in ("reflexive", "symmetric", "transitive", "equivalence"):
        ck.report(f"modn(4)^2 {prop}", check(sq, prop, w), "holds_on_window")


@item("subset-transitivity", "composition with a subrelation of a transitive relation",
      "subset-transitivity")
def _subset_transitive(cfg, ck):
    _laws(cfg, ck, ["subset_transitive", "subset_transitive_left", "subset_transitive_right"])
    w = Window(min(cfg.bound, 30), cfg.witness_bound)
    ck.expect("identity o ideal <= ideal", is_subset(Compose(C.IDENTITY, C.IDEAL), C.IDEAL, w))


@item("subset-equivalence-order", "composition with a reflexive subrelation of an equivalence or order",
      "subset-equivalence-order")
def _subset_eq(cfg, ck):
    _laws(cfg, ck, ["subset_equivalence", "subset_partial_order"])


@item("example-subset-multiplicative", "subrelations of multiplicative relations: no transfer of multiplicativity",
      "subset-multiplicative-counterexamples")
def _subset_mult(cfg, ck):
    w = cfg.window
    t1, t2 = C.subset_mult_left_pair(w)
    comp = Compose(t1, t2)
    ck.expect("tau1 <= tau2", is_subset(t1, t2, w.widen()))
    ck.report("tau1 mult_left", check(t1, "mult_left", w), "holds_on_window")
    ck.expect("composition equals tau2 on the window", same_on(comp, t2, w))
    rep = check(comp, "mult_left", w)
    ck.report("composition not mult_left", rep, "fails", replay(comp, rep, w))
    ck.expect("(2,2),(3,2) related but (6,2) not", [comp.holds(2, 2, w), comp.holds(3, 2, w), comp.holds(6, 2, w)],
              [True, True, False])
    t1, t2 = C.subset_mult_right_pair(w)
    comp = Compose(t1, t2)
    ck.expect("tau1 <= tau2 (right)", is_subset(t1, t2, w.widen()))
    ck.report("tau2 mult_right", check(t2, "mult_right", w), "holds_on_window")
    ck.expect("composition equals tau1 on the window", same_on(comp, t1, w))
    rep = check(comp, "mult_right", w)
    ck.report("composition not mult_right", rep, "fails", replay(comp, rep, w))
    ck.expect("counterexample (2,2,2)", rep.counterexample, {"component": "mult_right", "a": 2, "b": 2, "c": 2})


@item("example-multiplicative", "two multiplicative pattern relations with a non multiplicative composition",
      "multiplicative-counterexample")
def _mult_example(cfg, ck):
    w = cfg.window
    t1, t2 = C.PATTERN_1, C.PATTERN_2
    for name, t in (("tau1", t1), ("tau2", t2)):
        ck.report(f"{name} multiplicative", check(t, "multiplicative", w.widen()), "holds_on_window")
    c12, c21 = Compose(t1, t2), Compose(t2, t1)
    ck.expect("tau1 o tau2 closed form", same_on(c12, C.PATTERN_12, w))
    ck.expect("tau2 o tau1 closed form", same_on(c21, C.PATTERN_21, w))
    ck.expect("(3,2), (3,5) in tau1 o tau2; (3,10) not",
              [c12.holds(3, 2, w), c12.holds(3, 5, w), c12.holds(3, 10, w)], [True, True, False])
    ck.expect("(2,3), (5,3) in tau2 o tau1; (10,3) not",
              [c21.holds(2, 3, w), c21.holds(5, 3, w), c21.holds(10, 3, w)], [True, True, False])
    rep = check(c12, "mult_right", w)
    ck.report("tau1 o tau2 not mult_right", rep, "fails", replay(c12, rep, w))
    ck.expect("(3,2,5) violates mult_right", violation(c12, "mult_right", {"a": 3, "b": 2, "c": 5}, w))
    rep = check(c21, "mult_left", w)
    ck.report("tau2 o tau1 not mult_left", rep, "fails", replay(c21, rep, w))
    ck.expect("(2,5,3) violates mult_left", violation(c21, "mult_left", {"a": 2, "b": 5, "c": 3}, w))


@item("non-transfer-classical", "classical properties that do not pass to compositions",
      "equivalence-partition-example", "multiplicative-counterexample")
def _non_transfer(cfg, ck):
    w = cfg.window
    t1, t2 = C.TRANSITIVE_PAIR
    comp = Compose(t1, t2)
    for name, t in (("tau1", t1), ("tau2", t2)):
        ck.report(f"{name} transitive", check(t, "transitive", w.widen()), "holds_on_window")
    ck.expect("composition pairs", _pairs(comp, w), [[2, 5], [5, 11]])
    rep = check(comp, "transitive", w)
    ck.report("composition not transitive", rep, "fails", replay(comp, rep, w))
    t1, t2 = C.plus_minus_pair(2)
    ck.report("symmetric composition from non symmetric factors",
              check(Compose(t1, t2), "symmetric", w), "holds_on_window")
    # symmetric factors, non symmetric composition
    s1, s2 = Extensional([(3, 5), (5, 3)]), Extensional([(2, 3), (3, 2)])
    comp = Compose(s1, s2)
    rep = check(comp, "symmetric", w)
    ck.report("symmetric factors, composition not symmetric", rep, "fails", replay(comp, rep, w))


# ---------------------------------------------------------------- divisive tables

LATERAL = {"D": "divisive", "L": "divisive_left", "R": "divisive_right"}
_ORDER = ("D", "L", "R")
_Y, _N = True, False
# Cells as printed: rows and columns both in the order D, L, R.
TABLES = {
    "divisive": {"rows": "tau2", "cols": "tau1", "cells": ((_Y, _N, _Y), (_Y, _N, _Y), (_N, _N, _N))},
    "divisive_left": {"rows": "tau1", "cols": "tau2", "cells": ((_Y, _Y, _N), (_Y, _Y, _N), (_Y, _Y, _N))},
    "divisive_right": {"rows": "tau1", "cols": "tau2", "cells": ((_Y, _Y, _Y), (_N, _N, _N), (_Y, _Y, _Y))},
}


def _has(label: str, side: str) -> bool:
    return label == "D" or label == side


def predicted(conclusion: str, l1: str, l2: str) -> bool:
    """What the lateral transfer laws predict for tau1 with ``l1`` and tau2 with ``l2``."""
    left = _has(l2, "L")
    right = _has(l1, "R")
    return {"divisive_left": left, "divisive_right": right, "divisive": left and right}[conclusion]


def table_cells():
    for conclusion, t in TABLES.items():
        for i, r in enumerate(_ORDER):
            for j, c in enumerate(_ORDER):
                l1, l2 = (r, c) if t["rows"] == "tau1" else (c, r)
                yield conclusion, l1, l2, t["cells"][i][j]


def _stored_counterexample(conclusion: str, l1: str, l2: str):
    if conclusion == "divisive_right" or (conclusion == "divisive" and not _has(l1, "R")):
        return C.NEG_RIGHT
    return C.NEG_LEFT


def _cell(cfg: SuiteConfig, ck: Checks, conclusion: str, l1: str, l2: str, printed: bool):
    tag = f"{conclusion} tau1={l1} tau2={l2}"
    ck.expect(f"{tag}: printed cell agrees with the lateral laws", printed, predicted(conclusion, l1, l2))
    w = cfg.law_window
    wide = w.widen()
    if printed:
        pool1, pool2 = C.LATERAL_POOLS[LATERAL[l1]], C.LATERAL_POOLS[LATERAL[l2]]
        nonempty = 0
        for t1, t2 in zip(pool1, pool2):
            hyp = check(t1, LATERAL[l1], wide).holds and check(t2, LATERAL[l2], wide).holds
            comp = Compose(t1, t2)
            nonempty += bool(matrix(comp, w).any())
            ck.expect(f"{tag}: instance hypotheses", hyp)
            ck.report(f"{tag}: {t1.describe()} o {t2.describe()}", check(comp, conclusion, w), "holds_on_window")
        ck.expect(f"{tag}: some instance has a nonempty composition", nonempty > 0)
    else:
        t1, t2 = _stored_counterexample(conclusion, l1, l2)
        ck.expect(f"{tag}: stored pair meets hypotheses",
                  check(t1, LATERAL[l1], wide).holds and check(t2, LATERAL[l2], wide).holds)
        comp = Compose(t1, t2)
        rep = check(comp, conclusion, w)
        ck.report(f"{tag}: stored counterexample", rep, "fails", replay(comp, rep, w))


def _table_item(conclusion):
    def run(cfg, ck):
        for concl, l1, l2, printed in table_cells():
            if concl == conclusion:
                _cell(cfg, ck, concl, l1, l2, printed)
    return run


for _c, _anchor in (("divisive", "table: when the composition is divisive"),
                    ("divisive_left", "table: when the composition is left divisive"),
                    ("divisive_right", "table: when the composition is right divisive")):
    item(f"table-{_c.replace('_', '-')}", _anchor, "divisive-tables", "divisive-transfer")(_table_item(_c))


@item("search-negative-cells", "seeded random search for every negative table cell", "divisive-tables")
def _search_cells(cfg, ck):
    for conclusion, l1, l2, printed in table_cells():
        if printed:
            continue
        res = search_counterexample([("tau1", LATERAL[l1]), ("tau2", LATERAL[l2])], conclusion,
                                    RelationSampler(cfg.seed), budget=2000, seed=cfg.seed)
        ok = res.found and replay(Compose(res.tau1, res.tau2), res.report, Window(*_search_dims()))
        ck.expect(f"{conclusion} tau1={l1} tau2={l2}: search finds a replayable counterexample", ok,
                  search=res.to_dict())


def _search_dims():
    from .search import DEFAULT_SEARCH_WINDOW as w
    return w.bound, w.witness_bound


@item("search-classical", "seeded random search for non transfer of classical and multiplicative properties",
      "multiplicative-counterexample", "equivalence-partition-example")
def _search_classical(cfg, ck):
    w = Window(*_search_dims())
    cases = [
        ("equivalence -> symmetric", [("tau1", "equivalence"), ("tau2", "equivalence")], "symmetric", ("partition",)),
        ("transitive -> transitive", [("tau1", "transitive"), ("tau2", "transitive")], "transitive", None),
        ("left divisive -> divisive", [("tau1", "divisive_left"), ("tau2", "divisive_left")], "divisive", None),
        ("multiplicative -> mult_right", [("tau1", "multiplicative"), ("tau2", "multiplicative")],
         "mult_right", ("pattern",)),
    ]
    for name, hyps, concl, kinds in cases:
        sampler = RelationSampler(cfg.seed, kinds) if kinds else RelationSampler(cfg.seed)
        res = search_counterexample(hyps, concl, sampler, budget=2000, seed=cfg.seed)
        ok = res.found and replay(Compose(res.tau1, res.tau2), res.report, w)
        ck.expect(f"{name}: replayable counterexample found", ok, search=res.to_dict())


@item("divisive-implies-assoc-pres", "divisive relations preserve associates", "lateral-properties")
def _div_assoc(cfg, ck):
    w = cfg.law_window
    pool = [FULL, EMPTY, C.DIVISOR_CLOSED_6, C.DIVISOR_CLOSED_4, C.plus_minus_all(2), C.plus_minus_all(3),
            Compose(*C.plus_minus_pair(2)), Compose(FULL, C.DIVISOR_CLOSED_6), C.IDEAL, ModN(2), ModN(3)]
    sampler = RelationSampler(cfg.seed, ("divisor_closed",))
    pool += [sampler.sample() for _ in range(40)]
    divisive = 0
    for R in pool:
        if check(R, "divisive", w).holds:
            divisive += 1
            ck.expect(f"{R.describe()}: divisive => assoc_pres", check(R, "assoc_pres", w).holds)
    ck.expect("at least 5 divisive relations checked", divisive >= 5, count=divisive)


# ---------------------------------------------------------------- congruence family

@item("modn-family", "congruence relations: degenerate cases, associates and multiplicativity", "modn-family")
def _modn_family(cfg, ck):
    w = cfg.window
    ck.expect("modn(0) is the identity", same_on(ModN(0), C.IDENTITY, w))
    ck.expect("modn(1) is full", same_on(ModN(1), FULL, w))
    ck.expect("modn(-4) = modn(4)", ModN(-4) == ModN(4))
    for n in range(2, 9):
        ck.report(f"modn({n}) equivalence", check(ModN(n), "equivalence", w), "holds_on_window")
        ck.expect(f"modn({n}) o modn(0) = modn({n})", same_on(Compose(ModN(n), ModN(0)), ModN(n), w))
        rep = check(ModN(n), "divisive", w)
        ck.report(f"modn({n}) not divisive", rep, "fails", replay(ModN(n), rep, w))
        expected = "holds_on_window" if n == 2 else "fails"
        rep = check(ModN(n), "multiplicative", w)
        ck.report(f"modn({n}) multiplicative iff n = 2", rep, expected, replay(ModN(n), rep, w))
        rep = check(ModN(n), "assoc_pres", w)
        ck.report(f"modn({n}) assoc_pres iff n = 2", rep, expected, replay(ModN(n), rep, w))


@item("modn-gcd", "composition of congruences is congruence modulo the gcd", "modn-gcd-composition")
def _modn_gcd(cfg, ck):
    w = cfg.window
    bad_generic, bad_crt, bad_witness = [], [], []
    for n in range(2, 21):
        for m in range(2, 21):
            target = matrix(ModN(math.gcd(n, m)), w)
            if not np.array_equal(matrix(Compose(ModN(n), ModN(m), use_crt=False), w), target):
                bad_generic.append([n, m])
            if not np.array_equal(matrix(Compose(ModN(n), ModN(m)), w), target):
                bad_crt.append([n, m])
    ck.expect("generic witness search agrees with modn(gcd) for 2 <= n, m <= 20", bad_generic, [])
    ck.expect("CRT path agrees with modn(gcd) for 2 <= n, m <= 20", bad_crt, [])
    for n, m, a, b in ((4, 6, 2, 4), (6, 10, 3, 5), (9, 12, 2, 5), (7, 5, 2, 3), (20, 15, -7, 8)):
        c = crt_witness(a, b, m, n)
        ok = c is not None and abs(c) >= 2 and (c - a) % m == 0 and (c - b) % n == 0
        if not ok:
            bad_witness.append([n, m, a, b, c])
    ck.expect("Bezout witnesses satisfy both congruences", bad_witness, [])
    ck.expect("modn(4) o modn(6) dump = modn(2) dump",
              _pairs(Compose(ModN(4), ModN(6)), Window(cfg.bound, 72)) == _pairs(ModN(2), Window(cfg.bound, 72)))


@item("corollary-divides", "congruences with n | m", "modn-divides-corollary")
def _corollary(cfg, ck):
    w = cfg.window
    for n, m in ((3, 6), (2, 8), (4, 12), (5, 20), (7, 14), (6, 18)):
        ck.expect(f"n={n}, m={m}: modn(m) <= modn(n)", is_subset(ModN(m), ModN(n), w))
        ck.expect(f"n={n}, m={m}: modn(m) o modn(n) = modn(n)", same_on(Compose(ModN(m), ModN(n)), ModN(n), w))
        ck.expect(f"n={n}, m={m}: modn(lcm) <= modn(m) o modn(n)",
                  is_subset(ModN(math.lcm(n, m)), Compose(ModN(m), ModN(n)), w))


# ---------------------------------------------------------------- tau-divides

@item("tau-divides-relation", "the tau-divides relation", "tau-divides-relation")
def _tau_divides_rel(cfg, ck):
    w = cfg.factor_window
    full = TauDivides(FULL, w)
    ck.expect("under full, tau-divides is ordinary nonunit divisibility",
              same_on(full, Inverse(C.IDEAL), w))
    for tau in (FULL, ModN(3), C.IDEAL, EMPTY, C.SQUARES):
        ck.report(f"|_tau reflexive for {tau.describe()}", check(TauDivides(tau, w), "reflexive", w),
                  "holds_on_window")
    sq = TauDivides(C.SQUARES, w)
    ck.expect("6 |_tau2 36 but 4 does not", [sq.holds(6, 36, w), sq.holds(4, 36, w)], [True, False])


def _coim_identity_ok(t1, t2, w):
    return all(t2.holds(x, x, w) for x in coimage(t1, w))


@item("tau-divides-transfer", "tau-divides under composition with a relation containing the identity on a coimage",
      "tau-divides-transfer")
def _tau_divides_transfer(cfg, ck):
    w = cfg.factor_window
    wide = w.widen()
    pairs = [(ModN(3), ModN(2)), (C.IDEAL, C.IDENTITY), (Extensional([(2, 3), (3, 2), (2, 5), (5, 2)]),
             IdentityOn([2, 3, 5])), (C.DIVISOR_CLOSED_6, ModN(2)), (FULL, C.IDEAL)]
    for t1, t2 in pairs:
        tag = f"{t1.describe()} with {t2.describe()}"
        ok = ck.expect(f"{tag}: id on Coim(tau1) <= tau2", _coim_identity_ok(t1, t2, wide))
        if ok:
            ck.expect(f"{tag}: |_tau1 <= |_(tau1 o tau2)",
                      is_subset(TauDivides(t1, w), TauDivides(Compose(t1, t2), w), w))
    for t in (ModN(3), C.IDEAL, ModN(4), C.IDENTITY, C.CHAIN):
        tag = t.describe()
        sq = Compose(t, t)
        ck.report(f"{tag}: transitive", check(t, "transitive", wide), "holds_on_window")
        ck.expect(f"{tag}: tau^2 <= tau", is_subset(sq, t, wide))
        extra = [fz.to_dict() for a in w.elements.tolist()
                 for fz in enumerate_factorizations(a, sq, w, 1) if not fz.is_valid(t, w)]
        ck.expect(f"{tag}: tau^2-factorizations are tau-factorizations", extra, [])
        ck.expect(f"{tag}: |_(tau^2) <= |_tau", is_subset(TauDivides(sq, w), TauDivides(t, w), w))
        primes = [p for p in w.elements.tolist() if is_tau_prime(p, t, w)]
        lost = [p for p in primes if not is_tau_prime(p, sq, w)]
        ck.expect(f"{tag}: tau-primes are tau^2-primes", lost, [], primes=primes)


@item("tau-divides-composition", "composing tau-divides with itself", "tau-divides-composition")
def _tau_divides_square(cfg, ck):
    w = cfg.factor_window
    wide = w.widen()

    def td(t):
        return TauDivides(t, w)

    for t in (FULL, C.DIVISOR_CLOSED_6, EMPTY, C.plus_minus_all(2)):
        ck.report(f"{t.describe()} divisive", check(t, "divisive", wide), "holds_on_window")
        ck.expect(f"{t.describe()}: |_tau = |_tau^2", same_on(td(t), Compose(td(t), td(t)), w))
    for t in (ModN(3), C.IDEAL, ModN(4), C.IDENTITY):
        ck.report(f"{t.describe()} transitive", check(t, "transitive", wide), "holds_on_window")
        ck.expect(f"{t.describe()}: |_(tau^2) <= |_tau^2",
                  is_subset(td(Compose(t, t)), Compose(td(t), td(t)), w))
    for t in (ModN(3), C.IDEAL, FULL, C.CHAIN):
        ck.report(f"{t.describe()} reflexive and transitive",
                  check(t, "partial_order", wide) if t == C.CHAIN else check(t, "reflexive", wide), "holds_on_window")
        ck.report(f"{t.describe()} transitive (chain)", check(t, "transitive", wide), "holds_on_window")
        sq = td(Compose(t, t))
        ck.expect(f"{t.describe()}: |_tau <= |_(tau^2) <= |_tau^2",
                  is_subset(td(t), sq, w) and is_subset(sq, Compose(td(t), td(t)), w))


# ---------------------------------------------------------------- composed UFD failure

@item("example-36", "36 = 4*9 = 6*6: composing two unique-factorization relations loses uniqueness",
      "composed-ufd-failure")
def _example_36(cfg, ck):
    w = cfg.window
    comp = C.FUTURE_COMPOSED
    ck.expect("composition relates exactly 4, 6, 9 on the left",
              sorted({a for a, _ in enumerate_pairs(comp, w)}), [4, 6, 9])
    ck.expect("composition relates each of 4, 6, 9 to every element",
              all(matrix(comp, w)[i].all() for i in (2 * (x - 2) for x in (4, 6, 9))))
    classes = [c.to_dict() for c in factorization_classes(36, comp, w)]
    ck.expect("36: two classes", classes, [{"n": 2, "abs_multiset": [4, 9]}, {"n": 2, "abs_multiset": [6, 6]}])
    diag = ufd_diagnostic(comp, w)
    entry = next(e for e in diag["elements"] if e["element"] == 36)
    ck.expect("ufd diagnostic flags 36", 36 in diag["ufd_failures"], ufd_failures=diag["ufd_failures"])
    ck.expect("36: two atom classes", entry["classes"],
              [{"n": 2, "abs_multiset": [4, 9]}, {"n": 2, "abs_multiset": [6, 6]}])
    diag2 = ufd_diagnostic(C.SQUARES, w)
    entry2 = next(e for e in diag2["elements"] if e["element"] == 36)
    ck.expect("under tau2 alone 36 has one atom class", entry2["classes"], [{"n": 2, "abs_multiset": [6, 6]}])
    ck.expect("tau2 alone is a window UFD", diag2["window_ufd"])
    nontrivial = [a for a in w.elements.tolist() if enumerate_factorizations(a, C.SQUARES, w)]
    ck.expect("nontrivial tau2 factorizations only for powers of 4, 6, 9", sorted(set(map(abs, nontrivial))),
              [x for x in (16, 36, 64, 81) if x <= cfg.bound])
    diag_full = ufd_diagnostic(FULL, w)
    ck.expect("full relation is a window UFD", diag_full["window_ufd"])
    ck.expect("empty relation: every element is an atom",
              all(e["atom"] for e in ufd_diagnostic(EMPTY, w)["elements"]))


# ---------------------------------------------------------------- runner

def manifest() -> dict:
    """Topic -> item ids."""
    out = {t: [] for t in TOPICS}
    for it in ITEMS:
        for t in it.topics:
            out.setdefault(t, []).append(it.id)
    return out


def run_item(it: SuiteItem, cfg: SuiteConfig) -> SuiteResult:
    ck = Checks()
    try:
        it.run(cfg, ck)
    except Exception as exc:  # reported, not raised: the suite keeps going
        return SuiteResult(it.id, ERROR, it.anchor, it.topics,
                           {"error": f"{type(exc).__name__}: {exc}", "traceback": traceback.format_exc()})
    status = PASS if ck.ok else FAIL
    if not ck.rows:
        status = NOT_APPLICABLE
    return SuiteResult(it.id, status, it.anchor, it.topics, {"checks": ck.rows})


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, FactorizationClass):
        return o.to_dict()
    raise TypeError(f"not serializable: {type(o).__name__}")


def run_suite(cfg: SuiteConfig = SuiteConfig(), jobs: int = 1, out_dir: str | None = None,
              only: list[str] | None = None) -> list[SuiteResult]:
    items = [it for it in ITEMS if only is None or it.id in only]
    if only is not None:
        unknown = set(only) - {it.id for it in items}
        if unknown:
            raise ValueError(f"unknown suite items: {sorted(unknown)}")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda it: run_item(it, cfg), items))
    else:
        results = [run_item(it, cfg) for it in items]
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for r in results:
            with open(os.path.join(out_dir, f"{r.item_id}.json"), "w", encoding="utf-8") as fh:
                fh.write(dumps(r.to_dict()))
        with open(os.path.join(out_dir, "summary.json"), "w", encoding="utf-8") as fh:
            fh.write(dumps(summary(results, cfg)))
    return results


def summary(results: list[SuiteResult], cfg: SuiteConfig) -> dict:
    counts = {s: 0 for s in (PASS, FAIL, NOT_APPLICABLE, ERROR)}
    for r in results:
        counts[r.status] += 1
    return {
        "config": {"B": cfg.bound, "W": cfg.witness_bound, "seed": cfg.seed},
        "counts": counts,
        "items": [{"item_id": r.item_id, "status": r.status, "anchor": r.anchor} for r in results],
        "manifest": manifest(),
    }
