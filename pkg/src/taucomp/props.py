"""Bounded property checks for relations and transfer laws for compositions.

Every check is exhaustive over the window and reports the counterexample
that comes first in window order (tuples compared role by role), so reports
do not depend on evaluation strategy.  ``holds_on_window`` is evidence, not
a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Callable

import numpy as np

from .domain import Window
from .relations import Compose, Relation, matrix

__all__ = [
    "PROPERTIES", "CheckReport", "check", "replay", "violation",
    "TRANSFER_LAWS", "check_transfer",
]

HOLDS, FAILS, NOT_APPLICABLE = "holds_on_window", "fails", "not_applicable"

BASIC = (
    "reflexive", "symmetric", "transitive", "antisymmetric",
    "divisive_left", "divisive_right", "assoc_pres_left", "assoc_pres_right",
    "mult_left", "mult_right", "property1", "property2",
)
COMPOUND = {
    "equivalence": ("reflexive", "symmetric", "transitive"),
    "partial_order": ("reflexive", "antisymmetric", "transitive"),
    "divisive": ("divisive_left", "divisive_right"),
    "assoc_pres": ("assoc_pres_left", "assoc_pres_right"),
    "multiplicative": ("mult_left", "mult_right"),
}
PROPERTIES = (
    "reflexive", "symmetric", "transitive", "antisymmetric", "equivalence", "partial_order",
    "divisive_left", "divisive_right", "divisive", "assoc_pres_left", "assoc_pres_right",
    "assoc_pres", "mult_left", "mult_right", "multiplicative", "property1", "property2",
)

ROLES = {
    "reflexive": ("a",),
    "symmetric": ("a", "b"),
    "antisymmetric": ("a", "b"),
    "transitive": ("a", "b", "c"),
    "divisive_left": ("a", "b", "a_div"),
    "divisive_right": ("a", "b", "b_div"),
    "assoc_pres_left": ("a", "b", "c"),
    "assoc_pres_right": ("a", "b", "c"),
    "mult_left": ("a", "b", "c"),
    "mult_right": ("a", "b", "c"),
    "property1": ("a", "b", "c"),
    "property2": ("a", "b", "c"),
}


@dataclass
class CheckReport:
    property: str
    relation: dict
    window: dict
    verdict: str
    counterexample: dict | None = None
    skipped_tuples: int = 0
    exact: bool = False
    empty: bool = False
    seed: int | None = None
    witness_trace: list | None = None
    hypotheses: list | None = None
    conclusions: list | None = None
    severity: str | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _f32(m: np.ndarray) -> np.ndarray:
    return m.astype(np.float32)


def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return tuple(int(i) for i in idx[0]) if len(idx) else None


def _neg_index(n: int) -> np.ndarray:
    # window order pairs x with -x at adjacent positions
    return np.arange(n) ^ 1


def _divisor_matrix(elems: np.ndarray) -> np.ndarray:
    """``D[i, j]`` iff ``elems[i] | elems[j]``."""
    return elems[None, :] % elems[:, None] == 0


# Each basic checker returns (counterexample tuple of element values | None, skipped count).

def _reflexive(R, window, M, elems):
    bad = np.flatnonzero(~M.diagonal())
    return ((int(elems[bad[0]]),) if len(bad) else None), 0


def _symmetric(R, window, M, elems):
    hit = _first(M & ~M.T)
    return (tuple(int(elems[i]) for i in hit) if hit else None), 0


def _antisymmetric(R, window, M, elems):
    hit = _first(M & M.T & ~np.eye(len(elems), dtype=bool))
    return (tuple(int(elems[i]) for i in hit) if hit else None), 0


def _transitive(R, window, M, elems):
    two_step = (_f32(M) @ _f32(M)) > 0
    rows = np.flatnonzero((two_step & ~M).any(axis=1))
    if not len(rows):
        return None, 0
    a = rows[0]
    for b in np.flatnonzero(M[a]):
        cs = np.flatnonzero(M[b] & ~M[a])
        if len(cs):
            return (int(elems[a]), int(elems[b]), int(elems[cs[0]])), 0
    raise AssertionError("unreachable")


def _divisive_left(R, window, M, elems):
    D = _divisor_matrix(elems)
    reach = (_f32(D.T) @ _f32(~M)) > 0      # [a, b]: some a' | a with not a' R b
    hit = _first(M & reach)
    if not hit:
        return None, 0
    a, b = hit
    ad = np.flatnonzero(D[:, a] & ~M[:, b])[0]
    return (int(elems[a]), int(elems[b]), int(elems[ad])), 0


def _divisive_right(R, window, M, elems):
    D = _divisor_matrix(elems)
    reach = (_f32(~M) @ _f32(D)) > 0        # [a, b]: some b' | b with not a R b'
    hit = _first(M & reach)
    if not hit:
        return None, 0
    a, b = hit
    bd = np.flatnonzero(D[:, b] & ~M[a, :])[0]
    return (int(elems[a]), int(elems[b]), int(elems[bd])), 0


def _assoc_left(R, window, M, elems):
    neg = _neg_index(len(elems))
    hit = _first(M & ~M[neg, :])
    return ((int(elems[hit[0]]), int(elems[hit[1]]), int(elems[neg[hit[0]]])) if hit else None), 0


def _assoc_right(R, window, M, elems):
    neg = _neg_index(len(elems))
    hit = _first(M & ~M[:, neg])
    return ((int(elems[hit[0]]), int(elems[hit[1]]), int(elems[neg[hit[1]]])) if hit else None), 0


def _product_positions(vals: np.ndarray, limit: int):
    prod = vals[:, None] * vals[None, :]
    inside = np.abs(prod) <= limit
    pos = np.where(inside, 2 * (np.abs(prod) - 2) + (prod < 0), 0)
    return pos, inside


def _mult_left(R, window, M, elems):
    wide = R._matrix(window.witnesses, elems, window)   # rows reach every product |ab| <= W
    best, skipped = None, 0
    for c in range(len(elems)):
        idx = np.flatnonzero(M[:, c])
        if not len(idx):
            continue
        pos, inside = _product_positions(elems[idx], window.witness_bound)
        skipped += int((~inside).sum())
        bad = inside & ~wide[pos, c]
        hit = _first(bad)
        if hit and (best is None or (idx[hit[0]], idx[hit[1]], c) < best):
            best = (idx[hit[0]], idx[hit[1]], c)
    return (tuple(int(elems[i]) for i in best) if best else None), skipped


def _mult_right(R, window, M, elems):
    wide = R._matrix(elems, window.witnesses, window)
    for a in range(len(elems)):
        idx = np.flatnonzero(M[a])
        if not len(idx):
            continue
        pos, inside = _product_positions(elems[idx], window.witness_bound)
        bad = inside & ~wide[a][pos]
        hit = _first(bad)
        if hit:
            skipped = _count_mult_right_skips(M, elems, window.witness_bound)
            return (int(elems[a]), int(elems[idx[hit[0]]]), int(elems[idx[hit[1]]])), skipped
    return None, _count_mult_right_skips(M, elems, window.witness_bound)


def _count_mult_right_skips(M, elems, limit):
    total = 0
    for a in range(len(elems)):
        vals = np.abs(elems[M[a]])
        if len(vals):
            total += int((vals[:, None] * vals[None, :] > limit).sum())
    return total


def _factors(R):
    if not isinstance(R, Compose):
        raise ValueError("property1/property2 are properties of a composition; pass a Compose relation")
    return R.first, R.second


def _property1(R, window, M, elems):
    first, second = _factors(R)
    wit = window.witnesses
    inner = second._matrix(elems, wit, window)     # a tau2 d
    outer = first._matrix(wit, elems, window)      # d tau1 c
    best = None
    for c in range(len(elems)):
        A = M[:, c]
        if not A.any():
            continue
        G = _f32(inner[:, outer[:, c]])
        shared = (G @ G.T) > 0
        hit = _first(A[:, None] & A[None, :] & ~shared)
        if hit and (best is None or (*hit, c) < best):
            best = (*hit, c)
    return (tuple(int(elems[i]) for i in best) if best else None), 0


def _property2(R, window, M, elems):
    first, second = _factors(R)
    wit = window.witnesses
    inner = second._matrix(elems, wit, window)
    outer = first._matrix(wit, elems, window)
    for a in range(len(elems)):
        B = M[a]
        if not B.any():
            continue
        G = _f32(outer[inner[a], :])
        shared = (G.T @ G) > 0
        hit = _first(B[:, None] & B[None, :] & ~shared)
        if hit:
            return (int(elems[a]), int(elems[hit[0]]), int(elems[hit[1]])), 0
    return None, 0


_CHECKERS: dict[str, Callable] = {
    "reflexive": _reflexive,
    "symmetric": _symmetric,
    "antisymmetric": _antisymmetric,
    "transitive": _transitive,
    "divisive_left": _divisive_left,
    "divisive_right": _divisive_right,
    "assoc_pres_left": _assoc_left,
    "assoc_pres_right": _assoc_right,
    "mult_left": _mult_left,
    "mult_right": _mult_right,
    "property1": _property1,
    "property2": _property2,
}


def _witness_trace(R: Relation, values, window: Window):
    if not isinstance(R, Compose):
        return None
    trace = []
    for a in values:
        for b in values:
            if abs(a) <= window.witness_bound and abs(b) <= window.witness_bound and R.holds(a, b, window):
                trace.append([[a, b], R.witness(a, b, window)])
    return trace or None


def check(R: Relation, prop: str, window: Window) -> CheckReport:
    """Exhaustively check ``prop`` for ``R`` over the window."""
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; valid: {', '.join(PROPERTIES)}")
    M = matrix(R, window)
    elems = window.elements
    parts = COMPOUND.get(prop, (prop,))
    skipped, found = 0, None
    for part in parts:
        cx, sk = _CHECKERS[part](R, window, M, elems)
        skipped += sk
        if cx is not None:
            found = {"component": part, **dict(zip(ROLES[part], cx))}
            break
    report = CheckReport(
        property=prop,
        relation=R.to_spec(),
        window=window.to_dict(),
        verdict=FAILS if found else HOLDS,
        counterexample=found,
        skipped_tuples=skipped,
        exact=R.exact,
        empty=not M.any(),
    )
    if found:
        values = [v for k, v in found.items() if k != "component"]
        report.witness_trace = _witness_trace(R, values, window)
    return report


def violation(R: Relation, part: str, cx: dict, window: Window) -> bool:
    """Replay a counterexample through single ``holds`` calls; True iff it really violates ``part``."""
    h = lambda x, y: R.holds(x, y, window)  # noqa: E731
    g = cx.get
    if part == "reflexive":
        return not h(g("a"), g("a"))
    if part == "symmetric":
        return h(g("a"), g("b")) and not h(g("b"), g("a"))
    if part == "antisymmetric":
        return g("a") != g("b") and h(g("a"), g("b")) and h(g("b"), g("a"))
    if part == "transitive":
        return h(g("a"), g("b")) and h(g("b"), g("c")) and not h(g("a"), g("c"))
    if part == "divisive_left":
        return g("a") % g("a_div") == 0 and h(g("a"), g("b")) and not h(g("a_div"), g("b"))
    if part == "divisive_right":
        return g("b") % g("b_div") == 0 and h(g("a"), g("b")) and not h(g("a"), g("b_div"))
    if part == "assoc_pres_left":
        return abs(g("a")) == abs(g("c")) and h(g("a"), g("b")) and not h(g("c"), g("b"))
    if part == "assoc_pres_right":
        return abs(g("b")) == abs(g("c")) and h(g("a"), g("b")) and not h(g("a"), g("c"))
    if part == "mult_left":
        return h(g("a"), g("c")) and h(g("b"), g("c")) and not h(g("a") * g("b"), g("c"))
    if part == "mult_right":
        return h(g("a"), g("b")) and h(g("a"), g("c")) and not h(g("a"), g("b") * g("c"))
    if part in ("property1", "property2"):
        first, second = _factors(R)
        a, b, c = g("a"), g("b"), g("c")
        ds = window.witnesses.tolist()
        if part == "property1":
            return h(a, c) and h(b, c) and not any(
                second.holds(a, d, window) and second.holds(b, d, window) and first.holds(d, c, window)
                for d in ds)
        return h(a, b) and h(a, c) and not any(
            second.holds(a, d, window) and first.holds(d, b, window) and first.holds(d, c, window)
            for d in ds)
    raise ValueError(f"unknown property {part!r}")


def replay(R: Relation, report: CheckReport, window: Window) -> bool:
    cx = report.counterexample
    return cx is not None and violation(R, cx["component"], cx, window)


# ---------------------------------------------------------------- transfer laws
#
# Claims are evaluated either on the window itself ("window" scope) or on the
# window whose universe is the whole witness range ("witness" scope).  Factor
# hypotheses get the witness scope because the composition's proofs pass
# through witnesses drawn from that range.

@dataclass(frozen=True)
class Claim:
    kind: str                # "prop" | "subset" | "nonempty" | "id_image" | "id_support"
    label: str
    build: Callable          # (tau1, tau2) -> tuple of relations
    prop: str | None = None
    scope: str = "window"


def _prop(label, build, prop, scope="window"):
    return Claim("prop", label, build, prop, scope)


def _t1(t1, t2):
    return (t1,)


def _t2(t1, t2):
    return (t2,)


def _c12(t1, t2):
    return (Compose(t1, t2),)


def _c21(t1, t2):
    return (Compose(t2, t1),)


def _sq(t1, t2):
    return (Compose(t1, t1),)


@dataclass(frozen=True)
class TransferLaw:
    name: str
    topic: str
    hypotheses: tuple
    conclusions: tuple


def _law(name, topic, hyps, concls):
    return TransferLaw(name, topic, tuple(hyps), tuple(concls))


_NONEMPTY_12 = Claim("nonempty", "tau1 o tau2 nonempty", _c12)
_NONEMPTY_21 = Claim("nonempty", "tau2 o tau1 nonempty", _c21)
_NONEMPTY_SQ = Claim("nonempty", "tau^2 nonempty", _sq)
_SUBSET_12 = Claim("subset", "tau1 <= tau2", lambda t1, t2: (t1, t2), scope="witness")


def _square(name, prop, extra=()):
    return _law(
        name, "square",
        [_prop(f"tau {prop}", _t1, prop, "witness"), _NONEMPTY_SQ],
        [*extra, _prop(f"tau^2 {prop}", _sq, prop)],
    )


TRANSFER_LAWS: dict[str, TransferLaw] = {law.name: law for law in [
    _law("reflexive_left", "reflexive",
         [_prop("tau1 reflexive", _t1, "reflexive", "witness")],
         [Claim("subset", "tau2 <= tau1 o tau2", lambda t1, t2: (t2, Compose(t1, t2)))]),
    _law("reflexive_right", "reflexive",
         [_prop("tau2 reflexive", _t2, "reflexive", "witness")],
         [Claim("subset", "tau1 <= tau1 o tau2", lambda t1, t2: (t1, Compose(t1, t2)))]),
    _law("reflexive_both", "reflexive",
         [_prop("tau1 reflexive", _t1, "reflexive", "witness"),
          _prop("tau2 reflexive", _t2, "reflexive", "witness")],
         [_prop("tau1 o tau2 reflexive", _c12, "reflexive"),
          _prop("tau2 o tau1 reflexive", _c21, "reflexive")]),
    _law("divisive_left", "divisive",
         [_prop("tau2 divisive_left", _t2, "divisive_left", "witness")],
         [_prop("tau1 o tau2 divisive_left", _c12, "divisive_left")]),
    _law("divisive_right", "divisive",
         [_prop("tau1 divisive_right", _t1, "divisive_right", "witness")],
         [_prop("tau1 o tau2 divisive_right", _c12, "divisive_right")]),
    _law("divisive_mixed", "divisive",
         [_prop("tau1 divisive_right", _t1, "divisive_right", "witness"),
          _prop("tau2 divisive_left", _t2, "divisive_left", "witness")],
         [_prop("tau1 o tau2 divisive", _c12, "divisive")]),
    _law("divisive_both", "divisive",
         [_prop("tau1 divisive", _t1, "divisive", "witness"),
          _prop("tau2 divisive", _t2, "divisive", "witness")],
         [_prop("tau1 o tau2 divisive", _c12, "divisive"),
          _prop("tau2 o tau1 divisive", _c21, "divisive")]),
    _law("multiplicative_left", "multiplicative",
         [_prop("tau2 mult_left", _t2, "mult_left", "witness"), _NONEMPTY_12,
          _prop("tau1 o tau2 property1", _c12, "property1")],
         [_prop("tau1 o tau2 mult_left", _c12, "mult_left")]),
    _law("multiplicative_right", "multiplicative",
         [_prop("tau1 mult_right", _t1, "mult_right", "witness"), _NONEMPTY_12,
          _prop("tau1 o tau2 property2", _c12, "property2")],
         [_prop("tau1 o tau2 mult_right", _c12, "mult_right")]),
    _square("square_reflexive", "reflexive"),
    _square("square_symmetric", "symmetric",
            [Claim("id_support", "id on Coim(tau) u Im(tau) <= tau^2", lambda t1, t2: (t1, Compose(t1, t1)))]),
    _square("square_transitive", "transitive",
            [Claim("subset", "tau^2 <= tau", lambda t1, t2: (Compose(t1, t1), t1))]),
    _square("square_equivalence", "equivalence"),
    _square("square_partial_order", "partial_order"),
    _law("subset_transitive", "subset",
         [_SUBSET_12, _prop("tau2 transitive", _t2, "transitive", "witness")],
         [Claim("subset", "tau1 o tau2 <= tau2", lambda t1, t2: (Compose(t1, t2), t2)),
          Claim("subset", "tau2 o tau1 <= tau2", lambda t1, t2: (Compose(t2, t1), t2))]),
    _law("subset_transitive_left", "subset",
         [_SUBSET_12, _prop("tau2 transitive", _t2, "transitive", "witness"),
          Claim("id_image", "id on Im(tau1 o tau2) <= tau1", lambda t1, t2: (Compose(t1, t2), t1))],
         [_prop("tau1 o tau2 transitive", _c12, "transitive")]),
    _law("subset_transitive_right", "subset",
         [_SUBSET_12, _prop("tau2 transitive", _t2, "transitive", "witness"),
          Claim("id_image", "id on Im(tau2 o tau1) <= tau1", lambda t1, t2: (Compose(t2, t1), t1))],
         [_prop("tau2 o tau1 transitive", _c21, "transitive")]),
    _law("subset_equivalence", "subset",
         [_prop("tau1 reflexive", _t1, "reflexive", "witness"), _SUBSET_12,
          _prop("tau2 equivalence", _t2, "equivalence", "witness"), _NONEMPTY_12, _NONEMPTY_21],
         [_prop("tau1 o tau2 equivalence", _c12, "equivalence"),
          _prop("tau2 o tau1 equivalence", _c21, "equivalence")]),
    _law("subset_partial_order", "subset",
         [_prop("tau1 reflexive", _t1, "reflexive", "witness"), _SUBSET_12,
          _prop("tau2 partial_order", _t2, "partial_order", "witness"), _NONEMPTY_12, _NONEMPTY_21],
         [_prop("tau1 o tau2 partial_order", _c12, "partial_order"),
          _prop("tau2 o tau1 partial_order", _c21, "partial_order")]),
]}


def _pair_cx(mask: np.ndarray, elems: np.ndarray):
    hit = _first(mask)
    return {"a": int(elems[hit[0]]), "b": int(elems[hit[1]])} if hit else None


def evaluate_claim(claim: Claim, tau1: Relation, tau2: Relation, window: Window) -> dict:
    w = window.widen() if claim.scope == "witness" else window
    rels = claim.build(tau1, tau2)
    elems = w.elements
    if claim.kind == "prop":
        rep = check(rels[0], claim.prop, w)
        cx = rep.counterexample
    elif claim.kind == "subset":
        cx = _pair_cx(matrix(rels[0], w) & ~matrix(rels[1], w), elems)
    elif claim.kind == "nonempty":
        cx = None if matrix(rels[0], w).any() else {"empty": True}
    elif claim.kind == "id_image":
        # id on Im(R) <= S: every image element must be S-reflexive
        support = matrix(rels[0], w).any(axis=0)
        bad = np.flatnonzero(support & ~matrix(rels[1], w).diagonal())
        cx = {"a": int(elems[bad[0]])} if len(bad) else None
    elif claim.kind == "id_support":
        M = matrix(rels[0], w)
        support = M.any(axis=0) | M.any(axis=1)
        bad = np.flatnonzero(support & ~matrix(rels[1], w).diagonal())
        cx = {"a": int(elems[bad[0]])} if len(bad) else None
    else:
        raise ValueError(claim.kind)
    out = {"claim": claim.label, "scope": claim.scope, "verdict": FAILS if cx else HOLDS}
    if cx:
        out["counterexample"] = cx
    return out


def check_transfer(name: str, tau1: Relation, tau2: Relation | None, window: Window) -> CheckReport:
    """Check one transfer law: hypotheses first, then conclusions.

    A failed hypothesis makes the report ``not_applicable``.  A failed
    conclusion under passing hypotheses is reported as ``fails`` with
    severity ``error``: it would contradict the law.
    """
    if name not in TRANSFER_LAWS:
        raise ValueError(f"unknown transfer law {name!r}; valid: {', '.join(TRANSFER_LAWS)}")
    law = TRANSFER_LAWS[name]
    if tau2 is None:
        tau2 = tau1
    hyps = [evaluate_claim(c, tau1, tau2, window) for c in law.hypotheses]
    relation = {"tau1": tau1.to_spec(), "tau2": tau2.to_spec()}
    report = CheckReport(
        property=name, relation=relation, window=window.to_dict(),
        verdict=NOT_APPLICABLE, hypotheses=hyps,
        exact=Compose(tau1, tau2).exact and tau1.exact and tau2.exact,
    )
    if any(h["verdict"] == FAILS for h in hyps):
        return report
    concls = [evaluate_claim(c, tau1, tau2, window) for c in law.conclusions]
    report.conclusions = concls
    failed = [c for c in concls if c["verdict"] == FAILS]
    report.verdict = FAILS if failed else HOLDS
    if failed:
        report.severity = "error"
        report.counterexample = {"claim": failed[0]["claim"], **failed[0]["counterexample"]}
    return report
