"""Seeded random search for composition counterexamples."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .domain import Window, nonunit_divisors
from .props import PROPERTIES, CheckReport, check
from .relations import Block, Compose, Extensional, Partition, Pattern, Relation

SAMPLER_KINDS = ("extensional", "divisor_closed", "partition", "pattern")
PATTERN_PRIMES = (2, 3, 5, 7)
DEFAULT_SEARCH_WINDOW = Window(12, 36)


class RelationSampler:
    """Uniform random small relations.

    extensional: at most ``max_pairs`` pairs over ``|x| <= elem_bound``;
    divisor_closed: an extensional sample closed under nonunit divisors on the
    left, the right, or both sides; partition: at most 4 blocks; pattern:
    one to four blocks of one- or two-prime supports over {2, 3, 5, 7}, half
    of them closed under unions of supports.
    """

    def __init__(self, seed: int, kinds=SAMPLER_KINDS, elem_bound: int = 12, max_pairs: int = 12):
        unknown = set(kinds) - set(SAMPLER_KINDS)
        if unknown:
            raise ValueError(f"unknown sampler kinds {sorted(unknown)}")
        self.rng = random.Random(seed)
        self.kinds = tuple(kinds)
        self.elem_bound = elem_bound
        self.max_pairs = max_pairs
        self.elements = [s * m for m in range(2, elem_bound + 1) for s in (1, -1)]

    def sample(self) -> Relation:
        kind = self.rng.choice(self.kinds)
        return getattr(self, f"_{kind}")()

    def _pairs(self):
        k = self.rng.randint(1, self.max_pairs)
        return [(self.rng.choice(self.elements), self.rng.choice(self.elements)) for _ in range(k)]

    def _extensional(self):
        return Extensional(self._pairs())

    def _divisor_closed(self):
        side = self.rng.choice(("left", "right", "both"))
        pairs = set()
        for a, b in self._pairs():
            lefts = nonunit_divisors(a) if side in ("left", "both") else [a]
            rights = nonunit_divisors(b) if side in ("right", "both") else [b]
            pairs.update((x, y) for x in lefts for y in rights)
        return Extensional(pairs)

    def _partition(self):
        pool = list(self.elements)
        self.rng.shuffle(pool)
        blocks = []
        if self.rng.random() < 0.5:
            blocks.append(Block("negatives"))
            pool = [x for x in pool if x > 0]
        n_finite = self.rng.randint(1, 3 - (len(blocks) > 0) + 1)
        finite_positive = set()
        for _ in range(n_finite):
            if not pool:
                break
            size = self.rng.randint(1, min(4, len(pool)))
            chunk, pool = pool[:size], pool[size:]
            blocks.append(Block("finite", frozenset(chunk)))
            finite_positive.update(x for x in chunk if x > 0)
        if len(blocks) < 4 and self.rng.random() < 0.5:
            blocks.append(Block("positives_except", frozenset(finite_positive | {1})))
        return Partition(tuple(blocks))

    def _pattern_set(self):
        k = self.rng.randint(1, 2)
        return frozenset(self.rng.sample(PATTERN_PRIMES, k))

    def _pattern(self):
        n = self.rng.randint(1, 4)
        pairs = {(self._pattern_set(), self._pattern_set()) for _ in range(n)}
        if self.rng.random() < 0.5:
            pairs = union_closure(pairs)
        return Pattern(tuple(sorted(pairs, key=lambda pq: (sorted(pq[0]), sorted(pq[1])))))


def union_closure(pairs: set) -> set:
    """Close pattern blocks under ``(P, Q1), (P, Q2) -> (P, Q1 | Q2)`` and its mirror; the result is multiplicative."""
    pairs = set(pairs)
    while True:
        new = set()
        for p1, q1 in pairs:
            for p2, q2 in pairs:
                if p1 == p2:
                    new.add((p1, q1 | q2))
                if q1 == q2:
                    new.add((p1 | p2, q1))
        if new <= pairs:
            return pairs
        pairs |= new


@dataclass
class SearchResult:
    found: bool
    trials: int
    seed: int
    tau1: Relation | None = None
    tau2: Relation | None = None
    report: CheckReport | None = None

    def to_dict(self) -> dict:
        out = {"found": self.found, "trials": self.trials, "seed": self.seed}
        if self.found:
            out["tau1"] = self.tau1.to_spec()
            out["tau2"] = self.tau2.to_spec()
            out["report"] = self.report.to_dict()
        return out


def _hypotheses_hold(hypotheses, taus, window: Window) -> bool:
    for slot, prop in hypotheses:
        if not check(taus[slot], prop, window).holds:
            return False
    return True


def search_counterexample(
    hypotheses: list[tuple[str, str]],
    conclusion: str,
    sampler: RelationSampler | None = None,
    budget: int = 1000,
    seed: int = 0,
    window: Window = DEFAULT_SEARCH_WINDOW,
) -> SearchResult:
    """Sample ``(tau1, tau2)`` meeting the hypotheses until ``tau1 o tau2`` violates ``conclusion``.

    ``hypotheses`` pairs a slot (``"tau1"`` or ``"tau2"``) with a property;
    they are checked over the whole witness range of ``window``.  The search
    is a pure function of its arguments.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    for slot, prop in hypotheses:
        if slot not in ("tau1", "tau2"):
            raise ValueError(f"hypothesis slot must be tau1 or tau2, got {slot!r}")
        if prop not in PROPERTIES:
            raise ValueError(f"unknown property {prop!r}")
    if conclusion not in PROPERTIES:
        raise ValueError(f"unknown property {conclusion!r}")
    sampler = sampler or RelationSampler(seed)
    wide = window.widen()
    for trial in range(1, budget + 1):
        taus = {"tau1": sampler.sample(), "tau2": sampler.sample()}
        if not _hypotheses_hold(hypotheses, taus, wide):
            continue
        rep = check(Compose(taus["tau1"], taus["tau2"]), conclusion, window)
        if rep.fails:
            rep.seed = seed
            return SearchResult(True, trial, seed, taus["tau1"], taus["tau2"], rep)
    return SearchResult(False, budget, seed)
