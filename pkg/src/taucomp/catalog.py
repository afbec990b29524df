"""Concrete relations used by the reproduction suite and the tests."""

from __future__ import annotations

from .domain import Window
from .relations import (
    EMPTY, FULL, Block, Compose, Extensional, IdealContainment, IdentityOn, ModN,
    Partition, Pattern, Product, Union,
)

IDENTITY = IdentityOn()
IDEAL = IdealContainment()


def plus_minus_pair(p: int = 2) -> tuple[Extensional, Extensional]:
    """``tau1 = {(p, p), (p, -p)}`` and ``tau2 = {(p, p), (-p, p)}``."""
    return Extensional([(p, p), (p, -p)]), Extensional([(p, p), (-p, p)])


def plus_minus_all(p: int = 2) -> Extensional:
    return Extensional([(x, y) for x in (p, -p) for y in (p, -p)])


PARTITION_1 = Partition((Block("negatives"), Block("finite", frozenset({2})),
                         Block("positives_except", frozenset({1, 2}))))
PARTITION_2 = Partition((Block("negatives"), Block("finite", frozenset({2, 3})),
                         Block("positives_except", frozenset({1, 2, 3}))))


def _pat(*pairs):
    return Pattern(tuple((frozenset(p), frozenset(q)) for p, q in pairs))


PATTERN_1 = _pat(({3}, {2}), ({2}, {3}), ({7}, {5}), ({5}, {7}))
PATTERN_2 = _pat(({3}, {3}), ({3}, {7}), ({7}, {3}), ({3}, {3, 7}), ({3, 7}, {3}))
# closed forms of PATTERN_1 o PATTERN_2 and PATTERN_2 o PATTERN_1
PATTERN_12 = _pat(({3}, {2}), ({7}, {2}), ({3, 7}, {2}), ({3}, {5}))
PATTERN_21 = _pat(({2}, {3}), ({2}, {7}), ({2}, {3, 7}), ({5}, {3}))

POWERS_OF_TWO = _pat(({2}, {2}))

SQUARES = Extensional([(6, 6), (4, 4), (9, 9)])
FUTURE_COMPOSED = Compose(FULL, SQUARES)

# both factors transitive, composition {(2, 5), (5, 11)} is not
TRANSITIVE_PAIR = (Extensional([(3, 5), (7, 11)]), Extensional([(2, 3), (5, 7)]))


def subset_mult_left_pair(window: Window) -> tuple:
    """``tau1 = {(2^n, 2^m)}`` and ``tau2 = tau1 u {(3, 2^n)}`` (the latter truncated to the witness range)."""
    twos = []
    k = 2
    while k <= window.witness_bound:
        twos.append(k)
        k *= 2
    return POWERS_OF_TWO, Union(POWERS_OF_TWO, Extensional([(3, t) for t in twos]))


def subset_mult_right_pair(window: Window) -> tuple:
    """``tau1 = {(2, 2)}`` and ``tau2 = {(2, 2^n)}``."""
    twos = []
    k = 2
    while k <= window.witness_bound:
        twos.append(k)
        k *= 2
    return Extensional([(2, 2)]), Extensional([(2, t) for t in twos])


DIVISOR_CLOSED_6 = Product([2, -2, 3, -3, 6, -6])
DIVISOR_CLOSED_4 = Product([2, -2, 4, -4])
LEFT_DIVISIVE = Extensional([(2, 4), (-2, 4)])
RIGHT_DIVISIVE = Extensional([(4, 2), (4, -2)])
LEFT_DIVISIVE_9 = Extensional([(x, 9) for x in (2, -2, 4, -4)])
RIGHT_DIVISIVE_9 = Extensional([(9, x) for x in (2, -2, 4, -4)])

# Instances for the lateral-divisibility tables, keyed by the cell label.
LATERAL_POOLS = {
    "divisive": [FULL, DIVISOR_CLOSED_6, DIVISOR_CLOSED_4],
    "divisive_left": [LEFT_DIVISIVE, LEFT_DIVISIVE_9, DIVISOR_CLOSED_6],
    "divisive_right": [RIGHT_DIVISIVE, RIGHT_DIVISIVE_9, DIVISOR_CLOSED_4],
}

# Stored counterexamples for the negative table cells: (tau1, tau2) where
# tau1 o tau2 fails the conclusion although both factors carry every lateral property
# the respective side of the cell can ask for.
NEG_LEFT = (FULL, RIGHT_DIVISIVE)        # tau1 o tau2 = {(4, n)}: not left divisive
NEG_RIGHT = (LEFT_DIVISIVE, FULL)        # tau1 o tau2 = {(n, 4)}: not right divisive

CHAIN = IDENTITY | Extensional([(2, 4), (4, 8), (2, 8), (3, 9)])
SMALL_CHAIN = IDENTITY | Extensional([(2, 4)])


def law_instances(window: Window) -> dict[str, list[tuple[str, object, object]]]:
    """Relation pairs on which each transfer law is exercised."""
    left_pair = subset_mult_left_pair(window)
    return {
        "reflexive_left": [
            ("modn2-modn3", ModN(2), ModN(3)),
            ("ideal-partition", IDEAL, PARTITION_1),
            ("full-ext", FULL, Extensional([(2, 3), (5, -7)])),
            ("modn4-ideal", ModN(4), IDEAL),
        ],
        "reflexive_right": [
            ("modn3-modn2", ModN(3), ModN(2)),
            ("partition-ideal", PARTITION_2, IDEAL),
            ("ext-identity", Extensional([(2, 3), (5, -7)]), IDENTITY),
        ],
        "reflexive_both": [
            ("modn2-modn3", ModN(2), ModN(3)),
            ("ideal-modn4", IDEAL, ModN(4)),
            ("partitions", PARTITION_1, PARTITION_2),
            ("chain-ideal", CHAIN, IDEAL),
        ],
        "divisive_left": [
            ("ext-left", Extensional([(4, 5), (9, 3)]), LEFT_DIVISIVE),
            ("modn3-full", ModN(3), FULL),
            ("ideal-closed6", IDEAL, DIVISOR_CLOSED_6),
            ("right-left9", RIGHT_DIVISIVE_9, LEFT_DIVISIVE_9),
        ],
        "divisive_right": [
            ("right-ext", RIGHT_DIVISIVE, Extensional([(6, 4), (3, 9)])),
            ("full-modn3", FULL, ModN(3)),
            ("closed4-ideal", DIVISOR_CLOSED_4, IDEAL),
        ],
        "divisive_mixed": [
            ("right-left", RIGHT_DIVISIVE, LEFT_DIVISIVE),
            ("right9-left9", RIGHT_DIVISIVE_9, LEFT_DIVISIVE_9),
            ("full-closed6", FULL, DIVISOR_CLOSED_6),
        ],
        "divisive_both": [
            ("full-closed6", FULL, DIVISOR_CLOSED_6),
            ("closed6-closed4", DIVISOR_CLOSED_6, DIVISOR_CLOSED_4),
            ("full-full", FULL, FULL),
            ("empty-full", EMPTY, FULL),
        ],
        "multiplicative_left": [
            ("modn2-modn2", ModN(2), ModN(2)),
            ("modn2-full", ModN(2), FULL),
            ("pattern-3to5-2to3", _pat(({3}, {5})), _pat(({2}, {3}))),
            ("full-full", FULL, FULL),
        ],
        "multiplicative_right": [
            ("modn2-modn2", ModN(2), ModN(2)),
            ("full-modn2", FULL, ModN(2)),
            ("pattern-3to5-2to3", _pat(({3}, {5})), _pat(({2}, {3}))),
        ],
        "square_reflexive": [
            ("modn2", ModN(2), None), ("modn3", ModN(3), None),
            ("ideal", IDEAL, None), ("chain", CHAIN, None),
        ],
        "square_symmetric": [
            ("modn3", ModN(3), None), ("ext-swap", Extensional([(2, 3), (3, 2)]), None),
            ("product", DIVISOR_CLOSED_6, None), ("partition", PARTITION_1, None),
        ],
        "square_transitive": [
            ("modn4", ModN(4), None), ("ideal", IDEAL, None),
            ("identity", IDENTITY, None), ("ext-triangle", Extensional([(2, 3), (3, 5), (2, 5), (5, 5)]), None),
        ],
        "square_equivalence": [
            ("modn2", ModN(2), None), ("modn4", ModN(4), None),
            ("modn5", ModN(5), None), ("partition", PARTITION_2, None), ("full", FULL, None),
        ],
        "square_partial_order": [
            ("identity", IDENTITY, None), ("small-chain", SMALL_CHAIN, None), ("chain", CHAIN, None),
        ],
        "subset_transitive": [
            ("identity-ideal", IDENTITY, IDEAL),
            ("modn6-modn3", ModN(6), ModN(3)),
            ("ext-ideal", Extensional([(8, 4), (4, 2), (9, 3)]), IDEAL),
            ("powers-left", *left_pair),
        ],
        "subset_transitive_left": [
            ("identity-ideal", IDENTITY, IDEAL),
            ("modn6-modn3", ModN(6), ModN(3)),
            ("modn4-modn2", ModN(4), ModN(2)),
        ],
        "subset_transitive_right": [
            ("identity-ideal", IDENTITY, IDEAL),
            ("modn6-modn3", ModN(6), ModN(3)),
            ("modn4-modn2", ModN(4), ModN(2)),
        ],
        "subset_equivalence": [
            ("modn6-modn3", ModN(6), ModN(3)),
            ("modn4-modn2", ModN(4), ModN(2)),
            ("identity-modn5", IDENTITY, ModN(5)),
            ("identity-partition", IDENTITY, PARTITION_1),
        ],
        "subset_partial_order": [
            ("identity-chain", IDENTITY, CHAIN),
            ("smallchain-chain", SMALL_CHAIN, CHAIN),
            ("identity-identity", IDENTITY, IDENTITY),
        ],
    }
