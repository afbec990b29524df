import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from taucomp import catalog as C
from taucomp.domain import Window
from taucomp.relations import (
    FULL, Block, Compose, Extensional, IdealContainment, IdentityOn, Intersection,
    Inverse, ModN, Partition, PrimePattern, Product, RelationSpecError, TauDivides,
    Union, coimage, enumerate_pairs, holds, image, inverse_of, is_subset, load_relation_file,
    matrix, power, prime_support, relation_document, relation_from_spec, same_on,
)

from oracles import elems

W10 = Window(10, 30)

small_elem = st.integers(2, 8).flatmap(lambda m: st.sampled_from([m, -m]))
ext_relation = st.lists(st.tuples(small_elem, small_elem), max_size=10).map(Extensional)


def literal_compose(r1, r2, window):
    """Pairs by literal witness search, in window order."""
    U, Wt = elems(window.bound), elems(window.witness_bound)
    return [(a, b) for a in U for b in U
            if any(r2.holds(a, c, window) and r1.holds(c, b, window) for c in Wt)]


def test_holds_examples():
    assert holds(ModN(3), 4, 10, W10)
    t1, t2 = C.plus_minus_pair(2)
    assert enumerate_pairs(Compose(t1, t2), W10) == [(2, 2), (2, -2), (-2, 2), (-2, -2)]
    comp = Compose(C.PARTITION_1, C.PARTITION_2)
    assert comp.holds(2, 5, W10) and not comp.holds(5, 2, W10)


def test_enumerate_examples():
    assert enumerate_pairs(Extensional([(2, 3)]), W10) == [(2, 3)]
    assert enumerate_pairs(IdentityOn(), Window(3)) == [(2, 2), (-2, -2), (3, 3), (-3, -3)]
    w = Window(12)
    pairs = enumerate_pairs(C.FUTURE_COMPOSED, w)
    assert pairs == [(a, n) for a in (4, 6, 9) for n in w.elements.tolist()]


def test_extensional_dedup_and_validation():
    r = Extensional([(2, 3), (2, 3), (-2, 5)])
    assert r.sorted_pairs() == [(2, 3), (-2, 5)]
    assert r == Extensional([(-2, 5), (2, 3)])
    with pytest.raises(ValueError):
        Extensional([(1, 3)])
    # pairs outside the window are simply not enumerated
    assert enumerate_pairs(Extensional([(2, 99)]), W10) == []


def test_modn_normalization():
    w = Window(20, 40)
    assert ModN(-6) == ModN(6)
    assert same_on(ModN(0), IdentityOn(), w)
    assert same_on(ModN(1), FULL, w)
    assert same_on(Compose(ModN(0), ModN(0)), ModN(0), w)
    for n in range(2, 7):
        assert same_on(Compose(ModN(n), ModN(0)), ModN(n), w)


def test_ideal_containment_is_reverse_divisibility():
    w = Window(20)
    for a, b in enumerate_pairs(IdealContainment(), w):
        assert a % b == 0
    assert holds(IdealContainment(), 8, 4, w) and not holds(IdealContainment(), 4, 8, w)


def test_inverse_examples():
    assert inverse_of(Extensional([(2, 3)])) == Extensional([(3, 2)])
    w = Window(12, 24)
    for r in (ModN(3), C.PARTITION_1, C.PATTERN_1, Compose(ModN(2), C.IDEAL)):
        assert same_on(inverse_of(inverse_of(r)), r, w)
        assert coimage(r, w) == image(inverse_of(r), w)
        assert enumerate_pairs(Inverse(r), w) == sorted(
            [(b, a) for a, b in enumerate_pairs(r, w)], key=lambda p: (abs(p[0]), p[0] < 0, abs(p[1]), p[1] < 0))


def test_image_coimage():
    r = Extensional([(2, 3), (2, 5)])
    assert coimage(r, W10) == [2]
    assert image(r, W10) == [3, 5]


def test_power():
    w = Window(20, 12 * 3)
    assert same_on(power(ModN(4), 2), ModN(4), w)
    assert enumerate_pairs(power(Extensional([(2, 3)]), 2), w) == []
    assert power(ModN(5), 2) == Compose(ModN(5), ModN(5))
    assert power(ModN(5), 1) == ModN(5)
    with pytest.raises(ValueError):
        power(ModN(5), 0)


def test_union_intersection_product():
    w = Window(10)
    a, b = Extensional([(2, 3)]), Extensional([(3, 2), (2, 3)])
    assert enumerate_pairs(a | b, w) == enumerate_pairs(b, w)
    assert enumerate_pairs(a & b, w) == [(2, 3)]
    assert enumerate_pairs(Product([2, -3]), w) == [(2, 2), (2, -3), (-3, 2), (-3, -3)]


def test_partition_blocks():
    w = Window(6)
    labels = C.PARTITION_1.labels(w.elements)
    assert len(set(labels.tolist())) == 3
    with pytest.raises(ValueError):
        Partition((Block("finite", frozenset({2, 3})), Block("positives_except", frozenset({1, 2}))))
    with pytest.raises(ValueError):
        Partition((Block("negatives"), Block("finite", frozenset({-4}))))
    # elements covered by no block are related to nothing
    p = Partition((Block("finite", frozenset({2, 3})),))
    assert enumerate_pairs(p, w) == [(2, 2), (2, 3), (3, 2), (3, 3)]


def test_prime_pattern():
    assert prime_support(360) == frozenset({2, 3, 5})
    pat = PrimePattern(frozenset({2, 5}))
    xs = np.array([10, 20, 40, 2, 5, 30, -10])
    assert pat.matches(xs).tolist() == [True, True, True, False, False, False, False]
    with pytest.raises(ValueError):
        PrimePattern(frozenset({4}))
    with pytest.raises(ValueError):
        PrimePattern(frozenset())


def test_pattern_closed_forms():
    w = Window(60, 120)
    assert same_on(Compose(C.PATTERN_1, C.PATTERN_2), C.PATTERN_12, w)
    assert same_on(Compose(C.PATTERN_2, C.PATTERN_1), C.PATTERN_21, w)


def test_modn_gcd_small():
    w = Window(30, 3 * 60)
    for n in range(2, 9):
        for m in range(2, 9):
            g = ModN(math.gcd(n, m))
            assert same_on(Compose(ModN(n), ModN(m), use_crt=False), g, Window(30, max(30, 3 * math.lcm(n, m))))
            assert same_on(Compose(ModN(n), ModN(m)), g, w)


def test_compose_witness_choice():
    w = Window(10, 30)
    comp = Compose(FULL, Extensional([(2, 9), (2, 3)]))
    assert comp.witness(2, 5, w) == 3
    # a tau_(6) c and c tau_(4) b: c = 2 (mod 6), c = 4 (mod 4)
    assert Compose(ModN(4), ModN(6)).witness(2, 4, w) == -4
    assert comp.witness(3, 5, w) is None


def test_matrix_is_read_only():
    m = matrix(ModN(3), W10)
    with pytest.raises(ValueError):
        m[0, 0] = False


def test_is_subset():
    w = Window(20)
    assert is_subset(ModN(6), ModN(3), w)
    assert not is_subset(ModN(3), ModN(6), w)


# ---------------------------------------------------------------- JSON specs

ROUND_TRIP = [
    Extensional([(2, 2), (2, -2)]), FULL, Product([2, 3]), ModN(4), IdealContainment(),
    C.PARTITION_1, C.PATTERN_2, Compose(ModN(4), ModN(6)), Compose(ModN(4), ModN(6), use_crt=False),
    Inverse(ModN(3)), Union(ModN(3), C.IDEAL), Intersection(ModN(3), C.IDEAL), IdentityOn(),
    IdentityOn([2, -5]), TauDivides(FULL, Window(10, 20)), power(ModN(3), 3),
]


@pytest.mark.parametrize("rel", ROUND_TRIP, ids=lambda r: r.to_spec()["family"])
def test_spec_round_trip(rel):
    spec = json.loads(json.dumps(rel.to_spec()))
    back = relation_from_spec(spec)
    assert back == rel
    assert np.array_equal(matrix(back, W10), matrix(rel, W10))


def test_power_spec():
    r = relation_from_spec({"family": "power", "inner": {"family": "modn", "n": 3}, "k": 2})
    assert r == Compose(ModN(3), ModN(3))


@pytest.mark.parametrize("spec,field", [
    ({"family": "modn", "n": "x"}, "relation.n"),
    ({"family": "modn"}, "relation.n"),
    ({"family": "nope"}, "relation.family"),
    ({"family": "full", "extra": 1}, "relation.extra"),
    ({"family": "compose", "first": {"family": "full"}, "second": {"family": "modn", "n": []}},
     "relation.second.n"),
    ({"family": "extensional", "pairs": [[2, 3, 4]]}, "relation.pairs[0]"),
    ({"family": "extensional", "pairs": [[1, 3]]}, "relation"),
    ({"family": "partition", "blocks": [{"weird": [2]}]}, "relation.blocks[0].weird"),
    ({"family": "power", "inner": {"family": "full"}, "k": 0}, "relation.k"),
    ({"family": "tau_divides", "inner": {"family": "full"}, "window": {"window": 9, "witness_bound": 3}},
     "relation.window"),
])
def test_spec_errors_name_field(spec, field):
    with pytest.raises(RelationSpecError) as err:
        relation_from_spec(spec)
    assert err.value.field == field


def test_load_relation_file(tmp_path):
    p = tmp_path / "r.json"
    p.write_text(json.dumps(relation_document(ModN(4), Window(20, 40))))
    rel, w = load_relation_file(p)
    assert rel == ModN(4) and w == Window(20, 40)
    p.write_text(json.dumps({"relation": {"family": "full"}, "oops": 1}))
    with pytest.raises(RelationSpecError):
        load_relation_file(p)
    p.write_text("{not json")
    with pytest.raises(RelationSpecError):
        load_relation_file(p)


# ---------------------------------------------------------------- properties

@settings(max_examples=60, deadline=None)
@given(ext_relation, ext_relation)
def test_compose_matches_literal_witness_search(r1, r2):
    w = Window(6, 9)
    assert enumerate_pairs(Compose(r1, r2), w) == literal_compose(r1, r2, w)


@settings(max_examples=60, deadline=None)
@given(ext_relation, ext_relation)
def test_inverse_order_law_and_projections(r1, r2):
    w = Window(8)
    comp = Compose(r1, r2)
    assert same_on(inverse_of(comp), Compose(inverse_of(r2), inverse_of(r1)), w)
    assert set(image(comp, w)) <= set(image(r1, w))
    assert set(coimage(comp, w)) <= set(coimage(r2, w))
    assert is_subset(IdentityOn(image(r1, w)), Compose(r1, inverse_of(r1)), w)
    assert is_subset(IdentityOn(coimage(r1, w)), Compose(inverse_of(r1), r1), w)


@settings(max_examples=40, deadline=None)
@given(ext_relation, ext_relation, ext_relation)
def test_composition_associative(r1, r2, r3):
    w = Window(8)
    assert same_on(Compose(Compose(r1, r2), r3), Compose(r1, Compose(r2, r3)), w)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(2, 12))
def test_crt_and_generic_paths_agree(n, m):
    w = Window(15, max(15, 3 * math.lcm(n, m)))
    assert np.array_equal(matrix(Compose(ModN(n), ModN(m)), w),
                          matrix(Compose(ModN(n), ModN(m), use_crt=False), w))
