import math

import pytest
from hypothesis import given, strategies as st

from taucomp.domain import (
    Window, associates, bezout, check_elem, crt_witness, divides, nonunit_divisors,
    position, universe,
)

from oracles import crt_scan, naive_gcd, signed_divisors


@pytest.mark.parametrize("a,b,expected", [(2, 6, True), (4, 6, False), (-3, 9, True), (5, 0, True)])
def test_divides(a, b, expected):
    assert divides(a, b) is expected


def test_divides_by_zero():
    with pytest.raises(ValueError):
        divides(0, 5)


@pytest.mark.parametrize("a,b,expected", [(5, -5, True), (5, 5, True), (5, 10, False)])
def test_associates(a, b, expected):
    assert associates(a, b) is expected


def test_check_elem():
    assert check_elem(-7) == -7
    for bad in (0, 1, -1, True, 2.0):
        with pytest.raises(ValueError):
            check_elem(bad)


def test_bezout_examples():
    g, k1, k2 = bezout(4, 6)
    assert g == 2 and 4 * k1 + 6 * k2 == 2
    assert bezout(7, 7)[0] == 7
    assert bezout(9, 6)[0] == 3
    with pytest.raises(ValueError):
        bezout(0, 3)


def test_bezout_against_naive_gcd():
    for m in range(1, 201):
        for n in range(1, 201, 7):
            g, k1, k2 = bezout(m, n)
            assert g == naive_gcd(m, n)
            assert m * k1 + n * k2 == g


def test_crt_examples():
    assert crt_witness(2, 8, 3, 3) == 2
    assert crt_witness(1, 2, 4, 6) is None
    c = crt_witness(2, 4, 4, 6)
    assert c == crt_scan(2, 4, 4, 6, 3 * 12) == -2


def test_crt_tie_prefers_positive():
    assert crt_witness(2, 2, 4, 4) == 2
    assert crt_witness(-2, -2, 4, 4) == 2  # -2 = 2 mod 4, positive wins the tie
    assert crt_witness(0, 0, 2, 2) == 2


def test_crt_rejects_small_moduli():
    with pytest.raises(ValueError):
        crt_witness(1, 1, 1, 5)


def test_crt_none_iff_inconsistent_exhaustive():
    for m in range(2, 13):
        for n in range(2, 13):
            g = math.gcd(m, n)
            L = math.lcm(m, n)
            for a in range(-50, 51):
                for b in range(-50, 51):
                    c = crt_witness(a, b, m, n)
                    if (a - b) % g:
                        assert c is None
                    else:
                        assert c is not None and abs(c) >= 2
                        assert (c - a) % m == 0 and (b - c) % n == 0
                        assert abs(c) <= 3 * L


def test_crt_minimal_against_scan():
    for m in range(2, 10):
        for n in range(2, 10):
            for a in range(-12, 13):
                for b in range(-12, 13):
                    assert crt_witness(a, b, m, n) == crt_scan(a, b, m, n, 3 * math.lcm(m, n))


def test_nonunit_divisors():
    assert nonunit_divisors(12) == [2, -2, 3, -3, 4, -4, 6, -6, 12, -12]
    assert nonunit_divisors(-7) == [7, -7]
    for a in range(2, 200):
        assert nonunit_divisors(a) == signed_divisors(a)


def test_window_order_and_errors():
    w = Window(4, 9)
    assert w.elements.tolist() == [2, -2, 3, -3, 4, -4]
    assert len(w.witnesses) == 16
    assert 4 in w and -4 in w and 5 not in w and 1 not in w
    assert w.widen() == Window(9, 9)
    assert Window(5).witness_bound == 5
    assert w.to_dict() == {"B": 4, "W": 9}
    with pytest.raises(ValueError):
        Window(10, 5)
    with pytest.raises(ValueError):
        Window(1)


def test_universe_read_only():
    with pytest.raises(ValueError):
        universe(5)[0] = 9


@given(st.integers(2, 300))
def test_position_matches_universe(bound):
    u = universe(bound).tolist()
    assert [position(x) for x in u] == list(range(len(u)))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(2, 400), st.integers(2, 400))
def test_crt_witness_properties(a, b, m, n):
    c = crt_witness(a, b, m, n)
    assert (c is None) == ((a - b) % math.gcd(m, n) != 0)
    if c is not None:
        assert (c - a) % m == 0 and (c - b) % n == 0
        assert 2 <= abs(c) <= 3 * math.lcm(m, n)
