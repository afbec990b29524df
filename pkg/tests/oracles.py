"""Slow, literal reference implementations used only by the tests."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from sympy import factorint
from sympy.utilities.iterables import multiset_partitions


def naive_gcd(m: int, n: int) -> int:
    return max(d for d in range(1, min(m, n) + 1) if m % d == 0 and n % d == 0)


def crt_scan(a: int, b: int, m: int, n: int, limit: int):
    """Scan c = 2, -2, 3, -3, ... up to ``limit`` for ``c = a (mod m)``, ``c = b (mod n)``."""
    for mag in range(2, limit + 1):
        for c in (mag, -mag):
            if (c - a) % m == 0 and (c - b) % n == 0:
                return c
    return None


def elems(bound: int) -> list[int]:
    return [s * k for k in range(2, bound + 1) for s in (1, -1)]


def signed_divisors(a: int) -> list[int]:
    return [d for d in elems(abs(a)) if a % d == 0]


def literal_factorizations(a: int, related) -> set[tuple[int, tuple[int, ...]]]:
    """Every ``(unit, factors)`` with factors an ordered tuple of signed nonunit divisors,
    ``unit * prod(factors) == a`` and ``related(fi, fj)`` for all ordered ``i != j``.

    Tuples are grown one factor at a time from the whole signed divisor list.
    """
    divs = signed_divisors(a)
    out = set()

    def grow(prefix, prod):
        if abs(prod) == abs(a) and prefix:
            unit = a // prod
            if all(related(x, y) for i, x in enumerate(prefix) for j, y in enumerate(prefix) if i != j):
                out.add((unit, tuple(prefix)))
            return
        for d in divs:
            if abs(a) % abs(prod * d) == 0:
                grow(prefix + [d], prod * d)

    grow([], 1)
    return out


@lru_cache(maxsize=None)
def ordered_factorizations(m: int) -> tuple[tuple[int, ...], ...]:
    """Ordered tuples of integers >= 2 with product ``m`` (by trial division)."""
    out = [(m,)]
    for d in range(2, m):
        if m % d == 0:
            out.extend((d,) + rest for rest in ordered_factorizations(m // d))
    return tuple(out)


def multiplicative_partition_classes(m: int) -> set[tuple[int, ...]]:
    """Unordered factorizations of ``m`` into factors >= 2, via multiset partitions of its primes."""
    primes = [p for p, e in factorint(m).items() for _ in range(e)]
    out = set()
    for part in multiset_partitions(primes):
        fs = []
        for block in part:
            v = 1
            for p in block:
                v *= p
            fs.append(v)
        out.add(tuple(sorted(fs)))
    return out


# ---------------------------------------------------------------- naive property checks

def naive_first(prop: str, rel, B: int, W: int):
    """First counterexample in window order for a basic property, by literal loops.

    ``rel(a, b)`` is a membership predicate.  Returns (counterexample | None, skipped).
    """
    U = elems(B)
    skipped = 0
    if prop == "reflexive":
        for a in U:
            if not rel(a, a):
                return (a,), 0
    elif prop == "symmetric":
        for a, b in product(U, U):
            if rel(a, b) and not rel(b, a):
                return (a, b), 0
    elif prop == "antisymmetric":
        for a, b in product(U, U):
            if a != b and rel(a, b) and rel(b, a):
                return (a, b), 0
    elif prop == "transitive":
        for a, b, c in product(U, U, U):
            if rel(a, b) and rel(b, c) and not rel(a, c):
                return (a, b, c), 0
    elif prop == "divisive_left":
        for a, b, d in product(U, U, U):
            if a % d == 0 and rel(a, b) and not rel(d, b):
                return (a, b, d), 0
    elif prop == "divisive_right":
        for a, b, d in product(U, U, U):
            if b % d == 0 and rel(a, b) and not rel(a, d):
                return (a, b, d), 0
    elif prop == "assoc_pres_left":
        for a, b, c in product(U, U, U):
            if abs(a) == abs(c) and rel(a, b) and not rel(c, b):
                return (a, b, c), 0
    elif prop == "assoc_pres_right":
        for a, b, c in product(U, U, U):
            if abs(b) == abs(c) and rel(a, b) and not rel(a, c):
                return (a, b, c), 0
    elif prop in ("mult_left", "mult_right"):
        found = None
        for a, b, c in product(U, U, U):
            if prop == "mult_left":
                premise, x, y = rel(a, c) and rel(b, c), a * b, c
            else:
                premise, x, y = rel(a, b) and rel(a, c), a, b * c
            if not premise:
                continue
            if abs(a * b if prop == "mult_left" else b * c) > W:
                skipped += 1
                continue
            if found is None and not rel(x, y):
                found = (a, b, c)
        return found, skipped
    else:
        raise ValueError(prop)
    return None, skipped
