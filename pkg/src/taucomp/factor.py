"""tau-factorizations over the integers.

A tau-factorization of ``a`` is ``a = unit * f1 * ... * fn`` with every
ordered pair of distinct positions related: ``fi tau fj`` for all ``i != j``.
Requiring both directions keeps the notion order independent when ``tau``
is not symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .domain import Window, check_elem, nonunit_divisors, window_key
from .relations import Relation, TauDivides

__all__ = [
    "TauFactorization", "FactorizationClass", "enumerate_factorizations",
    "factorization_classes", "factor_set", "tau_divides", "tau_divides_relation",
    "is_tau_atom", "is_tau_prime", "tau_prime_counterexample", "ufd_diagnostic",
]


@dataclass(frozen=True, order=True)
class FactorizationClass:
    """Factorizations up to reordering and associates."""

    n: int
    abs_multiset: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"n": self.n, "abs_multiset": list(self.abs_multiset)}


@dataclass(frozen=True)
class TauFactorization:
    target: int
    unit: int
    factors: tuple[int, ...]

    def __post_init__(self):
        if self.unit not in (1, -1):
            raise ValueError("unit must be +1 or -1")
        if self.unit * math.prod(self.factors) != self.target:
            raise ValueError(f"{self.unit} * {self.factors} does not multiply to {self.target}")

    @property
    def cls(self) -> FactorizationClass:
        return FactorizationClass(len(self.factors), tuple(sorted(abs(f) for f in self.factors)))

    def is_valid(self, tau: Relation, window: Window) -> bool:
        fs = self.factors
        return all(
            tau.holds(fs[i], fs[j], window)
            for i in range(len(fs)) for j in range(len(fs)) if i != j
        )

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "unit": self.unit,
            "factors": list(self.factors),
            "class": self.cls.to_dict(),
        }


def _compat_masks(divs: list[int], tau: Relation, window: Window) -> list[int]:
    """Bit ``j`` of mask ``i`` is set iff ``divs[i] tau divs[j]`` and ``divs[j] tau divs[i]``."""
    import numpy as np

    arr = np.asarray(divs, dtype=np.int64)
    m = tau._matrix(arr, arr, window)
    both = m & m.T
    weights = [1 << j for j in range(len(divs))]
    return [sum(w for w, ok in zip(weights, row) if ok) for row in both.tolist()]


@lru_cache(maxsize=512)
def _factorizations(a: int, tau: Relation, window: Window, min_length: int) -> tuple[TauFactorization, ...]:
    divs = nonunit_divisors(a)
    mags = [abs(d) for d in divs]
    compat = _compat_masks(divs, tau, window)
    full = (1 << len(divs)) - 1
    sign_a = 1 if a > 0 else -1
    found: list[tuple[int, ...]] = []

    def extend(prefix: list[int], remaining: int, allowed: int):
        if remaining == 1:
            if len(prefix) >= min_length:
                found.append(tuple(divs[i] for i in prefix))
            return
        for i, mag in enumerate(mags):
            if mag > remaining:
                break
            if remaining % mag or not (allowed >> i) & 1:
                continue
            prefix.append(i)
            extend(prefix, remaining // mag, allowed & compat[i])
            prefix.pop()

    extend([], abs(a), full)
    found.sort(key=lambda fs: (len(fs), fs))
    out = []
    for fs in found:
        unit = sign_a * math.prod(1 if f > 0 else -1 for f in fs)
        out.append(TauFactorization(a, unit, fs))
    return tuple(out)


def enumerate_factorizations(a: int, tau: Relation, window: Window, min_length: int = 2) -> list[TauFactorization]:
    """Every tau-factorization of ``a`` with at least ``min_length`` factors.

    Factors range over the signed nonunit divisors of ``a``; the result is
    ordered by length, then lexicographically on the factor tuple.
    """
    a = check_elem(a, "target")
    return list(_factorizations(a, tau, window, max(1, min_length)))


def factorization_classes(a: int, tau: Relation, window: Window, min_length: int = 2) -> list[FactorizationClass]:
    return sorted({f.cls for f in enumerate_factorizations(a, tau, window, min_length)})


@lru_cache(maxsize=4096)
def factor_set(b: int, tau: Relation, window: Window) -> frozenset:
    """Every element that occurs as a factor in some tau-factorization of ``b`` (trivial ones included)."""
    return frozenset(f for fz in _factorizations(b, tau, window, 1) for f in fz.factors)


def tau_divides(a: int, b: int, tau: Relation, window: Window) -> bool:
    return check_elem(a) in factor_set(check_elem(b), tau, window)


def tau_divides_relation(tau: Relation, window: Window) -> TauDivides:
    return TauDivides(tau, window)


@lru_cache(maxsize=65536)
def is_tau_atom(a: int, tau: Relation, window: Window) -> bool:
    return not _factorizations(check_elem(a), tau, window, 2)


def tau_prime_counterexample(p: int, tau: Relation, window: Window):
    """First ``(b, factorization)`` in window order refuting that ``p`` is a tau-prime, or None."""
    p = check_elem(p)
    for b in window.elements.tolist():
        if b % p:
            continue
        for fz in _factorizations(b, tau, window, 2):
            if not any(f % p == 0 for f in fz.factors):
                return b, fz
    return None


def is_tau_prime(p: int, tau: Relation, window: Window) -> bool:
    return tau_prime_counterexample(p, tau, window) is None


def atom_classes(a: int, tau: Relation, window: Window) -> list[FactorizationClass]:
    """Classes of factorizations of ``a`` (trivial included) whose factors are all tau-atoms."""
    classes = set()
    for fz in _factorizations(a, tau, window, 1):
        if all(is_tau_atom(f, tau, window) for f in fz.factors):
            classes.add(fz.cls)
    return sorted(classes)


def ufd_diagnostic(tau: Relation, window: Window) -> dict:
    """Per-element count of atom factorization classes, with UFD and atomicity failures flagged."""
    entries, ufd_failures, atomic_failures = [], [], []
    for a in window.elements.tolist():
        classes = atom_classes(a, tau, window)
        atom = is_tau_atom(a, tau, window)
        entries.append({
            "element": a,
            "atom": atom,
            "classes": [c.to_dict() for c in classes],
        })
        if len(classes) >= 2:
            ufd_failures.append(a)
        if not classes and not atom:
            atomic_failures.append(a)
    return {
        "relation": tau.to_spec(),
        "window": window.to_dict(),
        "elements": entries,
        "ufd_failures": ufd_failures,
        "atomicity_failures": atomic_failures,
        "window_ufd": not ufd_failures and not atomic_failures,
    }


def sort_elements(xs) -> list[int]:
    return sorted(xs, key=window_key)
