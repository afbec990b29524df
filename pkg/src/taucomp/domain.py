"""Arithmetic of the nonzero nonunits of the integers.

Elements are plain ``int`` values with ``abs(x) >= 2``.  The unit group is
fixed to ``{1, -1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

UNITS = (1, -1)


def is_elem(x: int) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool) and abs(int(x)) >= 2


def check_elem(x, what: str = "element") -> int:
    """Return ``x`` as an int, raising ValueError unless it is a nonzero nonunit."""
    if not is_elem(x):
        raise ValueError(f"{what} must be an integer with |x| >= 2, got {x!r}")
    return int(x)


def divides(a: int, b: int) -> bool:
    if a == 0:
        raise ValueError("divides: divisor must be nonzero")
    return b % a == 0


def associates(a: int, b: int) -> bool:
    return abs(a) == abs(b)


def bezout(m: int, n: int) -> tuple[int, int, int]:
    """Extended Euclid: return ``(g, k1, k2)`` with ``g = gcd(m, n) = m*k1 + n*k2``."""
    if m < 1 or n < 1:
        raise ValueError("bezout expects positive integers")
    old_r, r = m, n
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def crt_witness(a: int, b: int, m: int, n: int) -> int | None:
    """Smallest-magnitude ``c`` with ``c = a (mod m)``, ``c = b (mod n)``, ``|c| >= 2``.

    Positive ``c`` wins ties.  Returns None when the congruences are
    inconsistent, i.e. ``gcd(m, n)`` does not divide ``a - b``.
    """
    if m < 2 or n < 2:
        raise ValueError("crt_witness expects moduli >= 2")
    g, k1, _ = bezout(m, n)
    if (a - b) % g:
        return None
    lcm = m // g * n
    r = (a + m * k1 * ((b - a) // g)) % lcm
    # the class mod lcm holds at most three forbidden values, so k in [-3, 3] always suffices
    candidates = [r + k * lcm for k in range(-3, 4)]
    return min((c for c in candidates if abs(c) >= 2), key=lambda c: (abs(c), c < 0))


def nonunit_divisors(a: int) -> list[int]:
    """Signed divisors ``d`` of ``a`` with ``|d| >= 2``, in window order (2, -2, 3, -3, ...)."""
    a = abs(a)
    out = []
    for d in range(2, math.isqrt(a) + 1):
        if a % d == 0:
            out.append(d)
            if d * d != a:
                out.append(a // d)
    if a >= 2:
        out.append(a)
    return [s * d for d in sorted(set(out)) for s in (1, -1)]


def position(x: int) -> int:
    """Index of ``x`` in the window enumeration order 2, -2, 3, -3, ..."""
    return 2 * (abs(x) - 2) + (x < 0)


def window_key(x: int) -> tuple[int, bool]:
    return abs(x), x < 0


@lru_cache(maxsize=64)
def universe(bound: int) -> np.ndarray:
    """``{x : 2 <= |x| <= bound}`` in window order, as a read-only int64 array."""
    if bound < 2:
        arr = np.zeros(0, dtype=np.int64)
    else:
        mags = np.arange(2, bound + 1, dtype=np.int64)
        arr = np.stack([mags, -mags], axis=1).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Window:
    """Finite truncation of the nonzero nonunits.

    ``bound`` fixes the enumerated universe; ``witness_bound`` fixes the range
    searched for composition witnesses and products.
    """

    bound: int
    witness_bound: int | None = None

    def __post_init__(self):
        if self.witness_bound is None:
            object.__setattr__(self, "witness_bound", self.bound)
        if self.bound < 2:
            raise ValueError(f"window bound must be >= 2, got {self.bound}")
        if self.witness_bound < self.bound:
            raise ValueError(
                f"witness_bound ({self.witness_bound}) must be >= window bound ({self.bound})"
            )

    @property
    def elements(self) -> np.ndarray:
        return universe(self.bound)

    @property
    def witnesses(self) -> np.ndarray:
        return universe(self.witness_bound)

    def __contains__(self, x) -> bool:
        return is_elem(x) and abs(int(x)) <= self.bound

    def widen(self) -> "Window":
        """Window whose enumerated universe is this window's witness universe."""
        return Window(self.witness_bound, self.witness_bound)

    def to_dict(self) -> dict:
        return {"B": self.bound, "W": self.witness_bound}
