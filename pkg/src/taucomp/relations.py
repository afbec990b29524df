"""Binary relations on the nonzero nonunits of the integers.

Every relation evaluates membership in bulk through ``_matrix(rows, cols,
window)``, which returns a boolean array ``M`` with ``M[i, j]`` true iff
``rows[i]`` relates to ``cols[j]``.  Combinators wrap their operands and
never materialize them eagerly.

Composition follows the convention ``a (R1 o R2) b`` iff some witness ``c``
satisfies ``a R2 c`` and ``c R1 b``: the inner relation (``second``) applies
first.  Witnesses are searched over ``window.witnesses``, so generic
composition under-approximates the infinite one.  Composition of two
congruence relations is decided exactly through the CRT instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .domain import Window, check_elem, crt_witness, window_key

__all__ = [
    "Relation", "Extensional", "Full", "Product", "ModN", "IdealContainment",
    "Block", "Partition", "PrimePattern", "Pattern", "Compose", "Inverse",
    "Union", "Intersection", "IdentityOn", "TauDivides",
    "holds", "matrix", "enumerate_pairs", "inverse_of", "image", "coimage",
    "power", "compose", "is_subset", "same_on", "identity_of", "EMPTY", "FULL",
    "RelationSpecError", "relation_from_spec", "load_relation_file",
]


def _as_array(xs) -> np.ndarray:
    return np.asarray(xs, dtype=np.int64).reshape(-1)


class Relation:
    """Base class; subclasses are frozen dataclasses and therefore hashable."""

    exact = True

    def _matrix(self, rows: np.ndarray, cols: np.ndarray, window: Window) -> np.ndarray:
        raise NotImplementedError

    def to_spec(self) -> dict:
        raise NotImplementedError

    def holds(self, a: int, b: int, window: Window) -> bool:
        return bool(self._matrix(_as_array([a]), _as_array([b]), window)[0, 0])

    def describe(self) -> str:
        return json.dumps(self.to_spec(), sort_keys=True, separators=(",", ":"))

    # small conveniences for composing specs in code
    def __matmul__(self, other: "Relation") -> "Compose":
        return Compose(self, other)

    def __or__(self, other: "Relation") -> "Union":
        return Union(self, other)

    def __and__(self, other: "Relation") -> "Intersection":
        return Intersection(self, other)


@dataclass(frozen=True)
class Extensional(Relation):
    pairs: frozenset = frozenset()

    def __init__(self, pairs: Iterable = ()):
        clean = frozenset(
            (check_elem(a, "pair element"), check_elem(b, "pair element")) for a, b in pairs
        )
        object.__setattr__(self, "pairs", clean)

    def _matrix(self, rows, cols, window):
        out = np.zeros((len(rows), len(cols)), dtype=bool)
        if not self.pairs:
            return out
        rpos, cpos = {}, {}
        for i, x in enumerate(rows.tolist()):
            rpos.setdefault(x, []).append(i)
        for j, x in enumerate(cols.tolist()):
            cpos.setdefault(x, []).append(j)
        for a, b in self.pairs:
            if a in rpos and b in cpos:
                for i in rpos[a]:
                    out[i, cpos[b]] = True
        return out

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs, key=lambda p: (window_key(p[0]), window_key(p[1])))

    def to_spec(self):
        return {"family": "extensional", "pairs": [list(p) for p in self.sorted_pairs()]}


@dataclass(frozen=True)
class Full(Relation):
    def _matrix(self, rows, cols, window):
        return np.ones((len(rows), len(cols)), dtype=bool)

    def to_spec(self):
        return {"family": "full"}


@dataclass(frozen=True)
class Product(Relation):
    """``S x S`` for a finite set ``S``."""

    elements: frozenset = frozenset()

    def __init__(self, elements: Iterable[int]):
        object.__setattr__(self, "elements", frozenset(check_elem(x) for x in elements))

    def _matrix(self, rows, cols, window):
        s = np.fromiter(self.elements, dtype=np.int64, count=len(self.elements))
        return np.isin(rows, s)[:, None] & np.isin(cols, s)[None, :]

    def to_spec(self):
        return {"family": "product", "set": sorted(self.elements, key=window_key)}


@dataclass(frozen=True)
class ModN(Relation):
    """``a ~ b`` iff ``n | a - b``.  ``n = 0`` is the identity, ``n = 1`` the full relation."""

    n: int

    def __post_init__(self):
        object.__setattr__(self, "n", abs(int(self.n)))

    def _matrix(self, rows, cols, window):
        if self.n == 0:
            return rows[:, None] == cols[None, :]
        if self.n == 1:
            return np.ones((len(rows), len(cols)), dtype=bool)
        return (rows % self.n)[:, None] == (cols % self.n)[None, :]

    def to_spec(self):
        return {"family": "modn", "n": self.n}


@dataclass(frozen=True)
class IdealContainment(Relation):
    """``(a) <= (b) < Z``; in the integers, ``a ~ b`` iff ``b | a``."""

    def _matrix(self, rows, cols, window):
        return rows[:, None] % cols[None, :] == 0

    def to_spec(self):
        return {"family": "ideal_containment"}


@dataclass(frozen=True)
class Block:
    """One partition block: ``finite``, ``negatives`` or ``positives_except``."""

    kind: str
    values: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in ("finite", "negatives", "positives_except"):
            raise ValueError(f"unknown block kind {self.kind!r}")
        vals = frozenset(int(v) for v in self.values)
        if self.kind == "finite":
            vals = frozenset(check_elem(v, "block element") for v in vals)
            if not vals:
                raise ValueError("finite block must be nonempty")
        elif self.kind == "positives_except" and any(v < 1 for v in vals):
            raise ValueError("positives_except excludes positive integers only")
        object.__setattr__(self, "values", vals)

    def members(self, xs: np.ndarray) -> np.ndarray:
        if self.kind == "finite":
            return np.isin(xs, np.array(sorted(self.values), dtype=np.int64))
        if self.kind == "negatives":
            return xs <= -2
        excluded = np.array(sorted(self.values), dtype=np.int64)
        return (xs >= 2) & ~np.isin(xs, excluded)

    def to_spec(self):
        if self.kind == "negatives":
            return {"negatives": True}
        return {self.kind: sorted(self.values, key=window_key)}


def _check_disjoint(blocks: tuple[Block, ...]) -> None:
    finite = [v for b in blocks if b.kind == "finite" for v in b.values]
    if len(finite) != len(set(finite)):
        raise ValueError("partition blocks overlap")
    if sum(b.kind == "negatives" for b in blocks) > 1:
        raise ValueError("partition blocks overlap: two negatives blocks")
    if sum(b.kind == "positives_except" for b in blocks) > 1:
        raise ValueError("partition blocks overlap: two positives_except blocks")
    for b in blocks:
        if b.kind == "negatives" and any(v < 0 for v in finite):
            raise ValueError("partition blocks overlap: finite negative inside negatives block")
        if b.kind == "positives_except" and any(v > 0 and v not in b.values for v in finite):
            raise ValueError("partition blocks overlap: finite positive not excluded")


@dataclass(frozen=True)
class Partition(Relation):
    """Equivalence relation induced by pairwise disjoint blocks (elements outside all blocks relate to nothing)."""

    blocks: tuple = ()

    def __post_init__(self):
        blocks = tuple(self.blocks)
        _check_disjoint(blocks)
        object.__setattr__(self, "blocks", blocks)

    def labels(self, xs: np.ndarray) -> np.ndarray:
        lab = np.full(len(xs), -1, dtype=np.int64)
        for i, block in enumerate(self.blocks):
            lab[block.members(xs)] = i
        return lab

    def _matrix(self, rows, cols, window):
        lr, lc = self.labels(rows), self.labels(cols)
        return (lr[:, None] == lc[None, :]) & (lr >= 0)[:, None]

    def to_spec(self):
        return {"family": "partition", "blocks": [b.to_spec() for b in self.blocks]}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def prime_support(x: int) -> frozenset:
    x = abs(x)
    out, d = set(), 2
    while d * d <= x:
        while x % d == 0:
            out.add(d)
            x //= d
        d += 1
    if x > 1:
        out.add(x)
    return frozenset(out)


@dataclass(frozen=True)
class PrimePattern:
    """Positive integers whose prime support is exactly ``primes``."""

    primes: frozenset

    def __post_init__(self):
        primes = frozenset(int(p) for p in self.primes)
        if not primes or not all(_is_prime(p) for p in primes):
            raise ValueError(f"pattern needs a nonempty set of primes, got {sorted(primes)}")
        object.__setattr__(self, "primes", primes)

    def matches(self, xs: np.ndarray) -> np.ndarray:
        return np.fromiter(
            (x > 0 and prime_support(x) == self.primes for x in xs.tolist()),
            dtype=bool, count=len(xs),
        )


@dataclass(frozen=True)
class Pattern(Relation):
    """Union of ``P x Q`` blocks over prime-support patterns."""

    pairs: tuple = ()

    def __post_init__(self):
        pairs = tuple(
            (p if isinstance(p, PrimePattern) else PrimePattern(frozenset(p)),
             q if isinstance(q, PrimePattern) else PrimePattern(frozenset(q)))
            for p, q in self.pairs
        )
        object.__setattr__(self, "pairs", pairs)

    def _matrix(self, rows, cols, window):
        out = np.zeros((len(rows), len(cols)), dtype=bool)
        for p, q in self.pairs:
            out |= p.matches(rows)[:, None] & q.matches(cols)[None, :]
        return out

    def to_spec(self):
        return {
            "family": "pattern",
            "pairs": [[sorted(p.primes), sorted(q.primes)] for p, q in self.pairs],
        }


@lru_cache(maxsize=4096)
def _crt_table(m: int, n: int) -> np.ndarray:
    table = np.zeros((m, n), dtype=bool)
    for ra in range(m):
        for rb in range(n):
            table[ra, rb] = crt_witness(ra, rb, m, n) is not None
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class Compose(Relation):
    """``first o second``: ``a`` relates to ``b`` iff ``a second c`` and ``c first b`` for some witness ``c``."""

    first: Relation
    second: Relation
    use_crt: bool = field(default=True, compare=True)

    @property
    def crt_exact(self) -> bool:
        return (
            self.use_crt
            and isinstance(self.first, ModN) and isinstance(self.second, ModN)
            and self.first.n >= 2 and self.second.n >= 2
        )

    @property
    def exact(self) -> bool:
        return self.crt_exact

    def _matrix(self, rows, cols, window):
        if self.crt_exact:
            m, n = self.second.n, self.first.n
            return _crt_table(m, n)[(rows % m)[:, None], (cols % n)[None, :]]
        wit = window.witnesses
        left = self.second._matrix(rows, wit, window)
        right = self.first._matrix(wit, cols, window)
        return (left.astype(np.float32) @ right.astype(np.float32)) > 0

    def witness(self, a: int, b: int, window: Window) -> int | None:
        """The witness used for ``(a, b)``: CRT minimum, else the first one in window order."""
        if self.crt_exact:
            return crt_witness(a, b, self.second.n, self.first.n)
        wit = window.witnesses
        ok = self.second._matrix(_as_array([a]), wit, window)[0] & \
            self.first._matrix(wit, _as_array([b]), window)[:, 0]
        idx = np.flatnonzero(ok)
        return int(wit[idx[0]]) if len(idx) else None

    def to_spec(self):
        spec = {"family": "compose", "first": self.first.to_spec(), "second": self.second.to_spec()}
        if not self.use_crt:
            spec["use_crt"] = False
        return spec


@dataclass(frozen=True)
class Inverse(Relation):
    inner: Relation

    @property
    def exact(self):
        return self.inner.exact

    def _matrix(self, rows, cols, window):
        return self.inner._matrix(cols, rows, window).T

    def to_spec(self):
        return {"family": "inverse", "inner": self.inner.to_spec()}


@dataclass(frozen=True)
class Union(Relation):
    lhs: Relation
    rhs: Relation

    @property
    def exact(self):
        return self.lhs.exact and self.rhs.exact

    def _matrix(self, rows, cols, window):
        return self.lhs._matrix(rows, cols, window) | self.rhs._matrix(rows, cols, window)

    def to_spec(self):
        return {"family": "union", "lhs": self.lhs.to_spec(), "rhs": self.rhs.to_spec()}


@dataclass(frozen=True)
class Intersection(Relation):
    lhs: Relation
    rhs: Relation

    @property
    def exact(self):
        return self.lhs.exact and self.rhs.exact

    def _matrix(self, rows, cols, window):
        return self.lhs._matrix(rows, cols, window) & self.rhs._matrix(rows, cols, window)

    def to_spec(self):
        return {"family": "intersection", "lhs": self.lhs.to_spec(), "rhs": self.rhs.to_spec()}


@dataclass(frozen=True)
class IdentityOn(Relation):
    """Diagonal on a finite set, or on all nonunits when ``elements`` is None."""

    elements: frozenset | None = None

    def __init__(self, elements: Iterable[int] | None = None):
        if elements is not None:
            elements = frozenset(check_elem(x) for x in elements)
        object.__setattr__(self, "elements", elements)

    def _matrix(self, rows, cols, window):
        out = rows[:, None] == cols[None, :]
        if self.elements is not None:
            s = np.fromiter(self.elements, dtype=np.int64, count=len(self.elements))
            out &= np.isin(rows, s)[:, None]
        return out

    def to_spec(self):
        if self.elements is None:
            return {"family": "identity_on", "set": "all"}
        return {"family": "identity_on", "set": sorted(self.elements, key=window_key)}


@dataclass(frozen=True)
class TauDivides(Relation):
    """``a |_tau b``: ``a`` occurs as a factor of some tau-factorization of ``b``."""

    inner: Relation
    window: Window

    @property
    def exact(self):
        return self.inner.exact

    def _matrix(self, rows, cols, window):
        from .factor import factor_set

        out = np.zeros((len(rows), len(cols)), dtype=bool)
        for j, b in enumerate(cols.tolist()):
            fs = factor_set(b, self.inner, self.window)
            if fs:
                out[:, j] = np.isin(rows, np.fromiter(fs, dtype=np.int64, count=len(fs)))
        return out

    def to_spec(self):
        return {
            "family": "tau_divides",
            "inner": self.inner.to_spec(),
            "window": {"window": self.window.bound, "witness_bound": self.window.witness_bound},
        }


EMPTY = Extensional()
FULL = Full()


# ---------------------------------------------------------------- operations

def holds(R: Relation, a: int, b: int, window: Window) -> bool:
    return R.holds(check_elem(a), check_elem(b), window)


@lru_cache(maxsize=256)
def _window_matrix(R: Relation, window: Window) -> np.ndarray:
    m = R._matrix(window.elements, window.elements, window)
    m.setflags(write=False)
    return m


def matrix(R: Relation, window: Window) -> np.ndarray:
    """Read-only membership matrix over ``window.elements`` (both axes in window order)."""
    return _window_matrix(R, window)


def enumerate_pairs(R: Relation, window: Window) -> list[tuple[int, int]]:
    """All related pairs inside the window, ordered by (position of a, position of b)."""
    elems = window.elements
    return [(int(elems[i]), int(elems[j])) for i, j in np.argwhere(matrix(R, window))]


def inverse_of(R: Relation) -> Relation:
    if isinstance(R, Inverse):
        return R.inner
    if isinstance(R, Extensional):
        return Extensional((b, a) for a, b in R.pairs)
    return Inverse(R)


def coimage(R: Relation, window: Window) -> list[int]:
    elems = window.elements
    return [int(x) for x in elems[matrix(R, window).any(axis=1)]]


def image(R: Relation, window: Window) -> list[int]:
    elems = window.elements
    return [int(x) for x in elems[matrix(R, window).any(axis=0)]]


def compose(first: Relation, second: Relation) -> Compose:
    return Compose(first, second)


def power(R: Relation, k: int) -> Relation:
    """``R o R o ... o R`` (k factors, right-associated)."""
    if k < 1:
        raise ValueError("power needs k >= 1")
    out = R
    for _ in range(k - 1):
        out = Compose(R, out)
    return out


def identity_of(elements: Iterable[int]) -> IdentityOn:
    return IdentityOn(elements)


def is_subset(R1: Relation, R2: Relation, window: Window) -> bool:
    return not (matrix(R1, window) & ~matrix(R2, window)).any()


def same_on(R1: Relation, R2: Relation, window: Window) -> bool:
    return bool(np.array_equal(matrix(R1, window), matrix(R2, window)))


# ---------------------------------------------------------------- JSON specs

class RelationSpecError(ValueError):
    """Malformed relation definition; ``field`` names the offending key path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


_FIELDS = {
    "extensional": {"pairs"},
    "full": set(),
    "product": {"set"},
    "modn": {"n"},
    "ideal_containment": set(),
    "partition": {"blocks"},
    "pattern": {"pairs"},
    "compose": {"first", "second", "use_crt"},
    "power": {"inner", "k"},
    "inverse": {"inner"},
    "union": {"lhs", "rhs"},
    "intersection": {"lhs", "rhs"},
    "identity_on": {"set"},
    "tau_divides": {"inner", "window"},
}


def _int_list(value, path: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise RelationSpecError(path, "expected a list of integers")
    return value


def _window_from_spec(spec, path: str) -> Window:
    if not isinstance(spec, dict):
        raise RelationSpecError(path, "expected an object")
    extra = set(spec) - {"window", "witness_bound"}
    if extra:
        raise RelationSpecError(f"{path}.{sorted(extra)[0]}", "unknown field")
    if "window" not in spec:
        raise RelationSpecError(f"{path}.window", "missing field")
    try:
        return Window(int(spec["window"]), int(spec.get("witness_bound", spec["window"])))
    except (TypeError, ValueError) as exc:
        raise RelationSpecError(path, str(exc)) from None


def _block_from_spec(spec, path: str) -> Block:
    if not isinstance(spec, dict) or len(spec) != 1:
        raise RelationSpecError(path, "block must be an object with exactly one key")
    (kind, value), = spec.items()
    if kind == "negatives":
        if value is not True:
            raise RelationSpecError(f"{path}.negatives", "must be true")
        return Block("negatives")
    if kind in ("finite", "positives_except"):
        return Block(kind, frozenset(_int_list(value, f"{path}.{kind}")))
    raise RelationSpecError(f"{path}.{kind}", "unknown block kind")


def relation_from_spec(spec, path: str = "relation") -> Relation:
    if not isinstance(spec, dict):
        raise RelationSpecError(path, "expected an object")
    family = spec.get("family")
    if family not in _FIELDS:
        raise RelationSpecError(f"{path}.family", f"unknown family {family!r}")
    extra = set(spec) - _FIELDS[family] - {"family"}
    if extra:
        raise RelationSpecError(f"{path}.{sorted(extra)[0]}", "unknown field")
    missing = _FIELDS[family] - set(spec) - {"use_crt"}
    if family == "identity_on":
        missing.discard("set")
    if missing:
        raise RelationSpecError(f"{path}.{sorted(missing)[0]}", "missing field")

    try:
        if family == "extensional":
            pairs = spec["pairs"]
            if not isinstance(pairs, list):
                raise RelationSpecError(f"{path}.pairs", "expected a list of pairs")
            for i, p in enumerate(pairs):
                if len(_int_list(p, f"{path}.pairs[{i}]")) != 2:
                    raise RelationSpecError(f"{path}.pairs[{i}]", "pair must have two entries")
            return Extensional(tuple(p) for p in pairs)
        if family == "full":
            return FULL
        if family == "product":
            return Product(_int_list(spec["set"], f"{path}.set"))
        if family == "modn":
            n = spec["n"]
            if not isinstance(n, int) or isinstance(n, bool):
                raise RelationSpecError(f"{path}.n", "expected an integer")
            return ModN(n)
        if family == "ideal_containment":
            return IdealContainment()
        if family == "partition":
            blocks = spec["blocks"]
            if not isinstance(blocks, list):
                raise RelationSpecError(f"{path}.blocks", "expected a list")
            return Partition(tuple(_block_from_spec(b, f"{path}.blocks[{i}]") for i, b in enumerate(blocks)))
        if family == "pattern":
            pairs = spec["pairs"]
            if not isinstance(pairs, list):
                raise RelationSpecError(f"{path}.pairs", "expected a list")
            out = []
            for i, p in enumerate(pairs):
                if not isinstance(p, list) or len(p) != 2:
                    raise RelationSpecError(f"{path}.pairs[{i}]", "expected [primes, primes]")
                out.append((frozenset(_int_list(p[0], f"{path}.pairs[{i}][0]")),
                            frozenset(_int_list(p[1], f"{path}.pairs[{i}][1]"))))
            return Pattern(tuple(out))
        if family == "compose":
            use_crt = spec.get("use_crt", True)
            if not isinstance(use_crt, bool):
                raise RelationSpecError(f"{path}.use_crt", "expected a boolean")
            return Compose(relation_from_spec(spec["first"], f"{path}.first"),
                           relation_from_spec(spec["second"], f"{path}.second"), use_crt)
        if family == "power":
            k = spec["k"]
            if not isinstance(k, int) or k < 1:
                raise RelationSpecError(f"{path}.k", "expected an integer >= 1")
            return power(relation_from_spec(spec["inner"], f"{path}.inner"), k)
        if family == "inverse":
            return Inverse(relation_from_spec(spec["inner"], f"{path}.inner"))
        if family in ("union", "intersection"):
            cls = Union if family == "union" else Intersection
            return cls(relation_from_spec(spec["lhs"], f"{path}.lhs"),
                       relation_from_spec(spec["rhs"], f"{path}.rhs"))
        if family == "identity_on":
            s = spec.get("set", "all")
            return IdentityOn(None if s == "all" else _int_list(s, f"{path}.set"))
        # tau_divides
        return TauDivides(relation_from_spec(spec["inner"], f"{path}.inner"),
                          _window_from_spec(spec["window"], f"{path}.window"))
    except RelationSpecError:
        raise
    except ValueError as exc:
        raise RelationSpecError(path, str(exc)) from None


def load_relation_file(path) -> tuple[Relation, Window | None]:
    """Parse ``{"domain": {...}, "relation": {...}}``; the domain block is optional."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RelationSpecError("<file>", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise RelationSpecError("<file>", "top level must be an object")
    extra = set(doc) - {"domain", "relation"}
    if extra:
        raise RelationSpecError(sorted(extra)[0], "unknown field")
    if "relation" not in doc:
        raise RelationSpecError("relation", "missing field")
    window = _window_from_spec(doc["domain"], "domain") if "domain" in doc else None
    return relation_from_spec(doc["relation"]), window


def relation_document(R: Relation, window: Window | None = None) -> dict:
    doc = {"relation": R.to_spec()}
    if window is not None:
        doc["domain"] = {"window": window.bound, "witness_bound": window.witness_bound}
    return doc
