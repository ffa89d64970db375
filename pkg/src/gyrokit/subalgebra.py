"""Subgyrogroups, normality, cosets, quotients and kernels.

Subsets of a gyrogroup of order ``n`` are bit vectors (Python ints) tagged
with ``n``.  Normality is tested with the triple coset criterion

    a (+) (H (+) b) == (a (+) b) (+) H == (a (+) H) (+) b   for all a, b

evaluated for every pair at once with numpy.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .core import CayleyTable, FiniteGyrogroup, construct
from .errors import (
    EmptySubset,
    IllDefinedProduct,
    IndexOutOfRange,
    InvalidGyrogroup,
    LengthMismatch,
    NotAHomomorphism,
    NotASubgyrogroup,
    NotNormal,
    OrderTooLarge,
)

SCAN_LIMIT = 24
_SCAN_CHUNK = 1 << 18


@dataclass(frozen=True)
class ElementSubset:
    """A subset of ``range(order)`` stored as a bit vector."""

    bits: int
    order: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.order:
            raise IndexOutOfRange(f"subset bits {self.bits:#x} exceed order {self.order}")

    @classmethod
    def of(cls, elements: Iterable[int], order: int) -> "ElementSubset":
        bits = 0
        for x in elements:
            x = int(x)
            if not 0 <= x < order:
                raise IndexOutOfRange(f"element {x} outside [0, {order})")
            bits |= 1 << x
        return cls(bits, order)

    @classmethod
    def full(cls, order: int) -> "ElementSubset":
        return cls((1 << order) - 1, order)

    def elements(self) -> tuple[int, ...]:
        out = []
        bits, i = self.bits, 0
        while bits:
            if bits & 1:
                out.append(i)
            bits >>= 1
            i += 1
        return tuple(out)

    def as_array(self) -> np.ndarray:
        return np.array(self.elements(), dtype=np.intp)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.order and bool(self.bits >> x & 1)

    def _same(self, other: "ElementSubset"):
        if self.order != other.order:
            raise LengthMismatch(f"subsets of orders {self.order} and {other.order}")

    def __or__(self, other):
        self._same(other)
        return ElementSubset(self.bits | other.bits, self.order)

    def __and__(self, other):
        self._same(other)
        return ElementSubset(self.bits & other.bits, self.order)

    def __sub__(self, other):
        self._same(other)
        return ElementSubset(self.bits & ~other.bits, self.order)

    def issubset(self, other: "ElementSubset") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    __le__ = issubset

    def isdisjoint(self, other: "ElementSubset") -> bool:
        self._same(other)
        return self.bits & other.bits == 0

    def with_order(self, order: int) -> "ElementSubset":
        """Reinterpret the same indices inside a gyrogroup of another order."""
        return ElementSubset(self.bits, order)

    def map(self, images, order: int | None = None) -> "ElementSubset":
        return ElementSubset.of((images[x] for x in self), self.order if order is None else order)

    def sort_key(self):
        return (len(self), self.elements())

    def __str__(self):
        return "{" + ",".join(map(str, self.elements())) + "}"

    def __repr__(self):
        return f"ElementSubset({self}, order={self.order})"


def canonical_order(subsets: Iterable[ElementSubset]) -> list[ElementSubset]:
    """Deduplicate and sort by size, then lexicographically by elements."""
    return sorted(set(subsets), key=ElementSubset.sort_key)


def _as_subset(G: FiniteGyrogroup, x) -> ElementSubset:
    if isinstance(x, ElementSubset):
        if x.order != G.order:
            raise LengthMismatch(f"subset of order {x.order} used in a gyrogroup of order {G.order}")
        s = x
    else:
        s = ElementSubset.of([x], G.order)
    if not s.bits:
        raise EmptySubset("empty operand")
    return s


def _mask_of(values: np.ndarray) -> int:
    bits = 0
    for v in np.unique(values).tolist():
        bits |= 1 << v
    return bits


def set_product(G: FiniteGyrogroup, A, B) -> ElementSubset:
    """``{x (+) y : x in A, y in B}``; plain elements act as singletons."""
    A, B = _as_subset(G, A), _as_subset(G, B)
    T = G.table.entries
    return ElementSubset(_mask_of(T[np.ix_(A.as_array(), B.as_array())]), G.order)


def _inverse_image(G: FiniteGyrogroup, S: ElementSubset) -> ElementSubset:
    return ElementSubset(_mask_of(G.inverses[S.as_array()]), G.order)


def closure(G: FiniteGyrogroup, seed) -> ElementSubset:
    """Smallest subset containing ``seed`` and the identity, closed under (+) and inversion."""
    S = _as_subset(G, seed) | ElementSubset.of([G.identity], G.order)
    while True:
        grown = S | set_product(G, S, S) | _inverse_image(G, S)
        if grown == S:
            return S
        S = grown


def is_subgyrogroup(G: FiniteGyrogroup, H) -> bool:
    H = _as_subset(G, H)
    if G.identity not in H:
        return False
    if not set_product(G, H, H).issubset(H):
        return False
    if not _inverse_image(G, H).issubset(H):
        return False
    # implied by the two closures above; kept as an independent cross-check
    h = H.as_array()
    images = G.gyr_array[np.ix_(h, h, h)]
    return _mask_of(images) == H.bits


def _check_scan_order(G: FiniteGyrogroup, limit: int):
    if G.order > limit:
        raise OrderTooLarge(
            f"order {G.order} exceeds the full-scan limit {limit}; use subgyrogroups_by_generators"
        )


def enumerate_subgyrogroups(G: FiniteGyrogroup, limit: int = SCAN_LIMIT) -> list[ElementSubset]:
    """All subgyrogroups by an exhaustive scan of the subsets containing the identity.

    The ``2**(n-1)`` candidate subsets are processed in chunks of consecutive
    counters; inside a chunk each closure condition ``a, b in S => a(+)b in S``
    is applied to every candidate at once.
    """
    _check_scan_order(G, limit)
    n, e = G.order, G.identity
    T = G.table.entries
    others = [x for x in range(n) if x != e]
    bit_of = {x: i for i, x in enumerate(others)}
    pairs = [
        (bit_of[a], bit_of[b], T[a, b])
        for a in others
        for b in others
    ]
    inv = [(bit_of[a], G.inverse(a)) for a in others]
    total = 1 << len(others)
    found = []
    for start in range(0, total, _SCAN_CHUNK):
        counters = np.arange(start, min(total, start + _SCAN_CHUNK), dtype=np.uint64)
        has = [((counters >> np.uint64(i)) & np.uint64(1)).astype(bool) for i in range(len(others))]
        ok = np.ones(len(counters), dtype=bool)

        def contains(x):
            return True if x == e else has[bit_of[x]]

        for ia, ib, ab in pairs:
            ok &= ~(has[ia] & has[ib]) | contains(ab)
        for ia, ainv in inv:
            ok &= ~has[ia] | contains(ainv)
        for i in np.flatnonzero(ok):
            mask = 1 << e
            c = int(counters[i])
            for j, x in enumerate(others):
                if c >> j & 1:
                    mask |= 1 << x
            found.append(ElementSubset(mask, n))
    result = canonical_order(found)
    for H in result:
        if not is_subgyrogroup(G, H):
            raise AssertionError(f"scan produced {H}, which fails the subgyrogroup check")
    return result


def subgyrogroups_by_generators(G: FiniteGyrogroup, max_generators: int | None = 3):
    """Subgyrogroups generated by at most ``max_generators`` elements.

    Returns ``(subsets, complete)``.  ``complete`` is True when the last
    round of adding one more generator produced nothing new, in which case
    every subgyrogroup has been found; ``max_generators=None`` runs until
    that happens.
    """
    n = G.order
    trivial = ElementSubset.of([G.identity], n)
    seen = {trivial}
    frontier = {trivial}
    rounds = 0
    while frontier and (max_generators is None or rounds < max_generators):
        nxt = set()
        for S in frontier:
            for x in range(n):
                if x in S:
                    continue
                C = closure(G, S | ElementSubset.of([x], n))
                if C not in seen:
                    seen.add(C)
                    nxt.add(C)
        frontier = nxt
        rounds += 1
    return canonical_order(seen), not frontier


def _normality_failure(G: FiniteGyrogroup, H: ElementSubset):
    """First pair (a, b) breaking the triple coset criterion, or None."""
    T = G.table.entries
    h = H.as_array()
    # [a, b, k]
    left = np.sort(T[T][:, :, h], axis=2)  # (a (+) b) (+) h_k
    hb = T[h, :]  # [k, b] -> h_k (+) b
    mid = np.sort(T[:, hb].transpose(0, 2, 1), axis=2)  # a (+) (h_k (+) b)
    ah = T[:, h]  # [a, k]
    right = np.sort(T[ah, :].transpose(0, 2, 1), axis=2)  # (a (+) h_k) (+) b
    bad = ~((left == mid) & (mid == right)).all(axis=2)
    if bad.any():
        a, b = np.argwhere(bad)[0]
        return int(a), int(b)
    return None


def is_normal(G: FiniteGyrogroup, H) -> bool:
    H = _as_subset(G, H)
    if not is_subgyrogroup(G, H):
        raise NotASubgyrogroup(f"{H} is not a subgyrogroup")
    return _normality_failure(G, H) is None


def enumerate_normals(G: FiniteGyrogroup, limit: int = SCAN_LIMIT) -> list[ElementSubset]:
    return [H for H in enumerate_subgyrogroups(G, limit) if _normality_failure(G, H) is None]


@dataclass(frozen=True)
class CosetFamily:
    """Disjoint cosets covering ``range(order)``, sorted by minimal element."""

    order: int
    cosets: tuple[ElementSubset, ...]
    index_of: tuple[int, ...]  # element -> position of its coset

    def coset_of(self, x: int) -> ElementSubset:
        return self.cosets[self.index_of[x]]

    def representatives(self) -> tuple[int, ...]:
        return tuple(c.elements()[0] for c in self.cosets)

    def __len__(self):
        return len(self.cosets)


def _coset_family(G: FiniteGyrogroup, N: ElementSubset) -> CosetFamily:
    T = G.table.entries
    rows = T[:, N.as_array()]
    distinct = {_mask_of(r) for r in rows}
    cosets = sorted((ElementSubset(m, G.order) for m in distinct), key=lambda c: c.elements()[0])
    covered = 0
    for c in cosets:
        if covered & c.bits:
            raise IllDefinedProduct(f"left cosets of {N} overlap")
        covered |= c.bits
    index_of = [0] * G.order
    for i, c in enumerate(cosets):
        for x in c:
            index_of[x] = i
    return CosetFamily(G.order, tuple(cosets), tuple(index_of))


def left_cosets(G: FiniteGyrogroup, N) -> CosetFamily:
    N = _as_subset(G, N)
    if not is_normal(G, N):
        raise NotNormal(f"{N} is not normal")
    return _coset_family(G, N)


@dataclass(frozen=True)
class GyroHomomorphism:
    source: FiniteGyrogroup
    target: FiniteGyrogroup
    map: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.map)
        object.__setattr__(self, "map", images)
        if len(images) != self.source.order:
            raise LengthMismatch(f"map has {len(images)} entries for a source of order {self.source.order}")
        if any(not 0 <= x < self.target.order for x in images):
            raise IndexOutOfRange("map image outside the target")
        m = np.array(images, dtype=np.intp)
        S, T = self.source.table.entries, self.target.table.entries
        bad = np.argwhere(m[S] != T[m[:, None], m[None, :]])
        if len(bad):
            raise NotAHomomorphism(int(bad[0][0]), int(bad[0][1]))

    def __call__(self, a: int) -> int:
        return self.map[a]


def kernel(h: GyroHomomorphism) -> ElementSubset:
    e = h.target.identity
    return ElementSubset.of((a for a, x in enumerate(h.map) if x == e), h.source.order)


def quotient(G: FiniteGyrogroup, N, check_normal: bool = True):
    """The quotient ``G/N`` on left cosets together with the canonical projection.

    With ``check_normal=False`` the construction is attempted for any
    subgyrogroup; it raises :class:`IllDefinedProduct` when the cosets do
    not partition ``G``, when the coset product depends on representatives,
    or when the resulting table is not a gyrogroup.
    """
    N = _as_subset(G, N)
    if check_normal:
        family = left_cosets(G, N)
    else:
        if not is_subgyrogroup(G, N):
            raise NotASubgyrogroup(f"{N} is not a subgyrogroup")
        family = _coset_family(G, N)
    k = len(family)
    idx = np.array(family.index_of, dtype=np.intp)
    prod = idx[G.table.entries]  # [x, y] -> coset of x (+) y
    table = np.zeros((k, k), dtype=np.intp)
    for i, Ci in enumerate(family.cosets):
        xi = Ci.as_array()
        for j, Cj in enumerate(family.cosets):
            block = prod[np.ix_(xi, Cj.as_array())]
            if (block != block.flat[0]).any():
                raise IllDefinedProduct(f"coset product {Ci} * {Cj} depends on representatives")
            table[i, j] = block.flat[0]
    labels = [str(r) for r in family.representatives()]
    try:
        Q = construct(CayleyTable(table), labels=labels)
    except InvalidGyrogroup as exc:
        raise IllDefinedProduct(f"coset table is not a gyrogroup: {exc}") from exc
    return Q, GyroHomomorphism(G, Q, family.index_of)


def induced(G: FiniteGyrogroup, H) -> FiniteGyrogroup:
    """The subgyrogroup ``H`` as a gyrogroup in its own right, relabelled ``0..|H|-1``."""
    H = _as_subset(G, H)
    if not is_subgyrogroup(G, H):
        raise NotASubgyrogroup(f"{H} is not a subgyrogroup")
    h = H.as_array()
    pos = {x: i for i, x in enumerate(h.tolist())}
    sub = G.table.entries[np.ix_(h, h)]
    table = [[pos[int(v)] for v in row] for row in sub]
    return construct(table, labels=[G.label(x) for x in h.tolist()])


def subsets_of(n: int, containing: int | None = None) -> Iterator[ElementSubset]:
    """Every subset of ``range(n)`` (optionally those containing one element), small ``n`` only."""
    for bits in range(1 << n):
        if containing is None or bits >> containing & 1:
            yield ElementSubset(bits, n)


__all__ = [
    "ElementSubset",
    "CosetFamily",
    "GyroHomomorphism",
    "canonical_order",
    "set_product",
    "closure",
    "is_subgyrogroup",
    "enumerate_subgyrogroups",
    "subgyrogroups_by_generators",
    "is_normal",
    "enumerate_normals",
    "left_cosets",
    "quotient",
    "kernel",
    "induced",
    "subsets_of",
]

