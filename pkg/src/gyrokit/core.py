"""Cayley-table gyrogroups: axiom verification and gyrations.

Elements are the indices ``0..n-1`` of an ``n x n`` table whose entry
``(a, b)`` is ``a (+) b``.  Gyrations are never read from input; they are
derived from the table with the gyrator identity

    gyr[a,b](c) = (-(a (+) b)) (+) (a (+) (b (+) c))

which is the only choice compatible with gyroassociativity once left
cancellation holds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidGyrogroup, LengthMismatch, OutOfRangeEntry

__all__ = [
    "CayleyTable",
    "Permutation",
    "Violation",
    "ValidationReport",
    "FiniteGyrogroup",
    "verify_axioms",
    "construct",
    "evaluate",
    "left_inverse",
    "gyration",
    "is_automorphism",
    "is_degenerate",
    "is_associative",
]

AXIOM_ORDER = (
    "NoLeftIdentity",
    "DuplicateLeftIdentity",
    "MissingLeftInverse",
    "DuplicateLeftInverse",
    "GyrNotBijective",
    "GyrNotAutomorphism",
    "GyroassociativityFails",
    "LeftLoopFails",
)


def _small_dtype(n: int):
    if n <= 1 << 8:
        return np.uint8
    if n <= 1 << 16:
        return np.uint16
    return np.uint32


class CayleyTable:
    """An ``n x n`` operation table with entries in ``[0, n)``.

    Only the range of the entries is checked here; everything else is the
    job of :func:`verify_axioms`.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"a Cayley table must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            r, c = (int(v) for v in bad[0])
            raise OutOfRangeEntry(r, c, int(arr[r, c]), n)
        arr = arr.astype(np.intp)
        arr.setflags(write=False)
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def order(self) -> int:
        return self._entries.shape[0]

    def __getitem__(self, ab):
        a, b = ab
        return int(self._entries[a, b])

    def rows(self) -> list[list[int]]:
        return self._entries.tolist()

    def __eq__(self, other):
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash(self._entries.tobytes())

    def __repr__(self):
        return f"CayleyTable(order={self.order})"


def as_table(table) -> CayleyTable:
    return table if isinstance(table, CayleyTable) else CayleyTable(table)


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``range(n)``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of range({len(imgs)}): {imgs}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self):
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``: apply ``other`` first."""
        if len(other) != len(self):
            raise LengthMismatch("cannot compose permutations of different lengths")
        return Permutation(tuple(self.images[x] for x in other.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def __str__(self):
        return f"{self.axiom}{self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in self.violations],
        }


@dataclass
class _Analysis:
    report: ValidationReport
    identity: int | None = None
    inverses: np.ndarray | None = None
    gyr_rows: np.ndarray | None = field(default=None, repr=False)
    gyr_index: np.ndarray | None = field(default=None, repr=False)


def _distinct_rows(flat: np.ndarray):
    """Distinct rows in first-occurrence order, and the row -> distinct index map."""
    seen: dict[bytes, int] = {}
    which = np.empty(len(flat), dtype=np.intp)
    for i, row in enumerate(flat):
        which[i] = seen.setdefault(row.tobytes(), len(seen))
    firsts = np.unique(which, return_index=True)[1]
    return flat[firsts], which


def _analyze(table: CayleyTable) -> _Analysis:
    T = table.entries
    n = table.order
    ar = np.arange(n)
    found: dict[str, list[Violation]] = {name: [] for name in AXIOM_ORDER}

    def done():
        return ValidationReport(
            tuple(v for name in AXIOM_ORDER for v in sorted(found[name], key=lambda v: v.witness))
        )

    idents = np.flatnonzero((T == ar).all(axis=1))
    if len(idents) == 0:
        found["NoLeftIdentity"].append(Violation("NoLeftIdentity", ()))
        return _Analysis(done())
    e = int(idents[0])
    if len(idents) > 1:
        found["DuplicateLeftIdentity"].append(Violation("DuplicateLeftIdentity", (e, int(idents[1]))))

    inv = np.zeros(n, dtype=np.intp)
    for a in range(n):
        hits = np.flatnonzero(T[:, a] == e)
        if len(hits) == 0:
            found["MissingLeftInverse"].append(Violation("MissingLeftInverse", (a,)))
            continue
        if len(hits) > 1:
            found["DuplicateLeftInverse"].append(
                Violation("DuplicateLeftInverse", (a, int(hits[0]), int(hits[1])))
            )
        inv[a] = hits[0]
    if found["MissingLeftInverse"]:
        return _Analysis(done(), identity=e)

    gyr = np.empty((n, n, n), dtype=_small_dtype(n))
    bijective = np.ones((n, n), dtype=bool)
    for a in range(n):
        a_bc = T[a][T]  # [b, c] -> a + (b + c)
        g = T[inv[T[a]][:, None], a_bc]
        gyr[a] = g
        bijective[a] = (np.sort(g, axis=1) == ar).all(axis=1)
        for b in np.flatnonzero(~bijective[a]):
            found["GyrNotBijective"].append(Violation("GyrNotBijective", (a, int(b))))
        mismatch = T[T[a][:, None], g] != a_bc
        for b in np.flatnonzero(mismatch.any(axis=1)):
            c = int(np.argmax(mismatch[b]))
            found["GyroassociativityFails"].append(Violation("GyroassociativityFails", (a, int(b), c)))

    uniq, which = _distinct_rows(gyr.reshape(n * n, n))
    for k, p in enumerate(uniq):
        p = p.astype(np.intp)
        if not (np.sort(p) == ar).all():
            continue
        bad = np.argwhere(p[T] != T[p[:, None], p[None, :]])
        if len(bad):
            x, y = (int(v) for v in bad[0])
            for ab in np.flatnonzero(which == k):
                a, b = divmod(int(ab), n)
                found["GyrNotAutomorphism"].append(Violation("GyrNotAutomorphism", (a, b, x, y)))

    for a in range(n):
        bad = (gyr[a] != gyr[T[a], ar]).any(axis=1)
        for b in np.flatnonzero(bad):
            found["LeftLoopFails"].append(Violation("LeftLoopFails", (a, int(b))))

    return _Analysis(done(), identity=e, inverses=inv, gyr_rows=uniq, gyr_index=which.reshape(n, n))


def verify_axioms(table) -> ValidationReport:
    """Check every gyrogroup axiom exhaustively and report all violations.

    Checks run in a fixed order: left identity, left inverses, bijectivity
    of each derived gyration, the automorphism property, gyroassociativity
    and the left loop property.  Each violation carries the lexicographically
    smallest witness for its failure unit (one entry per ``(a, b)`` pair for
    the gyration-level axioms).
    """
    return _analyze(as_table(table)).report


class FiniteGyrogroup:
    """A validated finite gyrogroup; build it with :func:`construct`."""

    def __init__(self, table, identity, inverses, gyr_rows, gyr_index, labels=None):
        n = table.order
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise LengthMismatch(f"expected {n} labels, got {len(labels)}")
        self._table = table
        self._identity = identity
        inverses = np.array(inverses, dtype=np.intp)
        inverses.setflags(write=False)
        self._inverses = inverses
        self._gyr_perms = tuple(Permutation(tuple(row.tolist())) for row in gyr_rows)
        index = np.array(gyr_index, dtype=np.intp)
        index.setflags(write=False)
        self._gyr_index = index
        self._gyr_array = None
        self.labels = labels

    @property
    def order(self) -> int:
        return self._table.order

    @property
    def table(self) -> CayleyTable:
        return self._table

    @property
    def identity(self) -> int:
        return self._identity

    @property
    def inverses(self) -> np.ndarray:
        return self._inverses

    def op(self, a: int, b: int) -> int:
        return int(self._table.entries[a, b])

    def inverse(self, a: int) -> int:
        return int(self._inverses[a])

    def gyr(self, a: int, b: int) -> Permutation:
        return self._gyr_perms[self._gyr_index[a, b]]

    @property
    def distinct_gyrations(self) -> tuple[Permutation, ...]:
        return self._gyr_perms

    @property
    def gyr_array(self) -> np.ndarray:
        """``gyr_array[a, b, c] == gyr[a,b](c)`` as a read-only array."""
        if self._gyr_array is None:
            perms = np.array([p.images for p in self._gyr_perms], dtype=np.intp)
            arr = perms[self._gyr_index]
            arr.setflags(write=False)
            self._gyr_array = arr
        return self._gyr_array

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGyrogroup(order={self.order}, identity={self.identity})"


def construct(table, labels=None) -> FiniteGyrogroup:
    table = as_table(table)
    info = _analyze(table)
    if not info.report.valid:
        raise InvalidGyrogroup(info.report)
    return FiniteGyrogroup(table, info.identity, info.inverses, info.gyr_rows, info.gyr_index, labels)


def _check_element(G: FiniteGyrogroup, *xs: int):
    for x in xs:
        if not 0 <= x < G.order:
            raise IndexOutOfRange(f"element {x} outside [0, {G.order})")


def evaluate(G: FiniteGyrogroup, a: int, b: int) -> int:
    _check_element(G, a, b)
    return G.op(a, b)


def left_inverse(G: FiniteGyrogroup, a: int) -> int:
    _check_element(G, a)
    return G.inverse(a)


def gyration(G: FiniteGyrogroup, a: int, b: int) -> Permutation:
    """Recompute gyr[a,b] from the table alone, bypassing the cache."""
    _check_element(G, a, b)
    T = G.table.entries
    ab_inv = G.inverse(G.op(a, b))
    return Permutation(tuple(int(T[ab_inv, T[a, T[b, c]]]) for c in range(G.order)))


def is_automorphism(G: FiniteGyrogroup, perm) -> bool:
    images = perm.images if isinstance(perm, Permutation) else tuple(perm)
    if len(images) != G.order:
        raise LengthMismatch(f"permutation of length {len(images)} on a gyrogroup of order {G.order}")
    p = np.array(images, dtype=np.intp)
    if sorted(images) != list(range(G.order)):
        return False
    T = G.table.entries
    return bool((p[T] == T[p[:, None], p[None, :]]).all())


def is_degenerate(G: FiniteGyrogroup) -> bool:
    """True iff every gyration is trivial, i.e. ``G`` is a group."""
    return all(p.is_identity() for p in G.distinct_gyrations)


def is_associative(table) -> bool:
    T = as_table(table).entries
    return bool((T[T, :] == T[:, T]).all())
