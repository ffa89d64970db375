"""The order-doubling construction ``G = H+ u H-`` and its classification checks.

Elements ``0..n-1`` of the doubled gyrogroup are the plus copy of the base
``H``; ``phi`` sends each plus element to its minus partner in ``[n, 2n)``.
Products of equal-sign elements land in the plus copy, products of mixed
signs in the minus copy, and the underlying plus value is always the base
product of the plus partners.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import CayleyTable, FiniteGyrogroup, construct
from .errors import (
    ConstructionAxiomFailure,
    InvalidGyrogroup,
    LengthMismatch,
    NotASubgyrogroup,
    NotNormal,
    PhiNotBijective,
    TheoremViolation,
)
from .subalgebra import (
    ElementSubset,
    _normality_failure,
    SCAN_LIMIT,
    canonical_order,
    enumerate_normals,
    is_normal,
    is_subgyrogroup,
    subgyrogroups_by_generators,
)

PLUS, MINUS = "+", "-"


@dataclass(frozen=True, eq=False)
class DoubledGyrogroup:
    base: FiniteGyrogroup
    phi: tuple[int, ...]
    whole: FiniteGyrogroup

    @property
    def n(self) -> int:
        return self.base.order

    def sign(self, k: int) -> str:
        return PLUS if k < self.n else MINUS

    @property
    def signs(self) -> tuple[str, ...]:
        return tuple(self.sign(k) for k in range(2 * self.n))

    @property
    def partner(self) -> np.ndarray:
        """Plus partner of every element of ``whole`` (identity on the plus copy)."""
        p = np.arange(2 * self.n)
        p[list(self.phi)] = np.arange(self.n)
        return p

    def minus_of(self, S: ElementSubset) -> ElementSubset:
        """``phi(S)`` for a subset of the base, as a subset of ``whole``."""
        return ElementSubset.of((self.phi[x] for x in S), 2 * self.n)

    def plus_of(self, S: ElementSubset) -> ElementSubset:
        """Embed a subset of the base into the plus copy of ``whole``."""
        return S.with_order(2 * self.n)

    @property
    def plus_copy(self) -> ElementSubset:
        return ElementSubset((1 << self.n) - 1, 2 * self.n)


def _check_phi(n: int, phi) -> tuple[int, ...]:
    if phi is None:
        return tuple(range(n, 2 * n))
    phi = tuple(int(x) for x in phi)
    if len(phi) != n:
        raise PhiNotBijective(f"phi has {len(phi)} entries, expected {n}")
    if sorted(phi) != list(range(n, 2 * n)):
        raise PhiNotBijective(f"phi is not a bijection onto [{n}, {2 * n}): {phi}")
    return phi


def doubled_table(H: FiniteGyrogroup, phi=None) -> CayleyTable:
    n = H.order
    phi_arr = np.array(_check_phi(n, phi), dtype=np.intp)
    partner = np.arange(2 * n)
    partner[phi_arr] = np.arange(n)
    minus = np.arange(2 * n) >= n
    base = H.table.entries[np.ix_(partner, partner)]
    mixed = minus[:, None] != minus[None, :]
    return CayleyTable(np.where(mixed, phi_arr[base], base))


def double(H: FiniteGyrogroup, phi=None) -> DoubledGyrogroup:
    """Double ``H``, re-verify the axioms and check the gyration rule.

    The gyrations of the result are derived from its table and must agree
    with the base gyrations applied sign-wise: plus elements are moved by
    ``gyr_H[a+, b+]`` and minus elements by its ``phi``-conjugate.
    """
    n = H.order
    phi = _check_phi(n, phi)
    table = doubled_table(H, phi)
    labels = None
    if H.labels is not None:
        labels = list(H.labels) + [""] * n
        for k in range(n):
            labels[phi[k]] = H.labels[k] + "-"
    try:
        G = construct(table, labels=labels)
    except InvalidGyrogroup as exc:
        raise ConstructionAxiomFailure(f"doubled table is not a gyrogroup: {exc}") from exc

    D = DoubledGyrogroup(H, phi, G)
    p = D.partner
    phi_arr = np.array(phi, dtype=np.intp)
    base_gyr = H.gyr_array[np.ix_(p, p, p)]  # [x, y, t] -> gyr_H[x+, y+](t+)
    minus = np.arange(2 * n) >= n
    expected = np.where(minus[None, None, :], phi_arr[base_gyr], base_gyr)
    if not np.array_equal(expected, G.gyr_array):
        x, y, t = np.argwhere(expected != G.gyr_array)[0]
        raise ConstructionAxiomFailure(f"gyr[{x},{y}]({t}) disagrees with the sign-wise base gyration")
    return D


def split(D: DoubledGyrogroup, S: ElementSubset):
    """``(S n H+, S n H-, phi^-1(S n H-))``; the last is a subset of the base."""
    if S.order != 2 * D.n:
        raise LengthMismatch(f"subset of order {S.order} in a doubled gyrogroup of order {2 * D.n}")
    plus = S & D.plus_copy
    minus = S - D.plus_copy
    p = D.partner
    pulled = ElementSubset.of((p[x] for x in minus), D.n)
    return plus, minus, pulled


def _products_land_in(D: DoubledGyrogroup, minus: ElementSubset, target: ElementSubset) -> bool:
    m = minus.as_array()
    if m.size == 0:
        return True
    prods = D.whole.table.entries[np.ix_(m, m)]
    return all(int(x) in target for x in np.unique(prods))


@dataclass(frozen=True)
class Classification:
    """Clauses of a trichotomy that a subset satisfies, with witnesses.

    ``witnesses[clause]`` holds the pieces whose union (inside the doubled
    gyrogroup) is the classified subset.
    """

    subset: ElementSubset
    clauses: frozenset
    witnesses: dict = field(compare=False)
    discrepancies: tuple[str, ...] = ()

    def reassemble(self, clause) -> ElementSubset:
        pieces = self.witnesses[clause]
        out = ElementSubset(0, self.subset.order)
        for piece in pieces.values():
            if piece.order == self.subset.order:
                out = out | piece
        return out

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset.elements()),
            "clauses": sorted(str(c) for c in self.clauses),
            "witnesses": {
                str(c): {k: list(v.elements()) for k, v in w.items()} for c, w in sorted(self.witnesses.items(), key=lambda kv: str(kv[0]))
            },
            "discrepancies": list(self.discrepancies),
        }


def _base_test(D: DoubledGyrogroup, normal: bool):
    H = D.base
    if normal:
        return lambda S: bool(S.bits) and is_subgyrogroup(H, S) and _normality_failure(H, S) is None
    return lambda S: bool(S.bits) and is_subgyrogroup(H, S)


def _classify(D: DoubledGyrogroup, S: ElementSubset, normal: bool, names):
    ok = _base_test(D, normal)
    P = "N" if normal else "A"
    plus, minus, pulled = split(D, S)
    core = plus.with_order(D.n)
    first, second, third = names
    clauses, witnesses = set(), {}

    if not minus.bits and ok(core):
        clauses.add(first)
        witnesses[first] = {"M" if normal else "B": plus}
    if (
        ok(core)
        and _products_land_in(D, minus, plus)
        and core.isdisjoint(pulled)
        and ok(core | pulled)
    ):
        clauses.add(second)
        witnesses[second] = {P + "+": plus, "L-": minus, "L+": pulled}
    weak_third = minus == D.minus_of(core)
    if weak_third and ok(core):
        clauses.add(third)
        witnesses[third] = {P + "+": plus, P + "-": minus}
    discrepancies = ()
    if weak_third and not ok(core):
        discrepancies = (f"minus part equals phi(plus part) but {core} fails the base test",)
    return Classification(S, frozenset(clauses), witnesses, discrepancies)


def classify_subgyrogroup(D: DoubledGyrogroup, B: ElementSubset) -> Classification:
    """Clauses ``a``/``b``/``c`` of the subgyrogroup trichotomy satisfied by ``B``.

    ``b`` is read literally with ``L-`` allowed to be empty, so a subgyrogroup
    of the plus copy reports both ``a`` and ``b``.
    """
    if not is_subgyrogroup(D.whole, B):
        raise NotASubgyrogroup(f"{B} is not a subgyrogroup of the doubled gyrogroup")
    result = _classify(D, B, normal=False, names=("a", "b", "c"))
    if not result.clauses:
        raise TheoremViolation(f"subgyrogroup {B} satisfies none of the clauses a, b, c")
    return result


def classify_normal(D: DoubledGyrogroup, M: ElementSubset) -> Classification:
    """Clauses 1/2/3 of the normal-subgyrogroup trichotomy satisfied by ``M``."""
    if not is_normal(D.whole, M):
        raise NotNormal(f"{M} is not normal in the doubled gyrogroup")
    result = _classify(D, M, normal=True, names=(1, 2, 3))
    if not result.clauses:
        raise TheoremViolation(f"normal subgyrogroup {M} satisfies none of the clauses 1, 2, 3")
    return result


def base_normals(D: DoubledGyrogroup) -> list[ElementSubset]:
    """Normal subgyrogroups of the base: exhaustive scan when small enough, else generator closure."""
    H = D.base
    if H.order <= SCAN_LIMIT:
        return enumerate_normals(H)
    subs, _ = subgyrogroups_by_generators(H)
    return [S for S in subs if _normality_failure(H, S) is None]


def generate_normal_candidates(D: DoubledGyrogroup, normals=None) -> list[ElementSubset]:
    """Every subset of the three shapes built from normal subgyrogroups of the base.

    Shape two is searched over pairs ``N <= K`` of base normals with
    ``L+ = K - N``, since ``N u L+`` must itself be normal in the base.
    """
    normals = base_normals(D) if normals is None else list(normals)
    out = set()
    for N in normals:
        out.add(D.plus_of(N))
        out.add(D.plus_of(N) | D.minus_of(N))
        for K in normals:
            if not N.issubset(K):
                continue
            L_plus = K - N
            L_minus = D.minus_of(L_plus)
            if _products_land_in(D, L_minus, D.plus_of(N)):
                out.add(D.plus_of(N) | L_minus)
    return canonical_order(out)


@dataclass(frozen=True)
class CorollaryCheck:
    name: str
    subset: ElementSubset
    passed: bool
    witness: tuple[int, int] | None = None


@dataclass(frozen=True)
class CorollaryReport:
    checks: tuple[CorollaryCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "subset": list(c.subset.elements()),
                    "passed": c.passed,
                    "witness": None if c.witness is None else list(c.witness),
                }
                for c in self.checks
            ],
        }


def check_corollary(D: DoubledGyrogroup, normals=None) -> CorollaryReport:
    """Plus copy normal in the double; every base normal stays normal once embedded."""
    normals = base_normals(D) if normals is None else list(normals)
    checks = []

    def check(name, S):
        if not is_subgyrogroup(D.whole, S):
            checks.append(CorollaryCheck(name, S, False, None))
            return
        failure = _normality_failure(D.whole, S)
        checks.append(CorollaryCheck(name, S, failure is None, failure))

    check("plus copy is normal", D.plus_copy)
    for N in normals:
        check("base normal stays normal", D.plus_of(N))
    return CorollaryReport(tuple(checks))


__all__ = [
    "DoubledGyrogroup",
    "Classification",
    "CorollaryCheck",
    "CorollaryReport",
    "doubled_table",
    "double",
    "split",
    "classify_subgyrogroup",
    "classify_normal",
    "base_normals",
    "generate_normal_candidates",
    "check_corollary",
]
