"""Fixtures K1, K2, ... and the golden normal-subgyrogroup lists.

K1 is the order-8 gyrogroup below; K(m) for m >= 2 is the canonical
double of K(m-1).  The golden tables for K2 live in ``data/`` as separate
files and are never used to build anything, only to compare against.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import FiniteGyrogroup, construct
from .doubling import DoubledGyrogroup, double
from .errors import CapExceeded, NoGoldenData, UnknownFixture
from .fileformat import parse_gyrations, parse_table, serialize_table
from .subalgebra import ElementSubset

DEFAULT_CAP = 6

K1_TABLE = (
    (0, 1, 2, 3, 4, 5, 6, 7),
    (1, 0, 3, 2, 5, 4, 7, 6),
    (2, 3, 0, 1, 6, 7, 4, 5),
    (3, 2, 1, 0, 7, 6, 5, 4),
    (4, 5, 6, 7, 0, 1, 2, 3),
    (5, 4, 7, 6, 1, 0, 3, 2),
    (6, 7, 4, 5, 3, 2, 1, 0),
    (7, 6, 5, 4, 2, 3, 0, 1),
)
# sha256 of serialize_table(K1_TABLE)
K1_SHA256 = "be2b38ea244a3d6683dd068a57e9ef408e7ca3d23c606dfdff9d48d78d3a6a54"

# (elements, nondegenerate) in canonical order
_GOLDEN = {
    "K1": (
        ((0,), False),
        ((0, 1), False),
        ((0, 1, 2, 3), False),
        ((0, 1, 4, 5), False),
        ((0, 1, 6, 7), False),
        ((0, 1, 2, 3, 4, 5, 6, 7), True),
    ),
    "K2": (
        ((0,), False),
        ((0, 1), False),
        ((0, 8), False),
        ((0, 9), False),
        ((0, 1, 2, 3), False),
        ((0, 1, 4, 5), False),
        ((0, 1, 6, 7), False),
        ((0, 1, 8, 9), False),
        ((0, 1, 10, 11), False),
        ((0, 1, 12, 13), False),
        ((0, 1, 14, 15), False),
        ((0, 1, 2, 3, 4, 5, 6, 7), True),
        ((0, 1, 2, 3, 8, 9, 10, 11), False),
        ((0, 1, 2, 3, 12, 13, 14, 15), True),
        ((0, 1, 4, 5, 8, 9, 12, 13), False),
        ((0, 1, 4, 5, 10, 11, 14, 15), True),
        ((0, 1, 6, 7, 8, 9, 14, 15), False),
        ((0, 1, 6, 7, 10, 11, 12, 13), True),
        (tuple(range(16)), True),
    ),
}
_GOLDEN_ORDER = {"K1": 8, "K2": 16}


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    gyrogroup: FiniteGyrogroup
    provenance: str
    doubled: DoubledGyrogroup | None = None


@dataclass(frozen=True)
class GoldenNormals:
    name: str
    sets: tuple[ElementSubset, ...]
    nondegenerate: tuple[bool, ...]


def parse_name(name: str) -> int:
    m = re.fullmatch(r"K([1-9][0-9]*)", name.strip())
    if not m:
        raise UnknownFixture(f"unknown fixture {name!r}; expected K followed by a positive integer")
    return int(m.group(1))


def _k1() -> FiniteGyrogroup:
    digest = hashlib.sha256(serialize_table(K1_TABLE).encode()).hexdigest()
    if digest != K1_SHA256:
        raise RuntimeError("embedded K1 table does not match its checksum")
    return construct(K1_TABLE)


@lru_cache(maxsize=None)
def _build(level: int) -> Fixture:
    if level == 1:
        return Fixture("K1", _k1(), "embedded order-8 table")
    D = double(_build(level - 1).gyrogroup)
    return Fixture(f"K{level}", D.whole, f"iterated doubling of K{level - 1}", D)


def fixture(name: str, cap: int = DEFAULT_CAP) -> Fixture:
    level = parse_name(name)
    if level > cap:
        raise CapExceeded(f"{name} has order {8 << (level - 1)}; the cap is K{cap}")
    return _build(level)


def golden_normals(name: str) -> GoldenNormals:
    if name not in _GOLDEN:
        raise NoGoldenData(f"no golden normal subgyrogroups for {name!r}")
    order = _GOLDEN_ORDER[name]
    sets = tuple(ElementSubset.of(elems, order) for elems, _ in _GOLDEN[name])
    return GoldenNormals(name, sets, tuple(flag for _, flag in _GOLDEN[name]))


def data_text(filename: str) -> str:
    return resources.files("gyrokit").joinpath("data", filename).read_text()


def golden_table_text(name: str) -> str:
    """Shipped Cayley table file for ``K1`` or ``K2``."""
    if name not in _GOLDEN_ORDER:
        raise NoGoldenData(f"no golden table for {name!r}")
    return data_text(f"{name}.gyro")


def golden_table(name: str):
    return parse_table(golden_table_text(name))


def golden_gyrations(name: str):
    if name not in _GOLDEN_ORDER:
        raise NoGoldenData(f"no golden gyration table for {name!r}")
    return parse_gyrations(data_text(f"{name}.gyr"), _GOLDEN_ORDER[name])


def golden_normals_text(name: str) -> str:
    if name not in _GOLDEN_ORDER:
        raise NoGoldenData(f"no golden normal list for {name!r}")
    return data_text(f"{name}.normals")
