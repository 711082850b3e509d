"""Game parameters, coalitions and characteristic-function containers.

Coalitions are bitmasks over service indices ``0..n-1``. A characteristic
function stores the worth ``v(S)`` of every non-empty coalition, either as an
explicit table indexed by bitmask or as one worth per coalition size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

import numpy as np

from .errors import (
    DuplicateCoalition,
    InvalidParameter,
    MissingCoalition,
    TooManyServices,
)

MAX_SERVICES = 24
REL_TOL = 1e-9
ABS_TOL = 1e-12


def is_close(x: float, y: float) -> bool:
    return abs(x - y) <= max(REL_TOL * max(abs(x), abs(y)), ABS_TOL)


def exceeds(x: float, y: float) -> bool:
    """True when ``x > y`` by more than the shared comparison tolerance."""
    return x - y > max(REL_TOL * max(abs(x), abs(y)), ABS_TOL)


def _check_enumerable(n: int) -> None:
    if n > MAX_SERVICES:
        raise TooManyServices(
            f"n={n} exceeds the coalition enumeration bound of {MAX_SERVICES}"
        )


@dataclass(frozen=True)
class CournotGame:
    """Symmetric resource game: ``n`` plays, environment size ``a``, unit cost ``c``.

    ``gamma`` is the demand-differentiation parameter; ``None`` means the
    homogeneous model where every play competes for the same demand.
    """

    n: int
    a: float
    c: float
    gamma: Optional[float] = None

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise InvalidParameter(f"n must be a positive integer, got {self.n!r}")
        for name in ("a", "c"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameter(f"{name} must be finite")
        if self.c < 0:
            raise InvalidParameter(f"c must be non-negative, got {self.c}")
        if not self.a > self.c:
            raise InvalidParameter(f"a must exceed c (a={self.a}, c={self.c})")
        if self.gamma is not None and not 0.0 <= self.gamma <= 1.0:
            raise InvalidParameter(f"gamma must lie in [0, 1], got {self.gamma}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "c", float(self.c))
        if self.gamma is not None:
            object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def margin(self) -> float:
        """``a - c``, the only combination of ``a`` and ``c`` the worths depend on."""
        return self.a - self.c

    @property
    def homogeneous(self) -> bool:
        return self.gamma is None

    def replace(self, **changes) -> "CournotGame":
        fields = dict(n=self.n, a=self.a, c=self.c, gamma=self.gamma)
        fields.update(changes)
        return CournotGame(**fields)


def build_symmetric_game(
    n: int, a: float, c: float, gamma: Optional[float] = None
) -> CournotGame:
    return CournotGame(n, a, c, gamma)


@dataclass(frozen=True, order=True)
class Coalition:
    """A non-empty set of service indices stored as a bitmask."""

    members: int

    def __post_init__(self):
        if isinstance(self.members, bool) or int(self.members) != self.members:
            raise InvalidParameter("coalition bitmask must be an integer")
        if self.members <= 0:
            raise InvalidParameter("coalition must be non-empty")

    @classmethod
    def of(cls, *indices: int) -> "Coalition":
        return cls.from_indices(indices)

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "Coalition":
        mask = 0
        for i in indices:
            if isinstance(i, bool) or int(i) != i or i < 0:
                raise InvalidParameter(f"service index must be a non-negative integer, got {i!r}")
            bit = 1 << int(i)
            if mask & bit:
                raise InvalidParameter(f"service index {i} repeated")
            mask |= bit
        return cls(mask)

    @classmethod
    def grand(cls, n: int) -> "Coalition":
        return cls((1 << n) - 1)

    @classmethod
    def first(cls, s: int) -> "Coalition":
        """Services ``0..s-1``."""
        return cls((1 << s) - 1)

    @property
    def size(self) -> int:
        return self.members.bit_count()

    @property
    def max_index(self) -> int:
        return self.members.bit_length() - 1

    def indices(self) -> tuple[int, ...]:
        m = self.members
        return tuple(i for i in range(m.bit_length()) if m >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices())) + "}"


CoalitionLike = Union[Coalition, Iterable[int]]


def as_coalition(value: CoalitionLike) -> Coalition:
    if isinstance(value, Coalition):
        return value
    return Coalition.from_indices(value)


@dataclass(frozen=True)
class CompetitorOffer:
    """Worth a rival resource offers for taking over ``coalition``."""

    coalition: Coalition
    worth: float

    def __post_init__(self):
        object.__setattr__(self, "coalition", as_coalition(self.coalition))
        if not math.isfinite(self.worth) or self.worth < 0:
            raise InvalidParameter(f"offer worth must be finite and >= 0, got {self.worth}")
        object.__setattr__(self, "worth", float(self.worth))

    @property
    def per_member(self) -> float:
        return self.worth / self.coalition.size


class Mode(str, Enum):
    EXPLICIT_TABLE = "explicit_table"
    SIZE_SYMMETRIC = "size_symmetric"
    INDUCED_COURNOT = "induced_cournot"


@dataclass(frozen=True, eq=False)
class CharacteristicFunction:
    """Worth of every non-empty coalition of ``n`` services.

    Use :func:`worth_from_table`, :func:`worth_by_size` or
    :func:`resgame.cournot.induced_characteristic_function` rather than
    calling this directly. ``table[mask - 1]`` holds the worth of ``mask`` in
    explicit mode; ``by_size[s - 1]`` the worth of any size-``s`` coalition in
    the two symmetric modes.
    """

    mode: Mode
    n: int
    table: Optional[np.ndarray] = None
    by_size: Optional[tuple[float, ...]] = None
    game: Optional[CournotGame] = None

    def worth(self, coalition: CoalitionLike) -> float:
        coalition = as_coalition(coalition)
        if coalition.max_index >= self.n:
            raise InvalidParameter(f"coalition {coalition} outside services 0..{self.n - 1}")
        if self.mode is Mode.EXPLICIT_TABLE:
            return float(self.table[coalition.members - 1])
        return self.by_size[coalition.size - 1]

    def __call__(self, coalition: CoalitionLike) -> float:
        return self.worth(coalition)

    @property
    def grand_worth(self) -> float:
        return self.worth(Coalition.grand(self.n))

    @property
    def symmetric(self) -> bool:
        return self.mode is not Mode.EXPLICIT_TABLE

    def worth_array(self) -> np.ndarray:
        """Worths of masks ``1..2**n - 1`` in ascending order."""
        _check_enumerable(self.n)
        if self.mode is Mode.EXPLICIT_TABLE:
            return self.table
        sizes = coalition_sizes(self.n)
        return np.asarray(self.by_size, dtype=float)[sizes - 1]

    def __eq__(self, other):
        if not isinstance(other, CharacteristicFunction):
            return NotImplemented
        if (self.mode, self.n, self.by_size, self.game) != (
            other.mode, other.n, other.by_size, other.game
        ):
            return False
        if self.table is None or other.table is None:
            return self.table is other.table
        return bool(np.array_equal(self.table, other.table))

    __hash__ = None


def coalition_sizes(n: int) -> np.ndarray:
    """Popcount of every mask ``1..2**n - 1``, as an int array."""
    _check_enumerable(n)
    masks = np.arange(1, 1 << n, dtype=np.int64)
    sizes = np.zeros_like(masks)
    for bit in range(n):
        sizes += (masks >> bit) & 1
    return sizes


def iter_coalitions(n: int, proper_only: bool = False) -> Iterator[Coalition]:
    _check_enumerable(n)
    stop = (1 << n) - 1 if proper_only else 1 << n
    for mask in range(1, stop):
        yield Coalition(mask)


def enumerate_coalitions(n: int, proper_only: bool = False) -> list[Coalition]:
    """All non-empty coalitions of ``n`` services, ascending by bitmask."""
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    return list(iter_coalitions(n, proper_only))


def worth_from_table(
    n: int,
    entries: Union[Mapping[CoalitionLike, float], Sequence[tuple[CoalitionLike, float]]],
) -> CharacteristicFunction:
    """Explicit characteristic function; every non-empty coalition needs exactly one entry."""
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    _check_enumerable(n)
    items = entries.items() if isinstance(entries, Mapping) else entries
    table = np.full((1 << n) - 1, np.nan)
    for key, value in items:
        coalition = as_coalition(key)
        if coalition.max_index >= n:
            raise InvalidParameter(f"coalition {coalition} outside services 0..{n - 1}")
        value = float(value)
        if not math.isfinite(value):
            raise InvalidParameter(f"worth of {coalition} must be finite")
        if not np.isnan(table[coalition.members - 1]):
            raise DuplicateCoalition(f"coalition {coalition} listed twice")
        table[coalition.members - 1] = value
    missing = np.flatnonzero(np.isnan(table))
    if missing.size:
        absent = ", ".join(str(Coalition(int(m) + 1)) for m in missing[:5])
        more = "" if missing.size <= 5 else f" and {missing.size - 5} more"
        raise MissingCoalition(f"no worth given for {absent}{more}")
    table.setflags(write=False)
    return CharacteristicFunction(Mode.EXPLICIT_TABLE, n, table=table)


def worth_by_size(
    n: int, worths: Union[Mapping[int, float], Sequence[float]]
) -> CharacteristicFunction:
    """Characteristic function where ``v(S)`` depends only on ``|S|``.

    ``worths`` is either a sequence for sizes ``1..n`` or a mapping from size
    to worth covering exactly those sizes.
    """
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    if isinstance(worths, Mapping):
        if sorted(worths) != list(range(1, n + 1)):
            raise MissingCoalition(f"size worths must cover sizes 1..{n} exactly, got {sorted(worths)}")
        values = [worths[s] for s in range(1, n + 1)]
    else:
        values = list(worths)
        if len(values) != n:
            raise MissingCoalition(f"expected {n} size worths, got {len(values)}")
    values = tuple(float(v) for v in values)
    if not all(math.isfinite(v) for v in values):
        raise InvalidParameter("size worths must be finite")
    return CharacteristicFunction(Mode.SIZE_SYMMETRIC, n, by_size=values)
