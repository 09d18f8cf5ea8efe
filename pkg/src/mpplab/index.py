"""Vocabulary types for the index set R^d_+.

Points of the orthant carry the componentwise partial order; rate and
order vectors are validated once, at construction, and are immutable
afterwards so they can be shared freely between workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np


class DimensionError(ValueError):
    """Two vectors that must share a dimension do not."""


def _as_tuple(values, name: str) -> tuple[float, ...]:
    if np.isscalar(values):
        values = (values,)
    out = tuple(float(v) for v in values)
    if len(out) == 0:
        raise ValueError(f"{name}: dimension must be >= 1")
    if not all(np.isfinite(out)):
        raise ValueError(f"{name}: entries must be finite")
    return out


@dataclass(frozen=True)
class IndexPoint:
    """A point t of the nonnegative orthant (the multiparameter time)."""

    coords: tuple[float, ...]

    def __init__(self, coords):
        coords = _as_tuple(coords, "coords")
        if any(c < 0 for c in coords):
            raise ValueError(f"coords: expected nonnegative entries, got {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def d(self) -> int:
        return len(self.coords)

    def asarray(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __sub__(self, other: "IndexPoint") -> "IndexPoint":
        _check_dims(self, other)
        return IndexPoint([a - b for a, b in zip(self.coords, other.coords)])

    def scaled(self, c: float) -> "IndexPoint":
        return IndexPoint([c * a for a in self.coords])

    @classmethod
    def zeros(cls, d: int) -> "IndexPoint":
        return cls([0.0] * d)


@dataclass(frozen=True)
class RateVector:
    """Transition parameter: one strictly positive rate per axis."""

    rates: tuple[float, ...]

    def __init__(self, rates):
        rates = _as_tuple(rates, "rates")
        if any(r <= 0 for r in rates):
            raise ValueError(f"rates: expected strictly positive entries, got {rates}")
        object.__setattr__(self, "rates", rates)

    @property
    def d(self) -> int:
        return len(self.rates)

    def asarray(self) -> np.ndarray:
        return np.asarray(self.rates, dtype=float)

    def __len__(self):
        return len(self.rates)

    def __iter__(self):
        return iter(self.rates)

    def __getitem__(self, i):
        return self.rates[i]

    def scaled(self, c: float) -> "RateVector":
        return RateVector([c * r for r in self.rates])


@dataclass(frozen=True)
class FracOrders:
    """Fractional indices, one per axis.

    By default each order must lie in (0, 1]; the value 1 selects the
    classical (non-fractional) reduction.  ``relaxed=True`` only requires
    positivity, which is what Riemann-Liouville integral orders need.
    """

    orders: tuple[float, ...]
    relaxed: bool = False

    def __init__(self, orders, relaxed: bool = False):
        orders = _as_tuple(orders, "orders")
        if relaxed:
            bad = [a for a in orders if a <= 0]
            if bad:
                raise ValueError(f"orders: expected positive entries, got {orders}")
        else:
            bad = [a for a in orders if not 0 < a <= 1]
            if bad:
                raise ValueError(f"orders: expected entries in (0, 1], got {orders}")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "relaxed", bool(relaxed))

    @property
    def d(self) -> int:
        return len(self.orders)

    def asarray(self) -> np.ndarray:
        return np.asarray(self.orders, dtype=float)

    def __len__(self):
        return len(self.orders)

    def __iter__(self):
        return iter(self.orders)

    def __getitem__(self, i):
        return self.orders[i]


def _check_dims(a, b):
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} != {len(b)}")


def as_point(t) -> IndexPoint:
    return t if isinstance(t, IndexPoint) else IndexPoint(t)


def partial_le(s, t) -> bool:
    """Componentwise order: True iff s_i <= t_i for every axis."""
    s, t = as_point(s), as_point(t)
    _check_dims(s, t)
    return all(a <= b for a, b in zip(s.coords, t.coords))


def partial_lt(s, t) -> bool:
    """s precedes t and differs from it."""
    return partial_le(s, t) and as_point(s).coords != as_point(t).coords


def lambda_dot(rates, t) -> float:
    """Inner product of the rate vector with an index point."""
    rates = rates if isinstance(rates, RateVector) else RateVector(rates)
    t = as_point(t)
    _check_dims(rates, t)
    return float(sum(r * c for r, c in zip(rates.rates, t.coords)))


@dataclass(frozen=True)
class Composition:
    """A weak composition of n into d nonnegative parts."""

    parts: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


def compositions(n: int, d: int) -> Iterator[Composition]:
    """Yield every weak composition of ``n`` into ``d`` parts exactly once.

    Order is colexicographic: compositions are compared on their last part
    first, then the one before, and so on, so ``(2, 0)`` precedes
    ``(1, 1)`` precedes ``(0, 2)``.
    """
    if n < 0 or d < 1:
        raise ValueError("compositions: need n >= 0 and d >= 1")
    if d == 1:
        yield Composition((n,))
        return
    # stars and bars; bar positions in lexicographic order produce colex order
    for bars in combinations(range(n + d - 1), d - 1):
        parts = []
        prev = -1
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + d - 2 - prev)
        yield Composition(tuple(reversed(parts)))


def n_compositions(n: int, d: int) -> int:
    return comb(n + d - 1, d - 1)
