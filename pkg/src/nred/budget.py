"""Fuel accounting for partial computations."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OutOfFuel

DEFAULT_FUEL = 100_000
DEFAULT_PRECISION = 20


@dataclass(frozen=True)
class EvalBudget:
    fuel: int = DEFAULT_FUEL
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.fuel < 0:
            raise ValueError("fuel must be non-negative")
        if self.precision < 0:
            raise ValueError("precision must be non-negative")

    def meter(self) -> "Meter":
        return Meter(self.fuel)


class Meter:
    """Mutable step counter handed down one evaluation.

    Consumption is deterministic, so a run that halts with fuel F halts
    identically with any larger fuel.
    """

    __slots__ = ("limit", "spent")

    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    @property
    def left(self) -> int:
        return self.limit - self.spent

    def tick(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.limit:
            raise OutOfFuel(f"out of fuel after {self.limit} steps", spent=self.limit)

    def __repr__(self):
        return f"Meter({self.spent}/{self.limit})"


def as_meter(fuel) -> Meter:
    """Accept an int, an EvalBudget, an existing Meter, or None (default)."""
    if fuel is None:
        return Meter(DEFAULT_FUEL)
    if isinstance(fuel, Meter):
        return fuel
    if isinstance(fuel, EvalBudget):
        return fuel.meter()
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    return Meter(int(fuel))


def unmetered() -> Meter:
    return Meter(float("inf"))
