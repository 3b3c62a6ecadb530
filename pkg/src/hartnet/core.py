"""Domain types and unit conventions.

Everything is computed in units where hbar = 1 and 2m = 1, so that
E = k**2 and the evanescent decay constant is sqrt(V - E).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence


class HartnetError(Exception):
    """Base class for all package errors."""


class DomainError(HartnetError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConfigError(HartnetError, ValueError):
    """Invalid run configuration; ``where`` names the offending field."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class NumericError(HartnetError, ArithmeticError):
    """A numerical procedure failed; ``diagnostics`` carries the details."""

    def __init__(self, message: str, **diagnostics):
        self.diagnostics = diagnostics
        super().__init__(message)

    def __str__(self) -> str:
        msg = super().__str__()
        if not self.diagnostics:
            return msg
        extra = ", ".join(f"{k}={v:.3g}" if isinstance(v, float) else f"{k}={v}"
                          for k, v in self.diagnostics.items())
        return f"{msg} ({extra})"


class UndefinedPhaseError(NumericError):
    """The transmission amplitude vanished, so its phase is meaningless."""


class DegenerateEnergyError(NumericError):
    """E is too close to a barrier height for the analytic derivative."""


@dataclass(frozen=True)
class Units:
    hbar: float = 1.0
    two_m: float = 1.0

    def __post_init__(self):
        if self.hbar != 1.0 or self.two_m != 1.0:
            raise DomainError("only hbar = 1, 2m = 1 units are supported")

    @property
    def mass(self) -> float:
        return self.two_m / 2.0

    def velocity(self, k: float) -> float:
        """Free-particle velocity hbar k / m (= 2k)."""
        return self.hbar * k / self.mass


UNITS = Units()


@dataclass(frozen=True)
class BarrierSpec:
    """Rectangular barrier of height ``V`` on [lb, lb + w] along a branch."""

    V: float
    w: float
    lb: float = 0.0

    def __post_init__(self):
        for name in ("V", "w", "lb"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"barrier {name} must be finite")
        if self.w < 0:
            raise DomainError(f"barrier width must be >= 0, got {self.w}")
        if self.lb < 0:
            raise DomainError(f"barrier offset must be >= 0, got {self.lb}")


@dataclass(frozen=True)
class BranchSpec:
    barrier: Optional[BarrierSpec] = None

    @property
    def is_free(self) -> bool:
        return self.barrier is None


@dataclass(frozen=True)
class NetworkSpec:
    """A base lead joined at J to ``len(branches)`` semi-infinite side branches."""

    branches: tuple[BranchSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if len(self.branches) < 1:
            raise DomainError("a network needs at least one branch")

    @property
    def N(self) -> int:
        return len(self.branches)

    @classmethod
    def from_barriers(cls, barriers: Sequence[Optional[BarrierSpec]]) -> "NetworkSpec":
        return cls(tuple(BranchSpec(b) for b in barriers))

    @classmethod
    def identical(cls, n: int, barrier: Optional[BarrierSpec]) -> "NetworkSpec":
        return cls(tuple(BranchSpec(barrier) for _ in range(n)))

    def with_barrier(self, n: int, **changes) -> "NetworkSpec":
        """Copy with fields of branch ``n`` (0-based) replaced."""
        old = self.branches[n].barrier
        if old is None:
            raise DomainError(f"branch {n + 1} has no barrier")
        branches = list(self.branches)
        branches[n] = BranchSpec(replace(old, **changes))
        return NetworkSpec(tuple(branches))


def check_energy(E: float) -> float:
    if not (isinstance(E, (int, float)) and math.isfinite(E) and E > 0):
        raise DomainError(f"energy must be a finite positive number, got {E!r}")
    return float(E)


def wavenumber(E: float) -> float:
    """k = sqrt(E)."""
    return math.sqrt(check_energy(E))


def kappa(V: float, E: float) -> complex:
    """Principal sqrt(V - E); real > 0 under the barrier, i*sqrt(E - V) above it."""
    check_energy(E)
    return cmath.sqrt(complex(V - E, 0.0))


@dataclass(frozen=True)
class Report:
    V: float
    w: float
    tau: float


def normalize_report(V: float, w: float, tau: float, E: float) -> Report:
    """Map raw quantities to V/E, k*w, E*tau."""
    k = wavenumber(E)
    return Report(V / E, k * w, E * tau)
