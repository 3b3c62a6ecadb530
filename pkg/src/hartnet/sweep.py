"""Cartesian parameter sweeps producing observables tables.

Parameter paths (1-based branch numbers, as in the CSV headers):

    V3, w3, lb3   field of branch 3's barrier
    V, w, lb      field of every barrier branch
    N             replicate branch 1 N times (applied before other axes)
    E             incident energy

Observables:

    tau3          phase time of branch 3
    T3            |t_3|^2
    R2            |R|^2
    tau_s3        saturated phase time of branch 3, scanning its own width
    tau_s2@1      saturated phase time of branch 2, scanning branch 1's width
    density3      integrated |psi|^2 under branch 3's barrier
"""
from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Sequence

from . import __version__
from .core import BarrierSpec, BranchSpec, ConfigError, DomainError, NetworkSpec
from .phasetime import ScanPolicy, hartman_scan, phase_time, under_barrier_density
from .solver import solve_scattering

_PATH = re.compile(r"^(?:(V|w|lb)(\d*)|N|E)$")
_OBS = re.compile(r"^(?:(tau|T|density)(\d+)|R2|tau_s(\d+)(?:@(\d+))?)$")

UNITS = {"V": "E", "w": "1/k", "lb": "1/k", "N": "count", "E": "E",
         "tau": "1/E", "tau_s": "1/E", "T": "1", "R2": "1", "density": "1/k"}


def parse_path(path: str) -> tuple[str, int | None]:
    """('V', 2) for "V2", ('V', None) for "V", ('N', None), ('E', None)."""
    m = _PATH.match(path)
    if not m:
        raise ConfigError(f"unknown parameter path {path!r}", where=path)
    if path in ("N", "E"):
        return path, None
    idx = int(m.group(2)) if m.group(2) else None
    if idx is not None and idx < 1:
        raise ConfigError("branch numbers start at 1", where=path)
    return m.group(1), idx


@dataclass(frozen=True)
class Observable:
    label: str
    expr: str

    def parts(self) -> tuple[str, int | None, int | None]:
        m = _OBS.match(self.expr)
        if not m:
            raise ConfigError(f"unknown observable {self.expr!r}", where=self.label)
        if self.expr == "R2":
            return "R2", None, None
        if m.group(1):
            return m.group(1), int(m.group(2)), None
        scan = int(m.group(4)) if m.group(4) else int(m.group(3))
        return "tau_s", int(m.group(3)), scan

    @classmethod
    def parse(cls, text: str) -> "Observable":
        """"tau1" or "label = tau1"."""
        if "=" in text:
            label, expr = (s.strip() for s in text.split("=", 1))
        else:
            label = expr = text.strip()
        obs = cls(label, expr)
        obs.parts()
        return obs

    def __str__(self) -> str:
        return self.expr if self.label == self.expr else f"{self.label}={self.expr}"


def unit_of(name: str) -> str:
    base = re.sub(r"(@\d+)?$", "", name)
    base = re.sub(r"\d+$", "", base)
    return UNITS.get(base, "")


@dataclass
class SweepTable:
    axes: tuple[str, ...]
    observables: tuple[str, ...]
    rows: list[tuple[float, ...]]
    metadata: dict[str, Any] = field(default_factory=dict)
    units: dict[str, str] = field(default_factory=dict)

    @property
    def columns(self) -> tuple[str, ...]:
        return self.axes + self.observables

    def column(self, name: str) -> list[float]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)


def _apply(template: NetworkSpec, E: float, assignment: Sequence[tuple[str, float]]):
    net = template
    pairs = sorted(assignment, key=lambda pv: pv[0] != "N")  # N first, stable otherwise
    for path, value in pairs:
        name, idx = parse_path(path)
        if name == "E":
            E = float(value)
        elif name == "N":
            if value != int(value) or value < 1:
                raise ConfigError(f"N must be a positive integer, got {value}", where=path)
            net = NetworkSpec.identical(int(value), net.branches[0].barrier)
        else:
            targets = range(net.N) if idx is None else [idx - 1]
            branches = list(net.branches)
            hit = False
            for n in targets:
                if n >= net.N:
                    raise ConfigError(f"network has only {net.N} branches", where=path)
                bar = branches[n].barrier
                if bar is None:
                    if idx is not None:
                        raise ConfigError(f"branch {n + 1} has no barrier", where=path)
                    continue
                try:
                    branches[n] = BranchSpec(replace(bar, **{name: float(value)}))
                except DomainError as exc:
                    raise ConfigError(str(exc), where=path) from None
                hit = True
            if not hit:
                raise ConfigError("no barrier branch to modify", where=path)
            net = NetworkSpec(tuple(branches))
    if not E > 0:
        raise ConfigError(f"energy must be positive, got {E}", where="E")
    return net, E


def _check_observables(net: NetworkSpec, E: float, observables: Sequence[Observable]):
    for obs in observables:
        kind, n, scan = obs.parts()
        for idx in (n, scan):
            if idx is not None and not 1 <= idx <= net.N:
                raise ConfigError(f"branch {idx} out of range 1..{net.N}", where=obs.label)
        if kind == "density" and net.branches[n - 1].barrier is None:
            raise ConfigError(f"branch {n} has no barrier", where=obs.label)
        if kind == "tau_s":
            bar = net.branches[scan - 1].barrier
            if bar is None or not bar.V > E:
                raise ConfigError(f"branch {scan} needs a barrier with V > E to saturate",
                                  where=obs.label)


def _evaluate(task) -> tuple[float, ...]:
    net, E, observables, method, policy = task
    sol = None
    out = []
    for obs in observables:
        kind, n, scan = obs.parts()
        if kind == "tau":
            out.append(phase_time(net, E, n - 1, method).tau)
            continue
        if kind == "tau_s":
            out.append(hartman_scan(net, E, n - 1, policy, scan - 1, method).tau_s)
            continue
        if sol is None:
            sol = solve_scattering(net, E)
        if kind == "T":
            out.append(float(abs(sol.t[n - 1]) ** 2))
        elif kind == "R2":
            out.append(float(abs(sol.R) ** 2))
        else:
            out.append(under_barrier_density(net, E, n - 1, sol))
    return tuple(out)


def sweep(template: NetworkSpec, axes: Sequence[tuple[str, Sequence[float]]],
          observables: Sequence[Observable | str], E: float,
          method: str = "analytic", policy: ScanPolicy = ScanPolicy(),
          jobs: int = 1, metadata: dict | None = None) -> SweepTable:
    """Evaluate observables on the row-major Cartesian product of ``axes``.

    The whole grid is validated before anything is solved.  With ``jobs > 1``
    rows are farmed out to worker processes; output order is unaffected.
    """
    obs = [o if isinstance(o, Observable) else Observable.parse(o) for o in observables]
    names = [a for a, _ in axes]
    for a in names:
        parse_path(a)
    if len(set(names)) != len(names):
        raise ConfigError("duplicate sweep axis")
    grid = list(itertools.product(*[[float(v) for v in vals] for _, vals in axes]))
    tasks = []
    for point in grid:
        net, e = _apply(template, E, list(zip(names, point)))
        _check_observables(net, e, obs)
        tasks.append((net, e, obs, method, policy))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        values = [_evaluate(t) for t in tasks]

    labels = tuple(o.label for o in obs)
    meta = {"tool": "hartnet", "version": __version__, "E": E, "method": method}
    meta.update(metadata or {})
    units = {name: unit_of(name) for name in names}
    units.update({o.label: unit_of(o.expr) for o in obs})
    return SweepTable(tuple(names), labels,
                      [tuple(p) + v for p, v in zip(grid, values)], meta, units)
