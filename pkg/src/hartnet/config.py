"""Run configuration: INI-style key-value files parsed into a RunSpec.

Schema::

    [run]
    preset = fig4                 # optional label echoed into the manifest

    [network]
    E = 1                         # required, > 0

    [branch.1]                    # branches numbered 1..N without gaps
    V = 15                        # V and w required together; lb defaults to 0
    w = 1
    lb = 2.5

    [branch.2]                    # empty section = barrier-free branch

    [sweep.fig4_main]             # one table per section, written to fig4_main.csv
    axes = w1: 0:10:0.05          # ';'-separated; start:stop:step (inclusive) or a, b, c
    observables = tau1, T1        # comma-separated; "label = expr" renames a column

    [scan]                        # saturation search policy (all optional)
    w0 = 1
    growth = 2
    max_steps = 20
    eps_abs = 1e-6
    eps_rel = 1e-8

    [output]                      # all optional
    dir = out
    svg = off
    method = analytic             # analytic | fd
    jobs = 1

A bare ``[sweep]`` section is a single table named ``sweep``.
"""
from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, fields
from typing import Optional, Union

from .core import BarrierSpec, BranchSpec, ConfigError, NetworkSpec
from .phasetime import ScanPolicy
from .sweep import Observable, parse_path

_RANGE_DECIMALS = 12


@dataclass(frozen=True)
class RangeAxis:
    start: float
    stop: float
    step: float

    def values(self) -> tuple[float, ...]:
        n = int(round((self.stop - self.start) / self.step))
        return tuple(round(self.start + i * self.step, _RANGE_DECIMALS) for i in range(n + 1))

    def __str__(self) -> str:
        return f"{_num(self.start)}:{_num(self.stop)}:{_num(self.step)}"


@dataclass(frozen=True)
class ListAxis:
    items: tuple[float, ...]

    def values(self) -> tuple[float, ...]:
        return self.items

    def __str__(self) -> str:
        return ", ".join(_num(v) for v in self.items)


@dataclass(frozen=True)
class AxisSpec:
    path: str
    grid: Union[RangeAxis, ListAxis]

    def values(self) -> tuple[float, ...]:
        return self.grid.values()


@dataclass(frozen=True)
class TableSpec:
    name: str
    axes: tuple[AxisSpec, ...]
    observables: tuple[Observable, ...]


@dataclass(frozen=True)
class OutputSpec:
    dir: str = "out"
    svg: bool = False
    method: str = "analytic"
    jobs: int = 1


@dataclass(frozen=True)
class RunSpec:
    E: float
    network: NetworkSpec
    tables: tuple[TableSpec, ...]
    scan: ScanPolicy = ScanPolicy()
    output: OutputSpec = OutputSpec()
    preset: Optional[str] = None


def _num(x: float) -> str:
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _float(text: str, where: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}", where=where) from None
    if not math.isfinite(value):
        raise ConfigError(f"must be finite: {text!r}", where=where)
    return value


def _int(text: str, where: str) -> int:
    value = _float(text, where)
    if not value.is_integer():
        raise ConfigError(f"not an integer: {text!r}", where=where)
    return int(value)


def _bool(text: str, where: str) -> bool:
    t = text.strip().lower()
    if t in ("on", "true", "yes", "1"):
        return True
    if t in ("off", "false", "no", "0"):
        return False
    raise ConfigError(f"expected on/off, got {text!r}", where=where)


def _check_keys(section, allowed: set[str], where: str):
    for key in section:
        if key not in allowed:
            raise ConfigError(f"unknown key (allowed: {', '.join(sorted(allowed))})",
                              where=f"{where}.{key}")


def parse_axis(text: str, where: str) -> AxisSpec:
    if ":" not in text:
        raise ConfigError(f"axis needs 'path: values', got {text!r}", where=where)
    path, spec = (s.strip() for s in text.split(":", 1))
    try:
        parse_path(path)
    except ConfigError as exc:
        raise ConfigError(str(exc), where=f"{where}[{path}]") from None
    where = f"{where}[{path}]"
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ConfigError(f"range must be start:stop:step, got {spec!r}", where=where)
        start, stop, step = (_float(p, where) for p in parts)
        if step <= 0 or stop < start:
            raise ConfigError("range needs step > 0 and stop >= start", where=where)
        return AxisSpec(path, RangeAxis(start, stop, step))
    items = tuple(_float(p, where) for p in spec.split(",") if p.strip())
    if not items:
        raise ConfigError("axis has no values", where=where)
    return AxisSpec(path, ListAxis(items))


def _physical_checks(spec: RunSpec):
    for table in spec.tables:
        for axis in table.axes:
            name, _ = parse_path(axis.path)
            sec = "sweep" if table.name == "sweep" else f"sweep.{table.name}"
            where = f"{sec}.axes[{axis.path}]"
            vals = axis.values()
            if name in ("w", "lb") and min(vals) < 0:
                raise ConfigError(f"{name} must be >= 0", where=where)
            if name == "E" and min(vals) <= 0:
                raise ConfigError("E must be > 0", where=where)
            if name == "N" and any(v < 1 or not float(v).is_integer() for v in vals):
                raise ConfigError("N must be a positive integer", where=where)


def parse_config(text: str) -> RunSpec:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",),
                                   empty_lines_in_values=False)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None

    known = {"run", "network", "scan", "output", "sweep"}
    branch_ids, tables = [], []
    for sec in cp.sections():
        if m := re.fullmatch(r"branch\.(\d+)", sec):
            branch_ids.append(int(m.group(1)))
        elif not (sec in known or re.fullmatch(r"sweep\.[A-Za-z0-9_\-]+", sec)):
            raise ConfigError("unknown section", where=sec)

    run = cp["run"] if cp.has_section("run") else {}
    _check_keys(run, {"preset"}, "run")
    preset = run.get("preset") or None

    if not cp.has_section("network"):
        raise ConfigError("missing required section", where="network")
    net = cp["network"]
    _check_keys(net, {"E"}, "network")
    if "E" not in net:
        raise ConfigError("missing required key", where="network.E")
    E = _float(net["E"], "network.E")
    if E <= 0:
        raise ConfigError("energy must be > 0", where="network.E")

    if not branch_ids:
        raise ConfigError("at least one [branch.N] section is required", where="branch.1")
    if sorted(branch_ids) != list(range(1, len(branch_ids) + 1)):
        raise ConfigError("branches must be numbered 1..N without gaps", where="branch")
    branches = []
    for n in range(1, len(branch_ids) + 1):
        where = f"branch.{n}"
        sec = cp[where]
        _check_keys(sec, {"V", "w", "lb"}, where)
        if not sec:
            branches.append(BranchSpec())
            continue
        for key in ("V", "w"):
            if key not in sec:
                raise ConfigError("missing required key", where=f"{where}.{key}")
        V = _float(sec["V"], f"{where}.V")
        w = _float(sec["w"], f"{where}.w")
        lb = _float(sec.get("lb", "0"), f"{where}.lb")
        if w < 0:
            raise ConfigError("barrier width must be >= 0", where=f"{where}.w")
        if lb < 0:
            raise ConfigError("barrier offset must be >= 0", where=f"{where}.lb")
        branches.append(BranchSpec(BarrierSpec(V, w, lb)))

    for sec in cp.sections():
        if not (sec == "sweep" or sec.startswith("sweep.")):
            continue
        name = "sweep" if sec == "sweep" else sec.split(".", 1)[1]
        body = cp[sec]
        _check_keys(body, {"axes", "observables"}, sec)
        for key in ("axes", "observables"):
            if key not in body:
                raise ConfigError("missing required key", where=f"{sec}.{key}")
        chunks = [c.strip() for c in re.split(r"[;\n]", body["axes"]) if c.strip()]
        axes = tuple(parse_axis(c, f"{sec}.axes") for c in chunks)
        try:
            obs = tuple(Observable.parse(o) for o in body["observables"].split(",") if o.strip())
        except ConfigError as exc:
            raise ConfigError(str(exc), where=f"{sec}.observables") from None
        if not obs:
            raise ConfigError("no observables", where=f"{sec}.observables")
        tables.append(TableSpec(name, axes, obs))

    scan_sec = cp["scan"] if cp.has_section("scan") else {}
    _check_keys(scan_sec, {f.name for f in fields(ScanPolicy)}, "scan")
    default = ScanPolicy()
    scan = ScanPolicy(
        w0=_float(scan_sec.get("w0", str(default.w0)), "scan.w0"),
        growth=_float(scan_sec.get("growth", str(default.growth)), "scan.growth"),
        max_steps=_int(scan_sec.get("max_steps", str(default.max_steps)), "scan.max_steps"),
        eps_abs=_float(scan_sec.get("eps_abs", str(default.eps_abs)), "scan.eps_abs"),
        eps_rel=_float(scan_sec.get("eps_rel", str(default.eps_rel)), "scan.eps_rel"),
    )
    if scan.w0 <= 0 or scan.growth <= 1 or scan.max_steps < 1:
        raise ConfigError("need w0 > 0, growth > 1, max_steps >= 1", where="scan")

    out_sec = cp["output"] if cp.has_section("output") else {}
    _check_keys(out_sec, {"dir", "svg", "method", "jobs"}, "output")
    method = out_sec.get("method", "analytic").strip()
    if method not in ("analytic", "fd"):
        raise ConfigError("method must be analytic or fd", where="output.method")
    jobs = _int(out_sec.get("jobs", "1"), "output.jobs")
    if jobs < 1:
        raise ConfigError("jobs must be >= 1", where="output.jobs")
    output = OutputSpec(out_sec.get("dir", "out").strip(), _bool(out_sec.get("svg", "off"), "output.svg"),
                        method, jobs)

    spec = RunSpec(E, NetworkSpec(tuple(branches)), tuple(tables), scan, output, preset)
    _physical_checks(spec)
    return spec


def serialize_config(spec: RunSpec) -> str:
    """Inverse of :func:`parse_config` (parse(serialize(s)) == s)."""
    lines = []
    if spec.preset:
        lines += ["[run]", f"preset = {spec.preset}", ""]
    lines += ["[network]", f"E = {_num(spec.E)}", ""]
    for n, br in enumerate(spec.network.branches, 1):
        lines.append(f"[branch.{n}]")
        if br.barrier is not None:
            b = br.barrier
            lines += [f"V = {_num(b.V)}", f"w = {_num(b.w)}", f"lb = {_num(b.lb)}"]
        lines.append("")
    for table in spec.tables:
        lines.append("[sweep]" if table.name == "sweep" else f"[sweep.{table.name}]")
        lines.append("axes = " + "; ".join(f"{a.path}: {a.grid}" for a in table.axes))
        lines.append("observables = " + ", ".join(str(o) for o in table.observables))
        lines.append("")
    s = spec.scan
    lines += ["[scan]", f"w0 = {_num(s.w0)}", f"growth = {_num(s.growth)}",
              f"max_steps = {s.max_steps}", f"eps_abs = {s.eps_abs!r}",
              f"eps_rel = {s.eps_rel!r}", ""]
    o = spec.output
    lines += ["[output]", f"dir = {o.dir}", f"svg = {'on' if o.svg else 'off'}",
              f"method = {o.method}", f"jobs = {o.jobs}", ""]
    return "\n".join(lines)
