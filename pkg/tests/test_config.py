from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from hartnet import BarrierSpec, ConfigError
from hartnet.config import (AxisSpec, ListAxis, OutputSpec, RangeAxis, RunSpec, TableSpec,
                            parse_config, serialize_config)
from hartnet.core import BranchSpec, NetworkSpec
from hartnet.phasetime import ScanPolicy
from hartnet.presets import PRESETS, preset_spec
from hartnet.sweep import Observable

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

MINIMAL = """
[network]
E = 1

[branch.1]
"""


def test_minimal_config():
    spec = parse_config(MINIMAL)
    assert spec.network.N == 1 and spec.network.branches[0].is_free
    assert spec.E == 1.0 and spec.tables == ()
    assert spec.output == OutputSpec()


def test_full_config():
    spec = parse_config("""
[network]
E = 2   # raw units
[branch.1]
V = 15
w = 1
lb = 2.5
[branch.2]
[sweep.demo]
axes = V1: 5, 10; w1: 0:1:0.25
observables = tau1, tsat = tau_s1
[scan]
eps_abs = 1e-7
[output]
svg = on
method = fd
jobs = 2
""")
    assert spec.network.branches[0].barrier == BarrierSpec(15, 1, 2.5)
    assert spec.network.branches[1].is_free
    (table,) = spec.tables
    assert table.axes[1].values() == (0.0, 0.25, 0.5, 0.75, 1.0)
    assert table.observables[1] == Observable("tsat", "tau_s1")
    assert spec.scan.eps_abs == 1e-7 and spec.output.svg and spec.output.jobs == 2


def test_range_values_are_clean():
    vals = RangeAxis(0, 10, 0.05).values()
    assert len(vals) == 201 and vals[3] == 0.15 and vals[-1] == 10.0
    assert RangeAxis(1.05, 15, 0.05).values()[-1] == 15.0


@pytest.mark.parametrize("text, where", [
    ("[network]\nE = 1\n[branch.1]\nV = 5\nw = -1\n", "branch.1.w"),
    ("[network]\nE = 1\n[branch.1]\nV = 5\nw = 1\nlb = -2\n", "branch.1.lb"),
    ("[network]\nE = 1\n[branch.1]\nV = 5\n", "branch.1.w"),
    ("[network]\nE = 1\n[branch.1]\nV = five\nw = 1\n", "branch.1.V"),
    ("[network]\nE = 0\n[branch.1]\n", "network.E"),
    ("[network]\n[branch.1]\n", "network.E"),
    ("[network]\nE = 1\nF = 2\n[branch.1]\n", "network.F"),
    ("[network]\nE = 1\n[branch.1]\ncolor = red\n", "branch.1.color"),
    ("[network]\nE = 1\n[branch.2]\n", "branch"),
    ("[network]\nE = 1\n", "branch.1"),
    ("[network]\nE = 1\n[branch.1]\n[extras]\n", "extras"),
    ("[network]\nE = 1\n[branch.1]\n[sweep]\naxes = q1: 1\nobservables = tau1\n", "sweep.axes[q1]"),
    ("[network]\nE = 1\n[branch.1]\n[sweep]\naxes = w1: 1:0:1\nobservables = tau1\n", "sweep.axes[w1]"),
    ("[network]\nE = 1\n[branch.1]\n[sweep]\naxes = w1: -1, 1\nobservables = tau1\n", "sweep.axes[w1]"),
    ("[network]\nE = 1\n[branch.1]\n[sweep]\naxes = w1: 1\n", "sweep.observables"),
    ("[network]\nE = 1\n[branch.1]\n[sweep]\naxes = w1: 1\nobservables = foo\n", "sweep.observables"),
    ("[network]\nE = 1\n[branch.1]\n[output]\nmethod = magic\n", "output.method"),
    ("[network]\nE = 1\n[branch.1]\n[output]\nsvg = maybe\n", "output.svg"),
    ("[network]\nE = 1\n[branch.1]\n[scan]\nmax_steps = 2.5\n", "scan.max_steps"),
])
def test_config_errors_name_the_field(text, where):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.where == where
    assert where in str(info.value)


def test_malformed():
    with pytest.raises(ConfigError):
        parse_config("no section header\n")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_roundtrip(name):
    spec = preset_spec(name)
    assert parse_config(serialize_config(spec)) == spec


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_shipped_config_equals_preset(name):
    assert parse_config((CONFIGS / f"{name}.ini").read_text()) == preset_spec(name)


def test_shipped_custom_config_parses():
    spec = parse_config((CONFIGS / "lb2_resonance.ini").read_text())
    assert spec.tables[0].axes[0].path == "lb2" and len(spec.tables[0].axes[0].values()) == 501


finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
positive = st.floats(1e-3, 1e3, allow_nan=False, allow_infinity=False)
nonneg = st.floats(0, 1e3, allow_nan=False, allow_infinity=False)
barriers = st.one_of(st.none(), st.builds(BarrierSpec, finite, nonneg, nonneg))


@st.composite
def runspecs(draw):
    bars = draw(st.lists(barriers, min_size=1, max_size=4))
    n = len(bars)
    paths = st.sampled_from(["E", "N"] + [f"{f}{i}" for f in ("w", "lb") for i in range(1, n + 1)])
    axes = []
    for path in draw(st.lists(paths, min_size=1, max_size=3, unique=True)):
        if path == "N":
            grid = ListAxis(tuple(float(v) for v in draw(st.lists(st.integers(1, 9), min_size=1, max_size=3))))
        elif draw(st.booleans()):
            start = draw(st.floats(0.001, 10))
            grid = RangeAxis(start, start + draw(st.floats(0, 5)), draw(st.floats(0.01, 2)))
        else:
            grid = ListAxis(tuple(draw(st.lists(positive, min_size=1, max_size=4))))
        axes.append(AxisSpec(path, grid))
    obs = tuple(Observable.parse(o) for o in draw(st.lists(
        st.sampled_from(["tau1", "T1", "R2", "x=tau1"]), min_size=1, max_size=3, unique=True)))
    tables = (TableSpec("t1", tuple(axes), obs),)
    scan = ScanPolicy(draw(positive), draw(st.floats(1.1, 4)), draw(st.integers(1, 40)),
                      draw(st.floats(0, 1e-3)), draw(st.floats(0, 1e-3)))
    out = OutputSpec(draw(st.sampled_from(["out", "results/run1"])), draw(st.booleans()),
                     draw(st.sampled_from(["analytic", "fd"])), draw(st.integers(1, 8)))
    preset = draw(st.sampled_from([None, "custom"]))
    return RunSpec(draw(positive), NetworkSpec(tuple(BranchSpec(b) for b in bars)), tables,
                   scan, out, preset)


@settings(max_examples=200, deadline=None)
@given(runspecs())
def test_runspec_roundtrip_property(spec):
    text = serialize_config(spec)
    again = parse_config(text)
    assert again == spec
    assert serialize_config(again) == text
