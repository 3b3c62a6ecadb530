import importlib

import numpy as np
import pytest

from hartnet import BarrierSpec, ConfigError, NetworkSpec
from hartnet.phasetime import hartman_scan, phase_time
from hartnet.sweep import Observable, parse_path, sweep, unit_of

sweep_mod = importlib.import_module("hartnet.sweep")  # the package re-exports sweep()
FIG4 = NetworkSpec.from_barriers([BarrierSpec(15, 1, 2.5), BarrierSpec(5, 0.5, 2.5)])


def test_parse_path():
    assert parse_path("V2") == ("V", 2)
    assert parse_path("lb13") == ("lb", 13)
    assert parse_path("w") == ("w", None)
    assert parse_path("N") == ("N", None)
    for bad in ("x1", "V0", "tau1", "N2", ""):
        with pytest.raises(ConfigError):
            parse_path(bad)


def test_observable_parsing():
    assert Observable.parse("tau1").parts() == ("tau", 1, None)
    assert Observable.parse("tau_s = tau1") == Observable("tau_s", "tau1")
    assert Observable.parse("tau_s2@1").parts() == ("tau_s", 2, 1)
    assert Observable.parse("tau_s3").parts() == ("tau_s", 3, 3)
    assert Observable.parse("R2").parts() == ("R2", None, None)
    assert str(Observable.parse("tau_s=tau1")) == "tau_s=tau1"
    with pytest.raises(ConfigError):
        Observable.parse("phase1")


def test_units():
    assert unit_of("tau1") == "1/E" and unit_of("w12") == "1/k"
    assert unit_of("tau_s2@1") == "1/E" and unit_of("T3") == "1"


def test_width_anchor_rows():
    net = NetworkSpec.from_barriers([BarrierSpec(5, 1, 0), None])
    table = sweep(net, [("w1", [0, 1])], ["tau1"], 1.0)
    assert len(table) == 2
    free = phase_time(NetworkSpec.identical(2, None), 1.0, 0).tau
    assert table.rows[0][1] == pytest.approx(free, abs=1e-12)
    assert table.rows[0][0] == 0.0 and table.rows[1][0] == 1.0


def test_row_major_order_and_columns():
    table = sweep(FIG4, [("V2", [3, 5]), ("w1", [1, 2, 3])], ["tau1", "T2", "R2"], 1.0)
    assert table.columns == ("V2", "w1", "tau1", "T2", "R2")
    assert [r[:2] for r in table.rows] == [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3)]
    row = table.rows[4]
    net = FIG4.with_barrier(1, V=5).with_barrier(0, w=2)
    assert row[2] == phase_time(net, 1.0, 0).tau
    assert all(len(r) == 5 for r in table.rows)


def test_fig5_row_count():
    net = NetworkSpec.identical(1, BarrierSpec(5, 100, 1))
    table = sweep(net, [("V", [5, 1.25]), ("N", range(2, 31))], ["tau_s=tau1"], 1.0)
    assert len(table) == 58
    assert table.columns == ("V", "N", "tau_s")


def test_n_axis_applies_before_field_axes():
    net = NetworkSpec.identical(1, BarrierSpec(5, 10, 1))
    # V listed first still modifies every replicated branch
    table = sweep(net, [("V", [3.0]), ("N", [4])], ["tau1", "tau4"], 1.0)
    assert table.rows[0][2] == pytest.approx(table.rows[0][3], abs=1e-12)
    ref = phase_time(NetworkSpec.identical(4, BarrierSpec(3, 10, 1)), 1.0, 0).tau
    assert table.rows[0][2] == ref


def test_energy_axis():
    table = sweep(FIG4, [("E", [0.5, 1.0])], ["tau1"], 1.0)
    assert table.rows[1][1] == phase_time(FIG4, 1.0, 0).tau


def test_nested_saturation_observable():
    table = sweep(FIG4, [("V2", [5.0])], ["tau_s1", "tau_s2@1"], 1.0)
    assert table.rows[0][1] == hartman_scan(FIG4, 1.0, 0).tau_s
    assert table.rows[0][2] == hartman_scan(FIG4, 1.0, 1, width_branch=0).tau_s


def test_lb2_resonances():
    lbs = np.round(np.arange(0, 5.0001, 0.01), 12)
    table = sweep(FIG4.with_barrier(0, w=5), [("lb2", lbs)], ["T2"], 1.0)
    T = np.array(table.column("T2"))
    peaks = [i for i in range(1, len(T) - 1) if T[i] > T[i - 1] and T[i] > T[i + 1]]
    dips = [i for i in range(1, len(T) - 1) if T[i] < T[i - 1] and T[i] < T[i + 1]]
    assert peaks and dips
    for p in peaks:
        left = [T[d] for d in dips if d < p] or [T[0]]
        right = [T[d] for d in dips if d > p] or [T[-1]]
        assert T[p] > 10 * left[-1] and T[p] > 10 * right[0]


def test_saturated_delay_flips_sign_across_resonance():
    table = sweep(FIG4, [("lb2", [2.5, 2.95, 3.4])], ["tau_s1"], 1.0)
    vals = table.column("tau_s1")
    assert vals[0] < 0 < vals[2]


@pytest.mark.parametrize("axes, obs", [
    ([("x1", [1])], ["tau1"]),
    ([("w3", [1])], ["tau1"]),
    ([("w1", [-1, 1])], ["tau1"]),
    ([("lb1", [-0.5])], ["tau1"]),
    ([("E", [0, 1])], ["tau1"]),
    ([("N", [2.5])], ["tau1"]),
    ([("w1", [1])], ["tau7"]),
    ([("w1", [1])], ["density2"]),
    ([("w1", [1]), ("w1", [2])], ["tau1"]),
])
def test_invalid_grid_rejected_before_solving(monkeypatch, axes, obs):
    calls = []
    monkeypatch.setattr(sweep_mod, "_evaluate", lambda task: calls.append(task))
    net = NetworkSpec.from_barriers([BarrierSpec(5, 1, 0), None])
    with pytest.raises(ConfigError):
        sweep(net, axes, obs, 1.0)
    assert calls == []


def test_saturation_needs_evanescent_barrier():
    net = NetworkSpec.from_barriers([BarrierSpec(0.5, 1, 0), None])
    with pytest.raises(ConfigError):
        sweep(net, [("w1", [1])], ["tau_s1"], 1.0)


def test_parallel_matches_serial():
    axes = [("V2", [2.5, 5.0, 10.0]), ("w1", [0.5, 1.0, 2.0, 4.0])]
    a = sweep(FIG4, axes, ["tau1", "T1", "tau_s1"], 1.0, jobs=1)
    b = sweep(FIG4, axes, ["tau1", "T1", "tau_s1"], 1.0, jobs=3)
    assert a.rows == b.rows
