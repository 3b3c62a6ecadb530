"""Figure-reproduction presets.

Each preset fixes the network and its sweep grids (w1 in 0..10 step 0.05,
V2 in 1.05..15 step 0.05, N in 2..30).  Write one out with
``hartnet --preset NAME --dump-config`` to change any of them.
"""
from __future__ import annotations

from .config import AxisSpec, ListAxis, RangeAxis, RunSpec, TableSpec
from .core import BarrierSpec, BranchSpec, NetworkSpec
from .sweep import Observable

W1_GRID = RangeAxis(0.0, 10.0, 0.05)
V2_INSET_GRID = RangeAxis(1.05, 15.0, 0.05)
N_GRID = RangeAxis(2.0, 30.0, 1.0)

FIG2_V1 = (5.0, 4.0, 3.0, 2.0, 1.05)
FIG3_V2 = (2.5, 3.5, 5.0, 10.0, 12.5)
FIG5_V = (5.0, 1.25)


def _obs(*items: str) -> tuple[Observable, ...]:
    return tuple(Observable.parse(i) for i in items)


def _net(*barriers) -> NetworkSpec:
    return NetworkSpec(tuple(BranchSpec(b) for b in barriers))


def fig2() -> RunSpec:
    """Y-junction, barrier only in branch 1: tau1 and tau2 against w1."""
    net = _net(BarrierSpec(5.0, 1.0, 3.0), None)
    axes = (AxisSpec("V1", ListAxis(FIG2_V1)), AxisSpec("w1", W1_GRID))
    return RunSpec(1.0, net, (TableSpec("fig2a", axes, _obs("tau1")),
                              TableSpec("fig2b", axes, _obs("tau2"))), preset="fig2")


def fig3() -> RunSpec:
    """Barriers in both arms: tau1 against w1 for several V2, and tau_s1 against V2."""
    net = _net(BarrierSpec(5.0, 1.0, 3.0), BarrierSpec(5.0, 1.0, 3.0))
    main = TableSpec("fig3_main", (AxisSpec("V2", ListAxis(FIG3_V2)), AxisSpec("w1", W1_GRID)),
                     _obs("tau1"))
    inset = TableSpec("fig3_inset", (AxisSpec("V2", V2_INSET_GRID),), _obs("tau_s1"))
    return RunSpec(1.0, net, (main, inset), preset="fig3")


def fig4() -> RunSpec:
    """Thin second barrier: negative phase time in branch 1."""
    net = _net(BarrierSpec(15.0, 1.0, 2.5), BarrierSpec(5.0, 0.5, 2.5))
    axes = (AxisSpec("w1", W1_GRID),)
    return RunSpec(1.0, net, (TableSpec("fig4_main", axes, _obs("tau1", "T1")),
                              TableSpec("fig4_inset", axes, _obs("tau2", "T2"))), preset="fig4")


def fig5() -> RunSpec:
    """N identical branches at fixed w = 100."""
    net = _net(BarrierSpec(5.0, 100.0, 1.0))
    axes = (AxisSpec("V", ListAxis(FIG5_V)), AxisSpec("N", N_GRID))
    return RunSpec(1.0, net, (TableSpec("fig5", axes, _obs("tau_s=tau1")),), preset="fig5")


PRESETS = {"fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5}


def preset_spec(name: str) -> RunSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
