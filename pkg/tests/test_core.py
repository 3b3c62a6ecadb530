import math

import pytest
from hypothesis import given, strategies as st

from hartnet import BarrierSpec, DomainError, NetworkSpec, kappa, normalize_report, wavenumber
from hartnet.core import UNITS, BranchSpec, Units


def test_wavenumber():
    assert wavenumber(1) == 1.0
    assert wavenumber(4) == 2.0
    with pytest.raises(DomainError):
        wavenumber(0)
    with pytest.raises(DomainError):
        wavenumber(-1.0)


def test_kappa_branches():
    assert kappa(5, 1) == 2
    assert kappa(1, 1) == 0
    assert kappa(0, 1) == 1j


@given(st.floats(-50, 50), st.floats(1e-3, 50))
def test_kappa_squares_to_v_minus_e(V, E):
    k = kappa(V, E)
    assert k.real >= 0
    assert abs(k * k - (V - E)) <= 1e-12 * max(1.0, abs(V - E))


@given(st.floats(1e-6, 1e6))
def test_wavenumber_squares_to_energy(E):
    assert math.isclose(wavenumber(E) ** 2, E, rel_tol=4e-16)


@pytest.mark.parametrize("raw, E, expected", [
    ((5, 1, 0.5), 1, (5, 1, 0.5)),
    ((5, 1, 0.5), 4, (1.25, 2, 2.0)),
    ((0, 0, 0), 2, (0, 0, 0)),
])
def test_normalize_report(raw, E, expected):
    rep = normalize_report(*raw, E=E)
    assert (rep.V, rep.w, rep.tau) == expected


def test_units_fixed():
    assert UNITS.hbar == 1 and UNITS.two_m == 1
    assert UNITS.velocity(1.5) == 3.0
    with pytest.raises(DomainError):
        Units(hbar=2.0)


def test_barrier_validation():
    with pytest.raises(DomainError):
        BarrierSpec(5, -1, 0)
    with pytest.raises(DomainError):
        BarrierSpec(5, 1, -0.1)
    BarrierSpec(-3.0, 0.0, 0.0)  # wells are allowed


def test_network():
    with pytest.raises(DomainError):
        NetworkSpec(())
    net = NetworkSpec.from_barriers([BarrierSpec(5, 1, 3), None])
    assert net.N == 2 and net.branches[1].is_free
    assert net.with_barrier(0, w=7).branches[0].barrier == BarrierSpec(5, 7, 3)
    with pytest.raises(DomainError):
        net.with_barrier(1, w=1)
    assert NetworkSpec.identical(3, None).branches == (BranchSpec(),) * 3
