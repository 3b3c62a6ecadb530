"""Closed-form single-barrier amplitudes and star-junction resummation.

Independent of :mod:`hartnet.solver`: no linear system is formed.  Each
branch is reduced to the reflection it presents at J, and the junction
conditions (continuity plus current conservation) are then solved by hand.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .core import BranchSpec, DomainError, NetworkSpec, NumericError, check_energy, wavenumber


@dataclass(frozen=True)
class BarrierAmplitudes:
    t_bar: complex  # referenced at the barrier exit
    r_bar: complex  # referenced at the barrier front


def barrier_amplitudes(E: float, V: float, w: float) -> BarrierAmplitudes:
    k = wavenumber(E)
    if w < 0:
        raise DomainError("barrier width must be >= 0")
    kap = cmath.sqrt(complex(V - E))
    if kap == 0:
        t = 1.0 / (1.0 - 0.5j * k * w)
        return BarrierAmplitudes(t, -0.5j * k * w * t)
    if (kap * w).real > 20.0:
        # opaque: divide exp(kappa w) out of cosh and sinh before it overflows
        h2 = cmath.exp(-2.0 * kap * w)
        alpha = 0.5 * (kap / k - k / kap)
        den = 0.5 * (1.0 + h2) + 0.5j * alpha * (1.0 - h2)
        t = cmath.exp(-kap * w) / den
        r = -0.25j * (kap / k + k / kap) * (1.0 - h2) / den
        return BarrierAmplitudes(complex(t), complex(r))
    ch, sh = cmath.cosh(kap * w), cmath.sinh(kap * w)
    t = 1.0 / (ch + 0.5j * (kap / k - k / kap) * sh)
    r = -0.5j * (kap / k + k / kap) * sh * t
    return BarrierAmplitudes(complex(t), complex(r))


def branch_load_reflection(E: float, branch: BranchSpec) -> complex:
    """Reflection amplitude a branch presents at the junction."""
    if branch.barrier is None:
        return 0j
    bar = branch.barrier
    amp = barrier_amplitudes(E, bar.V, bar.w)
    return amp.r_bar * cmath.exp(2j * wavenumber(E) * bar.lb)


def compose_star(network: NetworkSpec, E: float) -> tuple[complex, list[complex]]:
    """(R, [t_n]) for unit incidence in the base lead."""
    E = check_energy(E)
    k = wavenumber(E)
    rhos = [branch_load_reflection(E, br) for br in network.branches]
    for n, rho in enumerate(rhos):
        if abs(1.0 + rho) < 1e-13:
            raise NumericError(f"branch {n + 1} reflects with rho = -1; "
                               "junction resummation is singular", branch=n)
    u = 2.0 / (1.0 + sum((1.0 - rho) / (1.0 + rho) for rho in rhos))
    ts = []
    for br, rho in zip(network.branches, rhos):
        a = u / (1.0 + rho)
        if br.barrier is None:
            ts.append(a)
        else:
            bar = br.barrier
            ts.append(a * cmath.exp(1j * k * bar.lb) * barrier_amplitudes(E, bar.V, bar.w).t_bar)
    return u - 1.0, ts


def junction_smatrix(leads: int) -> np.ndarray:
    """S = (2/leads) J - I for ``leads`` identical wires meeting at a vertex."""
    if int(leads) != leads or leads < 2:
        raise DomainError("a junction needs at least two leads")
    return np.full((leads, leads), 2.0 / leads) - np.eye(leads)


def barrier_phase_time(E: float, V: float, w: float) -> float:
    """Closed-form d arg(t_bar)/dE for an isolated barrier with V > E.

    arg t_bar = -atan(q tanh(kappa w)), q = (kappa^2 - k^2) / (2 k kappa).
    """
    k = wavenumber(E)
    if V <= E:
        raise DomainError("closed-form phase time is for V > E only")
    kap = (V - E) ** 0.5
    q = (kap * kap - k * k) / (2 * k * kap)
    dk, dkap = 0.5 / k, -0.5 / kap
    # dq/dE from q = kappa/(2k) - k/(2 kappa)
    dq = dkap / (2 * k) - kap * dk / (2 * k * k) - dk / (2 * kap) + k * dkap / (2 * kap * kap)
    th = np.tanh(kap * w)
    sech2 = 1.0 - th * th
    dth = sech2 * w * dkap
    z = q * th
    return float(-(dq * th + q * dth) / (1.0 + z * z))
