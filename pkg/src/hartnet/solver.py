"""Direct boundary-condition solver for star networks.

Unknown vector layout (stable, documented):

    x = [R, <branch 1>, <branch 2>, ...]

with ``<branch>`` either ``A, B, C, D', t`` for a barrier branch or the single
``t`` for a barrier-free branch.  Inside a barrier the wavefunction is written
in the scaled basis

    psi_II(x) = C exp(-kappa (x - lb)) + D' exp(kappa (x - lb - w)),

so every matrix entry is bounded by max(1, k, |kappa|) regardless of the
width.  At kappa == 0 the exact linear solution ``C + D' (x - lb)`` is used.

The base lead is parametrised by the distance ``x >= 0`` from the junction,
psi_0(x) = exp(-i k x) + R exp(i k x).  Current conservation at J equates
the inward base slope to the sum of outward branch slopes.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np
import scipy.linalg

from .core import (
    DegenerateEnergyError,
    NetworkSpec,
    NumericError,
    check_energy,
    kappa as _kappa,
    wavenumber,
)

# min |V - E| for which the analytic energy derivative is attempted
DERIVATIVE_GAP = 1e-6

Location = Union[Literal["base"], int]


def branch_offsets(network: NetworkSpec) -> list[int]:
    """Index into the unknown vector of each branch's first unknown."""
    offsets, pos = [], 1
    for br in network.branches:
        offsets.append(pos)
        pos += 1 if br.is_free else 5
    return offsets


def system_size(network: NetworkSpec) -> int:
    return 1 + sum(1 if br.is_free else 5 for br in network.branches)


def transmission_indices(network: NetworkSpec) -> list[int]:
    return [off if br.is_free else off + 4
            for off, br in zip(branch_offsets(network), network.branches)]


def _build(network: NetworkSpec, E: float, with_derivative: bool):
    E = check_energy(E)
    k = wavenumber(E)
    dk = 0.5 / k
    n = system_size(network)
    M = np.zeros((n, n), dtype=complex)
    b = np.zeros(n, dtype=complex)
    dM = np.zeros((n, n), dtype=complex) if with_derivative else None
    db = np.zeros(n, dtype=complex) if with_derivative else None
    ik, dik = 1j * k, 1j * dk

    # row 0: current conservation, ik(1 - R) = sum_n psi_n'(0)
    M[0, 0] = ik
    b[0] = ik
    if with_derivative:
        dM[0, 0] = dik
        db[0] = dik

    row = 1
    for off, br in zip(branch_offsets(network), network.branches):
        # continuity at J: psi_n(0) - R = 1
        M[row, 0] = -1.0
        b[row] = 1.0
        if br.is_free:
            M[0, off] = ik
            M[row, off] = 1.0
            if with_derivative:
                dM[0, off] = dik
            row += 1
            continue

        bar = br.barrier
        A, B, C, D, t = range(off, off + 5)
        M[0, A], M[0, B] = ik, -ik
        M[row, A], M[row, B] = 1.0, 1.0
        if with_derivative:
            dM[0, A], dM[0, B] = dik, -dik

        kap = _kappa(bar.V, E)
        p = cmath.exp(1j * k * bar.lb)
        m = 1.0 / p
        f, d, g, h = row + 1, row + 2, row + 3, row + 4  # front, front', exit, exit'

        M[f, A], M[f, B] = p, m
        M[d, A], M[d, B] = ik * p, -ik * m
        M[h, t] = -ik
        M[g, t] = -1.0
        if kap == 0:
            M[f, C] = -1.0
            M[d, D] = -1.0
            M[g, C], M[g, D] = 1.0, bar.w
            M[h, D] = 1.0
        else:
            e = cmath.exp(-kap * bar.w)
            M[f, C], M[f, D] = -1.0, -e
            M[d, C], M[d, D] = kap, -kap * e
            M[g, C], M[g, D] = e, 1.0
            M[h, C], M[h, D] = -kap * e, kap

        if with_derivative:
            if abs(bar.V - E) <= DERIVATIVE_GAP:
                raise DegenerateEnergyError(
                    "E is within %g of a barrier height; use finite differences"
                    % DERIVATIVE_GAP, V=bar.V, E=E)
            dkap = -0.5 / kap
            de = -bar.w * dkap * e
            dp = 1j * bar.lb * dk * p
            dm = -1j * bar.lb * dk * m
            dM[f, A], dM[f, B], dM[f, D] = dp, dm, -de
            dM[d, A] = dik * p + ik * dp
            dM[d, B] = -(dik * m + ik * dm)
            dM[d, C] = dkap
            dM[d, D] = -(dkap * e + kap * de)
            dM[g, C] = de
            dM[h, C] = -(dkap * e + kap * de)
            dM[h, D] = dkap
            dM[h, t] = -dik
        row += 5
    return M, b, dM, db


def assemble_system(network: NetworkSpec, E: float) -> tuple[np.ndarray, np.ndarray]:
    """Boundary-condition matrix and right-hand side at energy ``E``."""
    M, b, _, _ = _build(network, E, with_derivative=False)
    return M, b


def assemble_derivative(network: NetworkSpec, E: float) -> tuple[np.ndarray, np.ndarray]:
    """Entrywise energy derivatives (dM/dE, db/dE) of :func:`assemble_system`."""
    _, _, dM, db = _build(network, E, with_derivative=True)
    return dM, db


def _factor(M: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M)
    pivots = np.abs(np.diag(lu))
    if not np.all(np.isfinite(lu)) or pivots.min() == 0.0:
        raise NumericError("boundary-condition matrix is singular",
                           min_pivot=float(pivots.min()),
                           condition=float(np.linalg.cond(M)))
    return lu, piv


@dataclass(frozen=True)
class ScatteringSolution:
    """Solved amplitudes at one energy.

    For barrier-free branches ``A == t`` and ``B, C, Dp`` are zero.
    """

    network: NetworkSpec
    E: float
    R: complex
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    Dp: np.ndarray
    t: np.ndarray
    x: np.ndarray
    residual: float

    @property
    def k(self) -> float:
        return wavenumber(self.E)


@dataclass(frozen=True)
class SolutionDerivative:
    dR_dE: complex
    dt_dE: np.ndarray
    dx_dE: np.ndarray


def _unpack(network, E, x, residual) -> ScatteringSolution:
    N = network.N
    A, B, C, Dp, t = (np.zeros(N, dtype=complex) for _ in range(5))
    for n, (off, br) in enumerate(zip(branch_offsets(network), network.branches)):
        if br.is_free:
            A[n] = t[n] = x[off]
        else:
            A[n], B[n], C[n], Dp[n], t[n] = x[off:off + 5]
    return ScatteringSolution(network, E, complex(x[0]), A, B, C, Dp, t, x, residual)


def _solve(network: NetworkSpec, E: float, with_derivative: bool):
    M, b, dM, db = _build(network, E, with_derivative)
    lu_piv = _factor(M)
    x = scipy.linalg.lu_solve(lu_piv, b)
    residual = float(np.linalg.norm(M @ x - b) / np.linalg.norm(b))
    sol = _unpack(network, E, x, residual)
    if not with_derivative:
        return sol, None
    dx = scipy.linalg.lu_solve(lu_piv, db - dM @ x)
    idx = transmission_indices(network)
    return sol, SolutionDerivative(complex(dx[0]), dx[idx], dx)


def solve_scattering(network: NetworkSpec, E: float) -> ScatteringSolution:
    """Solve the stationary scattering problem for unit incidence in the base lead."""
    return _solve(network, E, with_derivative=False)[0]


def solve_scattering_derivative(network: NetworkSpec, E: float) -> SolutionDerivative:
    """Analytic dR/dE and dt_n/dE, reusing the LU factors of the system.

    Raises DegenerateEnergyError when E is within ``DERIVATIVE_GAP`` of a
    barrier height.
    """
    return _solve(network, E, with_derivative=True)[1]


def solve_with_derivative(network: NetworkSpec, E: float):
    """Both the solution and its energy derivative from a single factorisation."""
    return _solve(network, E, with_derivative=True)


def _region(barrier, x: float) -> str:
    if barrier is None or x < barrier.lb:
        return "I"
    if x <= barrier.lb + barrier.w:
        return "II"
    return "III"


def evaluate_wavefunction(network: NetworkSpec, sol: ScatteringSolution,
                          location: Location, x: float,
                          derivative: bool = False,
                          region: Optional[str] = None) -> complex:
    """psi (or d psi/dx) at distance ``x >= 0`` from J along a wire.

    ``location`` is ``"base"`` or a 0-based branch index.  The region is
    chosen from ``x`` unless forced with ``region`` ("I", "II", "III"),
    which is how interface matching is checked from both sides.
    """
    k = sol.k
    if location == "base":
        val = (-1j * k) * cmath.exp(-1j * k * x) + sol.R * (1j * k) * cmath.exp(1j * k * x) \
            if derivative else cmath.exp(-1j * k * x) + sol.R * cmath.exp(1j * k * x)
        return complex(val)

    n = int(location)
    bar = network.branches[n].barrier
    if bar is None:
        val = sol.t[n] * cmath.exp(1j * k * x)
        return complex(1j * k * val if derivative else val)

    reg = region or _region(bar, x)
    if reg == "I":
        a = sol.A[n] * cmath.exp(1j * k * x)
        b = sol.B[n] * cmath.exp(-1j * k * x)
        return complex(1j * k * (a - b) if derivative else a + b)
    if reg == "III":
        val = sol.t[n] * cmath.exp(1j * k * (x - bar.lb - bar.w))
        return complex(1j * k * val if derivative else val)
    if reg != "II":
        raise ValueError(f"unknown region {reg!r}")
    kap = _kappa(bar.V, sol.E)
    s = x - bar.lb
    if kap == 0:
        return complex(sol.Dp[n] if derivative else sol.C[n] + sol.Dp[n] * s)
    c = sol.C[n] * cmath.exp(-kap * s)
    d = sol.Dp[n] * cmath.exp(kap * (s - bar.w))
    return complex(kap * (d - c) if derivative else c + d)


def boundary_residuals(network: NetworkSpec, sol: ScatteringSolution) -> np.ndarray:
    """All matching-condition residuals, relative to the largest coefficient.

    Evaluated from the wavefunction itself rather than from the matrix, so
    it is an independent check of the assembly.
    """
    psi = lambda loc, x, d=False, reg=None: evaluate_wavefunction(network, sol, loc, x, d, reg)
    res = []
    base = psi("base", 0.0)
    for n in range(network.N):
        res.append(base - psi(n, 0.0, reg="I"))
    res.append(-psi("base", 0.0, True) - sum(psi(n, 0.0, True, "I") for n in range(network.N)))
    for n, br in enumerate(network.branches):
        bar = br.barrier
        if bar is None:
            continue
        lo, hi = bar.lb, bar.lb + bar.w
        res.append(psi(n, lo, reg="I") - psi(n, lo, reg="II"))
        res.append(psi(n, lo, True, "I") - psi(n, lo, True, "II"))
        res.append(psi(n, hi, reg="II") - psi(n, hi, reg="III"))
        res.append(psi(n, hi, True, "II") - psi(n, hi, True, "III"))
    scale = max(1.0, float(np.max(np.abs(sol.x))))
    return np.abs(np.array(res)) / scale


def flux_residual(sol: ScatteringSolution) -> float:
    """| |R|^2 + sum |t_n|^2 - 1 |."""
    return abs(abs(sol.R) ** 2 + float(np.sum(np.abs(sol.t) ** 2)) - 1.0)
