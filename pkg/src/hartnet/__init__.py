"""Stationary scattering and phase times on star networks of quantum wires."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    BarrierSpec,
    BranchSpec,
    ConfigError,
    DegenerateEnergyError,
    DomainError,
    HartnetError,
    NetworkSpec,
    NumericError,
    UndefinedPhaseError,
    kappa,
    normalize_report,
    wavenumber,
)
from .oracle import barrier_amplitudes, compose_star, junction_smatrix  # noqa: E402
from .phasetime import (  # noqa: E402
    ScanPolicy,
    SaturationResult,
    hartman_scan,
    phase_time,
    transmission_probability,
    under_barrier_density,
)
from .solver import (  # noqa: E402
    assemble_system,
    evaluate_wavefunction,
    flux_residual,
    solve_scattering,
    solve_scattering_derivative,
)
from .sweep import Observable, SweepTable, sweep  # noqa: E402
