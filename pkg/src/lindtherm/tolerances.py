"""Central numerical tolerances.

All thresholds live in one frozen dataclass so tests and callers can tighten
or relax them coherently instead of scattering magic numbers.  The defaults
are calibrated for double precision and dimensions up to a few thousand.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

__all__ = ["Tolerances", "DEFAULT"]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the library.

    Attributes
    ----------
    hermiticity:
        Max allowed ||X - X^dag||_F for matrices required to be hermitian
        (states, observables).
    hamiltonian_hermiticity:
        Tighter bound applied to Hamiltonians at construction.
    trace:
        Max allowed |tr(rho) - 1|.
    positivity:
        Magnitude of the most negative eigenvalue tolerated in a state.
    stationarity:
        Max allowed ||L(rho)||_F / scale for a state accepted as stationary.
    kernel_cut:
        Relative eigenvalue magnitude below which a superoperator eigenvalue
        counts as zero when detecting the stationary subspace.
    identity_residual:
        Bound on the first-order stationarity identity residual.
    log_floor:
        State eigenvalues below this are treated as outside the support.
    resolvent_condition:
        Condition-number ceiling before the resolvent solve is declared
        singular.
    detailed_balance:
        Bound on the three detailed-balance residuals for a "passed" report.
    eigenoperator:
        Bound on ||[H, A] - omega A||_F / ||A||_F in eigenoperator checks.
    """

    hermiticity: float = 1e-10
    hamiltonian_hermiticity: float = 1e-12
    trace: float = 1e-10
    positivity: float = 1e-9
    stationarity: float = 1e-8
    kernel_cut: float = 1e-9
    identity_residual: float = 1e-4
    log_floor: float = 1e-14
    resolvent_condition: float = 1e12
    detailed_balance: float = 1e-8
    eigenoperator: float = 1e-8

    def with_(self, **kwargs) -> "Tolerances":
        """Return a copy with the given fields replaced."""
        return replace(self, **kwargs)


DEFAULT = Tolerances()
