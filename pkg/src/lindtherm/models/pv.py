"""Two-band photovoltaic cell as a quantum heat engine.

The cell is a set of fermionic conduction modes (energies E_c(k)) and
valence modes (energies E_v(l)).  Phonons at inverse temperature beta drive
intraband hopping; the radiation field, assigned the effective inverse
temperature beta1 of its frequency window, drives interband transitions.
The work coordinate couples to the conduction charge N_c, and the voltage
is the chemical-potential split eV = mu_c - mu_v of the two-band
grand-canonical ansatz.

Mode ordering is conduction first, then valence, matching the sign-string
order of operators.fermion_mode; mode q occupies bit q of the basis index.

Every jump operator conserves the total electron number, so the full
generator's kernel is one state per charge sector; the sector tools below
(sector_indices, sector_stationary_state, pv_conditioned_ansatz,
pv_floating_voltage) work within a fixed total charge, which is where the
grand-canonical ansatz can be compared against the true kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ..errors import InvalidDimension, ShapeError, ZeroOccupation
from ..gkls import (
    GeneratorFamily,
    GklsGenerator,
    LindbladTerm,
    apply_heisenberg,
    apply_schrodinger,
    embed_state,
    restrict_generator,
    stationary_state,
)
from ..operators import DensityMatrix, dag, fermion_mode
from ..tolerances import DEFAULT, Tolerances

__all__ = [
    "PvSpec",
    "effective_inverse_temperature",
    "build_pv_family",
    "pv_number_operator",
    "pv_grand_canonical",
    "pv_analytic_power",
    "pv_power_current",
    "pv_power_fast_ansatz",
    "pv_ansatz_derivative",
    "open_circuit_voltage",
    "sector_indices",
    "sector_stationary_state",
    "pv_conditioned_ansatz",
    "pv_floating_voltage",
]


def effective_inverse_temperature(n: float, omega: float) -> float:
    """Frequency-local inverse temperature of a photon mode.

    Inverts the Boltzmann ratio of the mode occupation:
    beta[omega] = ln(1 + 1/n) / omega.
    """
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if n <= 0:
        raise ZeroOccupation(
            f"occupation {n} is not positive; the effective temperature diverges"
        )
    return float(np.log1p(1.0 / n) / omega)


def _rate_matrix(m, shape, name) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.shape != shape:
        raise ShapeError(f"{name} must have shape {shape}, got {a.shape}")
    if np.any(a < 0):
        raise ValueError(f"{name} has negative entries")
    return a


@dataclass(frozen=True)
class PvSpec:
    """Cell geometry, bath temperatures, rates, chemical potentials, drive.

    Intraband rate matrices are read as rates[k, k'] for the hop k -> k';
    populate one direction per mode pair, the reverse hop is generated with
    the phonon Gibbs factor.  Interband rates inter_rates[k, l] set the
    recombination k -> l; radiative excitation is generated with the photon
    Gibbs factor at beta1.
    """

    conduction_energies: tuple
    valence_energies: tuple
    beta: float
    beta1: float
    inter_rates: np.ndarray
    intra_rates_c: np.ndarray = None
    intra_rates_v: np.ndarray = None
    mu_c: float = 0.0
    mu_v: float = 0.0
    amplitude: float = 0.0
    frequency: float = 1.0

    def __post_init__(self):
        ec = tuple(float(e) for e in self.conduction_energies)
        ev = tuple(float(e) for e in self.valence_energies)
        if not ec or not ev:
            raise InvalidDimension("each band needs at least one mode")
        if len(ec) + len(ev) > 12:
            raise InvalidDimension(
                f"{len(ec) + len(ev)} fermionic modes exceed the cap of 12"
            )
        if min(ec) <= max(ev):
            raise ValueError(
                f"band gap must be positive: min E_c = {min(ec)} "
                f"<= max E_v = {max(ev)}"
            )
        object.__setattr__(self, "conduction_energies", ec)
        object.__setattr__(self, "valence_energies", ev)
        nc, nv = len(ec), len(ev)
        gc = self.intra_rates_c if self.intra_rates_c is not None else np.zeros((nc, nc))
        gv = self.intra_rates_v if self.intra_rates_v is not None else np.zeros((nv, nv))
        object.__setattr__(self, "intra_rates_c", _rate_matrix(gc, (nc, nc), "intra_rates_c"))
        object.__setattr__(self, "intra_rates_v", _rate_matrix(gv, (nv, nv), "intra_rates_v"))
        object.__setattr__(self, "inter_rates", _rate_matrix(self.inter_rates, (nc, nv), "inter_rates"))
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    @property
    def n_conduction(self) -> int:
        return len(self.conduction_energies)

    @property
    def n_valence(self) -> int:
        return len(self.valence_energies)

    @property
    def n_modes(self) -> int:
        return self.n_conduction + self.n_valence

    @property
    def dim(self) -> int:
        return 1 << self.n_modes

    @property
    def gap(self) -> float:
        return min(self.conduction_energies) - max(self.valence_energies)

    @property
    def voltage(self) -> float:
        return self.mu_c - self.mu_v


def open_circuit_voltage(spec: PvSpec) -> float:
    """Zero-power voltage omega_g (1 - beta1/beta): the Carnot-factored gap."""
    return spec.gap * (1.0 - spec.beta1 / spec.beta)


def pv_number_operator(spec: PvSpec) -> np.ndarray:
    """Conduction charge N_c = sum_k c_k+ c_k (diagonal in occupation basis)."""
    diag = np.zeros(spec.dim)
    for b in range(spec.dim):
        diag[b] = bin(b & ((1 << spec.n_conduction) - 1)).count("1")
    return np.diag(diag).astype(complex)


def _mode_energies(spec: PvSpec) -> np.ndarray:
    return np.array(spec.conduction_energies + spec.valence_energies)


def build_pv_family(spec: PvSpec) -> GeneratorFamily:
    """Assemble the cell's driven generator family.

    H0 is the free two-band Hamiltonian; the drive coordinate shifts the
    conduction band rigidly, H(xi) = H0 + xi N_c.  Intraband hops couple to
    the phonon bath at beta, interband transitions to the photon bath at
    beta1; each channel comes with its Gibbs-ratio reverse.
    """
    n = spec.n_modes
    nc = spec.n_conduction
    modes = [fermion_mode(n, q) for q in range(n)]
    energies = _mode_energies(spec)
    h0 = np.zeros((spec.dim, spec.dim), dtype=complex)
    for q in range(n):
        h0 += energies[q] * (dag(modes[q]) @ modes[q])

    terms = []

    def intra(band_offset: int, rates: np.ndarray, band_e) -> None:
        nb = len(band_e)
        for k in range(nb):
            for kp in range(nb):
                if k == kp or rates[k, kp] == 0:
                    continue
                src = modes[band_offset + k]
                dst = modes[band_offset + kp]
                hop = dag(dst) @ src
                terms.append(LindbladTerm(hop, rates[k, kp], "phonon"))
                back = rates[k, kp] * np.exp(-spec.beta * (band_e[k] - band_e[kp]))
                terms.append(LindbladTerm(dag(hop), back, "phonon"))

    intra(0, spec.intra_rates_c, spec.conduction_energies)
    intra(nc, spec.intra_rates_v, spec.valence_energies)

    for k in range(nc):
        for l in range(spec.n_valence):
            rate = spec.inter_rates[k, l]
            if rate == 0:
                continue
            drop = dag(modes[nc + l]) @ modes[k]
            terms.append(LindbladTerm(drop, rate, "photon"))
            omega_kl = spec.conduction_energies[k] - spec.valence_energies[l]
            lift_rate = rate * np.exp(-spec.beta1 * omega_kl)
            terms.append(LindbladTerm(dag(drop), lift_rate, "photon"))

    n_c = pv_number_operator(spec)
    frozen = tuple(terms)

    def generator_of(xi: float) -> GklsGenerator:
        return GklsGenerator(h0 + xi * n_c, frozen)

    return GeneratorFamily(generator_of, n_c, spec.amplitude, spec.frequency)


def _single_particle_weights(spec: PvSpec, xi: float, voltage) -> np.ndarray:
    mu_c = spec.mu_c if voltage is None else spec.mu_v + voltage
    eps = np.empty(spec.n_modes)
    eps[: spec.n_conduction] = (
        np.array(spec.conduction_energies) + xi - mu_c
    )
    eps[spec.n_conduction:] = np.array(spec.valence_energies) - spec.mu_v
    return eps


def _gc_diagonal(spec: PvSpec, xi: float, voltage) -> np.ndarray:
    eps = _single_particle_weights(spec, xi, voltage)
    w = np.ones(1)
    # mode q lives in bit q, so higher modes enter the kron on the left
    for q in range(spec.n_modes):
        w = np.kron(np.array([1.0, np.exp(-spec.beta * eps[q])]), w)
    return w / w.sum()


def pv_grand_canonical(spec: PvSpec, xi: float = 0.0, voltage: float = None) -> DensityMatrix:
    """Two-chemical-potential product state of the cell.

    exp(-beta [sum_k (E_c(k)+xi-mu_c) n_ck + sum_l (E_v(l)-mu_v) n_vl]) / Z.
    ``voltage`` overrides mu_c as mu_v + voltage; otherwise spec.mu_c is used.
    """
    return DensityMatrix(np.diag(_gc_diagonal(spec, xi, voltage)).astype(complex))


def _fermi_occupations(spec: PvSpec, voltage) -> tuple:
    mu_c = spec.mu_c if voltage is None else spec.mu_v + voltage
    f_c = 1.0 / (np.exp(spec.beta * (np.array(spec.conduction_energies) - mu_c)) + 1.0)
    f_v = 1.0 / (np.exp(spec.beta * (np.array(spec.valence_energies) - spec.mu_v)) + 1.0)
    return f_c, f_v


def pv_analytic_power(spec: PvSpec, voltage: float = None) -> float:
    """Closed-form average power of the cell at the given voltage.

    P = g^2 beta <N_c>_0 G (e^{beta[(1 - beta1/beta) omega_g - eV]} - 1),
    G = sum_kl gamma_kl (1 - f_v(l)) f_c(k).

    Exact for degenerate gaps (all interband transition energies equal);
    for spread gaps the single-exponent form is an approximation and the
    numeric route is authoritative.
    """
    e_v = spec.voltage if voltage is None else float(voltage)
    f_c, f_v = _fermi_occupations(spec, voltage)
    n_c0 = float(np.sum(f_c))
    g_bar = float(np.sum(spec.inter_rates * np.outer(f_c, 1.0 - f_v)))
    exponent = spec.beta * ((1.0 - spec.beta1 / spec.beta) * spec.gap - e_v)
    g = spec.amplitude
    return g * g * spec.beta * n_c0 * g_bar * (np.exp(exponent) - 1.0)


def pv_power_current(spec: PvSpec, voltage: float = None) -> float:
    """Average power from the assembled generator's charge current.

    Evaluates g^2 beta <N_c>_0 tr(N_c L rho_gc(V)) with the full many-body
    generator: the macroscopic-population form of the fast power formula,
    in which the interband particle current through the grand-canonical
    state carries the voltage dependence.  Crosses zero at the open-circuit
    voltage for degenerate gaps.
    """
    family = build_pv_family(spec)
    gen0 = family.generator_of(0.0)
    n_c = family.drive_observable
    rho = pv_grand_canonical(spec, 0.0, voltage).matrix
    n_c0 = float(np.trace(n_c @ rho).real)
    current = float(np.trace(n_c @ apply_schrodinger(gen0, rho)).real)
    g = spec.amplitude
    return g * g * spec.beta * n_c0 * current


def pv_ansatz_derivative(spec: PvSpec, voltage: float = None) -> np.ndarray:
    """Exact xi-derivative of the grand-canonical ansatz at xi = 0.

    The exponent is a commuting family, so
    d(rho)/d(xi) = -beta (N_c - <N_c>) rho with no ordering corrections.
    """
    rho = pv_grand_canonical(spec, 0.0, voltage).matrix
    n_c = pv_number_operator(spec)
    mean = float(np.trace(n_c @ rho).real)
    return -spec.beta * (n_c @ rho - mean * rho)


def pv_power_fast_ansatz(spec: PvSpec, voltage: float = None) -> float:
    """Fast power formula fed with the grand-canonical ansatz derivative.

    -(g^2/2) tr(rho' L* N_c) with rho' from pv_ansatz_derivative.  Because
    the ansatz is a product state, this evaluates to
    (g^2 beta / 2) Cov(N_c, L* N_c), a single-particle covariance that is
    negative at every voltage; the extensive, population-proportional part
    of the power (the part that changes sign at the open-circuit voltage)
    is what pv_power_current isolates.
    """
    family = build_pv_family(spec)
    gen0 = family.generator_of(0.0)
    lm = apply_heisenberg(gen0, family.drive_observable)
    prime = pv_ansatz_derivative(spec, voltage)
    g = spec.amplitude
    return -0.5 * g * g * float(np.trace(prime @ lm).real)


# --- charge sectors ----------------------------------------------------------

def sector_indices(spec: PvSpec, n_electrons: int) -> np.ndarray:
    """Basis indices of the fixed total-charge sector."""
    if not (0 <= n_electrons <= spec.n_modes):
        raise InvalidDimension(
            f"{n_electrons} electrons outside 0..{spec.n_modes}"
        )
    return np.array(
        [b for b in range(spec.dim) if bin(b).count("1") == n_electrons],
        dtype=int,
    )


def sector_stationary_state(
    spec: PvSpec,
    n_electrons: int,
    tol: Tolerances = DEFAULT,
) -> DensityMatrix:
    """Unique stationary state of the generator within one charge sector,
    embedded back into the full space."""
    family = build_pv_family(spec)
    gen0 = family.generator_of(0.0)
    idx = sector_indices(spec, n_electrons)
    sub = restrict_generator(gen0, idx)
    rho_sub = stationary_state(sub, tol)
    return DensityMatrix(embed_state(rho_sub.matrix, idx, spec.dim))


def pv_conditioned_ansatz(
    spec: PvSpec,
    n_electrons: int,
    xi: float = 0.0,
    voltage: float = None,
) -> DensityMatrix:
    """Grand-canonical ansatz conditioned on a total-charge sector."""
    w = _gc_diagonal(spec, xi, voltage)
    idx = sector_indices(spec, n_electrons)
    cond = np.zeros_like(w)
    cond[idx] = w[idx]
    total = cond.sum()
    if total <= 0:
        raise ZeroOccupation(f"sector {n_electrons} carries no ansatz weight")
    return DensityMatrix(np.diag(cond / total).astype(complex))


def pv_floating_voltage(
    spec: PvSpec,
    n_electrons: int,
    tol: Tolerances = DEFAULT,
) -> float:
    """Voltage at which the conditioned ansatz matches the sector kernel.

    Solves <N_c>_ansatz(V) = <N_c>_stationary within the sector by
    bracketed root finding; the result is the cell's self-consistent
    output voltage for that total charge.
    """
    n_c = pv_number_operator(spec)
    target = float(
        np.trace(n_c @ sector_stationary_state(spec, n_electrons, tol).matrix).real
    )

    def mismatch(v: float) -> float:
        cond = pv_conditioned_ansatz(spec, n_electrons, 0.0, v)
        return float(np.trace(n_c @ cond.matrix).real) - target

    # the conditioned <N_c> is monotone in V; widen until the root is bracketed
    lo, hi = -abs(spec.gap) * 4.0, abs(spec.gap) * 4.0
    for _ in range(60):
        if mismatch(lo) * mismatch(hi) <= 0:
            break
        lo *= 2.0
        hi *= 2.0
    else:
        raise ZeroOccupation("could not bracket the floating voltage")
    return float(brentq(mismatch, lo, hi, xtol=1e-12, rtol=1e-14))
