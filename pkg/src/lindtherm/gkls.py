"""GKLS generator assembly, stationary states, propagation, detailed balance.

The generator acts on states as

    L(rho) = -i[H, rho] + (1/2) sum_j ( [V_j rho, V_j+] + [V_j, rho V_j+] )

and on observables as its Hilbert-Schmidt adjoint

    L*(X) = i[H, X] + (1/2) sum_j ( V_j+ [X, V_j] + [V_j+, X] V_j ).

Rates are carried separately on each term and absorbed as V <- sqrt(rate) V
at assembly time.  Superoperators are dense matrices on column-stacked
operators; see operators.py for the vectorization convention.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import (
    NonUniqueStationary,
    NotAnEigenoperator,
    NotAState,
    NotStationary,
    NumericalDrift,
    ShapeError,
    SingularWeight,
    StepTooLarge,
)
from .operators import (
    DensityMatrix,
    as_operator,
    dag,
    hermiticity_defect,
    hermitize,
    left_mul,
    right_mul,
    sandwich_mul,
    unvec,
    vec,
)
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "LindbladTerm",
    "GklsGenerator",
    "GeneratorFamily",
    "Trajectory",
    "DetailedBalanceReport",
    "hamiltonian_super",
    "dissipator_super",
    "heisenberg_dissipator_super",
    "schrodinger_super",
    "heisenberg_super",
    "apply_schrodinger",
    "apply_heisenberg",
    "gibbs_state",
    "thermal_pair",
    "davies_terms",
    "thermal_family",
    "modulated_family",
    "stationary_state",
    "restrict_generator",
    "embed_state",
    "evolve",
    "evolve_driven",
    "weighted_inner_product",
    "detailed_balance_report",
]


@dataclass(frozen=True)
class LindbladTerm:
    """One dissipative channel: jump operator, nonnegative rate, bath label."""

    jump: np.ndarray
    rate: float
    bath_label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "jump", as_operator(self.jump, "jump operator"))
        object.__setattr__(self, "rate", float(self.rate))
        if self.rate < 0:
            raise ValueError(f"rate must be nonnegative, got {self.rate}")

    @property
    def scaled_jump(self) -> np.ndarray:
        return np.sqrt(self.rate) * self.jump


@dataclass(frozen=True)
class GklsGenerator:
    """Hamiltonian plus a tuple of LindbladTerm channels."""

    hamiltonian: np.ndarray
    terms: tuple

    def __post_init__(self):
        h = as_operator(self.hamiltonian, "hamiltonian")
        defect = hermiticity_defect(h)
        if defect > DEFAULT.hamiltonian_hermiticity:
            raise ShapeError(
                f"hamiltonian hermiticity defect {defect:.3e} exceeds "
                f"{DEFAULT.hamiltonian_hermiticity:.1e}"
            )
        object.__setattr__(self, "hamiltonian", h)
        terms = tuple(self.terms)
        for k, term in enumerate(terms):
            if not isinstance(term, LindbladTerm):
                raise TypeError(f"terms[{k}] is not a LindbladTerm")
            if term.jump.shape != h.shape:
                raise ShapeError(
                    f"terms[{k}] jump shape {term.jump.shape} does not match "
                    f"hamiltonian shape {h.shape}"
                )
        object.__setattr__(self, "terms", terms)

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]

    def bath_labels(self) -> tuple:
        seen = []
        for term in self.terms:
            if term.bath_label not in seen:
                seen.append(term.bath_label)
        return tuple(seen)


@dataclass(frozen=True)
class GeneratorFamily:
    """A xi-parametrized generator with a sinusoidal drive xi(t) = g sin(Omega t).

    ``generator_of`` maps the drive coordinate xi to a GklsGenerator.  The
    drive observable M is the operator conjugate to xi; the perturbative
    power formulas assume [H0, M] = 0, which is checked with a warning
    rather than enforced.
    """

    generator_of: object
    drive_observable: np.ndarray
    amplitude: float
    frequency: float

    def __post_init__(self):
        m = as_operator(self.drive_observable, "drive observable")
        defect = hermiticity_defect(m)
        if defect > DEFAULT.hamiltonian_hermiticity:
            raise ShapeError(
                f"drive observable hermiticity defect {defect:.3e} exceeds "
                f"{DEFAULT.hamiltonian_hermiticity:.1e}"
            )
        object.__setattr__(self, "drive_observable", m)
        object.__setattr__(self, "amplitude", float(self.amplitude))
        object.__setattr__(self, "frequency", float(self.frequency))
        if self.frequency <= 0:
            raise ValueError(f"frequency must be positive, got {self.frequency}")
        h0 = self.generator_of(0.0).hamiltonian
        comm = h0 @ m - m @ h0
        if np.linalg.norm(comm) > 1e-10:
            warnings.warn(
                "drive observable does not commute with the static hamiltonian "
                f"(||[H0, M]|| = {np.linalg.norm(comm):.3e}); the perturbative "
                "power formulas are derived under [H0, M] = 0",
                stacklevel=2,
            )

    def xi(self, t: float) -> float:
        """Drive coordinate at time t."""
        return self.amplitude * np.sin(self.frequency * t)

    def hamiltonian_at(self, xi: float) -> np.ndarray:
        return self.generator_of(xi).hamiltonian


@dataclass(frozen=True)
class Trajectory:
    """Time grid, states, and (for driven runs) the frozen drive samples."""

    times: np.ndarray
    states: tuple
    xi_midpoints: np.ndarray = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or t.size < 1:
            raise ShapeError("times must be a nonempty 1-d grid")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ShapeError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        states = tuple(self.states)
        if len(states) != t.size:
            raise ShapeError(
                f"{len(states)} states for {t.size} grid points"
            )
        for s in states:
            if not isinstance(s, DensityMatrix):
                raise TypeError("states must be DensityMatrix instances")
        object.__setattr__(self, "states", states)
        if self.xi_midpoints is not None:
            x = np.asarray(self.xi_midpoints, dtype=float)
            if x.shape != (t.size - 1,):
                raise ShapeError(
                    f"xi_midpoints must have length {t.size - 1}, got {x.shape}"
                )
            object.__setattr__(self, "xi_midpoints", x)

    def __len__(self) -> int:
        return len(self.states)


# --- superoperator assembly -------------------------------------------------

def hamiltonian_super(h: np.ndarray) -> np.ndarray:
    """Matrix of rho -> -i[H, rho]."""
    h = as_operator(h, "hamiltonian")
    return -1j * (left_mul(h) - right_mul(h))


def dissipator_super(terms, dim: int) -> np.ndarray:
    """Schrodinger-picture dissipator matrix for the given terms."""
    s = np.zeros((dim * dim, dim * dim), dtype=complex)
    for term in terms:
        v = term.scaled_jump
        if v.shape != (dim, dim):
            raise ShapeError(f"jump shape {v.shape} does not match dim {dim}")
        vdv = dag(v) @ v
        s += sandwich_mul(v, dag(v)) - 0.5 * (left_mul(vdv) + right_mul(vdv))
    return s


def heisenberg_dissipator_super(terms, dim: int) -> np.ndarray:
    """Heisenberg-picture dissipator matrix (adjoint of dissipator_super)."""
    s = np.zeros((dim * dim, dim * dim), dtype=complex)
    for term in terms:
        v = term.scaled_jump
        if v.shape != (dim, dim):
            raise ShapeError(f"jump shape {v.shape} does not match dim {dim}")
        vdv = dag(v) @ v
        s += sandwich_mul(dag(v), v) - 0.5 * (left_mul(vdv) + right_mul(vdv))
    return s


def schrodinger_super(gen: GklsGenerator) -> np.ndarray:
    """Full generator matrix acting on vectorized states."""
    return hamiltonian_super(gen.hamiltonian) + dissipator_super(gen.terms, gen.dim)


def heisenberg_super(gen: GklsGenerator) -> np.ndarray:
    """Full adjoint generator matrix acting on vectorized observables."""
    return -hamiltonian_super(gen.hamiltonian) + heisenberg_dissipator_super(
        gen.terms, gen.dim
    )


def apply_schrodinger(gen: GklsGenerator, x: np.ndarray) -> np.ndarray:
    """L(X) by direct matrix products (no superoperator assembly)."""
    x = as_operator(x)
    h = gen.hamiltonian
    out = -1j * (h @ x - x @ h)
    for term in gen.terms:
        v = term.scaled_jump
        vd = dag(v)
        vdv = vd @ v
        out += v @ x @ vd - 0.5 * (vdv @ x + x @ vdv)
    return out


def apply_heisenberg(gen: GklsGenerator, x: np.ndarray) -> np.ndarray:
    """L*(X) by direct matrix products."""
    x = as_operator(x)
    h = gen.hamiltonian
    out = 1j * (h @ x - x @ h)
    for term in gen.terms:
        v = term.scaled_jump
        vd = dag(v)
        vdv = vd @ v
        out += vd @ x @ v - 0.5 * (vdv @ x + x @ vdv)
    return out


# --- thermal building blocks -------------------------------------------------

def gibbs_state(hamiltonian: np.ndarray, beta: float) -> DensityMatrix:
    """Gibbs state exp(-beta H)/Z; the ground energy is subtracted first."""
    h = as_operator(hamiltonian, "hamiltonian")
    vals, vecs = np.linalg.eigh(hermitize(h))
    w = np.exp(-beta * (vals - vals.min()))
    w /= w.sum()
    return DensityMatrix((vecs * w) @ dag(vecs))


def thermal_pair(
    a: np.ndarray,
    base_rate: float,
    bohr_frequency: float,
    beta: float,
    bath_label: str = "",
    hamiltonian: np.ndarray = None,
    tol: Tolerances = DEFAULT,
) -> tuple:
    """Gibbs-ratio pair of terms: (A, rate) and (A+, rate e^{-beta omega}).

    When ``hamiltonian`` is supplied, A is checked to be a lowering
    eigenoperator, [H, A] = -omega A, within the relative tolerance.
    """
    a = as_operator(a, "jump operator")
    if base_rate <= 0:
        raise ValueError(f"base_rate must be positive, got {base_rate}")
    if hamiltonian is not None:
        h = as_operator(hamiltonian, "hamiltonian")
        resid = np.linalg.norm(h @ a - a @ h + bohr_frequency * a)
        scale = np.linalg.norm(a)
        if scale == 0 or resid > tol.eigenoperator * scale:
            raise NotAnEigenoperator(
                f"[H, A] + omega A has norm {resid:.3e} "
                f"(relative {resid / max(scale, 1e-300):.3e}) "
                f"for omega = {bohr_frequency}"
            )
    down = LindbladTerm(a, base_rate, bath_label)
    up = LindbladTerm(dag(a), base_rate * np.exp(-beta * bohr_frequency), bath_label)
    return down, up


def davies_terms(
    hamiltonian: np.ndarray,
    coupling: np.ndarray,
    beta: float,
    base_rate: float = 1.0,
    bath_label: str = "",
    freq_tol: float = 1e-9,
) -> list:
    """Thermal jump terms from the Bohr decomposition of a coupling operator.

    The coupling A is split into eigenoperators A_w of the Hamiltonian, one
    per distinct positive Bohr gap w (gaps closer than freq_tol are merged);
    each contributes a Gibbs-ratio pair (A_w, rate), (A_w+, rate e^{-beta w}).
    The zero-frequency block enters once with its identity component removed
    (that component is dynamically inert).  The Gibbs state of H is exactly
    stationary for the resulting channel set.
    """
    h = as_operator(hamiltonian, "hamiltonian")
    a = as_operator(coupling, "coupling")
    if a.shape != h.shape:
        raise ShapeError(f"coupling shape {a.shape} does not match {h.shape}")
    vals, vecs = np.linalg.eigh(hermitize(h))
    at = dag(vecs) @ a @ vecs
    d = h.shape[0]
    gaps = {}
    for i in range(d):
        for j in range(d):
            w = vals[j] - vals[i]
            if at[i, j] == 0:
                continue
            for key in gaps:
                if abs(key - w) <= freq_tol:
                    w = key
                    break
            block = gaps.setdefault(w, np.zeros((d, d), dtype=complex))
            block[i, j] = at[i, j]
    terms = []
    for w in sorted(gaps):
        if abs(w) <= freq_tol:
            block = gaps[w]
            block = block - (np.trace(block) / d) * np.eye(d)
            if np.linalg.norm(block) > 1e-12:
                a0 = vecs @ block @ dag(vecs)
                terms.append(LindbladTerm(a0, base_rate, bath_label))
        elif w > 0:
            aw = vecs @ gaps[w] @ dag(vecs)
            terms.extend(
                thermal_pair(aw, base_rate, w, beta, bath_label, hamiltonian=h)
            )
    return terms


def thermal_family(
    h0: np.ndarray,
    m: np.ndarray,
    couplings,
    amplitude: float,
    frequency: float,
) -> GeneratorFamily:
    """Driven family whose baths rethermalize to H(xi) = H0 + xi M.

    ``couplings`` is an iterable of (coupling operator, beta, base_rate,
    bath_label).  The Davies decomposition is rebuilt at every xi, so each
    bath's Gibbs state of H(xi) is exactly stationary for its own channel
    set at that xi.
    """
    h0 = as_operator(h0, "h0")
    m = as_operator(m, "drive observable")
    spec = [
        (as_operator(c, "coupling"), float(b), float(r), str(lbl))
        for (c, b, r, lbl) in couplings
    ]

    def generator_of(xi: float) -> GklsGenerator:
        h = h0 + xi * m
        terms = []
        for coupling, beta, rate, label in spec:
            terms.extend(davies_terms(h, coupling, beta, rate, label))
        return GklsGenerator(h, tuple(terms))

    return GeneratorFamily(generator_of, m, amplitude, frequency)


def modulated_family(
    gen: GklsGenerator,
    m: np.ndarray,
    amplitude: float,
    frequency: float,
) -> GeneratorFamily:
    """Family where xi shifts the Hamiltonian only: H0 + xi M, frozen terms."""
    m = as_operator(m, "drive observable")

    def generator_of(xi: float) -> GklsGenerator:
        return GklsGenerator(gen.hamiltonian + xi * m, gen.terms)

    return GeneratorFamily(generator_of, m, amplitude, frequency)


# --- stationary states -------------------------------------------------------

def stationary_state(
    gen: GklsGenerator,
    tol: Tolerances = DEFAULT,
    superop: np.ndarray = None,
) -> DensityMatrix:
    """Unique kernel state of the generator via full eigendecomposition.

    The kernel is detected at a relative eigenvalue cut; anything but a
    one-dimensional kernel raises NonUniqueStationary.  The kernel vector is
    trace-normalized, hermitized, and validated as a state.
    """
    s = schrodinger_super(gen) if superop is None else np.asarray(superop, dtype=complex)
    vals, vecs = np.linalg.eig(s)
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    if scale == 0.0:
        raise NonUniqueStationary("zero generator: every state is stationary")
    cut = tol.kernel_cut * scale
    kernel = np.flatnonzero(np.abs(vals) <= cut)
    if kernel.size > 1:
        raise NonUniqueStationary(
            f"kernel dimension {kernel.size} at relative cut {tol.kernel_cut:.1e}"
        )
    idx = int(kernel[0]) if kernel.size == 1 else int(np.argmin(np.abs(vals)))
    rho = unvec(vecs[:, idx])
    tr = complex(np.trace(rho))
    if abs(tr) < 1e-12 * np.linalg.norm(rho):
        raise NonUniqueStationary("kernel vector is traceless; stationary structure is degenerate")
    rho = hermitize(rho / tr)
    resid = float(np.linalg.norm(s @ vec(rho)))
    if resid > tol.stationarity * max(1.0, scale):
        raise NotStationary(
            f"kernel candidate has generator-image norm {resid:.3e}"
        )
    lo = float(np.linalg.eigvalsh(rho)[0])
    if lo < -1e-8:
        raise NotAState(f"stationary candidate minimum eigenvalue {lo:.3e}")
    return DensityMatrix(rho, tol.with_(positivity=max(tol.positivity, 1e-8)))


def restrict_generator(gen: GklsGenerator, indices) -> GklsGenerator:
    """Restriction of a generator to an invariant span of basis states.

    Every jump operator and the Hamiltonian must be block diagonal with
    respect to the chosen index set (no coupling in either direction), so
    the restricted dynamics is autonomous GKLS on the subspace.
    """
    idx = np.asarray(indices, dtype=int)
    if idx.ndim != 1 or idx.size == 0 or np.unique(idx).size != idx.size:
        raise ShapeError("indices must be a nonempty list of distinct integers")
    dim = gen.dim
    if idx.min() < 0 or idx.max() >= dim:
        raise ShapeError(f"indices outside 0..{dim - 1}")
    rest = np.setdiff1d(np.arange(dim), idx)

    def check_block(mat: np.ndarray, name: str):
        if rest.size == 0:
            return
        off = max(
            float(np.max(np.abs(mat[np.ix_(rest, idx)]))),
            float(np.max(np.abs(mat[np.ix_(idx, rest)]))),
        )
        if off > 1e-12:
            raise ShapeError(
                f"{name} couples the subspace to its complement (max entry {off:.3e})"
            )

    check_block(gen.hamiltonian, "hamiltonian")
    sub_h = gen.hamiltonian[np.ix_(idx, idx)]
    sub_terms = []
    for k, term in enumerate(gen.terms):
        check_block(term.jump, f"terms[{k}]")
        sub_terms.append(
            LindbladTerm(term.jump[np.ix_(idx, idx)], term.rate, term.bath_label)
        )
    return GklsGenerator(sub_h, tuple(sub_terms))


def embed_state(rho_sub: np.ndarray, indices, dim: int) -> np.ndarray:
    """Place a subspace state back into the full space as a matrix."""
    idx = np.asarray(indices, dtype=int)
    sub = as_operator(rho_sub, "subspace state")
    if sub.shape[0] != idx.size:
        raise ShapeError(f"state of size {sub.shape[0]} for {idx.size} indices")
    full = np.zeros((dim, dim), dtype=complex)
    full[np.ix_(idx, idx)] = sub
    return full


# --- propagation -------------------------------------------------------------

def _validated_state(m: np.ndarray, step: int, tol: Tolerances) -> DensityMatrix:
    try:
        return DensityMatrix(m, tol)
    except NotAState as exc:
        raise NumericalDrift(f"state invariant violated at step {step}: {exc}") from exc


def evolve(gen: GklsGenerator, rho0: DensityMatrix, times) -> Trajectory:
    """Propagate a state by exponentials of the static generator.

    One exponential is computed per distinct step size (grids from linspace
    reuse a single propagator); every state is re-validated, and a violation
    raises NumericalDrift carrying the step index.
    """
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 1 or (t.size > 1 and np.any(np.diff(t) <= 0)):
        raise ShapeError("times must be a strictly increasing 1-d grid")
    s = schrodinger_super(gen)
    props = {}
    states = [rho0]
    v = vec(rho0.matrix)
    for i in range(1, t.size):
        dt = t[i] - t[i - 1]
        key = round(float(dt), 15)
        if key not in props:
            props[key] = expm(s * dt)
        v = props[key] @ v
        states.append(_validated_state(unvec(v), i, DEFAULT))
    return Trajectory(t, tuple(states))


def _max_rate(gen: GklsGenerator) -> float:
    return max((term.rate for term in gen.terms), default=0.0)


def evolve_driven(family: GeneratorFamily, rho0: DensityMatrix, times) -> Trajectory:
    """Piecewise-frozen propagation of the driven family.

    On each step the generator is frozen at the midpoint drive value
    xi(t_mid) and exponentiated.  The step size must satisfy
    dt <= min(0.05/Omega, 0.1/max rate) for the freeze to be a faithful
    quasi-static approximation.
    """
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 2 or np.any(np.diff(t) <= 0):
        raise ShapeError("times must be a strictly increasing grid with >= 2 points")
    gen0 = family.generator_of(0.0)
    bound = 0.05 / family.frequency
    mr = _max_rate(gen0)
    if mr > 0:
        bound = min(bound, 0.1 / mr)
    dt_max = float(np.max(np.diff(t)))
    if dt_max > bound * (1 + 1e-12):
        raise StepTooLarge(
            f"max step {dt_max:.3e} exceeds the freeze bound {bound:.3e} "
            f"(Omega = {family.frequency}, max rate = {mr})"
        )
    props = {}
    states = [rho0]
    mids = np.empty(t.size - 1)
    v = vec(rho0.matrix)
    for i in range(1, t.size):
        dt = t[i] - t[i - 1]
        xi = family.xi(0.5 * (t[i] + t[i - 1]))
        mids[i - 1] = xi
        key = (round(float(xi), 15), round(float(dt), 15))
        if key not in props:
            props[key] = expm(schrodinger_super(family.generator_of(xi)) * dt)
        v = props[key] @ v
        states.append(_validated_state(unvec(v), i, DEFAULT))
    return Trajectory(t, tuple(states), xi_midpoints=mids)


# --- detailed balance --------------------------------------------------------

def weighted_inner_product(x, y, rho_bar, tol: Tolerances = DEFAULT) -> complex:
    """Stationary-state-weighted scalar product tr(rho_bar X+ Y)."""
    x = as_operator(x, "x")
    y = as_operator(y, "y")
    w = rho_bar.matrix if isinstance(rho_bar, DensityMatrix) else as_operator(rho_bar)
    if x.shape != y.shape or x.shape != w.shape:
        raise ShapeError("operands and weight must share one shape")
    lo = float(np.linalg.eigvalsh(hermitize(w))[0])
    if lo <= 1e-12:
        raise SingularWeight(f"weight minimum eigenvalue {lo:.3e} not > 1e-12")
    return complex(np.trace(w @ dag(x) @ y))


@dataclass(frozen=True)
class DetailedBalanceReport:
    """Residuals of the quantum detailed-balance structure at a stationary state.

    All three are absolute Frobenius norms measured in the frame where the
    weighted scalar product is the plain one: the dissipative part of L*
    should be hermitian there, the Hamiltonian part anti-hermitian, and the
    two should commute.
    """

    dissipative_hermiticity_defect: float
    hamiltonian_antihermiticity_defect: float
    commutator_norm: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return (
            self.dissipative_hermiticity_defect <= self.tolerance
            and self.hamiltonian_antihermiticity_defect <= self.tolerance
            and self.commutator_norm <= self.tolerance
        )


def detailed_balance_report(
    gen: GklsGenerator,
    rho_bar: DensityMatrix,
    tolerance: float = None,
    tol: Tolerances = DEFAULT,
) -> DetailedBalanceReport:
    """Diagnose quantum detailed balance of ``gen`` at the stationary state.

    Requires rho_bar stationary (within tol.stationarity) and strictly
    positive.  The Heisenberg generator is split into Hamiltonian and
    dissipative parts; both are conjugated into the orthonormal frame of
    the rho_bar-weighted scalar product, where hermiticity statements
    become plain matrix symmetry.
    """
    w = rho_bar.matrix if isinstance(rho_bar, DensityMatrix) else as_operator(rho_bar)
    resid = float(np.linalg.norm(apply_schrodinger(gen, w)))
    if resid > tol.stationarity:
        raise NotStationary(
            f"reference state has generator-image norm {resid:.3e} "
            f"(tolerance {tol.stationarity:.1e})"
        )
    vals, vecs = np.linalg.eigh(hermitize(w))
    if float(vals[0]) <= 1e-12:
        raise SingularWeight(
            f"stationary state minimum eigenvalue {float(vals[0]):.3e} not > 1e-12"
        )
    root = (vecs * np.sqrt(vals)) @ dag(vecs)
    root_inv = (vecs * (1.0 / np.sqrt(vals))) @ dag(vecs)
    t_mat = np.kron(root.T, np.eye(gen.dim))
    t_inv = np.kron(root_inv.T, np.eye(gen.dim))

    ham_star = -hamiltonian_super(gen.hamiltonian)
    dis_star = heisenberg_dissipator_super(gen.terms, gen.dim)
    ham_gns = t_mat @ ham_star @ t_inv
    dis_gns = t_mat @ dis_star @ t_inv

    r_d = float(np.linalg.norm(0.5 * (dis_gns - dag(dis_gns))))
    r_h = float(np.linalg.norm(0.5 * (ham_gns + dag(ham_gns))))
    r_c = float(np.linalg.norm(ham_gns @ dis_gns - dis_gns @ ham_gns))
    return DetailedBalanceReport(
        dissipative_hermiticity_defect=r_d,
        hamiltonian_antihermiticity_defect=r_h,
        commutator_norm=r_c,
        tolerance=tol.detailed_balance if tolerance is None else float(tolerance),
    )
