"""Shared model builders for the test suite.

The triangle model is the workhorse nonequilibrium example: three levels,
two baths, and a closed transition cycle whose rate products break the
reversibility condition, so it has a genuine current-carrying steady state.
"""

import numpy as np

from lindtherm import GklsGenerator, BathAssignment, davies_terms, thermal_pair


def unit(i, j, d):
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1.0
    return m


def triangle_generator():
    """Two-temperature three-level cycle; returns (generator, baths)."""
    h = np.diag([0.0, 1.0, 2.5]).astype(complex)
    terms = []
    terms += thermal_pair(unit(0, 1, 3), 0.7, 1.0, 1.0, "cold")
    terms += thermal_pair(unit(1, 2, 3), 0.4, 1.5, 1.0, "cold")
    terms += thermal_pair(unit(0, 2, 3), 0.5, 2.5, 0.2, "hot")
    gen = GklsGenerator(h, tuple(terms))
    baths = [BathAssignment("cold", 1.0), BathAssignment("hot", 0.2)]
    return gen, baths


def random_thermal_model(rng, dim):
    """Single-bath Davies model with a gap-separated random spectrum."""
    evals = np.concatenate([[0.0], np.cumsum(rng.uniform(0.3, 1.0, dim - 1))])
    h = np.diag(evals).astype(complex)
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    coupling = (x + x.conj().T) / 2.0
    beta = float(rng.uniform(0.2, 2.5))
    terms = davies_terms(h, coupling, beta, base_rate=0.7, bath_label="bath")
    return GklsGenerator(h, tuple(terms)), beta


def random_state(rng, dim):
    """Full-rank Wishart density matrix."""
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    w = x @ x.conj().T + 1e-6 * np.eye(dim)
    return w / np.trace(w).real
