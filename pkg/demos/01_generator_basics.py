"""Relaxation of a thermal qubit: build a generator, evolve, check structure.

Run:  python3 demos/01_generator_basics.py
"""

import numpy as np

from lindtherm import (
    DensityMatrix,
    GklsGenerator,
    dag,
    evolve,
    gibbs_state,
    heisenberg_super,
    schrodinger_super,
    thermal_pair,
    trace_distance,
    trace_preservation_defect,
)

BETA = 1.2
OMEGA = 1.0

h = np.diag([0.0, OMEGA]).astype(complex)
a = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)

# a thermal pair is (decay at the base rate, excitation damped by e^{-beta omega})
terms = thermal_pair(a, 0.8, OMEGA, BETA, "bath")
gen = GklsGenerator(h, tuple(terms))
print("jump rates:", [round(t.rate, 6) for t in gen.terms])

ls = schrodinger_super(gen)
print("trace-preservation defect:", trace_preservation_defect(ls))
print("picture duality |L* - S^dag|:",
      np.linalg.norm(heisenberg_super(gen) - dag(ls)))

rho0 = DensityMatrix(np.array([[0.1, 0.2], [0.2, 0.9]], dtype=complex))
times = np.linspace(0.0, 6.0, 13)
traj = evolve(gen, rho0, times)

target = gibbs_state(h, BETA)
print("\n  t      p_excited   coherence   dist to Gibbs")
for t, st in zip(traj.times, traj.states):
    m = st.matrix
    print(f"  {t:4.1f}   {m[1, 1].real:.6f}   {abs(m[0, 1]):.6f}   "
          f"{trace_distance(st, target):.2e}")

print("\nGibbs population ratio e^{-beta omega} =", np.exp(-BETA * OMEGA))
