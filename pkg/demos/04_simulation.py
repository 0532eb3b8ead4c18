"""Running the protocol branch by branch and certifying it exactly.

The simulator enumerates every measurement outcome: project Alice's two
systems onto the j-th measurement state, record the branch probability,
apply Bob's correction, and compare against the expected product state.
Because nothing is sampled, "fidelity 1 on every outcome" is a certificate,
not a statistic.

The last section teleports a qubit through ONE Bell pair of a two-Bell-pair
resource: two classical bits suffice, but a full Bell pair of entanglement
survives on every outcome (residual Schmidt number 2), which is exactly the
trade-off the communication bounds talk about.
"""

import numpy as np

from qteleport import (
    SchmidtSpectrum,
    bob_unitaries,
    haar_random_state,
    measurement_basis,
    one_pair_double_bell_trace,
    random_input_sweep,
    run_protocol,
    solve_d2,
    synthesize_d2,
)

rng = np.random.default_rng(8)

# ---------------------------------------------------------------------------
# One run, all six branches
# ---------------------------------------------------------------------------
print("Teleporting one random qubit through sqrt(1/2)|11>+sqrt(1/3)|22>+sqrt(1/6)|33>")
print("=" * 70)
golden = SchmidtSpectrum.from_rationals(["1/2", "1/3", "1/6"])
table = synthesize_d2(golden, solve_d2(golden))
basis = measurement_basis(table)
ubob = bob_unitaries(table, golden)

psi = haar_random_state(2, rng)
trace = run_protocol(psi, golden, table, basis, ubob)
print(f"input amplitudes: {np.round(psi, 4)}")
print(f"{'j':>3} {'probability':>14} {'fidelity':>20} {'residual rank':>14}")
for rec in trace.outcomes:
    print(f"{rec.j:>3} {rec.probability:>14.10f} {rec.fidelity:>20.16f} {rec.residual_schmidt:>14}")
print(f"total probability: {trace.total_probability:.12f}")
print(f"classical bits sent: log2({table.s}) = {trace.classical_bits:.6f}")

# ---------------------------------------------------------------------------
# Batch certification on random inputs
# ---------------------------------------------------------------------------
print("\nCertifying 200 Haar-random inputs")
print("=" * 70)
sweep = random_input_sweep(golden, 2, trials=200, seed=424242)
print(f"min fidelity:              {sweep.min_fidelity!r}")
print(f"max |fidelity - 1|:        {sweep.max_fidelity_deviation:.2e}")
print(f"max |probability - 1/6|:   {sweep.max_probability_deviation:.2e}")
print(f"max residual Schmidt rank: {sweep.max_residual_schmidt}")

# ---------------------------------------------------------------------------
# Partial use of a two-Bell-pair resource
# ---------------------------------------------------------------------------
print("\nTeleporting through one Bell pair of a two-Bell-pair resource")
print("=" * 70)
trace2 = one_pair_double_bell_trace(haar_random_state(2, rng))
print(f"{'j':>3} {'probability':>14} {'fidelity':>20} {'residual rank':>14}")
for rec in trace2.outcomes:
    print(f"{rec.j:>3} {rec.probability:>14.10f} {rec.fidelity:>20.16f} {rec.residual_schmidt:>14}")
print(f"classical bits sent: {trace2.classical_bits:.1f}")
print("every branch keeps Schmidt rank 2 across the Alice|Bob cut: the")
print("second pair survives, bought by NOT compressing to the 3-bit message")
print("a zero-residual protocol on this rank-4 resource would need")
