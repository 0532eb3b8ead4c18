"""Classical-communication accounting: what the message must cost.

The synthesized protocol sends log2(n*d) bits.  Lower bounds say when that
is unavoidable:

  * any LOCC map dropping Schmidt rank n1 -> n2 costs >= log2(n1/n2) bits,
    so concentrate-then-teleport costs >= log2(n/d) + 2 log2(d) = log2(n*d);
  * if d > n/2, or if no entanglement may survive, ANY protocol needs
    >= log2(n*d) bits;
  * otherwise only the 2 log2(d) floor is claimed, and it is genuinely
    beatable-looking: one Bell pair of a two-pair resource teleports a qubit
    for 2 bits, paying with residual entanglement instead.

The same accounting bounds deterministic entanglement concentration:
n copies -> m Bell pairs is possible iff m <= n*E_t, and the concentration
step itself costs C1 >= n*E_Sch - m classical bits.
"""

import math

from qteleport import (
    SchmidtSpectrum,
    build_bounds_report,
    concentration_bounds,
    locc_ccc_bound,
    residual_cap,
    residual_cap_integer,
    teleport_ccc_bound,
)

# ---------------------------------------------------------------------------
# Message-size bounds for the double-Bell resource (n = 4, d = 2)
# ---------------------------------------------------------------------------
print("Two-Bell-pair resource (n = 4), teleporting a qubit (d = 2)")
print("=" * 64)
print("concentrate-and-teleport floor:",
      locc_ccc_bound(4, 2).value + 2 * math.log2(2), "bits")
for flag in (True, False):
    bound = teleport_ccc_bound(4, 2, assume_zero_residual=flag)
    print(f"assume zero residual = {str(flag):5}: "
          f">= {bound.bits.value} bits   [{bound.assumption}]")
print("residual entanglement cap: ", residual_cap(4, 2).value, "bit")
print("-> destroying everything costs 3 bits; keeping one Bell pair, 2 bits")

# ---------------------------------------------------------------------------
# Small resources: the bound is unconditional, and MORE entanglement can
# require MORE communication
# ---------------------------------------------------------------------------
print("\nUniform n-term resources for a qubit: message floor by n")
print("=" * 64)
for n in (2, 3, 4):
    s = SchmidtSpectrum.from_rationals([f"1/{n}"] * n)
    bound = teleport_ccc_bound(n, 2, assume_zero_residual=False)
    print(f"  n = {n}: >= {bound.bits.value:.4f} bits   [{bound.assumption}]   "
          f"cap on surviving entanglement: {residual_cap(n, 2).value:.4f} "
          f"(integer-rank cap {residual_cap_integer(n, 2).value:.4f})")
print("  n = 3 beats n = 2: the rank-3 resource is more entangled, yet any")
print("  faithful qubit protocol must send log2(6) > 2 bits (d > n/2 rule)")

# ---------------------------------------------------------------------------
# Full report for the worked three-term resource
# ---------------------------------------------------------------------------
print("\nFull bound report for p = (1/2, 1/3, 1/6), d = 2")
print("=" * 64)
golden = SchmidtSpectrum.from_rationals(["1/2", "1/3", "1/6"])
report = build_bounds_report(golden, 2)
print(f"E_t = {report.et.value}   E_Sch = {report.e_sch.value:.6f}")
print(f"feasible: {report.teleport_feasible}")
print(f"message floor: {report.ccc_lower_bound.bits.value:.6f} bits "
      f"[{report.ccc_lower_bound.assumption}]")
print(f"the protocol sends log2(6) = {math.log2(6):.6f} bits: optimal here")

# ---------------------------------------------------------------------------
# Deterministic concentration budgets
# ---------------------------------------------------------------------------
print("\nConcentration: n copies of (1/2, 1/3, 1/6) -> m Bell pairs")
print("=" * 64)
print(f"{'copies':>7} {'bells':>6} {'feasible':>9} {'C1 floor':>10} {'C2':>5}")
for copies, bells in [(1, 1), (2, 2), (4, 4), (4, 5), (6, 6)]:
    conc = concentration_bounds(golden, copies, bells)
    print(f"{copies:>7} {bells:>6} {str(conc.feasible):>9} "
          f"{conc.c1_lower_bound.value:>10.4f} {conc.c2.value:>5.1f}")
print("feasible exactly when m <= n * E_t = n; at the edge the concentration")
print("cost floor is n*(E_Sch - E_t) = n*(log2(3) - 1), zero only for")
print("maximally entangled copies")
