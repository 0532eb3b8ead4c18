"""Phase-factor solvers for the teleportation coefficient construction.

The protocol needs s = n*d angles theta[m, k] such that

    sum_k p_k * exp(i*(theta[m, k] - theta[m', k])) = delta(m, m')

for every pair of rows m, m'.  For a qubit (d = 2) the condition collapses to
a single phasor sum sum_k p_k * exp(i*theta_k) = 0, which always has a
solution when every p_k <= 1/2.  For general d a solution exists whenever the
probabilities split into d subgroups of equal weight 1/d; beyond that the
solver falls back to a multi-restart least-squares search and reports failure
honestly when nothing reaches the acceptance threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import least_squares

from .errors import InfeasibleSpectrum, NoPartition, PhaseFactorsNotFound
from .spectrum import SchmidtSpectrum

TWO_PI = 2.0 * np.pi

FEASIBILITY_SLACK = 1e-12   # p_max <= 1/d + slack passes the feasibility gate
RESIDUAL_TOL = 1e-9         # per-constraint acceptance for any returned PhaseMatrix
PARTITION_TOL = 1e-9        # subgroup-sum tolerance on the float path
SEARCH_R_TOL = 1e-18        # sum-of-squares acceptance for the numerical search
DEFAULT_RESTARTS = 64
DEFAULT_MAX_NFEV = 100_000
_SEARCH_SEED = 0x5EED


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def canonicalize(theta: np.ndarray) -> np.ndarray:
    """Zero the first row by a column shift and reduce all angles mod 2*pi.

    Column shifts leave every difference theta[m, k] - theta[m', k] unchanged,
    so canonicalization preserves validity exactly.  Angles within 1e-12 of
    2*pi are snapped to 0 for stable golden-file comparisons.
    """
    out = np.mod(theta - theta[0:1, :], TWO_PI)
    out[out > TWO_PI - 1e-12] = 0.0
    return out


@dataclass(frozen=True)
class PhaseMatrix:
    """d x n matrix of angles theta[m, k] in [0, 2*pi)."""

    theta: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.theta, dtype=float)
        if mat.ndim != 2:
            raise ValueError("theta must be a d x n matrix")
        if np.any(mat < 0.0) or np.any(mat >= TWO_PI):
            raise ValueError("angles must lie in [0, 2*pi)")
        object.__setattr__(self, "theta", _freeze(mat))

    @property
    def d(self) -> int:
        return self.theta.shape[0]

    @property
    def n(self) -> int:
        return self.theta.shape[1]

    def row_differences(self) -> np.ndarray:
        """theta[1] - theta[0] (the qubit-case angles) for d = 2 matrices."""
        return np.mod(self.theta[1] - self.theta[0], TWO_PI)

    def constraint_residual(self, spectrum: SchmidtSpectrum) -> float:
        """Largest |sum_k p_k exp(i(theta[m,k]-theta[m',k]))| over pairs m != m'."""
        return constraint_residual(spectrum.as_array(), self.theta)


def constraint_residual(probs: np.ndarray, theta: np.ndarray) -> float:
    phases = np.exp(1j * theta)  # (d, n)
    gram = (phases * probs) @ phases.conj().T  # (d, d); diagonal = sum p = 1
    off = gram - np.diag(np.diag(gram))
    return float(np.abs(off).max()) if theta.shape[0] > 1 else 0.0


@dataclass(frozen=True)
class Partition:
    """Assignment of each probability index to a subgroup label in 1..d."""

    assignment: tuple[int, ...]
    d: int

    def __post_init__(self):
        if any(not 1 <= g <= self.d for g in self.assignment):
            raise ValueError("subgroup labels must lie in 1..d")

    @property
    def n(self) -> int:
        return len(self.assignment)

    def subgroup_sums(self, spectrum: SchmidtSpectrum) -> list:
        values = spectrum.exact if spectrum.exact is not None else spectrum.probs
        sums = [0 * values[0]] * self.d
        for idx, label in enumerate(self.assignment):
            sums[label - 1] = sums[label - 1] + values[idx]
        return sums


def _feasibility_gate(spectrum: SchmidtSpectrum, d: int) -> None:
    if spectrum.p_max > 1.0 / d + FEASIBILITY_SLACK:
        raise InfeasibleSpectrum(
            f"max probability {spectrum.p_max!r} exceeds 1/{d}; "
            f"a {d}-level state cannot be teleported through this resource"
        )


def solve_d2(spectrum: SchmidtSpectrum) -> PhaseMatrix:
    """Angles theta_k with sum_k p_k exp(i*theta_k) = 0, for p_max <= 1/2.

    Constructive: the probabilities are partitioned greedily (descending,
    into the currently lightest of three groups) into group weights g1, g2,
    g3, each at most 1/2.  The three weights then satisfy the triangle
    inequality, so the phasors g1 + g2*exp(i*phi2) + g3*exp(i*phi3) close to
    zero; phi2 and phi3 come from intersecting the circles |z| = g2 and
    |z + g1| = g3, which keeps the closure exact to machine precision even
    for degenerate (collinear) triangles.

    Returns a 2 x n PhaseMatrix with a zero first row; row 2 holds theta_k.
    """
    _feasibility_gate(spectrum, 2)
    p = spectrum.as_array()
    n = spectrum.n

    order = sorted(range(n), key=lambda i: (-p[i], i))
    sums = [0.0, 0.0, 0.0]
    group = [0] * n
    for i in order:
        g = min(range(3), key=lambda t: (sums[t], t))
        group[i] = g
        sums[g] += p[i]

    g1, g2, g3 = sums
    # endpoints of the g2- and g3-phasors, with y^2 in the cancellation-free
    # Heron product form; x3 is computed directly rather than as -g1 - x2,
    # which keeps the closure at machine precision even for degenerate
    # (collinear) triangles and near-zero group weights
    x2 = (g3 * g3 - g2 * g2 - g1 * g1) / (2.0 * g1)
    x3 = -(g1 * g1 + g3 * g3 - g2 * g2) / (2.0 * g1)
    y_sq = (
        (g1 + g2 + g3) * (g1 + g2 - g3) * (g2 + g3 - g1) * (g3 + g1 - g2)
    ) / (4.0 * g1 * g1)
    y = np.sqrt(max(y_sq, 0.0))
    angles = (0.0, float(np.arctan2(y, x2)), float(np.arctan2(-y, x3)))

    theta = np.zeros((2, n))
    theta[1] = [angles[group[i]] for i in range(n)]
    return PhaseMatrix(canonicalize(theta))


def find_partition(spectrum: SchmidtSpectrum, d: int) -> Partition:
    """Split the probabilities into d subgroups each summing to exactly 1/d.

    Backtracking first-fit over indices sorted by descending probability.
    Exact rational arithmetic when the spectrum carries exact values;
    otherwise float sums compared within PARTITION_TOL.  Raises NoPartition
    when the search space is exhausted.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    n = spectrum.n
    if n < d:
        raise NoPartition(f"cannot split {n} probabilities into {d} non-empty subgroups")

    exact = spectrum.exact is not None
    if exact:
        values = list(spectrum.exact)
        target = Fraction(1, d)
        fits = lambda acc, v: acc + v <= target
        full = lambda acc: acc == target
    else:
        values = list(spectrum.probs)
        target = 1.0 / d
        fits = lambda acc, v: acc + v <= target + PARTITION_TOL
        full = lambda acc: abs(acc - target) <= PARTITION_TOL

    order = sorted(range(n), key=lambda i: (-values[i], i))
    assignment = [0] * n
    sums = [values[0] * 0] * d

    def place(pos: int) -> bool:
        if pos == n:
            return all(full(s) for s in sums)
        idx = order[pos]
        v = values[idx]
        seen_empty = False
        for g in range(d):
            if sums[g] == 0 * v:
                if seen_empty:
                    break  # empty groups are interchangeable
                seen_empty = True
            if fits(sums[g], v):
                sums[g] = sums[g] + v
                assignment[idx] = g + 1
                if place(pos + 1):
                    return True
                sums[g] = sums[g] - v
                assignment[idx] = 0
        return False

    if not place(0):
        raise NoPartition(f"no partition of the spectrum into {d} subgroups of weight 1/{d}")
    return Partition(tuple(assignment), d)


def phases_from_partition(partition: Partition, d: int, n: int) -> PhaseMatrix:
    """Phase table theta[m, k] = (2*pi/d) * m * l(k) for subgroup labels l(k).

    Valid whenever the partition's subgroups each carry weight 1/d: the inner
    sum over each subgroup contributes (1/d) * exp(i*(2*pi/d)*(m-m')*l), and
    the d subgroup phasors cancel for m != m'.  Returned in canonical form
    (first row zeroed by a column shift).
    """
    if partition.d != d or partition.n != n:
        raise ValueError("partition does not match the requested (d, n)")
    labels = np.asarray(partition.assignment, dtype=float)
    rows = np.arange(d, dtype=float)[:, None]  # canonical: row m holds (2*pi/d)*m*l(k)
    theta = np.mod(TWO_PI / d * rows * labels[None, :], TWO_PI)
    return PhaseMatrix(canonicalize(theta))


def _search_phases(
    probs: np.ndarray,
    d: int,
    restarts: int,
    max_nfev: int,
    seed: int,
) -> tuple[float, np.ndarray | None]:
    """Least-squares search for the phase constraints; returns (R, theta).

    Gauge freedom is removed by pinning the first row and first column of
    theta to zero (column and row shifts never change the constraints).
    Restarts are scanned in a fixed seeded order and the scan stops at the
    first solution with R < SEARCH_R_TOL, which keeps the result
    deterministic; otherwise the best R seen is reported.
    """
    n = probs.size
    pairs = [(m, mm) for m in range(d) for mm in range(m + 1, d)]
    n_free = (d - 1) * (n - 1)

    def unpack(x: np.ndarray) -> np.ndarray:
        theta = np.zeros((d, n))
        theta[1:, 1:] = x.reshape(d - 1, n - 1)
        return theta

    def residual(x: np.ndarray) -> np.ndarray:
        theta = unpack(x)
        phases = np.exp(1j * theta)
        out = np.empty(2 * len(pairs))
        for i, (m, mm) in enumerate(pairs):
            c = np.sum(probs * phases[m] * phases[mm].conj())
            out[2 * i] = c.real
            out[2 * i + 1] = c.imag
        return out

    def jacobian(x: np.ndarray) -> np.ndarray:
        theta = unpack(x)
        phases = np.exp(1j * theta)
        jac = np.zeros((2 * len(pairs), n_free))
        for i, (m, mm) in enumerate(pairs):
            ph = probs * phases[m] * phases[mm].conj()
            for a, sign in ((m, 1.0), (mm, -1.0)):
                if a == 0:
                    continue
                cols = slice((a - 1) * (n - 1), a * (n - 1))
                grad = 1j * sign * ph[1:]
                jac[2 * i, cols] += grad.real
                jac[2 * i + 1, cols] += grad.imag
        return jac

    def refine(x0: np.ndarray):
        sol = least_squares(
            residual, x0, jac=jacobian, method="trf",
            xtol=3e-16, ftol=3e-16, gtol=3e-16, max_nfev=max_nfev,
        )
        return 2.0 * sol.cost, sol.x

    rng = np.random.default_rng(seed)
    best_r, best_x = np.inf, None
    for _ in range(restarts):
        r, x = refine(rng.uniform(0.0, TWO_PI, n_free))
        if r < best_r:
            best_r, best_x = r, x
        if best_r < SEARCH_R_TOL:
            break
    if best_r < SEARCH_R_TOL:
        r, x = refine(best_x)  # one polish pass from the accepted solution
        if r < best_r:
            best_r, best_x = r, x
        return best_r, unpack(best_x)
    return best_r, None


def solve_general(
    spectrum: SchmidtSpectrum,
    d: int,
    *,
    restarts: int = DEFAULT_RESTARTS,
    max_nfev: int = DEFAULT_MAX_NFEV,
    seed: int = _SEARCH_SEED,
) -> PhaseMatrix:
    """Phase factors for general d, trying each strategy in order.

    (a) the constructive qubit solver when d = 2;
    (b) the equal-weight subgroup partition when one exists;
    (c) the multi-restart numerical search, accepted only when the summed
        squared constraint violation drops below SEARCH_R_TOL.

    Raises InfeasibleSpectrum when p_max > 1/d (no phase factors can exist),
    and PhaseFactorsNotFound when every strategy fails; the latter is a
    legitimate outcome for 2 < d < n.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    _feasibility_gate(spectrum, d)

    if d == 2:
        return solve_d2(spectrum)

    try:
        partition = find_partition(spectrum, d)
    except NoPartition:
        pass
    else:
        return phases_from_partition(partition, d, spectrum.n)

    best_r, theta = _search_phases(spectrum.as_array(), d, restarts, max_nfev, seed)
    if theta is None:
        raise PhaseFactorsNotFound(
            f"no phase factors found for d={d}, n={spectrum.n} after {restarts} "
            f"restarts; best residual {np.sqrt(best_r):.3e}",
            best_residual=float(np.sqrt(best_r)),
        )
    matrix = PhaseMatrix(canonicalize(theta))
    residual = matrix.constraint_residual(spectrum)
    if residual > RESIDUAL_TOL:  # canonicalization cannot degrade this; belt and braces
        raise PhaseFactorsNotFound(
            f"search result failed re-validation with residual {residual:.3e}",
            best_residual=residual,
        )
    return matrix
