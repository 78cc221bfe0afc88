"""Sum-of-expectations bound for non-commuting Pauli pairs and the derived fidelity radius."""
import cmath
import logging
import math
from itertools import combinations_with_replacement
from typing import Optional

import numpy as np

from graphcert.core.exceptions import InvalidArgumentError
from graphcert.models.bounds import FidelityBound
from graphcert.utils.finite_field import require_prime
from graphcert.utils.pauli import clock_matrix, shift_matrix

logger = logging.getLogger(__name__)


def _check_exponent(d: int, comm_q: int) -> None:
    require_prime(d)
    if not 1 <= comm_q <= d - 1 or math.gcd(comm_q, d) != 1:
        raise InvalidArgumentError(f"commutation exponent {comm_q} must be coprime to d={d}")


def commutation_sum_bound(d: int) -> float:
    """Σ_k ⟨A_1^k⟩ + ⟨A_2^k⟩ ≤ d + √d whenever A_1 A_2 = ω^q A_2 A_1 with q ≠ 0."""
    require_prime(d)
    return d + math.sqrt(d)


def _sum_operator(d: int, comm_q: int) -> np.ndarray:
    x = shift_matrix(d)
    zq = np.linalg.matrix_power(clock_matrix(d), comm_q)
    return sum(
        np.linalg.matrix_power(x, k) + np.linalg.matrix_power(zq, k) for k in range(d)
    )


def commutation_sum_numeric_max(d: int, comm_q: int) -> float:
    """Largest eigenvalue of Σ_k (X^k + Z^{qk})."""
    _check_exponent(d, comm_q)
    return float(np.linalg.eigvalsh(_sum_operator(d, comm_q))[-1])


def commutation_sum_rank2_max(d: int, comm_q: int) -> float:
    """d(1 + |⟨0|φ_0⟩|) from the +1 eigenvectors of X and Z^q."""
    _check_exponent(d, comm_q)
    values, vectors = np.linalg.eig(shift_matrix(d))
    phi0 = vectors[:, int(np.argmin(np.abs(values - 1)))]
    zq = np.linalg.matrix_power(clock_matrix(d), comm_q)
    values, vectors = np.linalg.eig(zq)
    zero = vectors[:, int(np.argmin(np.abs(values - 1)))]
    overlap = abs(np.vdot(zero, phi0)) / (np.linalg.norm(zero) * np.linalg.norm(phi0))
    return float(d * (1 + overlap))


def vieta_sum(d: int, comm_q: int, k: int) -> complex:
    """Σ over 0 ≤ i_1 ≤ … ≤ i_k ≤ d−k of η^{i_1+…+i_k}, η = ω^{−q}."""
    _check_exponent(d, comm_q)
    if not 1 <= k <= d - 1:
        raise InvalidArgumentError(f"k={k} outside 1..{d - 1}")
    eta = cmath.exp(-2j * cmath.pi * comm_q / d)
    return sum(eta ** sum(idx) for idx in combinations_with_replacement(range(d - k + 1), k))


def operator_identity_check(
    d: int, comm_q: int, lambda1: float, lambda2: float, n_reps: int = 1
) -> float:
    """Max-entry deviation of (λ1 X + λ2 Z^q)^{n·d} from (λ1^d + λ2^d)^n · I."""
    _check_exponent(d, comm_q)
    if lambda1 <= 0 or lambda2 <= 0 or n_reps < 1:
        raise InvalidArgumentError("weights must be positive and n_reps at least 1")
    m = lambda1 * shift_matrix(d) + lambda2 * np.linalg.matrix_power(clock_matrix(d), comm_q)
    power = np.linalg.matrix_power(m, n_reps * d)
    target = (lambda1 ** d + lambda2 ** d) ** n_reps * np.eye(d)
    return float(np.max(np.abs(power - target)))


def _gamma(d: Optional[int], analytic_limit: bool) -> float:
    if analytic_limit:
        return 1.0
    if d is None:
        raise InvalidArgumentError("d is required outside the analytic limit")
    require_prime(d)
    return (d - math.sqrt(d)) / (d - 1)


def fidelity_threshold(
    d: Optional[int], q_overlap: int, analytic_limit: bool = False
) -> FidelityBound:
    if d is not None:
        require_prime(d)
    if q_overlap < 1:
        raise InvalidArgumentError(f"q_overlap must be at least 1, got {q_overlap}")
    beta = 2.0 * q_overlap - 1.0
    gamma = _gamma(d, analytic_limit)
    delta = (beta ** 2 + 2 * gamma - beta * math.sqrt(beta ** 2 + 4 * gamma)) / 8
    logger.debug(f"Fidelity threshold d={d}, q={q_overlap}: delta_max={delta}")
    return FidelityBound(
        d=d,
        q_overlap=q_overlap,
        analytic_limit=analytic_limit,
        beta=beta,
        gamma=gamma,
        delta_max=delta,
        f_min=1.0 - delta,
    )


def error_propagation(mu: float, nu: float) -> float:
    """Bound on |⟨1 − s_1 s_2⟩| from |⟨1 − s_1⟩| ≤ μ and |⟨1 − s_2⟩| ≤ ν."""
    if mu < 0 or mu > nu:
        raise InvalidArgumentError(f"need 0 <= mu <= nu, got mu={mu}, nu={nu}")
    return math.sqrt(2 * mu) + nu


def stabilizer_deviation_bound(delta: float) -> float:
    """|⟨1 − s⟩| for a stabilizer element s on a state at fidelity 1 − δ."""
    if not 0 <= delta <= 1:
        raise InvalidArgumentError(f"delta must lie in [0, 1], got {delta}")
    return 2 * delta


def chain_deviation_bound(q_overlap: int, delta: float) -> float:
    """Deviation accumulated by the transferred operator over q_overlap − 1 chain links."""
    if q_overlap < 1:
        raise InvalidArgumentError(f"q_overlap must be at least 1, got {q_overlap}")
    return 4 * (q_overlap - 1) * math.sqrt(delta) + stabilizer_deviation_bound(delta)


def fidelity_margin(
    d: Optional[int], q_overlap: int, delta: float, analytic_limit: bool = False
) -> float:
    """γ/2 − (β√δ + 2δ); positive exactly when infidelity δ is still excluded."""
    if q_overlap < 1:
        raise InvalidArgumentError(f"q_overlap must be at least 1, got {q_overlap}")
    beta = 2.0 * q_overlap - 1.0
    return _gamma(d, analytic_limit) / 2 - (beta * math.sqrt(delta) + 2 * delta)
