"""Seeded numeric self-checks of the bounds and of the stabilizer oracle."""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from graphcert.core.config import settings
from graphcert.core.exceptions import GraphCertError
from graphcert.utils.bounds import (
    commutation_sum_bound,
    commutation_sum_numeric_max,
    commutation_sum_rank2_max,
    fidelity_threshold,
    operator_identity_check,
    vieta_sum,
)
from graphcert.utils.certificate import build_certificate
from graphcert.utils.finite_field import is_prime
from graphcert.utils.graph_state import dense_expectation, dense_state, expectation
from graphcert.utils.multigraph import Multigraph
from graphcert.utils.normalization import check_preconditions, normalize
from graphcert.utils.pauli import PauliWord
from graphcert.utils.verifier import verify_certificate

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SelftestReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render_text(self) -> str:
        lines = [f"{'ok  ' if c.passed else 'FAIL'} {c.name} {c.detail}".rstrip() for c in self.checks]
        lines.append("all checks passed" if self.passed else "self-test FAILED")
        return "\n".join(lines) + "\n"


def _primes(max_d: int) -> List[int]:
    return [p for p in range(2, max_d + 1) if is_prime(p)]


def _random_graph(rng: np.random.Generator, d: int, n: int) -> Multigraph:
    upper = np.triu(rng.integers(0, d, size=(n, n)), 1)
    return Multigraph.from_matrix(d, (upper + upper.T).tolist())


def _commutation_sum_checks(max_d: int, fault: bool) -> List[CheckResult]:
    results = []
    shift = 1.0 if fault else 0.0
    for d in _primes(max_d):
        bound = commutation_sum_bound(d)
        worst = 0.0
        for q in range(1, d):
            worst = max(
                worst,
                abs(commutation_sum_numeric_max(d, q) + shift - bound),
                abs(commutation_sum_rank2_max(d, q) - bound),
            )
        results.append(
            CheckResult(f"commutation sum d={d}", worst <= settings.TOLERANCE, f"max error {worst:.3g}")
        )
    return results


def _vieta_checks(max_d: int) -> List[CheckResult]:
    results = []
    for d in _primes(min(max_d, 11)):
        worst = max(abs(vieta_sum(d, q, k)) for q in range(1, d) for k in range(1, d))
        results.append(CheckResult(f"vieta sums d={d}", worst <= settings.TOLERANCE, f"max {worst:.3g}"))
    for d in _primes(min(max_d, 7)):
        ok = True
        for q in range(1, d):
            for l1 in (0.5, 1.0, 2.0):
                for l2 in (0.5, 1.0, 2.0):
                    for reps in (1, 2):
                        dev = operator_identity_check(d, q, l1, l2, reps)
                        ok = ok and dev <= settings.IDENTITY_TOLERANCE * (l1 + l2) ** (reps * d)
        results.append(CheckResult(f"operator identity d={d}", ok))
    return results


def _monotonicity_checks(max_d: int, max_q: int = 6) -> List[CheckResult]:
    """delta_max must not grow as the chain of overlaps gets longer."""
    results = []
    for d in _primes(max_d):
        deltas = [fidelity_threshold(d, q).delta_max for q in range(1, max_q + 1)]
        steps = [later - earlier for earlier, later in zip(deltas, deltas[1:])]
        worst = max(steps)
        results.append(
            CheckResult(f"delta_max monotone in q d={d}", worst <= 0.0, f"max increase {worst:.3g}")
        )
    return results


def _oracle_checks(rng: np.random.Generator, fault: bool, words: int) -> List[CheckResult]:
    results = []
    for d, n in ((2, 3), (3, 3), (3, 4)):
        graph = _random_graph(rng, d, n)
        state = dense_state(graph)
        worst = 0.0
        for _ in range(words):
            word = PauliWord(d, 0, tuple(tuple(int(v) for v in rng.integers(0, d, 2)) for _ in range(n)))
            value = expectation(graph, word).value
            if fault:
                value += 1.0
            worst = max(worst, abs(value - dense_expectation(graph, word, state)))
        results.append(
            CheckResult(f"oracle d={d} n={n}", worst <= settings.ORACLE_TOLERANCE, f"max error {worst:.3g}")
        )
    return results


def _roundtrip_checks(rng: np.random.Generator, graphs: int) -> List[CheckResult]:
    accepted = total = 0
    for _ in range(graphs):
        d = int(rng.choice([2, 3, 5]))
        graph = _random_graph(rng, d, int(rng.integers(3, 6)))
        if not check_preconditions(graph):
            continue
        total += 1
        try:
            result = normalize(graph)
            cert = build_certificate(result.graph, result.case, source=graph, log=result.log)
        except GraphCertError as e:
            logger.warning(f"Certificate construction failed: {e.detail}")
            continue
        accepted += verify_certificate(cert).accepted
    return [CheckResult("certificate round trip", accepted == total, f"{accepted}/{total}")]


def run_selftest(
    max_d: Optional[int] = None,
    seed: Optional[int] = None,
    fault: bool = False,
    words: int = 500,
    graphs: int = 30,
) -> SelftestReport:
    max_d = settings.SELFTEST_MAX_D if max_d is None else max_d
    seed = settings.DEFAULT_SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    logger.info(f"Running self-test with max_d={max_d}, seed={seed}")

    report = SelftestReport()
    report.checks.extend(_commutation_sum_checks(max_d, fault))
    report.checks.extend(_vieta_checks(max_d))
    report.checks.extend(_monotonicity_checks(max_d))
    report.checks.extend(_oracle_checks(rng, fault, words))
    report.checks.extend(_roundtrip_checks(rng, graphs))
    for check in report.checks:
        if not check.passed:
            logger.warning(f"Self-test check failed: {check.name} {check.detail}")
    return report
