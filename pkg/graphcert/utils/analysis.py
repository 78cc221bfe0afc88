"""Parse, normalize, certify, verify and bound a graph in one pass."""
import logging
from typing import Optional

from graphcert.core.exceptions import InternalCheckFailed, PreconditionFailed
from graphcert.models.certificate import EdgeModel
from graphcert.models.report import AnalysisReport, GraphSummary
from graphcert.utils.bounds import fidelity_threshold
from graphcert.utils.certificate import build_certificate
from graphcert.utils.multigraph import Multigraph
from graphcert.utils.normalization import NOT_COVERED, check_preconditions, normalize, q_overlap
from graphcert.utils.verifier import verify_certificate

logger = logging.getLogger(__name__)


def _edges(graph: Multigraph):
    return [EdgeModel(u=u, v=v, w=w) for u, v, w in graph.edges()]


def analyze_graph(graph: Multigraph, certificate_path: Optional[str] = None) -> AnalysisReport:
    logger.info(f"Analyzing graph with d={graph.d}, n={graph.n}")
    if not check_preconditions(graph):
        logger.warning("Graph does not meet the preconditions")
        raise PreconditionFailed(NOT_COVERED)

    result = normalize(graph)
    cert = build_certificate(result.graph, result.case, source=graph, log=result.log)
    verdict = verify_certificate(cert)
    if not verdict.accepted:
        raise InternalCheckFailed(f"certificate {verdict.describe()}")

    q = q_overlap(result.graph, result.case)
    return AnalysisReport(
        graph=GraphSummary(d=graph.d, n=graph.n, edges=_edges(graph)),
        preconditions=True,
        case=result.case.value,
        normalization=cert.normalization,
        normalized_edges=_edges(result.graph),
        accepted=verdict.accepted,
        claim_count=len(cert.claims),
        step_count=len(cert.steps),
        q_overlap=q,
        fidelity=fidelity_threshold(graph.d, q),
        certificate_path=certificate_path,
        certificate=cert,
    )
