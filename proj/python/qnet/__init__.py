"""Quantum network entanglement analysis."""

from ._qnet import (
    Network,
    NetworkError,
    characteristic_vector,
    doubled_entropy,
    dual_total_correlation,
    entropy,
    lu_equivalent,
    marginal_entanglement,
    max_flow,
    min_cut,
    monogamy,
    oracle_marginal_entropy,
)

__all__ = [
    "Network",
    "NetworkError",
    "characteristic_vector",
    "doubled_entropy",
    "dual_total_correlation",
    "entropy",
    "lu_equivalent",
    "marginal_entanglement",
    "max_flow",
    "min_cut",
    "monogamy",
    "oracle_marginal_entropy",
]
