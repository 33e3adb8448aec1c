"""Competition-realizers of graphs: p-row graphs, certificates and exact search."""

from pcomp.graph import Graph, VertexPartition, condensation, diameter
from pcomp.matrix import BinaryMatrix, Digraph, p_row_graph
from pcomp.certificates import Certificate, verify
from pcomp.solver import (
    SearchBudget,
    Verdict,
    RealizerReport,
    apply_filters,
    decide,
    realizer,
)

__all__ = [
    "Graph",
    "VertexPartition",
    "condensation",
    "diameter",
    "BinaryMatrix",
    "Digraph",
    "p_row_graph",
    "Certificate",
    "verify",
    "SearchBudget",
    "Verdict",
    "RealizerReport",
    "apply_filters",
    "decide",
    "realizer",
]

__version__ = "0.1.0"
