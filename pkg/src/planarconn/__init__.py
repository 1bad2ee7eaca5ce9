"""Decremental planar-graph connectivity toolkit.

Embedded planar multigraphs with rotation systems, face-preserving
separator trees, a dynamic separating-4-cycle detector, SPQR-tree and
BC-tree maintenance under edge deletions and contractions, constant-time
bi-/triconnectivity queries, brute-force oracles, and a
verification/benchmark CLI.
"""

from planarconn.embed import (
    EmbeddedMultigraph,
    EmbedError,
    EulerViolation,
    GraphFormatError,
    MalformedRotation,
    NotOnFace,
    SelfLoopContraction,
    UnknownEdge,
    parse_graph_text,
    write_graph_text,
)

__all__ = [
    "EmbeddedMultigraph",
    "EmbedError",
    "EulerViolation",
    "GraphFormatError",
    "MalformedRotation",
    "NotOnFace",
    "SelfLoopContraction",
    "UnknownEdge",
    "parse_graph_text",
    "write_graph_text",
]

__version__ = "0.1.0"
