"""graphbase: a self-hostable archive for graph datasets.

Store graphs persistently under permanent ids, parse and cross-convert
GML / GraphML / DIMACS / Matrix Market files with explicit loss reports,
analyze structural properties automatically in the background, annotate
with tags, comments and references, search by any combination of
properties and annotations, and reproduce benchmark collections with the
bundled generators.
"""

from .model import (EdgeRecord, Graph, Metadata, NodeRecord, Reference, Tag,
                    build_graph, degree_sequence, labeled_signature,
                    structurally_equal)

__version__ = "0.1.0"

__all__ = [
    "Graph", "NodeRecord", "EdgeRecord", "Metadata", "Tag", "Reference",
    "build_graph", "labeled_signature", "degree_sequence",
    "structurally_equal", "__version__",
]
