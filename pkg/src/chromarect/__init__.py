"""chromarect: staged hypergraphs with prescribed chromatic number, their
axis-parallel rectangle realizations, and arithmetic-progression encodings.

The usual entry points:

- :func:`chromarect.construction.build_Hkc` / ``build_Gcg`` — build the
  staged instances.
- :func:`chromarect.geometry.realize_Hkc` / ``realize_Hkc_nested`` /
  ``realize_Gcg`` — draw them as points and rectangles.
- :func:`chromarect.arithmetic.rects_to_pow2_aps` / ``rects_to_D_aps`` —
  re-encode nested drawings as arithmetic progressions.
- ``python -m chromarect.cli`` (or the ``chromarect`` script) — the same
  pipelines as commands; ``chromarect selftest`` runs the acceptance suite.
"""

from .construction import build_Gcg, build_Hkc, find_monochromatic_edge
from .geometry import realize_Gcg, realize_Hkc, realize_Hkc_nested
from .hypergraph import (
    Coloring,
    OrderedHypergraph,
    chromatic_number,
    hypergraph_girth,
    is_proper_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "OrderedHypergraph",
    "build_Gcg",
    "build_Hkc",
    "chromatic_number",
    "find_monochromatic_edge",
    "hypergraph_girth",
    "is_proper_coloring",
    "realize_Gcg",
    "realize_Hkc",
    "realize_Hkc_nested",
    "__version__",
]
