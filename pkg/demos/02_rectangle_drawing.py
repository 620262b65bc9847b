"""Draw a staged instance as points and axis-parallel rectangles.

Each vertex becomes a point in the plane and each edge a closed
rectangle whose intersection with the point set is exactly the edge;
the members of any one edge ascend (left-to-right is also bottom-to-
top).  The nested variant re-realizes the same pair instance so the
rectangle family is laminar: any two of its y-projections are disjoint
or one contains the other.

Run:  python3 demos/02_rectangle_drawing.py
Writes: plain.svg, nested.svg (in the working directory)
"""

from pathlib import Path

from chromarect import build_Hkc, realize_Hkc, realize_Hkc_nested
from chromarect.geometry import (
    emit_svg,
    is_ascending,
    is_nested,
    verify_realization,
    y_projections,
)

S = build_Hkc(2, 2)

R = realize_Hkc(S)
print(f"plain realization: {len(R.points)} points, {len(R.rects)} rectangles")
assert all(is_ascending([R.points[v] for v in e]) for e in S.base.edges)
for p in R.points[:4]:
    print(f"  point x={p.x}  y={p.y}")

verify_realization(R)  # raises if any rectangle misses or over-captures
print("incidence check: every rectangle captures exactly its edge")

N = realize_Hkc_nested(S)
verify_realization(N)
assert is_nested(y_projections(N))
print(f"nested realization: same {len(N.points)} points, "
      f"{len(N.rects)} laminar rectangles")

# Same points in the same x-order, different rectangle geometry.
assert [p.x for p in R.points] == [p.x for p in N.points]

for name, real in (("plain.svg", R), ("nested.svg", N)):
    Path(name).write_bytes(emit_svg(real))
    print(f"wrote {name}")
