"""Dominance order on realized points: cover pairs and same-color chains.

Point q dominates p when it is strictly larger in both coordinates, and
(p, q) is a cover pair when no third point sits inside their spanning
box.  The cover graph of any planar point set in general position is
triangle-free, yet for the realized staged instance every 2-coloring
leaves some cover pair monochromatic — the planted rectangle structure
survives as an order-theoretic obstruction.  Longer chains appear once
enough points share a color.

Run:  python3 demos/05_dominance_chains.py
"""

from itertools import product

from chromarect import Coloring, build_Hkc
from chromarect.geometry import dominance_hasse, monochromatic_increasing_path, realize_Hkc

R = realize_Hkc(build_Hkc(2, 2))
pts = R.points
hasse = dominance_hasse(pts)
print(f"{len(pts)} points, {len(hasse.edges)} cover pairs in the dominance order")

# Triangle-free: no three points pairwise in cover relation.
adj = [set() for _ in range(hasse.n)]
for a, b in hasse.edges:
    adj[a].add(b)
    adj[b].add(a)
assert not any(adj[a] & adj[b] for a, b in hasse.edges)
print("cover graph is triangle-free")

# Every 2-coloring leaves a monochromatic cover pair.
worst = None
for bits in product((0, 1), repeat=len(pts)):
    mono = [(a, b) for a, b in hasse.edges if bits[a] == bits[b]]
    assert mono, "a proper 2-coloring of the cover graph should not exist"
    if worst is None or len(mono) < len(worst[1]):
        worst = (bits, mono)
bits, mono = worst
print(f"best 2-coloring still has {len(mono)} monochromatic cover pairs, "
      f"e.g. {mono[0]}")

# A one-colored point set yields a long increasing chain through covers.
col = Coloring(1, [0] * len(pts))
chain = monochromatic_increasing_path(pts, col, 4)
assert chain is not None
print(f"single-color chain of 4: {chain}")
print("  " + " -> ".join(f"({p.x}, {p.y})" for p in (pts[i] for i in chain)))

# With two colors, length-2 chains (a monochromatic cover pair) are
# unavoidable here, but length-12 ones obviously are not:
col2 = Coloring(2, [i % 2 for i in range(len(pts))])
print(f"alternating coloring, ask for 12: "
      f"{monochromatic_increasing_path(pts, col2, 12)}")
