"""Exact-rational planar realization of the staged hypergraphs.

Every constructed instance is drawn as points and axis-parallel closed
rectangles so that each rectangle contains exactly the points of its edge.
The drawing is two-phase:

* Phase 1 places stages on horizontal lines (children strictly between
  their parent's line and the next line below, at x strictly between the
  parent and its current x-predecessor), which makes every root-to-leaf
  path an ascending point set isolated by its bounding box.

* Phase 2 pushes each stage's points off the shared line into a thin band
  just below it, one disjoint sub-band per block, ordering each block's
  points like the recursive realization of the embedded copy.  This
  removes all y-ties while x-coordinates stay put.

All "slightly" / "thin enough" choices are concrete midpoint arithmetic,
and the builder re-verifies its own incidence before returning (sampling
on instances too large for a full pass).  Coordinates are exact
``fractions.Fraction`` values throughout; no floating point is involved
anywhere except SVG output formatting.
"""

from __future__ import annotations

import random
import warnings
from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence

from .construction import StagedHypergraph
from .errors import DomainError, VerificationError
from .hypergraph import Coloring, OrderedHypergraph

Rational = Fraction
HALF = Fraction(1, 2)
ZERO = Fraction(0)

# Full incidence verification is quadratic-ish; beyond this many edges the
# realizer verifies a seeded sample instead (the check every huge instance
# gets in acceptance anyway).
FULL_VERIFY_EDGE_LIMIT = 100_000
SAMPLE_VERIFY_COUNT = 1000
_SAMPLE_SEED = 17


class Point2(NamedTuple):
    x: Fraction
    y: Fraction


class Rect(NamedTuple):
    """Closed axis-parallel box."""

    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def contains(self, p: Point2) -> bool:
        return self.x_lo <= p.x <= self.x_hi and self.y_lo <= p.y <= self.y_hi


def make_rect(x_lo, x_hi, y_lo, y_hi) -> Rect:
    if x_lo > x_hi or y_lo > y_hi:
        raise DomainError("rectangle bounds out of order")
    return Rect(x_lo, x_hi, y_lo, y_hi)


class Interval(NamedTuple):
    """Half-open interval [lo, hi)."""

    lo: Fraction
    hi: Fraction


class _MidpointRects(Sequence):
    """One rectangle per edge, computed on demand: the bounding box of the
    edge's points, each side pushed out to the midpoint with the nearest
    excluded coordinate (or by 1/2 past a global extreme)."""

    def __init__(self, edges, xs_sorted, ys_sorted, x_rank, y_rank):
        self._edges = edges
        self._xs = xs_sorted
        self._ys = ys_sorted
        self._xr = x_rank
        self._yr = y_rank

    def __len__(self) -> int:
        return len(self._edges)

    def rank_window(self, e: int):
        """((x_lo_rank, x_hi_rank), (y_lo_rank, y_hi_rank)) of edge e's box."""
        members = self._edges[e]
        xr, yr = self._xr, self._yr
        xw = [xr[u] for u in members]
        yw = [yr[u] for u in members]
        return (min(xw), max(xw)), (min(yw), max(yw))

    def __getitem__(self, e: int) -> Rect:
        if isinstance(e, slice):
            return [self[i] for i in range(*e.indices(len(self)))]
        if e < 0:
            e += len(self)
        if not 0 <= e < len(self):
            raise IndexError(e)
        if not self._edges[e]:
            raise DomainError("empty edge has no rectangle", edge=e)
        (i0, i1), (j0, j1) = self.rank_window(e)
        return Rect(
            _expand_lo(self._xs, i0),
            _expand_hi(self._xs, i1),
            _expand_lo(self._ys, j0),
            _expand_hi(self._ys, j1),
        )


def _expand_lo(sorted_vals, i):
    return sorted_vals[0] - HALF if i == 0 else (sorted_vals[i - 1] + sorted_vals[i]) / 2


def _expand_hi(sorted_vals, i):
    last = len(sorted_vals) - 1
    return sorted_vals[last] + HALF if i == last else (sorted_vals[i] + sorted_vals[i + 1]) / 2


class Realization:
    """Points (aligned with vertex indices), one rectangle per edge
    (aligned via ``edge_of_rect``), and the hypergraph they realize.

    The central invariant — for every edge e, ``rects[r] ∩ points`` is
    exactly e's vertex set, where ``edge_of_rect[r] == e`` — is established
    by the builder running :func:`verify_realization`, never assumed.
    """

    __slots__ = (
        "points",
        "rects",
        "edge_of_rect",
        "hypergraph",
        "_x_ids",
        "_y_ids",
        "_x_rank",
        "_y_rank",
    )

    def __init__(self, points, rects, edge_of_rect, hypergraph=None, _caches=None):
        self.points = points
        self.rects = rects
        self.edge_of_rect = edge_of_rect
        self.hypergraph = hypergraph
        if _caches:
            self._x_ids, self._y_ids, self._x_rank, self._y_rank = _caches
        else:
            self._x_ids = self._y_ids = self._x_rank = self._y_rank = None

    def to_json_dict(self) -> dict:
        return {
            "points": [[str(p.x), str(p.y)] for p in self.points],
            "rects": [
                [str(r.x_lo), str(r.x_hi), str(r.y_lo), str(r.y_hi)]
                for r in self.rects
            ],
            "edge_of_rect": list(self.edge_of_rect),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Realization":
        try:
            points = [Point2(Fraction(x), Fraction(y)) for x, y in d["points"]]
            rects = [
                make_rect(Fraction(a), Fraction(b), Fraction(c), Fraction(e))
                for a, b, c, e in d["rects"]
            ]
            edge_of_rect = [int(i) for i in d["edge_of_rect"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed realization JSON: {exc}")
        if len(rects) != len(edge_of_rect):
            raise DomainError("edge_of_rect must label every rectangle")
        return cls(points, rects, edge_of_rect)


# ---------------------------------------------------------------------------
# incidence


def incidence_hypergraph(points: Sequence[Point2], rects: Sequence[Rect]) -> OrderedHypergraph:
    """The hypergraph a drawing induces: vertices are the points in x-order
    (ties by y), one edge per rectangle listing the points it contains.
    Empty and repeated edges are preserved; empties additionally get a
    warning so multiset comparisons stay explicit."""
    if len(set(points)) != len(points):
        raise DomainError("points must be pairwise distinct")
    order = sorted(range(len(points)), key=lambda i: points[i])
    rank = [0] * len(points)
    for pos, i in enumerate(order):
        rank[i] = pos
    edges = []
    empties = []
    for ri, r in enumerate(rects):
        members = tuple(
            sorted(rank[i] for i, p in enumerate(points) if r.contains(p))
        )
        if not members:
            empties.append(ri)
        edges.append(members)
    if empties:
        warnings.warn(f"rectangles with no points: {empties}", stacklevel=2)
    return OrderedHypergraph(len(points), edges)


def relabel_to_x_order(H: OrderedHypergraph, points: Sequence[Point2]) -> OrderedHypergraph:
    """Rewrite H's vertex labels from point indices to x-order ranks (ties
    by y) — the labeling incidence_hypergraph uses.  This is the bridge
    between a builder's creation-order vertex ids and drawing-derived
    hypergraphs."""
    if H.n != len(points):
        raise DomainError("point count must match vertex count")
    order = sorted(range(len(points)), key=lambda i: points[i])
    rank = [0] * len(points)
    for pos, i in enumerate(order):
        rank[i] = pos
    return OrderedHypergraph(H.n, [tuple(sorted(rank[u] for u in e)) for e in H.edges])


def verify_realization(
    R: Realization, sample_count: Optional[int] = None, seed: int = 0
) -> None:
    """Check rects[r] ∩ points == edge members for every rectangle (or a
    seeded sample of them).  Raises VerificationError on any mismatch."""
    H = R.hypergraph
    if H is None:
        raise DomainError("realization carries no hypergraph to verify against")
    n_r = len(R.rects)
    if sorted(R.edge_of_rect) != list(range(len(H.edges))) or n_r != len(H.edges):
        raise DomainError("edge_of_rect must be a bijection onto edge indices")
    indices = range(n_r)
    if sample_count is not None and sample_count < n_r:
        indices = random.Random(seed).sample(range(n_r), sample_count)
    fast = R._x_ids is not None and isinstance(R.rects, _MidpointRects)
    for r in indices:
        e = R.edge_of_rect[r]
        expect = H.edges[e]
        if fast:
            got = _members_by_rank_window(R, e)
        else:
            rect = R.rects[r]
            got = tuple(
                i for i, p in enumerate(R.points) if rect.contains(p)
            )
        if tuple(got) != tuple(expect):
            raise VerificationError(
                "rectangle does not capture its edge exactly",
                rect=r,
                edge=e,
                expected=list(expect),
                got=list(got),
            )


def _members_by_rank_window(R: Realization, e: int) -> tuple:
    """Points inside edge e's midpoint-expanded box, via the sorted x-index:
    scan the x-rank window and filter by y-rank — integer work only."""
    (i0, i1), (j0, j1) = R.rects.rank_window(e)
    x_ids, y_rank = R._x_ids, R._y_rank
    got = [
        v for v in x_ids[i0 : i1 + 1] if j0 <= y_rank[v] <= j1
    ]
    got.sort()
    return tuple(got)


# ---------------------------------------------------------------------------
# the two-phase realizer


def _phase1(S: StagedHypergraph):
    """x-coordinates, the stage lines, and the final left-to-right order."""
    n = S.n
    xs: List[Optional[Fraction]] = [None] * n
    pred = array("l", [-2]) * n  # -2 = unplaced, -1 = leftmost
    succ = array("l", [-2]) * n
    n_stages = len(S.stages)
    line_y: List[Optional[Fraction]] = [None] * n_stages
    line_next = array("l", [-1]) * n_stages

    s0 = S.stages[0]
    head = s0.start
    for i, v in enumerate(s0.vertices):
        xs[v] = Fraction(i)
        pred[v] = v - 1 if i else -1
        succ[v] = v + 1 if i + 1 < s0.size else -1
    line_y[0] = ZERO

    parent = S.parent
    for sid in range(n_stages):
        stage = S.stages[sid]
        r = stage.n_children
        if r == 0:
            continue
        # new lines strictly between this stage's line and the next below
        below = line_next[sid]
        h = line_y[sid] - line_y[below] if below >= 0 else Fraction(1)
        first = stage.first_child
        y0 = line_y[sid]
        for t in range(r):
            line_y[first + t] = y0 - (t + 1) * h / (r + 1)
            line_next[first + t] = first + t + 1
        line_next[first + r - 1] = below
        line_next[sid] = first

        # group the child vertices by parent, keeping line order
        by_parent: Dict[int, list] = {}
        for t in range(r):
            child_stage = S.stages[first + t]
            base = child_stage.start
            for b in range(child_stage.size):
                ch = base + b
                by_parent.setdefault(parent[ch], []).append((t, ch))

        fracs = [Fraction(i, r + 1) for i in range(1, r + 1)]
        for v in stage.vertices:
            lst = by_parent.get(v)
            if not lst:
                continue
            pv = pred[v]
            xw = xs[pv] if pv >= 0 else xs[v] - 1
            delta = xs[v] - xw
            prev = pv
            for t, ch in lst:
                xs[ch] = xw + delta * fracs[t]
                pred[ch] = prev
                if prev >= 0:
                    succ[prev] = ch
                else:
                    head = ch
                prev = ch
            succ[prev] = v
            pred[v] = prev
    return xs, line_y, line_next, head, succ


def _y_ranks_of_points(points: Sequence[Point2]) -> List[int]:
    order = sorted(range(len(points)), key=lambda i: (points[i].y, i))
    ranks = [0] * len(points)
    for pos, i in enumerate(order):
        ranks[i] = pos
    return ranks


def _phase2(S: StagedHypergraph, line_y, line_next):
    """y-coordinates: per-stage bands of height gap/4 below each line, one
    sub-band per block, points ordered inside like the embedded copy's own
    realization (identity order when there is no copy).  Returns the ys and
    the stage ids from the top line down."""
    n = S.n
    ys: List[Optional[Fraction]] = [None] * n

    if S.copy_template is not None:
        template_ranks = _y_ranks_of_points(_realize_points(S.copy_template))
    else:
        template_ranks = None

    stage_top_down = []
    sid = 0
    while sid >= 0:
        stage_top_down.append(sid)
        stage = S.stages[sid]
        below = line_next[sid]
        gap = line_y[sid] - line_y[below] if below >= 0 else Fraction(1)
        if stage.blocks:
            nblocks, bsize = stage.blocks, stage.block_size
            ranks = template_ranks if template_ranks is not None else range(bsize)
        else:
            nblocks, bsize = 1, stage.size  # blockless stage: one flat band
            ranks = range(bsize)
        span = gap / (4 * nblocks)
        offs = [(rk + 1) * span / (bsize + 1) for rk in ranks]
        top = line_y[sid]
        for b in range(nblocks):
            bot = top - (b + 1) * span
            base = stage.start + b * bsize
            for i in range(bsize):
                ys[base + i] = bot + offs[i]
        sid = below
    return ys, stage_top_down


def _realize_points(S: StagedHypergraph) -> List[Point2]:
    xs, line_y, line_next, _head, _succ = _phase1(S)
    ys, _ = _phase2(S, line_y, line_next)
    return [Point2(x, y) for x, y in zip(xs, ys)]


def _rank_desc_positions(S: StagedHypergraph) -> List[int]:
    """Block positions from highest to lowest y, per the copy ordering."""
    if S.copy_template is not None:
        ranks = _y_ranks_of_points(_realize_points(S.copy_template))
        return sorted(range(len(ranks)), key=lambda i: ranks[i], reverse=True)
    return []


def _realize(S: StagedHypergraph, nested: bool) -> Realization:
    xs, line_y, line_next, head, succ = _phase1(S)
    ys, stage_top_down = _phase2(S, line_y, line_next)
    n = S.n
    points = [Point2(x, y) for x, y in zip(xs, ys)]

    # left-to-right order by walking the placement list (no coordinate sort)
    x_ids = array("l", [0]) * n
    x_rank = array("l", [0]) * n
    v, i = head, 0
    while v >= 0:
        x_ids[i] = v
        x_rank[v] = i
        v = succ[v]
        i += 1
    if i != n:
        raise VerificationError("placement list does not cover all points")

    # top-to-bottom order analytically: stages by line, blocks top first,
    # within a block by descending copy rank
    y_ids = array("l", [0]) * n
    y_rank = array("l", [0]) * n
    desc = _rank_desc_positions(S)
    pos = 0
    for sid in stage_top_down:
        stage = S.stages[sid]
        if stage.blocks:
            nblocks, bsize = stage.blocks, stage.block_size
            positions = desc if desc else list(range(bsize - 1, -1, -1))
        else:
            nblocks, bsize = 1, stage.size
            positions = list(range(bsize - 1, -1, -1))
        for b in range(nblocks):
            base = stage.start + b * bsize
            for p in positions:
                y_ids[n - 1 - pos] = base + p  # filling ascending order
                pos += 1
    for i in range(n):
        y_rank[y_ids[i]] = i

    xs_sorted = [xs[x_ids[i]] for i in range(n)]
    ys_sorted = [ys[y_ids[i]] for i in range(n)]

    edges = S.base.edges
    plain = _MidpointRects(edges, xs_sorted, ys_sorted, x_rank, y_rank)
    if not nested:
        rects: Sequence = plain
    else:
        rects = _nested_rects(S, plain, line_y, line_next, ys, x_rank, y_rank)
    R = Realization(
        points,
        rects,
        range(len(edges)),
        S.base,
        _caches=(x_ids, y_ids, x_rank, y_rank),
    )
    if len(edges) <= FULL_VERIFY_EDGE_LIMIT:
        verify_realization(R)
    else:
        verify_realization(R, sample_count=SAMPLE_VERIFY_COUNT, seed=_SAMPLE_SEED)
    return R


def _nested_rects(S, plain: _MidpointRects, line_y, line_next, ys, x_rank, y_rank):
    """Rectangles for the nested variant: path rectangles share their top
    at the root line and reach down half the leaf stage's gap; transversal
    rectangles are squeezed into their block's sub-band."""
    n_path = len(S.path_edges)
    edges = S.base.edges
    rects: List[Rect] = []
    last_level = S.levels[-1]
    for e in range(n_path):
        leaf = last_level.first_vertex + e
        sid = S.stage_of_vertex(leaf).id
        below = line_next[sid]
        gap = line_y[sid] - line_y[below] if below >= 0 else Fraction(1)
        base = plain[e]
        rects.append(Rect(base.x_lo, base.x_hi, line_y[sid] - gap / 2, ZERO))
    for tag in S.transversal_edges:
        stage = S.stages[tag.stage]
        below = line_next[tag.stage]
        gap = line_y[tag.stage] - line_y[below] if below >= 0 else Fraction(1)
        nblocks = stage.blocks if stage.blocks else 1
        bsize = stage.block_size if stage.blocks else stage.size
        span = gap / (4 * nblocks)
        band_top = line_y[tag.stage] - tag.block * span
        band_bot = band_top - span
        base = plain[tag.edge]
        members = edges[tag.edge]
        block_lo = stage.start + tag.block * bsize
        block = range(block_lo, block_lo + bsize)
        min_y = min(ys[u] for u in members)
        max_y = max(ys[u] for u in members)
        lower = [ys[u] for u in block if ys[u] < min_y]
        upper = [ys[u] for u in block if ys[u] > max_y]
        y_lo = (max(lower) + min_y) / 2 if lower else (band_bot + min_y) / 2
        y_hi = (min(upper) + max_y) / 2 if upper else (band_top + max_y) / 2
        rects.append(Rect(base.x_lo, base.x_hi, y_lo, y_hi))
    return rects


def realize_Hkc(S: StagedHypergraph) -> Realization:
    """Point/rectangle drawing of a staged k-uniform instance; every edge's
    rectangle captures exactly its k (ascending) member points."""
    if S.kind != "hkc":
        raise DomainError("expected an instance from the staged k-uniform builder")
    return _realize(S, nested=False)


def realize_Hkc_nested(S: StagedHypergraph) -> Realization:
    """As realize_Hkc, but rectangle y-projections form a nested family:
    path rectangles share one top boundary at the root line, transversal
    rectangles hide inside their block's sub-band."""
    if S.kind != "hkc":
        raise DomainError("expected an instance from the staged k-uniform builder")
    R = _realize(S, nested=True)
    projections = [Interval(r.y_lo, r.y_hi) for r in R.rects]
    if not is_nested(projections):
        raise VerificationError("y-projections failed the nested check")
    return R


def realize_Gcg(G: StagedHypergraph) -> Realization:
    """Drawing of a large-girth instance: parent-child edges as two-point
    rectangles, stage-internal copies per the Phase-2 band discipline."""
    if G.kind != "gcg":
        raise DomainError("expected an instance from the girth-graph builder")
    return _realize(G, nested=False)


# ---------------------------------------------------------------------------
# predicates


def is_ascending(points: Sequence[Point2]) -> bool:
    """Whether x-order and y-order agree (both strict)."""
    order = sorted(points)
    for a, b in zip(order, order[1:]):
        if not (a.x < b.x and a.y < b.y):
            return False
    return True


def is_nested(intervals: Sequence) -> bool:
    """Whether every two half-open intervals are disjoint or one contains
    the other.  Duplicates count as nested."""
    ivs = [Interval(lo, hi) for lo, hi in intervals]
    ivs.sort(key=lambda iv: (iv.lo, -(iv.hi - iv.lo)))
    stack: List[Interval] = []
    for iv in ivs:
        while stack and stack[-1].hi <= iv.lo:
            stack.pop()
        if stack and iv.hi > stack[-1].hi:
            return False  # straddles the enclosing interval's right end
        stack.append(iv)
    return True


def y_projections(R: Realization) -> List[Interval]:
    """Half-open y-projections of the rectangles.  The conversion from
    closed boxes is safe only when no point sits on a projection endpoint;
    that is checked here."""
    point_ys = {p.y for p in R.points}
    out = []
    for r in R.rects:
        if r.y_hi in point_ys:
            raise VerificationError(
                "a point lies on a rectangle's upper y-boundary; half-open "
                "projection would change membership"
            )
        out.append(Interval(r.y_lo, r.y_hi))
    return out


# ---------------------------------------------------------------------------
# perfect nested families


@dataclass
class _Node:
    lo: Fraction
    hi: Fraction
    children: List["_Node"] = field(default_factory=list)
    inputs: List[int] = field(default_factory=list)
    label: str = ""


@dataclass
class PerfectNestedFamily:
    """A complete nested binary family: intervals I_s for every binary
    string s with |s| ≤ depth−1, I_s = I_{s0} ∪ I_{s1}, together with the
    label each input interval landed on and a leaf label per point."""

    depth: int
    interval_of: Dict[str, Interval]
    input_labels: List[Optional[str]]
    point_labels: List[str]


def extend_to_perfect_nested(
    family: Sequence,
    points_y: Sequence[Fraction],
    strict_root: bool = False,
) -> PerfectNestedFamily:
    """Grow a nested interval family into a perfect one.

    Gap children make every node's children a partition; leaves holding
    more than one distinct point value are split at value midpoints (only
    as needed); sibling lists are left-binarized; leaves are padded with
    left-chains (empty right siblings) to a uniform depth.  Each input
    interval keeps a node label; each point gets the label of its depth
    t−1 leaf, so input-interval membership becomes label-prefix testing.

    ``strict_root`` forces the root to strictly contain every input
    interval (so every input label has length ≥ 1), which the general
    difference-set translation needs.
    """
    ivs = [Interval(lo, hi) for lo, hi in family]
    if not is_nested(ivs):
        raise DomainError("interval family is not nested")
    nonempty = [(iv, i) for i, iv in enumerate(ivs) if iv.lo < iv.hi]
    if not nonempty and not points_y:
        raise DomainError("nothing to extend: no intervals, no points")

    lows = [iv.lo for iv, _ in nonempty]
    if points_y:
        lows = lows + [min(points_y)]
    lo = min(lows)
    hi = max([iv.hi for iv, _ in nonempty], default=lo)
    if points_y and max(points_y) >= hi:
        hi = max(points_y) + 1
    if strict_root and any(iv == (lo, hi) for iv, _ in nonempty):
        hi = hi + 1

    root = _Node(lo, hi)
    # containment forest: sort by (lo asc, hi desc); a stack gives parents
    uniq: Dict[Interval, _Node] = {}
    order = sorted(set(iv for iv, _ in nonempty), key=lambda iv: (iv.lo, -iv.hi))
    stack = [root]
    for iv in order:
        while not (stack[-1].lo <= iv.lo and iv.hi <= stack[-1].hi):
            stack.pop()
        if (iv.lo, iv.hi) == (stack[-1].lo, stack[-1].hi):
            uniq[iv] = stack[-1]  # duplicate of its parent: share the node
            continue
        node = _Node(iv.lo, iv.hi)
        stack[-1].children.append(node)
        uniq[iv] = node
        stack.append(node)
    for iv, i in nonempty:
        uniq[iv].inputs.append(i)

    pts = sorted(set(points_y))
    _complete(root, pts)
    depth = _max_depth(root)
    _pad_uniform(root, depth)
    _assign_labels(root, "")

    interval_of: Dict[str, Interval] = {}
    input_labels: List[Optional[str]] = [None] * len(ivs)
    _collect(root, interval_of, input_labels)
    point_labels = [_leaf_label(root, y, depth) for y in points_y]
    return PerfectNestedFamily(depth + 1, interval_of, input_labels, point_labels)


def _complete(node: _Node, pts: List[Fraction]) -> None:
    """Gap children, point-splitting of leaves, then left-binarization."""
    inside = [y for y in pts if node.lo <= y < node.hi]
    if not node.children:
        if len(inside) > 1:
            h = len(inside) // 2
            mid = (inside[h - 1] + inside[h]) / 2
            node.children = [_Node(node.lo, mid), _Node(mid, node.hi)]
            for ch in node.children:
                _complete(ch, inside)
        return
    node.children.sort(key=lambda c: c.lo)
    filled: List[_Node] = []
    cursor = node.lo
    for ch in node.children:
        if cursor < ch.lo:
            filled.append(_Node(cursor, ch.lo))
        filled.append(ch)
        cursor = ch.hi
    if cursor < node.hi:
        filled.append(_Node(cursor, node.hi))
    node.children = filled
    for ch in node.children:
        _complete(ch, inside)
    while len(node.children) > 2:
        a, b = node.children[0], node.children[1]
        node.children[:2] = [_Node(a.lo, b.hi, children=[a, b])]
    if len(node.children) == 1:
        only = node.children[0]
        node.children = [only, _Node(node.hi, node.hi)]


def _max_depth(node: _Node) -> int:
    if not node.children:
        return 0
    return 1 + max(_max_depth(c) for c in node.children)


def _pad_uniform(node: _Node, depth: int) -> None:
    if depth == 0:
        return
    if not node.children:
        node.children = [_Node(node.lo, node.hi), _Node(node.hi, node.hi)]
    for c in node.children:
        _pad_uniform(c, depth - 1)


def _assign_labels(node: _Node, label: str) -> None:
    node.label = label
    for bit, c in zip("01", node.children):
        _assign_labels(c, label + bit)


def _collect(node: _Node, interval_of, input_labels) -> None:
    interval_of[node.label] = Interval(node.lo, node.hi)
    for i in node.inputs:
        input_labels[i] = node.label
    for c in node.children:
        _collect(c, interval_of, input_labels)


def _leaf_label(root: _Node, y: Fraction, depth: int) -> str:
    node = root
    if not (node.lo <= y < node.hi):
        raise DomainError("point outside the root interval", y=str(y))
    for _ in range(depth):
        for c in node.children:
            if c.lo <= y < c.hi:
                node = c
                break
        else:
            raise VerificationError("no child interval contains the point")
    return node.label


def is_perfect_nested(fam: PerfectNestedFamily) -> bool:
    """Literal check of the defining equations."""
    t = fam.depth
    for s, iv in fam.interval_of.items():
        if len(s) > t - 1 or any(ch not in "01" for ch in s):
            return False
    for s, iv in fam.interval_of.items():
        if len(s) >= t - 1:
            continue
        a = fam.interval_of.get(s + "0")
        b = fam.interval_of.get(s + "1")
        if a is None or b is None:
            return False
        # union equality for adjacent half-open pieces
        if not (a.lo == iv.lo and (a.hi == b.lo or b.lo == b.hi) and max(a.hi, b.hi) == iv.hi):
            return False
    return is_nested([iv for iv in fam.interval_of.values()])


# ---------------------------------------------------------------------------
# dominance posets


def _check_general_position(points: Sequence[Point2]) -> None:
    if len({p.x for p in points}) != len(points) or len({p.y for p in points}) != len(points):
        raise DomainError("points must have pairwise distinct x and y coordinates")


def dominance_hasse(points: Sequence[Point2]) -> OrderedHypergraph:
    """Cover pairs of the dominance order p < q (x and y both smaller):
    the pairs with no third point strictly inside their spanning box."""
    _check_general_position(points)
    n = len(points)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            p, q = points[i], points[j]
            if p.x > q.x:
                p, q = q, p
            if not (p.x < q.x and p.y < q.y):
                continue
            if any(
                p.x < w.x < q.x and p.y < w.y < q.y
                for k, w in enumerate(points)
                if k != i and k != j
            ):
                continue
            edges.append((i, j))
    return OrderedHypergraph(n, edges)


def monochromatic_increasing_path(
    points: Sequence[Point2], col: Coloring, k: int
) -> Optional[List[int]]:
    """A chain of k same-colored points, consecutive in the dominance
    Hasse diagram, or None.  k counts vertices.  Found by longest-path
    dynamic programming per color class, scanning in x-order."""
    _check_general_position(points)
    if k < 1:
        raise DomainError("chain length must be positive", k=k)
    if len(col.colors) != len(points):
        raise DomainError("coloring length does not match point count")
    hasse = dominance_hasse(points)
    n = len(points)
    preds = [[] for _ in range(n)]
    for a, b in hasse.edges:
        lo, hi = (a, b) if points[a].x < points[b].x else (b, a)
        if col.colors[lo] == col.colors[hi]:
            preds[hi].append(lo)
    order = sorted(range(n), key=lambda i: points[i].x)
    best = [1] * n
    back = [-1] * n
    for v in order:
        for u in preds[v]:
            if best[u] + 1 > best[v]:
                best[v] = best[u] + 1
                back[v] = u
        if best[v] >= k:
            chain = [v]
            while back[chain[-1]] >= 0 and len(chain) < k:
                chain.append(back[chain[-1]])
            return list(reversed(chain))
    return None


# ---------------------------------------------------------------------------
# SVG


@dataclass(frozen=True)
class SvgStyle:
    width: float = 900.0
    margin: float = 40.0
    point_radius: float = 3.0
    stroke_width: float = 1.2
    point_color: str = "#c4442a"
    rect_color: str = "#2a6fc4"


def emit_svg(R: Realization, style: SvgStyle = SvgStyle()) -> bytes:
    """Deterministic SVG: circles for points, hollow strokes for
    rectangles, viewport fitted to the drawing's bounds."""
    if not R.points:
        raise DomainError("cannot draw an empty realization")
    rects = list(R.rects)
    xs = [p.x for p in R.points] + [v for r in rects for v in (r.x_lo, r.x_hi)]
    ys = [p.y for p in R.points] + [v for r in rects for v in (r.y_lo, r.y_hi)]
    x0, x1 = float(min(xs)), float(max(xs))
    y0, y1 = float(min(ys)), float(max(ys))
    span_x = (x1 - x0) or 1.0
    span_y = (y1 - y0) or 1.0
    inner = style.width - 2 * style.margin
    scale = inner / span_x
    height = span_y * scale + 2 * style.margin

    def fx(v: Fraction) -> str:
        return f"{style.margin + (float(v) - x0) * scale:.6f}"

    def fy(v: Fraction) -> str:
        return f"{style.margin + (y1 - float(v)) * scale:.6f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{style.width:.6f}" height="{height:.6f}" '
        f'viewBox="0 0 {style.width:.6f} {height:.6f}">'
    ]
    for r in rects:
        w = f"{(float(r.x_hi) - float(r.x_lo)) * scale:.6f}"
        h = f"{(float(r.y_hi) - float(r.y_lo)) * scale:.6f}"
        out.append(
            f'<rect x="{fx(r.x_lo)}" y="{fy(r.y_hi)}" width="{w}" height="{h}" '
            f'fill="none" stroke="{style.rect_color}" '
            f'stroke-width="{style.stroke_width:.6f}"/>'
        )
    for p in R.points:
        out.append(
            f'<circle cx="{fx(p.x)}" cy="{fy(p.y)}" '
            f'r="{style.point_radius:.6f}" fill="{style.point_color}"/>'
        )
    out.append("</svg>")
    return "\n".join(out).encode("utf-8")
