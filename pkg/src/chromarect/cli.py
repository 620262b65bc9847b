"""Command-line entry point wiring the pipelines together.

One invocation runs one logical pipeline: construct -> realize ->
translate -> verify -> emit.  Artifacts are canonical JSON (sorted keys,
compact separators, trailing newline) or SVG, written bytewise so that
identical argv + seed always produce byte-identical files.

Exit codes: 0 success, 1 domain/verification error (a machine-readable
JSON object describing the error is printed to stderr), 2 resource-limit
error.  Argument errors count as domain errors so that exit code 2 stays
unambiguous.

Every command re-verifies the artifact it is about to emit; nothing is
written with exit 0 unless that check passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .arithmetic import (
    FiniteAP,
    ap_capture_rectangle,
    difference_stream,
    embed_integers,
    rects_to_D_aps,
    rects_to_pow2_aps,
    van_der_corput,
    bit_reverse,
)
from .construction import (
    StagedHypergraph,
    build_Gcg,
    build_Hkc,
    find_monochromatic_edge,
    make_random_provider,
    odd_cycle_supply,
)
from .errors import ChromarectError, DomainError, ResourceLimitError, VerificationError
from .geometry import (
    FULL_VERIFY_EDGE_LIMIT,
    SAMPLE_VERIFY_COUNT,
    Point2,
    Realization,
    SvgStyle,
    dominance_hasse,
    emit_svg,
    monochromatic_increasing_path,
    realize_Gcg,
    realize_Hkc,
    realize_Hkc_nested,
    verify_realization,
)
from .hypergraph import (
    Coloring,
    OrderedHypergraph,
    is_c_colorable,
    is_proper_coloring,
)

DEFAULT_MAX_VERTICES = 10_000_000
DEFAULT_NODE_BUDGET = 1_000_000_000

_STREAM_NAMES = ("primes", "pow2", "pow3")


# ---------------------------------------------------------------------------
# plumbing


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as domain errors (exit 1 with
    JSON on stderr) instead of exiting with status 2, which is reserved
    for resource limits."""

    def error(self, message):
        raise DomainError(f"argument error: {message}")


def _canonical_json(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode(
        "ascii"
    )


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read input: {exc}")
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON in {path}: {exc}")


def _write_artifact(path: Optional[str], data: bytes, stdout) -> None:
    if path is None or path == "-":
        stdout.write(data)
    else:
        try:
            with open(path, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise DomainError(f"cannot write artifact: {exc}")


def _parse_int_list(text: str) -> List[int]:
    """Accept '1,3,7', '[1, 3, 7]' or '{1 3 7}'."""
    cleaned = text.translate(str.maketrans(",;[]{}()", "        "))
    try:
        vals = [int(tok) for tok in cleaned.split()]
    except ValueError:
        raise DomainError(f"expected a list of integers, got {text!r}")
    if not vals:
        raise DomainError("expected a nonempty list of integers")
    return vals


def _parse_points(d) -> List[Point2]:
    """Points from either a realization payload or a bare points payload."""
    if not isinstance(d, dict) or "points" not in d:
        raise DomainError('input must be a JSON object with a "points" field')
    try:
        return [Point2(Fraction(x), Fraction(y)) for x, y in d["points"]]
    except (TypeError, ValueError) as exc:
        raise DomainError(f"malformed point list: {exc}")


def _load_staged(path: str) -> StagedHypergraph:
    return StagedHypergraph.from_json_dict(_load_json(path))


def _load_coloring(path: str) -> Coloring:
    return Coloring.from_json_dict(_load_json(path))


# ---------------------------------------------------------------------------
# command handlers (each returns the process exit code)


def _sample_policy(requested: Optional[int], R: Realization) -> Optional[int]:
    """Explicit --sample wins; otherwise verify fully up to the module
    ceiling and fall back to the standard sample size beyond it."""
    if requested is not None:
        return requested
    if len(R.rects) > FULL_VERIFY_EDGE_LIMIT:
        return SAMPLE_VERIFY_COUNT
    return None


def _emit_staged(S: StagedHypergraph, out: Optional[str], stdout) -> int:
    payload = S.to_json_dict()
    # Re-verify the artifact round-trips to the same instance before emitting.
    S2 = StagedHypergraph.from_json_dict(payload)
    if S2.base != S.base or list(S2.parent) != list(S.parent):
        raise VerificationError("serialized instance does not round-trip")
    _write_artifact(out, _canonical_json(payload), stdout)
    return 0


def _cmd_construct_hkc(args, stdout) -> int:
    S = build_Hkc(args.k, args.c, max_vertices=args.max_vertices)
    return _emit_staged(S, args.out, stdout)


def _cmd_construct_gcg(args, stdout) -> int:
    if args.provider == "odd-cycle":
        provider = odd_cycle_supply
    else:
        provider = make_random_provider(args.node_budget, seed=args.seed)
    S = build_Gcg(args.c, args.g, provider=provider, max_vertices=args.max_vertices)
    return _emit_staged(S, args.out, stdout)


def _cmd_realize(args, stdout) -> int:
    S = _load_staged(args.input)
    if S.kind == "gcg":
        if args.nested:
            raise DomainError(
                "nested rectangles are defined for the staged k-uniform "
                "family only",
                kind=S.kind,
            )
        R = realize_Gcg(S)
    else:
        R = realize_Hkc_nested(S) if args.nested else realize_Hkc(S)
    # The builders verify on construction; re-verify the exact object we
    # are about to serialize (sampled above the full-check ceiling).
    verify_realization(R, sample_count=_sample_policy(args.sample, R), seed=args.seed)
    _write_artifact(args.out, _canonical_json(R.to_json_dict()), stdout)
    if args.svg:
        _write_artifact(args.svg, _checked_svg(R), stdout)
    return 0


def _cmd_verify(args, stdout) -> int:
    R = Realization.from_json_dict(_load_json(args.realization))
    H = OrderedHypergraph.from_json_dict(_load_json(args.hypergraph))
    if len(R.points) != H.n:
        raise VerificationError(
            "point count differs from vertex count", points=len(R.points), n=H.n
        )
    R.hypergraph = H
    count = _sample_policy(args.sample, R)
    verify_realization(R, sample_count=count, seed=args.seed)
    mode = "sample" if (count is not None and count < len(R.rects)) else "full"
    _write_artifact(
        None,
        _canonical_json({"verified": True, "rects": len(R.rects), "mode": mode}),
        stdout,
    )
    return 0


def _resolve_difference_set(spec_text: str):
    if spec_text in _STREAM_NAMES:
        return difference_stream(spec_text)
    payload = _load_json(spec_text)
    if not isinstance(payload, list) or not all(isinstance(v, int) for v in payload):
        raise DomainError(
            "difference-set file must hold a JSON array of integers",
            path=spec_text,
        )
    return payload


def _cmd_to_aps(args, stdout) -> int:
    R = Realization.from_json_dict(_load_json(args.input))
    if args.mode == "pow2":
        if args.difference_set is not None:
            raise DomainError("--difference-set applies to --mode general only")
        A = rects_to_pow2_aps(R)
    else:
        if args.difference_set is None:
            raise DomainError("--mode general requires --difference-set")
        A = rects_to_D_aps(R, _resolve_difference_set(args.difference_set))
    # The translators re-verify every progression against its rectangle's
    # member set internally; emitting A means that check already passed.
    _write_artifact(args.out, _canonical_json(A.to_json_dict()), stdout)
    return 0


def _cmd_ap_capture(args, stdout) -> int:
    vals = sorted(set(_parse_int_list(args.set)))
    A = FiniteAP(args.start, args.difference, args.length)
    emb = embed_integers(vals)
    shifted = FiniteAP(A.start + emb.offset, A.difference, A.length)
    rect = ap_capture_rectangle(shifted, [v + emb.offset for v in vals])
    captured = [v for v, p in zip(vals, emb.points) if rect.contains(p)]
    expected = [v for v in vals if v in A]
    if captured != expected:
        raise VerificationError(
            "rectangle capture disagrees with set intersection",
            captured=captured,
            expected=expected,
        )
    payload = {
        "rect": [str(rect.x_lo), str(rect.x_hi), str(rect.y_lo), str(rect.y_hi)],
        "offset": emb.offset,
        "captured": captured,
    }
    _write_artifact(args.out, _canonical_json(payload), stdout)
    return 0


def _cmd_chromatic(args, stdout) -> int:
    H = OrderedHypergraph.from_json_dict(_load_json(args.input))
    k = 1
    while True:
        col = is_c_colorable(H, k, node_budget=args.node_budget)
        if col is not None:
            break
        k += 1
    if not is_proper_coloring(H, col):
        raise VerificationError("search returned an improper coloring", c=k)
    payload = {"chromatic_number": k, "witness": col.to_json_dict()}
    _write_artifact(args.out, _canonical_json(payload), stdout)
    return 0


def _verify_girth_report(H: OrderedHypergraph, report) -> None:
    """Independent validity check of the girth answer before emitting it."""
    if report.witness is None:
        # Acyclic claim: the bipartite incidence graph must be a forest,
        # i.e. #nodes - #components == #incidence-arcs.
        arcs = sum(len(e) for e in H.edges)
        nodes = H.n + len(H.edges)
        seen_v = [False] * H.n
        seen_e = [False] * len(H.edges)
        by_vertex = [[] for _ in range(H.n)]
        for j, e in enumerate(H.edges):
            for v in e:
                by_vertex[v].append(j)
        comps = 0
        for start in range(H.n):
            if seen_v[start]:
                continue
            comps += 1
            stack = [start]
            seen_v[start] = True
            while stack:
                v = stack.pop()
                for j in by_vertex[v]:
                    if seen_e[j]:
                        continue
                    seen_e[j] = True
                    for w in H.edges[j]:
                        if not seen_v[w]:
                            seen_v[w] = True
                            stack.append(w)
        comps += sum(1 for s in seen_e if not s)  # isolated (empty) edges
        if nodes - comps != arcs:
            raise VerificationError("girth reported Infinite on a cyclic instance")
        return
    vs, es = report.witness
    g = int(report.girth)
    if len(vs) != g or len(es) != g:
        raise VerificationError("witness length disagrees with girth", girth=g)
    if len(set(vs)) != g or len(set(es)) != g:
        raise VerificationError("witness repeats a vertex or edge")
    for i in range(g):
        members = H.edges[es[i]]
        if vs[i] not in members or vs[(i + 1) % g] not in members:
            raise VerificationError("witness cycle breaks an incidence", at=i)


def _cmd_girth(args, stdout) -> int:
    from .hypergraph import hypergraph_girth

    H = OrderedHypergraph.from_json_dict(_load_json(args.input))
    report = hypergraph_girth(H)
    _verify_girth_report(H, report)
    _write_artifact(args.out, _canonical_json(report.to_json_dict()), stdout)
    return 0


def _cmd_find_mono(args, stdout) -> int:
    S = _load_staged(args.input)
    col = _load_coloring(args.coloring)
    e = find_monochromatic_edge(S, col)
    members = S.base.edges[e]
    colors = {col.colors[v] for v in members}
    if len(colors) != 1:
        raise VerificationError("returned edge is not monochromatic", edge=e)
    payload = {"edge": e, "vertices": list(members), "color": colors.pop()}
    _write_artifact(args.out, _canonical_json(payload), stdout)
    return 0


def _cmd_hasse(args, stdout) -> int:
    points = _parse_points(_load_json(args.input))
    H = dominance_hasse(points)
    # Re-verify each emitted pair is a genuine cover of the dominance order.
    for u, v in H.edges:
        p, q = points[u], points[v]
        if p.x > q.x:
            p, q = q, p
        if not (p.x < q.x and p.y < q.y):
            raise VerificationError("emitted pair is not dominance-comparable")
        for i, w in enumerate(points):
            if i not in (u, v) and p.x < w.x < q.x and p.y < w.y < q.y:
                raise VerificationError("emitted pair is not a cover")
    _write_artifact(args.out, _canonical_json(H.to_json_dict()), stdout)
    return 0


def _cmd_mono_path(args, stdout) -> int:
    points = _parse_points(_load_json(args.input))
    col = _load_coloring(args.coloring)
    path = monochromatic_increasing_path(points, col, args.k)
    if path is not None:
        if len(path) != args.k:
            raise VerificationError("path has the wrong length", got=len(path))
        shades = {col.colors[v] for v in path}
        for a, b in zip(path, path[1:]):
            if not (points[a].x < points[b].x and points[a].y < points[b].y):
                raise VerificationError("path is not strictly increasing")
        if len(shades) != 1:
            raise VerificationError("path mixes colors")
    _write_artifact(args.out, _canonical_json({"path": path}), stdout)
    return 0


def _cmd_vdc(args, stdout) -> int:
    a = van_der_corput(args.n)
    w = max(args.n.bit_length(), 1)
    if a != Fraction(bit_reverse(args.n, w), 1 << w):
        raise VerificationError("digit-mirror identity failed", n=args.n)
    stdout.write((str(a) + "\n").encode("ascii"))
    return 0


def _checked_svg(R: Realization, style: SvgStyle = SvgStyle()) -> bytes:
    from xml.etree import ElementTree

    data = emit_svg(R, style)
    try:
        ElementTree.fromstring(data)
    except ElementTree.ParseError as exc:
        raise VerificationError(f"emitted SVG is not well-formed: {exc}")
    return data


def _cmd_svg(args, stdout) -> int:
    R = Realization.from_json_dict(_load_json(args.input))
    style = SvgStyle(width=args.width) if args.width else SvgStyle()
    _write_artifact(args.out, _checked_svg(R, style), stdout)
    return 0


def _cmd_embed(args, stdout) -> int:
    vals = sorted(set(_parse_int_list(args.set)))
    emb = embed_integers(vals)
    for p in emb.points:
        if p.y != van_der_corput(int(p.x)):
            raise VerificationError("embedded height disagrees with the sequence")
    payload = {
        "offset": emb.offset,
        "points": [[str(p.x), str(p.y)] for p in emb.points],
    }
    _write_artifact(args.out, _canonical_json(payload), stdout)
    return 0


def _cmd_selftest(args, stdout) -> int:
    from . import acceptance

    numbers = args.criterion if args.criterion else None
    results = acceptance.run_all(numbers, echo=lambda s: stdout.write(
        (s + "\n").encode("utf-8")
    ))
    failed = [r.number for r in results if not r.passed]
    summary = (
        f"{len(results) - len(failed)}/{len(results)} criteria passed"
        + (f"; FAILED: {failed}" if failed else "")
    )
    stdout.write((summary + "\n").encode("utf-8"))
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for any randomized step")
    common.add_argument(
        "--max-vertices",
        type=int,
        default=DEFAULT_MAX_VERTICES,
        help="refuse to build instances larger than this",
    )
    common.add_argument(
        "--node-budget",
        type=int,
        default=DEFAULT_NODE_BUDGET,
        help="search-node ceiling for coloring/provider searches",
    )

    p = _Parser(prog="chromarect", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("construct", help="build a staged instance")
    csub = c.add_subparsers(dest="family", required=True, metavar="FAMILY")
    hkc = csub.add_parser("hkc", parents=[common], help="k-uniform staged family")
    hkc.add_argument("--k", type=int, required=True, help="uniformity")
    hkc.add_argument("--c", type=int, required=True, help="palette size to defeat")
    hkc.add_argument("--out", help="output path (default stdout)")
    hkc.set_defaults(handler=_cmd_construct_hkc)
    gcg = csub.add_parser("gcg", parents=[common], help="high-girth graph family")
    gcg.add_argument("--c", type=int, required=True, help="palette size to defeat")
    gcg.add_argument("--g", type=int, required=True, help="girth target")
    gcg.add_argument(
        "--provider",
        choices=("odd-cycle", "random"),
        default="odd-cycle",
        help="auxiliary instance source",
    )
    gcg.add_argument("--out", help="output path (default stdout)")
    gcg.set_defaults(handler=_cmd_construct_gcg)

    r = sub.add_parser("realize", parents=[common], help="draw an instance as points and rectangles")
    r.add_argument("--input", required=True, help="staged-instance JSON")
    r.add_argument("--nested", action="store_true", help="nested-rectangle variant")
    r.add_argument("--out", help="realization JSON path (default stdout)")
    r.add_argument("--svg", help="also render an SVG to this path")
    r.add_argument(
        "--sample",
        type=int,
        default=None,
        help="verify only this many sampled rectangles (default: policy)",
    )
    r.set_defaults(handler=_cmd_realize)

    for name in ("verify", "verify-realization"):
        v = sub.add_parser(
            name, parents=[common], help="check a realization against a hypergraph"
        )
        v.add_argument("--realization", required=True)
        v.add_argument("--hypergraph", required=True)
        v.add_argument("--sample", type=int, default=None)
        v.set_defaults(handler=_cmd_verify)

    t = sub.add_parser("to-aps", parents=[common], help="translate rectangles to integer progressions")
    t.add_argument("--input", required=True, help="realization JSON")
    t.add_argument("--mode", choices=("pow2", "general"), required=True)
    t.add_argument(
        "--difference-set",
        help="primes, pow2, pow3, or a path to a JSON array of integers",
    )
    t.add_argument("--out", help="output path (default stdout)")
    t.set_defaults(handler=_cmd_to_aps)

    cap = sub.add_parser("ap-capture", parents=[common], help="rectangle cutting a progression out of a set")
    cap.add_argument("--set", required=True, help="comma-separated integers")
    cap.add_argument("--start", type=int, required=True)
    cap.add_argument("--difference", type=int, required=True)
    cap.add_argument("--length", type=int, required=True)
    cap.add_argument("--out", help="output path (default stdout)")
    cap.set_defaults(handler=_cmd_ap_capture)

    ch = sub.add_parser("chromatic", parents=[common], help="exact chromatic number with witness")
    ch.add_argument("--input", required=True, help="hypergraph JSON")
    ch.add_argument("--out", help="output path (default stdout)")
    ch.set_defaults(handler=_cmd_chromatic)

    gi = sub.add_parser("girth", parents=[common], help="shortest alternating cycle")
    gi.add_argument("--input", required=True, help="hypergraph JSON")
    gi.add_argument("--out", help="output path (default stdout)")
    gi.set_defaults(handler=_cmd_girth)

    fm = sub.add_parser("find-mono", parents=[common], help="constructively find a monochromatic edge")
    fm.add_argument("--input", required=True, help="staged-instance JSON")
    fm.add_argument("--coloring", required=True, help="coloring JSON")
    fm.add_argument("--out", help="output path (default stdout)")
    fm.set_defaults(handler=_cmd_find_mono)

    ha = sub.add_parser("hasse", parents=[common], help="cover pairs of the dominance order")
    ha.add_argument("--input", required=True, help="realization or points JSON")
    ha.add_argument("--out", help="output path (default stdout)")
    ha.set_defaults(handler=_cmd_hasse)

    mp = sub.add_parser("mono-path", parents=[common], help="same-colored increasing cover chain")
    mp.add_argument("--input", required=True, help="realization or points JSON")
    mp.add_argument("--coloring", required=True, help="coloring JSON")
    mp.add_argument("--k", type=int, required=True, help="chain length (vertices)")
    mp.add_argument("--out", help="output path (default stdout)")
    mp.set_defaults(handler=_cmd_mono_path)

    vd = sub.add_parser("vdc", parents=[common], help="print one digit-mirror sequence value")
    vd.add_argument("--n", type=int, required=True)
    vd.set_defaults(handler=_cmd_vdc)

    sv = sub.add_parser("svg", parents=[common], help="render a realization")
    sv.add_argument("--input", required=True, help="realization JSON")
    sv.add_argument("--out", help="output path (default stdout)")
    sv.add_argument("--width", type=float, default=None)
    sv.set_defaults(handler=_cmd_svg)

    em = sub.add_parser("embed", parents=[common], help="lift integers to sequence points")
    em.add_argument("--set", required=True, help="comma-separated integers")
    em.add_argument("--out", help="output path (default stdout)")
    em.set_defaults(handler=_cmd_embed)

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    st.add_argument(
        "--criterion",
        type=int,
        action="append",
        help="run only this criterion (repeatable)",
    )
    st.set_defaults(handler=_cmd_selftest)

    return p


# ---------------------------------------------------------------------------
# entry points


def run(argv: Sequence[str], stdout=None) -> int:
    """Parse argv, dispatch, and map errors to the exit-code contract.

    ``stdout`` is a binary stream (default: the real one); tests inject a
    buffer to assert byte determinism without spawning processes.
    """
    if stdout is None:
        stdout = sys.stdout.buffer
    try:
        args = _build_parser().parse_args(list(argv))
        if args.max_vertices <= 0 or args.node_budget <= 0:
            raise DomainError("limits must be positive")
        return args.handler(args, stdout)
    except ResourceLimitError as exc:
        sys.stderr.write(json.dumps(exc.to_json_dict(), sort_keys=True) + "\n")
        return 2
    except ChromarectError as exc:
        sys.stderr.write(json.dumps(exc.to_json_dict(), sort_keys=True) + "\n")
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
