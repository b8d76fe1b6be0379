"""Routing paths with prescribed lengths.

Provides the exact-length search used to read an adjuster's length menu,
plus the two windowed connectors: single endpoint into a target set, and
a pair of target sets joined through two expansions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .connect import PathWitness, short_connect
from .graph import Graph
from .outcomes import BuildFailure, InvalidArgumentError, TooLargeError

MENU_CAP = 24
REALIZE_CAP = 26
_SEARCH_BUDGET = 400_000


@dataclass(frozen=True)
class LengthWindow:
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 1 or self.hi < self.lo:
            raise InvalidArgumentError("need 1 <= lo <= hi")

    def __contains__(self, length: int) -> bool:
        return self.lo <= length <= self.hi


def _exact_search(
    g: Graph,
    allowed: frozenset[int],
    start: int,
    targets: frozenset[int],
    length: int,
    budget: int = _SEARCH_BUDGET,
) -> list[int] | None:
    """Simple path of exactly `length` edges from start to any target.

    Interior vertices come from `allowed` only; targets are terminal.
    Prunes with a distance lower bound from the target set, a parity cut
    on bipartite regions, and a memo of failed (vertex, visited) states.
    """
    if length < 1 or start in targets:
        return None
    region = sorted(allowed | targets | {start})
    index = {v: i for i, v in enumerate(region)}
    sub, ids = g.induced(region)
    local_targets = frozenset(index[t] for t in targets)
    local_start = index[start]
    # distances toward the target set never shrink as vertices are used up
    dist = sub.bfs_distances(local_targets)
    coloring = sub.two_coloring()

    adj = [tuple(w for w in sub.neighbors(v)) for v in sub.vertices()]
    failed: set[tuple[int, int]] = set()
    steps = 0

    def dfs(cur: int, visited: int, remaining: int) -> list[int] | None:
        nonlocal steps
        steps += 1
        if steps > budget:
            return None
        key = (cur, visited)
        if key in failed:
            return None
        for w in adj[cur]:
            if visited >> w & 1:
                continue
            if w in local_targets:
                if remaining == 1:
                    return [w]
                continue
            if remaining <= 1:
                continue
            d = dist.get(w)
            if d is None or d > remaining - 1:
                continue
            if coloring is not None and (remaining - 1 - d) % 2:
                continue
            sub_path = dfs(w, visited | 1 << w, remaining - 1)
            if sub_path is not None:
                return [w] + sub_path
        failed.add(key)
        return None

    d0 = dist.get(local_start)
    if d0 is None or d0 > length:
        return None
    if coloring is not None and (length - d0) % 2:
        return None
    found = dfs(local_start, 1 << local_start, length)
    if found is None:
        return None
    return [ids[local_start]] + [ids[w] for w in found]


def exact_path_in_region(
    g: Graph,
    allowed: Iterable[int],
    start: int,
    targets: Iterable[int],
    length: int,
    budget: int = _SEARCH_BUDGET,
) -> list[int] | None:
    """Simple path of exactly `length` edges from start into `targets`,
    with every interior vertex drawn from `allowed`.  Returns host vertex
    ids, or None when no such path exists within the node budget."""
    allowed_set = g.check_subset(allowed)
    target_set = frozenset(g.check_subset(targets))
    g.check_vertex(start)
    if not target_set:
        raise InvalidArgumentError("need at least one target")
    return _exact_search(g, allowed_set - target_set - {start}, start, target_set, length, budget)


def realize_exact_length(
    g: Graph,
    center: Iterable[int],
    v1: int,
    v2: int,
    target: int,
    cap: int = REALIZE_CAP,
) -> PathWitness | None:
    """Exhaustively search G[center + {v1, v2}] for a v1,v2-path of exactly
    `target` edges.  Refuses regions above `cap` vertices."""
    center_set = g.check_subset(center)
    g.check_vertex(v1)
    g.check_vertex(v2)
    if v1 == v2:
        raise InvalidArgumentError("endpoints must differ")
    if target < 1:
        raise InvalidArgumentError("target length must be >= 1")
    region = center_set | {v1, v2}
    if len(region) > cap:
        raise TooLargeError(f"region has {len(region)} vertices, cap {cap}")
    found = _exact_search(
        g, center_set - {v1, v2}, v1, frozenset({v2}), target
    )
    return None if found is None else PathWitness(tuple(found))


def simple_path_lengths(
    g: Graph,
    center: Iterable[int],
    v1: int,
    v2: int,
    cap: int = MENU_CAP,
) -> frozenset[int]:
    """All lengths of simple v1,v2-paths inside G[center + {v1, v2}]."""
    center_set = g.check_subset(center)
    g.check_vertex(v1)
    g.check_vertex(v2)
    if v1 == v2:
        raise InvalidArgumentError("endpoints must differ")
    region = sorted((center_set | {v1, v2}))
    if len(region) > cap:
        raise TooLargeError(f"region has {len(region)} vertices, cap {cap}")
    index = {v: i for i, v in enumerate(region)}
    sub, _ids = g.induced(region)
    s, t = index[v1], index[v2]
    lengths: set[int] = set()

    def dfs(cur: int, visited: int, depth: int) -> None:
        for w in sub.neighbors(cur):
            if visited >> w & 1:
                continue
            if w == t:
                lengths.add(depth + 1)
                continue
            dfs(w, visited | 1 << w, depth + 1)

    dfs(s, 1 << s, 0)
    return frozenset(lengths)


def _expansion_vertices(f) -> frozenset[int]:
    verts = getattr(f, "vertices", f)
    return frozenset(verts)


def _path_inside(g: Graph, region: frozenset[int], a: int, b: int) -> list[int] | None:
    """Shortest a,b-path staying inside `region` (both endpoints included)."""
    if a == b:
        return [a]
    sub, ids = g.induced(region | {a, b})
    index = {v: i for i, v in enumerate(ids)}
    hit = short_connect(sub, [index[a]], [index[b]])
    if hit is None:
        return None
    return [ids[v] for v in hit.vertices]


def connect_with_length(
    g: Graph,
    v: int,
    f,
    u: Iterable[int],
    avoid: Iterable[int] = (),
    window: LengthWindow = LengthWindow(1, 1),
    unit_params: tuple[int, int, int, int] | None = None,
    log: list[str] | None = None,
) -> PathWitness | BuildFailure:
    """Path from v into the set U whose length lands in `window`.

    First tries the expansion-hopping loop: repeatedly build a fresh unit
    beyond the current frontier, route through it, and keep a spare
    expansion around the new frontier core; each hop strictly lengthens
    the path.  When that stalls (normal at small scale), falls back to a
    direct exhaustive search for an in-window length; the fallback is
    reported through `log`.
    """
    u_set = g.check_subset(u)
    avoid_set = g.check_subset(avoid)
    g.check_vertex(v)
    f_verts = g.check_subset(_expansion_vertices(f))
    if v not in f_verts:
        raise InvalidArgumentError("v must anchor its expansion")
    if v in u_set or v in avoid_set:
        raise InvalidArgumentError("v cannot lie in U or the avoid set")
    if u_set & avoid_set or f_verts & avoid_set or f_verts & u_set:
        raise InvalidArgumentError("U, the expansion, and avoid must be disjoint")

    def note(msg: str) -> None:
        if log is not None:
            log.append(msg)

    path = [v]
    frontier_ball = set(f_verts)

    if unit_params is not None:
        from .gadgets import Unit, build_unit  # deferred: gadgets imports this module

        while len(path) - 1 < window.lo:
            blocked = avoid_set | set(path) | frontier_ball | u_set
            unit = build_unit(g, blocked, *unit_params)
            if isinstance(unit, BuildFailure):
                note(f"hop stalled: unit builder said {unit.reason}")
                break
            unit_verts = frozenset(unit.all_vertices())
            hop_avoid = (avoid_set | set(path[:-1]) | u_set) - unit_verts - frontier_ball
            bridge = short_connect(g, sorted(unit_verts), sorted(frontier_ball), hop_avoid)
            if bridge is None:
                note("hop stalled: no bridge from fresh unit to the frontier")
                break
            b_unit, b_front = bridge.vertices[0], bridge.vertices[-1]
            seg_front = _path_inside(g, frontier_ball, path[-1], b_front)
            seg_unit = _path_inside(g, unit_verts, b_unit, unit.core)
            if seg_front is None or seg_unit is None:
                note("hop stalled: frontier or unit not internally connected")
                break
            candidate = (
                path
                + seg_front[1:]
                + list(reversed(bridge.vertices))[1:]
                + seg_unit[1:]
            )
            if len(set(candidate)) != len(candidate):
                note("hop stalled: candidate extension revisits a vertex")
                break
            assert len(candidate) > len(path), "each hop must lengthen the path"
            path = candidate
            inside = unit_verts - set(path[:-1])
            ball = {path[-1]}
            queue = deque([path[-1]])
            while queue:
                x = queue.popleft()
                for w in g.neighbors(x):
                    if w in inside and w not in ball:
                        ball.add(w)
                        queue.append(w)
            frontier_ball = ball

        if len(path) - 1 >= window.lo:
            tail_avoid = (avoid_set | set(path[:-1])) - u_set - frontier_ball
            budget = window.hi - (len(path) - 1)
            reach = short_connect(g, sorted(u_set), sorted(frontier_ball - set(path[:-1])), tail_avoid, cap=budget)
            if reach is not None:
                r_u, r_front = reach.vertices[0], reach.vertices[-1]
                seg_front = _path_inside(g, frontier_ball - set(path[:-1]) | {path[-1]}, path[-1], r_front)
                if seg_front is not None:
                    candidate = path + seg_front[1:] + list(reversed(reach.vertices))[1:]
                    if (
                        len(set(candidate)) == len(candidate)
                        and len(candidate) - 1 in window
                    ):
                        note("window reached by expansion hopping")
                        return PathWitness(tuple(candidate))
            note("hop tail failed to land in the window")

    note("direct in-window search")
    allowed = frozenset(g.vertices()) - avoid_set - u_set - {v}
    for target in range(window.lo, window.hi + 1):
        found = _exact_search(g, allowed, v, u_set, target)
        if found is not None:
            return PathWitness(tuple(found))
    return BuildFailure(
        "window_unreachable",
        f"no path from {v} into the target set with length in "
        f"[{window.lo}, {window.hi}]",
    )


def connect_pair_with_length(
    g: Graph,
    u1: Iterable[int],
    u2: Iterable[int],
    f3,
    f4,
    avoid: Iterable[int] = (),
    window: LengthWindow = LengthWindow(2, 2),
    unit_params: tuple[int, int, int, int] | None = None,
    log: list[str] | None = None,
) -> tuple[PathWitness, PathWitness] | BuildFailure:
    """Two disjoint paths: a short one from one target set to the nearer
    expansion's core, then a windowed one joining the remaining pair, so
    the total length lands in `window`."""
    u1_set = g.check_subset(u1)
    u2_set = g.check_subset(u2)
    avoid_set = g.check_subset(avoid)
    f3_verts = g.check_subset(_expansion_vertices(f3))
    f4_verts = g.check_subset(_expansion_vertices(f4))
    anchor3 = getattr(f3, "anchor", min(f3_verts))
    anchor4 = getattr(f4, "anchor", min(f4_verts))
    groups = [u1_set, u2_set, f3_verts, f4_verts]
    for i, x in enumerate(groups):
        for y in groups[i + 1:]:
            if x & y:
                raise InvalidArgumentError("endpoint sets and expansions must be pairwise disjoint")
        if x & avoid_set:
            raise InvalidArgumentError("avoid set overlaps an endpoint set")

    def note(msg: str) -> None:
        if log is not None:
            log.append(msg)

    first = short_connect(
        g, sorted(u1_set | u2_set), sorted(f3_verts | f4_verts), avoid_set
    )
    if first is None:
        return BuildFailure("window_unreachable", "target sets cannot reach the expansions")
    hit_end = first.vertices[-1]
    if hit_end in f3_verts:
        touched, touched_anchor = f3_verts, anchor3
        spare, spare_anchor = f4_verts, anchor4
    else:
        touched, touched_anchor = f4_verts, anchor4
        spare, spare_anchor = f3_verts, anchor3
    used_u = u1_set if first.vertices[0] in u1_set else u2_set
    other_u = u2_set if used_u is u1_set else u1_set

    tail = _path_inside(g, touched, hit_end, touched_anchor)
    if tail is None:
        return BuildFailure("window_unreachable", "touched expansion is not internally connected")
    p_short = PathWitness(tuple(list(first.vertices) + tail[1:]))
    if p_short.length >= window.hi:
        return BuildFailure(
            "window_unreachable",
            f"short leg already uses {p_short.length} of the window",
        )
    note(f"short leg length {p_short.length} into core {touched_anchor}")

    residual = LengthWindow(
        max(1, window.lo - p_short.length), window.hi - p_short.length
    )
    second = connect_with_length(
        g,
        spare_anchor,
        spare,
        sorted(other_u),
        avoid_set | set(p_short.vertices),
        residual,
        unit_params=unit_params,
        log=log,
    )
    if isinstance(second, BuildFailure):
        return BuildFailure("window_unreachable", f"long leg failed: {second.detail}")
    total = p_short.length + second.length
    if total not in window:
        return BuildFailure("window_unreachable", f"combined length {total} misses the window")
    # orient both with the target-set endpoint first and the core last
    return p_short, second.reversed()
