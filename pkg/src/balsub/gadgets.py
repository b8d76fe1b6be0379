"""Structural gadgets: hubs, units, expansions, adjusters, and octopuses.

These are the building blocks assembled into balanced subdivisions.  Every
gadget has a builder returning the record or a BuildFailure, and a
validator that recomputes each definitional clause from raw adjacency.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .connect import PathWitness, check_path, short_connect
from .graph import Graph, bipartite_half, min_degree_peel
from .outcomes import (
    BuildFailure,
    Clause,
    InvalidArgumentError,
    ValidationReport,
)
from .router import REALIZE_CAP, realize_exact_length, simple_path_lengths


# -- hubs --------------------------------------------------------------------


@dataclass(frozen=True)
class Hub:
    """A center, h1 first-layer neighbors, and h2 private second-layer
    neighbors behind each first-layer vertex."""

    center: int
    first_layer: tuple[int, ...]
    second_layers: tuple[tuple[int, tuple[int, ...]], ...]

    def b1(self) -> frozenset[int]:
        return frozenset({self.center, *self.first_layer})

    def exterior(self) -> frozenset[int]:
        return frozenset(s for _, layer in self.second_layers for s in layer)

    def all_vertices(self) -> frozenset[int]:
        return self.b1() | self.exterior()

    @property
    def h1(self) -> int:
        return len(self.first_layer)

    @property
    def h2(self) -> int:
        return len(self.second_layers[0][1]) if self.second_layers else 0


def validate_hub(g: Graph, hub: Hub) -> ValidationReport:
    """Recheck every hub clause against the host adjacency."""
    clauses = []
    fl = hub.first_layer
    layer_map = dict(hub.second_layers)
    clauses.append(
        Clause(
            "first_layer_adjacent",
            len(set(fl)) == len(fl)
            and len(fl) >= 1
            and all(g.has_edge(hub.center, z) for z in fl),
        )
    )
    clauses.append(
        Clause(
            "second_layer_keys",
            tuple(sorted(layer_map)) == tuple(sorted(fl)),
        )
    )
    sizes = {len(layer) for _, layer in hub.second_layers}
    clauses.append(Clause("second_layer_uniform", len(sizes) == 1 and min(sizes) >= 1))
    adjacent_ok = all(
        g.has_edge(z, s) and s != hub.center
        for z, layer in hub.second_layers
        for s in layer
    )
    clauses.append(Clause("second_layer_adjacent", adjacent_ok))
    seen: set[int] = set()
    disjoint = True
    for _, layer in hub.second_layers:
        layer_set = set(layer)
        if len(layer_set) != len(layer) or layer_set & seen:
            disjoint = False
        seen |= layer_set
    clauses.append(Clause("second_layers_disjoint", disjoint))
    clauses.append(Clause("second_layers_outside_b1", not (seen & hub.b1())))
    return ValidationReport(tuple(clauses))


def _degeneracy(g: Graph) -> int:
    alive = set(g.vertices())
    deg = {v: g.degree(v) for v in alive}
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return best


def _greedy_hub_at(
    g: Graph, center: int, h1: int, h2: int, c4_mode: bool
) -> Hub | None:
    pool = list(g.neighbors(center))
    while len(pool) >= h1:
        chosen = pool[:h1]
        b1 = {center, *chosen}
        used: set[int] = set()
        layers: list[tuple[int, tuple[int, ...]]] = []
        bad: int | None = None
        for z in chosen:
            avail = [
                s
                for s in g.neighbors(z)
                if s not in b1 and (c4_mode or s not in used)
            ]
            if len(avail) < h2:
                bad = z
                break
            take = tuple(avail[:h2])
            if c4_mode and used & set(take):
                raise InvalidArgumentError(
                    "host violates the claimed 4-cycle freedom"
                )
            used |= set(take)
            layers.append((z, take))
        if bad is None:
            return Hub(center, tuple(chosen), tuple(layers))
        pool.remove(bad)
    return None


def build_hub(
    g: Graph,
    avoid: Iterable[int],
    h1: int,
    h2: int,
    c4_mode: bool = False,
) -> Hub | BuildFailure:
    """Greedy hub construction inside the densest core of G - avoid.

    Tries min-degree cores from the largest feasible threshold downward;
    within a core, scans centers in id order and repairs the first layer
    whenever some branch cannot supply h2 private second-layer vertices.
    """
    if h1 < 1 or h2 < 1:
        raise InvalidArgumentError("need h1 >= 1 and h2 >= 1")
    work, ids = g.delete(avoid)
    if work.n == 0:
        return BuildFailure("insufficient_degree", "nothing left outside avoid")
    for t in range(_degeneracy(work), -1, -1):
        core, core_ids = min_degree_peel(work, t)
        if core.n == 0:
            continue
        for center in core.vertices():
            found = _greedy_hub_at(core, center, h1, h2, c4_mode)
            if found is not None:
                lift = lambda v: ids[core_ids[v]]
                return Hub(
                    lift(found.center),
                    tuple(lift(z) for z in found.first_layer),
                    tuple(
                        (lift(z), tuple(lift(s) for s in layer))
                        for z, layer in found.second_layers
                    ),
                )
    return BuildFailure(
        "insufficient_degree",
        f"no center can supply {h1} branches with {h2} private leaves each",
    )


# -- expansions ---------------------------------------------------------------


@dataclass(frozen=True)
class Expansion:
    """A connected vertex set every member of which sits within `radius`
    steps of the anchor inside the set's own induced subgraph."""

    anchor: int
    vertices: frozenset[int]
    radius: int

    @property
    def size(self) -> int:
        return len(self.vertices)


def validate_expansion(
    g: Graph, f: Expansion, size: int | None = None
) -> ValidationReport:
    clauses = [Clause("anchor_inside", f.anchor in f.vertices)]
    if size is not None:
        clauses.append(Clause("size_exact", len(f.vertices) == size))
    dist = _distances_within(g, f.vertices, f.anchor)
    reachable = all(v in dist for v in f.vertices)
    within = reachable and all(d <= f.radius for d in dist.values())
    clauses.append(Clause("radius_respected", f.anchor in f.vertices and within))
    return ValidationReport(tuple(clauses))


def _distances_within(
    g: Graph, region: frozenset[int], source: int
) -> dict[int, int]:
    if source not in region:
        return {}
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w in region and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _bfs_layers(
    g: Graph, source: int, blocked: frozenset[int], depth_cap: int
) -> list[list[int]]:
    """BFS layers from source avoiding `blocked`, id-sorted inside layers."""
    layers = [[source]]
    seen = {source}
    while len(layers) - 1 < depth_cap:
        nxt = sorted(
            {
                w
                for u in layers[-1]
                for w in g.neighbors(u)
                if w not in seen and w not in blocked
            }
        )
        if not nxt:
            break
        seen.update(nxt)
        layers.append(nxt)
    return layers


def grow_expansion(
    g: Graph,
    anchor: int,
    size: int,
    blocked: Iterable[int] = (),
    depth_cap: int | None = None,
) -> Expansion | BuildFailure:
    """Collect `size` vertices around the anchor layer by layer, truncating
    the last layer by id, so the result stays internally connected."""
    g.check_vertex(anchor)
    if size < 1:
        raise InvalidArgumentError("expansion size must be >= 1")
    blocked_set = g.check_subset(blocked)
    if anchor in blocked_set:
        raise InvalidArgumentError("anchor is blocked")
    cap = depth_cap if depth_cap is not None else g.n
    layers = _bfs_layers(g, anchor, blocked_set, cap)
    picked: list[int] = []
    radius = 0
    for depth, layer in enumerate(layers):
        room = size - len(picked)
        if room <= 0:
            break
        take = layer[:room]
        picked.extend(take)
        if take:
            radius = depth
    if len(picked) < size:
        return BuildFailure(
            "expansion_collision",
            f"only {len(picked)} of {size} vertices reachable within "
            f"radius {cap} of {anchor}",
        )
    return Expansion(anchor, frozenset(picked), radius)


def trim_expansion(g: Graph, f: Expansion, d_target: int) -> Expansion:
    """Shrink an expansion to exactly d_target vertices by truncating its
    BFS tree leaf-first; the radius never grows."""
    if d_target < 1 or d_target > len(f.vertices):
        raise InvalidArgumentError(
            f"target size {d_target} outside 1..{len(f.vertices)}"
        )
    order: list[tuple[int, int]] = []  # (depth, vertex) in BFS layer order
    dist = _distances_within(g, f.vertices, f.anchor)
    for v in sorted(f.vertices, key=lambda v: (dist.get(v, math.inf), v)):
        if v in dist:
            order.append((dist[v], v))
    if len(order) < d_target:
        raise InvalidArgumentError(
            "expansion is not internally connected; cannot trim"
        )
    kept = order[:d_target]
    radius = max(d for d, _ in kept)
    return Expansion(f.anchor, frozenset(v for _, v in kept), min(radius, f.radius))


# -- units ---------------------------------------------------------------------


@dataclass(frozen=True)
class Unit:
    """A core joined by short spokes to h0 disjoint hubs.

    The exterior is the union of the hubs' second layers; everything else
    (core, spoke interiors, hub centers and first layers) is interior and
    is what later routing must pay to pass through.
    """

    core: int
    hubs: tuple[Hub, ...]
    spokes: tuple[PathWitness, ...]
    spoke_cap: int

    def exterior(self) -> frozenset[int]:
        return frozenset(s for hub in self.hubs for s in hub.exterior())

    def all_vertices(self) -> frozenset[int]:
        verts = {self.core}
        for hub in self.hubs:
            verts |= hub.all_vertices()
        for spoke in self.spokes:
            verts |= set(spoke.vertices)
        return frozenset(verts)

    def interior(self) -> frozenset[int]:
        return self.all_vertices() - self.exterior()

    @property
    def h0(self) -> int:
        return len(self.hubs)


def validate_unit(g: Graph, unit: Unit) -> ValidationReport:
    clauses: list[Clause] = []
    hub_reports = [validate_hub(g, hub) for hub in unit.hubs]
    clauses.append(
        Clause("hubs_valid", len(unit.hubs) >= 1 and all(r.passed for r in hub_reports))
    )
    h1s = {hub.h1 for hub in unit.hubs}
    h2s = {hub.h2 for hub in unit.hubs}
    clauses.append(Clause("hub_sizes_uniform", len(h1s) == 1 and len(h2s) == 1))
    seen: set[int] = set()
    disjoint = True
    for hub in unit.hubs:
        verts = hub.all_vertices()
        if verts & seen or unit.core in verts:
            disjoint = False
        seen |= verts
    clauses.append(Clause("hubs_disjoint", disjoint))

    spokes_ok = len(unit.spokes) == len(unit.hubs)
    interiors: set[int] = set()
    spoke_disjoint = True
    for spoke, hub in zip(unit.spokes, unit.hubs):
        if not (
            check_path(g, spoke)
            and spoke.vertices[0] == unit.core
            and spoke.vertices[-1] == hub.center
            and 1 <= spoke.length <= unit.spoke_cap
        ):
            spokes_ok = False
        inner = set(spoke.interior())
        if inner & interiors or inner & seen or unit.core in inner:
            spoke_disjoint = False
        interiors |= inner
    clauses.append(Clause("spokes_valid", spokes_ok))
    clauses.append(Clause("spokes_disjoint_except_core", spoke_disjoint))

    ext = unit.exterior()
    if unit.hubs:
        h0, h1, h2 = len(unit.hubs), unit.hubs[0].h1, unit.hubs[0].h2
        clauses.append(Clause("exterior_count", len(ext) == h0 * h1 * h2))
        bound = h0 * (unit.spoke_cap + 1 + h1) + 1 + h0 * h1
        clauses.append(Clause("interior_bound", len(unit.interior()) <= bound))
    return ValidationReport(tuple(clauses))


def _spoke_search(
    g: Graph,
    w: int,
    target: int,
    cap: int,
    hard: set[int],
    all_gadget: frozenset[int],
    all_b1: frozenset[int],
    end_b1s: tuple[frozenset[int], frozenset[int]],
) -> PathWitness | None:
    """Spoke path w -> target of length <= cap.

    First pass masks every candidate-gadget vertex; the relaxed pass opens
    second layers everywhere plus the two endpoint B1 sets, then enforces
    the budget of at most 2 B1 vertices per endpoint gadget.
    """
    ends = {w, target}
    strict = (hard | all_gadget) - ends
    found = short_connect(g, [w], [target], strict, cap=cap)
    if found is not None:
        return found
    own_b1 = end_b1s[0] | end_b1s[1]
    relaxed = (hard | (all_b1 - own_b1)) - ends
    found = short_connect(g, [w], [target], relaxed, cap=cap)
    if found is None:
        return None
    verts = set(found.vertices)
    if all(len(b1 & verts) <= 2 for b1 in end_b1s):
        return found
    return None


def build_unit(
    g: Graph,
    avoid: Iterable[int],
    h0: int,
    h1: int,
    h2: int,
    h3: int,
) -> Unit | BuildFailure:
    """Grow a unit: place candidate hubs greedily (one oversized hub per
    prospective core plus oversized satellite hubs), connect one core to h0
    satellites by short disjoint spokes, then carve clean (h1, h2)-hubs
    avoiding everything the spokes used.

    The candidate hubs start at double size and shrink toward the exact
    target when the host is too small for slack.
    """
    if min(h0, h1, h2, h3) < 1:
        raise InvalidArgumentError("unit parameters must all be >= 1")
    avoid_set = g.check_subset(avoid)
    last_reason = "hub_pool_exhausted"
    last_detail = "no candidate hubs fit"
    last_partial = None
    for margin in (2.0, 1.5, 1.0):
        mh0 = math.ceil(margin * h0)
        mh1 = math.ceil(margin * h1)
        mh2 = math.ceil(margin * h2)
        taken: set[int] = set(avoid_set)
        cores: list[Hub] = []
        for _ in range(2):
            cand = build_hub(g, taken, mh0, mh2)
            if isinstance(cand, BuildFailure):
                break
            cores.append(cand)
            taken |= cand.all_vertices()
        if not cores:
            continue
        satellites: list[Hub] = []
        for _ in range(h0 + 1):
            cand = build_hub(g, taken, mh1, mh2)
            if isinstance(cand, BuildFailure):
                break
            satellites.append(cand)
            taken |= cand.all_vertices()
        if len(satellites) < h0:
            last_detail = (
                f"margin {margin}: only {len(satellites)} satellite hubs of"
                f" the {h0} required"
            )
            continue

        all_hub_vertices = frozenset(
            v for hub in cores + satellites for v in hub.all_vertices()
        )
        all_b1 = frozenset(v for hub in cores + satellites for v in hub.b1())
        for core_hub in cores:
            w = core_hub.center
            used: set[int] = set()
            spokes: list[PathWitness] = []
            attached: list[Hub] = []
            for sat in satellites:
                if len(spokes) == h0:
                    break
                spoke = _spoke_search(
                    g,
                    w,
                    sat.center,
                    h3,
                    avoid_set | used,
                    all_hub_vertices,
                    all_b1,
                    (core_hub.b1(), sat.b1()),
                )
                if spoke is None:
                    continue
                spokes.append(spoke)
                attached.append(sat)
                used |= set(spoke.vertices) - {w}
            if len(spokes) < h0:
                last_reason = "connection_stalled"
                last_detail = (
                    f"core {w} reached {len(spokes)} of {h0} satellites"
                )
                last_partial = tuple(spokes)
                continue

            spoke_verts = {w} | used
            carved: list[Hub] = []
            for sat in attached:
                hub = _carve_hub(sat, h1, h2, spoke_verts)
                if hub is None:
                    break
                carved.append(hub)
            if len(carved) < h0:
                last_reason = "connection_stalled"
                last_detail = "spokes consumed too much of a satellite hub"
                last_partial = tuple(spokes)
                continue
            unit = Unit(w, tuple(carved), tuple(spokes), h3)
            if validate_unit(g, unit).passed:
                return unit
            last_reason = "connection_stalled"
            last_detail = "assembled unit failed self-validation"
            last_partial = unit

    # Lean pass for hosts too small to hold an oversized hub around the
    # core: the core is a bare vertex and satellites are rebuilt per core.
    candidates = [v for v in g.vertices() if v not in avoid_set][:40]
    for w in candidates:
        taken = set(avoid_set) | {w}
        satellites = []
        for _ in range(h0 + 1):
            cand = build_hub(g, taken, h1, h2)
            if isinstance(cand, BuildFailure):
                break
            satellites.append(cand)
            taken |= cand.all_vertices()
        if len(satellites) < h0:
            continue
        all_hub_vertices = frozenset(
            v for hub in satellites for v in hub.all_vertices()
        )
        all_b1 = frozenset(v for hub in satellites for v in hub.b1())
        used = set()
        spokes = []
        attached = []
        for sat in satellites:
            if len(spokes) == h0:
                break
            spoke = _spoke_search(
                g,
                w,
                sat.center,
                h3,
                avoid_set | used,
                all_hub_vertices,
                all_b1,
                (frozenset({w}), sat.b1()),
            )
            if spoke is None:
                continue
            spokes.append(spoke)
            attached.append(sat)
            used |= set(spoke.vertices) - {w}
        if len(spokes) < h0:
            last_reason = "connection_stalled"
            last_detail = f"bare core {w} reached {len(spokes)} of {h0} satellites"
            last_partial = tuple(spokes)
            continue
        spoke_verts = {w} | used
        carved = []
        for sat in attached:
            hub = _carve_hub(sat, h1, h2, spoke_verts)
            if hub is None:
                break
            carved.append(hub)
        if len(carved) < h0:
            continue
        unit = Unit(w, tuple(carved), tuple(spokes), h3)
        if validate_unit(g, unit).passed:
            return unit
    return BuildFailure(last_reason, last_detail, last_partial)


def _carve_hub(
    cand: Hub, h1: int, h2: int, forbidden: set[int]
) -> Hub | None:
    """Take an (h1, h2)-sub-hub of a candidate avoiding spoke vertices."""
    layers = []
    for z, layer in cand.second_layers:
        if z in forbidden:
            continue
        clean = tuple(s for s in layer if s not in forbidden)[:h2]
        if len(clean) == h2:
            layers.append((z, clean))
        if len(layers) == h1:
            break
    if len(layers) < h1:
        return None
    return Hub(cand.center, tuple(z for z, _ in layers), tuple(layers))


# -- adjusters -------------------------------------------------------------------


@dataclass(frozen=True)
class Adjuster:
    """Two cores with private expansions and a center set A realizing every
    path length base, base+2, ..., base+2*steps between the cores inside
    G[A + cores]."""

    core1: int
    core2: int
    end1: Expansion
    end2: Expansion
    center: frozenset[int]
    base_length: int
    steps: int
    m: int

    def menu(self) -> tuple[int, ...]:
        return tuple(self.base_length + 2 * i for i in range(self.steps + 1))

    def all_vertices(self) -> frozenset[int]:
        return self.center | self.end1.vertices | self.end2.vertices


def validate_adjuster(
    g: Graph,
    adj: Adjuster,
    realize_cap: int = REALIZE_CAP,
) -> ValidationReport:
    """Recheck the four adjuster clauses.

    The length menu is verified by exhaustive search; centers above the
    cap get the distinct clause name a4_menu_deferred instead of a fake
    pass."""
    clauses: list[Clause] = []
    parts = [adj.center, adj.end1.vertices, adj.end2.vertices]
    disjoint = (
        not (parts[0] & parts[1])
        and not (parts[0] & parts[2])
        and not (parts[1] & parts[2])
        and adj.core1 != adj.core2
    )
    anchored = adj.end1.anchor == adj.core1 and adj.end2.anchor == adj.core2
    clauses.append(Clause("a1_disjoint", disjoint and anchored))
    r1 = validate_expansion(g, adj.end1)
    r2 = validate_expansion(g, adj.end2)
    clauses.append(
        Clause(
            "a2_expansions",
            r1.passed
            and r2.passed
            and adj.end1.size == adj.end2.size
            and max(adj.end1.radius, adj.end2.radius) <= adj.m,
        )
    )
    clauses.append(
        Clause("a3_center_small", len(adj.center) <= 10 * adj.m * adj.steps)
    )
    if adj.steps < 0 or adj.base_length < 1:
        clauses.append(Clause("a4_menu", False, "need steps >= 0 and base >= 1"))
        return ValidationReport(tuple(clauses))
    if len(adj.center) + 2 > realize_cap:
        clauses.append(
            Clause(
                "a4_menu_deferred",
                True,
                f"center of {len(adj.center)} vertices exceeds cap {realize_cap}",
            )
        )
        return ValidationReport(tuple(clauses))
    missing = [
        want
        for want in adj.menu()
        if realize_exact_length(
            g, adj.center, adj.core1, adj.core2, want, cap=realize_cap
        )
        is None
    ]
    clauses.append(
        Clause(
            "a4_menu",
            not missing,
            "" if not missing else f"unrealizable lengths: {missing}",
        )
    )
    return ValidationReport(tuple(clauses))


def adjuster_length_menu(
    g: Graph, adj: Adjuster, cap: int = 24
) -> frozenset[int]:
    """Every realizable core-to-core path length inside G[A + cores]."""
    return simple_path_lengths(g, adj.center, adj.core1, adj.core2, cap=cap)


def _shortest_cycle(g: Graph) -> list[int] | None:
    """A shortest cycle, or None in a forest.  Deterministic: the least
    (length, root, closing edge) candidate wins."""
    best: tuple[int, int, int, int] | None = None
    best_paths: tuple[list[int], list[int]] | None = None
    for root in g.vertices():
        dist = {root: 0}
        parent: dict[int, int | None] = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and dist[u] >= best[0] // 2 + 1:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    length = dist[u] + dist[w] + 1
                    key = (length, root, min(u, w), max(u, w))
                    if best is None or key < best:
                        pu = _chain(parent, u)
                        pw = _chain(parent, w)
                        if len(set(pu) | set(pw)) == len(pu) + len(pw) - 1:
                            best = key
                            best_paths = (pu, pw)
        # roots are scanned exhaustively; the minimum over roots is exact
    if best is None or best_paths is None:
        return None
    pu, pw = best_paths
    cycle = list(reversed(pu)) + pw[:-1]
    return _canonical_cycle(cycle)


def _chain(parent: dict[int, int | None], v: int) -> list[int]:
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])  # type: ignore[arg-type]
    return out


def _canonical_cycle(cycle: list[int]) -> list[int]:
    i = cycle.index(min(cycle))
    rotated = cycle[i:] + cycle[:i]
    if rotated[1] > rotated[-1]:
        rotated = [rotated[0]] + list(reversed(rotated[1:]))
    return rotated


def build_simple_adjuster(
    g: Graph,
    avoid: Iterable[int],
    size: int,
    m: int,
    c4_mode: bool = False,
) -> Adjuster | BuildFailure:
    """One-step adjuster from a shortest even cycle.

    Works inside a bipartite subgraph of G - avoid (the graph itself when
    already bipartite), takes a shortest cycle of length 2r, puts the cores
    at distance r-1 along it so the two arcs realize lengths r-1 and r+1,
    and grows two disjoint `size`-vertex expansions around the cores.  In
    c4_mode the expansions use exactly two neighborhood levels.
    """
    if size < 1 or m < 1:
        raise InvalidArgumentError("need size >= 1 and m >= 1")
    if c4_mode and m < 2:
        raise InvalidArgumentError("two-level growth needs m >= 2")
    avoid_set = g.check_subset(avoid)
    work, ids = g.delete(avoid_set)
    if work.n == 0:
        return BuildFailure("acyclic", "nothing left outside avoid")
    if work.two_coloring() is None:
        work_b, _sides = bipartite_half(work)
    else:
        work_b = work
    cycle_local = _shortest_cycle(work_b)
    if cycle_local is None:
        return BuildFailure("acyclic", "no cycle outside the avoid set")
    cycle = [ids[v] for v in cycle_local]
    assert len(cycle) % 2 == 0, "cycles of a bipartite subgraph are even"
    r = len(cycle) // 2
    if len(cycle) - 2 > 10 * m:
        return BuildFailure(
            "cycle_too_long",
            f"shortest even cycle has {len(cycle)} vertices, too long for m={m}",
        )
    v1 = cycle[0]
    v2 = cycle[r - 1]
    depth_cap = 2 if c4_mode else m
    blocked1 = avoid_set | (set(cycle) - {v1})
    end1 = grow_expansion(g, v1, size, blocked1, depth_cap)
    if isinstance(end1, BuildFailure):
        return BuildFailure("expansion_collision", f"first end: {end1.detail}")
    blocked2 = avoid_set | (set(cycle) - {v2}) | end1.vertices
    end2 = grow_expansion(g, v2, size, blocked2, depth_cap)
    if isinstance(end2, BuildFailure):
        return BuildFailure("expansion_collision", f"second end: {end2.detail}")
    center = frozenset(cycle) - {v1, v2}
    return Adjuster(
        core1=v1,
        core2=v2,
        end1=end1,
        end2=end2,
        center=center,
        base_length=r - 1,
        steps=1,
        m=m,
    )


def link_adjusters(
    g: Graph,
    first: Adjuster,
    second: Adjuster,
    avoid: Iterable[int] = (),
) -> Adjuster | BuildFailure:
    """Join two vertex-disjoint adjusters into one whose step count adds.

    A shortest path between their end expansions is extended through the
    two touched ends to a core-to-core bridge; the bridged part joins the
    center, and the two untouched ends become the ends of the result.
    """
    if first.steps < 1 or second.steps < 1:
        raise InvalidArgumentError("degenerate adjusters with no steps cannot be linked")
    avoid_set = g.check_subset(avoid)
    if first.all_vertices() & second.all_vertices():
        raise InvalidArgumentError("adjusters must be vertex-disjoint")
    if avoid_set & (first.all_vertices() | second.all_vertices()):
        raise InvalidArgumentError("avoid set overlaps an adjuster")

    a_ends = sorted(first.end1.vertices | first.end2.vertices)
    b_ends = sorted(second.end1.vertices | second.end2.vertices)
    bridge = short_connect(
        g, a_ends, b_ends, (avoid_set | first.center | second.center)
    )
    if bridge is None:
        return BuildFailure("disconnected", "end expansions cannot reach each other")
    hit_a, hit_b = bridge.vertices[0], bridge.vertices[-1]
    touched_a = first.end1 if hit_a in first.end1.vertices else first.end2
    spare_a = first.end2 if touched_a is first.end1 else first.end1
    touched_b = second.end1 if hit_b in second.end1.vertices else second.end2
    spare_b = second.end2 if touched_b is second.end1 else second.end1

    tail_a = _expansion_path(g, touched_a, hit_a)
    tail_b = _expansion_path(g, touched_b, hit_b)
    if tail_a is None or tail_b is None:
        return BuildFailure("disconnected", "an end expansion is not internally connected")
    bridge_path = (
        list(reversed(tail_a))
        + list(bridge.vertices[1:-1])
        + tail_b
    )
    center = first.center | second.center | set(bridge_path)
    return Adjuster(
        core1=spare_a.anchor,
        core2=spare_b.anchor,
        end1=spare_a,
        end2=spare_b,
        center=frozenset(center),
        base_length=first.base_length
        + second.base_length
        + len(bridge_path) - 1,
        steps=first.steps + second.steps,
        m=max(first.m, second.m),
    )


def _expansion_path(g: Graph, f: Expansion, target: int) -> list[int] | None:
    """Anchor-to-target path inside the expansion's induced subgraph."""
    if target == f.anchor:
        return [f.anchor]
    dist = _distances_within(g, f.vertices, f.anchor)
    if target not in dist:
        return None
    path = [target]
    while path[-1] != f.anchor:
        cur = path[-1]
        prev = min(
            w
            for w in g.neighbors(cur)
            if w in dist and dist[w] == dist[cur] - 1
        )
        path.append(prev)
    return list(reversed(path))


# -- octopuses ----------------------------------------------------------------


@dataclass(frozen=True)
class Octopus:
    """A core adjuster whose chosen end reaches several disjoint arm
    adjusters through a minimal family of short paths."""

    core: Adjuster
    attached_end: int  # 1 or 2
    arms: tuple[Adjuster, ...]
    arm_paths: tuple[PathWitness, ...]
    arm_cap: int

    def reach(self) -> Expansion:
        return self.core.end1 if self.attached_end == 1 else self.core.end2


def validate_octopus(g: Graph, octo: Octopus) -> ValidationReport:
    clauses: list[Clause] = []
    reach = octo.reach().vertices
    core_verts = octo.core.all_vertices()
    seen: set[int] = set(core_verts)
    arms_disjoint = True
    for arm in octo.arms:
        verts = arm.all_vertices()
        if verts & seen:
            arms_disjoint = False
        seen |= verts
    clauses.append(Clause("arms_disjoint", arms_disjoint))

    centers: set[int] = set(octo.core.center)
    for arm in octo.arms:
        centers |= arm.center
    paths_ok = len(octo.arm_paths) <= len(octo.arms)
    attach_count = [0] * len(octo.arms)
    for p in octo.arm_paths:
        if not check_path(g, p) or p.length > octo.arm_cap:
            paths_ok = False
        if p.vertices[0] not in reach:
            paths_ok = False
        hit = False
        for i, arm in enumerate(octo.arms):
            if p.vertices[-1] in arm.end1.vertices | arm.end2.vertices:
                attach_count[i] += 1
                hit = True
                break
        if not hit:
            paths_ok = False
        if set(p.vertices) & centers:
            paths_ok = False
    clauses.append(Clause("paths_valid", paths_ok))
    # internally vertex-disjoint: no vertex of one path is interior to another
    disjoint_paths = True
    for i, p in enumerate(octo.arm_paths):
        for q in octo.arm_paths[i + 1:]:
            if set(p.interior()) & set(q.vertices):
                disjoint_paths = False
            if set(q.interior()) & set(p.vertices):
                disjoint_paths = False
    clauses.append(Clause("paths_disjoint", disjoint_paths))
    clauses.append(
        Clause("every_arm_attached", all(c >= 1 for c in attach_count))
    )
    clauses.append(
        Clause(
            "family_minimal",
            len(octo.arm_paths) <= len(octo.arms)
            and all(c == 1 for c in attach_count),
        )
    )
    return ValidationReport(tuple(clauses))


def build_octopus(
    g: Graph,
    pool: list[Adjuster],
    avoid: Iterable[int],
    r3: int,
    r4: int,
) -> Octopus | BuildFailure:
    """Attach r3 arms from a pool of disjoint adjusters to one end of the
    pool's first adjuster by short disjoint paths avoiding every center."""
    if r3 < 0 or r4 < 1:
        raise InvalidArgumentError("need r3 >= 0 and r4 >= 1")
    if not pool:
        raise InvalidArgumentError("pool must contain a core adjuster")
    if r3 > len(pool) - 1:
        return BuildFailure(
            "arms_stalled", f"pool offers {len(pool) - 1} arms, need {r3}"
        )
    avoid_set = g.check_subset(avoid)
    core = pool[0]
    centers: set[int] = set()
    all_pool: set[int] = set()
    for adj in pool:
        centers |= adj.center
        centers |= {adj.core1, adj.core2}
        all_pool |= adj.all_vertices()

    best: Octopus | None = None
    for attached_end in (1, 2):
        reach = core.end1 if attached_end == 1 else core.end2
        arms: list[Adjuster] = []
        paths: list[PathWitness] = []
        # paths only need to be internally disjoint, so endpoints may repeat
        family_vertices: set[int] = set()
        family_interiors: set[int] = set()
        for target in pool[1:]:
            if len(arms) == r3:
                break
            target_ends = target.end1.vertices | target.end2.vertices
            a_side = reach.vertices - family_interiors - avoid_set
            b_side = target_ends - family_interiors - avoid_set
            if not a_side or not b_side:
                continue
            foreign = (all_pool - reach.vertices - target_ends) | centers
            blocked = (avoid_set | family_vertices | foreign) - a_side - b_side
            p = short_connect(g, sorted(a_side), sorted(b_side), blocked, cap=r4)
            if p is None:
                continue
            arms.append(target)
            paths.append(p)
            family_vertices |= set(p.vertices)
            family_interiors |= set(p.interior())
        candidate = Octopus(core, attached_end, tuple(arms), tuple(paths), r4)
        if len(arms) == r3:
            return candidate
        if best is None or len(arms) > len(best.arms):
            best = candidate
    return BuildFailure(
        "arms_stalled",
        f"attached {len(best.arms) if best else 0} of {r3} arms",
        best,
    )
