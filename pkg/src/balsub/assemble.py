"""Pipeline orchestration: units, connections, classification, assembly.

Two modes share one pipeline.  Paper mode computes the constants from
their defining formulas; at desk scale those thresholds usually declare
the input infeasible, and the run ends in a structured failure rather
than a silently rescaled success.  Desk mode takes explicit (or
auto-filled) overrides sized to hosts that fit in memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .certify import (
    SubdivisionCertificate,
    best_balanced_clique,
    brute_force_subdivision,
    verify_subdivision,
)
from .connect import PathWitness
from .drc import dense_tk2
from .expander import (
    BipartiteExpander,
    ExpansionProfile,
    extract_bipartite_expander,
    kst_free_profile_transform,
)
from .gadgets import (
    Unit,
    build_hub,
    build_simple_adjuster,
    build_unit,
    validate_adjuster,
    validate_hub,
)
from .graph import Graph, average_degree
from .outcomes import (
    BuildFailure,
    DensityTooLowError,
    InvalidArgumentError,
)
from .router import exact_path_in_region


@dataclass(frozen=True)
class Overrides:
    """Explicit desk-scale constants; None means unset."""

    m: Optional[int] = None
    big_d: Optional[int] = None
    ell: Optional[int] = None
    c: Optional[float] = None
    h0: Optional[int] = None
    h1: Optional[int] = None
    h2: Optional[int] = None
    h3: Optional[int] = None
    target_k: Optional[int] = None
    adjuster_size: Optional[int] = None
    adjuster_m: Optional[int] = None
    bad_threshold: Optional[int] = None
    sparse_threshold: Optional[float] = None
    sparse_exponent: int = 2
    exhaustive_cap: Optional[int] = None
    node_budget: int = 200_000


@dataclass(frozen=True)
class RunConfig:
    mode: str = "desk"  # "desk" | "paper"
    kappa_rule: str = "sqrt"  # "sqrt" | "linear"
    epsilon1: float = 1.0
    epsilon2: Optional[float] = None
    seed: int = 0
    gadget_probes: bool = True
    overrides: Overrides = field(default_factory=Overrides)

    def __post_init__(self) -> None:
        if self.mode not in ("desk", "paper"):
            raise InvalidArgumentError(f"unknown mode {self.mode!r}")
        if self.kappa_rule not in ("sqrt", "linear"):
            raise InvalidArgumentError(f"unknown kappa rule {self.kappa_rule!r}")

    def resolved_epsilon2(self) -> float:
        if self.epsilon2 is not None:
            return self.epsilon2
        return 1e-6 if self.kappa_rule == "linear" else 0.1


@dataclass(frozen=True)
class ResolvedConstants:
    kappa: float
    m: int
    big_d: float
    ell: int
    c: float
    source: str


def derive_config(n: int, d, cfg: RunConfig) -> ResolvedConstants:
    """Resolve (kappa, m, D, ell, c) from formulas (paper) or overrides (desk).

    Paper: m is the smallest even integer strictly greater than
    80*ln^4(n/kappa^2); D = kappa^2*m^4/10^7; ell = m^3; c = 1/200.
    """
    if n < 1 or d <= 0:
        raise InvalidArgumentError("need n >= 1 and d > 0")
    dv = float(d)
    kappa = math.sqrt(dv) if cfg.kappa_rule == "sqrt" else dv
    if cfg.mode == "paper":
        ratio = n / (kappa * kappa)
        raw = 80.0 * math.log(ratio) ** 4 if ratio > 1 else 0.0
        m = 2 * math.floor(raw / 2) + 2
        return ResolvedConstants(
            kappa=kappa,
            m=m,
            big_d=kappa * kappa * m**4 / 1e7,
            ell=m**3,
            c=1 / 200,
            source="paper",
        )
    ov = cfg.overrides
    missing = [
        name
        for name, value in (("m", ov.m), ("D", ov.big_d), ("ell", ov.ell), ("c", ov.c))
        if value is None
    ]
    if missing:
        raise InvalidArgumentError(
            f"desk mode requires explicit overrides for: {', '.join(missing)}"
        )
    return ResolvedConstants(
        kappa=kappa, m=ov.m, big_d=float(ov.big_d), ell=ov.ell, c=ov.c, source="desk"
    )


@dataclass
class PipelineTrace:
    entries: list = field(default_factory=list)
    route: str = ""
    units: list = field(default_factory=list)
    probes: dict = field(default_factory=dict)

    def add(self, message: str) -> None:
        self.entries.append(message)


@dataclass(frozen=True)
class PipelineOutcome:
    kind: str  # "certificate" | "dense_fallback" | "sparse_regime" | "failure"
    trace: PipelineTrace
    certificate: Optional[SubdivisionCertificate] = None
    failure: Optional[BuildFailure] = None


def classify_units(units, usage, threshold: int):
    """Partition units into (good, bad) by strict interior usage."""
    used = frozenset(usage)
    good, bad = [], []
    for unit in units:
        if len(unit.interior() & used) > threshold:
            bad.append(unit)
        else:
            good.append(unit)
    return good, bad


def auto_desk_overrides(g: Graph, ov: Overrides) -> Overrides:
    """Fill unset unit-pipeline parameters from the host size.

    target_k is the largest k whose k disjoint lean units (interior about
    2k-1 vertices each) fit; hubs default to single-branch (1,1) shape with
    spokes of length at most 2.
    """
    target = ov.target_k
    if target is None:
        target = 2
        while (target + 1) * (2 * (target + 1) - 1) <= g.n:
            target += 1
    filled = replace(
        ov,
        target_k=target,
        h0=ov.h0 if ov.h0 is not None else max(1, target - 1),
        h1=ov.h1 if ov.h1 is not None else 1,
        h2=ov.h2 if ov.h2 is not None else 1,
        h3=ov.h3 if ov.h3 is not None else 2,
    )
    return filled


def _max_clique(order: list[int], adjacent) -> list[int]:
    for size in range(len(order), 0, -1):
        for combo in combinations(order, size):
            if all(adjacent(a, b) for a, b in combinations(combo, 2)):
                return list(combo)
    return []


def find_balanced_subdivision(
    g: Graph, cfg: RunConfig, trace: Optional[PipelineTrace] = None
) -> SubdivisionCertificate | BuildFailure:
    """Units with disjoint interiors, core pigeonholing, exact-length
    connections between unused hub centers, good/bad classification, and a
    clique of fully-connected units glued into a TK_k^(ell).
    """
    trace = trace if trace is not None else PipelineTrace()
    if g.n == 0:
        return BuildFailure("no_units", "empty host", partial=trace)

    if cfg.mode == "paper":
        d = average_degree(g)
        consts = derive_config(g.n, max(float(d), 1e-9), cfg)
        target_k = max(2, math.floor(consts.c * consts.kappa / 4))
        h0 = max(1, math.floor(consts.c * consts.kappa))
        h1 = h2 = consts.m**4
        h3 = 2 * consts.m
        ell: Optional[int] = consts.ell
        bad_threshold = math.floor(consts.kappa * consts.m**3)
        trace.add(
            f"paper constants: kappa={consts.kappa:.6f} m={consts.m} "
            f"D={consts.big_d:.6f} ell={consts.ell}"
        )
    else:
        ov = auto_desk_overrides(g, cfg.overrides)
        target_k = ov.target_k
        h0, h1, h2, h3 = ov.h0, ov.h1, ov.h2, ov.h3
        ell = ov.ell
        bad_threshold = ov.bad_threshold if ov.bad_threshold is not None else 0
        trace.add(
            f"desk unit parameters: target_k={target_k} "
            f"(h0,h1,h2,h3)=({h0},{h1},{h2},{h3}) ell={ell}"
        )

    units: list[Unit] = []
    avoid: set[int] = set()
    for i in range(target_k):
        built = build_unit(g, avoid, h0, h1, h2, h3)
        if isinstance(built, BuildFailure):
            trace.add(f"unit {i}: stalled ({built.reason}: {built.detail})")
            break
        units.append(built)
        avoid |= built.interior()
        trace.add(
            f"unit {i}: core {built.core}, {len(built.interior())} interior"
        )
    trace.units = list(units)
    if len(units) < 2:
        return BuildFailure(
            "no_units",
            f"only {len(units)} unit(s) fit the host",
            partial=trace,
        )

    coloring = g.two_coloring()
    if coloring is not None:
        by_side = {0: [], 1: []}
        for unit in units:
            by_side[coloring[unit.core]].append(unit)
        kept = (
            by_side[0] if len(by_side[0]) >= len(by_side[1]) else by_side[1]
        )
        if len(kept) < len(units):
            trace.add(
                f"pigeonhole: kept {len(kept)} of {len(units)} units with "
                "cores on one side"
            )
    else:
        kept = units
    if len(kept) < 2:
        return BuildFailure(
            "no_units", "pigeonholing left fewer than two units", partial=trace
        )

    max_spoke = max(s.length for unit in kept for s in unit.spokes)
    if ell is None:
        # bipartite hosts force even center-to-center segments; elsewhere a
        # single-edge segment saves one middle vertex per connection
        ell = 2 * max_spoke + (2 if coloring is not None else 1)
        trace.add(f"ell resolved to {ell} (longest spoke {max_spoke})")

    interiors: set[int] = set()
    for unit in kept:
        assert not (unit.interior() & interiors), "unit interiors overlap"
        interiors |= unit.interior()
    cores = [unit.core for unit in kept]

    usage: set[int] = set()
    hub_free = {i: list(range(len(unit.hubs))) for i, unit in enumerate(kept)}
    glued: dict[tuple[int, int], PathWitness] = {}
    connected: set[tuple[int, int]] = set()
    budget = cfg.overrides.node_budget
    for i, j in combinations(range(len(kept)), 2):
        found = None
        for hi in list(hub_free[i]):
            if found:
                break
            for hj in list(hub_free[j]):
                sa, sb = kept[i].spokes[hi], kept[j].spokes[hj]
                ca = kept[i].hubs[hi].center
                cb = kept[j].hubs[hj].center
                seg_len = ell - sa.length - sb.length
                if seg_len < 1:
                    continue
                if coloring is not None and (
                    (coloring[ca] ^ coloring[cb]) != seg_len % 2
                ):
                    continue
                blocked = (interiors | usage) - {ca, cb}
                allowed = frozenset(
                    v for v in g.vertices() if v not in blocked
                )
                seg = exact_path_in_region(g, allowed, ca, (cb,), seg_len, budget)
                if seg is None:
                    continue
                full = (
                    tuple(sa.vertices)
                    + tuple(seg[1:])
                    + tuple(reversed(sb.vertices))[1:]
                )
                witness = PathWitness(full)
                assert witness.length == ell
                inner = set(seg[1:-1])
                assert not (inner & usage), "segment reused a vertex"
                usage |= inner
                hub_free[i].remove(hi)
                hub_free[j].remove(hj)
                glued[(i, j)] = witness
                connected.add((i, j))
                found = witness
                break
        trace.add(
            f"pair ({i},{j}): " + ("connected" if found else "no segment")
        )

    good, bad = classify_units(kept, usage, bad_threshold)
    good_idx = [i for i, unit in enumerate(kept) if unit in good]
    if bad:
        trace.add(f"classified {len(bad)} unit(s) bad at threshold {bad_threshold}")

    clique = _max_clique(
        good_idx, lambda a, b: (min(a, b), max(a, b)) in connected
    )
    trace.add(f"connection clique size {len(clique)} of {len(kept)} units")
    if len(clique) >= 2:
        branch = [kept[i].core for i in clique]
        paths = {
            (kept[i].core, kept[j].core): glued[(i, j)]
            for i, j in combinations(sorted(clique), 2)
        }
        cert = SubdivisionCertificate.from_paths(ell, branch, paths)
        report = verify_subdivision(g, cert)
        assert report.passed, report.failures()
        trace.route = trace.route or "units"
        return cert
    return BuildFailure(
        "connection_stalled",
        f"no clique of connected units (built {len(kept)}, "
        f"{len(connected)} pairs joined)",
        partial=trace,
    )


def _component_k_cap(g: Graph) -> int:
    best = max((len(c) for c in g.components()), default=0)
    k = 2
    while (k + 1) + (k + 1) * k // 2 <= best:
        k += 1
    return k


def _lift_certificate(
    cert: SubdivisionCertificate, ids: tuple[int, ...]
) -> SubdivisionCertificate:
    return SubdivisionCertificate.from_paths(
        cert.ell,
        [ids[b] for b in cert.branch],
        {
            (ids[u], ids[v]): PathWitness(tuple(ids[x] for x in p.vertices))
            for (u, v), p in cert.pairs()
        },
    )


def top_level(g: Graph, cfg: RunConfig) -> PipelineOutcome:
    """Extraction, branch selection, and the subdivision pipeline.

    Desk-mode route order: sparse check (only if a threshold is set),
    dense TK^(2) sweep, unit pipeline on the extracted expander, brute
    force for tiny hosts.  Every certificate is re-verified against the
    input graph before the outcome is returned.
    """
    trace = PipelineTrace()
    if g.n == 0:
        return PipelineOutcome(
            "failure", trace, failure=BuildFailure("empty_graph", "no vertices")
        )
    d = average_degree(g)
    d1 = d / 8
    eps2 = cfg.resolved_epsilon2()
    exponent = 2.0 if cfg.kappa_rule == "linear" else 1.0
    k_profile = max(eps2 * float(d1) ** exponent, 1e-9)
    profile = ExpansionProfile(cfg.epsilon1, k_profile)
    trace.add(
        f"host: n={g.n} d={float(d):.6f}; d1={float(d1):.6f}; "
        f"profile k={k_profile:.9f}"
    )

    expander: Optional[BipartiteExpander] = None
    cap = cfg.overrides.exhaustive_cap
    try:
        if cap is not None:
            expander = extract_bipartite_expander(
                g, d1, profile, cap=cap, seed=cfg.seed
            )
        else:
            expander = extract_bipartite_expander(g, d1, profile, seed=cfg.seed)
        trace.add(
            f"bipartite expander: n={expander.graph.n} "
            f"verdict={expander.verdict.status}"
        )
    except DensityTooLowError as exc:
        trace.add(f"bipartite extraction failed: {exc}")

    if cfg.kappa_rule == "linear":
        try:
            transformed = kst_free_profile_transform(profile, float(d1), 2, 2)
            trace.add(
                f"profile transform (s=t=2): k {profile.k:.9f} -> "
                f"{transformed.k:.9f}"
            )
            trace.probes["transform"] = transformed
        except InvalidArgumentError as exc:
            trace.add(f"profile transform inapplicable: {exc}")

    if cfg.gadget_probes and expander is not None and expander.graph.n >= 2:
        _run_probes(expander.graph, cfg, trace)

    ov = cfg.overrides
    threshold = None
    if cfg.mode == "paper":
        threshold = math.log(max(g.n, 2)) ** ov.sparse_exponent
    elif ov.sparse_threshold is not None:
        threshold = ov.sparse_threshold
    if threshold is not None and float(d1) < threshold:
        trace.route = "sparse"
        trace.add(
            f"sparse regime: d1={float(d1):.6f} < threshold {threshold:.6f}"
        )
        cert = _brute_route(g, cfg, trace) if g.n <= 12 else None
        return PipelineOutcome("sparse_regime", trace, certificate=cert)

    if ov.ell in (None, 2):
        if ov.target_k is not None:
            start = ov.target_k
        else:
            # a branch vertex keeps k-1 distinct host edges, so k <= maxdeg+1
            max_deg = max(g.degree(v) for v in g.vertices())
            start = min(_component_k_cap(g), max_deg + 1)
        for k in range(start, 1, -1):
            attempt = dense_tk2(g, k, cfg.seed, ov.node_budget)
            if isinstance(attempt, SubdivisionCertificate):
                trace.route = "dense_tk2"
                trace.add(f"dense route: TK_{k} with ell=2")
                return PipelineOutcome(
                    "dense_fallback", trace, certificate=attempt
                )
            if ov.target_k is not None:
                break
        trace.add("dense route: no embedding")

    if expander is not None and expander.graph.n >= 3:
        result = find_balanced_subdivision(expander.graph, cfg, trace)
        if isinstance(result, SubdivisionCertificate):
            lifted = _lift_certificate(result, expander.ids)
            report = verify_subdivision(g, lifted)
            assert report.passed, report.failures()
            trace.route = "units"
            return PipelineOutcome("certificate", trace, certificate=lifted)
        trace.add(f"unit pipeline: {result.reason} ({result.detail})")

    if g.n <= 12:
        cert = _brute_route(g, cfg, trace)
        if cert is not None:
            trace.route = "brute_force"
            return PipelineOutcome("certificate", trace, certificate=cert)

    return PipelineOutcome(
        "failure",
        trace,
        failure=BuildFailure(
            "pipeline_exhausted", "no route produced a certificate", partial=trace
        ),
    )


def _brute_route(
    g: Graph, cfg: RunConfig, trace: PipelineTrace
) -> Optional[SubdivisionCertificate]:
    ov = cfg.overrides
    if ov.target_k is not None and ov.ell is not None:
        result = brute_force_subdivision(g, ov.target_k, ov.ell)
        if isinstance(result, SubdivisionCertificate):
            trace.add(
                f"brute force: TK_{ov.target_k} with ell={ov.ell}"
            )
            return result
        trace.add("brute force: pinned (k, ell) not embeddable")
        return None
    best = best_balanced_clique(g)
    if isinstance(best, tuple):
        k, ell, cert = best
        if ov.ell is not None and ell != ov.ell:
            result = brute_force_subdivision(g, k, ov.ell)
            if isinstance(result, SubdivisionCertificate):
                trace.add(f"brute force: TK_{k} at pinned ell={ov.ell}")
                return result
            return None
        trace.add(f"brute force: TK_{k} with ell={ell}")
        return cert
    return None


def _run_probes(h: Graph, cfg: RunConfig, trace: PipelineTrace) -> None:
    """Build one hub and one simple adjuster on the expander as evidence
    the gadget layer applies to this host; both validated, never assumed."""
    c4 = cfg.kappa_rule == "linear"
    try:
        hub = build_hub(h, (), 2, 2, c4_mode=c4)
    except InvalidArgumentError as exc:
        trace.add(f"probe hub aborted: {exc}")
        hub = None
    if hub is not None and not isinstance(hub, BuildFailure):
        if validate_hub(h, hub).passed:
            trace.probes["hub"] = hub
            trace.add(f"probe hub: center {hub.center} validated")
        else:
            trace.add("probe hub: built but failed validation")
    else:
        trace.add("probe hub: not buildable")

    ov = cfg.overrides
    size = ov.adjuster_size if ov.adjuster_size is not None else (
        4 if h.n >= 20 else 1
    )
    m = ov.adjuster_m if ov.adjuster_m is not None else 2
    adj = build_simple_adjuster(h, (), size, m, c4_mode=c4)
    if not isinstance(adj, BuildFailure):
        if validate_adjuster(h, adj).passed:
            trace.probes["adjuster"] = adj
            trace.add(
                f"probe adjuster: cycle of {len(adj.center) + 2} vertices, "
                f"menu {sorted(adj.menu())}"
            )
        else:
            trace.add("probe adjuster: built but failed validation")
    else:
        trace.add(f"probe adjuster: {adj.reason}")
