"""Sublinear vertex expansion: the profile function, verification, and
extraction of expanding subgraphs.

A graph is an expander for profile (epsilon1, k) when every vertex set X
with k/2 <= |X| <= n/2 has external neighborhood of size at least
eps(|X|) * |X|, where eps is the sublinear profile below.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graph import Graph, average_degree, bipartite_half, min_degree_peel
from .outcomes import (
    DensityTooLowError,
    EmptyGraphError,
    InvalidArgumentError,
    TooLargeError,
)

EXHAUSTIVE_CAP = 22


@dataclass(frozen=True)
class ExpansionProfile:
    """Parameters of the sublinear expansion rate eps(x)."""

    epsilon1: float
    k: float

    def __post_init__(self) -> None:
        if self.epsilon1 <= 0 or self.k <= 0:
            raise InvalidArgumentError("profile needs epsilon1 > 0 and k > 0")


def epsilon_of(x: float, profile: ExpansionProfile) -> float:
    """Required expansion rate at set size x.

    Zero below x = k/5; otherwise epsilon1 / ln^2(15x/k), which decreases
    in x but still forces |N(X)| to grow almost linearly.
    """
    if x <= 0:
        raise InvalidArgumentError("set size must be positive")
    if x < profile.k / 5:
        return 0.0
    return profile.epsilon1 / math.log(15.0 * x / profile.k) ** 2


@dataclass(frozen=True)
class ExpanderVerdict:
    """Result of checking the expansion property.

    status is "certified" (exhaustive pass), "refuted" (witness attached),
    or "sampled_ok" (heuristic pass; never a certificate).
    """

    status: str
    sets_checked: int
    witness: frozenset[int] | None = None


def _range_of_sizes(n: int, k: float) -> range:
    lo = max(1, math.ceil(k / 2))
    hi = n // 2
    return range(lo, hi + 1)


def verify_expander(
    g: Graph,
    profile: ExpansionProfile,
    mode: str = "exhaustive",
    trials: int = 200,
    seed: int = 0,
    cap: int = EXHAUSTIVE_CAP,
) -> ExpanderVerdict:
    """Check |N(X)| >= eps(|X|)|X| over k/2 <= |X| <= n/2.

    Exhaustive mode enumerates every candidate set (refusing hosts larger
    than `cap`); sampled mode checks whole components, low-degree prefixes,
    and randomly grown connected sets, and can only refute or report
    "sampled_ok".
    """
    if g.n == 0:
        raise EmptyGraphError("cannot verify expansion of the empty graph")
    sizes = _range_of_sizes(g.n, profile.k)
    if g.n < profile.k:
        # no candidate sets exist, the property holds vacuously
        return ExpanderVerdict("certified", 0)

    masks = [0] * g.n
    for v in g.vertices():
        m = 0
        for w in g.neighbors(v):
            m |= 1 << w
        masks[v] = m

    def violates(xs: tuple[int, ...] | frozenset[int]) -> bool:
        xmask = 0
        nmask = 0
        for v in xs:
            xmask |= 1 << v
            nmask |= masks[v]
        nbrs = (nmask & ~xmask).bit_count()
        return nbrs < epsilon_of(len(xs), profile) * len(xs)

    if mode == "exhaustive":
        if g.n > cap:
            raise TooLargeError(
                f"exhaustive verification capped at {cap} vertices, got {g.n}"
            )
        checked = 0
        for size in sizes:
            for xs in combinations(range(g.n), size):
                checked += 1
                if violates(xs):
                    return ExpanderVerdict("refuted", checked, frozenset(xs))
        return ExpanderVerdict("certified", checked)

    if mode != "sampled":
        raise InvalidArgumentError(f"unknown mode {mode!r}")

    rng = random.Random(seed)
    lo, hi = sizes.start, sizes.stop - 1
    candidates: list[frozenset[int]] = []
    for comp in g.components():
        if lo <= len(comp) <= hi:
            candidates.append(comp)
    by_degree = sorted(g.vertices(), key=lambda v: (g.degree(v), v))
    for size in {lo, (lo + hi) // 2, hi}:
        if lo <= size <= hi:
            candidates.append(frozenset(by_degree[:size]))
    for _ in range(trials):
        size = rng.randint(lo, hi)
        start = rng.randrange(g.n)
        grown = {start}
        frontier = [start]
        while len(grown) < size and frontier:
            u = frontier[rng.randrange(len(frontier))]
            fresh = [w for w in g.neighbors(u) if w not in grown]
            if not fresh:
                frontier.remove(u)
                continue
            w = fresh[rng.randrange(len(fresh))]
            grown.add(w)
            frontier.append(w)
        if lo <= len(grown) <= hi:
            candidates.append(frozenset(grown))
    checked = 0
    for xs in candidates:
        checked += 1
        if violates(xs):
            return ExpanderVerdict("refuted", checked, frozenset(xs))
    return ExpanderVerdict("sampled_ok", checked)


@dataclass(frozen=True)
class ExtractionResult:
    """Expanding subgraph plus its id table into the host and the deepest
    affordable verification verdict."""

    graph: Graph
    ids: tuple[int, ...]
    verdict: ExpanderVerdict


def _half_average_core(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Repeatedly delete a vertex of degree < half the current average.

    Each deletion strictly raises the average, so the fixed point H has
    min degree >= d(H)/2 and d(H) at least the starting average.
    """
    ids = tuple(g.vertices())
    while g.n > 0:
        avg = average_degree(g)
        victim = -1
        for v in g.vertices():
            if Fraction(2 * g.degree(v)) < avg:
                victim = v
                break
        if victim < 0:
            return g, ids
        g, sub = g.delete([victim])
        ids = tuple(ids[i] for i in sub)
    return g, ids


def extract_expander(
    g: Graph,
    profile: ExpansionProfile,
    cap: int = EXHAUSTIVE_CAP,
    trials: int = 200,
    seed: int = 0,
) -> ExtractionResult:
    """Find an expanding subgraph H with d(H) >= d(G)/2 and min degree
    >= d(H)/2.

    Alternates half-average-degree peeling with descent into X u N(X)
    whenever verification refutes expansion and the witness neighborhood
    keeps average degree at least d(G)/2.  The order strictly decreases,
    so the loop terminates; the final verdict is attached as evidence.
    """
    if g.n == 0:
        raise EmptyGraphError("cannot extract from the empty graph")
    floor_avg = average_degree(g) / 2
    h, ids = _half_average_core(g)
    while True:
        mode = "exhaustive" if h.n <= cap else "sampled"
        verdict = verify_expander(h, profile, mode=mode, trials=trials, seed=seed, cap=cap)
        if verdict.status != "refuted":
            return ExtractionResult(h, ids, verdict)
        witness = verdict.witness or frozenset()
        region = set(witness)
        for v in witness:
            region.update(h.neighbors(v))
        if len(region) >= h.n:
            return ExtractionResult(h, ids, verdict)
        cand, cand_ids = h.induced(region)
        if cand.n == 0 or average_degree(cand) < floor_avg:
            return ExtractionResult(h, ids, verdict)
        core, core_ids = _half_average_core(cand)
        h = core
        ids = tuple(ids[cand_ids[i]] for i in core_ids)


@dataclass(frozen=True)
class BipartiteExpander:
    """Bipartite expanding subgraph with min degree >= d, id table, sides
    (in subgraph ids), and the attached verification verdict."""

    graph: Graph
    ids: tuple[int, ...]
    sides: tuple[frozenset[int], frozenset[int]]
    verdict: ExpanderVerdict


def extract_bipartite_expander(
    g: Graph,
    d: Fraction | float,
    profile: ExpansionProfile,
    cap: int = EXHAUSTIVE_CAP,
    trials: int = 200,
    seed: int = 0,
) -> BipartiteExpander:
    """Bipartite expander H inside G with min degree >= d.

    Requires d(G) >= 8d.  Takes the crossing half (keeps half the edges),
    extracts an expander from it, then peels to restore the min-degree
    floor; the composition keeps enough density at every step.
    """
    if g.n == 0:
        raise EmptyGraphError("cannot extract from the empty graph")
    d = Fraction(d).limit_denominator(10**9) if not isinstance(d, Fraction) else d
    if average_degree(g) < 8 * d:
        raise DensityTooLowError(
            f"need average degree >= {8 * d}, have {average_degree(g)}"
        )
    half, _sides = bipartite_half(g)
    res = extract_expander(half, profile, cap=cap, trials=trials, seed=seed)
    t = math.ceil(d)
    core, core_ids = min_degree_peel(res.graph, t)
    if core.n == 0:
        raise DensityTooLowError(
            f"min-degree floor {t} emptied the expanding subgraph"
        )
    ids = tuple(res.ids[i] for i in core_ids)
    coloring = core.two_coloring()
    assert coloring is not None, "crossing subgraph must stay bipartite"
    side0 = frozenset(v for v in core.vertices() if coloring[v] == 0)
    side1 = frozenset(v for v in core.vertices() if coloring[v] == 1)
    return BipartiteExpander(core, ids, (side0, side1), res.verdict)


def kst_free_profile_transform(
    profile: ExpansionProfile, d: float, s: int, t: int
) -> ExpansionProfile:
    """Trade profile strength for a smaller start point on hosts with no
    K_{s,t}: an (eps1, eps2 * d^(s/(s-1)))-expander of min degree >= d/16
    is also an (eps1, eps2 * d)-expander.

    The caller's profile must have k = eps2 * d^(s/(s-1)) with
    0 < eps2 < 1 / (100000 * t); returns the profile with k = eps2 * d.
    """
    if t < s or s < 2:
        raise InvalidArgumentError("need t >= s >= 2")
    if d <= 0:
        raise InvalidArgumentError("need d > 0")
    exponent = s / (s - 1)
    eps2 = profile.k / d**exponent
    if not 0 < eps2 < 1.0 / (100000 * t):
        raise InvalidArgumentError(
            f"derived eps2 = {eps2} outside (0, 1/{100000 * t})"
        )
    return ExpansionProfile(profile.epsilon1, eps2 * d)
