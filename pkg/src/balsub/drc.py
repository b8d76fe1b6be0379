"""Dependent random choice, the dense TK^(2) embedder, and degree bounds.

All probability claims are converted to Las Vegas procedures: outputs are
verified exhaustively before being returned, and randomness only controls
how long that takes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Iterable

from .certify import SubdivisionCertificate, verify_subdivision
from .connect import PathWitness
from .graph import Graph
from .outcomes import BuildFailure, InvalidArgumentError


@dataclass(frozen=True)
class DrcParams:
    """Sample count t, subset size r, common-neighbor demand c, target a."""

    t: int
    r: int
    c: int
    a: int

    def __post_init__(self) -> None:
        if min(self.t, self.r, self.c, self.a) < 1:
            raise InvalidArgumentError("all DRC parameters must be >= 1")
        if self.r > self.a:
            raise InvalidArgumentError("subset size r cannot exceed target a")


def drc_feasible(n1: int, n2: int, alpha, p: DrcParams) -> bool:
    """Exact rational check of alpha^t*n1 - C(n1,r)*(c/n2)^t >= a."""
    if n1 < 0 or n2 < 1:
        raise InvalidArgumentError("need n1 >= 0 and n2 >= 1")
    a = Fraction(alpha)
    if not 0 <= a <= 1:
        raise InvalidArgumentError("alpha must lie in [0, 1]")
    lhs = a**p.t * n1 - comb(n1, p.r) * Fraction(p.c, n2) ** p.t
    return lhs >= p.a


def _common_neighbors(g: Graph, vertices: Iterable[int], within: frozenset[int]):
    out: frozenset[int] | None = None
    for v in vertices:
        nbrs = frozenset(w for w in g.neighbors(v) if w in within)
        out = nbrs if out is None else out & nbrs
        if not out:
            break
    return out if out is not None else within


def drc_select(
    g: Graph,
    partition: tuple[Iterable[int], Iterable[int]],
    p: DrcParams,
    seed: int,
    max_retries: int = 64,
) -> frozenset[int] | BuildFailure:
    """Select A0 within V1 such that every r-subset of A0 has at least c
    common neighbors in V2 and |A0| >= a.

    Samples t vertices of V2 with repetition, takes their common
    neighborhood, then deletes one vertex (the largest id) from each bad
    r-subset.  The two guarantees are re-verified exhaustively before
    returning; fresh randomness is drawn on failure.  Edges must not run
    inside either part (edges touching vertices outside both parts are
    ignored).
    """
    v1 = g.check_subset(partition[0])
    v2 = g.check_subset(partition[1])
    if v1 & v2:
        raise InvalidArgumentError("partition sides overlap")
    for side in (v1, v2):
        for u in side:
            if any(w in side for w in g.neighbors(u)):
                raise InvalidArgumentError("an edge runs inside one side")
    if not v2:
        raise InvalidArgumentError("second side is empty")
    crossing = sum(1 for u in v1 for w in g.neighbors(u) if w in v2)
    alpha = Fraction(crossing, len(v1) * len(v2)) if v1 else Fraction(0)
    if not drc_feasible(len(v1), len(v2), alpha, p):
        raise InvalidArgumentError("parameters are infeasible for this host")

    rng = random.Random(seed)
    pool2 = sorted(v2)
    for _ in range(max_retries):
        sample = [rng.choice(pool2) for _ in range(p.t)]
        hood = frozenset(set(sample))
        a_set = sorted(
            u for u in v1 if all(g.has_edge(u, s) for s in hood)
        )
        deleted: set[int] = set()
        for subset in combinations(a_set, p.r):
            if any(u in deleted for u in subset):
                continue
            commons = _common_neighbors(g, subset, v2)
            if len(commons) < p.c:
                deleted.add(max(subset))
        a0 = frozenset(u for u in a_set if u not in deleted)
        if len(a0) >= p.a and all(
            len(_common_neighbors(g, subset, v2)) >= p.c
            for subset in combinations(sorted(a0), p.r)
        ):
            return a0
    return BuildFailure(
        "retries_exhausted", f"no valid selection in {max_retries} attempts"
    )


# -- dense TK^(2) embedding ----------------------------------------------------


class _BudgetExceeded(Exception):
    pass


def _middle_matching(
    g: Graph, branch: list[int]
) -> dict[tuple[int, int], int] | None:
    """Assign a distinct middle vertex to every branch pair (Kuhn)."""
    branch_set = set(branch)
    pairs = list(combinations(sorted(branch), 2))
    cands: dict[tuple[int, int], list[int]] = {}
    for u, v in pairs:
        overlap = sorted(
            set(g.neighbors(u)) & set(g.neighbors(v)) - branch_set
        )
        if not overlap:
            return None
        cands[(u, v)] = overlap
    owner: dict[int, tuple[int, int]] = {}

    def assign(pair: tuple[int, int], banned: set[int]) -> bool:
        for m in cands[pair]:
            if m in banned:
                continue
            banned.add(m)
            if m not in owner or assign(owner[m], banned):
                owner[m] = pair
                return True
        return False

    for pair in pairs:
        if not assign(pair, set()):
            return None
    return {pair: m for m, pair in owner.items()}


def dense_tk2(
    g: Graph, k: int, seed: int = 0, node_budget: int = 200_000
) -> SubdivisionCertificate | BuildFailure:
    """Embed a TK_k^(2): k branch vertices plus one distinct middle vertex
    per pair.

    Backtracking over branch sets in (degree desc, id asc) order with
    common-neighbor and union-capacity pruning; middles are assigned by
    bipartite matching rather than greedily.  On bipartite hosts a
    dependent-random-choice pass reorders candidates toward a side whose
    subsets are rich in common neighbors.
    """
    if k < 2:
        raise InvalidArgumentError("need k >= 2")
    need = k + comb(k, 2)
    comps = [c for c in g.components() if len(c) >= need]
    if not comps:
        return BuildFailure(
            "no_embedding", f"no component has the {need} vertices required"
        )

    nodes = 0
    masks = [0] * g.n
    for v in g.vertices():
        m = 0
        for w in g.neighbors(v):
            m |= 1 << w
        masks[v] = m

    def search(order: list[int]) -> SubdivisionCertificate | None:
        nonlocal nodes

        def extend(branch: list[int], bmask: int, union: int, start: int):
            nonlocal nodes
            nodes += 1
            if nodes > node_budget:
                raise _BudgetExceeded
            if len(branch) == k:
                middles = _middle_matching(g, branch)
                if middles is None:
                    return None
                paths = {
                    pair: PathWitness((pair[0], m, pair[1]))
                    for pair, m in middles.items()
                }
                return SubdivisionCertificate.from_paths(2, branch, paths)
            for idx in range(start, len(order)):
                v = order[idx]
                excl = ~(bmask | (1 << v))
                if any(masks[u] & masks[v] & excl == 0 for u in branch):
                    continue
                branch.append(v)
                grown_mask = bmask | (1 << v)
                grown_union = union
                for u in branch[:-1]:
                    grown_union |= masks[u] & masks[v]
                # the pairs need C(j, 2) distinct middles between them
                if (grown_union & ~grown_mask).bit_count() >= comb(len(branch), 2):
                    found = extend(branch, grown_mask, grown_union, idx + 1)
                    if found is not None:
                        return found
                branch.pop()
            return None

        return extend([], 0, 0, 0)

    coloring = g.two_coloring()
    try:
        for comp in comps:
            order = sorted(comp, key=lambda v: (-g.degree(v), v))
            if coloring is not None:
                order = _drc_reorder(g, comp, coloring, k, seed, order)
            cert = search(order)
            if cert is not None:
                report = verify_subdivision(g, cert)
                assert report.passed, report.failures()
                return cert
    except _BudgetExceeded:
        return BuildFailure(
            "no_embedding", f"search budget of {node_budget} nodes exhausted"
        )
    return BuildFailure("no_embedding", f"no TK_{k} with all edges subdivided once")


def _drc_reorder(
    g: Graph,
    comp: tuple[int, ...],
    coloring: dict[int, int],
    k: int,
    seed: int,
    order: list[int],
) -> list[int]:
    """Move a DRC-selected subset to the front of the candidate order."""
    side0 = frozenset(v for v in comp if coloring[v] == 0)
    side1 = frozenset(v for v in comp if coloring[v] == 1)
    for v1, v2 in ((side0, side1), (side1, side0)):
        if len(v1) < k or not v2:
            continue
        try:
            pick = drc_select(
                g, (v1, v2), DrcParams(t=2, r=2, c=min(k, len(v2)), a=k), seed
            )
        except InvalidArgumentError:
            continue
        if isinstance(pick, BuildFailure):
            continue
        front = [v for v in order if v in pick]
        back = [v for v in order if v not in pick]
        return front + back
    return order


# -- Kővári–Sós–Turán bound ----------------------------------------------------


def _falling_binomial(x: Fraction, s: int) -> Fraction:
    out = Fraction(1)
    for i in range(s):
        out *= x - i
    return out / factorial(s)


def kst_degree_bound(nA: int, nB: int, s: int, t: int) -> Fraction:
    """Largest average degree d of an nA-side compatible with K_{s,t}
    freeness: nA*C(d, s) <= t*C(nB, s), solved to 1e-9 by bisection on the
    generalized binomial; clamped to nB."""
    if s < 1 or t < 1 or nA < 1 or nB < 0:
        raise InvalidArgumentError("need nA, s, t >= 1 and nB >= 0")
    if s == 1:
        return min(Fraction(t * nB, nA), Fraction(nB))
    rhs = t * comb(nB, s)

    def overfull(x: Fraction) -> bool:
        return nA * _falling_binomial(x, s) > rhs

    hi = Fraction(nB)
    if not overfull(hi):
        return hi
    lo = Fraction(s - 1)
    while hi - lo > Fraction(1, 10**9):
        mid = (lo + hi) / 2
        if overfull(mid):
            hi = mid
        else:
            lo = mid
    return lo


# -- robust degree dichotomy ----------------------------------------------------


@dataclass(frozen=True)
class RobustDegreeVerdict:
    kind: str  # "degree_ok" | "found_tk2"
    average: Fraction
    threshold: Fraction
    certificate: SubdivisionCertificate | None = None


def robust_degree_or_tk2(
    g: Graph,
    w: Iterable[int],
    d,
    kappa: int,
    seed: int = 0,
) -> RobustDegreeVerdict | BuildFailure:
    """Either G - W keeps half the average degree, or the crossing graph
    between V(G)-W and W yields a TK_kappa^(2); otherwise a Failure
    carrying both facts."""
    w_set = g.check_subset(w)
    rest = [v for v in g.vertices() if v not in w_set]
    threshold = Fraction(d) / 2
    if rest:
        sub, _ = g.induced(rest)
        degsum = sum(sub.degree(v) for v in sub.vertices())
        average = Fraction(degsum, sub.n)
    else:
        average = Fraction(0)
    if average >= threshold:
        return RobustDegreeVerdict("degree_ok", average, threshold)

    index = {v: i for i, v in enumerate(rest)}
    offset = len(rest)
    w_sorted = sorted(w_set)
    for i, v in enumerate(w_sorted):
        index[v] = offset + i
    crossing_edges = [
        (index[u], index[v])
        for u, v in g.edges()
        if (u in w_set) != (v in w_set)
    ]
    crossing = Graph(len(index), crossing_edges)
    attempt = dense_tk2(crossing, kappa, seed)
    if isinstance(attempt, BuildFailure):
        return BuildFailure(
            "no_robust_structure",
            f"average degree {average} < {threshold} and crossing graph "
            f"gave no TK_{kappa}: {attempt.reason}",
            partial=(average, attempt),
        )
    back = {i: v for v, i in index.items()}
    lifted = SubdivisionCertificate.from_paths(
        2,
        [back[b] for b in attempt.branch],
        {
            (min(back[u], back[v]), max(back[u], back[v])): PathWitness(
                tuple(back[x] for x in path.vertices)
            )
            for (u, v), path in attempt.pairs()
        },
    )
    report = verify_subdivision(g, lifted)
    assert report.passed, report.failures()
    return RobustDegreeVerdict("found_tk2", average, threshold, lifted)
