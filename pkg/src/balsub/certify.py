"""Balanced-subdivision certificates, their verifier, and small oracles.

A certificate is host-independent data; verification recomputes every
clause against a concrete graph.  The brute-force oracle is three-valued:
NotFound is a proof of absence only when the search completed within
budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .connect import PathWitness
from .graph import Graph
from .outcomes import Clause, InvalidArgumentError, ValidationReport


@dataclass(frozen=True)
class SubdivisionCertificate:
    """A TK_k^(ell): k branch vertices and one length-ell path per pair."""

    ell: int
    branch: tuple[int, ...]
    pair_paths: tuple[tuple[tuple[int, int], PathWitness], ...]

    @classmethod
    def from_paths(
        cls,
        ell: int,
        branch: Iterable[int],
        paths: Mapping[tuple[int, int], PathWitness],
    ) -> "SubdivisionCertificate":
        """Canonicalize: branch sorted, pair keys min-first, every path
        oriented from the smaller branch vertex."""
        if ell < 1:
            raise InvalidArgumentError("ell must be >= 1")
        ordered = tuple(sorted(branch))
        canon: dict[tuple[int, int], PathWitness] = {}
        for (u, v), path in paths.items():
            a, b = min(u, v), max(u, v)
            if path.vertices and path.vertices[0] == b:
                path = path.reversed()
            canon[(a, b)] = path
        return cls(ell, ordered, tuple(sorted(canon.items())))

    @property
    def k(self) -> int:
        return len(self.branch)

    def pairs(self):
        return iter(self.pair_paths)

    def path_for(self, u: int, v: int) -> PathWitness | None:
        key = (min(u, v), max(u, v))
        for pair, path in self.pair_paths:
            if pair == key:
                return path
        return None

    def all_vertices(self) -> frozenset[int]:
        verts = set(self.branch)
        for _, path in self.pair_paths:
            verts |= set(path.vertices)
        return frozenset(verts)

    def to_json_dict(self) -> dict:
        return {
            "ell": self.ell,
            "branch": list(self.branch),
            "paths": [
                {"u": u, "v": v, "vertices": list(path.vertices)}
                for (u, v), path in self.pair_paths
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SubdivisionCertificate":
        try:
            ell = int(data["ell"])
            branch = [int(b) for b in data["branch"]]
            paths = {
                (int(entry["u"]), int(entry["v"])): PathWitness(
                    tuple(int(x) for x in entry["vertices"])
                )
                for entry in data["paths"]
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidArgumentError(f"malformed certificate: {exc}") from exc
        return cls.from_paths(ell, branch, paths)


def verify_subdivision(g: Graph, cert: SubdivisionCertificate) -> ValidationReport:
    """Recheck every certificate clause against the host graph."""
    clauses: list[Clause] = []
    branch = cert.branch
    in_range = all(0 <= b < g.n for b in branch)
    clauses.append(
        Clause(
            "branch_distinct",
            in_range and len(set(branch)) == len(branch) and len(branch) >= 2,
        )
    )
    want_pairs = set(combinations(sorted(set(branch)), 2))
    have_pairs = [pair for pair, _ in cert.pair_paths]
    clauses.append(
        Clause(
            "pairs_complete",
            set(have_pairs) == want_pairs and len(have_pairs) == len(want_pairs),
            "" if set(have_pairs) == want_pairs else f"missing {sorted(want_pairs - set(have_pairs))[:3]}",
        )
    )

    endpoints_ok = True
    lengths_ok = True
    edges_ok = True
    bad_length_pair = ""
    for (u, v), path in cert.pair_paths:
        if not path.vertices or path.vertices[0] != u or path.vertices[-1] != v:
            endpoints_ok = False
        if path.length != cert.ell:
            lengths_ok = False
            bad_length_pair = f"pair {(u, v)} has length {path.length}"
        if not all(
            0 <= x < g.n for x in path.vertices
        ) or not all(
            g.has_edge(a, b) for a, b in zip(path.vertices, path.vertices[1:])
        ):
            edges_ok = False
    clauses.append(Clause("endpoints_match", endpoints_ok))
    clauses.append(Clause("uniform_length", lengths_ok, bad_length_pair))
    clauses.append(Clause("edges_exist", edges_ok))

    seen_internal: set[int] = set()
    disjoint = True
    off_branch = True
    for _, path in cert.pair_paths:
        inner = set(path.interior())
        if inner & seen_internal:
            disjoint = False
        if inner & set(branch):
            off_branch = False
        seen_internal |= inner
    clauses.append(Clause("internals_disjoint", disjoint))
    clauses.append(Clause("internals_avoid_branch", off_branch))
    return ValidationReport(tuple(clauses))


# -- brute-force oracles --------------------------------------------------------


@dataclass(frozen=True)
class NotFound:
    """Proof of absence: the search space was exhausted."""


@dataclass(frozen=True)
class BudgetExhausted:
    nodes: int


class _OutOfBudget(Exception):
    pass


def _paths_of_length(
    g: Graph,
    u: int,
    v: int,
    length: int,
    banned: set[int],
    counter: list[int],
    budget: int,
):
    """Yield simple u-v paths with exactly `length` edges whose internal
    vertices avoid `banned`."""

    path = [u]
    on_path = {u}

    def step(cur: int, remaining: int):
        counter[0] += 1
        if counter[0] > budget:
            raise _OutOfBudget
        if remaining == 0:
            if cur == v:
                yield tuple(path)
            return
        for nxt in g.neighbors(cur):
            if nxt == v:
                if remaining == 1:
                    path.append(nxt)
                    yield tuple(path)
                    path.pop()
                continue
            if nxt in on_path or nxt in banned:
                continue
            path.append(nxt)
            on_path.add(nxt)
            yield from step(nxt, remaining - 1)
            path.pop()
            on_path.discard(nxt)

    yield from step(u, length)


def brute_force_subdivision(
    g: Graph,
    k: int,
    ell: int,
    budget: int = 2_000_000,
):
    """Exhaustive search for a TK_k^(ell).

    Returns a certificate, NotFound (complete search, none exists), or
    BudgetExhausted (search aborted, no conclusion).
    """
    if k < 2 or ell < 1:
        raise InvalidArgumentError("need k >= 2 and ell >= 1")
    counter = [0]
    need = k + comb(k, 2) * (ell - 1)
    comps = [c for c in g.components() if len(c) >= need]

    def fill(branch: tuple[int, ...], pair_idx: int, used: set[int], acc: dict):
        if pair_idx == len(all_pairs):
            return SubdivisionCertificate.from_paths(ell, branch, dict(acc))
        u, v = all_pairs[pair_idx]
        banned = used | set(branch)
        for path in _paths_of_length(g, u, v, ell, banned, counter, budget):
            inner = set(path[1:-1])
            acc[(u, v)] = PathWitness(path)
            found = fill(branch, pair_idx + 1, used | inner, acc)
            if found is not None:
                return found
            del acc[(u, v)]
        return None

    try:
        for comp in comps:
            for branch in combinations(comp, k):
                all_pairs = list(combinations(branch, 2))
                found = fill(branch, 0, set(), {})
                if found is not None:
                    report = verify_subdivision(g, found)
                    assert report.passed, report.failures()
                    return found
    except _OutOfBudget:
        return BudgetExhausted(counter[0])
    return NotFound()


def best_balanced_clique(g: Graph, budget: int = 2_000_000):
    """Ground truth for small hosts: the largest k admitting a balanced
    subdivision, with the smallest ell for that k.

    Returns (k, ell, certificate) or None.  Raises TooLargeError never;
    budget exhaustion surfaces as a BudgetExhausted return.
    """
    if g.n == 0:
        return None
    for k in range(min(g.n, max(len(c) for c in g.components())), 1, -1):
        max_ell = 1 + (g.n - k) // comb(k, 2)
        for ell in range(1, max_ell + 1):
            result = brute_force_subdivision(g, k, ell, budget)
            if isinstance(result, SubdivisionCertificate):
                return (k, ell, result)
            if isinstance(result, BudgetExhausted):
                return result
    return None


def best_k_at_ell(g: Graph, ell: int, budget: int = 2_000_000) -> int:
    """Largest k with a TK_k^(ell), by complete search; 1 when none."""
    for k in range(g.n, 1, -1):
        if k + comb(k, 2) * (ell - 1) > g.n:
            continue
        result = brute_force_subdivision(g, k, ell, budget)
        if isinstance(result, SubdivisionCertificate):
            return k
        if isinstance(result, BudgetExhausted):
            raise InvalidArgumentError("budget too small for a complete answer")
    return 1
