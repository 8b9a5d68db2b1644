"""Exact search for the largest orderable L-intersecting family at small n.

Families correspond to cliques in a compatibility graph: vertices are all
subsets of [n] in (cardinality, bit pattern) order, with an edge between two
subsets whenever their intersection size is allowed.  Orderability is a side
constraint enforced during the branch and bound with two running scalars:
the largest cardinality among chosen apex-containing sets can never exceed
the smallest cardinality among chosen apex-free sets.

The searcher is an exact branch and bound over vertex-index bitmasks with a
greedy-coloring upper bound; branching follows the canonical vertex order,
so the single-worker witness is the lexicographically least maximum family.
By default the analytic ordered-family bound doubles as a global cutoff
(nothing can beat it); the independent doubly-exponential oracle below, which
enumerates every subfamily of 2^[n] directly, keeps that shortcut honest.
"""

from __future__ import annotations

import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .families import (
    IntersectionSpec,
    SetFamily,
    bound_ordered,
    family_to_json,
    make_ordered,
)

SEARCH_CAP_DEFAULT = 16  # 65 536 vertices; LINTERSECT_MAX_N overrides
ORACLE_CAP = 4           # the oracle enumerates 2^(2^n) candidate families
NODE_BUDGET_DEFAULT = 10 ** 8


def search_cap() -> int:
    env = os.environ.get("LINTERSECT_MAX_N")
    return int(env) if env else SEARCH_CAP_DEFAULT


class SearchCapError(ValueError):
    """Ground-set size beyond the configured enumeration cap."""


class BoundViolationError(Exception):
    """A sweep found a family larger than the ordered-family bound."""

    def __init__(self, entry: "SweepEntry", witness: SetFamily):
        self.entry = entry
        self.witness = witness
        super().__init__(
            f"bound violated at n={entry.n}, L={list(entry.l_values)}: "
            f"best {entry.best} > bound {entry.bound}; "
            f"witness {family_to_json(witness)}")


# ---------------------------------------------------------------------------
# compatibility graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompatGraph:
    """Subsets of [n] as vertices; edges join pairs with an allowed intersection."""

    n: int
    spec: IntersectionSpec
    max_card: int | None
    vertices: tuple[int, ...]       # subset masks, (cardinality, pattern) order
    adjacency: tuple[int, ...]      # adjacency[i] bit k set <=> edge {i, k}

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2


def build_graph(n: int, spec: IntersectionSpec, max_card: int | None = None) -> CompatGraph:
    cap = search_cap()
    if not 1 <= n <= cap:
        raise SearchCapError(f"ground-set size {n} outside 1..{cap}")
    verts = [v for v in range(1 << n)
             if max_card is None or v.bit_count() <= max_card]
    verts.sort(key=lambda v: (v.bit_count(), v))
    allowed = set(spec.values)
    adj = [0] * len(verts)
    for i in range(len(verts)):
        vi = verts[i]
        for j in range(i + 1, len(verts)):
            if (vi & verts[j]).bit_count() in allowed:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatGraph(n, spec, max_card, tuple(verts), tuple(adj))


def export_dimacs(graph: CompatGraph) -> str:
    """DIMACS clique format, 1-based ids in the canonical vertex order."""
    lines = [f"p edge {len(graph.vertices)} {graph.edge_count()}"]
    for i, row in enumerate(graph.adjacency):
        above = row >> (i + 1)
        j = i + 1
        while above:
            if above & 1:
                lines.append(f"e {i + 1} {j + 1}")
            above >>= 1
            j += 1
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# branch and bound core
# ---------------------------------------------------------------------------

def _run_search(vertices, adjacency, n, node_budget, bound_cap, root=None):
    """Maximum orderable clique from scratch, or within one root subtree.

    Returns (best_size, best_vertex_indices, nodes, truncated).  bound_cap,
    when not None, stops the search as soon as best reaches it.
    """
    count = len(vertices)
    cards = [v.bit_count() for v in vertices]
    apexbit = 1 << (n - 1)
    no_free = n + 1  # sentinel above any cardinality
    sys.setrecursionlimit(max(sys.getrecursionlimit(), count + 256))

    best = 0
    best_set: tuple[int, ...] = ()
    nodes = 0
    truncated = False

    def color_bound(cand: int) -> int:
        classes: list[int] = []
        m = cand
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            for k, cls in enumerate(classes):
                if not adjacency[v] & cls:
                    classes[k] |= low
                    break
            else:
                classes.append(low)
        return len(classes)

    def expand(clique: list[int], cand: int, max_apex: int, min_free: int) -> None:
        nonlocal best, best_set, nodes, truncated
        nodes += 1
        if nodes > node_budget:
            truncated = True
            return
        size = len(clique)
        if size + cand.bit_count() <= best:
            return
        if size + color_bound(cand) <= best:
            return
        m = cand
        while m:
            if truncated or (bound_cap is not None and best >= bound_cap):
                return
            if size + m.bit_count() <= best:
                return
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            cv = cards[v]
            if vertices[v] & apexbit:
                new_apex = cv if cv > max_apex else max_apex
                if new_apex > min_free:
                    continue
                new_free = min_free
            else:
                new_free = cv if cv < min_free else min_free
                if new_free < max_apex:
                    continue
                new_apex = max_apex
            clique.append(v)
            if size + 1 > best:
                best = size + 1
                best_set = tuple(clique)
            nxt = m & adjacency[v]
            if nxt:
                expand(clique, nxt, new_apex, new_free)
            clique.pop()

    if count:
        if root is None:
            expand([], (1 << count) - 1, 0, no_free)
        else:
            cv = cards[root]
            if vertices[root] & apexbit:
                state = (cv, no_free)
            else:
                state = (0, cv)
            best = 1
            best_set = (root,)
            cand = adjacency[root] & (-1 << (root + 1))
            if cand and not (bound_cap is not None and best >= bound_cap):
                expand([root], cand, *state)
    return best, best_set, nodes, truncated


def _root_job(payload):
    vertices, adjacency, n, node_budget, bound_cap, root = payload
    return (root, *_run_search(vertices, adjacency, n, node_budget, bound_cap, root))


# ---------------------------------------------------------------------------
# public search surface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    best_size: int
    witness: SetFamily
    nodes_explored: int
    bound_value: int
    bound_respected: bool
    truncated: bool

    def to_json_dict(self) -> dict:
        return {
            "best_size": self.best_size,
            "witness": {"n": self.witness.n, "sets": self.witness.to_element_lists()},
            "nodes_explored": self.nodes_explored,
            "bound_value": self.bound_value,
            "bound_respected": self.bound_respected,
            "truncated": self.truncated,
        }


def max_ordered_family(n: int, spec: IntersectionSpec, *,
                       max_card: int | None = None,
                       node_budget: int = NODE_BUDGET_DEFAULT,
                       workers: int = 1,
                       bound_cutoff: bool = True) -> SearchResult:
    """Exact maximum orderable L-intersecting family by branch and bound.

    A truncated result (node budget exhausted) is flagged and is only a lower
    bound.  bound_cutoff stops once the analytic bound is reached; disable it
    to force a full optimality proof by the search alone.
    """
    graph = build_graph(n, spec, max_card)
    bound_value = bound_ordered(n, len(spec))
    cap = bound_value if bound_cutoff else None

    if workers <= 1 or len(graph.vertices) <= 2:
        best, best_set, nodes, truncated = _run_search(
            graph.vertices, graph.adjacency, n, node_budget, cap)
    else:
        payloads = [(graph.vertices, graph.adjacency, n, node_budget, cap, root)
                    for root in range(len(graph.vertices))]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_root_job, payloads, chunksize=8))
        results.sort(key=lambda item: (-item[1], item[0]))
        _, best, best_set, _, _ = results[0]
        nodes = sum(item[3] for item in results)
        truncated = any(item[4] for item in results)

    members = tuple(graph.vertices[i] for i in best_set)
    witness, _ = make_ordered(SetFamily(n, members))
    return SearchResult(
        best_size=best,
        witness=witness,
        nodes_explored=nodes,
        bound_value=bound_value,
        bound_respected=best <= bound_value,
        truncated=truncated)


def exhaustive_oracle(n: int, spec: IntersectionSpec) -> int:
    """Largest orderable L-intersecting family by direct enumeration.

    Walks every one of the 2^(2^n) subfamilies of 2^[n], so n <= 4 is a hard
    cap.  Independent of the clique machinery; used to cross-check it.
    """
    if n < 1:
        raise ValueError(f"ground-set size {n} must be >= 1")
    if n > ORACLE_CAP:
        raise SearchCapError(f"oracle enumerates 2^(2^n) families; n={n} exceeds {ORACLE_CAP}")
    u = 1 << n
    allowed = set(spec.values)
    card = [a.bit_count() for a in range(u)]
    apexbit = 1 << (n - 1)
    compat = [0] * u
    for a in range(u):
        row = 0
        for b in range(u):
            if a != b and card[a & b] in allowed:
                row |= 1 << b
        compat[a] = row

    best = 0
    for fam in range(1 << u):
        if fam.bit_count() <= best:
            continue
        ok = True
        max_apex = 0
        min_free = n + 1
        t = fam
        while t:
            low = t & -t
            a = low.bit_length() - 1
            t ^= low
            if (fam & ~compat[a]) ^ low:  # some other member is incompatible with a
                ok = False
                break
            if a & apexbit:
                if card[a] > max_apex:
                    max_apex = card[a]
            elif card[a] < min_free:
                min_free = card[a]
        if ok and max_apex <= min_free:
            best = fam.bit_count()
    return best


# ---------------------------------------------------------------------------
# bulk verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepEntry:
    n: int
    l_values: tuple[int, ...]
    best: int
    bound: int
    gap: int
    nodes: int
    truncated: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "l_values": list(self.l_values),
            "best": self.best,
            "bound": self.bound,
            "gap": self.gap,
            "nodes": self.nodes,
            "truncated": self.truncated,
        }


@dataclass(frozen=True)
class SweepReport:
    entries: tuple[SweepEntry, ...]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_json_dict()) + "\n" for e in self.entries)


def _l_catalog(n: int, l_sizes) -> list[IntersectionSpec]:
    out = []
    for size in sorted(l_sizes):
        for combo in itertools.combinations(range(n), size):
            out.append(IntersectionSpec(combo))
    return out


def sweep_verify(n_max: int, *, catalog=None, l_sizes=None,
                 node_budget: int = NODE_BUDGET_DEFAULT,
                 workers: int = 1) -> SweepReport:
    """Check best <= bound for every n <= n_max against a catalog of L sets.

    Pass either a fixed catalog of IntersectionSpec used for every n, or
    l_sizes, which generates all L inside {0, ..., n-1} of those sizes per n.
    Raises BoundViolationError with the counterexample family on violation.
    """
    if (catalog is None) == (l_sizes is None):
        raise ValueError("pass exactly one of catalog or l_sizes")
    entries = []
    for n in range(1, n_max + 1):
        specs = list(catalog) if catalog is not None else _l_catalog(n, l_sizes)
        for spec in specs:
            result = max_ordered_family(n, spec, node_budget=node_budget,
                                        workers=workers)
            entry = SweepEntry(
                n=n, l_values=spec.values, best=result.best_size,
                bound=result.bound_value, gap=result.bound_value - result.best_size,
                nodes=result.nodes_explored, truncated=result.truncated)
            if not result.bound_respected:
                raise BoundViolationError(entry, result.witness)
            entries.append(entry)
    return SweepReport(tuple(entries))
