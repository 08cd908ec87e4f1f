"""Exact solvers for the partition number and hypergraph chromatic numbers.

Both quantities reduce to the same decision problem: color vertices with m
classes so that no constraint (hyperedge, or empty-intersection witness)
ends up entirely in one class.  The engine below branches on the vertex
with the fewest remaining candidate colors, propagates "last uncolored
member of an all-same-colored constraint" blocking, breaks color symmetry
by only ever opening one fresh color, and proves optimality by iterative
deepening on the class count.  Closed-form values are never consulted, so
agreement with the formulas is evidence, not circularity.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field

from .constructions import ColoringCertificate, PartitionCertificate
from .errors import InstanceTooLarge, InvalidParams
from .kneser import Hypergraph, SizeLimits
from .setsys import GroundParams, KSubset, SetFamily, enumerate_k_subsets
from .verify import verify_coloring, verify_partition_certificate

EXACT = "EXACT"
BOUNDS = "BOUNDS"
TIMEOUT = "TIMEOUT"
INFEASIBLE = "INFEASIBLE"


@dataclass(frozen=True, slots=True)
class SolveBudget:
    """Resource limits for one solve call.

    proof_cap bounds the vertex count for which optimality proofs are
    attempted; larger instances get honest brackets only.  workers > 1
    runs a portfolio of tie-breaking orders and keeps the first exact
    answer, which never changes the value, only the wall time.
    """

    max_seconds: float | None = None
    max_nodes: int | None = None
    proof_cap: int = 40
    workers: int = 1


@dataclass(frozen=True)
class ConflictHypergraph:
    """All inclusion-minimal empty-intersection subfamilies of size <= r.

    base lists every k-subset of [n] in colex order; witnesses are sorted
    vertex-id tuples.  A coloring of base avoids monochromatic witnesses
    iff each color class is r-wise intersecting, which is what makes this
    the right constraint set for the partition number.
    """

    params: GroundParams
    base: tuple[KSubset, ...]
    witnesses: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SolveResult:
    status: str
    lower: int
    upper: int
    nodes: int
    millis: int
    certificate: PartitionCertificate | ColoringCertificate | None = None
    colors: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        assert self.lower <= self.upper
        if self.status == EXACT:
            assert self.lower == self.upper
            assert self.certificate is not None or self.colors is not None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "lower": self.lower,
            "upper": self.upper,
            "nodes": self.nodes,
            "millis": self.millis,
            "certificate": (
                self.certificate.to_dict() if self.certificate else None
            ),
        }


def build_conflict_hypergraph(
    p: GroundParams, limits: SizeLimits = SizeLimits()
) -> ConflictHypergraph:
    """Enumerate the minimal witnesses by strict-shrink DFS.

    Every inclusion-minimal empty-intersection subfamily, listed in vertex
    order, shrinks the running intersection at each member (a member that
    leaves the intersection unchanged could be dropped).  The DFS therefore
    only extends chains by strictly shrinking members, visits each minimal
    witness exactly once, and filters non-minimal dead ends afterwards.
    Chains die after at most k shrinks, so the depth is min(r, k+1).
    """
    if p.num_vertices > limits.max_vertices:
        raise InstanceTooLarge(
            f"C({p.n},{p.k}) = {p.num_vertices} vertices exceeds limit "
            f"{limits.max_vertices}"
        )
    vertices = enumerate_k_subsets(p.n, p.k, cap=limits.ground_cap)
    masks = [v.bits for v in vertices]
    nv = len(masks)
    r = p.r
    out: list[tuple[int, ...]] = []

    def minimal(w: tuple[int, ...]) -> bool:
        for drop in w:
            inter = -1
            for idx in w:
                if idx != drop:
                    inter &= masks[idx]
            if inter == 0:
                return False
        return True

    chosen: list[int] = []

    def grow(start: int, inter: int) -> None:
        for j in range(start, nv):
            nxt = inter & masks[j]
            if nxt == inter:
                continue
            chosen.append(j)
            if nxt == 0:
                w = tuple(chosen)
                if minimal(w):
                    out.append(w)
                    if len(out) > limits.max_edges:
                        raise InstanceTooLarge(
                            f"witness count exceeds limit {limits.max_edges}"
                        )
            elif len(chosen) < r:
                grow(j + 1, nxt)
            chosen.pop()

    for i in range(nv):
        chosen.append(i)
        grow(i + 1, masks[i])
        chosen.pop()
    return ConflictHypergraph(p, tuple(vertices), tuple(out))


class _Timeout(Exception):
    pass


class _Engine:
    """Backtracking m-class feasibility checker over fixed constraints.

    Per constraint it tracks how many members are colored and the single
    color they all share (constraints with two colors can never become
    monochromatic and are switched off).  When a constraint has exactly one
    uncolored member left and the rest share color c, the engine forbids c
    on that member; a vertex with every one of the m colors forbidden is a
    wipeout.  All mutations go on a trail so backtracking is exact undo.
    """

    def __init__(self, nv: int, constraints: tuple[tuple[int, ...], ...]):
        for t in constraints:
            if len(t) < 2:
                raise InvalidParams(f"constraint {t} has fewer than 2 members")
        self.nv = nv
        self.cons = constraints
        self.size = [len(t) for t in constraints]
        self.incident: list[list[int]] = [[] for _ in range(nv)]
        for ci, t in enumerate(constraints):
            for v in t:
                self.incident[v].append(ci)
        self.nodes = 0
        self.deadline: float | None = None
        self.max_nodes: int | None = None
        self.shift = 0

    # -- per-run state ----------------------------------------------------

    def _reset(self, m: int) -> None:
        nc = len(self.cons)
        self.m = m
        self.full = (1 << m) - 1
        self.colors = [-1] * self.nv
        self.count = [0] * nc
        self.mono = [-1] * nc
        self.active = [True] * nc
        self.forbid = [[0] * m for _ in range(self.nv)]
        self.fmask = [0] * self.nv
        self.trail: list[tuple[int, int, int]] = []

    def _assign(self, v: int, c: int) -> bool:
        colors = self.colors
        trail = self.trail
        colors[v] = c
        trail.append((0, v, 0))
        for ci in self.incident[v]:
            if not self.active[ci]:
                continue
            cnt = self.count[ci]
            mc = self.mono[ci]
            if cnt == 0 or mc == c:
                self.count[ci] = cnt + 1
                self.mono[ci] = c
                trail.append((1, ci, mc))
                if cnt + 1 == self.size[ci] - 1:
                    w = -1
                    for u in self.cons[ci]:
                        if colors[u] < 0:
                            w = u
                            break
                    fb = self.forbid[w]
                    fb[c] += 1
                    trail.append((2, w, c))
                    if fb[c] == 1:
                        self.fmask[w] |= 1 << c
                        if self.fmask[w] == self.full:
                            return False
                elif cnt + 1 == self.size[ci]:
                    raise AssertionError("completed a monochromatic constraint")
            else:
                self.active[ci] = False
                trail.append((3, ci, 0))
        return True

    def _undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            tag, a, b = trail.pop()
            if tag == 0:
                self.colors[a] = -1
            elif tag == 1:
                self.count[a] -= 1
                self.mono[a] = b
            elif tag == 2:
                fb = self.forbid[a]
                fb[b] -= 1
                if fb[b] == 0:
                    self.fmask[a] &= ~(1 << b)
            else:
                self.active[a] = True

    def _select(self, prefix: int) -> int:
        best_v = -1
        best = (self.m + 2, 0)
        nv = self.nv
        shift = self.shift
        for v in range(nv):
            if self.colors[v] < 0:
                cnt = (prefix & ~self.fmask[v]).bit_count()
                key = (cnt, (v - shift) % nv)
                if key < best:
                    best = key
                    best_v = v
                    if cnt == 0:
                        break
        return best_v

    def _tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _Timeout
        if self.deadline is not None and self.nodes & 0xFF == 0:
            if time.monotonic() > self.deadline:
                raise _Timeout

    def _dfs(self, remaining: int, max_used: int) -> bool:
        self._tick()
        if remaining == 0:
            return True
        prefix = (1 << min(max_used + 2, self.m)) - 1
        v = self._select(prefix)
        cand = prefix & ~self.fmask[v]
        while cand:
            c = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            mark = len(self.trail)
            if self._assign(v, c) and self._dfs(remaining - 1, max(max_used, c)):
                return True
            self._undo(mark)
        return False

    def run(self, m: int, seed: list[int]) -> list[int] | None:
        """Decide m-class feasibility; returns a full coloring or None."""
        if m <= 0:
            return [] if self.nv == 0 else None
        if len(seed) > m:
            return None
        self._reset(m)
        for i, v in enumerate(seed):
            if not self._assign(v, i):
                return None
        max_used = len(seed) - 1
        if self._dfs(self.nv - len(seed), max_used):
            return list(self.colors)
        return None


def _greedy_coloring(
    nv: int, constraints: tuple[tuple[int, ...], ...], incident: list[list[int]]
) -> list[int]:
    """First-fit in id order: skip colors that would complete a constraint."""
    colors = [-1] * nv
    for v in range(nv):
        blocked = 0
        for ci in incident[v]:
            shared = -1
            for u in constraints[ci]:
                if u == v:
                    continue
                cu = colors[u]
                if cu < 0 or (shared >= 0 and cu != shared):
                    shared = -2
                    break
                shared = cu
            if shared >= 0:
                blocked |= 1 << shared
        c = 0
        while blocked >> c & 1:
            c += 1
        colors[v] = c
    return colors


def _greedy_disjoint_clique(masks: list[int]) -> list[int]:
    """Vertices added in colex order when disjoint from all chosen so far."""
    chosen: list[int] = []
    union = 0
    for i, mk in enumerate(masks):
        if union & mk == 0:
            chosen.append(i)
            union |= mk
    return chosen


def _greedy_edge_clique(nv: int, edges: tuple[tuple[int, ...], ...]) -> list[int]:
    """Pairwise-adjacent vertex set read off the actual 2-edges."""
    adj: list[set[int]] = [set() for _ in range(nv)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    chosen: list[int] = []
    for v in range(nv):
        if all(v in adj[u] for u in chosen):
            chosen.append(v)
    return chosen


@dataclass
class _SearchOutcome:
    status: str
    lower: int
    upper: int
    best: list[int] | None
    nodes: int


def _search(
    nv: int,
    constraints: tuple[tuple[int, ...], ...],
    clique: list[int],
    budget: SolveBudget,
    shift: int = 0,
) -> _SearchOutcome:
    """Shared solve loop: greedy bracket, then iterative deepening.

    The clique seed (when nonempty) is a set of vertices that must take
    pairwise distinct colors in every solution, so pinning them to colors
    0..q-1 loses no solutions and its size is a true lower bound.  Every
    completed infeasible run raises the proven lower bound by one; an
    exact answer additionally requires the run one class below the answer
    to have terminated infeasible.
    """
    if nv == 0:
        return _SearchOutcome(EXACT, 0, 0, [], 0)

    engine = _Engine(nv, constraints)
    engine.shift = shift % nv
    engine.max_nodes = budget.max_nodes
    if budget.max_seconds is not None:
        engine.deadline = time.monotonic() + budget.max_seconds

    greedy = _greedy_coloring(nv, constraints, engine.incident)
    ub = max(greedy) + 1
    lb = 1
    if constraints:
        lb = 2
    lb = max(lb, len(clique))

    if nv > budget.proof_cap:
        if lb == ub:
            return _SearchOutcome(EXACT, lb, ub, greedy, 0)
        return _SearchOutcome(BOUNDS, lb, ub, greedy, 0)

    initial_lb = lb
    answer = ub
    best = greedy
    try:
        for m in range(lb, ub):
            cols = engine.run(m, clique)
            if cols is not None:
                answer = m
                best = cols
                break
            lb = m + 1
        ub = answer
        if answer == initial_lb and answer >= 1:
            # first attempt already feasible: prove one class fewer fails
            below = engine.run(answer - 1, clique)
            assert below is None, "lower bound reasoning was wrong"
    except _Timeout:
        return _SearchOutcome(TIMEOUT, lb, ub, best, engine.nodes)
    return _SearchOutcome(EXACT, answer, answer, best, engine.nodes)


def _classes_to_partition(
    p: GroundParams, base: tuple[KSubset, ...], cols: list[int]
) -> PartitionCertificate:
    m = max(cols) + 1
    groups: list[list[KSubset]] = [[] for _ in range(m)]
    for vid, c in enumerate(cols):
        groups[c].append(base[vid])
    families = tuple(SetFamily(p.n, tuple(g)) for g in groups)
    return PartitionCertificate(p, families)


def _portfolio(args) -> tuple[int, _SearchOutcome]:
    nv, constraints, clique, budget, shift = args
    return shift, _search(nv, constraints, clique, budget, shift)


def _run_search(
    nv: int,
    constraints: tuple[tuple[int, ...], ...],
    clique: list[int],
    budget: SolveBudget,
) -> _SearchOutcome:
    if budget.workers <= 1 or nv == 0:
        return _search(nv, constraints, clique, budget)
    shifts = [w * nv // budget.workers for w in range(budget.workers)]
    tasks = [(nv, constraints, clique, budget, s) for s in shifts]
    outcomes: list[_SearchOutcome] = []
    with multiprocessing.Pool(budget.workers) as pool:
        for _, out in pool.imap_unordered(_portfolio, tasks):
            if out.status == EXACT:
                pool.terminate()
                return out
            outcomes.append(out)
    lower = max(o.lower for o in outcomes)
    pick = min(outcomes, key=lambda o: o.upper)
    return _SearchOutcome(pick.status, lower, pick.upper, pick.best, pick.nodes)


def min_partition_number(
    p: GroundParams, budget: SolveBudget = SolveBudget()
) -> SolveResult:
    """Fewest r-wise intersecting families partitioning all k-subsets of [n].

    Admissibility is not required: the quantity is well defined for every
    1 <= k <= n.  On EXACT the certificate is a PartitionCertificate that
    has been re-verified; on TIMEOUT the bracket and certificate are the
    best proven so far.
    """
    t0 = time.monotonic()
    ch = build_conflict_hypergraph(p)
    clique = _greedy_disjoint_clique([v.bits for v in ch.base])
    out = _run_search(len(ch.base), ch.witnesses, clique, budget)
    millis = int((time.monotonic() - t0) * 1000)

    cert = None
    colors = None
    if out.best is not None:
        colors = tuple(out.best)
        cert = _classes_to_partition(p, ch.base, out.best)
        rep = verify_partition_certificate(cert)
        assert rep.ok, f"solver emitted an invalid partition: {rep.summary()}"
        if out.status == EXACT:
            assert cert.num_families == out.upper
    return SolveResult(
        out.status, out.lower, out.upper, out.nodes, millis, cert, colors
    )


def chromatic_number(
    h: Hypergraph, budget: SolveBudget = SolveBudget()
) -> SolveResult:
    """Fewest colors with no monochromatic hyperedge, proved by search.

    The clique lower bound is read off the edge list and only applied when
    every edge is a pair (only then does an edge force two colors apart).
    The certificate is descriptor-backed when the hypergraph knows its own
    parameters; raw colors are attached either way.
    """
    t0 = time.monotonic()
    nv = len(h.vertices)
    clique: list[int] = []
    if h.edges and all(len(e) == 2 for e in h.edges):
        clique = _greedy_edge_clique(nv, h.edges)
    out = _run_search(nv, h.edges, clique, budget)
    millis = int((time.monotonic() - t0) * 1000)

    cert = None
    colors = None
    if out.best is not None:
        colors = tuple(out.best)
        rep = verify_coloring(h, list(colors))
        assert rep.ok, f"solver emitted an improper coloring: {rep.summary()}"
        if h.params is not None:
            cert = ColoringCertificate(
                ground_n=h.params.n,
                k=h.params.k,
                r=h.params.r,
                colors=colors,
                parts=h.parts.parts if h.parts is not None else None,
                stability=h.stability,
            )
    return SolveResult(
        out.status, out.lower, out.upper, out.nodes, millis, cert, colors
    )


def brute_force_oracle(h: Hypergraph, max_colors: int) -> int | str:
    """Exhaustive reference answer for tiny instances.

    Enumerates every assignment whose used colors form a prefix (the one
    safe reduction) and checks all edges at the leaves.  Deliberately
    shares nothing with the engine above so the two can cross-check.
    """
    nv = len(h.vertices)
    if nv > 16:
        raise InstanceTooLarge(f"oracle capped at 16 vertices, got {nv}")
    if max_colors < 1:
        raise InvalidParams(f"need max_colors >= 1, got {max_colors}")
    if nv == 0:
        return 0
    edges = h.edges

    def proper(assign: list[int]) -> bool:
        for e in edges:
            first = assign[e[0]]
            if all(assign[u] == first for u in e[1:]):
                return False
        return True

    def exists(limit: int, assign: list[int], used: int) -> bool:
        if len(assign) == nv:
            return proper(assign)
        for col in range(min(used + 1, limit - 1) + 1):
            assign.append(col)
            found = exists(limit, assign, max(used, col))
            assign.pop()
            if found:
                return True
        return False

    for limit in range(1, max_colors + 1):
        if exists(limit, [], -1):
            return limit
    return INFEASIBLE
