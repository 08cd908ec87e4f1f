"""Kneser hypergraph generators and the closed-form chromatic number.

Vertices of KG^r(k, n) are the k-subsets of [n] in colex order; edges are
the r-tuples of pairwise disjoint vertices.  Two induced variants restrict
the vertex set: the s-stable sub-hypergraph keeps only subsets whose
elements are pairwise at cyclic distance >= s, and the partition-constrained
sub-hypergraph keeps only subsets meeting each block of a given partition of
[n] in at most one element.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import InstanceTooLarge, InvalidParams, InvalidPartSpec
from .setsys import (
    DEFAULT_GROUND_CAP,
    GroundParams,
    KSubset,
    enumerate_k_subsets,
    is_s_stable,
)


@dataclass(frozen=True, slots=True)
class SizeLimits:
    """Fail-fast guards for generated instances."""

    max_vertices: int = 100_000
    max_edges: int = 10_000_000
    ground_cap: int = DEFAULT_GROUND_CAP


@dataclass(frozen=True, slots=True)
class PartSpec:
    """Ordered blocks C_1..C_t partitioning [n], each of size <= r-1."""

    parts: tuple[tuple[int, ...], ...]

    def validate(self, n: int, r: int) -> None:
        seen: set[int] = set()
        for part in self.parts:
            if not part:
                raise InvalidPartSpec("empty block")
            if len(part) > r - 1:
                raise InvalidPartSpec(
                    f"block {part} has {len(part)} elements, limit is r-1 = {r - 1}"
                )
            for e in part:
                if not (1 <= e <= n):
                    raise InvalidPartSpec(f"element {e} outside [1, {n}]")
                if e in seen:
                    raise InvalidPartSpec(f"element {e} appears in two blocks")
                seen.add(e)
        if len(seen) != n:
            missing = sorted(set(range(1, n + 1)) - seen)
            raise InvalidPartSpec(f"blocks do not cover [n]; missing {missing}")

    def masks(self) -> tuple[int, ...]:
        out = []
        for part in self.parts:
            m = 0
            for e in part:
                m |= 1 << (e - 1)
            out.append(m)
        return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """Explicit vertex list plus hyperedges as sorted vertex-id tuples.

    In a pure Kneser hypergraph every edge has exactly r ids and its member
    subsets are pairwise disjoint.  The optional stability / parts fields
    record which induced variant was generated, so instances serialize to a
    self-describing document.
    """

    vertices: tuple[KSubset, ...]
    edges: tuple[tuple[int, ...], ...]
    uniformity_hint: int | None = None
    params: GroundParams | None = None
    stability: int | None = None
    parts: PartSpec | None = None

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def _disjoint_tuples(
    masks: list[int], r: int, max_edges: int
) -> list[tuple[int, ...]]:
    """All r-tuples of pairwise disjoint masks, as increasing index tuples.

    Ordered backtracking over colex-increasing ids with a running union
    bitmask; output order is deterministic (lexicographic on id tuples).
    """
    out: list[tuple[int, ...]] = []
    nv = len(masks)
    tup: list[int] = []

    def extend(start: int, used: int) -> None:
        depth = len(tup)
        if depth == r:
            out.append(tuple(tup))
            if len(out) > max_edges:
                raise InstanceTooLarge(
                    f"edge count exceeds configured limit {max_edges}"
                )
            return
        for j in range(start, nv - (r - depth) + 1):
            mj = masks[j]
            if used & mj:
                continue
            tup.append(j)
            extend(j + 1, used | mj)
            tup.pop()

    if r >= 1 and nv >= r:
        extend(0, 0)
    return out


def _guard_vertices(p: GroundParams, limits: SizeLimits) -> None:
    if p.num_vertices > limits.max_vertices:
        raise InstanceTooLarge(
            f"C({p.n},{p.k}) = {p.num_vertices} vertices exceeds limit "
            f"{limits.max_vertices}"
        )


def build_kneser_hypergraph(
    p: GroundParams, limits: SizeLimits = SizeLimits()
) -> Hypergraph:
    """The Kneser hypergraph KG^r(k, n).

    For n < r*k no r pairwise disjoint k-subsets exist; the builder then
    returns the vertex-only instance with a warning instead of erroring,
    which the conflict-hypergraph pipeline relies on.
    """
    _guard_vertices(p, limits)
    if p.n < p.r * p.k:
        warnings.warn(
            f"n={p.n} < r*k={p.r * p.k}: Kneser hypergraph has no edges",
            stacklevel=2,
        )
    vertices = enumerate_k_subsets(p.n, p.k, cap=limits.ground_cap)
    masks = [v.bits for v in vertices]
    edges = _disjoint_tuples(masks, p.r, limits.max_edges)
    return Hypergraph(
        vertices=tuple(vertices),
        edges=tuple(edges),
        uniformity_hint=p.r,
        params=p,
    )


def build_stable_subhypergraph(
    p: GroundParams, s: int, limits: SizeLimits = SizeLimits()
) -> Hypergraph:
    """Induced sub-hypergraph of KG^r(k, n) on the s-stable vertices.

    Vertex order is inherited from colex; edge ids are remapped to the
    surviving vertex list.
    """
    if s < 1:
        raise InvalidParams(f"need s >= 1, got s={s}")
    _guard_vertices(p, limits)
    vertices = [
        v
        for v in enumerate_k_subsets(p.n, p.k, cap=limits.ground_cap)
        if is_s_stable(v, s)
    ]
    masks = [v.bits for v in vertices]
    edges = _disjoint_tuples(masks, p.r, limits.max_edges)
    return Hypergraph(
        vertices=tuple(vertices),
        edges=tuple(edges),
        uniformity_hint=p.r,
        params=p,
        stability=s,
    )


def build_partition_constrained(
    p: GroundParams, spec: PartSpec, limits: SizeLimits = SizeLimits()
) -> Hypergraph:
    """Induced sub-hypergraph on vertices meeting each block in <= 1 element."""
    spec.validate(p.n, p.r)
    _guard_vertices(p, limits)
    part_masks = spec.masks()
    vertices = [
        v
        for v in enumerate_k_subsets(p.n, p.k, cap=limits.ground_cap)
        if all((v.bits & pm).bit_count() <= 1 for pm in part_masks)
    ]
    masks = [v.bits for v in vertices]
    edges = _disjoint_tuples(masks, p.r, limits.max_edges)
    return Hypergraph(
        vertices=tuple(vertices),
        edges=tuple(edges),
        uniformity_hint=p.r,
        params=p,
        parts=spec,
    )


def formula_chi(p: GroundParams) -> int:
    """Closed-form chromatic number ceil((n - r(k-1)) / (r-1)) for n >= rk."""
    if p.n < p.r * p.k:
        raise InvalidParams(
            f"formula requires n >= r*k, got n={p.n}, r*k={p.r * p.k}"
        )
    num = p.n - p.r * (p.k - 1)
    den = p.r - 1
    return -(-num // den)


# ---------------------------------------------------------------------------
# JSON wire format
#
# {"n", "k", "r", "s"?, "parts"?, "vertices": [[elements]...],
#  "edges": [[ids]...]} with 1-based elements in increasing order, vertices
# in colex order, edges as sorted id tuples in generation order.
# ---------------------------------------------------------------------------


def hypergraph_to_dict(h: Hypergraph) -> dict:
    if h.params is None:
        raise InvalidParams("cannot serialize a hypergraph without parameters")
    doc: dict = {"n": h.params.n, "k": h.params.k, "r": h.params.r}
    if h.stability is not None:
        doc["s"] = h.stability
    if h.parts is not None:
        doc["parts"] = [list(part) for part in h.parts.parts]
    doc["vertices"] = [list(v.elements()) for v in h.vertices]
    doc["edges"] = [list(e) for e in h.edges]
    return doc


def hypergraph_from_dict(doc: dict) -> Hypergraph:
    try:
        p = GroundParams(int(doc["n"]), int(doc["k"]), int(doc["r"]))
        vertices = tuple(
            KSubset.from_elements(els, p.n) for els in doc["vertices"]
        )
        edges = tuple(tuple(int(i) for i in e) for e in doc["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParams(f"bad hypergraph document: {exc}") from exc
    for e in edges:
        if any(not (0 <= i < len(vertices)) for i in e):
            raise InvalidParams(f"edge {e} references a missing vertex")
        if len(set(e)) != len(e):
            raise InvalidParams(f"edge {e} repeats a vertex id")
    stability = int(doc["s"]) if "s" in doc else None
    parts = (
        PartSpec(tuple(tuple(int(x) for x in part) for part in doc["parts"]))
        if "parts" in doc
        else None
    )
    return Hypergraph(
        vertices=vertices,
        edges=edges,
        uniformity_hint=p.r,
        params=p,
        stability=stability,
        parts=parts,
    )
