"""Independent certification of families, partitions, and colorings.

This module deliberately shares no generation code with the builders in
kneser and constructions: edge properties are re-derived from first
principles (bitmask scans over explicit member lists), so it can serve as an
oracle for everything the rest of the package produces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import InvalidParams, LengthMismatch
from .setsys import SetFamily

# imported lazily in verify_partition_certificate to avoid an import cycle
# (constructions imports this module for its pre-flight checks)


@dataclass(frozen=True, slots=True)
class Violation:
    """One witness record: offending member indices plus a readable reason."""

    kind: str
    indices: tuple[int, ...]
    reason: str


@dataclass(frozen=True)
class Report:
    ok: bool
    violations: tuple[Violation, ...] = ()
    stats: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        assert self.ok == (not self.violations)

    def summary(self) -> str:
        if self.ok:
            return "ok"
        head = "; ".join(v.reason for v in self.violations[:5])
        more = len(self.violations) - 5
        return f"FAILED: {head}" + (f" (+{more} more)" if more > 0 else "")


def _subfamily_is_minimal(masks: list[int], witness: tuple[int, ...]) -> bool:
    """True iff dropping any one member leaves a nonempty intersection."""
    for drop in witness:
        inter = -1
        for idx in witness:
            if idx != drop:
                inter &= masks[idx]
        if inter == 0:
            return False
    return True


def _find_min_witness(masks: list[int], r: int) -> tuple[tuple[int, ...] | None, int]:
    """Lexicographically least inclusion-minimal empty-intersection subfamily.

    Depth-first search over index-increasing chains in which every added
    member strictly shrinks the running intersection.  Any inclusion-minimal
    witness has that property in every member order, so the search is
    complete, and DFS preorder visits chains in lexicographic order of their
    index tuples, so the first minimal witness found is the least one.
    Returns (witness or None, number of chains examined).
    """
    nv = len(masks)
    examined = 0

    # a member that is itself empty violates the definition on its own
    for i, m in enumerate(masks):
        if m == 0:
            return (i,), examined

    chosen: list[int] = []

    def search(start: int, inter: int) -> tuple[int, ...] | None:
        nonlocal examined
        for j in range(start, nv):
            examined += 1
            nxt = inter & masks[j]
            if nxt == inter:
                continue
            if nxt == 0:
                witness = tuple(chosen) + (j,)
                if _subfamily_is_minimal(masks, witness):
                    return witness
                continue
            if len(chosen) + 1 < r:
                chosen.append(j)
                found = search(j + 1, nxt)
                chosen.pop()
                if found is not None:
                    return found
        return None

    for i in range(nv):
        examined += 1
        chosen.append(i)
        found = search(i + 1, masks[i])
        chosen.pop()
        if found is not None:
            return found, examined
    return None, examined


def is_r_wise_intersecting(fam: SetFamily, r: int) -> Report:
    """Check that every subfamily of at most r members has a common point.

    On failure the report carries the lexicographically least
    inclusion-minimal violating subfamily (indices into fam.members).
    A family whose members share a common point passes for every r.
    """
    if r < 2:
        raise InvalidParams(f"need r >= 2, got r={r}")
    if not fam.members:
        raise InvalidParams("family must be nonempty")
    masks = list(fam.masks())

    inter_all = -1
    for m in masks:
        inter_all &= m
    if inter_all:
        return Report(True, stats={"families": 1, "tuples_examined": 1})

    witness, examined = _find_min_witness(masks, r)
    stats = {"families": 1, "tuples_examined": examined}
    if witness is None:
        return Report(True, stats=stats)
    sets = ", ".join(
        "{" + ",".join(map(str, fam.members[i].elements())) + "}" for i in witness
    )
    return Report(
        False,
        violations=(
            Violation(
                kind="empty_intersection",
                indices=witness,
                reason=f"members {list(witness)} = [{sets}] have empty intersection",
            ),
        ),
        stats=stats,
    )


def verify_partition_certificate(cert) -> Report:
    """Full validity check of a claimed partition into r-wise families.

    ok iff (a) the families' disjoint union is exactly all C(n,k) k-subsets
    of [n], (b) every family is nonempty, and (c) every family passes
    is_r_wise_intersecting at the certificate's r.
    """
    from .constructions import PartitionCertificate  # local: avoids cycle

    if not isinstance(cert, PartitionCertificate):
        raise InvalidParams("expected a PartitionCertificate")
    p = cert.params
    violations: list[Violation] = []
    tuples_examined = 0

    seen: dict[int, tuple[int, int]] = {}
    for fi, fam in enumerate(cert.families):
        if not fam.members:
            violations.append(
                Violation("empty_family", (fi,), f"family {fi} is empty")
            )
        for mi, member in enumerate(fam.members):
            if member.n != p.n:
                violations.append(
                    Violation(
                        "bad_member",
                        (fi, mi),
                        f"family {fi} member {mi} over ground set {member.n}, expected {p.n}",
                    )
                )
                continue
            if member.size != p.k:
                violations.append(
                    Violation(
                        "bad_member",
                        (fi, mi),
                        f"family {fi} member {mi} has {member.size} elements, expected {p.k}",
                    )
                )
                continue
            if member.bits in seen:
                oi, om = seen[member.bits]
                violations.append(
                    Violation(
                        "duplicate_subset",
                        (fi, mi),
                        f"subset {member!r} appears in family {oi} and family {fi}",
                    )
                )
            else:
                seen[member.bits] = (fi, mi)

    # coverage: walk all k-subsets by brute force, independent of any
    # enumeration the certificate builder may have used
    missing = 0
    for els in combinations(range(p.n), p.k):
        bits = 0
        for e in els:
            bits |= 1 << e
        if bits not in seen:
            missing += 1
            if missing <= 10:
                pretty = "{" + ",".join(str(e + 1) for e in els) + "}"
                violations.append(
                    Violation(
                        "uncovered_subset", (), f"subset {pretty} is uncovered"
                    )
                )
    if missing > 10:
        violations.append(
            Violation(
                "uncovered_subset", (), f"{missing - 10} further subsets uncovered"
            )
        )

    for fi, fam in enumerate(cert.families):
        if not fam.members:
            continue
        rep = is_r_wise_intersecting(fam, p.r)
        tuples_examined += rep.stats.get("tuples_examined", 0)
        for v in rep.violations:
            violations.append(
                Violation(v.kind, v.indices, f"family {fi}: {v.reason}")
            )

    stats = {
        "families": len(cert.families),
        "members": len(seen),
        "expected_members": comb(p.n, p.k),
        "tuples_examined": tuples_examined,
    }
    return Report(not violations, tuple(violations), stats)


def verify_coloring(h, colors: list[int] | tuple[int, ...]) -> Report:
    """Check that no hyperedge of h has all endpoints the same color.

    This is the hypergraph-coloring convention: an edge is violated only
    when every one of its endpoints shares one color.
    """
    if len(colors) != len(h.vertices):
        raise LengthMismatch(
            f"{len(colors)} colors for {len(h.vertices)} vertices"
        )
    violations = []
    for ei, edge in enumerate(h.edges):
        first = colors[edge[0]]
        if all(colors[v] == first for v in edge[1:]):
            violations.append(
                Violation(
                    "monochromatic_edge",
                    tuple(edge),
                    f"edge {ei} = {list(edge)} is monochromatic in color {first}",
                )
            )
    return Report(
        not violations, tuple(violations), stats={"edges": len(h.edges)}
    )


def verify_coloring_certificate(cert) -> Report:
    """Recheck a descriptor-backed coloring without trusting any generator.

    The vertex set named by the certificate (all k-subsets of [ground_n],
    optionally restricted to s-stable ones or to transversals of the given
    parts) is rebuilt here from plain combinations and sorted into colex
    order, and properness is established by scanning the r-tuples inside
    each color class for pairwise disjointness.  No edge list is consumed.
    """
    from .constructions import ColoringCertificate  # local: avoids cycle

    if not isinstance(cert, ColoringCertificate):
        raise InvalidParams("expected a ColoringCertificate")
    n, k, r = cert.ground_n, cert.k, cert.r
    if not (1 <= k <= n and r >= 2):
        raise InvalidParams(f"bad descriptor n={n} k={k} r={r}")

    part_masks = []
    if cert.parts is not None:
        for part in cert.parts:
            m = 0
            for e in part:
                m |= 1 << (e - 1)
            part_masks.append(m)

    verts: list[int] = []
    for els in combinations(range(n), k):
        if cert.stability is not None:
            s = cert.stability
            stable = True
            for i in range(k):
                for j in range(i + 1, k):
                    d = els[j] - els[i]
                    if min(d, n - d) < s:
                        stable = False
                        break
                if not stable:
                    break
            if not stable:
                continue
        bits = 0
        for e in els:
            bits |= 1 << e
        if any((bits & pm).bit_count() > 1 for pm in part_masks):
            continue
        verts.append(bits)
    verts.sort()

    if len(cert.colors) != len(verts):
        raise LengthMismatch(
            f"{len(cert.colors)} colors for {len(verts)} descriptor vertices"
        )

    classes: dict[int, list[int]] = {}
    for vid, c in enumerate(cert.colors):
        classes.setdefault(c, []).append(vid)

    violations = []
    examined = 0
    for c, ids in sorted(classes.items()):
        for tup in combinations(ids, r):
            examined += 1
            union = 0
            total = 0
            for vid in tup:
                union |= verts[vid]
                total += verts[vid].bit_count()
            if total == union.bit_count():
                violations.append(
                    Violation(
                        "monochromatic_edge",
                        tup,
                        f"color {c}: vertices {list(tup)} are pairwise disjoint",
                    )
                )
    return Report(
        not violations,
        tuple(violations),
        stats={
            "vertices": len(verts),
            "classes": len(classes),
            "tuples_examined": examined,
        },
    )


def check_edges_pairwise_disjoint(h) -> Report:
    """Independent post-pass: every edge consists of pairwise disjoint subsets."""
    violations = []
    for ei, edge in enumerate(h.edges):
        for a, b in combinations(edge, 2):
            if h.vertices[a].bits & h.vertices[b].bits:
                violations.append(
                    Violation(
                        "overlapping_edge_members",
                        (a, b),
                        f"edge {ei}: vertices {a} and {b} intersect",
                    )
                )
    return Report(
        not violations, tuple(violations), stats={"edges": len(h.edges)}
    )
