"""Hypergraph generators checked against independent edge predicates."""

import json
import warnings
from itertools import combinations
from math import comb

import pytest

from kneser_lab.errors import InstanceTooLarge, InvalidParams, InvalidPartSpec
from kneser_lab.kneser import (
    Hypergraph,
    PartSpec,
    SizeLimits,
    build_kneser_hypergraph,
    build_partition_constrained,
    build_stable_subhypergraph,
    formula_chi,
    hypergraph_from_dict,
    hypergraph_to_dict,
)
from kneser_lab.setsys import GroundParams, enumerate_k_subsets, is_s_stable
from kneser_lab.verify import check_edges_pairwise_disjoint


def naive_edges(masks, r):
    """Oracle: brute-force scan over all r-combinations."""
    out = []
    for tup in combinations(range(len(masks)), r):
        union = 0
        total = 0
        for i in tup:
            union |= masks[i]
            total += masks[i].bit_count()
        if union.bit_count() == total:
            out.append(tup)
    return out


def test_kneser_graph_counts():
    h = build_kneser_hypergraph(GroundParams(5, 2, 2))
    assert h.num_vertices == 10 and h.num_edges == 15  # Petersen
    h = build_kneser_hypergraph(GroundParams(6, 2, 2))
    assert h.num_vertices == 15 and h.num_edges == 45
    h = build_kneser_hypergraph(GroundParams(7, 2, 3))
    assert h.num_vertices == 21 and h.num_edges == 105
    h = build_kneser_hypergraph(GroundParams(8, 2, 4))
    assert h.num_vertices == 28 and h.num_edges == 105


def test_edges_match_naive_scan():
    for n, k, r in [(5, 2, 2), (6, 2, 3), (6, 3, 2), (7, 3, 2)]:
        h = build_kneser_hypergraph(GroundParams(n, k, r))
        masks = [v.bits for v in h.vertices]
        assert list(h.edges) == naive_edges(masks, r)
        assert check_edges_pairwise_disjoint(h).ok


def test_edgeless_below_threshold_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        h = build_kneser_hypergraph(GroundParams(5, 2, 3))
        assert h.num_edges == 0
        assert any("no edges" in str(w.message) for w in caught)


def test_vertices_in_colex_order():
    h = build_kneser_hypergraph(GroundParams(6, 2, 2))
    masks = [v.bits for v in h.vertices]
    assert masks == sorted(masks)
    assert h.vertices[0].elements() == (1, 2)


def test_stable_subhypergraph_counts():
    # Schrijver-style restriction at r=2
    for n, nv in [(6, 9), (7, 14), (8, 20)]:
        h = build_stable_subhypergraph(GroundParams(n, 2, 2), 2)
        assert h.num_vertices == nv
        assert all(is_s_stable(v, 2) for v in h.vertices)
    h = build_stable_subhypergraph(GroundParams(8, 2, 4), 4)
    assert h.num_vertices == 4 and h.num_edges == 1
    assert sorted(v.elements() for v in h.vertices) == [
        (1, 5), (2, 6), (3, 7), (4, 8),
    ]


def test_stable_filter_matches_naive():
    p = GroundParams(8, 3, 2)
    h = build_stable_subhypergraph(p, 2, SizeLimits())
    expected = [v for v in enumerate_k_subsets(8, 3) if is_s_stable(v, 2)]
    assert list(h.vertices) == expected
    masks = [v.bits for v in h.vertices]
    assert list(h.edges) == naive_edges(masks, 2)


def test_stable_requires_positive_s():
    with pytest.raises(InvalidParams):
        build_stable_subhypergraph(GroundParams(6, 2, 2), 0)


def test_part_spec_validation():
    PartSpec(((1, 2), (3, 4), (5, 6))).validate(6, 3)
    with pytest.raises(InvalidPartSpec):
        PartSpec(((1, 2), (3,))).validate(6, 3)  # misses 4,5,6
    with pytest.raises(InvalidPartSpec):
        PartSpec(((1, 2), (2, 3), (4, 5), (6,))).validate(6, 3)  # reuse of 2
    with pytest.raises(InvalidPartSpec):
        PartSpec(((1, 2, 3), (4, 5, 6))).validate(6, 3)  # block too big
    with pytest.raises(InvalidPartSpec):
        PartSpec(((1, 2), (3, 4), (5, 6), ())).validate(6, 3)
    with pytest.raises(InvalidPartSpec):
        PartSpec(((1, 2), (3, 7), (5, 6), (4,))).validate(6, 3)


def test_partition_constrained_instance():
    spec = PartSpec(((1, 2), (3, 4), (5, 6)))
    h = build_partition_constrained(GroundParams(6, 2, 3), spec)
    # 15 pairs minus the 3 inside blocks
    assert h.num_vertices == 12
    assert h.num_edges == 8
    part_masks = spec.masks()
    for v in h.vertices:
        assert all((v.bits & pm).bit_count() <= 1 for pm in part_masks)
    masks = [v.bits for v in h.vertices]
    assert list(h.edges) == naive_edges(masks, 3)


def test_formula_chi_values():
    assert formula_chi(GroundParams(5, 2, 2)) == 3
    assert formula_chi(GroundParams(6, 2, 2)) == 4
    assert formula_chi(GroundParams(6, 2, 3)) == 2
    assert formula_chi(GroundParams(7, 2, 3)) == 2
    assert formula_chi(GroundParams(8, 2, 4)) == 2
    assert formula_chi(GroundParams(8, 2, 3)) == 3
    with pytest.raises(InvalidParams):
        formula_chi(GroundParams(5, 2, 3))  # below n = r*k


def test_size_guards():
    limits = SizeLimits(max_vertices=10)
    with pytest.raises(InstanceTooLarge):
        build_kneser_hypergraph(GroundParams(7, 2, 2), limits)
    limits = SizeLimits(max_edges=3)
    with pytest.raises(InstanceTooLarge):
        build_kneser_hypergraph(GroundParams(6, 2, 2), limits)


def test_json_roundtrip():
    for h in [
        build_kneser_hypergraph(GroundParams(6, 2, 3)),
        build_stable_subhypergraph(GroundParams(7, 2, 2), 2),
        build_partition_constrained(
            GroundParams(6, 2, 3), PartSpec(((1, 2), (3, 4), (5, 6)))
        ),
    ]:
        doc = json.loads(json.dumps(hypergraph_to_dict(h)))
        back = hypergraph_from_dict(doc)
        assert back.vertices == h.vertices
        assert back.edges == h.edges
        assert back.stability == h.stability
        assert back.parts == h.parts


def test_json_rejects_garbage():
    with pytest.raises(InvalidParams):
        hypergraph_from_dict({"n": 5, "k": 2})
    good = hypergraph_to_dict(build_kneser_hypergraph(GroundParams(5, 2, 2)))
    bad = dict(good)
    bad["edges"] = [[0, 99]]
    with pytest.raises(InvalidParams):
        hypergraph_from_dict(bad)
    bad = dict(good)
    bad["edges"] = [[1, 1]]
    with pytest.raises(InvalidParams):
        hypergraph_from_dict(bad)


def test_serialize_requires_params():
    h = build_kneser_hypergraph(GroundParams(5, 2, 2))
    anon = Hypergraph(vertices=h.vertices, edges=h.edges)
    with pytest.raises(InvalidParams):
        hypergraph_to_dict(anon)
