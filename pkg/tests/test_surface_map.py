from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from twistfill.surface_map import (
    CombMap,
    connected_components,
    cycles,
    disjoint_union,
    perm_from_cycles,
    trace_faces,
    validate_map,
)

TORUS = CombMap(1, (1, 2, 3, 0), perm_from_cycles(4, [(0, 2), (1, 3)]))


def random_map(V: int, seed: int) -> CombMap:
    rng = random.Random(seed)
    darts = list(range(4 * V))
    rng.shuffle(darts)
    alpha = perm_from_cycles(4 * V, [darts[i:i + 2] for i in range(0, 4 * V, 2)])
    sigma = perm_from_cycles(4 * V, [range(4 * v, 4 * v + 4) for v in range(V)])
    return CombMap(V, sigma, alpha)


def test_torus_is_valid():
    assert validate_map(TORUS) is None


def test_alpha_fixed_point_rejected():
    m = CombMap(1, (1, 2, 3, 0), (0, 3, 2, 1))
    assert validate_map(m).startswith("alpha not fixed-point-free")
    assert "dart 0" in validate_map(m)


def test_three_cycle_rejected():
    m = CombMap(1, (1, 2, 0, 3), perm_from_cycles(4, [(0, 2), (1, 3)]))
    assert validate_map(m).startswith("vertex not 4-valent")


def test_torus_faces():
    rep = trace_faces(TORUS)
    assert (rep.vertex_count, rep.edge_count, rep.face_count) == (1, 2, 1)
    assert rep.euler == 0 and rep.genus == 1 and rep.components == 1


def test_two_tori():
    m = disjoint_union(TORUS, TORUS)
    rep = trace_faces(m)
    assert rep.components == 2
    assert rep.component_genera == (1, 1)
    assert len(connected_components(m)) == 2


def test_catalog_pair_faces(g2):
    rep = trace_faces(g2.map)
    assert rep.face_count == 2 and rep.genus == 2 and rep.components == 1
    assert rep.degree_multiset() == (4, 12)
    assert connected_components(g2.map) == [[0, 1, 2, 3]]


def test_faces_ordered_by_minimal_dart(g2):
    faces = trace_faces(g2.map).faces
    assert [f[0] for f in faces] == sorted(f[0] for f in faces)
    assert all(f[0] == min(f) for f in faces)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_random_maps(V, seed):
    m = random_map(V, seed)
    assert validate_map(m) is None
    rep = trace_faces(m)
    assert sorted(d for f in rep.faces for d in f) == list(range(4 * V))
    assert rep.euler == V - 2 * V + rep.face_count
    assert all(g >= 0 for g in rep.component_genera)
    assert rep == trace_faces(CombMap(V, m.sigma, m.alpha))
    # faces of a union are the union of faces
    both = trace_faces(disjoint_union(m, TORUS))
    assert both.components == rep.components + 1
    assert both.genus == rep.genus + 1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10**6))
def test_components_partition_vertices(V, seed):
    m = random_map(V, seed)
    comps = connected_components(m)
    assert sorted(v for c in comps for v in c) == list(range(V))
    assert len(comps) == trace_faces(m).components


def test_cycles_start_at_minimum():
    assert cycles([1, 2, 0, 4, 3]) == [[0, 1, 2], [3, 4]]
