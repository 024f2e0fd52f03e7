import itertools

import pytest

from paleylift import gf2, graphs
from paleylift.embedding import (
    RotationSystem,
    dual_graph,
    face_edge_matrix,
    homology_ranks,
    incident_darts,
    read_rotation,
    rotation_from_json,
    rotation_to_json,
    search_self_dual_embedding,
    trace_faces,
    write_rotation,
)
from paleylift.graphs import Graph, SearchBudgetExceeded


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cube_graph():
    edges = []
    for v in range(8):
        for b in (1, 2, 4):
            if v < v ^ b:
                edges.append((v, v ^ b))
    return Graph(8, edges)


def octahedron():
    # K_{2,2,2}: complete graph minus a perfect matching
    missing = {(0, 1), (2, 3), (4, 5)}
    return Graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)
                     if (i, j) not in missing])


def all_rotation_systems(graph):
    inc = incident_darts(graph)
    per_vertex = []
    for darts in inc:
        base, rest = darts[0], darts[1:]
        per_vertex.append([(base,) + p for p in itertools.permutations(rest)])
    for combo in itertools.product(*per_vertex):
        yield RotationSystem(graph, tuple(combo))


def test_rotation_validation():
    g = cycle_graph(3)
    with pytest.raises(ValueError, match="permutation"):
        RotationSystem(g, ((0, 0), (1, 2), (3, 5)))


def test_k4_index_order_euler():
    g = complete_graph(4)
    faces = trace_faces(RotationSystem.from_index_order(g))
    chi = 4 - 6 + len(faces.faces)
    assert chi % 2 == 0 and chi <= 2
    assert faces.genus == (2 - chi) // 2


def test_c4_two_faces_genus_zero():
    faces = trace_faces(RotationSystem.from_index_order(cycle_graph(4)))
    assert len(faces.faces) == 2
    assert faces.genus == 0


def test_trace_requires_connected():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError, match="connected"):
        trace_faces(RotationSystem.from_index_order(g))


def test_face_tracing_dart_coverage_all_k4_systems():
    g = complete_graph(4)
    count = 0
    for rs in all_rotation_systems(g):
        faces = trace_faces(rs)
        darts = [d for walk in faces.faces for d in walk]
        assert sorted(darts) == list(range(2 * g.edge_count))
        chi = faces.euler_characteristic
        assert chi % 2 == 0
        assert faces.genus >= 0
        count += 1
    assert count == 2 ** 4  # (3-1)! = 2 rotations per degree-3 vertex


def test_face_edge_matrix_c4():
    faces = trace_faces(RotationSystem.from_index_order(cycle_graph(4)))
    m = face_edge_matrix(faces)
    assert m.rows == 2
    assert m.row_bits[0] == m.row_bits[1]  # both faces bound the whole cycle
    acc = 0
    for r in m.row_bits:
        acc ^= r
    assert acc == 0


def test_face_edge_matrix_rows_sum_zero_k4():
    g = complete_graph(4)
    for rs in all_rotation_systems(g):
        m = face_edge_matrix(trace_faces(rs))
        acc = 0
        for r in m.row_bits:
            acc ^= r
        assert acc == 0


def test_face_edge_matrix_paley9(paley9, paley9_rotation):
    faces = trace_faces(paley9_rotation)
    assert len(faces.faces) == 9
    assert faces.genus == 1
    m = face_edge_matrix(faces)
    assert (m.rows, m.cols) == (9, 18)
    assert gf2.rank(m) == 8  # |F| - 1 on a closed surface


def test_incidence_orthogonal_to_faces(paley9, paley9_rotation):
    hx = graphs.incidence_matrix(paley9.graph)
    hz = face_edge_matrix(trace_faces(paley9_rotation))
    assert gf2.multiply(hx, hz.transpose()).is_zero()


def test_dual_of_planar_cube_is_octahedron():
    g = cube_graph()
    # exhaustive over the 2^8 rotation systems: pick the first planar one
    planar = next(rs for rs in all_rotation_systems(g)
                  if trace_faces(rs).genus == 0)
    dual = dual_graph(planar)
    assert dual.is_simple
    assert graphs.find_isomorphism(dual.graph, octahedron()) is not None


def test_dual_c4_parallel_edges():
    dual = dual_graph(RotationSystem.from_index_order(cycle_graph(4)))
    assert dual.graph.vertex_count == 2
    assert dual.multiplicities == (((0, 1), 4),)
    assert not dual.is_simple
    assert dual.edge_count_with_multiplicity == 4


def test_dual_edge_bijection_all_k4_systems():
    # the dual always has exactly one adjacency per primal edge
    g = complete_graph(4)
    for rs in all_rotation_systems(g):
        dual = dual_graph(rs)
        assert dual.edge_count_with_multiplicity == g.edge_count


def test_dual_paley9_self(paley9, paley9_rotation):
    dual = dual_graph(paley9_rotation)
    assert dual.is_simple
    assert dual.edge_count_with_multiplicity == 18
    assert graphs.find_isomorphism(dual.graph, paley9.graph) is not None


def test_homology_toric_2x2():
    # 2x2 toric layout: 4 vertices, 8 edges, 4 plaquettes (a multigraph
    # tiling, so the matrices are written down directly)
    hx = gf2.BinaryMatrix.from_rows([
        [1, 1, 0, 0, 1, 0, 1, 0],
        [1, 1, 0, 0, 0, 1, 0, 1],
        [0, 0, 1, 1, 1, 0, 1, 0],
        [0, 0, 1, 1, 0, 1, 0, 1],
    ])
    hz = gf2.BinaryMatrix.from_rows([
        [1, 0, 1, 0, 1, 1, 0, 0],
        [0, 1, 0, 1, 1, 1, 0, 0],
        [1, 0, 1, 0, 0, 0, 1, 1],
        [0, 1, 0, 1, 0, 0, 1, 1],
    ])
    summary = homology_ranks(hx, hz)
    assert summary.beta1 == 8 - 3 - 3 == 2
    assert summary.genus_from_homology == 1
    assert summary.beta0 == 1


def test_homology_sphere():
    g = cycle_graph(4)
    hx = graphs.incidence_matrix(g)
    hz = face_edge_matrix(trace_faces(RotationSystem.from_index_order(g)))
    summary = homology_ranks(hx, hz)
    assert summary.beta1 == 0
    assert summary.genus_from_homology == 0


def test_homology_paley9(paley9, paley9_rotation):
    hx = graphs.incidence_matrix(paley9.graph)
    hz = face_edge_matrix(trace_faces(paley9_rotation))
    summary = homology_ranks(hx, hz)
    assert summary.beta1 == 2
    assert summary.genus_from_homology == 1


def test_homology_rejects_non_orthogonal():
    hx = gf2.BinaryMatrix.from_rows([[1, 1, 0]])
    hz = gf2.BinaryMatrix.from_rows([[1, 0, 0]])
    with pytest.raises(ValueError, match="row 0 of hx and row 0 of hz"):
        homology_ranks(hx, hz)


def test_homology_matches_euler_genus_for_k4_embeddings():
    g = complete_graph(4)
    hx = graphs.incidence_matrix(g)
    for rs in all_rotation_systems(g):
        faces = trace_faces(rs)
        hz = face_edge_matrix(faces)
        summary = homology_ranks(hx, hz)
        assert summary.beta1 == 2 * faces.genus


def test_search_c4_absence():
    assert search_self_dual_embedding(cycle_graph(4), target_genus=0) is None


def test_search_k4_finds_tetrahedron():
    # the planar K_4 is the tetrahedron, which is classically self-dual
    rs = search_self_dual_embedding(complete_graph(4), target_genus=0)
    assert rs is not None
    faces = trace_faces(rs)
    assert faces.genus == 0
    dual = dual_graph(rs, faces)
    assert dual.is_simple
    assert graphs.find_isomorphism(dual.graph, complete_graph(4)) is not None


def test_search_k4_genus_one_absence():
    # a genus-1 embedding of K_4 would need |F| = 2 != |V|
    assert search_self_dual_embedding(complete_graph(4), target_genus=1) is None


def test_search_paley9(paley9, paley9_rotation):
    faces = trace_faces(paley9_rotation)
    assert faces.genus == 1
    assert len(faces.faces) == 9
    assert sorted(len(w) for w in faces.faces) == [4] * 9
    dual = dual_graph(paley9_rotation, faces)
    assert graphs.find_isomorphism(dual.graph, paley9.graph) is not None


def test_search_vertex_transitive_hint_is_lossy(paley9):
    # freezing the first vertex's rotation shrinks the space by (d-1)!/2 but
    # can miss witnesses; on Paley-9 every self-dual genus-1 system has a
    # non-canonical rotation at vertex 0, so the hinted search comes up empty
    hinted = search_self_dual_embedding(paley9.graph, target_genus=1,
                                        vertex_transitive=True)
    assert hinted is None


def test_search_budget_exhaustion(paley9):
    with pytest.raises(SearchBudgetExceeded):
        search_self_dual_embedding(paley9.graph, target_genus=1, budget=10)


def test_search_deterministic(paley9, paley9_rotation):
    again = search_self_dual_embedding(paley9.graph, target_genus=1)
    assert again.rotations == paley9_rotation.rotations


def test_rotation_json_round_trip(paley9, paley9_rotation, tmp_path):
    text = rotation_to_json(paley9_rotation)
    back = rotation_from_json(text, paley9.graph)
    assert back.rotations == paley9_rotation.rotations
    path = tmp_path / "rot.json"
    write_rotation(paley9_rotation, path)
    assert read_rotation(path, paley9.graph).rotations == paley9_rotation.rotations
