"""Orientable cellular embeddings: rotation systems, face tracing, duals,
homology ranks, and a bounded search for self-dual embeddings.

Darts: edge e contributes dart 2e at its smaller endpoint and dart 2e+1 at
its larger endpoint; reversal is xor with 1.  A face walk steps from a dart
to the rotation successor of its reversal, the standard convention for
orientable embeddings.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .gf2 import BinaryMatrix, multiply, rank
from .graphs import Graph, SearchBudgetExceeded, find_isomorphism

DEFAULT_SEARCH_BUDGET = 50_000_000


def incident_darts(graph: Graph) -> list[list[int]]:
    """Darts at each vertex, sorted ascending."""
    inc: list[list[int]] = [[] for _ in range(graph.vertex_count)]
    for e, (u, v) in enumerate(graph.edges):
        inc[u].append(2 * e)
        inc[v].append(2 * e + 1)
    return [sorted(d) for d in inc]


def dart_vertex(graph: Graph, dart: int) -> int:
    u, v = graph.edges[dart >> 1]
    return u if dart & 1 == 0 else v


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic dart order at every vertex; defines an orientable embedding."""

    graph: Graph
    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.rotations) != self.graph.vertex_count:
            raise ValueError("one rotation per vertex required")
        expected = incident_darts(self.graph)
        for v, rot in enumerate(self.rotations):
            if sorted(rot) != expected[v]:
                raise ValueError(
                    f"rotation at vertex {v} is not a permutation of its darts: "
                    f"{sorted(rot)} != {expected[v]}"
                )

    @classmethod
    def from_index_order(cls, graph: Graph) -> "RotationSystem":
        """Rotation listing each vertex's darts in ascending order."""
        return cls(graph, tuple(tuple(d) for d in incident_darts(graph)))

    def successor_table(self) -> list[int]:
        succ = [0] * (2 * self.graph.edge_count)
        for rot in self.rotations:
            k = len(rot)
            for i in range(k):
                succ[rot[i]] = rot[(i + 1) % k]
        return succ


@dataclass(frozen=True)
class FaceSet:
    """Faces traced from a rotation system, with the Euler-derived genus."""

    graph: Graph
    faces: tuple[tuple[int, ...], ...]
    genus: int

    @property
    def euler_characteristic(self) -> int:
        return self.graph.vertex_count - self.graph.edge_count + len(self.faces)


def trace_faces(rs: RotationSystem) -> FaceSet:
    """Trace all faces; requires a connected graph.

    A negative or fractional genus cannot arise from a valid rotation
    system on a connected graph, so it is rejected as input corruption.
    """
    g = rs.graph
    if not g.is_connected():
        raise ValueError("face tracing requires a connected graph")
    succ = rs.successor_table()
    num_darts = 2 * g.edge_count
    visited = [False] * num_darts
    faces = []
    for d0 in range(num_darts):
        if visited[d0]:
            continue
        walk = []
        d = d0
        while not visited[d]:
            visited[d] = True
            walk.append(d)
            d = succ[d ^ 1]
        faces.append(tuple(walk))
    chi = g.vertex_count - g.edge_count + len(faces)
    if chi % 2 != 0 or chi > 2:
        raise ValueError(f"non-cellular anomaly: Euler characteristic {chi}")
    genus = (2 - chi) // 2
    return FaceSet(graph=g, faces=tuple(faces), genus=genus)


def face_edge_matrix(faces: FaceSet) -> BinaryMatrix:
    """|F| x |E| incidence mod 2: entry 1 iff the edge occurs an odd number
    of times on the face walk."""
    rows = []
    for walk in faces.faces:
        counts = Counter(d >> 1 for d in walk)
        bits = 0
        for e, c in counts.items():
            if c % 2:
                bits |= 1 << e
        rows.append(bits)
    return BinaryMatrix(len(rows), faces.graph.edge_count, tuple(rows))


@dataclass(frozen=True)
class DualGraphResult:
    """Dual of an embedded graph, reduced to a simple graph plus reports of
    the loops and multi-edges that the reduction removed."""

    graph: Graph
    loops: tuple[tuple[int, int], ...]          # (face, edge) pairs
    multiplicities: tuple[tuple[tuple[int, int], int], ...]  # ((f1,f2), count)

    @property
    def is_simple(self) -> bool:
        return not self.loops and all(c == 1 for _, c in self.multiplicities)

    @property
    def edge_count_with_multiplicity(self) -> int:
        return len(self.loops) + sum(c for _, c in self.multiplicities)


def dual_graph(rs: RotationSystem, faces: Optional[FaceSet] = None) -> DualGraphResult:
    """One dual vertex per face; one dual adjacency per primal edge."""
    if faces is None:
        faces = trace_faces(rs)
    face_of = {}
    for fi, walk in enumerate(faces.faces):
        for d in walk:
            face_of[d] = fi
    loops = []
    mult: Counter = Counter()
    for e in range(rs.graph.edge_count):
        a, b = face_of[2 * e], face_of[2 * e + 1]
        if a == b:
            loops.append((a, e))
        else:
            mult[(min(a, b), max(a, b))] += 1
    simple = Graph(len(faces.faces), list(mult.keys()))
    return DualGraphResult(
        graph=simple,
        loops=tuple(loops),
        multiplicities=tuple(sorted(mult.items())),
    )


@dataclass(frozen=True)
class HomologySummary:
    beta0: int
    beta1: int
    genus_from_homology: Optional[int]


def homology_ranks(hx: BinaryMatrix, hz: BinaryMatrix) -> HomologySummary:
    """Mod-2 Betti numbers of the chain complex defined by (hx, hz).

    Requires hx hz^T = 0; the first violating row pair is named otherwise.
    beta1 = cols - rank(hx) - rank(hz).  An odd beta1 leaves the genus
    undefined (reported as None).
    """
    if hx.cols != hz.cols:
        raise ValueError(f"column counts differ: {hx.cols} != {hz.cols}")
    prod = multiply(hx, hz.transpose())
    for i in range(prod.rows):
        if prod.row_bits[i]:
            j = (prod.row_bits[i] & -prod.row_bits[i]).bit_length() - 1
            raise ValueError(
                f"hx hz^T != 0: row {i} of hx and row {j} of hz overlap oddly"
            )
    r_x = rank(hx)
    beta0 = hx.rows - r_x
    beta1 = hx.cols - r_x - rank(hz)
    genus = beta1 // 2 if beta1 % 2 == 0 else None
    return HomologySummary(beta0=beta0, beta1=beta1, genus_from_homology=genus)


# -- self-dual embedding search ----------------------------------------------

def _vertex_candidates(inc: list[int], halve: bool) -> list[tuple[int, ...]]:
    """Cyclic orders at one vertex, each normalized to start at the smallest
    dart.  With halve=True, drop one of each reflection pair (valid at a
    single vertex because reversing every rotation preserves genus and dual)."""
    base, rest = inc[0], inc[1:]
    out = []
    for perm in itertools.permutations(rest):
        seq = (base,) + perm
        if halve and len(seq) >= 3 and seq[1] > seq[-1]:
            continue
        out.append(seq)
    return out


def search_self_dual_embedding(
    graph: Graph,
    target_genus: int,
    budget: int = DEFAULT_SEARCH_BUDGET,
    vertex_transitive: bool = False,
) -> Optional[RotationSystem]:
    """Depth-first search for a rotation system of the target genus whose
    dual is a simple graph isomorphic to the input.

    Vertices are assigned in index order and candidate rotations tried in
    lexicographic order, so the first witness in enumeration order is
    returned.  Pruning: a partial assignment dies when a closed face has a
    length unavailable in the degree multiset of the graph (the dual must
    reproduce that multiset), when the face count overshoots, or when an
    open face segment is already longer than the largest degree.

    Returns None when the space is exhausted (definitive absence).  Raises
    SearchBudgetExceeded when the node budget runs out first - that outcome
    is undecided, not absence.  With vertex_transitive=True the first
    vertex's rotation is frozen to its canonical order, shrinking the space
    by a factor (d-1)!/2; use only for graphs whose symmetry justifies it.
    """
    if not graph.is_connected():
        raise ValueError("embedding search requires a connected graph")
    m = graph.vertex_count
    n_e = graph.edge_count
    faces_needed = 2 - 2 * target_genus - m + n_e
    if faces_needed != m:
        # The dual has one vertex per face, so |F| != |V| rules out dual
        # isomorphism outright.
        return None

    inc = incident_darts(graph)
    deg_multiset = Counter(len(d) for d in inc)
    max_face_len = max(deg_multiset)
    num_darts = 2 * n_e
    candidates = [
        _vertex_candidates(inc[v], halve=(v == 0)) for v in range(m)
    ]
    if vertex_transitive and candidates[0]:
        candidates[0] = candidates[0][:1]

    succ = [-1] * num_darts
    nodes = 0

    def partial_ok() -> bool:
        visited = [False] * num_darts
        closed = 0
        allowed = dict(deg_multiset)
        for d0 in range(num_darts):
            if visited[d0]:
                continue
            length = 0
            d = d0
            is_closed = False
            while True:
                if visited[d]:
                    break  # merged into an earlier open segment
                visited[d] = True
                length += 1
                if length > max_face_len:
                    return False
                nxt = succ[d ^ 1]
                if nxt < 0:
                    break
                d = nxt
                if d == d0:
                    is_closed = True
                    break
            if is_closed:
                closed += 1
                remaining = allowed.get(length, 0)
                if remaining == 0 or closed > faces_needed:
                    return False
                allowed[length] = remaining - 1
        return True

    def accept_full() -> Optional[RotationSystem]:
        visited = [False] * num_darts
        walks = []
        for d0 in range(num_darts):
            if visited[d0]:
                continue
            walk = []
            d = d0
            while not visited[d]:
                visited[d] = True
                walk.append(d)
                d = succ[d ^ 1]
            walks.append(walk)
        if len(walks) != faces_needed:
            return None
        face_of = {}
        for fi, walk in enumerate(walks):
            for d in walk:
                face_of[d] = fi
        dual_edges = set()
        for e in range(n_e):
            a, b = face_of[2 * e], face_of[2 * e + 1]
            if a == b:
                return None  # dual loop
            key = (min(a, b), max(a, b))
            if key in dual_edges:
                return None  # dual multi-edge
            dual_edges.add(key)
        dual = Graph(len(walks), list(dual_edges))
        if find_isomorphism(dual, graph) is None:
            return None
        rotations = []
        for v in range(m):
            start = inc[v][0]
            rot = [start]
            d = succ[start]
            while d != start:
                rot.append(d)
                d = succ[d]
            rotations.append(tuple(rot))
        return RotationSystem(graph=graph, rotations=tuple(rotations))

    def dfs(v: int) -> Optional[RotationSystem]:
        nonlocal nodes
        if v == m:
            return accept_full()
        for seq in candidates[v]:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(
                    f"embedding search exceeded {budget} nodes; not found within budget"
                )
            k = len(seq)
            for i in range(k):
                succ[seq[i]] = seq[(i + 1) % k]
            if partial_ok():
                result = dfs(v + 1)
                if result is not None:
                    return result
            for d in seq:
                succ[d] = -1
        return None

    return dfs(0)


# -- rotation-system persistence ----------------------------------------------

def rotation_to_json(rs: RotationSystem) -> str:
    payload = {
        "rotations": [[[d >> 1, d & 1] for d in rot] for rot in rs.rotations]
    }
    return json.dumps(payload, separators=(",", ":"), sort_keys=True) + "\n"


def rotation_from_json(text: str, graph: Graph) -> RotationSystem:
    payload = json.loads(text)
    rotations = tuple(
        tuple(2 * e + end for e, end in rot) for rot in payload["rotations"]
    )
    return RotationSystem(graph=graph, rotations=rotations)


def write_rotation(rs: RotationSystem, path: str | Path) -> None:
    Path(path).write_text(rotation_to_json(rs))


def read_rotation(path: str | Path, graph: Graph) -> RotationSystem:
    return rotation_from_json(Path(path).read_text(), graph)
