"""Paley graphs: Cayley graphs on the additive group of GF(p^r) whose
connection set is the nonzero squares; defined here for p^r = 1 mod 8."""
from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldElement, PrimePowerField, quadratic_residues
from .graphs import Graph, IsomorphismCertificate, complement, verify_isomorphism


@dataclass(frozen=True)
class PaleyGraph:
    field: PrimePowerField
    graph: Graph
    connection_set: frozenset[FieldElement]


def build_paley(field: PrimePowerField) -> PaleyGraph:
    """Vertices are the field elements in canonical index order; g and h are
    adjacent iff h - g is a nonzero square."""
    m = field.order
    if m % 8 != 1:
        raise ValueError(
            f"Paley construction requires p^r = 1 (mod 8); got {m} = {m % 8} (mod 8)"
        )
    residues = quadratic_residues(field)
    residue_indices = {e.index for e in residues}
    edges = []
    for i in range(m):
        gi = field.element(i)
        for j in range(i + 1, m):
            diff = field.sub(field.element(j), gi)
            if diff.index in residue_indices:
                edges.append((i, j))
    graph = Graph(m, edges)
    expected_degree = (m - 1) // 2
    if any(graph.degree(v) != expected_degree for v in range(m)):
        raise AssertionError("Paley graph is not (m-1)/2-regular; arithmetic bug")
    return PaleyGraph(field=field, graph=graph, connection_set=residues)


def smallest_nonresidue(field: PrimePowerField) -> FieldElement:
    """Nonzero non-square of smallest canonical index."""
    residue_indices = {e.index for e in quadratic_residues(field)}
    for i in range(1, field.order):
        if i not in residue_indices:
            return field.element(i)
    raise AssertionError("every nonzero element is a square; nonresidue requires odd p")


def verify_self_complementary_via_multiplier(paley: PaleyGraph) -> IsomorphismCertificate:
    """Certificate from the multiplier map g -> s*g for the smallest
    non-square s, which exchanges squares and non-squares and therefore maps
    edges onto complement edges."""
    field = paley.field
    s = smallest_nonresidue(field)
    mapping = tuple(field.mul(s, field.element(i)).index for i in range(field.order))
    comp = complement(paley.graph)
    if not verify_isomorphism(paley.graph, comp, mapping):
        raise AssertionError(
            "multiplier map failed to carry edges onto the complement; "
            "field arithmetic bug"
        )
    return IsomorphismCertificate(mapping=mapping, verified=True)
