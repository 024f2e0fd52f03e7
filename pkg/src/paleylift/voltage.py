"""Two-vertex voltage graphs over (Z_2^t, xor) and their lifts.

Voltage vectors are integers read MSB-first as length-t bit vectors, so
value 6 at t=3 is the vector 110.  The four vector classes are keyed by
the leading bit and the weight parity of the remaining t-1 bits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import BinaryMatrix
from .graphs import Graph


def _weight(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class VoltageVector:
    """A vector of Z_2^t with its class label and rank within the class."""

    value: int
    t: int
    leading_bit: int
    tail_even: bool
    ordinal: int  # 1-based, ordered by numeric value within the class

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.t - 1 - i)) & 1 for i in range(self.t))

    @property
    def label(self) -> str:
        parity = "e" if self.tail_even else "s"
        return f"{self.leading_bit}{parity}{self.ordinal}"


def classify_vectors(t: int) -> list[VoltageVector]:
    """All 2^t vectors, each tagged with its class; t >= 2 gives four classes
    of size 2^(t-2)."""
    if t < 2:
        raise ValueError(f"need t >= 2 to form four classes, got {t}")
    counters: dict[tuple[int, bool], int] = {}
    out = []
    for value in range(1 << t):
        leading = value >> (t - 1)
        tail = value & ((1 << (t - 1)) - 1)
        tail_even = _weight(tail) % 2 == 0
        key = (leading, tail_even)
        counters[key] = counters.get(key, 0) + 1
        out.append(VoltageVector(value=value, t=t, leading_bit=leading,
                                 tail_even=tail_even, ordinal=counters[key]))
    return out


def class_members(t: int, leading_bit: int, tail_even: bool) -> list[int]:
    return [v.value for v in classify_vectors(t)
            if v.leading_bit == leading_bit and v.tail_even == tail_even]


@dataclass(frozen=True)
class VoltageGraph:
    """Two vertices u, v; links u-v plus half edges at each vertex, all
    labeled by elements of Z_2^t."""

    t: int
    links: tuple[int, ...]
    half_edges_u: tuple[int, ...]
    half_edges_v: tuple[int, ...]

    def __post_init__(self) -> None:
        for a in self.half_edges_u + self.half_edges_v:
            if a == 0:
                raise ValueError("zero voltage on a half edge would lift to self-loops")
        for a in self.links + self.half_edges_u + self.half_edges_v:
            if not 0 <= a < (1 << self.t):
                raise ValueError(f"voltage {a} outside Z_2^{self.t}")


def build_voltage_graph(t: int) -> VoltageGraph:
    """The two-vertex voltage graph H_t: links carry every odd-weight vector;
    half edges at v carry the odd-tail vectors; half edges at u carry the
    even-tail vectors except zero."""
    if t < 3:
        raise ValueError(f"the construction requires t >= 3, got {t}")
    links = tuple(sorted(class_members(t, 0, False) + class_members(t, 1, True)))
    half_v = tuple(sorted(class_members(t, 0, False) + class_members(t, 1, False)))
    half_u = tuple(sorted([a for a in class_members(t, 0, True) if a != 0]
                          + class_members(t, 1, True)))
    return VoltageGraph(t=t, links=links, half_edges_u=half_u, half_edges_v=half_v)


def lift(vg: VoltageGraph) -> Graph:
    """Derived graph of the voltage assignment over Z_2^t.

    Vertices: u_g -> g and v_g -> 2^t + g.  A link with voltage a yields
    edges {u_g, v_(g^a)} for every g; a half edge at a vertex with voltage
    a yields the perfect matching {w_g, w_(g^a)} inside that fiber (every
    voltage is an involution, so each unordered pair appears once).
    """
    size = 1 << vg.t
    edges = []
    for a in vg.links:
        for g in range(size):
            edges.append((g, size + (g ^ a)))
    for a in vg.half_edges_u:
        for g in range(size):
            if g < g ^ a:
                edges.append((g, g ^ a))
    for a in vg.half_edges_v:
        for g in range(size):
            if g < g ^ a:
                edges.append((size + g, size + (g ^ a)))
    return Graph(2 * size, edges)


def block_adjacency(t: int) -> BinaryMatrix:
    """Adjacency matrix of the lift from the closed-form tensor blocks.

    The 2^(t+1) x 2^(t+1) matrix [[B, C], [C, D]] where, with I the 2x2
    identity and X the 2x2 swap,
        B = (I+X)/2 (x) [(I+X)^(x(t-1)) + (I-X)^(x(t-1))] - I^(xt)
        C = [(I+X)^(xt) - (I-X)^(xt)] / 2
        D = (I+X)/2 (x) [(I+X)^(x(t-1)) - (I-X)^(x(t-1))]
    evaluated exactly over the integers (the halvings are exact).
    """
    if t < 3:
        raise ValueError(f"the construction requires t >= 3, got {t}")
    ident = np.eye(2, dtype=np.int64)
    swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
    plus = ident + swap
    minus = ident - swap

    def kron_power(m: np.ndarray, k: int) -> np.ndarray:
        out = np.array([[1]], dtype=np.int64)
        for _ in range(k):
            out = np.kron(out, m)
        return out

    def exact_half(m: np.ndarray) -> np.ndarray:
        if np.any(m % 2):
            raise ArithmeticError("tensor expression is not divisible by 2; "
                                  "formula transcription bug")
        return m // 2

    b = exact_half(np.kron(plus, kron_power(plus, t - 1) + kron_power(minus, t - 1)))
    b = b - kron_power(ident, t)
    c = exact_half(kron_power(plus, t) - kron_power(minus, t))
    d = exact_half(np.kron(plus, kron_power(plus, t - 1) - kron_power(minus, t - 1)))

    top = np.concatenate([b, c], axis=1)
    bottom = np.concatenate([c, d], axis=1)
    full = np.concatenate([top, bottom], axis=0)
    if not np.all((full == 0) | (full == 1)):
        raise ArithmeticError("block adjacency has entries outside {0,1}; "
                              "formula transcription bug")
    return BinaryMatrix.from_rows(full.tolist())
