"""Switch-based routing: sub-hypercube selection, arbitrary-size networks,
growing networks and two-hop state transfer with step-function evolution.

A hop is classical edge switching, one perfect-transfer quantum evolution,
then switching back.  Any pair inside one hypercube needs a single hop
through the induced sub-hypercube where the pair is antipodal; across
constituent hypercubes of a network a bridge edge plus one cube hop
suffice, so every pair is reachable in at most two hops.

Networks of arbitrary order n are labeled with (k+1)-bit strings where
2^k <= n < 2^(k+1); the vertex set is exactly the binary labels of
0..n-1, which realizes the residual-hypercube construction (the leading
2^k labels form Q_k with prefix 0, the next blocks are the smaller cubes)
and the one-qubit growth rule "binary-increment the last added label".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphs import Edge, SignedWeightedGraph, hypercube
from .spectral import TransferReport

HOP_TIME_UNIT_WEIGHT = math.pi / 2.0


class CapacityError(RuntimeError):
    """Raised when a network's label space is full and must be widened."""


def antipodal(bits: str) -> str:
    """Bitwise complement of a binary label."""
    if not bits or any(c not in "01" for c in bits):
        raise ValueError(f"not a binary label: {bits!r}")
    return "".join("1" if c == "0" else "0" for c in bits)


def hamming(a: str, b: str) -> int:
    if len(a) != len(b):
        raise ValueError("labels must have equal length")
    return sum(1 for x, y in zip(a, b) if x != y)


@dataclass(frozen=True)
class SwitchPlan:
    """Edge switch set for one hop: keep the induced sub-hypercube, cut the rest."""

    sub_dimension: int
    fixed_indices: tuple[int, ...]
    fixed_bits: tuple[int, ...]
    keep_vertices: tuple[int, ...]
    off_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Hop:
    plan: SwitchPlan
    source: int
    target: int
    duration: float


@dataclass(frozen=True)
class HopPlan:
    hops: tuple[Hop, ...]
    total_time: float
    intermediate: Optional[int] = None


@dataclass(frozen=True)
class NetworkLabeling:
    """Binary labels plus the residual-hypercube membership map."""

    labels: tuple[str, ...]
    blocks: tuple[tuple[int, int], ...]   # (start, size) per constituent cube

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        covered = 0
        for start, size in self.blocks:
            if start != covered:
                raise ValueError("blocks must partition the vertex range")
            covered += size
        if covered != len(self.labels):
            raise ValueError("blocks must cover every vertex exactly once")

    @property
    def width(self) -> int:
        return len(self.labels[0]) if self.labels else 0

    def block_of(self, v: int) -> int:
        for i, (start, size) in enumerate(self.blocks):
            if start <= v < start + size:
                return i
        raise ValueError(f"vertex {v} outside the labeling")

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no vertex labeled {label!r}") from None


def _dyadic_blocks(n: int) -> tuple[tuple[int, int], ...]:
    blocks = []
    start = 0
    while start < n:
        size = 1 << ((n - start).bit_length() - 1)
        blocks.append((start, size))
        start += size
    return tuple(blocks)


def hypercube_labeling(k: int) -> NetworkLabeling:
    """Labeling of a plain Q_k treated as a one-block network."""
    labels = tuple(format(v, f"0{k}b") for v in range(1 << k))
    return NetworkLabeling(labels, ((0, 1 << k),))


def _hamming_one_edges(count: int, width: int) -> tuple[Edge, ...]:
    edges = []
    for v in range(count):
        for b in range(width):
            u = v ^ (1 << b)
            if v < u < count:
                edges.append(Edge(v, u, 1.0, 1))
    return tuple(edges)


def build_network(n: int) -> tuple[SignedWeightedGraph, NetworkLabeling]:
    """Network of order n with all-to-all transfer in at most two hops.

    Vertices are the (k+1)-bit binary labels of 0..n-1 with edges at
    Hamming distance 1; the dyadic blocks of [0, n) are the constituent
    hypercubes (largest first) and every vertex of a smaller cube has
    exactly one bridge into each larger cube.
    """
    if n < 2:
        raise ValueError("network needs at least 2 vertices")
    width = n.bit_length()          # k+1 bits for 2^k <= n < 2^(k+1)
    labels = tuple(format(v, f"0{width}b") for v in range(n))
    graph = SignedWeightedGraph(n, _hamming_one_edges(n, width), labels=labels)
    return graph, NetworkLabeling(labels, _dyadic_blocks(n))


def network_edge_count(n: int) -> int:
    """Closed-form T(n): per constituent cube its own edges plus one bridge
    per vertex into each larger cube."""
    if n < 2:
        raise ValueError("network needs at least 2 vertices")
    total = 0
    for i, (_, size) in enumerate(_dyadic_blocks(n)):
        dim = size.bit_length() - 1
        total += dim * (size >> 1) + i * size
    return total


def grow(network: SignedWeightedGraph, labeling: NetworkLabeling
         ) -> tuple[SignedWeightedGraph, NetworkLabeling]:
    """Add one vertex: binary-increment the last label, join at Hamming 1."""
    n = network.vertex_count
    width = labeling.width
    if n >= 1 << width:
        raise CapacityError(
            f"label space of width {width} is full at {n} vertices; "
            "widen the labels by one index before growing")
    new_label = format(n, f"0{width}b")
    edges = list(network.edges)
    for v, lab in enumerate(labeling.labels):
        if hamming(lab, new_label) == 1:
            edges.append(Edge(v, n, 1.0, 1))
    labels = labeling.labels + (new_label,)
    graph = SignedWeightedGraph(n + 1, tuple(edges), labels=labels)
    return graph, NetworkLabeling(labels, _dyadic_blocks(n + 1))


def widen_labels(network: SignedWeightedGraph, labeling: NetworkLabeling
                 ) -> tuple[SignedWeightedGraph, NetworkLabeling]:
    """Append one more index: prefix every label with 0 (graph unchanged)."""
    labels = tuple("0" + lab for lab in labeling.labels)
    graph = SignedWeightedGraph(network.vertex_count, network.edges, labels=labels)
    return graph, NetworkLabeling(labels, labeling.blocks)


# ---------------------------------------------------------------------------
# sub-hypercube selection

def _subcube_plan(labels: tuple[str, ...], edges: tuple[Edge, ...],
                  u: int, v: int) -> SwitchPlan:
    """Switch plan keeping the induced sub-hypercube where u, v are antipodal.

    Keep exactly the existing vertices that agree with u on every position
    where u and v agree; verifies the kept set is a complete hypercube.
    """
    lu, lv = labels[u], labels[v]
    if lu == lv:
        raise ValueError("endpoints must differ")
    m = tuple(j for j, (a, b) in enumerate(zip(lu, lv)) if a == b)
    bits = tuple(int(lu[j]) for j in m)
    dim = len(lu) - len(m)
    keep = tuple(i for i, lab in enumerate(labels)
                 if all(lab[j] == lu[j] for j in m))
    if len(keep) != 1 << dim:
        raise ValueError(
            f"vertices matching the fixed bits form {len(keep)} vertices, "
            f"not a complete Q_{dim}; no single-hop transfer here")
    keep_set = set(keep)
    off = tuple((e.u, e.v) for e in edges
                if not (e.u in keep_set and e.v in keep_set))
    return SwitchPlan(dim, m, bits, keep, off)


def find_subhypercube(k: int, u: str, v: str) -> SwitchPlan:
    """Sub-hypercube of Q_k in which the two labels are antipodal.

    The fixed indices m_t are the string positions (left to right from 0)
    where the labels agree, the fixed bits M_t are the shared values, and
    the kept vertices induce a Q_i with i = k - |m_t|.
    """
    if len(u) != k or len(v) != k:
        raise ValueError(f"labels must have length {k}")
    if u == v:
        raise ValueError("endpoints must differ")
    host = hypercube(k)
    assert host.labels is not None
    return _subcube_plan(host.labels, host.edges, host.index_of(u), host.index_of(v))


def switch_off_count(k: int, i: int) -> int:
    """Edges cut when reducing a full Q_k to an induced Q_i: k 2^(k-1) - i 2^(i-1)."""
    if not 0 <= i <= k:
        raise ValueError("need 0 <= i <= k")
    return k * (1 << (k - 1)) - (i * (1 << (i - 1)) if i else 0)


# ---------------------------------------------------------------------------
# route planning

def _bridge_partner(labeling: NetworkLabeling, vertex: int, block: int) -> int:
    """The unique Hamming-1 mirror of a smaller-cube vertex inside a larger cube."""
    label = labeling.labels[vertex]
    start, size = labeling.blocks[block]
    partners = [i for i in range(start, start + size)
                if hamming(labeling.labels[i], label) == 1]
    if not partners:
        raise ValueError(f"no bridge from {label} into block {block}")
    return min(partners, key=lambda i: labeling.labels[i])


def plan_route(network: SignedWeightedGraph, labeling: NetworkLabeling,
               u: int, w: int, weight: Optional[float] = None) -> HopPlan:
    """Hop plan transferring vertex u to vertex w in at most two hops.

    Same-cube pairs get a single sub-hypercube hop.  Cross-cube pairs
    route the smaller-cube endpoint over its unique bridge edge into the
    larger cube (a Q_1 hop), with the in-cube hop on the other side; the
    bridge comes first when the source sits in the smaller cube, matching
    the worked two-step transfer, and last otherwise.
    """
    if not (0 <= u < network.vertex_count and 0 <= w < network.vertex_count):
        raise ValueError("endpoints out of range")
    if weight is None:
        weights = {e.weight for e in network.edges}
        if len(weights) > 1:
            raise ValueError("mixed edge weights are not supported for routing")
        weight = weights.pop() if weights else 1.0
    t0 = HOP_TIME_UNIT_WEIGHT / weight
    if u == w:
        return HopPlan((), 0.0)
    labels, edges = labeling.labels, network.edges
    bu, bw = labeling.block_of(u), labeling.block_of(w)
    if bu == bw:
        plan = _subcube_plan(labels, edges, u, w)
        return HopPlan((Hop(plan, u, w, t0),), t0)
    # smaller cube's endpoint crosses the bridge into the larger cube
    if labeling.blocks[bu][1] < labeling.blocks[bw][1]:
        small, big, big_block = u, w, bw
        source_in_small = True
    else:
        small, big, big_block = w, u, bu
        source_in_small = False
    x = _bridge_partner(labeling, small, big_block)
    bridge = _subcube_plan(labels, edges, small, x)
    if x == big:
        hop = Hop(bridge, u, w, t0)
        return HopPlan((hop,), t0)
    cube = _subcube_plan(labels, edges, x, big)
    if source_in_small:
        hops = (Hop(bridge, u, x, t0), Hop(cube, x, w, t0))
    else:
        hops = (Hop(cube, u, x, t0), Hop(bridge, x, w, t0))
    return HopPlan(hops, 2 * t0, intermediate=x)


def hop_adjacency(network: SignedWeightedGraph, plan: SwitchPlan) -> np.ndarray:
    """Adjacency of the hop's active subgraph embedded in the full space."""
    a = np.zeros((network.vertex_count, network.vertex_count))
    off = set(plan.off_edges)
    for e in network.edges:
        if (e.u, e.v) not in off:
            a[e.u, e.v] = a[e.v, e.u] = e.sign * e.weight
    return a


def execute_route(network: SignedWeightedGraph, plan: HopPlan,
                  input_state: np.ndarray, switch_lag: float = 0.0
                  ) -> tuple[np.ndarray, TransferReport]:
    """Run the step-function evolution exp(-i A_2 t0) exp(-i A_1 t0).

    Each hop's adjacency acts only on its kept sub-hypercube; switched-off
    vertices are isolated and evolve trivially, so the evolution is applied
    exactly on the kept block.  A positive switch_lag models the off-time
    between hops (all couplings open, A = 0), which parks the state and
    only adds to the reported transfer time.
    """
    state = np.asarray(input_state, dtype=complex).copy()
    if state.shape != (network.vertex_count,):
        raise ValueError("state dimension does not match the network")
    if abs(np.linalg.norm(state) - 1.0) > 1e-9:
        raise ValueError("input state must be normalized")
    if not plan.hops:
        target = int(np.argmax(np.abs(state)))
        amp = state[target]
        return state, TransferReport(abs(amp), float(np.angle(amp)), 0.0, True,
                                     (target, target))
    source = plan.hops[0].source
    if abs(abs(state[source]) - 1.0) > 1e-9:
        raise ValueError("input state must be concentrated on the hop source")
    total = 0.0
    for i, hop in enumerate(plan.hops):
        keep = list(hop.plan.keep_vertices)
        sub = hop_adjacency(network, hop.plan)[np.ix_(keep, keep)]
        w, vecs = np.linalg.eigh(sub)
        state[keep] = (vecs * np.exp(-1j * hop.duration * w)) @ (vecs.T @ state[keep])
        total += hop.duration
        if i < len(plan.hops) - 1:
            total += switch_lag
    target = plan.hops[-1].target
    amp = state[target]
    mag = float(abs(amp))
    return state, TransferReport(mag, float(np.angle(amp)), total,
                                 mag >= 1.0 - 1e-9,
                                 (plan.hops[0].source, target))


# ---------------------------------------------------------------------------
# neighborhood classification and the SWAP baseline

@dataclass(frozen=True)
class NeighborhoodReport:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]
    delta: tuple[int, ...]

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (len(self.alpha), len(self.beta), len(self.gamma), len(self.delta))


def classify_neighborhood(labeling: NetworkLabeling, u: int) -> NeighborhoodReport:
    """Existing vertices at Hamming distance 1..4 from u (reachable in at
    most two one-link/two-link jumps).  Counts are bounded by C(width, d)."""
    lu = labeling.labels[u]
    sets: dict[int, list[int]] = {1: [], 2: [], 3: [], 4: []}
    for v, lab in enumerate(labeling.labels):
        d = hamming(lu, lab)
        if 1 <= d <= 4:
            sets[d].append(v)
    return NeighborhoodReport(tuple(sets[1]), tuple(sets[2]),
                              tuple(sets[3]), tuple(sets[4]))


def swap_baseline(network: SignedWeightedGraph, u: int, w: int) -> int:
    """Minimum cascaded-SWAP count: the BFS shortest-path edge distance."""
    from .spectral import graph_distance
    return graph_distance(network, u, w)
