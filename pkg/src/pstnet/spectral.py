"""Quantum-walk evolution and perfect state transfer condition checks.

Everything runs through an eigendecomposition of the (real symmetric)
graph matrix, never a series or Pade exponential: U(t) = V e^{-i t diag(w)} V^T.
Transfer amplitudes, fidelities, spectral PST conditions, symmetry
operators, bipartite phase classes and the full-spin XY oracle live here.

Conventions: hbar = 1, edge weight = single-excitation matrix element
(so the XY exchange constant is J_ij = weight/2), fidelity of a pure pair
is the amplitude magnitude |<v|U(t)|u>|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .graphs import SignedWeightedGraph, graph_matrix, is_balanced

DEFAULT_PST_TOL = 1e-9
DEFAULT_CONDITION_TOL = 1e-8
DEFAULT_MAX_DENOMINATOR = 10 ** 6
SPIN_ORACLE_MAX_VERTICES = 12


@dataclass
class Spectrum:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source: str = "adjacency"

    @classmethod
    def from_matrix(cls, m: np.ndarray, source: str = "adjacency") -> "Spectrum":
        m = np.asarray(m, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        if not np.allclose(m, m.T, atol=1e-12):
            raise ValueError("matrix must be symmetric to 1e-12")
        w, v = np.linalg.eigh(m)
        return cls(w, v, source)

    @classmethod
    def from_graph(cls, g: SignedWeightedGraph, kind: str = "adjacency") -> "Spectrum":
        return cls.from_matrix(graph_matrix(g, kind), source=kind)

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def propagator(self, t: float) -> np.ndarray:
        v = self.eigenvectors
        return (v * np.exp(-1j * t * self.eigenvalues)) @ v.T


@dataclass
class TransferReport:
    magnitude: float
    phase: float
    time: float
    passed: bool
    pair: tuple[int, int]


@dataclass
class SymmetryReport:
    operator: np.ndarray
    commutes: bool
    maps_pair: bool


@dataclass
class PSTConditionReport:
    vector_condition: bool
    eigenvalue_condition: bool
    rationality: bool
    support_eigenvalues: np.ndarray
    best_time: Optional[float]
    best_magnitude: float
    rationality_witness: list


@dataclass
class BipartitePhaseReport:
    distance_parity: str        # 'even' or 'odd'
    phase_class: str            # '+1', '-1', '+i' or '-i'
    phase: float


def evolve(spectrum: Spectrum, t: float, state: np.ndarray) -> np.ndarray:
    """Apply U(t) = sum_j e^{-i lambda_j t} |v_j><v_j| to a normalized state."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (spectrum.dimension,):
        raise ValueError("state dimension does not match spectrum")
    if abs(np.linalg.norm(state) - 1.0) > 1e-9:
        raise ValueError("state must be normalized to 1e-9")
    v = spectrum.eigenvectors
    return (v * np.exp(-1j * t * spectrum.eigenvalues)) @ (v.T @ state)


def _amplitude(spectrum: Spectrum, u: int, v: int, t: float) -> complex:
    coeffs = spectrum.eigenvectors[v] * spectrum.eigenvectors[u]
    return complex(np.sum(coeffs * np.exp(-1j * t * spectrum.eigenvalues)))


def _amplitude_grid(spectrum: Spectrum, u: int, v: int, ts: np.ndarray) -> np.ndarray:
    coeffs = spectrum.eigenvectors[v] * spectrum.eigenvectors[u]
    return np.exp(-1j * np.outer(ts, spectrum.eigenvalues)) @ coeffs


def transfer_amplitude(g: SignedWeightedGraph, u: int, v: int, t: float,
                       matrix_kind: str = "adjacency",
                       tol: float = DEFAULT_PST_TOL) -> TransferReport:
    """Magnitude and phase of <v| exp(-i M t) |u> for the chosen graph matrix."""
    spec = Spectrum.from_graph(g, matrix_kind)
    amp = _amplitude(spec, u, v, t)
    mag = abs(amp)
    phase = math.atan2(amp.imag, amp.real) if mag > 0 else 0.0
    return TransferReport(mag, phase, t, mag >= 1.0 - tol, (u, v))


def transfer_series(g: SignedWeightedGraph, u: int, v: int, ts: Sequence[float],
                    matrix_kind: str = "adjacency") -> list[tuple[float, float, float]]:
    """Rows (t, magnitude, phase) for CSV emission."""
    spec = Spectrum.from_graph(g, matrix_kind)
    amps = _amplitude_grid(spec, u, v, np.asarray(ts, dtype=float))
    return [(float(t), float(abs(a)), float(np.angle(a))) for t, a in zip(ts, amps)]


# ---------------------------------------------------------------------------
# eigenvalue rationality

def _recognize_rational(x: float, tol: float, max_denominator: int) -> Optional[Fraction]:
    """Rational recognition via continued-fraction termination.

    A value is accepted as p/q only when its continued fraction terminates
    (fractional part below tol) before the convergent denominator exceeds
    max_denominator.  Quadratic surds keep producing bounded partial
    quotients, so their denominators blow past the bound and they are
    rejected even though some convergent approximates them closely.
    """
    a = math.floor(x)
    p0, q0 = 1, 0
    p1, q1 = a, 1
    frac = x - a
    for _ in range(128):
        if q1 > max_denominator:
            return None
        if abs(frac) < tol:
            return Fraction(p1, q1)
        x = 1.0 / frac
        a = math.floor(x)
        frac = x - a
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
    return None


def rationality_check(eigs: Sequence[float], tol: float = DEFAULT_PST_TOL,
                      max_denominator: int = DEFAULT_MAX_DENOMINATOR
                      ) -> tuple[bool, list]:
    """Check that all ratios of eigenvalue differences are rational.

    Ratios are taken against the largest gap; if each (e_j - e_l)/ref is
    rational then so is any ratio of differences.  Returns (flag, witness)
    where the witness lists (ratio, Fraction-or-None) per pair.
    """
    vals = np.unique(np.asarray(eigs, dtype=float))
    if len(vals) < 3:
        return True, []
    ref = vals[-1] - vals[0]
    witness = []
    ok = True
    for j in range(len(vals)):
        for l in range(j):
            ratio = (vals[j] - vals[l]) / ref
            frac = _recognize_rational(ratio, tol, max_denominator)
            witness.append((float(ratio), frac))
            if frac is None:
                ok = False
    return ok, witness


def _eigen_groups(eigenvalues: np.ndarray, rel_tol: float = 1e-8) -> list[np.ndarray]:
    """Indices of near-degenerate eigenvalue clusters."""
    scale = max(1.0, float(np.max(np.abs(eigenvalues)))) if len(eigenvalues) else 1.0
    atol = rel_tol * scale
    groups = []
    start = 0
    for i in range(1, len(eigenvalues) + 1):
        if i == len(eigenvalues) or eigenvalues[i] - eigenvalues[i - 1] > atol:
            groups.append(np.arange(start, i))
            start = i
    return groups


def _candidate_period(support: np.ndarray, tol: float,
                      max_denominator: int) -> Optional[float]:
    """Recurrence period of the support phases from the rational gap lattice."""
    diffs = support - support[0]
    ref = diffs[-1]
    if ref <= 0:
        return None
    lcm = 1
    fracs = []
    for d in diffs[1:]:
        f = _recognize_rational(d / ref, tol, max_denominator)
        if f is None:
            return None
        fracs.append(f)
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    delta = ref / lcm
    ints = [round(d / delta) for d in diffs[1:]]
    g = 0
    for m in ints:
        g = math.gcd(g, m)
    if g == 0:
        return None
    return 2.0 * math.pi / (delta * g)


def check_pst_conditions(g: SignedWeightedGraph, u: int, v: int,
                         matrix_kind: str = "adjacency",
                         tol: float = DEFAULT_CONDITION_TOL,
                         max_denominator: int = DEFAULT_MAX_DENOMINATOR
                         ) -> PSTConditionReport:
    """Spectral PST conditions for the pair (u, v).

    vector_condition: per eigenspace the projections of |u> and |v> have
    equal norm and are parallel (degeneracy-safe via eigenprojectors).
    rationality: ratios of eigenvalue differences over the support of u.
    eigenvalue_condition: |sum_j e^{-i l_j t} <v|P_j|u>| reaches 1 at some
    t inside one recurrence period of the rational eigenvalue lattice.
    """
    spec = Spectrum.from_graph(g, matrix_kind)
    groups = _eigen_groups(spec.eigenvalues)
    vecs = spec.eigenvectors
    vec_ok = True
    support_vals = []
    for idx in groups:
        pu = vecs[:, idx].T @ np.eye(spec.dimension)[u]
        pv = vecs[:, idx].T @ np.eye(spec.dimension)[v]
        nu, nv = np.linalg.norm(pu), np.linalg.norm(pv)
        if abs(nu - nv) > tol:
            vec_ok = False
        if nu > tol and nv > tol:
            # projections must be parallel within the eigenspace
            if abs(abs(pu @ pv) - nu * nv) > tol * max(1.0, nu * nv):
                vec_ok = False
        if nu > tol:
            support_vals.append(float(np.mean(spec.eigenvalues[idx])))
    support = np.array(support_vals)
    if len(support) < 2:
        # state is (nearly) stationary; trivially periodic
        return PSTConditionReport(vec_ok, u == v, True, support, 0.0,
                                  1.0 if u == v else 0.0, [])

    rational, witness = rationality_check(support, tol=DEFAULT_PST_TOL,
                                          max_denominator=max_denominator)
    best_t: Optional[float] = None
    best_mag = 0.0
    if rational:
        period = _candidate_period(support, DEFAULT_PST_TOL, max_denominator)
        if period is not None and np.isfinite(period):
            ts = np.linspace(0.0, period, max(4096, 64 * len(support)))
            mags = np.abs(_amplitude_grid(spec, u, v, ts))
            k = int(np.argmax(mags))
            dt = ts[1] - ts[0]
            t_best, m_best = _refine_peak(spec, u, v, ts[k], dt)
            best_t, best_mag = t_best, m_best
    eig_ok = rational and best_mag >= 1.0 - tol
    return PSTConditionReport(vec_ok, eig_ok, rational, support,
                              best_t, best_mag, witness)


def _refine_peak(spec: Spectrum, u: int, v: int, t0: float, dt: float
                 ) -> tuple[float, float]:
    lo, hi = max(0.0, t0 - dt), t0 + dt
    res = minimize_scalar(lambda t: -abs(_amplitude(spec, u, v, t)),
                          bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13})
    return float(res.x), float(-res.fun)


def max_fidelity_scan(g: SignedWeightedGraph, u: int, v: int, t_max: float,
                      dt: float, matrix_kind: str = "adjacency"
                      ) -> tuple[float, float]:
    """Grid scan of |<v|U(t)|u>| on [0, t_max] with golden refinement.

    Returns (t*, F*) where F is the pure-state fidelity, i.e. the amplitude
    magnitude at the best time found.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    spec = Spectrum.from_graph(g, matrix_kind)
    return max_fidelity_scan_spectrum(spec, u, v, t_max, dt)


def max_fidelity_scan_spectrum(spec: Spectrum, u: int, v: int, t_max: float,
                               dt: float) -> tuple[float, float]:
    ts = np.arange(0.0, t_max + dt, dt)
    mags = np.abs(_amplitude_grid(spec, u, v, ts))
    top = float(np.max(mags))
    # refine every peak the grid cannot distinguish from the best one, then
    # report the earliest among refined ties so periodic transfers give
    # their minimal time
    spread = float(spec.eigenvalues[-1] - spec.eigenvalues[0]) if spec.dimension > 1 else 0.0
    grid_err = 0.5 * (0.5 * spread * dt) ** 2 + 1e-12
    candidates = np.flatnonzero(mags >= top - grid_err)
    seeds = []
    run_start = 0
    for i in range(1, len(candidates) + 1):
        if i == len(candidates) or candidates[i] != candidates[i - 1] + 1:
            run = candidates[run_start:i]
            seeds.append(int(run[np.argmax(mags[run])]))
            run_start = i
    best_t, best_f = 0.0, -1.0
    for k in seeds:
        t_ref, f_ref = _refine_peak(spec, u, v, float(ts[k]), dt)
        if f_ref > best_f + 1e-12:
            best_t, best_f = t_ref, f_ref
    return best_t, best_f


# ---------------------------------------------------------------------------
# symmetry and phase structure

def symmetry_operator(g: SignedWeightedGraph, u: int, v: int,
                      matrix_kind: str = "adjacency",
                      tol: float = DEFAULT_CONDITION_TOL) -> SymmetryReport:
    """Construct S = sum e^{i phi_j} |l_j><l_j| mapping |u> to |v>.

    Phases are fixed per eigenspace by phi = arg<u|P|v>; eigenspaces with
    no overlap on |u> enter with phase 0.  Raises when the eigenvector
    magnitude condition fails, since then no such diagonal symmetry exists
    and PST between u and v is impossible by this route.
    """
    report = check_pst_conditions(g, u, v, matrix_kind=matrix_kind, tol=tol)
    if not report.vector_condition:
        raise ValueError(
            "eigenvector magnitude condition fails for this pair; "
            "no diagonal symmetry maps u to v and PST is impossible by this route")
    m = graph_matrix(g, matrix_kind)
    spec = Spectrum.from_matrix(m, matrix_kind)
    n = spec.dimension
    s = np.zeros((n, n), dtype=complex)
    eu, ev = np.eye(n)[u], np.eye(n)[v]
    for idx in _eigen_groups(spec.eigenvalues):
        block = spec.eigenvectors[:, idx]
        proj = block @ block.T
        overlap = eu @ proj @ ev
        if np.linalg.norm(proj @ eu) > tol:
            phase = 0.0 if overlap >= 0 else math.pi
            s += np.exp(1j * phase) * proj
        else:
            s += proj
    commutes = np.max(np.abs(s @ m - m @ s)) <= 1e-8
    maps_pair = np.linalg.norm(s @ eu - ev) <= 1e-8
    return SymmetryReport(s, commutes, maps_pair)


def _two_coloring(g: SignedWeightedGraph) -> Optional[list[int]]:
    color = [0] * g.vertex_count
    adj = [[] for _ in range(g.vertex_count)]
    for u, v, _, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    for root in range(g.vertex_count):
        if color[root]:
            continue
        color[root] = 1
        stack = [root]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if color[b] == 0:
                    color[b] = -color[a]
                    stack.append(b)
                elif color[b] == color[a]:
                    return None
    return color


def graph_distance(g: SignedWeightedGraph, u: int, v: int) -> int:
    """BFS edge distance, ignoring weights and signs."""
    if u == v:
        return 0
    adj = [[] for _ in range(g.vertex_count)]
    for a, b, _, _ in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    dist = {u: 0}
    frontier = [u]
    while frontier:
        nxt = []
        for a in frontier:
            for b in adj[a]:
                if b not in dist:
                    dist[b] = dist[a] + 1
                    if b == v:
                        return dist[b]
                    nxt.append(b)
        frontier = nxt
    raise ValueError(f"vertices {u} and {v} are disconnected")


def bipartite_phase_audit(g: SignedWeightedGraph, u: int, v: int, t0: float,
                          matrix_kind: str = "adjacency",
                          angle_tol: float = 1e-6) -> BipartitePhaseReport:
    """Classify the transfer phase of a bipartite PST pair.

    Real Hamiltonians on bipartite graphs transfer with phase +/-1 at even
    distance and +/-i at odd distance; the measured phase must land in the
    parity-allowed set within angle_tol radians.
    """
    if _two_coloring(g) is None:
        raise ValueError("graph is not bipartite")
    rep = transfer_amplitude(g, u, v, t0, matrix_kind)
    if rep.magnitude < 1.0 - 1e-6:
        raise ValueError(f"no PST at t0={t0}: magnitude {rep.magnitude}")
    d = graph_distance(g, u, v)
    parity = "even" if d % 2 == 0 else "odd"
    phase = rep.phase
    classes = {"+1": 0.0, "-1": math.pi, "+i": math.pi / 2, "-i": -math.pi / 2}
    allowed = ("+1", "-1") if parity == "even" else ("+i", "-i")
    best = min(allowed, key=lambda c: abs(_angle_diff(phase, classes[c])))
    if abs(_angle_diff(phase, classes[best])) > angle_tol:
        raise ValueError(
            f"transfer phase {phase} not within {angle_tol} of the "
            f"{parity}-distance classes {allowed}")
    return BipartitePhaseReport(parity, best, phase)


def _angle_diff(a: float, b: float) -> float:
    d = (a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def periodicity_check(g: SignedWeightedGraph, u: int, t0: float,
                      matrix_kind: str = "adjacency") -> bool:
    """True iff the walk revives at u after 2*t0 (mirror-symmetry periodicity)."""
    rep = transfer_amplitude(g, u, u, 2.0 * t0, matrix_kind)
    return rep.magnitude >= 1.0 - 1e-8


# ---------------------------------------------------------------------------
# full-spin oracle

def xy_spin_hamiltonian(g: SignedWeightedGraph) -> np.ndarray:
    """Full 2^n XY Hamiltonian sum_E w_ij (s+_i s-_j + s-_i s+_j).

    Qubit i maps to bit i of the basis index (LSB first).  The exchange
    constants are J_ij = w_ij/2 so that 2 J_ij equals the edge weight.
    """
    n = g.vertex_count
    if n > SPIN_ORACLE_MAX_VERTICES:
        raise ValueError(f"{n} vertices exceeds spin-oracle guard "
                         f"{SPIN_ORACLE_MAX_VERTICES}")
    dim = 1 << n
    h = np.zeros((dim, dim))
    for u, v, w, s in g.edges:
        bu, bv = 1 << u, 1 << v
        for b in range(dim):
            if bool(b & bu) != bool(b & bv):
                h[b ^ bu ^ bv, b] += s * w
    return h


def spin_oracle_check(g: SignedWeightedGraph, t: float, excitation_vertex: int
                      ) -> float:
    """Max deviation between full-spin and adjacency dynamics.

    Evolves the one-excitation basis state of the given vertex under the
    full 2^n XY Hamiltonian and compares the whole 2^n column against the
    single-excitation embedding of exp(-i A t)|u>; leakage out of the
    sector therefore counts as deviation.
    """
    n = g.vertex_count
    if not 0 <= excitation_vertex < n:
        raise ValueError("excitation vertex out of range")
    h = xy_spin_hamiltonian(g)
    w, vecs = np.linalg.eigh(h)
    start = np.zeros(1 << n)
    start[1 << excitation_vertex] = 1.0
    full = (vecs * np.exp(-1j * t * w)) @ (vecs.T @ start)
    spec = Spectrum.from_graph(g, "adjacency")
    small = evolve(spec, t, np.eye(n)[excitation_vertex].astype(complex))
    embedded = np.zeros(1 << n, dtype=complex)
    for j in range(n):
        embedded[1 << j] = small[j]
    return float(np.max(np.abs(full - embedded)))


# ---------------------------------------------------------------------------
# signed-equivalence helper used by tests and the corona lab

def balanced_equivalent_amplitude(g: SignedWeightedGraph, u: int, v: int,
                                  t: float) -> tuple[float, float]:
    """Amplitude magnitudes on (g, unsigned version of g) for balanced g."""
    flag, _ = is_balanced(g)
    if not flag:
        raise ValueError("graph is not balanced")
    unsigned = SignedWeightedGraph(
        g.vertex_count,
        tuple(type(e)(e.u, e.v, e.weight, 1) for e in g.edges))
    return (transfer_amplitude(g, u, v, t).magnitude,
            transfer_amplitude(unsigned, u, v, t).magnitude)
