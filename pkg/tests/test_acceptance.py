"""Acceptance suite: one check per shipped guarantee, each at its stated
tolerance, printing one pass line per criterion (run with -v -s to see them).
"""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from pstnet.chains import column_project, pst_chain, chain_pst_verify, \
    unmodulated_no_pst_scan
from pstnet.corona_lab import (all_pairs_max_fidelity,
                               corona_adjacency_eigenpairs,
                               corona_laplacian_eigenpairs, fidelity_vs_m)
from pstnet.graphs import (SignedWeightedGraph, adjacency, complete_graph,
                           corona, cycle_graph, hypercube, laplacian,
                           make_graph, path_graph)
from pstnet.qudit import (cycle_family, hopping_hamiltonian,
                          transfer_amplitude_qudit, unitarity_audit)
from pstnet.routing import (Hop, HopPlan, build_network, execute_route,
                            find_subhypercube, plan_route, swap_baseline)
from pstnet.spectral import spin_oracle_check, transfer_amplitude
from pstnet.transmon import (coupling_report, find_cutoff, pst_time,
                             reference_parameters, three_body_oracle)

RNG = np.random.default_rng(0xC0FFEE)


def _report(criterion: int, text: str) -> None:
    print(f"criterion {criterion:2d} PASS: {text}")


def test_criterion_1_small_chain_pst():
    k2 = transfer_amplitude(complete_graph(2), 0, 1, math.pi / 2)
    p3 = transfer_amplitude(path_graph(3), 0, 2, math.pi / math.sqrt(2))
    assert abs(k2.magnitude - 1.0) <= 1e-9
    assert abs(p3.magnitude - 1.0) <= 1e-9
    _report(1, f"K2 |f|={k2.magnitude:.12f} at pi/2, "
               f"P3 |f|={p3.magnitude:.12f} at pi/sqrt2")


def test_criterion_2_hypercube_antipodal_pst():
    worst = 1.0
    for k in range(1, 11):
        rep = transfer_amplitude(hypercube(k), 0, (1 << k) - 1, math.pi / 2)
        worst = min(worst, rep.magnitude)
        assert abs(rep.magnitude - 1.0) <= 1e-8, f"Q_{k}"
    _report(2, f"Q_1..Q_10 antipodal magnitude at pi/2, worst {worst:.12f}")


def test_criterion_3_algorithm_one_routing():
    plan = find_subhypercube(8, "00101101", "10011000")
    assert plan.fixed_indices == (1, 4, 6)
    assert plan.fixed_bits == (0, 1, 0)
    assert plan.sub_dimension == 5

    host = hypercube(8)
    n = host.vertex_count
    worst = 1.0
    for _ in range(100):
        u, v = map(int, RNG.choice(n, size=2, replace=False))
        sub = find_subhypercube(8, host.labels[u], host.labels[v])
        hop = Hop(sub, u, v, math.pi / 2)
        state = np.zeros(n, dtype=complex)
        state[u] = 1.0
        _, rep = execute_route(host, HopPlan((hop,), math.pi / 2), state)
        worst = min(worst, rep.magnitude)
        assert rep.magnitude >= 1 - 1e-8
    _report(3, f"worked Q8 plan exact; 100 random single hops, "
               f"worst magnitude {worst:.12f}")


def test_criterion_4_two_hop_universality():
    g31, lab31 = build_network(31)
    u, w = lab31.index_of("10100"), lab31.index_of("01011")
    plan = plan_route(g31, lab31, u, w)
    assert [lab31.labels[h.source] for h in plan.hops] == ["10100", "00100"]
    assert [lab31.labels[h.target] for h in plan.hops] == ["00100", "01011"]
    assert swap_baseline(g31, u, w) == 5

    worst = 1.0
    pairs = 0
    for n in range(2, 65):
        network, labeling = build_network(n)
        for a in range(n):
            state = np.zeros(n, dtype=complex)
            state[a] = 1.0
            for b in range(a + 1, n):
                route = plan_route(network, labeling, a, b)
                assert len(route.hops) <= 2
                _, rep = execute_route(network, route, state)
                worst = min(worst, rep.magnitude)
                assert rep.magnitude >= 1 - 1e-8
                pairs += 1
    _report(4, f"{pairs} pairs over n in [2,64], <=2 hops, "
               f"worst magnitude {worst:.12f}; 31-vertex example reproduced")


@pytest.mark.parametrize("n", [4, 5, 6])
def test_criterion_5_unmodulated_impossibility(n):
    # uniform chains with n+1 prime or twice a prime admit pretty good
    # transfer; the 4- and 5-site maxima cross 0.999 near t = 53 and t = 47,
    # so the 0.999 bound at this horizon holds only for n = 6
    _, f_star = unmodulated_no_pst_scan(n, 200.0)
    assert f_star < 0.999
    _report(5, f"uniform {n}-site chain max fidelity {f_star:.6f} < 0.999")


def test_criterion_6_weighted_chains():
    worst = 1.0
    for n in range(2, 51):
        rep = chain_pst_verify(pst_chain(n), math.pi / 2)
        worst = min(worst, rep.magnitude)
        assert abs(rep.magnitude - 1.0) <= 1e-8, f"n={n}"
    # coupling comparison runs over the column projector's admissible range
    for n in range(2, 18):
        np.testing.assert_allclose(pst_chain(n).couplings,
                                   column_project(n - 1).couplings, atol=1e-9)
    _report(6, f"engineered chains n<=50 transfer at pi/2 "
               f"(worst {worst:.12f}); couplings match column projection")


def _random_connected_unsigned(rng) -> SignedWeightedGraph:
    n = int(rng.integers(2, 6))
    edges = set()
    perm = rng.permutation(n)
    for i in range(1, n):
        a, b = int(perm[i]), int(perm[int(rng.integers(0, i))])
        edges.add((min(a, b), max(a, b)))
    for _ in range(int(rng.integers(0, n))):
        a, b = (int(x) for x in rng.integers(0, n, 2))
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return make_graph(n, sorted(edges))


def test_criterion_7_corona(signed_square):
    # F(t) = sin^2 t on a 5-point grid
    for t in (0.3, 0.8, 1.3, 1.9, 2.6):
        rep = transfer_amplitude(signed_square, 0, 2, t)
        assert abs(rep.magnitude - math.sin(t) ** 2) <= 1e-9
    # strict decrease from m=0 to m=1 for the (1,3) pair (0-indexed (0,2))
    table = fidelity_vs_m(signed_square, (0, 2), 1)
    assert table.rows[0].f_star > table.rows[1].f_star
    assert abs(table.rows[0].f_star - 1.0) <= 1e-9

    rng = np.random.default_rng(20260809)
    worst = 0.0
    for _ in range(20):
        seed = _random_connected_unsigned(rng)
        product = corona(seed, seed)
        best = all_pairs_max_fidelity(laplacian(product), 50.0, 0.005)
        np.fill_diagonal(best, 0.0)
        worst = max(worst, float(best.max()))
        assert best.max() < 1 - 1e-6

    instances = [
        (complete_graph(2), SignedWeightedGraph(1, ())),
        (complete_graph(2), complete_graph(2)),
        (path_graph(3), complete_graph(3)),
        (complete_graph(3), cycle_graph(4)),
        (signed_square, signed_square),
        (cycle_graph(5), complete_graph(2)),
        (signed_square, complete_graph(3)),
        (complete_graph(2), cycle_graph(5)),
        (path_graph(4), cycle_graph(6)),
        (complete_graph(4), complete_graph(4)),
    ]
    for g1, g2 in instances:
        for pairs, matrix in ((corona_adjacency_eigenpairs(g1, g2),
                               adjacency(corona(g1, g2))),
                              (corona_laplacian_eigenpairs(g1, g2),
                               laplacian(corona(g1, g2)))):
            for p in pairs:
                residual = np.max(np.abs(matrix @ p.vector - p.value * p.vector))
                assert residual <= 1e-8
    _report(7, f"seed F(t)=sin^2 t; max fidelity decreases with corona order; "
               f"Laplacian corona worst {worst:.6f} < 1-1e-6; "
               f"eigenpairs validated on {len(instances)} instances")


def test_criterion_8_qudit():
    families = {
        "K2": cycle_family(2, [0.1, 1.0]),
        "C4": cycle_family(4, [0.3, 1.0, 0.7]),
        "C6": cycle_family(6, [0.2, 1.0, 0.6, 0.4]),
    }
    ts = np.linspace(0.0, 12.0, 50)
    for name, fam in families.items():
        h = hopping_hamiltonian(fam)
        for t in (0.37, 1.9, 5.2):
            u = expm(-1j * h * t)
            for j in range(fam.site_count):
                amp = transfer_amplitude_qudit(fam, j, t)
                assert abs(amp - u[j, 0]) <= 1e-10, name
        audit = unitarity_audit(fam, ts)
        assert audit.corrected <= 1e-9, name
    broken = unitarity_audit(families["K2"], [math.pi / 2]).uncorrected
    assert broken > 0.1
    _report(8, f"amplitudes match expm on K2/C4/C6; probability conserved at "
               f"50 times; all-ones variant breaks unitarity by {broken:.3f}")


def test_criterion_9_transmon():
    import warnings
    cfg = reference_parameters(5.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = coupling_report(cfg)
        lo = coupling_report(cfg.with_coupler_frequency(4.5)).g_brwa
        hi = coupling_report(cfg.with_coupler_frequency(9.0)).g_brwa
    assert rep.eta_ij == pytest.approx(0.84, abs=1e-15)
    assert lo * hi < 0
    cut = find_cutoff(cfg, (4.5, 9.0))
    assert abs(cut.delta_i - (-1.426)) <= 0.05
    oracle = three_body_oracle(reference_parameters(8.0))
    assert oracle.dispersive
    assert oracle.relative_error <= 0.15
    g = 2.0944
    assert abs(pst_time(2 * g, 1) - pst_time(g, 1) / 2) <= 1e-12
    _report(9, f"eta=0.84; cutoff Delta_i={cut.delta_i:.4f} GHz; three-body "
               f"relative error {oracle.relative_error:.4f}; t(2g)=t(g)/2")


def test_criterion_10_spin_oracle():
    worst = 0.0
    for _ in range(8):
        n = int(RNG.integers(2, 9))
        edges = []
        for a in range(n):
            for b in range(a + 1, n):
                if RNG.random() < 0.5 or b == a + 1:
                    w = float(RNG.uniform(0.5, 1.5))
                    s = int(RNG.choice([-1, 1]))
                    edges.append((a, b, w, s))
        g = make_graph(n, edges)
        for t in RNG.uniform(0.0, 6.0, size=5):
            u = int(RNG.integers(0, n))
            dev = spin_oracle_check(g, float(t), u)
            worst = max(worst, dev)
            assert dev <= 1e-9
    _report(10, f"full-spin XY evolution matches exp(-iAt) on the "
                f"single-excitation sector, worst deviation {worst:.2e}")
