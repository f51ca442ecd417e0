# src/tests/test_graphs.py
"""Geometry builders, geodesics, min-cuts, the layer-sum predictor and text export."""
import networkx as nx
import numpy as np
import pytest

from tngeo.graphs import (
    BranchingTree,
    NodeRole,
    Region,
    ScalingClass,
    block_min_cuts,
    build_branching_mera_graph_1d,
    build_finite_range_mera_graph,
    build_mera_graph,
    build_mps_graph,
    build_peps_graph,
    cut_size,
    from_text,
    geodesic,
    geodesic_profile,
    layer_sum_predictor,
    mera_widths,
    min_cut,
    to_text,
    upward_closure,
)


def _r_squared(x, y):
    x, y = np.asarray(x, float), np.asarray(y, float)
    b, a = np.polyfit(x, y, 1)
    res = y - (a + b * x)
    return 1.0 - float(res @ res) / float(np.sum((y - y.mean()) ** 2))


# =============================================================================
# Builders
# =============================================================================

def test_two_site_mps():
    g = build_mps_graph(2)
    assert (g.num_nodes, g.num_bonds) == (2, 1)


def test_long_mps_chain():
    g = build_mps_graph(64)
    assert (g.num_nodes, g.num_bonds) == (64, 63)
    assert g.kind == "mps"


def test_mps_bond_dimension():
    g = build_mps_graph(16, chi=3)
    assert set(g.bond_dims()) == {3}


def test_mps_needs_two_sites():
    with pytest.raises(ValueError):
        build_mps_graph(1)


@pytest.mark.parametrize("L, bonds", [(2, 4), (8, 112)])
def test_peps_counts(L, bonds):
    g = build_peps_graph(L, L)
    assert (g.num_nodes, g.num_bonds) == (L * L, bonds)


def test_small_mera_layers():
    g = build_mera_graph(4, 2)
    assert mera_widths(4, 2) == (4, 2, 1)
    assert g.num_nodes == 7
    assert len(g.nodes_with_role(NodeRole.DISENTANGLER)) == 3
    assert len(g.nodes_with_role(NodeRole.ISOMETRY)) == 3
    assert len(g.nodes_with_role(NodeRole.TOP)) == 1


def test_mera_node_count_matches_hand_count():
    # 8 + 4 + 2 + 1 disentanglers, as many isometries, one top
    g = build_mera_graph(16, 4)
    assert len(g.nodes_with_role(NodeRole.DISENTANGLER)) == 15
    assert len(g.nodes_with_role(NodeRole.ISOMETRY)) == 15
    assert g.num_nodes == 31


def test_mera_rejects_incompatible_depth():
    with pytest.raises(ValueError, match="not a multiple"):
        build_mera_graph(12, 3)


def test_finite_range_top_row_is_unbonded():
    g = build_finite_range_mera_graph(16, 2)
    tops = {n.id for n in g.nodes_with_role(NodeRole.TOP)}
    assert len(tops) == 4
    assert not any(b.u in tops and b.v in tops for b in g.bonds)
    assert g.num_nodes == 16 + 8 + 4


def test_finite_range_single_layer():
    g = build_finite_range_mera_graph(8, 1)
    assert len(g.nodes_with_role(NodeRole.TOP)) == 4


def test_finite_range_depth_zero_is_disconnected_product():
    g = build_finite_range_mera_graph(8, 0)
    assert g.num_bonds == 0
    with pytest.raises(ValueError, match="no path"):
        geodesic(g, 0, 1)


def test_branching_without_schedule_is_plain_mera():
    a = build_branching_mera_graph_1d(16)
    b = build_mera_graph(16, 4)
    assert (a.num_nodes, a.num_bonds) == (b.num_nodes, b.num_bonds)
    assert nx.is_isomorphic(a.nx_graph, b.nx_graph)


def test_branching_once_enlarges_graph():
    g = build_branching_mera_graph_1d(16, [1])
    # layer 0 (16) + two copies of layers 1..3 (2 * 14) + two tops
    assert g.num_nodes == 46
    assert g.num_nodes > build_mera_graph(16, 4).num_nodes


def test_branching_at_every_scale():
    g = build_branching_mera_graph_1d(8, [1, 2])
    assert len(g.nodes_with_role(NodeRole.TOP)) == 4
    assert g.num_nodes == 8 + 8 + 8 + 4


def test_branching_rejects_scale_beyond_depth():
    with pytest.raises(ValueError, match="exceed"):
        build_branching_mera_graph_1d(8, [3])


# =============================================================================
# Geodesics
# =============================================================================

def test_mps_geodesic_example():
    assert geodesic(build_mps_graph(16), 3, 10) == 8


def test_mps_geodesic_is_distance_plus_one():
    g = build_mps_graph(64)
    for x1 in range(0, 64, 3):
        for x2 in range(64):
            assert geodesic(g, x1, x2) == abs(x1 - x2) + 1


def test_geodesic_to_self_is_one_tensor():
    assert geodesic(build_mera_graph(16, 4), 5, 5) == 1


def test_geodesic_link_count():
    assert geodesic(build_mps_graph(8), 0, 4, count="links") == 4


def test_mera_geodesic_grows_logarithmically():
    g = build_mera_graph(256, 8)
    rs = [2 ** k for k in range(1, 8)]
    prof = geodesic_profile(g, rs)
    assert _r_squared(np.log2(rs), [prof[r] for r in rs]) >= 0.99
    assert prof[128] < 40


# =============================================================================
# Min-cuts
# =============================================================================

SMALL_GEOMETRIES = {
    "mps": lambda: build_mps_graph(20),
    "mera": lambda: build_mera_graph(32, 5),
    "finite_range": lambda: build_finite_range_mera_graph(32, 2),
    "branching": lambda: build_branching_mera_graph_1d(32, [2]),
}


@pytest.mark.parametrize("kind", sorted(SMALL_GEOMETRIES))
def test_geodesic_is_a_metric(kind):
    g = SMALL_GEOMETRIES[kind]()
    sites = range(0, len(g.sites), 3)
    dist = {(a, b): geodesic(g, a, b) for a in sites for b in sites}
    for a in sites:
        for b in sites:
            assert dist[a, b] == dist[b, a]
            for c in sites:
                assert dist[a, c] <= dist[a, b] + dist[b, c]


def test_mps_interior_block_cuts_two_bonds():
    res = min_cut(build_mps_graph(16), Region.block(4, 5))
    assert res.n_bonds == 2
    assert res.weight == pytest.approx(2.0)


def test_mps_edge_block_cuts_one_bond():
    assert min_cut(build_mps_graph(16), Region.block(0, 5)).n_bonds == 1


def test_whole_lattice_region():
    res = min_cut(build_mps_graph(6), Region.block(0, 6))
    assert res.whole_lattice and res.n_bonds == 0


def test_region_outside_lattice_is_rejected():
    with pytest.raises(ValueError):
        min_cut(build_mps_graph(6), Region.block(4, 4))


def test_peps_interior_block_cuts_its_perimeter():
    g = build_peps_graph(16, 16)
    assert min_cut(g, Region.rectangle(6, 6, 4, 4)).n_bonds == 16


def test_mera_min_cut_grows_logarithmically():
    g = build_mera_graph(256, 8)
    Ls = [4, 8, 16, 32, 64]
    cuts = block_min_cuts(g, Ls, starts=range(16))
    assert _r_squared(np.log2(Ls), [cuts[L] for L in Ls]) >= 0.95
    assert cuts[64] > cuts[4]


@pytest.mark.parametrize("kind", sorted(SMALL_GEOMETRIES))
def test_min_cut_of_complement_is_the_same(kind):
    g = SMALL_GEOMETRIES[kind]()
    sites = set(g.site_legs)
    regions = [Region.block(3, 5), Region.block(0, 11), Region(frozenset({1, 2, 7, 8, 9, 15}))]
    for region in regions:
        rest = Region(frozenset(sites - region.sites))
        a, b = min_cut(g, region), min_cut(g, rest)
        assert a.n_bonds == b.n_bonds
        assert a.weight == pytest.approx(b.weight)


def test_peps_min_cut_of_complement_is_the_same():
    g = build_peps_graph(6, 6)
    region = Region.rectangle(1, 2, 3, 2)
    rest = Region(frozenset(g.site_legs) - region.sites)
    assert min_cut(g, region).n_bonds == min_cut(g, rest).n_bonds


def test_min_cut_weight_counts_physical_legs():
    # with chi = 1 cutting internal bonds costs nothing
    g = build_mps_graph(8, chi=1)
    assert min_cut(g, Region.block(2, 3)).weight == pytest.approx(0.0)


def test_upward_closure_gives_an_upper_bound():
    g = build_mera_graph(32, 5)
    region = Region.block(8, 8)
    n, w = cut_size(g, region, upward_closure(g, region))
    res = min_cut(g, region)
    assert res.n_bonds <= n
    assert res.weight <= w + 1e-12


def test_finite_range_min_cut_saturates():
    g = build_finite_range_mera_graph(256, 2)
    assert min_cut(g, Region.block(1, 32)).n_bonds == min_cut(g, Region.block(1, 64)).n_bonds


# =============================================================================
# Layer-sum predictor
# =============================================================================

def test_one_dimensional_mera_is_logarithmic():
    pred = layer_sum_predictor(1, 64)
    assert pred.scaling_class == ScalingClass.LOG
    assert pred.label == "log L"
    assert pred.n == pytest.approx(7.0)


def test_predictor_tracks_measured_mera_min_cuts():
    # one additive and one multiplicative constant, fitted once
    g = build_mera_graph(256, 8)
    Ls = [4, 8, 16, 32, 64]
    cuts = block_min_cuts(g, Ls, starts=range(16))
    predicted = [layer_sum_predictor(1, L).n for L in Ls]
    b, _ = np.polyfit(predicted, [cuts[L] for L in Ls], 1)
    assert b > 0
    assert _r_squared(predicted, [cuts[L] for L in Ls]) >= 0.95


def test_two_dimensional_mera_is_boundary_law():
    assert layer_sum_predictor(2, 64).label == "L"


def test_two_dimensional_full_branching_adds_log():
    tree = BranchingTree.every_scale(2, 1)
    pred = layer_sum_predictor(2, 64, branch=tree)
    assert pred.label == "L·log L"
    assert pred.n == pytest.approx(64 * 7)


def test_predictor_validates_arguments():
    with pytest.raises(ValueError):
        layer_sum_predictor(4, 16)
    with pytest.raises(ValueError):
        layer_sum_predictor(2, 16, branch=BranchingTree.single(1))


def test_schedule_multiplicities():
    tree = BranchingTree.from_schedule(1, [2, 4])
    assert [tree.multiplicity(z) for z in range(6)] == [1, 1, 2, 2, 4, 4]
    assert not tree.is_gapped
    assert BranchingTree.single(1, z_end=3).is_gapped


# =============================================================================
# Text export
# =============================================================================

def test_text_export_round_trip():
    g = build_peps_graph(3, 2, chi=3, d=4)
    back = from_text(to_text(g))
    assert back.kind == "peps"
    assert back.phys_dim == 4
    assert sorted((b.u, b.v, b.chi) for b in back.bonds) == sorted((b.u, b.v, b.chi) for b in g.bonds)
    assert back.site_legs == g.site_legs


def test_text_import_reports_bad_line():
    with pytest.raises(ValueError, match="line 2"):
        from_text("node 0 site-tensor\nbond 0\n")
