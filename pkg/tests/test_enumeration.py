import networkx as nx
import pytest

from extremal_regular.canon import canonical_form, canonical_graph, is_isomorphic
from extremal_regular.enumeration import FamilySpec, all_graphs, family_graphs, has_c4, regular_graphs
from extremal_regular.formats import read_graph6
from extremal_regular.graphcore import GraphError, analyze, cycle, heawood, petersen

from oracles import atlas_graphs, iso_classes, labelled_regular


def cubic(n_min, n_max, **flags):
    return regular_graphs(FamilySpec(n_min=n_min, n_max=n_max, d=3, **flags))


def test_cycles_only_connected_two_regular():
    for n in range(3, 10):
        graphs = regular_graphs(FamilySpec(n_min=n, n_max=n, d=2, connected=True))
        assert len(graphs) == 1 and is_isomorphic(graphs[0], cycle(n))


def test_connected_cubic_counts():
    assert [len(cubic(n, n, connected=True)) for n in (4, 6, 8, 10, 12)] == [1, 2, 5, 19, 85]


def test_connected_quartic_counts():
    counts = [len(regular_graphs(FamilySpec(n_min=n, n_max=n, d=4, connected=True))) for n in range(5, 11)]
    assert counts == [1, 1, 2, 6, 16, 59]


def test_petersen_in_triangle_free_family():
    graphs = cubic(10, 10, connected=True, triangle_free=True)
    assert canonical_form(petersen()) in {canonical_form(g) for g in graphs}


def test_heawood_in_c4_free_family():
    graphs = cubic(14, 14, connected=True, triangle_free=True, c4_free=True)
    assert canonical_form(heawood()) in {canonical_form(g) for g in graphs}


def test_all_graphs_counts():
    assert [len(all_graphs(n)) for n in range(0, 8)] == [1, 1, 2, 4, 11, 34, 156, 1044]
    with pytest.raises(GraphError):
        all_graphs(9)


@pytest.mark.parametrize("n", range(1, 8))
def test_all_graphs_match_networkx_atlas(n):
    ours = {canonical_form(g) for g in all_graphs(n)}
    assert ours == {canonical_form(g) for g in atlas_graphs(n)}


def test_emitted_graphs_are_canonical_and_distinct():
    for spec in (FamilySpec(n_min=4, n_max=10, d=3), FamilySpec(n_min=0, n_max=6)):
        graphs = family_graphs(spec)
        forms = [canonical_form(g) for g in graphs]
        assert len(set(forms)) == len(forms)
        for g in graphs:
            assert canonical_graph(g) == g
            assert spec.accepts(g)


@pytest.mark.parametrize("n, d", [(6, 2), (6, 3), (7, 2), (7, 4), (8, 2), (8, 3), (8, 4)])
def test_regular_counts_match_labelled_oracle(n, d):
    oracle = iso_classes([nx.Graph(e) if e else nx.empty_graph(n) for e in labelled_regular(n, d)])
    spec = FamilySpec(n_min=n, n_max=n, d=d)
    ours = regular_graphs(spec, max_n=n)
    assert len(ours) == len(oracle)
    connected = sum(nx.is_connected(x) for x in oracle)
    assert len(regular_graphs(FamilySpec(n_min=n, n_max=n, d=d, connected=True), max_n=n)) == connected


def test_flags_filter_correctly():
    full = cubic(4, 12, connected=True)
    for flags, pred in [
        ({"bipartite": True}, lambda f, g: f.bipartite),
        ({"triangle_free": True}, lambda f, g: f.triangle_free),
        ({"c4_free": True}, lambda f, g: not has_c4(g)),
        ({"min_girth": 5}, lambda f, g: f.girth >= 5),
    ]:
        sub = cubic(4, 12, connected=True, **flags)
        assert {canonical_form(g) for g in sub} == {canonical_form(g) for g in full if pred(analyze(g), g)}


def test_disconnected_families():
    graphs = cubic(4, 8)
    assert len(graphs) == 1 + 2 + 6  # 2K_4 joins the five connected graphs on 8 vertices
    assert sum(analyze(g).components == 2 for g in graphs) == 1


def test_determinism_and_cache(tmp_path):
    spec = FamilySpec(n_min=4, n_max=10, d=3, connected=True)
    first = regular_graphs(spec, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and files[0].suffix == ".g6"
    assert list(read_graph6(files[0])) == first
    assert regular_graphs(spec, cache_dir=tmp_path) == first
    assert regular_graphs(spec) == first


def test_spec_parsing_and_errors():
    spec = FamilySpec.parse("d=3,connected,nmax=12")
    assert (spec.d, spec.n_min, spec.n_max, spec.connected) == (3, 4, 12, True)
    assert FamilySpec.parse("n=6,triangle_free").orders() == [6]
    assert FamilySpec.parse("d=3,nmin=4,nmax=9").orders() == [4, 6, 8]
    for bad in ("d=x", "nmax=12,wat", "girth=2,d=3", "d=3,nmin=8,nmax=4"):
        with pytest.raises(GraphError):
            FamilySpec.parse(bad)
    with pytest.raises(GraphError):
        regular_graphs(FamilySpec(n_min=16, n_max=16, d=3))
    with pytest.raises(GraphError):
        regular_graphs(FamilySpec(n_min=5, n_max=5, d=3))
    assert FamilySpec.parse("d=3,nmax=8").key() == FamilySpec.parse("nmax=8,d=3").key()
