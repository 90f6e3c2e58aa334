import pytest

from ramsey3k.canon import canonical_form
from ramsey3k.graphs import Graph
from ramsey3k.oracle import brute_force_graphs
from ramsey3k.store import GraphStore, StoreError, render_count_table

from conftest import cycle


def filled_store(k=4, n=8, e_max=None):
    store = GraphStore(k, n, e_max=e_max, complete=True, certificate="test")
    for form, g in brute_force_graphs(n, k, e_max).items():
        store.add(g, form)
    return store


class TestGraphStore:
    def test_dedup(self):
        store = GraphStore(3, 5)
        c5 = cycle(5)
        assert store.add(c5)
        relabeled = c5.permuted([2, 0, 3, 1, 4])
        assert not store.add(relabeled)
        assert len(store) == 1

    def test_counts(self):
        store = filled_store()
        assert store.counts() == {10: 1, 11: 1, 12: 1}

    def test_box_check(self):
        store = GraphStore(3, 5, e_max=4)
        with pytest.raises(StoreError):
            store.add(cycle(5), check=True)
        with pytest.raises(Exception):
            GraphStore(2, 5).add(cycle(5), check=True)

    def test_restricted(self):
        store = filled_store()
        sub = store.restricted(11)
        assert sub.complete and len(sub) == 2
        assert all(g.edge_count() <= 11 for g in sub.graphs())

    def test_merge_box_mismatch(self):
        with pytest.raises(StoreError):
            filled_store().merge(GraphStore(4, 7))

    def test_write_read_roundtrip(self, tmp_path):
        store = filled_store()
        path = str(tmp_path / "s.g6")
        store.write(path)
        back = GraphStore.read(path, check=True)
        assert back.forms() == store.forms()
        assert back.k == 4 and back.n == 8 and back.complete
        assert back.certificate == "test"
        assert back.content_hash() == store.content_hash()

    def test_lines_sorted(self, tmp_path):
        store = filled_store()
        path = str(tmp_path / "s.g6")
        store.write(path)
        lines = open(path).read().splitlines()
        assert lines == sorted(lines)
        assert all(line == canonical_form(Graph.empty(0)) or line
                   for line in lines)

    def test_total_mismatch_detected(self, tmp_path):
        store = filled_store()
        path = str(tmp_path / "s.g6")
        store.write(path)
        with open(path, "a") as fh:
            fh.write(canonical_form(cycle(5)) + "\n")
        with pytest.raises(StoreError):
            GraphStore.read(path)


class TestRenderCountTable:
    def test_shape(self):
        text = render_count_table({(16, 20): 2, (16, 21): 15, (17, 25): 2})
        lines = text.splitlines()
        assert lines[0].split("|")[1].split() == ["16", "17"]
        assert any(row.startswith("20") and "2" in row for row in lines)
        assert any(row.startswith("21") and "15" in row for row in lines)

    def test_empty_cells_blank(self):
        text = render_count_table({(5, 5): 1, (6, 7): 3})
        row5 = next(r for r in text.splitlines() if r.startswith("5 "))
        assert row5.split("|")[1].split() == ["1"]

    def test_empty(self):
        assert render_count_table({}).strip()
