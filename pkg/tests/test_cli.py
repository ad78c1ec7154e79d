import io
import json
import subprocess
import sys

import pytest

from posetmerge.bijections import enumerate_monotone_colorings, enumerate_plane_partitions, coloring_to_json, pp_to_json
from posetmerge.cli import UsageError, main, parse_poset_spec
from posetmerge.fca import contraordinal_scale, write_cxt
from posetmerge.galois import enumerate_galois_boolean_chain, galois_from_json
from posetmerge.merging import brute_force_mergings, merging_from_json, merging_to_json
from posetmerge.order import make_chain, poset_to_json


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCount:
    @pytest.mark.parametrize(
        "argv,expected",
        [
            (["count", "chains", "--m", "2", "--n", "2"], "20"),
            (["count", "antichain-chain", "--m", "2", "--n", "2"], "26"),
            (["count", "pp", "--m", "2", "--n", "2", "--l", "0"], "1"),
            (["count", "antichains", "--m", "2", "--n", "2"], "35"),
            (["count", "galois-chains", "--m", "3", "--n", "3"], "6"),
            (["count", "galois-boolean", "--m", "2", "--n", "2"], "9"),
            (["count", "chains", "--m", "4", "--n", "4"], "1764"),
        ],
    )
    def test_values(self, capsys, argv, expected):
        code, out, _ = run(capsys, *argv)
        assert (code, out) == (0, expected + "\n")

    def test_missing_param_is_usage(self, capsys):
        code, _, err = run(capsys, "count", "pp", "--m", "1", "--n", "1")
        assert code == 2 and "--l" in err

    def test_negative_is_domain(self, capsys):
        assert run(capsys, "count", "chains", "--m", "-1", "--n", "2")[0] == 1
        assert run(capsys, "count", "galois-chains", "--m", "0", "--n", "2")[0] == 1

    def test_unknown_family(self, capsys):
        assert run(capsys, "count", "trees", "--m", "1")[0] == 2


class TestEnumerate:
    def test_counts(self, capsys):
        assert run(capsys, "enumerate", "--p", "chain:2", "--q", "chain:2", "--proper", "--format", "count")[1] == "20\n"
        assert run(capsys, "enumerate", "--p", "antichain:2", "--q", "antichain:2", "--proper", "--format", "count")[1] == "35\n"

    def test_all_mergings_match_brute_force(self, capsys):
        expected = len(brute_force_mergings(make_chain(1, "a"), make_chain(1, "b"), proper_only=False))
        assert run(capsys, "enumerate", "--p", "chain:1", "--q", "chain:1", "--format", "count")[1] == f"{expected}\n"

    def test_json_roundtrips(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--p", "antichain:1", "--q", "chain:2", "--format", "json")
        data = json.loads(out)
        # six proper ones plus a1 identified with b1 or with b2
        assert code == 0 and len(data) == 8
        assert sum(item["proper"] for item in data) == 6
        for item in data:
            assert merging_to_json(merging_from_json(item)) == item

    def test_dot_one_graph_per_merging(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--p", "chain:1", "--q", "chain:1", "--proper", "--format", "dot")
        assert code == 0 and out.count("digraph") == 3

    def test_dot_without_proper_rejected(self, capsys):
        assert run(capsys, "enumerate", "--p", "chain:1", "--q", "chain:1", "--format", "dot")[0] == 1

    def test_table_lines(self, capsys):
        out = run(capsys, "enumerate", "--p", "chain:1", "--q", "chain:1", "--proper")[1]
        assert out.splitlines()[0].startswith("0\t")
        assert len(out.splitlines()) == 3

    def test_file_spec(self, capsys, tmp_path):
        f = tmp_path / "p.json"
        f.write_text(json.dumps(poset_to_json(make_chain(2, "x"))))
        assert run(capsys, "enumerate", "--p", f"@{f}", "--q", "chain:2", "--proper", "--format", "count")[1] == "20\n"

    def test_bad_spec(self, capsys):
        code, _, err = run(capsys, "enumerate", "--p", "tree:2", "--q", "chain:1")
        assert code == 2 and "bad poset spec" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "enumerate", "--p", f"@{tmp_path}/none.json", "--q", "chain:1")[0] == 2

    def test_capacity(self, capsys, monkeypatch):
        monkeypatch.setenv("POSETMERGE_MAX_ENUM", "10")
        code, _, err = run(capsys, "enumerate", "--p", "antichain:3", "--q", "antichain:3", "--format", "count")
        assert code == 3 and "capacity" in err

    def test_determinism(self, capsys):
        argv = ("enumerate", "--p", "antichain:2", "--q", "chain:1", "--format", "json")
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


class TestMap:
    def test_example_partition(self, capsys, monkeypatch):
        pp = json.dumps({"rows": 2, "cols": 2, "parts": [[2, 1], [1, 0]]})
        code, out, _ = run(capsys, "map", "pp-to-merging", "--input", "-", stdin=pp, monkeypatch=monkeypatch)
        m = merging_from_json(json.loads(out))
        assert code == 0
        assert m.r.pairs() == [("a1", "b2")] and m.s.pairs() == [("b1", "a2")]

    def test_all_ones_gives_empty(self, capsys, monkeypatch):
        pp = json.dumps({"rows": 2, "cols": 3, "parts": [[1] * 3] * 2})
        out = run(capsys, "map", "pp-to-merging", "--input", "-", stdin=pp, monkeypatch=monkeypatch)[1]
        data = json.loads(out)
        assert data["r"] == [] and data["s"] == []

    def test_rejects_bad_partition(self, capsys, monkeypatch):
        pp = json.dumps({"rows": 2, "cols": 2, "parts": [[1, 2], [0, 0]]})
        code, _, err = run(capsys, "map", "pp-to-merging", "--input", "-", stdin=pp, monkeypatch=monkeypatch)
        assert code == 1 and "not weakly decreasing at (1,2)" in err

    def test_invalid_json(self, capsys, monkeypatch):
        assert run(capsys, "map", "pp-to-merging", "--input", "-", stdin="{", monkeypatch=monkeypatch)[0] == 1

    @pytest.mark.parametrize("pp", enumerate_plane_partitions(2, 3, 2), ids=str)
    def test_pp_roundtrip_bit_exact(self, capsys, monkeypatch, pp):
        src = json.dumps(pp_to_json(pp))
        mid = run(capsys, "map", "pp-to-merging", "--input", "-", stdin=src, monkeypatch=monkeypatch)[1]
        back = run(capsys, "map", "merging-to-pp", "--input", "-", stdin=mid, monkeypatch=monkeypatch)[1]
        assert json.loads(back) == json.loads(src)

    @pytest.mark.parametrize("c", enumerate_monotone_colorings(2, 3), ids=lambda c: f"{c.v1}{c.v2}")
    def test_coloring_roundtrip_bit_exact(self, capsys, monkeypatch, c):
        src = json.dumps(coloring_to_json(c))
        mid = run(capsys, "map", "coloring-to-merging", "--input", "-", stdin=src, monkeypatch=monkeypatch)[1]
        back = run(capsys, "map", "merging-to-coloring", "--input", "-", stdin=mid, monkeypatch=monkeypatch)[1]
        assert json.loads(back) == json.loads(src)

    def test_file_input(self, capsys, tmp_path):
        f = tmp_path / "pp.json"
        f.write_text(json.dumps({"rows": 1, "cols": 1, "parts": [[2]]}))
        assert json.loads(run(capsys, "map", "pp-to-merging", "--input", str(f))[1])["r"] == [[0, 0]]


class TestVerify:
    @pytest.mark.parametrize("which,rows", [("A", 20), ("C", 6), ("D", 26), ("E", 9)])
    def test_single(self, capsys, which, rows):
        code, out, _ = run(capsys, "verify", "appendix", "--which", which)
        assert code == 0 and out == f"PASS table {which}: {rows} rows\n"

    def test_b(self, capsys):
        out = run(capsys, "verify", "appendix", "--which", "B")[1]
        assert out == "PASS table B: 27 rows, 19 distinct mergings, 6 doubled fibers\n"

    def test_all_verbose(self, capsys):
        code, out, _ = run(capsys, "verify", "appendix", "--verbose")
        assert code == 0 and out.count("PASS") == 5
        assert len(out.splitlines()) == 5 + 20 + 19 + 6 + 26 + 9


class TestGalois:
    def test_chain_table_layout(self, capsys):
        out = run(capsys, "galois", "enumerate", "--left", "chain:3", "--right", "chain:3")[1].splitlines()
        assert len(out) == 6
        assert out[0] == "0000 | psi: b1->a3 b2->a3 b3->a3 | phi: a1->b3 a2->b3 a3->b3"

    def test_boolean_count_and_json(self, capsys):
        assert run(capsys, "galois", "enumerate", "--left", "boolean:2", "--right", "chain:3", "--format", "count")[1] == "9\n"
        data = json.loads(run(capsys, "galois", "enumerate", "--left", "boolean:2", "--right", "chain:3", "--format", "json")[1])
        expected = enumerate_galois_boolean_chain(2, 2)
        assert [galois_from_json(d, g.left, g.right) for d, g in zip(data, expected)] == expected

    def test_fallback_search(self, capsys):
        # boolean:1 is a 2-chain, so the map search must agree with the chain count
        assert run(capsys, "galois", "enumerate", "--left", "chain:3", "--right", "boolean:1", "--format", "count")[1] == "3\n"

    def test_fallback_antichain_has_none(self, capsys):
        # psi would have to send b1 and b2 back to a1 and a2 in reverse order
        assert run(capsys, "galois", "enumerate", "--left", "antichain:2", "--right", "chain:2", "--format", "count")[1] == "0\n"

    def test_empty_boolean_chain_side(self, capsys):
        assert run(capsys, "galois", "enumerate", "--left", "boolean:1", "--right", "chain:0")[0] == 1


class TestScaleAndConcepts:
    def test_scale_cxt(self, capsys):
        out = run(capsys, "scale", "--p", "chain:3")[1]
        assert out == write_cxt(contraordinal_scale(make_chain(3, "a")))

    def test_concept_count_via_stdin(self, capsys, monkeypatch):
        cxt = run(capsys, "scale", "--p", "antichain:3", "--format", "json")[1]
        assert run(capsys, "concepts", "--context", "-", "--format", "count", stdin=cxt, monkeypatch=monkeypatch)[1] == "8\n"

    def test_concepts_table(self, capsys, monkeypatch):
        cxt = run(capsys, "scale", "--p", "chain:2", "--kind", "ordinal")[1]
        out = run(capsys, "concepts", "--context", "-", stdin=cxt, monkeypatch=monkeypatch)[1]
        assert len(out.splitlines()) == 2

    def test_bad_cxt(self, capsys, monkeypatch):
        assert run(capsys, "concepts", "--context", "-", stdin="nonsense", monkeypatch=monkeypatch)[0] == 1


def test_parse_poset_spec():
    assert parse_poset_spec("chain:2", "a") == make_chain(2, "a")
    with pytest.raises(UsageError):
        parse_poset_spec("boolean:2", "a")
    assert len(parse_poset_spec("boolean:2", "a", allow_boolean=True)) == 4


def test_no_command_is_usage(capsys):
    assert main([]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "posetmerge", "count", "chains", "--m", "1", "--n", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"
