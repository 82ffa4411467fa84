import csv
import json
import random

import jsonschema
import pytest
from shapes import BENZENE, BICYCLO

from bbpmcis import RESULT_SCHEMA, gen_outerplanar, parse_graph, write_graph
from bbpmcis import cli
from bbpmcis.cli import main

TRIANGLE = "g 3 3\nv 0 C\nv 1 C\nv 2 O\ne 0 1 -\ne 1 2 -\ne 0 2 -\n"
K4 = "g 4 6\n" + "".join(f"v {i} C\n" for i in range(4)) + "".join(
    f"e {u} {v} -\n" for u in range(4) for v in range(u + 1, 4))


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return put


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCompare:
    def test_triangle_self(self, files, capsys):
        t = files("t.graph", TRIANGLE)
        code, out, _ = run(capsys, "compare", t, t)
        assert code == 0
        assert "weight=6\t" in out and "checks=ok" in out

    def test_json_validates(self, files, capsys):
        t = files("t.graph", TRIANGLE)
        code, out, _ = run(capsys, "compare", t, t, "--json", "--weights", "uniform")
        assert code == 0
        rec = json.loads(out)
        jsonschema.validate(rec, RESULT_SCHEMA)
        assert rec["weight"] == 6 and rec["mapped_edges"] == 3 and all(rec["checks"].values())

    def test_weight_file(self, files, capsys):
        t = files("t.graph", TRIANGLE)
        wf = files("w.txt", "v C C 2\nv O O 1\ne - - 0.5\n")
        code, out, _ = run(capsys, "compare", t, t, "--weights", wf, "--json")
        assert code == 0 and json.loads(out)["weight"] == 6.5

    def test_enumerate(self, files, capsys):
        t = files("t.graph", TRIANGLE)
        code, out, _ = run(capsys, "compare", t, t, "--enumerate-2mcis", "--json",
                           "--weights", "uniform")
        assert code == 0
        recs = [json.loads(line) for line in out.splitlines()]
        assert len(recs) == 6
        assert len({tuple(map(tuple, r["vertex_map"])) for r in recs}) == 6
        for r in recs:
            jsonschema.validate(r, RESULT_SCHEMA)
            assert r["kind"] == "2mcis" and r["weight"] == 6 and all(r["checks"].values())

    def test_enumerate_needs_blocks(self, files, capsys):
        p = files("p.graph", "g 2 1\nv 0 C\nv 1 C\ne 0 1 -\n")
        code, _, err = run(capsys, "compare", p, p, "--enumerate-2mcis")
        assert code == 64 and "biconnected" in err

    def test_molfile_input(self, files, capsys):
        b = files("benzene.mol", BENZENE)
        code, out, _ = run(capsys, "compare", b, b, "--json")
        assert code == 0 and json.loads(out)["weight"] == 12
        bad = files("bicyclo.mol", BICYCLO)
        assert run(capsys, "compare", bad, b)[0] == 2

    def test_not_outerplanar(self, files, capsys):
        k = files("k4.graph", K4)
        t = files("t.graph", TRIANGLE)
        code, _, err = run(capsys, "compare", k, t)
        assert code == 2 and "error" in err

    def test_parse_error(self, files, capsys):
        bad = files("bad.graph", "g 2 2\nv 0 a\nv 1 a\ne 0 1 -\ne 1 0 -\n")
        code, _, err = run(capsys, "compare", bad, bad)
        assert code == 65 and "line 5" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run(capsys, "compare", str(tmp_path / "nope"), str(tmp_path / "nope"))
        assert code == 66

    def test_bad_weight_file(self, files, capsys):
        t = files("t.graph", TRIANGLE)
        wf = files("w.txt", "v C C -3\n")
        assert run(capsys, "compare", t, t, "--weights", wf)[0] == 65


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [[], ["compare", "x"], ["nonsense"], ["gen", "--n", "5"], ["bench", "--sizes", "a,b"],
         ["compare", "a", "b", "--frobnicate"]],
    )
    def test_usage_errors_exit_64(self, argv, capsys):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 64

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert "bbpmcis" in capsys.readouterr().out

    def test_bad_generator_parameters(self, tmp_path, capsys):
        code, _, _ = run(capsys, "gen", "--n", "5", "--ratio", "2.5", "--block-size", "4",
                         "--out", str(tmp_path))
        assert code == 64


class TestGenAndBatch:
    def test_gen_writes_parseable_graphs(self, tmp_path, capsys):
        out = tmp_path / "g"
        code, text, _ = run(capsys, "gen", "--n", "12", "--ratio", "1.2", "--block-size", "4",
                            "--labels", "2", "--seed", "7", "--count", "3", "--out", str(out))
        assert code == 0
        paths = text.split()
        assert [p.rsplit("/", 1)[1] for p in paths] == [f"op_n12_s{s}.graph" for s in (7, 8, 9)]
        g = parse_graph(open(paths[0]).read())
        assert g == gen_outerplanar(12, 1.2, 4, 2, 7)

    @pytest.mark.parametrize("jobs", ["1", "2"])
    def test_batch(self, tmp_path, capsys, jobs):
        names = []
        for s in range(4):
            (tmp_path / f"g{s}.graph").write_text(write_graph(gen_outerplanar(8, 1.2, 4, 2, s)))
            names.append(f"g{s}.graph")
        pairs = tmp_path / "pairs.tsv"
        pairs.write_text("# pairs\n" + "".join(f"{a}\t{b}\n" for a, b in zip(names, names[1:])))
        code, out, _ = run(capsys, "batch", str(pairs), "--json", "--jobs", jobs)
        assert code == 0
        recs = [json.loads(line) for line in out.splitlines()]
        assert [(r["g"], r["h"]) for r in recs] == list(zip(names, names[1:]))
        assert all(all(r["checks"].values()) for r in recs)

    def test_batch_reports_failures(self, tmp_path, capsys):
        (tmp_path / "t.graph").write_text(TRIANGLE)
        (tmp_path / "k.graph").write_text(K4)
        pairs = tmp_path / "pairs.tsv"
        pairs.write_text("t.graph t.graph\nk.graph t.graph\nt.graph missing.graph\n")
        code, out, err = run(capsys, "batch", str(pairs))
        assert len(out.splitlines()) == 1
        assert err.count("error:") == 2
        assert code == 66

    def test_batch_bad_line(self, tmp_path, capsys):
        pairs = tmp_path / "pairs.tsv"
        pairs.write_text("only-one\n")
        assert run(capsys, "batch", str(pairs))[0] == 65


class TestBench:
    def test_csv(self, tmp_path, capsys):
        path = tmp_path / "b.csv"
        code, out, _ = run(capsys, "bench", "--sizes", "6,12", "--reps", "3", "--seed", "1",
                           "--csv", str(path))
        assert code == 0
        assert out.count("size=") == 2 and "ratios\t" in out
        rows = list(csv.DictReader(open(path)))
        assert [int(r["size"]) for r in rows] == [6, 12]
        assert all(int(r["reps"]) == 3 and float(r["mean_ms"]) > 0 for r in rows)


def small_pairs(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        yield tuple(
            gen_outerplanar(rng.randint(1, 9), rng.uniform(0.9, 1.6), rng.uniform(2, 6), 2,
                            rng.randrange(10**9))
            for _ in range(2))


class TestCheck:
    def test_agrees_on_seeded_pairs(self, tmp_path, capsys):
        for i, (g, h) in enumerate(small_pairs(200, 2024)):
            a, b = tmp_path / f"a{i}.graph", tmp_path / f"b{i}.graph"
            a.write_text(write_graph(g))
            b.write_text(write_graph(h))
            code, out, _ = run(capsys, "check", str(a), str(b))
            assert code == 0, out
            assert out.rstrip().endswith("agree")

    def test_mismatch_exits_1(self, files, capsys, monkeypatch):
        t = files("t.graph", TRIANGLE)
        monkeypatch.setattr(cli, "brute_bbp_mcis", lambda g, h, w: (99, {}))
        code, out, _ = run(capsys, "check", t, t)
        assert code == 1 and "MISMATCH" in out

    def test_size_guard(self, files, capsys):
        big = files("big.graph", write_graph(gen_outerplanar(12, 1.2, 4, 1, 0)))
        assert run(capsys, "check", big, big)[0] == 64


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "bbpmcis", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("bbpmcis")


def test_record_injective(files, capsys):
    t = files("t.graph", TRIANGLE)
    _, out, _ = run(capsys, "compare", t, t, "--json")
    vmap = json.loads(out)["vertex_map"]
    assert len({b for _, b in vmap}) == len(vmap)
