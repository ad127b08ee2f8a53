import json

import pytest

from trichrome import named
from trichrome.cli import UNDETERMINED_MESSAGE, main
from trichrome.dimacs import write_dimacs


@pytest.fixture
def write_graph(tmp_path):
    def _write(g, name="g.col"):
        path = tmp_path / name
        path.write_text(write_dimacs(g))
        return str(path)
    return _write


def test_solve_no_writes_a_checkable_certificate(write_graph, tmp_path, capsys):
    graph = write_graph(named.complete(4))
    cert = str(tmp_path / "k4.cert")
    assert main(["solve", graph, "--cert", cert]) == 1
    assert "not colorable" in capsys.readouterr().out
    assert open(cert).read() == "cert uncol 0\nk4 1 2 3 4\n"
    assert main(["verify", graph, cert]) == 0


def test_solve_yes(write_graph, tmp_path):
    graph = write_graph(named.petersen())
    cert = str(tmp_path / "p.cert")
    assert main(["solve", graph, "--auto", "--cert", cert]) == 0
    assert main(["verify", graph, cert]) == 0


def test_solve_undetermined_at_fixed_alpha(write_graph, capsys):
    graph = write_graph(named.grotzsch())
    assert main(["solve", graph, "--alpha", "0"]) == 2
    assert UNDETERMINED_MESSAGE in capsys.readouterr().out
    assert main(["solve", graph, "--alpha", "1"]) == 1


def test_solve_reports_shuffled_alpha(write_graph, capsys):
    assert main(["solve", write_graph(named.grotzsch()), "--shuffles", "2"]) == 1
    assert "shuffled orderings" in capsys.readouterr().out


def test_planar_mode_rejects_non_planar(write_graph):
    assert main(["solve", write_graph(named.petersen()), "--mode", "planar"]) == 65


def test_verify_reports_the_failing_step(write_graph, tmp_path, capsys):
    graph = write_graph(named.wheel(5))
    cert = tmp_path / "bad.cert"
    cert.write_text("cert uncol 1\nstep 2 5 diamond 1 3\nk4 3 4 6 7\n")
    assert main(["verify", graph, str(cert)]) == 1
    assert "invalid at step 0" in capsys.readouterr().out
    cert.write_text("cert uncol 1\nstep 2 5 diamond 1 6\nk4 3 4 6 7\n")
    assert main(["verify", graph, str(cert)]) == 0
    cert.write_text("cert col\nclass 1 1 3\nclass 2 2 4\nclass 3 5 6\n")
    assert main(["verify", graph, str(cert)]) == 1


def test_io_and_usage_errors(write_graph, tmp_path, monkeypatch):
    assert main(["solve", str(tmp_path / "missing.col")]) == 66
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 2 1\ne 1 3\n")
    assert main(["solve", str(bad)]) == 65
    garbled = tmp_path / "garbled.cert"
    garbled.write_text("cert what\n")
    assert main(["verify", write_graph(named.cycle(5)), str(garbled)]) == 65
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["solve", "x.col", "--alpha", "1", "--auto"])
    assert exc.value.code == 64
    monkeypatch.setenv("TRICHROME_SEED", "abc")
    assert main(["generate", "--model", "er", "--n", "10", "--d", "3", "--out", str(tmp_path)]) == 64


def test_generate_names_and_sidecars(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TRICHROME_SEED", "17")
    assert main(["generate", "--model", "planar4reg", "--n", "20", "--count", "2", "--out", str(tmp_path)]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["planar_4regular_20_17_0.col", "planar_4regular_20_17_0.json",
                     "planar_4regular_20_17_1.col", "planar_4regular_20_17_1.json"]
    assert json.loads((tmp_path / "planar_4regular_20_17_1.json").read_text())["index"] == 1
    first = (tmp_path / "planar_4regular_20_17_0.col").read_bytes()
    assert main(["generate", "--model", "planar4reg", "--n", "20", "--out", str(tmp_path / "again")]) == 0
    assert (tmp_path / "again" / "planar_4regular_20_17_0.col").read_bytes() == first
    assert main(["generate", "--model", "planar4reg", "--n", "7", "--out", str(tmp_path)]) == 64
    assert main(["generate", "--model", "er", "--n", "10", "--out", str(tmp_path)]) == 64


def test_generated_file_solves(tmp_path):
    assert main(["generate", "--model", "er", "--n", "30", "--d", "3.5", "--seed", "4", "--out", str(tmp_path)]) == 0
    assert main(["solve", str(tmp_path / "er_connected_30_4_0.col")]) in (0, 1)


def test_small_experiment_run(tmp_path, capsys):
    out = tmp_path / "exp"
    assert main(["experiment", "4", "--group", "6", "--out", str(out)]) == 0
    lines = (out / "experiment4.csv").read_text().splitlines()
    assert lines[0] == "id,model,n,m,avg_degree,verdict,alpha,time_s,calls,cert_size"
    assert len(lines) == 7
    assert "certificate failures: 0" in capsys.readouterr().out
