import json
import logging
from pathlib import Path

import pytest

from bpr.cli import RunReport, main, run_recognition, setup_logging, InputError
from bpr.generators import cube, gen_optimal_1planar
from bpr.graph import complete_graph
from bpr.io import parse_graph, to_edgelist, to_graph6

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def k5(tmp_path):
    p = tmp_path / "k5.g6"
    p.write_text(to_graph6(complete_graph(5)) + "\n")
    return str(p)


@pytest.fixture
def k6(tmp_path):
    p = tmp_path / "k6.txt"
    p.write_text(to_edgelist(complete_graph(6)))
    return str(p)


def test_recognize_k5_ic(k5, capsys):
    assert main(["recognize", k5, "--mode", "ic"]) == 0
    assert capsys.readouterr().out.strip() == "ic: accepted"


def test_recognize_k6_ic_edge_bound(k6, capsys):
    assert main(["recognize", k6, "--mode", "ic", "--format", "edgelist", "--json"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "rejected" and out["reason"] == "edge_bound"
    assert set(out["timings"]) == {"parse", "recognize"}


@pytest.mark.parametrize("text", ["D~", "5 10\n0 1\n", "not a graph at all"])
def test_bad_input_exits_2(tmp_path, text, capsys):
    p = tmp_path / "bad"
    p.write_text(text)
    assert main(["recognize", str(p)]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_and_bad_flags_exit_2(capsys):
    assert main(["recognize", "/nonexistent/graph"]) == 2
    assert main(["recognize", "x", "--mode", "3p"]) == 2


def test_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("D~{\n"))
    assert main(["recognize", "-", "--emit", "witness"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert json.loads(out[1])["crossings"]


@pytest.mark.parametrize("emit", ["coloring", "formula", "witness"])
def test_emit_filters_json(k5, emit, capsys):
    main(["recognize", k5, "--json", "--emit", emit])
    out = json.loads(capsys.readouterr().out)
    assert emit in out
    assert not {"coloring", "formula", "witness"} - {emit} & set(out)


@pytest.mark.parametrize("name", sorted(p.stem for p in GOLDEN.glob("*.json")))
def test_golden_reports(name):
    n, mode = int(name[1]), name.split("_")[1]
    got = run_recognition(complete_graph(n), mode).to_json()
    got.pop("timings")
    assert got == json.loads((GOLDEN / f"{name}.json").read_text())


@pytest.mark.parametrize("n,mode", [(5, "1p"), (5, "nic"), (7, "1p"), (8, "1p")])
def test_report_round_trip(n, mode):
    g = complete_graph(n) if n < 8 else gen_optimal_1planar(cube())
    rep = run_recognition(g, mode)
    again = RunReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert again == rep
    assert again.sexpr() == rep.sexpr()


def test_report_version_is_checked():
    data = run_recognition(complete_graph(5), "1p").to_json()
    data["version"] = 99
    with pytest.raises(ValueError):
        RunReport.from_json(data)


def test_classify_optimal(tmp_path, capsys):
    p = tmp_path / "q3.txt"
    assert main(["gen", "optimal-q3", "--out", str(p)]) == 0
    g = parse_graph(p.read_text())
    assert (g.n, g.m) == (8, 24)
    assert main(["classify", str(p), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["optimal"] is True and out["maximal"] is True


def test_classify_k6(k6, capsys):
    assert main(["classify", k6, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["maximal"] is True and out["optimal"] is False


def test_census(k5, tmp_path, capsys):
    cons = tmp_path / "c.json"
    cons.write_text(json.dumps({"planar": [[0, 1], [1, 2], [0, 2]]}))
    assert main(["census", k5, "--constraints", str(cons), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 3


def test_census_k4_and_k7(tmp_path, capsys):
    for n, code, count in ((4, 0, 1), (7, 1, 0)):
        p = tmp_path / f"k{n}.g6"
        p.write_text(to_graph6(complete_graph(n)))
        assert main(["census", str(p), "--json"]) == code
        assert json.loads(capsys.readouterr().out)["count"] == count


def test_census_refuses_large_graphs(tmp_path, capsys):
    p = tmp_path / "k9.g6"
    p.write_text(to_graph6(complete_graph(9)))
    assert main(["census", str(p)]) == 2


@pytest.mark.parametrize("family,params", [("optimal-pdw", ["5"]), ("k5-star", ["3"]), ("sc", []), ("random-1p", ["12", "3", "7"])])
@pytest.mark.parametrize("fmt", ["graph6", "edgelist"])
def test_gen_round_trip(tmp_path, family, params, fmt):
    from bpr.generators import generate

    p = tmp_path / "g"
    assert main(["gen", family, *params, "--format", fmt, "--out", str(p)]) == 0
    back = parse_graph(p.read_text(), fmt)
    want = generate(family, *params)
    assert back.n == want.n and back.edges == want.edges


def test_gen_unknown_family():
    assert main(["gen", "petersen"]) == 2


def test_render_accepted_k5_svg(k5, capsys):
    assert main(["render", k5, "--svg"]) == 0
    svg = capsys.readouterr().out
    assert svg.startswith("<svg")
    assert svg.count('class="crossing"') == 1
    assert svg.count('class="edge"') == 10


def test_render_with_saved_report(k5, tmp_path, capsys):
    main(["recognize", k5, "--json", "--emit", "all"])
    rep = tmp_path / "rep.json"
    rep.write_text(capsys.readouterr().out)
    assert main(["render", k5, "--report", str(rep), "--dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.count("shape=point") == 1
    assert "color=" in dot


def test_render_rejected_is_plain(tmp_path, capsys):
    p = tmp_path / "k7.g6"
    p.write_text(to_graph6(complete_graph(7)))
    assert main(["render", str(p)]) == 1
    dot = capsys.readouterr().out
    assert "shape=point" not in dot and "color=" not in dot
    assert dot.count(" -- ") == 21


def test_log_levels(monkeypatch):
    log = logging.getLogger("bpr")
    setup_logging("trace")
    assert log.level == logging.DEBUG
    setup_logging("info")
    assert log.level == logging.INFO
    setup_logging("off")
    assert not log.isEnabledFor(logging.CRITICAL)
    with pytest.raises(InputError):
        setup_logging("loud")


def test_trace_log_goes_to_stderr(k5, monkeypatch, capsys):
    monkeypatch.setenv("BPR_LOG", "trace")
    main(["recognize", k5])
    err = capsys.readouterr().err
    monkeypatch.setenv("BPR_LOG", "off")
    setup_logging()
    assert "accepted=True" in err
