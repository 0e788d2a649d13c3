import json

import pytest

from discoccg.cli import JobConfig, STATS_COLUMNS, build_parser, main, run
from discoccg.corpus import corpus_text

ALICE = {"rule": "BA", "type": "S", "children": [
    {"word": "Alice", "type": "NP"},
    {"rule": "FA", "type": "S\\NP", "children": [
        {"word": "likes", "type": "(S\\NP)/NP"},
        {"word": "Bob", "type": "NP"}]}]}


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "corpus.json"
    path.write_bytes(corpus_text())
    return path


def test_corpus_batch_planarize_stats(corpus_file, tmp_path):
    out = tmp_path / "out"
    cfg = JobConfig(inputs=[str(corpus_file)], out_dir=str(out),
                    emit=("stats", "diagram"), planarize=True)
    report = run(cfg)
    assert (report.total, report.converted, report.failed) == (28, 28, 0)
    assert len(report.stats_rows) == 28
    for row in report.stats_rows:
        swaps_after = row[STATS_COLUMNS.index("swaps_after")]
        assert swaps_after == 0
    from discoccg.cli import write_report
    write_report(report, cfg)
    stats = (out / "stats.tsv").read_text().splitlines()
    assert stats[0].split("\t") == list(STATS_COLUMNS)
    assert len(stats) == 29


def test_empty_input(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("[]")
    report = run(JobConfig(inputs=[str(path)], emit=("diagram",)))
    assert (report.total, report.converted, report.failed) == (0, 0, 0)
    assert report.summary() == "total 0 converted 0 failed 0"


def test_single_malformed_entry_does_not_abort(tmp_path):
    broken = json.loads(json.dumps(ALICE))
    broken["children"][0]["typ"] = "oops"
    path = tmp_path / "mixed.json"
    path.write_text(json.dumps([ALICE, broken, ALICE]))
    report = run(JobConfig(inputs=[str(path)], emit=("diagram",)))
    assert (report.total, report.converted, report.failed) == (3, 2, 1)
    ident, message = report.failures[0]
    assert ident == "s1"
    assert "/children/0" in message


def test_outputs_are_byte_stable(corpus_file, tmp_path):
    cfg = JobConfig(inputs=[str(corpus_file)],
                    emit=("biclosed", "diagram", "tikz", "svg"),
                    planarize=True, normalize=True)
    r1, r2 = run(cfg), run(cfg)
    assert r1.outputs.keys() == r2.outputs.keys()
    for key in r1.outputs:
        assert r1.outputs[key] == r2.outputs[key], key


def test_check_semantics_flag(corpus_file):
    cfg = JobConfig(inputs=[str(corpus_file)], emit=("diagram",),
                    planarize=True, normalize=True,
                    check_semantics="n=2,s=2,*=2", seed=17)
    report = run(cfg)
    assert report.failed == 0


def test_main_strict_exit_code(tmp_path, capsys):
    broken = json.loads(json.dumps(ALICE))
    broken["children"][0]["type"] = "S"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([broken]))
    assert main(["--in", str(path), "--strict"]) == 1
    assert main(["--in", str(path)]) == 0
    captured = capsys.readouterr()
    assert "failed 1" in captured.out


def test_main_writes_files(tmp_path, corpus_file):
    out = tmp_path / "artifacts"
    code = main(["--in", str(corpus_file), "--out-dir", str(out),
                 "--emit", "biclosed,diagram,tikz,svg,stats", "--planarize"])
    assert code == 0
    assert (out / "alice-likes-bob.biclosed").exists()
    assert (out / "alice-likes-bob.diagram.json").exists()
    assert (out / "np-shift.svg").exists()
    assert (out / "stats.tsv").exists()


def test_ccgbank_input(tmp_path):
    path = tmp_path / "bank.txt"
    path.write_text(
        "(BA S (LEX NP Alice) (FA S\\NP (LEX (S\\NP)/NP likes) (LEX NP Bob)))\n")
    report = run(JobConfig(inputs=[str(path)], fmt="ccgbank", emit=("stats",)))
    assert (report.total, report.converted) == (1, 1)


def test_atom_map_flag(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps(ALICE))
    code = main(["--in", str(path), "--out-dir", str(tmp_path / "o"),
                 "--emit", "diagram", "--atom-map", "NP=q"])
    assert code == 0
    payload = json.loads((tmp_path / "o" / "s0.diagram.json").read_text())
    bases = {w["base"] for w in payload["cod"]}
    assert bases == {"s"}
    layer_bases = {w["base"] for layer in payload["layers"]
                   for w in layer["gen"].get("cod", [])}
    assert "q" in layer_bases


def test_unknown_emit_rejected(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps(ALICE))
    with pytest.raises(ValueError):
        run(JobConfig(inputs=[str(path)], emit=("nope",)))


def test_parser_round(capsys):
    parser = build_parser()
    args = parser.parse_args(["--in", "x.json", "--emit", "diagram,stats"])
    assert args.inputs == ["x.json"]
