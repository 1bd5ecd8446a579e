import json

import pytest

from phonoblocks.cli import main


@pytest.fixture(scope="module")
def artifacts(lexicon, tmp_path_factory):
    out = tmp_path_factory.mktemp("artifacts")
    lexicon.save_artifacts(out)
    return str(out)


def test_render_cli(artifacts, capsys):
    main(["render", "--phonemes", "T R AH K", "--artifacts", artifacts])
    out = json.loads(capsys.readouterr().out)
    assert out["chunks"] == ["T", "R", "U", "CK"]
    assert out["word"] == "TRUCK"


def test_pronounce_cli(artifacts, capsys):
    main(["pronounce", "--word", "BUT", "--artifacts", artifacts])
    out = json.loads(capsys.readouterr().out)
    assert out["phonemes"] == ["B", "AH", "T"]


def test_interpret_cli(artifacts, capsys):
    main(["interpret", "--letters", "FES", "--top", "3",
          "--artifacts", artifacts])
    out = json.loads(capsys.readouterr().out)
    assert "FISH" in [r["word"] for r in out]


def test_scaffold_sim_cli(artifacts, capsys):
    main(["scaffold-sim", "--word", "CAT", "--knowledge", "1.0",
          "--seed", "3", "--json", "--artifacts", artifacts])
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert len(lines) == 3
    kinds = [e["kind"] for line in lines for e in line["events"]]
    assert kinds.count("place") == 3


def test_layout_cli(capsys):
    main(["layout", "--grid", "8x6", "--method", "classical", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert len(out["cells"]) == 39
    assert out["rows"] == 8 and out["cols"] == 6


def test_minigame_sim_descriptives_fit_fractions(tmp_path, capsys):
    trials = tmp_path / "trials.jsonl"
    main(["minigame-sim", "--children", "8", "--seed", "3",
          "--replicates", "2", "--out", str(trials)])
    capsys.readouterr()
    assert len(trials.read_text().splitlines()) == 8 * 10 * 2 * 2

    main(["descriptives", "--in", str(trials)])
    text = capsys.readouterr().out
    assert "Errors per child (letter)" in text

    fitcsv = tmp_path / "fit.csv"
    main(["fit", "--model", "errors", "--in", str(trials),
          "--chains", "2", "--iters", "80", "--warmup", "40",
          "--seed", "1", "--out", str(fitcsv)])
    captured = capsys.readouterr()
    assert "rhat[bCond]" in captured.err
    header = fitcsv.read_text().splitlines()[0]
    assert header.split(",")[:2] == ["b0", "bCond"]

    main(["fractions", "--fit", str(fitcsv), "--model", "errors",
          "--M", "2000", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert [r["label"] for r in out["rows"]][0] == "less errors"


def test_build_lexicon_cli_small(tmp_path, capsys):
    dict_file = tmp_path / "tiny.dict"
    dict_file.write_text("CAT  K AE1 T\nAT  AE1 T\nTAT  T AE1 T\n")
    out_dir = tmp_path / "art"
    main(["build-lexicon", "--dict", str(dict_file), "--out", str(out_dir)])
    assert (out_dir / "alignment_model.json").exists()
    assert (out_dir / "pair_table.tsv").exists()
    assert (out_dir / "creatures.json").exists()
    text = capsys.readouterr().out
    assert "built lexicon" in text
