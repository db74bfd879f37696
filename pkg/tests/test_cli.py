"""Command-line interface: flags, config precedence, exit codes, outputs."""

from __future__ import annotations

import json

import pytest

from evoman.cli import main
from evoman.controllers import parameter_count, read_genome
from evoman.evaluation import GainReport, harmonic_mean, report_to_json
from evoman.replay import record_match, save_replay
from evoman.controllers import ScriptedController
from evoman.state import ActionSet, MatchConfig


def _write_config(tmp_path, match=None, evolution=None, name="cfg.json"):
    path = tmp_path / name
    doc = {}
    if match is not None:
        doc["match"] = match
    if evolution is not None:
        doc["evolution"] = evolution
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


FAST_MATCH = {"max_ticks": 100}
FAST_EVO = {"population_size": 4, "generations": 1, "tournament_k": 2, "seed": 9}


def test_train_writes_decodable_genome(tmp_path):
    cfg = _write_config(tmp_path, FAST_MATCH, FAST_EVO)
    out = tmp_path / "run"
    rc = main(["train", "--mode", "generalist", "--bosses", "1,2,3,4",
               "--hidden", "10", "--config", str(cfg), "--out", str(out)])
    assert rc == 0
    g = read_genome(out / "genome.json")
    assert len(g.weights) == parameter_count(g.topology) == 265
    assert (out / "history.jsonl").exists()
    assert (out / "history.png").exists()


def test_train_zero_generations_single_record(tmp_path):
    cfg = _write_config(tmp_path, FAST_MATCH, FAST_EVO)
    out = tmp_path / "run"
    rc = main(["train", "--mode", "individual", "--bosses", "3", "--hidden", "0",
               "--gens", "0", "--config", str(cfg), "--out", str(out)])
    assert rc == 0
    lines = (out / "history.jsonl").read_text().strip().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["generation"] == 0


def test_train_deterministic_byte_identical(tmp_path):
    cfg = _write_config(tmp_path, FAST_MATCH, FAST_EVO)
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        rc = main(["train", "--mode", "individual", "--bosses", "2", "--hidden", "0",
                   "--config", str(cfg), "--out", str(out)])
        assert rc == 0
        outs.append((out / "genome.json").read_bytes())
    assert outs[0] == outs[1]
    h = [(tmp_path / n / "history.jsonl").read_bytes() for n in ("a", "b")]
    assert h[0] == h[1]


def test_train_rejects_bad_training_set(tmp_path):
    out = tmp_path / "x"
    rc = main(["train", "--bosses", "1,2,9", "--out", str(out)])
    assert rc == 2


def test_train_rejects_unknown_config_key(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"evolution": {"mutation_rat": 0.5}}', encoding="utf-8")
    rc = main(["train", "--bosses", "1", "--mode", "individual",
               "--config", str(bad), "--out", str(tmp_path / "y")])
    assert rc == 2


def test_config_env_var(tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text('{"nonsense": 1}', encoding="utf-8")
    monkeypatch.setenv("EVOMAN_CONFIG", str(bad))
    rc = main(["train", "--bosses", "1", "--mode", "individual",
               "--out", str(tmp_path / "z")])
    assert rc == 2


def test_config_precedence_flags_beat_file(tmp_path):
    # file says 2 generations; the flag forces 0; defaults fill the rest
    cfg = _write_config(tmp_path, FAST_MATCH,
                        {**FAST_EVO, "generations": 2})
    out_file = tmp_path / "file"
    rc = main(["train", "--mode", "individual", "--bosses", "1", "--hidden", "0",
               "--config", str(cfg), "--out", str(out_file)])
    assert rc == 0
    assert len((out_file / "history.jsonl").read_text().strip().splitlines()) == 3

    out_flag = tmp_path / "flag"
    rc = main(["train", "--mode", "individual", "--bosses", "1", "--hidden", "0",
               "--gens", "0", "--config", str(cfg), "--out", str(out_flag)])
    assert rc == 0
    assert len((out_flag / "history.jsonl").read_text().strip().splitlines()) == 1


def _train_quick_genome(tmp_path):
    cfg = _write_config(tmp_path, FAST_MATCH, FAST_EVO)
    out = tmp_path / "agent"
    assert main(["train", "--mode", "individual", "--bosses", "3", "--hidden", "0",
                 "--gens", "0", "--config", str(cfg), "--out", str(out)]) == 0
    return cfg, out / "genome.json"


def test_eval_prints_table_and_writes_report(tmp_path, capsys):
    cfg, genome = _train_quick_genome(tmp_path)
    report_path = tmp_path / "report.json"
    rc = main(["eval", "--genome", str(genome), "--config", str(cfg),
               "--out", str(report_path), "--name", "smoke"])
    assert rc == 0
    out = capsys.readouterr().out
    lines = [l for l in out.splitlines() if l.strip()]
    boss_rows = [l for l in lines if l.split() and l.split()[0].isdigit()]
    assert len(boss_rows) == 8
    mean_row = next(l for l in lines if l.startswith("Mean") or " Mean" in l)
    printed = [float(r.split()[1]) for r in boss_rows]
    assert float(mean_row.split()[1]) == pytest.approx(
        harmonic_mean(printed), abs=0.005)
    doc = json.loads(report_path.read_text())
    assert doc["agent_name"] == "smoke"
    assert len(doc["per_boss"]) == 8


def test_eval_deterministic(tmp_path, capsys):
    cfg, genome = _train_quick_genome(tmp_path)
    capsys.readouterr()  # drop the training output
    assert main(["eval", "--genome", str(genome), "--config", str(cfg)]) == 0
    first = capsys.readouterr().out
    assert main(["eval", "--genome", str(genome), "--config", str(cfg)]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_eval_unreadable_genome_exits_2(tmp_path):
    rc = main(["eval", "--genome", str(tmp_path / "missing.json")])
    assert rc == 2


def test_replay_verify_and_tamper(tmp_path, capsys):
    cfg_path = _write_config(tmp_path, FAST_MATCH, None)
    match_cfg = MatchConfig(max_ticks=100)
    _, rep = record_match(ScriptedController([ActionSet(shoot=True)] * 100),
                          3, match_cfg, seed=5)
    good = tmp_path / "good.evr"
    save_replay(rep, good)
    rc = main(["replay", "verify", str(good), "--config", str(cfg_path)])
    assert rc == 0
    assert "Verified" in capsys.readouterr().out

    text = good.read_text().splitlines()
    tick, bits = text[10].split()
    text[10] = f"{tick} {'1' if bits[0] == '0' else '0'}{bits[1:]}"
    bad = tmp_path / "bad.evr"
    bad.write_text("\n".join(text) + "\n", encoding="utf-8")
    rc = main(["replay", "verify", str(bad), "--config", str(cfg_path)])
    assert rc == 1


def test_replay_corrupt_file_exits_1(tmp_path):
    garbage = tmp_path / "junk.evr"
    garbage.write_text("evr1 nope\n", encoding="utf-8")
    assert main(["replay", "verify", str(garbage)]) == 1


def test_replay_export_json(tmp_path):
    match_cfg = MatchConfig(max_ticks=30)
    cfg_path = _write_config(tmp_path, {"max_ticks": 30}, None)
    _, rep = record_match(ScriptedController([]), 1, match_cfg, seed=2)
    path = tmp_path / "m.evr"
    save_replay(rep, path)
    rc = main(["replay", "export-json", str(path), "--config", str(cfg_path)])
    assert rc == 0
    doc = json.loads((tmp_path / "m.json").read_text())
    assert doc["boss_id"] == 1 and len(doc["actions"]) == 30


def test_report_merges_columns(tmp_path, capsys):
    gains_a = [190.01, 194.01, 180.01, 194.01, 194.01, 173.01, 177.01, 186.01]
    gains_b = [0.01, 190.01, 124.01, 73.01, 178.01, 139.01, 186.01, 0.01]
    for name, gains in (("alpha", gains_a), ("beta", gains_b)):
        r = GainReport(name, tuple(gains), (0,) * 8, 1, harmonic_mean(gains))
        (tmp_path / f"{name}.json").write_text(report_to_json(r), encoding="utf-8")
    out_dir = tmp_path / "merged"
    rc = main(["report", "--inputs", str(tmp_path / "alpha.json"),
               str(tmp_path / "beta.json"), "--out-dir", str(out_dir)])
    assert rc == 0
    out = capsys.readouterr().out
    mean_row = next(l for l in out.splitlines() if l.strip().startswith("Mean"))
    cells = mean_row.split()
    assert float(cells[1]) == pytest.approx(harmonic_mean(gains_a), abs=0.02)
    assert float(cells[2]) == pytest.approx(harmonic_mean(gains_b), abs=0.02)
    assert (out_dir / "report.csv").exists()
    assert (out_dir / "gains.png").exists()
    csv_lines = (out_dir / "report.csv").read_text().strip().splitlines()
    assert csv_lines[0] == "boss,alpha,beta"
    assert len(csv_lines) == 10


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
