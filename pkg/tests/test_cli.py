"""Command-line interface: subcommands, overrides, exit codes."""

import json

import pytest

from conftest import FIXTURES, FIXTURE_CL_NAME, FIXTURE_SEED

from cipherlang.cli import main

MATERIALS = FIXTURES / "spa-eng"


def write_config(tmp_path, **extra):
    lines = [
        "language: spa",
        f"materials: {MATERIALS}",
        f"seed: {FIXTURE_SEED}",
        f"cl_name: {FIXTURE_CL_NAME}",
        f"workdir: {tmp_path / 'run'}",
        "backend: mock",
    ]
    for key, value in extra.items():
        lines.append(f"{key}: {value}")
    path = tmp_path / "exp.yaml"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestCipherCommand:
    def test_round_trip_through_flags(self, capsys):
        text = "El ministro anunció un plan nuevo."
        assert main(["cipher", "--language", "spa", "--seed", "7",
                     "--cl-name", "Velsora", "--apply", text]) == 0
        ciphered = capsys.readouterr().out.rstrip("\n")
        assert ciphered != text
        assert main(["cipher", "--language", "spa", "--seed", "7",
                     "--cl-name", "Velsora", "--invert", ciphered]) == 0
        assert capsys.readouterr().out.rstrip("\n") == text

    def test_summary_output(self, capsys):
        assert main(["cipher", "--language", "spa", "--seed", "7"]) == 0
        out = capsys.readouterr().out
        assert "language: spa" in out
        assert "sha256:" in out

    def test_save_and_load(self, tmp_path, capsys):
        path = tmp_path / "map.txt"
        assert main(["cipher", "--language", "spa", "--seed", "7",
                     "--save", str(path)]) == 0
        capsys.readouterr()
        assert main(["cipher", "--map", str(path), "--apply", "hola"]) == 0
        assert capsys.readouterr().out.strip()

    def test_missing_language_is_usage_error(self, capsys):
        assert main(["cipher", "--apply", "hola"]) == 2
        assert "language" in capsys.readouterr().err


class TestRunCommands:
    def test_prepare(self, tmp_path, capsys):
        cfg = write_config(tmp_path)
        assert main(["prepare", "--config", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert "samples: 50" in out
        assert (tmp_path / "run" / "manifest.json").exists()

    def test_run_mt_writes_records(self, tmp_path, capsys):
        cfg = write_config(tmp_path, strategies="[only-input, L-str]", samples=4)
        out_path = tmp_path / "records.jsonl"
        assert main(["run-mt", "--config", str(cfg), "--out", str(out_path)]) == 0
        lines = out_path.read_text().splitlines()
        assert len(lines) == 8
        record = json.loads(lines[0])
        assert record["strategy"] in ("only-input", "L-str")

    def test_run_mt_dry_run_calls_nothing(self, tmp_path, capsys):
        cfg = write_config(tmp_path, strategies="[LE]", samples=3)
        assert main(["run-mt", "--config", str(cfg), "--dry-run"]) == 0
        out = capsys.readouterr().out
        assert "no backend calls" in out
        assert not (tmp_path / "run" / "records-mt.jsonl").exists()

    def test_cli_overrides(self, tmp_path):
        cfg = write_config(tmp_path, strategies="[LE]", samples=10)
        out_path = tmp_path / "records.jsonl"
        assert main(["run-mt", "--config", str(cfg), "--samples", "2",
                     "--strategies", "L-str", "--out", str(out_path)]) == 0
        lines = out_path.read_text().splitlines()
        assert len(lines) == 2
        assert json.loads(lines[0])["strategy"] == "L-str"

    def test_run_task_and_score_and_report(self, tmp_path, capsys):
        cfg = write_config(tmp_path, strategies="[LE]")
        records = tmp_path / "nli.jsonl"
        assert main(["run-task", "--config", str(cfg), "--task", "nli",
                     "--out", str(records)]) == 0
        scores = tmp_path / "nli.scores.jsonl"
        assert main(["score", "--records", str(records), "--kind", "task",
                     "--out", str(scores)]) == 0
        report = tmp_path / "report.tsv"
        assert main(["report", "--scores", str(scores), "--out", str(report)]) == 0
        text = report.read_text()
        assert "accuracy" in text
        assert "(all)" in text
        # every task record is domain-less, so there is exactly one row
        rows = [line for line in text.splitlines()[1:] if line]
        assert len(rows) == 1
        assert rows[0].split("\t")[3] == "12"

    def test_report_merges_repeated_scores_flags(self, tmp_path):
        cfg = write_config(tmp_path, strategies="[LE]")
        mt_records = tmp_path / "mt.jsonl"
        assert main(["run-mt", "--config", str(cfg), "--samples", "2",
                     "--out", str(mt_records)]) == 0
        mt_scores = tmp_path / "mt.scores.jsonl"
        assert main(["score", "--records", str(mt_records), "--kind", "mt",
                     "--out", str(mt_scores)]) == 0
        task_records = tmp_path / "nli.jsonl"
        assert main(["run-task", "--config", str(cfg), "--task", "nli",
                     "--out", str(task_records)]) == 0
        task_scores = tmp_path / "nli.scores.jsonl"
        assert main(["score", "--records", str(task_records), "--kind", "task",
                     "--out", str(task_scores)]) == 0
        report = tmp_path / "report.tsv"
        assert main(["report", "--scores", str(mt_scores),
                     "--scores", str(task_scores), "--out", str(report)]) == 0
        text = report.read_text()
        assert "LE\t" in text
        assert "LE:nli:direct" in text

    def test_probe_dry_run_reports_clean(self, tmp_path, capsys):
        cfg = write_config(tmp_path, probe="{samples: 3}")
        assert main(["probe", "--config", str(cfg), "--dry-run"]) == 0
        out = capsys.readouterr().out
        assert out.count("clean") == 3

    def test_probe_writes_records(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            probe="{samples: 2}",
            mock="{policy: fixed-string, fixed_text: 'Translation: hi'}",
        )
        out_path = tmp_path / "probe.jsonl"
        assert main(["probe", "--config", str(cfg), "--out", str(out_path)]) == 0
        lines = out_path.read_text().splitlines()
        assert len(lines) == 2
        assert json.loads(lines[0])["translation"] == "hi"


class TestExitCodes:
    def test_bad_config_is_2(self, tmp_path, capsys):
        path = tmp_path / "exp.yaml"
        path.write_text(f"language: spa\nmaterials: {MATERIALS}\nbogus: 1\n")
        assert main(["prepare", "--config", str(path)]) == 2
        assert "config error" in capsys.readouterr().err

    def test_missing_materials_is_1(self, tmp_path, capsys):
        path = tmp_path / "exp.yaml"
        path.write_text(f"language: spa\nmaterials: {tmp_path / 'nowhere'}\n"
                        f"workdir: {tmp_path / 'run'}\n")
        assert main(["prepare", "--config", str(path)]) == 1
        assert "error" in capsys.readouterr().err

    def test_replay_miss_is_1(self, tmp_path, capsys):
        transcript = tmp_path / "transcript.jsonl"
        transcript.write_text("")
        cfg = write_config(
            tmp_path, backend="replay", transcript=str(transcript),
            strategies="[only-input]", samples=1,
        )
        assert main(["run-mt", "--config", str(cfg)]) == 1
        assert "error" in capsys.readouterr().err

    def test_unknown_subcommand_is_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 2
