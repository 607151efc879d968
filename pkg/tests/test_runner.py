"""Experiment runner: config parsing, sampling, runs, record IO."""

import json
from pathlib import Path

import pytest

from conftest import FIXTURES, FIXTURE_CL_NAME, FIXTURE_SEED

from cipherlang.gateway import Gateway, MockBackend
from cipherlang.runner import (
    ConfigError,
    ExperimentConfig,
    LeakageError,
    ProbeRecord,
    RunRecord,
    TaskRecord,
    balanced_sample,
    build_gateway,
    derived_seed,
    format_task_item,
    load_config,
    load_task_items,
    map_path,
    parse_label,
    prepare_materials,
    read_records,
    run_mt,
    run_probe,
    run_task,
    score_mt,
    score_probe,
    score_tasks,
    write_records,
)

MATERIALS = FIXTURES / "spa-eng"


def make_config(tmp_path, **overrides):
    kwargs = dict(
        language="spa",
        materials=MATERIALS,
        seed=FIXTURE_SEED,
        cl_name=FIXTURE_CL_NAME,
        workdir=tmp_path / "run",
        backend="mock",
    )
    kwargs.update(overrides)
    return ExperimentConfig(**kwargs)


class TestConfig:
    def test_yaml_round_trip(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text(
            "language: spa\n"
            f"materials: {MATERIALS}\n"
            "direction: to-eng\n"
            "seed: 7\n"
            "cl_name: Velsora\n"
            "strategies: [only-input, LE]\n"
            "samples: 10\n"
            "sampling:\n"
            "  temperature: 0.2\n"
            "  max_tokens: 256\n"
            "mock:\n"
            "  policy: fixed-string\n"
            "  fixed_text: hello\n",
            encoding="utf-8",
        )
        cfg = load_config(path)
        assert cfg.language == "spa"
        assert cfg.strategies == ("only-input", "LE")
        assert cfg.samples == 10
        assert cfg.temperature == 0.2
        assert cfg.max_tokens == 256
        assert cfg.mock_policy == "fixed-string"
        assert cfg.mock_fixed_text == "hello"

    def test_overrides_win(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text(f"language: spa\nmaterials: {MATERIALS}\nseed: 1\n")
        cfg = load_config(path, seed=9, strategies=("L",))
        assert cfg.seed == 9
        assert cfg.strategies == ("L",)

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text(f"language: spa\nmaterials: {MATERIALS}\nstrateges: [L]\n")
        with pytest.raises(ConfigError, match="strateges"):
            load_config(path)

    def test_unknown_sampling_key_rejected(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text(
            f"language: spa\nmaterials: {MATERIALS}\nsampling:\n  temp: 1\n"
        )
        with pytest.raises(ConfigError, match="temp"):
            load_config(path)

    def test_missing_language_rejected(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text(f"materials: {MATERIALS}\n")
        with pytest.raises(ConfigError, match="language"):
            load_config(path)

    def test_bad_direction_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="direction"):
            make_config(tmp_path, direction="sideways")

    def test_bad_strategy_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="unknown strategy"):
            make_config(tmp_path, strategies=("warp",))

    def test_replay_needs_transcript(self, tmp_path):
        with pytest.raises(ConfigError, match="transcript"):
            make_config(tmp_path, backend="replay")

    def test_strategies_accept_comma_string(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text(
            f"language: spa\nmaterials: {MATERIALS}\nstrategies: only-input, L\n"
        )
        assert load_config(path).strategies == ("only-input", "L")


class TestSampling:
    def test_derived_seed_stable(self):
        assert derived_seed(7, "domain", "news") == derived_seed(7, "domain", "news")
        assert derived_seed(7, "domain", "news") != derived_seed(7, "domain", "social")
        assert derived_seed(7, "order") != derived_seed(8, "order")

    def test_balanced_subset_is_deterministic(self, spa_samples):
        a = balanced_sample(spa_samples, 12, 7)
        b = balanced_sample(spa_samples, 12, 7)
        assert [s.sample_id for s in a] == [s.sample_id for s in b]

    def test_balanced_subset_covers_domains_evenly(self, spa_samples):
        picked = balanced_sample(spa_samples, 12, 7)
        counts = {}
        for s in picked:
            counts[s.domain] = counts.get(s.domain, 0) + 1
        assert counts == {"news": 3, "social": 3, "literary": 3, "speech": 3}

    def test_uneven_quota_spreads_remainder(self, spa_samples):
        picked = balanced_sample(spa_samples, 10, 7)
        counts = {}
        for s in picked:
            counts[s.domain] = counts.get(s.domain, 0) + 1
        assert len(picked) == 10
        assert max(counts.values()) - min(counts.values()) <= 1

    def test_different_seed_changes_subset(self, spa_samples):
        a = [s.sample_id for s in balanced_sample(spa_samples, 12, 7)]
        b = [s.sample_id for s in balanced_sample(spa_samples, 12, 8)]
        assert a != b

    def test_full_corpus_passthrough(self, spa_samples):
        assert balanced_sample(spa_samples, None, 7) == list(spa_samples)
        assert balanced_sample(spa_samples, 999, 7) == list(spa_samples)


class TestPrepare:
    def test_writes_map_and_manifest(self, tmp_path):
        cfg = make_config(tmp_path)
        prepared = prepare_materials(cfg)
        assert map_path(cfg).exists()
        manifest = json.loads((tmp_path / "run" / "manifest.json").read_text())
        assert manifest["cl_name"] == FIXTURE_CL_NAME
        assert manifest["map_sha256"] == prepared.map.content_hash
        assert "testset.jsonl" in manifest["materials"]
        assert prepared.bundle.ciphered

    def test_rewrite_is_noop(self, tmp_path):
        cfg = make_config(tmp_path)
        prepare_materials(cfg)
        path = map_path(cfg)
        before = path.stat().st_mtime_ns
        prepare_materials(cfg)
        assert path.stat().st_mtime_ns == before

    def test_existing_map_reused(self, tmp_path):
        cfg = make_config(tmp_path)
        first = prepare_materials(cfg).map
        second = prepare_materials(cfg).map
        assert first.content_hash == second.content_hash

    def test_mismatched_map_rejected(self, tmp_path):
        cfg = make_config(tmp_path)
        prepare_materials(cfg)
        # A stale map for another seed must not be silently reused.
        other = make_config(tmp_path, seed=9)
        map_path(cfg).rename(map_path(other))
        with pytest.raises(ConfigError, match="seed"):
            prepare_materials(other)


class TestGatewayBuild:
    def test_live_requires_credentials(self, tmp_path, monkeypatch):
        monkeypatch.delenv("CIPHERLANG_API_KEY", raising=False)
        monkeypatch.delenv("CIPHERLANG_BASE_URL", raising=False)
        cfg = make_config(tmp_path, backend="live")
        with pytest.raises(ConfigError, match="base_url"):
            build_gateway(cfg)
        cfg = make_config(tmp_path, backend="live", base_url="http://example.test")
        with pytest.raises(ConfigError, match="CIPHERLANG_API_KEY"):
            build_gateway(cfg)

    def test_lookup_mock_reads_table(self, tmp_path):
        table = tmp_path / "table.json"
        table.write_text(json.dumps({"needle": "answer"}), encoding="utf-8")
        cfg = make_config(tmp_path, mock_policy="lookup", mock_lookup=table)
        gateway = build_gateway(cfg)
        from cipherlang.gateway import CompletionRequest

        record = gateway.complete(
            CompletionRequest(model_id="m", prompt="find the needle here")
        )
        assert record.text == "answer"

    def test_lexicon_gloss_mock_needs_bundle(self, tmp_path):
        cfg = make_config(tmp_path, mock_policy="lexicon-gloss")
        with pytest.raises(ConfigError, match="lexicon"):
            build_gateway(cfg)


class TestRunMt:
    def test_topline_keeps_plain_text(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("topline",), samples=3)
        records = run_mt(cfg)
        for r in records:
            # echo mock returns the input; topline input is plain Spanish
            assert r.input_text == r.raw_output
            assert "Velsora" not in r.input_text
            assert r.output_text == r.raw_output.strip()

    def test_ciphered_strategy_ciphers_input(self, tmp_path, spa_map):
        cfg = make_config(tmp_path, strategies=("only-input",), samples=3)
        records = run_mt(cfg)
        for r in records:
            assert spa_map.invert(r.input_text) != r.input_text

    def test_word_for_word_needs_no_backend(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("L-str",), samples=3)
        # No gateway is built: a backend misconfiguration cannot matter.
        records = run_mt(
            cfg, gateway=None
        )
        assert len(records) == 3
        for r in records:
            assert r.cache_key == ""
            assert r.prompt_sha256 == ""

    def test_from_english_output_is_deciphered(self, tmp_path, spa_map):
        # A lookup mock answers each English input with the ciphered source;
        # the runner must invert that completion back to plain text.
        cfg = make_config(
            tmp_path, direction="from-eng", strategies=("only-input",), samples=2
        )
        prepared = prepare_materials(cfg)
        lookup = {s.target: spa_map.apply(s.source) for s in prepared.samples}
        gateway = Gateway(MockBackend(policy="lookup", lookup=lookup))
        records = run_mt(cfg, gateway=gateway, prepared=prepared)
        by_id = {s.sample_id: s for s in prepared.samples}
        for r in records:
            assert r.input_text == by_id[r.sample_id].target
            assert r.output_text == by_id[r.sample_id].source
            assert r.reference == by_id[r.sample_id].source

    def test_same_subset_across_strategies(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("only-input", "LE"), samples=8)
        records = run_mt(cfg)
        ids = {}
        for r in records:
            ids.setdefault(r.strategy, []).append(r.sample_id)
        assert ids["only-input"] == ids["LE"]

    def test_exemplar_ids_recorded(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("LE",), samples=2)
        records = run_mt(cfg)
        for r in records:
            assert len(r.exemplar_ids) == 3
            assert all(isinstance(i, int) for i in r.exemplar_ids)

    def test_pivot_records_store_stage1(self, tmp_path):
        cfg = make_config(
            tmp_path,
            direction="from-eng",
            strategies=("CLcov-ELemMS",),
            samples=2,
            pivot_language="fra",
        )
        prepared = prepare_materials(cfg)
        gateway = Gateway(MockBackend(policy="echo-input"))
        records = run_mt(cfg, gateway=gateway, prepared=prepared)
        assert gateway.backend_calls == 4  # two stages per sample
        for r in records:
            assert r.metadata["pivot_text"]
            assert r.metadata["stage1_cache_key"] != r.cache_key

    def test_records_round_trip(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("only-input", "L-str"), samples=4)
        records = run_mt(cfg)
        path = tmp_path / "records.jsonl"
        write_records(path, records)
        assert read_records(path, RunRecord) == records

    def test_record_files_are_byte_stable(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("LE",), samples=4)
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        write_records(a, run_mt(cfg))
        write_records(b, run_mt(cfg))
        assert a.read_bytes() == b.read_bytes()


class TestTasks:
    def test_item_formatting(self, spa_map):
        item = {"premise": "El sol brilla.", "hypothesis": "Hay luz.", "label": 0}
        plain = format_task_item("nli", item)
        assert plain == "Premise: El sol brilla.\nHypothesis: Hay luz."
        ciphered = format_task_item("nli", item, spa_map)
        assert ciphered.startswith("Premise: ")
        assert "El sol" not in ciphered

    def test_mmlu_options_numbered_from_zero(self):
        item = {"question": "¿Qué es?", "options": ["uno", "dos", "tres", "cuatro"],
                "answer": 1}
        text = format_task_item("mmlu", item)
        assert "0. uno" in text and "3. cuatro" in text

    def test_unknown_task_rejected(self):
        with pytest.raises(ValueError, match="unknown task"):
            format_task_item("riddles", {})

    def test_parse_label(self):
        assert parse_label("2") == 2
        assert parse_label("The answer is 1.") == 1
        assert parse_label("  0\n") == 0
        assert parse_label("no digits here") is None

    def test_direct_gold_lookup_is_perfect(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("LE",))
        prepared = prepare_materials(cfg)
        lookup = {
            format_task_item("nli", item, prepared.map): str(item["label"])
            for item in load_task_items(MATERIALS, "nli")
        }
        gateway = Gateway(MockBackend(policy="lookup", lookup=lookup))
        records = run_task(cfg, "nli", gateway=gateway, prepared=prepared)
        assert len(records) == 12
        assert all(r.correct for r in records)

    def test_constant_answer_hits_chance_on_balanced_items(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("LE",))
        prepared = prepare_materials(cfg)
        gateway = Gateway(MockBackend(policy="fixed-string", fixed_text="1"))
        records = run_task(cfg, "nli", gateway=gateway, prepared=prepared)
        accuracy = sum(r.correct for r in records) / len(records)
        assert accuracy == pytest.approx(1 / 3)

    def test_cascade_is_two_requests_per_item(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("LE",))
        prepared = prepare_materials(cfg)
        items = load_task_items(MATERIALS, "nli")
        # Distinct stage-one translations keep stage-two prompts distinct,
        # so backend calls are countable: exactly two per item.
        lookup = {}
        for i, item in enumerate(items):
            ciphered = format_task_item("nli", item, prepared.map)
            lookup[ciphered] = f"translation {i} of the premise"
            lookup[f"translation {i} of the premise"] = str(item["label"])
        gateway = Gateway(MockBackend(policy="lookup", lookup=lookup))
        records = run_task(cfg, "nli", mode="cascade", gateway=gateway, prepared=prepared)
        assert gateway.backend_calls == 2 * len(items)
        assert all(r.correct for r in records)
        assert all(r.metadata["translation"].startswith("translation") for r in records)

    def test_task_limit_truncates_deterministically(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("LE",))
        prepared = prepare_materials(cfg)
        gateway = Gateway(MockBackend(policy="fixed-string", fixed_text="0"))
        a = run_task(cfg, "nli", limit=5, gateway=gateway, prepared=prepared)
        b = run_task(cfg, "nli", limit=5, gateway=gateway, prepared=prepared)
        assert [r.item_id for r in a] == [r.item_id for r in b]
        assert len(a) == 5

    def test_storycloze_and_mmlu_run(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("only-input",))
        prepared = prepare_materials(cfg)
        gateway = Gateway(MockBackend(policy="fixed-string", fixed_text="0"))
        for task, n in (("mmlu", 8), ("storycloze", 8)):
            records = run_task(cfg, task, gateway=gateway, prepared=prepared)
            assert len(records) == n
            assert all(r.task == task for r in records)

    def test_word_for_word_cannot_drive_tasks(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("L-str",))
        with pytest.raises(ConfigError, match="cannot drive"):
            run_task(cfg, "nli")

    def test_task_records_round_trip(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("LE",))
        prepared = prepare_materials(cfg)
        gateway = Gateway(MockBackend(policy="fixed-string", fixed_text="2"))
        records = run_task(cfg, "nli", gateway=gateway, prepared=prepared)
        path = tmp_path / "task.jsonl"
        write_records(path, records)
        assert read_records(path, TaskRecord) == records


class TestProbe:
    def test_probe_records(self, tmp_path):
        cfg = make_config(
            tmp_path,
            mock_policy="fixed-string",
            mock_fixed_text=(
                "Language: Spanish\nCipher: substitution\n"
                "Deciphered: some guess\nTranslation: some text"
            ),
            probe_samples=4,
        )
        records = run_probe(cfg)
        assert len(records) == 4
        for r in records:
            assert r.parse_ok
            assert r.language_guess == "Spanish"
            assert r.deciphered == "some guess"
            assert r.plain_source and r.plain_source != r.input_text

    def test_probe_requires_to_english(self, tmp_path):
        cfg = make_config(tmp_path, direction="from-eng", probe_samples=2)
        with pytest.raises(ConfigError, match="to-English"):
            run_probe(cfg)

    def test_probe_round_trip(self, tmp_path):
        cfg = make_config(tmp_path, probe_samples=3)
        records = run_probe(cfg)
        path = tmp_path / "probe.jsonl"
        write_records(path, records)
        assert read_records(path, ProbeRecord) == records

    def test_leak_is_fatal(self, tmp_path):
        cfg = make_config(tmp_path, probe_samples=2)
        prepared = prepare_materials(cfg)

        class IdentityMap:
            # "ciphering" that leaks the plain source verbatim
            def apply(self, text):
                return text

        prepared.map = IdentityMap()
        with pytest.raises(LeakageError, match="leaks"):
            run_probe(cfg, prepared=prepared)


class TestScoring:
    def test_score_mt_shapes(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("L-str",), samples=3)
        scored = score_mt(run_mt(cfg))
        assert len(scored) == 3
        for s in scored:
            assert set(s.scores) == {"chrf", "bleu"}
            assert s.strategy == "L-str"
            assert s.domain

    def test_score_tasks_accuracy(self, tmp_path):
        cfg = make_config(tmp_path, strategies=("LE",))
        prepared = prepare_materials(cfg)
        gateway = Gateway(MockBackend(policy="fixed-string", fixed_text="1"))
        records = run_task(cfg, "nli", gateway=gateway, prepared=prepared)
        scored = score_tasks(records)
        values = {s.scores["accuracy"] for s in scored}
        assert values <= {0.0, 1.0}
        assert all(s.strategy == "LE:nli:direct" for s in scored)

    def test_score_probe_metrics(self, tmp_path):
        cfg = make_config(
            tmp_path,
            mock_policy="fixed-string",
            mock_fixed_text="Deciphered: unrelated words only",
            probe_samples=2,
        )
        scored = score_probe(run_probe(cfg))
        for s in scored:
            assert s.scores["decipher_bleu"] < 5.0
            assert "translation_chrf" in s.scores
