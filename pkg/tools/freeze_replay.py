"""Record the replay transcript fixture for translation runs.

Runs the fixture corpus through a deterministic mock backend with the
gateway cache pointed at the transcript path; the cache file format is
the transcript format. Replay-backend tests then serve these completions
without any backend logic in the loop.

Usage: python3 tools/freeze_replay.py
"""

from pathlib import Path

from cipherlang.gateway import Gateway, MockBackend
from cipherlang.runner import ExperimentConfig, prepare_materials, run_mt

REPO = Path(__file__).resolve().parent.parent
TRANSCRIPT = REPO / "fixtures" / "replay" / "mt-transcript.jsonl"

# Mirrored by the replay acceptance test; keep in sync.
REPLAY_STRATEGIES = ("only-input", "LELemMS")
REPLAY_SAMPLES = 20
REPLAY_SEED = 7


def build_config(workdir: Path) -> ExperimentConfig:
    return ExperimentConfig(
        language="spa",
        materials=REPO / "fixtures" / "spa-eng",
        seed=REPLAY_SEED,
        cl_name="Velsora",
        workdir=workdir,
        strategies=REPLAY_STRATEGIES,
        samples=REPLAY_SAMPLES,
    )


def main() -> None:
    import tempfile

    TRANSCRIPT.parent.mkdir(parents=True, exist_ok=True)
    if TRANSCRIPT.exists():
        TRANSCRIPT.unlink()
    with tempfile.TemporaryDirectory() as tmp:
        cfg = build_config(Path(tmp))
        prepared = prepare_materials(cfg)
        gateway = Gateway(
            MockBackend(policy="lexicon-gloss", lexicon=prepared.bundle.lexicon),
            cache_path=TRANSCRIPT,
        )
        records = run_mt(cfg, gateway=gateway, prepared=prepared)
    print(f"wrote {gateway.backend_calls} completions to {TRANSCRIPT}")
    print(f"covering {len(records)} run records")


if __name__ == "__main__":
    main()
