"""Batch jobs: one file in, schema-exact files out."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import annotate, score

JOB_KINDS = ("annotate", "score")


@dataclass(frozen=True)
class SidecarJob:
    kind: str
    input_path: Path
    output_path: Path          # directory for annotate, file for score
    language: str = ""
    engine: str = "auto"

    def __post_init__(self):
        if self.kind not in JOB_KINDS:
            raise ValueError(f"unknown job kind {self.kind!r}")
        if self.kind == "annotate" and not self.language:
            raise ValueError("annotate jobs need a language")


def run_job(job: SidecarJob) -> dict:
    if job.kind == "annotate":
        return annotate.run(job.input_path, job.language, job.output_path,
                            engine=job.engine)
    return score.run(job.input_path, job.output_path, engine=job.engine)
