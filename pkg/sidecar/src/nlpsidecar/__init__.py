"""Batch NLP sidecar: annotation and quality-score files for cipherlang.

Everything is file-in, file-out. The heavy engines (stanza tagging, the
neural quality metric) are optional extras; deterministic rule-based
engines stand in when they are absent, so the output formats are always
producible offline.
"""

from .jobs import SidecarJob, run_job

__all__ = ["SidecarJob", "run_job"]
