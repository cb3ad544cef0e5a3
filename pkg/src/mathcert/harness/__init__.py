"""Problem registry, evaluation dispatch and the command-line interface."""

from importlib import resources
from pathlib import Path

from .manifest import ManifestError, ProblemManifest, canonical_json, load_json, load_manifest, load_registry
from .prompt import render_prompt, truncate_significant
from .runner import BatchResult, RunOptions, batch_run, run_verification


def shipped_manifest_dir() -> Path:
    return Path(str(resources.files("mathcert") / "data" / "manifests"))


def shipped_candidate_dir() -> Path:
    return Path(str(resources.files("mathcert") / "data" / "candidates"))


__all__ = [
    "BatchResult", "ManifestError", "ProblemManifest", "RunOptions", "batch_run", "canonical_json",
    "load_json", "load_manifest", "load_registry", "render_prompt", "run_verification",
    "shipped_candidate_dir", "shipped_manifest_dir", "truncate_significant",
]
