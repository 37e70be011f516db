"""Run-log ingestion and synthetic run generation.

A run log is a two-column CSV (`step,return`), one row per completed
episode, end steps strictly increasing. An optional sidecar with the same
basename and a `.meta.yaml` suffix carries the seed and config digest.
Non-monotone logs are rejected outright; they indicate upstream corruption
that silent sorting would hide.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._fmt import fmt_shortest
from ._yamlio import dump_canonical, load_strict
from .errors import DataError, ValidationError
from .rng import DOMAIN_SYNTH, SeededRng, derive_key, validate_seed
from . import backends

RUN_LOG_HEADER = "step,return"
META_SUFFIX = ".meta.yaml"


@dataclass(frozen=True)
class RunLog:
    run_id: str
    episodes: tuple  # ((end_step, episode_return), ...)
    seed: int = None
    config_hash: str = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        last = -1
        for step, _ in self.episodes:
            if step < 0:
                raise DataError(f"{self.run_id}: negative end step {step}")
            if step <= last:
                raise DataError(
                    f"{self.run_id}: end steps must be strictly increasing "
                    f"({last} then {step})"
                )
            last = step

    @property
    def returns(self):
        return np.array([r for _, r in self.episodes], dtype=np.float64)

    @property
    def end_steps(self):
        return np.array([s for s, _ in self.episodes], dtype=np.int64)


@dataclass(frozen=True)
class TrialSet:
    config: object
    runs: tuple
    exclusions_applied: bool
    exclusion_reasons: tuple = ()

    def __post_init__(self):
        if self.exclusions_applied:
            expected = self.config.run_count - len(self.config.excluded_runs)
            if len(self.runs) != expected:
                raise ValidationError(
                    f"trial set holds {len(self.runs)} runs, expected {expected} "
                    "after exclusions"
                )


def read_run_log(source, run_id: str) -> RunLog:
    """Parse one run-log stream; malformed rows are reported by line number."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    lines = text.splitlines()
    if not lines:
        raise DataError(f"{run_id}: empty run log")
    if lines[0].strip() != RUN_LOG_HEADER:
        raise DataError(
            f"{run_id}: line 1: header must be '{RUN_LOG_HEADER}', got {lines[0]!r}"
        )
    episodes = []
    for lineno, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped:
            continue
        parts = stripped.split(",")
        if len(parts) != 2:
            raise DataError(f"{run_id}: line {lineno}: expected 2 columns, got {len(parts)}")
        try:
            step = int(parts[0])
        except ValueError:
            raise DataError(f"{run_id}: line {lineno}: bad step {parts[0]!r}") from None
        try:
            ret = float(parts[1])
        except ValueError:
            raise DataError(f"{run_id}: line {lineno}: bad return {parts[1]!r}") from None
        if not math.isfinite(ret):
            raise DataError(f"{run_id}: line {lineno}: non-finite return")
        episodes.append((step, ret))
    if not episodes:
        raise DataError(f"{run_id}: run log has a header but no episodes")
    return RunLog(run_id=run_id, episodes=tuple(episodes))


def read_run_log_path(path) -> RunLog:
    """Read a run log file plus its optional .meta.yaml sidecar."""
    path = Path(path)
    run = read_run_log(path.read_text(encoding="utf-8"), run_id=path.stem)
    meta_path = path.with_name(path.stem + META_SUFFIX)
    if meta_path.exists():
        meta = load_strict(meta_path.read_text(encoding="utf-8"))
        if not isinstance(meta, dict):
            raise DataError(f"{meta_path}: sidecar must be a mapping")
        run = RunLog(
            run_id=run.run_id,
            episodes=run.episodes,
            seed=meta.get("seed"),
            config_hash=meta.get("config_hash"),
            metadata={k: v for k, v in meta.items() if k not in ("seed", "config_hash")},
        )
    return run


def write_run_log(run: RunLog, stream) -> None:
    """Emit the CSV form; numbers round-trip exactly."""
    stream.write(RUN_LOG_HEADER + "\n")
    for step, ret in run.episodes:
        stream.write(f"{step},{fmt_shortest(float(ret))}\n")


def apply_exclusions(runs, config) -> TrialSet:
    """Drop the config's excluded run indices, keeping the reasons."""
    runs = list(runs)
    if len(runs) != config.run_count:
        raise ValidationError(
            f"got {len(runs)} runs but config.run_count is {config.run_count}"
        )
    excluded = {e.index: e.reason for e in config.excluded_runs}
    for index in excluded:
        if not 0 <= index < len(runs):
            raise ValidationError(f"excluded index {index} out of range")
    kept = tuple(run for i, run in enumerate(runs) if i not in excluded)
    reasons = tuple(
        (index, excluded[index]) for index in sorted(excluded)
    )
    return TrialSet(
        config=config, runs=kept, exclusions_applied=True, exclusion_reasons=reasons
    )


@dataclass(frozen=True)
class SynthSpec:
    """Parametric per-run return trajectory for pipeline tests.

    The expected return ramps linearly from start_level to plateau_level
    over ramp_steps, then stays flat; per-episode noise is gaussian.
    """

    run_count: int
    total_steps: int
    episode_steps: int
    start_level: float = 0.0
    plateau_level: float = 100.0
    ramp_steps: int = 0
    noise_scale: float = 0.0
    step_hz: float = None
    episode_seconds: float = None

    def validate(self) -> "SynthSpec":
        if self.run_count < 1:
            raise ValidationError(f"run_count must be >= 1, got {self.run_count}")
        if self.total_steps < 1:
            raise ValidationError(f"total_steps must be >= 1, got {self.total_steps}")
        if self.episode_steps < 1:
            raise ValidationError(f"episode_steps must be >= 1, got {self.episode_steps}")
        if self.ramp_steps < 0:
            raise ValidationError(f"ramp_steps must be >= 0, got {self.ramp_steps}")
        if self.noise_scale < 0:
            raise ValidationError(f"noise_scale must be >= 0, got {self.noise_scale}")
        return self

    @classmethod
    def from_mapping(cls, doc: dict) -> "SynthSpec":
        if not isinstance(doc, dict):
            raise ValidationError("generator settings must be a mapping")
        known = {
            "run_count", "total_steps", "episode_steps", "start_level",
            "plateau_level", "ramp_steps", "noise_scale", "step_hz",
            "episode_seconds",
        }
        unknown = set(doc) - known
        if unknown:
            raise ValidationError(f"unknown generator keys: {sorted(unknown)}")
        doc = dict(doc)
        if "episode_steps" not in doc:
            hz = doc.get("step_hz")
            seconds = doc.get("episode_seconds")
            if hz is None or seconds is None:
                raise ValidationError(
                    "episode_steps is required (or derive it via step_hz and "
                    "episode_seconds)"
                )
            doc["episode_steps"] = int(round(hz * seconds))
        return cls(**doc).validate()

    def expected_level(self, step: int) -> float:
        if self.ramp_steps <= 0 or step >= self.ramp_steps:
            return self.plateau_level
        frac = step / self.ramp_steps
        return self.start_level + (self.plateau_level - self.start_level) * frac

    def episode_end_steps(self):
        return range(self.episode_steps, self.total_steps + 1, self.episode_steps)


def synthesize_runs(spec: SynthSpec, seed: int):
    """Deterministic synthetic run logs; run i draws from Philox stream i."""
    spec.validate()
    validate_seed(seed)
    key0, key1 = derive_key(seed)
    from .special import std_normal_quantile

    ends = list(spec.episode_end_steps())
    if not ends:
        raise ValidationError("total_steps shorter than one episode")
    runs = []
    n = len(ends)
    for i in range(spec.run_count):
        if spec.noise_scale > 0.0:
            nblocks = (2 * n + 3) // 4
            words = backends.philox_u32_blocks(key0, key1, DOMAIN_SYNTH, i, 0, nblocks)
            words = words.reshape(-1)[: 2 * n].astype(np.uint64)
            u64 = (words[0::2] << np.uint64(32)) | words[1::2]
            u = ((u64 >> np.uint64(12)).astype(np.float64) + 0.5) * 2.0**-52
            noise = spec.noise_scale * std_normal_quantile(u)
        else:
            noise = np.zeros(n)
        episodes = tuple(
            (step, spec.expected_level(step) + float(noise[j]))
            for j, step in enumerate(ends)
        )
        meta = {
            "generator": "linear-ramp",
            "stream": i,
            "episode_steps": spec.episode_steps,
        }
        if spec.step_hz is not None:
            meta["step_hz"] = spec.step_hz
        if spec.episode_seconds is not None:
            meta["episode_seconds"] = spec.episode_seconds
        runs.append(
            RunLog(run_id=f"synth-{i:02d}", episodes=episodes, seed=seed, metadata=meta)
        )
    return runs


def write_run_dir(runs, directory, config_hash=None) -> list:
    """Write run CSVs plus sidecars; returns the relative file names."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for run in runs:
        csv_path = directory / f"{run.run_id}.csv"
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            write_run_log(run, fh)
        written.append(csv_path.name)
        meta = dict(run.metadata)
        if run.seed is not None:
            meta = {"seed": run.seed, **meta}
        if config_hash is not None:
            meta["config_hash"] = config_hash
        if meta:
            meta_path = directory / f"{run.run_id}{META_SUFFIX}"
            meta_path.write_text(dump_canonical(meta), encoding="utf-8")
            written.append(meta_path.name)
    return written
