"""Monte-Carlo experiment runner with reproducible CSV output.

Each trial samples a fresh lattice (noise re-drawn from the trial's derived
seed), runs the selected mappers and records one row per (benchmark point,
lattice size, trial, mapper).  All mappers are deterministic, so the noise
resampling is the only source of variation between trials.

Seed derivation is a splitmix64 finalizer over ``master + (trial + 1) *
0x9E3779B97F4A7C15`` -- fixed constants, so runs are portable.  Row order is
a deterministic sort, which makes ``trials.csv`` byte-identical across runs
and across worker counts (timing is written as 0 unless ``record_timing``
is set, since measured wall time is inherently non-reproducible).
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .benchmarks import BenchmarkSpec, load_realistic
from .graphs import InteractionGraph, NoiseScaling, NoiseSpec, make_lattice
from .mappers import (
    DEFAULT_PLACEMENT_LIMIT,
    MAPPER_IDS,
    SearchSpaceTooLargeError,
    TooManyQubitsError,
    run_mapper,
)
from .metric import swap_edge_count


class ConfigError(ValueError):
    """Experiment configuration is invalid."""


class MissingMapperError(ValueError):
    """A sweep summary lacks the heuristic or trivial mapper."""


_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

TRIALS_COLUMNS = [
    "benchmark",
    "family_params",
    "n",
    "trial",
    "mapper",
    "status",
    "sigma_s",
    "sigma_d",
    "sigma_sw",
    "sigma_total",
    "swap_edges",
    "elapsed_ms",
]

SUMMARY_COLUMNS = [
    "benchmark",
    "family_params",
    "n",
    "mapper",
    "trials",
    "mean_sigma_s",
    "mean_sigma_d",
    "mean_sigma_sw",
    "mean_sigma_total",
    "std_sigma_total",
    "mean_swap_edges",
    "occupancy",
    "sigma_diff",
]


def derive_seed(master: int, trial: int) -> int:
    """Deterministic 64-bit trial seed (splitmix64 finalizer)."""
    z = (master + (trial + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@dataclass(frozen=True)
class TrialRecord:
    """One CSV row: a mapper's result on one sampled lattice."""

    benchmark: str
    family_params: str
    n: int
    trial: int
    mapper: str
    status: str
    sigma_s: float | None
    sigma_d: float | None
    sigma_sw: float | None
    sigma_total: float | None
    swap_edges: int | None
    elapsed_ms: float


@dataclass(frozen=True)
class SummaryRow:
    """Aggregates over the successful trials of one (point, mapper) pair."""

    benchmark: str
    family_params: str
    n: int
    mapper: str
    trials: int
    mean_sigma_s: float
    mean_sigma_d: float
    mean_sigma_sw: float
    mean_sigma_total: float
    std_sigma_total: float
    mean_swap_edges: float
    occupancy: float
    sigma_diff: float | None


@dataclass
class ExperimentConfig:
    benchmarks: list[BenchmarkSpec]
    lattice_sizes: list[int]
    noise: NoiseSpec
    trials: int
    mappers: list[str]
    seed: int
    output: Path
    workers: int = 1
    brute_force_limit: int = DEFAULT_PLACEMENT_LIMIT
    include_measurement: bool = False
    record_timing: bool = False

    def __post_init__(self):
        if not self.benchmarks:
            raise ConfigError("at least one benchmark is required")
        if not self.lattice_sizes or any(n < 1 for n in self.lattice_sizes):
            raise ConfigError("lattice sizes must be positive")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if not self.mappers:
            raise ConfigError("at least one mapper is required")
        for m in self.mappers:
            if m not in MAPPER_IDS:
                raise ConfigError(f"unknown mapper {m!r}; expected one of {MAPPER_IDS}")
        if self.workers < 1:
            raise ConfigError("workers must be positive")
        self.output = Path(self.output)


def _parse_scaling(obj) -> NoiseScaling | None:
    if obj is None or obj == "none":
        return None
    if isinstance(obj, dict):
        if "uniform_factor" in obj:
            return NoiseScaling.uniform(float(obj["uniform_factor"]))
        if "exponential_base" in obj:
            return NoiseScaling.exponential(float(obj["exponential_base"]))
    raise ConfigError(
        "scaling must be 'none', {'uniform_factor': f} or {'exponential_base': b}"
    )


def _parse_noise(obj) -> NoiseSpec:
    if obj is None:
        return NoiseSpec()
    if not isinstance(obj, dict):
        raise ConfigError("noise must be an object")
    kwargs = {}
    for key in ("single_range", "two_range", "measure_range"):
        if key in obj:
            lo, hi = obj[key]
            kwargs[key] = (float(lo), float(hi))
    if "scaling" in obj:
        kwargs["scaling"] = _parse_scaling(obj["scaling"])
    if "seed" in obj:
        kwargs["seed"] = int(obj["seed"])
    return NoiseSpec(**kwargs)


def _expand_range(value) -> list[int]:
    if isinstance(value, int):
        return [value]
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value):
        lo, hi = value
        if lo > hi:
            raise ConfigError(f"range [{lo}, {hi}] is empty")
        return list(range(lo, hi + 1))
    if isinstance(value, list):
        return [int(v) for v in value]
    raise ConfigError(f"expected an integer, [lo, hi] range or list, got {value!r}")


def _parse_benchmark(obj) -> list[BenchmarkSpec]:
    if isinstance(obj, list):
        out = []
        for entry in obj:
            out.extend(_parse_benchmark(entry))
        return out
    if not isinstance(obj, dict) or "family" not in obj:
        raise ConfigError("each benchmark needs a 'family' key")
    family = obj["family"]
    mult = int(obj.get("depth_multiplier", 1))
    try:
        if family == "linear":
            return [
                BenchmarkSpec("linear", r=r, depth_multiplier=mult)
                for r in _expand_range(obj["r"])
            ]
        if family in ("sequence_i", "sequence_ii"):
            return [
                BenchmarkSpec(family, s=int(obj["s"]), k=k, depth_multiplier=mult)
                for k in _expand_range(obj["k"])
            ]
        if family == "realistic":
            names = obj["name"] if isinstance(obj["name"], list) else [obj["name"]]
            return [
                BenchmarkSpec("realistic", name=str(n), depth_multiplier=mult)
                for n in names
            ]
    except KeyError as exc:
        raise ConfigError(f"benchmark family {family!r} is missing key {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown benchmark family {family!r}")


def load_config(source: dict | str | Path) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from a JSON document or file.

    Recognized keys: ``benchmark`` (object or list; ``r``/``k`` may be a
    [lo, hi] range), ``lattice_n`` (integer, [lo, hi] range or list),
    ``noise``, ``trials``, ``mappers``, ``seed``, ``output`` plus the
    optional ``workers``, ``brute_force_limit``, ``include_measurement``
    and ``record_timing``.
    """
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            obj = json.load(fh)
    else:
        obj = source
    try:
        benchmarks = _parse_benchmark(obj["benchmark"])
        lattice_sizes = _expand_range(obj["lattice_n"])
        trials = int(obj["trials"])
        mappers = list(obj["mappers"])
        seed = int(obj["seed"])
        output = Path(obj["output"])
    except KeyError as exc:
        raise ConfigError(f"config is missing key {exc}") from exc
    return ExperimentConfig(
        benchmarks=benchmarks,
        lattice_sizes=lattice_sizes,
        noise=_parse_noise(obj.get("noise")),
        trials=trials,
        mappers=mappers,
        seed=seed,
        output=output,
        workers=int(obj.get("workers", 1)),
        brute_force_limit=int(obj.get("brute_force_limit", DEFAULT_PLACEMENT_LIMIT)),
        include_measurement=bool(obj.get("include_measurement", False)),
        record_timing=bool(obj.get("record_timing", False)),
    )


def _run_trial(
    spec_label: str,
    spec_params: str,
    graph: InteractionGraph,
    n: int,
    trial: int,
    trial_seed: int,
    noise: NoiseSpec,
    mappers: list[str],
    limit: int,
    include_measurement: bool,
) -> list[TrialRecord]:
    lattice = make_lattice(n, dataclasses.replace(noise, seed=trial_seed))
    records = []
    for mapper in mappers:
        t0 = time.perf_counter()
        try:
            result = run_mapper(mapper, graph, lattice, limit, include_measurement)
        except (TooManyQubitsError, SearchSpaceTooLargeError) as exc:
            elapsed_ms = (time.perf_counter() - t0) * 1000.0
            records.append(
                TrialRecord(
                    spec_label, spec_params, n, trial, mapper,
                    type(exc).__name__, None, None, None, None, None, elapsed_ms,
                )
            )
            continue
        r = result.report
        records.append(
            TrialRecord(
                spec_label, spec_params, n, trial, mapper, "ok",
                r.sigma_s, r.sigma_d, r.sigma_sw, r.sigma_total,
                swap_edge_count(r), result.elapsed * 1000.0,
            )
        )
    return records


def _trial_args(cfg: ExperimentConfig):
    for spec in cfg.benchmarks:
        graph = spec.build()
        for n in cfg.lattice_sizes:
            for trial in range(cfg.trials):
                yield (
                    spec.label,
                    spec.params,
                    graph,
                    n,
                    trial,
                    derive_seed(cfg.seed, trial),
                    cfg.noise,
                    cfg.mappers,
                    cfg.brute_force_limit,
                    cfg.include_measurement,
                )


def run_experiment(cfg: ExperimentConfig, write_csv: bool = True) -> list[TrialRecord]:
    """Run all trials and (by default) write trials.csv and summary.csv.

    Trials are independent; with ``cfg.workers > 1`` they execute in a
    process pool.  Results are reassembled in task order, so the output is
    identical at any worker count.
    """
    tasks = list(_trial_args(cfg))
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_run_trial_star, tasks, chunksize=8))
    else:
        chunks = [_run_trial(*task) for task in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    if write_csv:
        cfg.output.mkdir(parents=True, exist_ok=True)
        write_trials_csv(cfg.output / "trials.csv", records, cfg.record_timing)
        write_summary_csv(cfg.output / "summary.csv", summarize(records))
    return records


def _run_trial_star(args) -> list[TrialRecord]:
    return _run_trial(*args)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_trials_csv(path: Path, records: list[TrialRecord], record_timing: bool = False) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRIALS_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.benchmark,
                    r.family_params,
                    r.n,
                    r.trial,
                    r.mapper,
                    r.status,
                    _fmt(r.sigma_s),
                    _fmt(r.sigma_d),
                    _fmt(r.sigma_sw),
                    _fmt(r.sigma_total),
                    _fmt(r.swap_edges),
                    f"{r.elapsed_ms:.3f}" if record_timing else "0",
                ]
            )


def summarize(records: list[TrialRecord]) -> list[SummaryRow]:
    """Aggregate per (benchmark point, n, mapper), preserving row order.

    Means and the sample standard deviation cover only successful rows.
    ``sigma_diff`` is mean(heuristic) - mean(trivial) for the point when
    both mappers are present, else ``None``.
    """
    groups: dict[tuple[str, str, int, str], list[TrialRecord]] = {}
    order: list[tuple[str, str, int, str]] = []
    for r in records:
        key = (r.benchmark, r.family_params, r.n, r.mapper)
        if key not in groups:
            groups[key] = []
            order.append(key)
        if r.status == "ok":
            groups[key].append(r)

    def mean(values: list[float]) -> float:
        return sum(values) / len(values) if values else float("nan")

    def sample_std(values: list[float]) -> float:
        if len(values) < 2:
            return 0.0
        mu = mean(values)
        return (sum((v - mu) ** 2 for v in values) / (len(values) - 1)) ** 0.5

    point_means: dict[tuple[str, str, int], dict[str, float]] = {}
    for (bench, params, n, mapper), rows in groups.items():
        if rows:
            point_means.setdefault((bench, params, n), {})[mapper] = mean(
                [r.sigma_total for r in rows]
            )

    out = []
    for key in order:
        bench, params, n, mapper = key
        rows = groups[key]
        totals = [r.sigma_total for r in rows]
        point = point_means.get((bench, params, n), {})
        diff = (
            point["heuristic"] - point["trivial"]
            if "heuristic" in point and "trivial" in point
            else None
        )
        occupancy = (_qubits_from_params(bench, params) or 0) / (n * n)
        out.append(
            SummaryRow(
                bench,
                params,
                n,
                mapper,
                len(rows),
                mean([r.sigma_s for r in rows]),
                mean([r.sigma_d for r in rows]),
                mean([r.sigma_sw for r in rows]),
                mean(totals),
                sample_std(totals),
                mean([float(r.swap_edges) for r in rows]),
                occupancy,
                diff,
            )
        )
    return out


def _qubits_from_params(benchmark: str, params: str) -> int | None:
    """Vertex count of a benchmark point, recovered from its params string."""
    fields = dict(p.split("=") for p in params.split(",") if "=" in p)
    if "r" in fields:
        return int(fields["r"])
    if "s" in fields:
        return int(fields["s"])
    try:
        return load_realistic(benchmark).n_vertices
    except KeyError:
        return None


def write_summary_csv(path: Path, rows: list[SummaryRow]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for r in rows:
            writer.writerow(
                [
                    r.benchmark,
                    r.family_params,
                    r.n,
                    r.mapper,
                    r.trials,
                    _fmt(r.mean_sigma_s),
                    _fmt(r.mean_sigma_d),
                    _fmt(r.mean_sigma_sw),
                    _fmt(r.mean_sigma_total),
                    _fmt(r.std_sigma_total),
                    _fmt(r.mean_swap_edges),
                    _fmt(r.occupancy),
                    _fmt(r.sigma_diff),
                ]
            )


def read_summary_csv(path: Path) -> list[SummaryRow]:
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            rows.append(
                SummaryRow(
                    rec["benchmark"],
                    rec["family_params"],
                    int(rec["n"]),
                    rec["mapper"],
                    int(rec["trials"]),
                    float(rec["mean_sigma_s"]),
                    float(rec["mean_sigma_d"]),
                    float(rec["mean_sigma_sw"]),
                    float(rec["mean_sigma_total"]),
                    float(rec["std_sigma_total"]),
                    float(rec["mean_swap_edges"]),
                    float(rec["occupancy"]),
                    float(rec["sigma_diff"]) if rec["sigma_diff"] else None,
                )
            )
    return rows


def detect_critical_point(summary: list[SummaryRow]) -> int | None:
    """Smallest k in a nonlinear-edge sweep where the heuristic's mean
    success rate drops to (or below) the trivial mapper's; ``None`` if the
    heuristic stays strictly ahead everywhere.

    Expects summary rows of one sweep with a ``k=`` entry in their params;
    raises :class:`MissingMapperError` if either mapper is absent at some k.
    """
    by_k: dict[int, dict[str, float]] = {}
    for row in summary:
        fields = dict(p.split("=") for p in row.family_params.split(",") if "=" in p)
        if "k" not in fields:
            raise ValueError(f"row {row.benchmark}[{row.family_params}] has no k parameter")
        by_k.setdefault(int(fields["k"]), {})[row.mapper] = row.mean_sigma_total
    if not by_k:
        raise ValueError("empty summary")
    for k in sorted(by_k):
        means = by_k[k]
        if "heuristic" not in means or "trivial" not in means:
            raise MissingMapperError(f"k={k} lacks heuristic or trivial results")
        if means["heuristic"] <= means["trivial"]:
            return k
    return None
