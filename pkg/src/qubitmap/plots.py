"""Chart rendering for experiment summaries (SVG via matplotlib)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiments import SummaryRow

PLOT_KINDS = ("bars", "sequence", "scaling")

_MAPPER_COLORS = {"brute": "tab:red", "heuristic": "tab:blue", "trivial": "tab:green"}
_MAPPER_ORDER = ("brute", "heuristic", "trivial")


def emit_plots(summary: list[SummaryRow], kind: str, outdir: Path) -> list[Path]:
    """Render a summary as one or more SVG files and return their paths.

    ``bars``: grouped bars of mean success rate per benchmark and mapper.
    ``sequence``: mean success rate versus nonlinear edge count k, one
    figure per (family, s) sweep.
    ``scaling``: heuristic-minus-trivial mean success rate versus lattice
    occupancy, one line per lattice side n.
    """
    if not summary:
        raise ValueError("summary is empty, nothing to plot")
    if kind not in PLOT_KINDS:
        raise ValueError(f"unknown plot kind {kind!r}; expected one of {PLOT_KINDS}")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if kind == "bars":
        return [_plot_bars(summary, outdir)]
    if kind == "sequence":
        return _plot_sequences(summary, outdir)
    return [_plot_scaling(summary, outdir)]


def _mappers_present(summary: list[SummaryRow]) -> list[str]:
    present = {row.mapper for row in summary}
    return [m for m in _MAPPER_ORDER if m in present]


def _plot_bars(summary: list[SummaryRow], outdir: Path) -> Path:
    benchmarks: list[str] = []
    for row in summary:
        if row.benchmark not in benchmarks:
            benchmarks.append(row.benchmark)
    mappers = _mappers_present(summary)
    means = {
        (row.benchmark, row.mapper): row.mean_sigma_total for row in summary
    }
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(benchmarks)), 4))
    width = 0.8 / len(mappers)
    for mi, mapper in enumerate(mappers):
        xs = [bi + (mi - (len(mappers) - 1) / 2) * width for bi in range(len(benchmarks))]
        ys = [means.get((b, mapper), 0.0) for b in benchmarks]
        ax.bar(xs, ys, width=width, label=mapper, color=_MAPPER_COLORS[mapper])
    ax.set_xticks(range(len(benchmarks)))
    ax.set_xticklabels(benchmarks, rotation=30, ha="right")
    ax.set_ylabel("mean success rate")
    ax.set_ylim(0, 1.05)
    ax.legend()
    fig.tight_layout()
    path = outdir / "bars.svg"
    fig.savefig(path)
    plt.close(fig)
    return path


def _sweep_key(row: SummaryRow) -> tuple[str, str]:
    fields = dict(p.split("=") for p in row.family_params.split(",") if "=" in p)
    return row.benchmark, fields.get("s", "")


def _plot_sequences(summary: list[SummaryRow], outdir: Path) -> list[Path]:
    sweeps: dict[tuple[str, str], list[SummaryRow]] = {}
    for row in summary:
        sweeps.setdefault(_sweep_key(row), []).append(row)
    paths = []
    for (family, s), rows in sweeps.items():
        fig, ax = plt.subplots(figsize=(6, 4))
        for mapper in _mappers_present(rows):
            pts = []
            for row in rows:
                if row.mapper != mapper:
                    continue
                fields = dict(p.split("=") for p in row.family_params.split(",") if "=" in p)
                pts.append((int(fields["k"]), row.mean_sigma_total))
            pts.sort()
            ax.plot(
                [k for k, _ in pts],
                [v for _, v in pts],
                marker="o",
                label=mapper,
                color=_MAPPER_COLORS[mapper],
            )
        ax.set_xlabel("nonlinear edges added")
        ax.set_ylabel("mean success rate")
        ax.set_title(f"{family} (s={s})")
        ax.legend()
        fig.tight_layout()
        path = outdir / f"sequence_{family}_s{s}.svg"
        fig.savefig(path)
        plt.close(fig)
        paths.append(path)
    return paths


def _plot_scaling(summary: list[SummaryRow], outdir: Path) -> Path:
    by_n: dict[int, list[tuple[float, float]]] = {}
    for row in summary:
        if row.mapper != "heuristic" or row.sigma_diff is None:
            continue
        by_n.setdefault(row.n, []).append((row.occupancy * 100.0, row.sigma_diff))
    fig, ax = plt.subplots(figsize=(6, 4))
    for n in sorted(by_n):
        pts = sorted(by_n[n])
        ax.plot([x for x, _ in pts], [y for _, y in pts], marker="o", label=f"n={n}")
    ax.axhline(0.0, color="gray", linewidth=0.8, linestyle="--")
    ax.set_xlabel("lattice occupancy (%)")
    ax.set_ylabel("mean success-rate difference (heuristic - trivial)")
    ax.legend()
    fig.tight_layout()
    path = outdir / "scaling.svg"
    fig.savefig(path)
    plt.close(fig)
    return path
