"""Render netprobe experiment CSVs into figures.

This package never recomputes any science: it draws exactly what the
experiment harness wrote. Three figure kinds are supported, keyed to the
harness CSV schemas:

  fig1  merit histogram pairs     bin_left,bin_right,all_solutions,estimates
  fig2  probe excitation traces   t,n_resonant,n_detuned
  fig3  coupling statistics       p,trials,success_fraction,conclusive_fraction,seed

Rendering is deterministic: fixed style, no timestamps, stripped writer
metadata, so the same CSV produces the same image bytes.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

__all__ = ["PlotJob", "SchemaError", "render", "REQUIRED_COLUMNS"]

REQUIRED_COLUMNS = {
    "fig1": ("bin_left", "bin_right", "all_solutions", "estimates"),
    "fig2": ("t", "n_resonant", "n_detuned"),
    "fig3": ("p", "trials", "success_fraction", "conclusive_fraction"),
}

_STYLE = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
}


class SchemaError(ValueError):
    """The input CSV does not match the declared figure kind."""


@dataclass(frozen=True)
class PlotJob:
    kind: str
    input_path: str | Path
    output_path: str | Path
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None

    def __post_init__(self):
        if self.kind not in REQUIRED_COLUMNS:
            raise ValueError(f"unknown figure kind {self.kind!r}; choose fig1, fig2 or fig3")


def _read_columns(path, required: tuple[str, ...]) -> dict[str, list[float]]:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"input file {path} does not exist")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        names = reader.fieldnames or []
        missing = [c for c in required if c not in names]
        if missing:
            raise SchemaError(f"{path} is missing columns {missing} (found {names})")
        data: dict[str, list[float]] = {c: [] for c in required}
        for row in reader:
            try:
                for c in required:
                    data[c].append(float(row[c]))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{path}: non-numeric value in row {row}") from exc
    if not data[required[0]]:
        raise SchemaError(f"{path} has a header but no data rows")
    return data


def render(job: PlotJob) -> Path:
    """Draw the figure and return the written image path."""
    data = _read_columns(job.input_path, REQUIRED_COLUMNS[job.kind])
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        if job.kind == "fig1":
            _draw_merit_histograms(ax, data)
        elif job.kind == "fig2":
            _draw_excitation_traces(ax, data)
        else:
            _draw_coupling_statistics(ax, data)
        if job.title:
            ax.set_title(job.title)
        if job.xlabel:
            ax.set_xlabel(job.xlabel)
        if job.ylabel:
            ax.set_ylabel(job.ylabel)
        fig.tight_layout()
        out = Path(job.output_path)
        # Stripping the Software tag keeps the bytes reproducible across
        # matplotlib patch versions.
        fig.savefig(out, format=out.suffix.lstrip(".") or "png", metadata={"Software": None})
        plt.close(fig)
    return out


def _draw_merit_histograms(ax, data):
    centers = [(a + b) / 2.0 for a, b in zip(data["bin_left"], data["bin_right"])]
    ax.plot(centers, data["all_solutions"], "--", color="tab:blue", label="all solutions")
    ax.plot(centers, data["estimates"], "-", color="tab:red", label="estimates")
    ax.set_xlabel("deviation per link f")
    ax.set_ylabel("fraction")
    ax.legend()


def _draw_excitation_traces(ax, data):
    ax.plot(data["t"], data["n_resonant"], "s-", color="tab:blue", markersize=2.5,
            markevery=max(1, len(data["t"]) // 40), label="on resonance")
    ax.plot(data["t"], data["n_detuned"], "o-", color="tab:orange", markersize=2.5,
            markevery=max(1, len(data["t"]) // 40), label="1% detuned")
    ax.set_xlabel("time")
    ax.set_ylabel("mean excitation")
    ax.legend()


def _draw_coupling_statistics(ax, data):
    ax.plot(data["p"], data["success_fraction"], "o-", color="tab:blue", label="estimate correct")
    ax.plot(data["p"], data["conclusive_fraction"], "s-", color="tab:red", label="conclusive")
    ax.set_xlabel("connection probability p")
    ax.set_ylabel("fraction of realizations")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
