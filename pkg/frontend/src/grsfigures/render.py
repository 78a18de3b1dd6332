"""Turn experiment CSV tables into figures.

Strictly presentational: every plotted number is read from the input file.
The one derived quantity is the d - 1 reference line of the radius figure,
computed from the n and k columns of each row.  Inputs are validated
against frozen schemas; column names and their order must match exactly.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

SCHEMAS = {
    "bound": ["q", "n", "k", "d", "tau", "lower_exact", "lower_corollary",
              "upper"],
    "taumax": ["q", "n", "k", "d", "tau_gs", "tau_max", "best_lower_bound"],
    "radius": ["q", "n", "k", "algorithm", "trials", "seed", "avg_distance",
               "std_distance", "max_distance"],
}
KINDS = tuple(SCHEMAS)

# Fixed draw order so overlaid series keep stable colors across files.
_RADIUS_ORDER = ("map", "gs", "bw", "baseline")


class SchemaMismatch(Exception):
    """Input columns differ from the frozen schema; carries a column diff."""

    def __init__(self, path: str, expected: list[str], got: list[str]):
        self.path = path
        self.expected = expected
        self.got = got
        missing = [c for c in expected if c not in got]
        unexpected = [c for c in got if c not in expected]
        lines = [
            f"schema mismatch in {path}",
            f"  expected columns: {','.join(expected)}",
            f"  found columns:    {','.join(got)}",
            f"  missing: {','.join(missing) if missing else 'none'}",
            f"  unexpected: {','.join(unexpected) if unexpected else 'none'}",
        ]
        if not missing and not unexpected:
            lines.append("  (same columns, wrong order)")
        super().__init__("\n".join(lines))


@dataclass(frozen=True)
class FigureSpec:
    """One render request: what to read, which figure, where to write."""

    kind: str
    inputs: tuple[str, ...]
    out: str
    title: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if not 1 <= len(self.inputs) <= 2:
            raise ValueError("expected one input CSV, or two for an overlay")


def load_table(kind: str, path: str) -> list[dict[str, str]]:
    """Read one CSV and check its header against the schema for `kind`."""
    expected = SCHEMAS[kind]
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch(path, expected, [])
        if header != expected:
            raise SchemaMismatch(path, expected, header)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(expected):
                raise ValueError(f"{path}:{lineno}: expected {len(expected)} "
                                 f"fields, got {len(row)}")
            rows.append(dict(zip(expected, row)))
    return rows


def _label(base: str, name: str, overlay: bool) -> str:
    return f"{base} ({name})" if overlay else base


def _draw_bound(ax, tables, overlay):
    for name, rows in tables:
        taus = [int(r["tau"]) for r in rows]
        # presentation-only clipping; the data keeps its signed values
        lows = [min(1.0, max(0.0, float(r["lower_exact"]))) for r in rows]
        ax.plot(taus, lows, marker="o", label=_label("lower bound", name, overlay))
    ax.set_xlabel("decoding radius")
    ax.set_ylabel("covered fraction")


def _draw_taumax(ax, tables, overlay):
    for name, rows in tables:
        ks = [int(r["k"]) for r in rows]
        gs = [int(r["tau_gs"]) for r in rows]
        ax.plot(ks, gs, marker="s", linestyle="--",
                label=_label("list-decoding radius", name, overlay))
        best = [(int(r["k"]), int(r["tau_max"])) for r in rows if r["tau_max"]]
        if best:
            ax.plot([b[0] for b in best], [b[1] for b in best], marker="o",
                    label=_label("best-bound radius", name, overlay))
    ax.set_xlabel("dimension k")
    ax.set_ylabel("radius")


def _draw_radius(ax, tables, overlay):
    for index, (name, rows) in enumerate(tables):
        present = {r["algorithm"] for r in rows}
        ordered = [a for a in _RADIUS_ORDER if a in present]
        ordered += sorted(present - set(_RADIUS_ORDER))
        for algo in ordered:
            cells = [r for r in rows if r["algorithm"] == algo]
            cells.sort(key=lambda r: int(r["k"]))
            ks = [int(r["k"]) for r in cells]
            avg = [float(r["avg_distance"]) for r in cells]
            std = [float(r["std_distance"]) for r in cells]
            ax.errorbar(ks, avg, yerr=std, marker="o", capsize=3,
                        label=_label(algo.upper(), name, overlay))
        if index == 0:
            ref = sorted({(int(r["k"]), int(r["n"]) - int(r["k"])) for r in rows})
            ax.plot([p[0] for p in ref], [p[1] for p in ref], color="black",
                    linestyle=":", drawstyle="steps-mid",
                    label="covering radius d - 1")
    ax.set_xlabel("dimension k")
    ax.set_ylabel("average distance to chosen codeword")


_DRAWERS = {"bound": _draw_bound, "taumax": _draw_taumax, "radius": _draw_radius}

_TITLES = {
    "bound": "Coverage lower bound per decoding radius",
    "taumax": "Best-bound radius vs list-decoding radius",
    "radius": "Average covering distance per algorithm",
}


def render(spec: FigureSpec) -> None:
    """Render one figure; the output format follows the file extension."""
    tables = []
    for path in spec.inputs:
        name = os.path.splitext(os.path.basename(path))[0]
        tables.append((name, load_table(spec.kind, path)))
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    try:
        _DRAWERS[spec.kind](ax, tables, overlay=len(tables) > 1)
        ax.set_title(spec.title or _TITLES[spec.kind])
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        fig.savefig(spec.out)
    finally:
        plt.close(fig)
