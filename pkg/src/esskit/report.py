"""Figure rendering for batch reports.

The roundtrip harness writes a delimited per-instance table; this module
renders a companion PNG next to it: outcome counts on the left, per
instance wall time against instance size on the right.  matplotlib is
imported lazily with the Agg backend so the CLI stays headless.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class RoundtripRow:
    name: str
    mode: str
    vertices: int
    edge_count: int
    k: int
    clique_answer: bool
    ess_exists: bool
    consistent: bool
    seconds: float
    detail: str = ""


REPORT_FIELDS = (
    "name",
    "mode",
    "vertices",
    "edge_count",
    "k",
    "clique_answer",
    "ess_exists",
    "consistent",
    "seconds",
    "detail",
)


def write_report_csv(path, rows) -> Path:
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(REPORT_FIELDS)
        for r in rows:
            writer.writerow(
                [
                    r.name,
                    r.mode,
                    r.vertices,
                    r.edge_count,
                    r.k,
                    "yes" if r.clique_answer else "no",
                    "yes" if r.ess_exists else "no",
                    "ok" if r.consistent else "VIOLATION",
                    f"{r.seconds:.4f}",
                    r.detail,
                ]
            )
    return path


def render_roundtrip_figure(path, rows, title: str = "") -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.6))

    consistent = sum(1 for r in rows if r.consistent)
    violations = len(rows) - consistent
    clique_yes = sum(1 for r in rows if r.clique_answer)
    ess_yes = sum(1 for r in rows if r.ess_exists)
    labels = ["consistent", "violation", "clique yes", "ess found"]
    counts = [consistent, violations, clique_yes, ess_yes]
    colors = ["#4c8f4c", "#b03a3a", "#5577aa", "#aa8855"]
    left.bar(labels, counts, color=colors)
    left.set_ylabel("instances")
    left.set_title(title or "roundtrip outcomes")
    left.tick_params(axis="x", rotation=20)

    if rows:
        xs = [r.vertices for r in rows]
        ys = [r.seconds for r in rows]
        cs = ["#4c8f4c" if r.consistent else "#b03a3a" for r in rows]
        right.scatter(xs, ys, c=cs, s=18, alpha=0.7)
    right.set_xlabel("vertices")
    right.set_ylabel("seconds")
    right.set_title("per-instance wall time")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_margin_figure(path, names, margins, title: str = "") -> Path:
    """Bar chart of the unique-best-response margin per pure strategy.

    A zero or missing margin means the strategy is not the unique best
    response to any mixture; those bars are drawn in red at zero.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.4 * len(names)), 3.2))
    values = [float(m) if m is not None else 0.0 for m in margins]
    colors = ["#4c8f4c" if m is not None else "#b03a3a" for m in margins]
    ax.bar(range(len(names)), values, color=colors)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("best-response margin")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
