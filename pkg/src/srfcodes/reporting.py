"""Figure rendering for campaign CSV files.

Reads the per-trial rows written by :mod:`srfcodes.experiments` and renders
PNG figures next to the delimited output: a running empirical failure rate
against the exact bound, and a failure-reason breakdown when any trial
failed.
"""

from __future__ import annotations

import csv
import os
from collections import Counter
from fractions import Fraction

__all__ = ["read_campaign_csv", "render_report"]


def read_campaign_csv(path):
    """Rows of a campaign CSV as dicts keyed by the header fields."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{path}: no trial rows")
    return rows


def render_report(csv_path, out_dir=None):
    """Render figures for one campaign CSV; returns the written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = read_campaign_csv(csv_path)
    stem = os.path.splitext(os.path.basename(csv_path))[0]
    out_dir = out_dir or os.path.dirname(os.path.abspath(csv_path))
    os.makedirs(out_dir, exist_ok=True)

    campaign = rows[0]["campaign_id"]
    model = rows[0]["model"]
    bound = Fraction(int(rows[0]["bound_num"]), int(rows[0]["bound_den"]))
    bound = bound if bound < 1 else Fraction(1)

    failures = 0
    running = []
    reasons = Counter()
    for i, row in enumerate(rows, 1):
        if row["outcome"] != "success":
            failures += 1
            reasons[row["reason"]] += 1
        running.append(failures / i)

    paths = []
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(range(1, len(rows) + 1), running, lw=1.2,
            label="empirical failure rate")
    ax.axhline(float(bound), color="crimson", ls="--",
               label=f"bound {bound.numerator}/{bound.denominator}")
    ax.set_xlabel("trials")
    ax.set_ylabel("failure rate")
    floor = 1.0 / (10 * len(rows))
    ax.set_yscale("symlog", linthresh=max(float(bound), floor, 1e-12))
    ax.set_title(f"{campaign} ({model}): "
                 f"{failures}/{len(rows)} failures")
    ax.legend(loc="upper right")
    fig.tight_layout()
    rate_path = os.path.join(out_dir, f"{stem}_rate.png")
    fig.savefig(rate_path, dpi=120)
    plt.close(fig)
    paths.append(rate_path)

    if reasons:
        fig, ax = plt.subplots(figsize=(7, 4.5))
        labels = sorted(reasons)
        ax.bar(labels, [reasons[k] for k in labels], color="steelblue")
        ax.set_ylabel("failed trials")
        ax.set_title(f"{campaign} ({model}): failure reasons")
        ax.tick_params(axis="x", rotation=20)
        fig.tight_layout()
        reasons_path = os.path.join(out_dir, f"{stem}_reasons.png")
        fig.savefig(reasons_path, dpi=120)
        plt.close(fig)
        paths.append(reasons_path)
    return paths
