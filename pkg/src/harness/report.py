"""Module Report.

Renders metrics tables as CSV and as an aligned markdown table. When a setup
was run with both variants, an absolute gain column (Invariant Top-1 minus
Baseline Top-1) is added, formatted like `+.08`.
"""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import pandas as pd
from jinja2 import Environment, PackageLoader, StrictUndefined
from temporal_ponita import Variant
from utilities import logger

from .errors import HarnessError
from .experiment import METRIC_COLUMNS, MetricsTable

FORMATS = ("csv", "md")
GAIN_KEYS = ["train_views", "signers", "test_view"]
GAIN_COLUMNS = [*GAIN_KEYS, "invariant_top1", "baseline_top1", "gain"]
MARKDOWN_HEADERS = ["train views", "test view", "variant", "Top1", "Top3", "runs"]
FLOAT_FORMAT = "%.10g"

environment = Environment(
    loader=PackageLoader("harness", "templates"),
    undefined=StrictUndefined,
    autoescape=False,  # noqa: S701
)


def format_gain(gain: float) -> str:
    """Signed two-decimal gain without the leading zero, e.g. `+.08`, `-.13`, `+1.20`."""
    text = f"{gain:+.2f}"
    return text.replace("+0.", "+.").replace("-0.", "-.")


def metrics_frame(tables: Sequence[MetricsTable]) -> pd.DataFrame:
    """Concatenate the headline rows of every table in the given order."""
    frames = [table.to_frame() for table in tables]
    return pd.concat(frames, ignore_index=True)[METRIC_COLUMNS]


def gain_frame(frame: pd.DataFrame) -> pd.DataFrame:
    """Invariant minus Baseline Top-1 for every setup run with both variants."""
    invariant = frame[frame["variant"] == Variant.Invariant.value][[*GAIN_KEYS, "top1_mean"]]
    baseline = frame[frame["variant"] == Variant.Baseline.value][[*GAIN_KEYS, "top1_mean"]]
    merged = invariant.merge(baseline, on=GAIN_KEYS, suffixes=("_invariant", "_baseline"))

    gains = pd.DataFrame(
        {
            "train_views": merged["train_views"],
            "signers": merged["signers"],
            "test_view": merged["test_view"],
            "invariant_top1": merged["top1_mean_invariant"],
            "baseline_top1": merged["top1_mean_baseline"],
        },
    )
    gains["gain"] = gains["invariant_top1"] - gains["baseline_top1"]
    return gains[GAIN_COLUMNS].reset_index(drop=True)


def _superscript(train_views: str, signers: str) -> str:
    return f"{train_views}^{{{signers}}}" if signers else train_views


def render_markdown(frame: pd.DataFrame) -> str:
    """Aligned markdown table of a metrics frame, with a gain column when both variants are present."""
    gains = gain_frame(frame)
    lookup = {tuple(row[:3]): row.gain for row in gains.itertuples(index=False)}
    headers = MARKDOWN_HEADERS + (["gain"] if lookup else [])

    rows = []
    for row in frame.itertuples(index=False):
        cells = [
            _superscript(row.train_views, row.signers),
            row.test_view,
            row.variant,
            f"{row.top1_mean:.3f} ± {row.top1_std:.3f}",
            f"{row.top3_mean:.3f} ± {row.top3_std:.3f}",
            str(row.n_folds),
        ]
        if lookup:
            gain = lookup.get((row.train_views, row.signers, row.test_view))
            show = gain is not None and row.variant == Variant.Invariant.value
            cells.append(format_gain(gain) if show else "")
        rows.append(cells)

    widths = [max(3, len(header), *(len(cells[col]) for cells in rows)) for col, header in enumerate(headers)]
    return environment.get_template("metrics.md.jinja").render(headers=headers, rows=rows, widths=widths)


def report(
    tables: Sequence[MetricsTable],
    out: str | Path,
    formats: Sequence[str] = FORMATS,
    stem: str = "metrics",
) -> list[Path]:
    """Write the renderings of one or more metrics tables.

    Parameters
    ----------
    tables : Sequence[MetricsTable]
        At least one table; rows keep the given order.
    out : str | Path
        Output directory, created when missing.
    formats : Sequence[str], optional
        Any of `csv` and `md`, by default both.
    stem : str, optional
        File name stem, by default `metrics`.

    Returns
    -------
    list[Path]
        Written files: `<stem>.csv` with the fixed metric columns,
        `<stem>_gain.csv` when both variants are present,
        `<stem>_seeds.csv` when seed-level rows exist and `<stem>.md`.

    Raises
    ------
    HarnessError
        If no table or an unknown format is given.
    """
    if not tables:
        msg = "report needs at least one metrics table"
        raise HarnessError(msg)

    unknown = sorted(set(formats) - set(FORMATS))
    if unknown:
        msg = f"unknown report formats {unknown}, expected {list(FORMATS)}"
        raise HarnessError(msg)

    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    frame = metrics_frame(tables)
    gains = gain_frame(frame)
    written = []

    if "csv" in formats:
        frame.to_csv(out / f"{stem}.csv", index=False, float_format=FLOAT_FORMAT)
        written.append(out / f"{stem}.csv")

        if not gains.empty:
            gains.to_csv(out / f"{stem}_gain.csv", index=False, float_format=FLOAT_FORMAT)
            written.append(out / f"{stem}_gain.csv")

        seeds = [table.seed_frame() for table in tables if table.seed_rows]
        if seeds:
            pd.concat(seeds, ignore_index=True).to_csv(
                out / f"{stem}_seeds.csv",
                index=False,
                float_format=FLOAT_FORMAT,
            )
            written.append(out / f"{stem}_seeds.csv")

    if "md" in formats:
        (out / f"{stem}.md").write_text(render_markdown(frame), encoding="utf-8")
        written.append(out / f"{stem}.md")

    logger.event_("report", out=out, files=len(written), rows=len(frame))

    return written
