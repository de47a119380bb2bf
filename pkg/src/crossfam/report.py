"""
crossfam.report - Rendered Reports and Table Output
===================================================

Turns verification results into a Markdown sweep report and objective
scans into CSV or JSON.

Template System
---------------
Templates live in ``crossfam/templates`` and are loaded through Jinja2's
``PackageLoader``. Each template receives:

    sweep : SweepReport
        The results to render.
    crossfam_version : str
        Version of crossfam for attribution.

Usage Example
-------------
>>> from crossfam.models import SweepReport
>>> from crossfam.report import render_report
>>> print(render_report(SweepReport()).splitlines()[0])
# crossfam sweep report

See Also
--------
- verify.py: produces the ``SweepReport``
- templates/: Jinja2 template files
"""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path

from jinja2 import Environment, PackageLoader, select_autoescape

from crossfam import __version__
from crossfam.lexset import KSet
from crossfam.models import OutputFormat, SweepReport
from crossfam.search import ScanTable


logger = logging.getLogger(__name__)

REPORT_TEMPLATE = "sweep_report.md.j2"


def _kset(value: object) -> str:
    if isinstance(value, (KSet, str)):
        return "{" + str(value) + "}"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_kset(v) for v in value) + ")"
    return str(value)


def _cell(value: object) -> str:
    return "-" if value is None else str(value)


def create_jinja_env() -> Environment:
    """
    Create the Jinja2 environment for report templates.

    Autoescaping is off since the output is Markdown. The ``kset`` filter
    renders sets (or sequences of sets) in braces, ``cell`` renders ``None``
    as ``-``.
    """
    env = Environment(
        loader=PackageLoader("crossfam", "templates"),
        autoescape=select_autoescape([]),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["kset"] = _kset
    env.filters["cell"] = _cell
    env.filters["tojson_compact"] = lambda v: json.dumps(v, sort_keys=True)
    return env


def render_report(sweep: SweepReport) -> str:
    """
    Render a sweep as Markdown.

    The document has a per-instance table, the verdict counts and one
    section per counterexample.
    """
    template = create_jinja_env().get_template(REPORT_TEMPLATE)
    return template.render(sweep=sweep, crossfam_version=__version__)


def write_report(sweep: SweepReport, path: Path) -> Path:
    """Render ``sweep`` and write it to ``path``, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_report(sweep), encoding="utf-8")
    logger.info("Wrote report for %d instances to %s", len(sweep.reports), path)
    return path


# =============================================================================
# Scan Tables
# =============================================================================


def scan_to_csv(table: ScanTable) -> str:
    """CSV with header ``id,value``; IDs are quoted comma-joined sets."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["id", "value"])
    for r, value in table.rows:
        writer.writerow([str(r), value])
    return buffer.getvalue()


def scan_to_json(table: ScanTable) -> str:
    """JSON object with the instance, the rows and the maximizers."""
    payload = {
        "params": table.params.model_dump(mode="json"),
        "target": table.target.value,
        "s": table.s,
        "rows": [{"id": str(r), "value": value} for r, value in table.rows],
        "max_value": table.max_value,
        "argmax": [str(r) for r in table.argmax],
    }
    return json.dumps(payload, indent=2) + "\n"


def format_scan(table: ScanTable, fmt: OutputFormat) -> str:
    """Render a scan in the requested format."""
    return scan_to_csv(table) if fmt is OutputFormat.CSV else scan_to_json(table)
