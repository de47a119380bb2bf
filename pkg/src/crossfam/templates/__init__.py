"""
crossfam.templates - Jinja2 Report Templates
============================================

Templates use the ``.j2`` extension and are rendered by ``crossfam.report``.

Available Templates
-------------------
- sweep_report.md.j2: Markdown summary of a verification sweep

Template Context
----------------
sweep : SweepReport
    Per-instance reports with their check verdicts.

crossfam_version : str
    Version of crossfam for attribution.

Filters
-------
kset : renders a set as ``{1,3,4,9}``
cell : renders ``None`` as ``-``
tojson_compact : JSON with sorted keys, for counterexamples
"""
