"""Shared serialization helpers for the report types.

CSV dialect: comma separator, '.' decimal, up to 17 significant digits,
LF line endings, mandatory header row.  JSON documents are emitted without
timestamps so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
import os


def fmt_float(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return f"{v:.17g}"


def json_text(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_text(path: str, text: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
