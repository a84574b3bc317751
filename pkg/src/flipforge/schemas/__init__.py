"""JSON schemas for the documents the CLI writes."""

from __future__ import annotations

import json
from importlib.resources import files

NAMES = ("graph", "certificate", "report", "verdict", "census", "packing", "export")


def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"no schema named {name!r}")
    return json.loads(files(__name__).joinpath(f"{name}.json").read_text(encoding="utf-8"))
