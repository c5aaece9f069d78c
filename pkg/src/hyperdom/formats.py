"""Text and JSON formats for hypergraphs, orientations and run manifests.

Hypergraph text: a header ``n r m`` followed by m lines of r vertex ids.
Orientation text: the same header, then line i lists edge i (in canonical
edge order) in its linear order. Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import json
import platform
from pathlib import Path

import numpy as np

from . import __version__
from .hypergraph import Hypergraph
from .orientation import Orientation

SCHEMA_VERSION = "1"


class InputMismatch(ValueError):
    """An orientation does not fit the hypergraph it is paired with."""


def _data_lines(text: str) -> list[list[int]]:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([int(tok) for tok in line.split()])
    return rows


def _header(rows: list[list[int]], what: str) -> tuple[int, int, int]:
    if not rows or len(rows[0]) != 3:
        raise ValueError(f"{what}: first line must be 'n r m'")
    n, r, m = rows[0]
    if len(rows) - 1 != m:
        raise ValueError(f"{what}: header announces {m} edges, found {len(rows) - 1}")
    return n, r, m


def comment_block(manifest: dict | None) -> str:
    if manifest is None:
        return ""
    return "# manifest: " + json.dumps(manifest, sort_keys=True) + "\n"


def hypergraph_to_text(h: Hypergraph, manifest: dict | None = None) -> str:
    lines = [f"{h.n} {h.r} {h.m}"] + [" ".join(map(str, e)) for e in h.edges]
    return comment_block(manifest) + "\n".join(lines) + "\n"


def hypergraph_from_text(text: str) -> Hypergraph:
    rows = _data_lines(text)
    n, r, _ = _header(rows, "hypergraph")
    return Hypergraph.from_edges(n, r, rows[1:])


def orientation_to_text(d: Orientation, manifest: dict | None = None) -> str:
    h = d.hypergraph
    lines = [f"{h.n} {h.r} {h.m}"] + [" ".join(map(str, o)) for o in d.orders]
    return comment_block(manifest) + "\n".join(lines) + "\n"


def orientation_from_text(text: str, h: Hypergraph) -> Orientation:
    rows = _data_lines(text)
    try:
        n, r, m = _header(rows, "orientation")
    except ValueError as exc:
        raise InputMismatch(str(exc)) from exc
    if (n, r, m) != (h.n, h.r, h.m):
        raise InputMismatch(
            f"orientation header {n} {r} {m} does not match hypergraph {h.n} {h.r} {h.m}"
        )
    for i, (edge, order) in enumerate(zip(h.edges, rows[1:])):
        if tuple(sorted(order)) != edge:
            raise InputMismatch(f"line {i + 1}: {order} is not an order of edge {edge}")
    return Orientation.from_orders(h, rows[1:])


def load_hypergraph(path: str | Path) -> Hypergraph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return Hypergraph.from_json(json.loads(text))
    return hypergraph_from_text(text)


def load_orientation(path: str | Path, h: Hypergraph) -> Orientation:
    return orientation_from_text(Path(path).read_text(), h)


def make_manifest(command: str, parameters: dict, seed: int | None) -> dict:
    """Run manifest; deliberately free of timestamps so reruns are byte-identical."""
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "versions": {
            "hyperdom": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
