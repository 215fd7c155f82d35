"""
Hypergraph file formats.

Text format (one hypergraph per file):
    hypergraph n=<n>
    1 2 3        # one edge per line, '#' starts a comment
JSON mirror:
    {"n": <int>, "edges": [[<int>, ...], ...]}
"""
import json
import logging
import re
from pathlib import Path
from typing import Union

from .hypergraph import Hypergraph, make_hypergraph
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^hypergraph\s+n\s*=\s*(\d+)$")


def parse_text(content: str, allow_small_edges: bool = False) -> Hypergraph:
    """Parse the line-oriented text format"""
    lines = []
    for raw in content.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValidationError("empty hypergraph file")

    header = _HEADER.match(lines[0])
    if not header:
        raise ValidationError(f"expected 'hypergraph n=<n>' header, got {lines[0]!r}")
    n = int(header.group(1))

    edges = []
    for number, line in enumerate(lines[1:], start=2):
        try:
            edges.append([int(token) for token in line.split()])
        except ValueError:
            raise ValidationError(f"edge line {number}: non-integer vertex in {line!r}")
    return make_hypergraph(n, edges, allow_small_edges=allow_small_edges)


def format_text(h: Hypergraph, comment: str = None) -> str:
    lines = [f"hypergraph n={h.n}"]
    if comment:
        lines.append(f"# {comment}")
    lines.extend(" ".join(map(str, edge)) for edge in h.edge_sets())
    return "\n".join(lines) + "\n"


def parse_json(content: str, allow_small_edges: bool = False) -> Hypergraph:
    try:
        data = json.loads(content)
    except json.JSONDecodeError as e:
        raise ValidationError(f"invalid hypergraph JSON: {e}")
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ValidationError("hypergraph JSON needs keys 'n' and 'edges'")
    if not isinstance(data["edges"], list) or not all(isinstance(e, list) for e in data["edges"]):
        raise ValidationError("'edges' must be a list of vertex lists")
    return make_hypergraph(data["n"], data["edges"], allow_small_edges=allow_small_edges)


def to_json(h: Hypergraph) -> str:
    return json.dumps({"n": h.n, "edges": [list(e) for e in h.edge_sets()]})


def read_hypergraph(path: Union[str, Path], allow_small_edges: bool = False) -> Hypergraph:
    """Read a hypergraph file; a .json suffix selects the JSON mirror"""
    path = Path(path)
    try:
        content = path.read_text()
    except FileNotFoundError:
        logger.error(f"Hypergraph file not found: {path}")
        raise ValidationError(f"hypergraph file not found: {path}")
    if path.suffix.lower() == ".json":
        return parse_json(content, allow_small_edges)
    return parse_text(content, allow_small_edges)


def write_hypergraph(h: Hypergraph, path: Union[str, Path], comment: str = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix.lower() == ".json":
        path.write_text(to_json(h) + "\n")
    else:
        path.write_text(format_text(h, comment))
    logger.info(f"Wrote {h} to {path}")
    return path
