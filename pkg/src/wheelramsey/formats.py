"""On-disk formats: coloring JSON, graph JSON, graph6, BlockSpec sidecars.

Coloring files are byte-exact: the compact JSON object
``{"order":N,"colors":k,"edges":[c01,c02,...]}`` followed by a single
newline, with keys in that order and pair colors in pair-rank order.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .graph import DomainError, EdgeColoring, Graph


def encode_coloring(coloring: EdgeColoring) -> bytes:
    edges = ",".join(map(str, coloring.colors.tolist()))
    text = f'{{"order":{coloring.order},"colors":{coloring.num_colors},"edges":[{edges}]}}\n'
    return text.encode("ascii")


def decode_coloring(data: bytes | str) -> EdgeColoring:
    obj = json.loads(data)
    try:
        return EdgeColoring(int(obj["order"]), int(obj["colors"]), obj["edges"])
    except KeyError as exc:
        raise DomainError(f"coloring file missing key {exc}") from None


def write_coloring(path, coloring: EdgeColoring) -> str:
    """Write a coloring file and return its sha256 hex digest."""
    data = encode_coloring(coloring)
    Path(path).write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def read_coloring(path) -> EdgeColoring:
    return decode_coloring(Path(path).read_bytes())


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def encode_graph_json(g: Graph) -> bytes:
    edges = ",".join(f"[{u},{v}]" for u, v in g.edges())
    return f'{{"order":{g.order},"edges":[{edges}]}}\n'.encode("ascii")


def decode_graph_json(data: bytes | str) -> Graph:
    obj = json.loads(data)
    return Graph.from_edges(int(obj["order"]), obj["edges"])


# graph6: https://users.cecs.anu.edu.au/~bdm/data/formats.txt


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return b"~" + bytes(((n >> s) & 63) + 63 for s in (12, 6, 0))
    return b"~~" + bytes(((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> bytes:
    """graph6 bytes without header or trailing newline."""
    n = g.order
    iu, ju = np.triu_indices(n, 1)
    # graph6 walks the upper triangle column by column
    order = np.lexsort((iu, ju))
    bits = g.adjacency[iu[order], ju[order]].astype(np.uint8)
    pad = (-bits.size) % 6
    bits = np.concatenate([bits, np.zeros(pad, np.uint8)]).reshape(-1, 6)
    values = bits @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return _encode_size(n) + bytes((values + 63).astype(np.uint8).tolist())


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise DomainError("empty graph6 string")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    elif len(data) > 1 and data[1] != 126:
        n = sum((data[1 + i] - 63) << s for i, s in enumerate((12, 6, 0)))
        body = data[4:]
    else:
        n = sum((data[2 + i] - 63) << s for i, s in enumerate((30, 24, 18, 12, 6, 0)))
        body = data[8:]
    values = np.frombuffer(body, dtype=np.uint8).astype(np.int64) - 63
    if values.size and (values.min() < 0 or values.max() > 63):
        raise DomainError("invalid graph6 character")
    bits = ((values[:, None] >> np.arange(5, -1, -1)) & 1).ravel()
    iu, ju = np.triu_indices(n, 1)
    order = np.lexsort((iu, ju))
    if bits.size < iu.size:
        raise DomainError("graph6 string too short")
    m = np.zeros((n, n), dtype=bool)
    m[iu[order], ju[order]] = bits[: iu.size].astype(bool)
    return Graph.from_adjacency(m | m.T)


def read_graph(path) -> Graph:
    """Load a graph from graph6 (``.g6``) or graph JSON (anything else)."""
    path = Path(path)
    data = path.read_bytes()
    if path.suffix == ".g6" or data.lstrip()[:1] not in (b"{", b""):
        return from_graph6(data.splitlines()[0])
    return decode_graph_json(data)
