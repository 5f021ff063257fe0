"""planar_code ingestion/emission and the JSON lock-certificate schema."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from .errors import (
    BadHeader,
    InvalidGraph,
    NotATriangulation,
    OrderOverflow,
    SchemaViolation,
    TruncatedRecord,
    VertexOutOfRange,
)
from .plane_graph import PlaneTriangulation

HEADER = b">>planar_code<<"


def iter_planar_code(data: bytes) -> Iterator[PlaneTriangulation]:
    """Decode graphs lazily, validating each as a triangulation."""
    if not data.startswith(HEADER):
        raise BadHeader("missing >>planar_code<< header")
    pos = len(HEADER)
    end = len(data)
    index = 0
    while pos < end:
        n = data[pos]
        pos += 1
        if n == 0:
            raise OrderOverflow(f"record {index}: 2-byte planar_code (order > 255) is not supported")
        rotation = []
        for v in range(n):
            nbrs = []
            while True:
                if pos >= end:
                    raise TruncatedRecord(f"record {index}: input ends inside vertex {v + 1}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise VertexOutOfRange(f"record {index}: neighbour {b} of vertex {v + 1} exceeds order {n}")
                nbrs.append(b - 1)
            rotation.append(nbrs)
        try:
            yield PlaneTriangulation(rotation)
        except InvalidGraph as exc:
            raise NotATriangulation(f"record {index}: {exc}") from exc
        index += 1


def read_planar_code(data: bytes) -> list[PlaneTriangulation]:
    return list(iter_planar_code(data))


def read_planar_code_file(path) -> list[PlaneTriangulation]:
    with open(path, "rb") as fh:
        return read_planar_code(fh.read())


def encode_record(t: PlaneTriangulation) -> bytes:
    if t.n > 255:
        raise OrderOverflow(f"order {t.n} > 255")
    out = bytearray([t.n])
    for nbrs in t.rotation:
        out.extend(w + 1 for w in nbrs)
        out.append(0)
    return bytes(out)


def write_planar_code(graphs: Iterable[PlaneTriangulation]) -> bytes:
    return HEADER + b"".join(encode_record(t) for t in graphs)


def write_planar_code_file(path, graphs: Iterable[PlaneTriangulation]) -> int:
    """Stream graphs to ``path``; returns the number written."""
    count = 0
    with open(path, "wb") as fh:
        fh.write(HEADER)
        for t in graphs:
            fh.write(encode_record(t))
            count += 1
    return count


# -- certificates ----------------------------------------------------------


@dataclass
class ChainWitness:
    """One identified colouring and, for each colour j other than x's, the chain through x and y."""

    coloring: list[int]
    chains: dict[int, list[int]]


@dataclass
class LockCertificate:
    graph: list[list[int]]
    order: int
    locked_edge: tuple[int, int]
    connectivity: int
    distinct_coloring_count: int
    chain_witnesses: list[ChainWitness]
    diamond: dict[str, int] | None
    code: str
    extra: dict[str, Any] = field(default_factory=dict)


FIELDS = ("order", "connectivity", "locked_edge", "code", "distinct_coloring_count",
          "graph", "chain_witnesses", "diamond")


def _compact(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def write_certificate(c: LockCertificate) -> str:
    """Stable, line-oriented JSON: one rotation list or witness per line."""
    lines = ["{"]
    body = [
        f'  "order": {c.order}',
        f'  "connectivity": {c.connectivity}',
        f'  "locked_edge": {_compact(list(c.locked_edge))}',
        f'  "code": {_compact(c.code)}',
        f'  "distinct_coloring_count": {c.distinct_coloring_count}',
        '  "graph": [\n' + ",\n".join(f"    {_compact(list(r))}" for r in c.graph) + "\n  ]",
        '  "chain_witnesses": [\n' + ",\n".join(
            "    " + _compact({"coloring": list(w.coloring),
                               "chains": {str(j): sorted(v) for j, v in sorted(w.chains.items())}})
            for w in c.chain_witnesses) + "\n  ]",
        f'  "diamond": {_compact(c.diamond)}',
    ]
    if c.extra:
        body.append(f'  "extra": {_compact(c.extra)}')
    lines.append(",\n".join(body))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _int(obj, key) -> int:
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaViolation(f"{key} must be an integer")
    return v


def _int_list(v, what) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise SchemaViolation(f"{what} must be a list of integers")
    return v


def read_certificate(text: str) -> LockCertificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"not JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaViolation("certificate must be a JSON object")
    missing = [k for k in FIELDS if k not in obj]
    if missing:
        raise SchemaViolation(f"missing fields: {', '.join(missing)}")
    unknown = set(obj) - set(FIELDS) - {"extra"}
    if unknown:
        raise SchemaViolation(f"unknown fields: {', '.join(sorted(unknown))}")
    graph = obj["graph"]
    if not isinstance(graph, list):
        raise SchemaViolation("graph must be a list of rotation lists")
    graph = [_int_list(r, "graph entry") for r in graph]
    edge = _int_list(obj["locked_edge"], "locked_edge")
    if len(edge) != 2:
        raise SchemaViolation("locked_edge must have two vertices")
    witnesses = []
    if not isinstance(obj["chain_witnesses"], list):
        raise SchemaViolation("chain_witnesses must be a list")
    for w in obj["chain_witnesses"]:
        if not isinstance(w, dict) or set(w) != {"coloring", "chains"} or not isinstance(w["chains"], dict):
            raise SchemaViolation("chain witness must have exactly 'coloring' and 'chains'")
        try:
            chains = {int(j): _int_list(v, "chain") for j, v in w["chains"].items()}
        except ValueError as exc:
            raise SchemaViolation("chain keys must be colours") from exc
        witnesses.append(ChainWitness(_int_list(w["coloring"], "coloring"), chains))
    diamond = obj["diamond"]
    if diamond is not None:
        if not isinstance(diamond, dict) or not all(isinstance(v, int) for v in diamond.values()):
            raise SchemaViolation("diamond must map configuration vertices to host vertices")
    if not isinstance(obj["code"], str):
        raise SchemaViolation("code must be a hex string")
    extra = obj.get("extra", {})
    if not isinstance(extra, dict):
        raise SchemaViolation("extra must be an object")
    return LockCertificate(
        graph=graph,
        order=_int(obj, "order"),
        locked_edge=(edge[0], edge[1]),
        connectivity=_int(obj, "connectivity"),
        distinct_coloring_count=_int(obj, "distinct_coloring_count"),
        chain_witnesses=witnesses,
        diamond=diamond,
        code=obj["code"],
        extra=extra,
    )
