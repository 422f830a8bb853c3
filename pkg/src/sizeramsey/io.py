"""JSON documents for graphs, hypergraphs, traces, colourings and reports.

Every document carries ``version`` and ``kind``; fields outside a kind's
schema are rejected.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .arrowing import Colouring
from .errors import ValidationError
from .hypercore.graph import Graph, Hypergraph
from .hypercore.traces import AddLeaf, AddPath, BuildTrace, verify_trace

VERSION = 1

SCHEMAS: dict[str, set[str]] = {
    "graph": {"n", "edges"},
    "hypergraph": {"n", "r", "edges"},
    "trace": {"n", "d", "l", "steps", "edges"},
    "hypertree": {"n", "r", "order"},
    "colouring": {"edges", "colours"},
    "report": {"operation", "inputs_digest", "verdict", "witness", "detail", "timings"},
}
OPTIONAL = {"report": {"timings", "detail", "witness"}, "trace": {"edges"}}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"


def digest(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()[:16]


def check_schema(doc: Any, kind: str | None = None) -> dict:
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object")
    if doc.get("version") != VERSION:
        raise ValidationError(f"unsupported version {doc.get('version')!r}")
    k = doc.get("kind")
    if k not in SCHEMAS:
        raise ValidationError(f"unknown kind {k!r}")
    if kind is not None and k != kind:
        raise ValidationError(f"expected a {kind} document, got {k}")
    fields = set(doc) - {"version", "kind"}
    extra = fields - SCHEMAS[k]
    if extra:
        raise ValidationError(f"unknown fields {sorted(extra)} in {k} document")
    missing = SCHEMAS[k] - OPTIONAL.get(k, set()) - fields
    if missing:
        raise ValidationError(f"missing fields {sorted(missing)} in {k} document")
    return doc


def _doc(kind: str, **fields) -> dict:
    return {"version": VERSION, "kind": kind, **fields}


# encoders ---------------------------------------------------------------------


def graph_doc(g: Graph) -> dict:
    return _doc("graph", n=g.n, edges=[list(e) for e in g.sorted_edges()])


def hypergraph_doc(h: Hypergraph) -> dict:
    return _doc("hypergraph", n=h.n, r=h.r, edges=[list(e) for e in h.sorted_edges()])


def trace_doc(trace: BuildTrace, with_edges: bool = True) -> dict:
    steps = [{"leaf": s.at} if isinstance(s, AddLeaf) else {"path": [s.u, s.v, s.length]}
             for s in trace.steps]
    doc = _doc("trace", n=trace.n, d=trace.d, l=trace.l, steps=steps)
    if with_edges:
        doc["edges"] = [list(e) for e in verify_trace(trace).sorted_edges()]
    return doc


def hypertree_doc(n: int, r: int, order) -> dict:
    return _doc("hypertree", n=n, r=r, order=[list(e) for e in order])


def colouring_doc(c: Colouring) -> dict:
    return _doc("colouring", edges=[list(e) for e in c.edges], colours=list(c.colours))


def report_doc(operation: str, inputs: Any, verdict: bool | None, witness: Any = None,
               detail: Any = None, timings: dict | None = None) -> dict:
    doc = _doc("report", operation=operation, inputs_digest=digest(inputs), verdict=verdict)
    if witness is not None:
        doc["witness"] = witness
    if detail is not None:
        doc["detail"] = detail
    if timings is not None:
        doc["timings"] = timings
    return doc


# decoders ---------------------------------------------------------------------


def _int(x, name):
    if not isinstance(x, int) or isinstance(x, bool):
        raise ValidationError(f"{name} must be an integer")
    return x


def _edges(raw, name="edges"):
    if not isinstance(raw, list):
        raise ValidationError(f"{name} must be a list")
    out = []
    for e in raw:
        if not isinstance(e, list):
            raise ValidationError(f"{name} entries must be lists")
        out.append(tuple(_int(v, name) for v in e))
    return out


def load_graph(doc: dict) -> Graph:
    check_schema(doc, "graph")
    try:
        return Graph.from_edges(_int(doc["n"], "n"), _edges(doc["edges"]))
    except (ValueError, TypeError) as exc:
        raise ValidationError(str(exc)) from exc


def load_hypergraph(doc: dict) -> Hypergraph:
    check_schema(doc)
    if doc["kind"] == "graph":
        return load_graph(doc).to_hypergraph()
    check_schema(doc, "hypergraph")
    try:
        return Hypergraph.from_edges(_int(doc["n"], "n"), _int(doc["r"], "r"), _edges(doc["edges"]))
    except (ValueError, TypeError) as exc:
        raise ValidationError(str(exc)) from exc


def load_trace(doc: dict) -> BuildTrace:
    check_schema(doc, "trace")
    steps = []
    for s in doc["steps"]:
        if not isinstance(s, dict) or len(s) != 1:
            raise ValidationError("each step is an object with one key")
        if "leaf" in s:
            steps.append(AddLeaf(_int(s["leaf"], "leaf")))
        elif "path" in s:
            u, v, length = (_int(x, "path") for x in s["path"])
            steps.append(AddPath(u, v, length))
        else:
            raise ValidationError(f"unknown step {s}")
    trace = BuildTrace(_int(doc["d"], "d"), _int(doc["l"], "l"), tuple(steps))
    if trace.n != doc["n"]:
        raise ValidationError("vertex count does not match the steps")
    if "edges" in doc:
        if verify_trace(trace).sorted_edges() != sorted(_edges(doc["edges"])):
            raise ValidationError("edges do not match the steps")
    return trace


def load_hypertree(doc: dict) -> tuple[int, int, list[tuple[int, ...]]]:
    check_schema(doc, "hypertree")
    return _int(doc["n"], "n"), _int(doc["r"], "r"), _edges(doc["order"], "order")


def load_colouring(doc: dict) -> Colouring:
    check_schema(doc, "colouring")
    cols = doc["colours"]
    if not isinstance(cols, list):
        raise ValidationError("colours must be a list")
    return Colouring(tuple(_edges(doc["edges"])), tuple(_int(c, "colour") for c in cols))


def read(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    return check_schema(doc)


def write(doc: dict, path: str | Path | None) -> str:
    text = dumps(doc)
    if path is not None:
        Path(path).write_text(text)
    return text
