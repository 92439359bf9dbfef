"""Interchange formats: space documents, edge lists, hypergraphs, distance
matrices, topologies, maps, homotopies and reports.

Structured points (pairs, quotient classes, map graphs) are flattened to
canonical string labels on the way out, so a document round-trip is the
identity while an in-memory space may change its point spelling when
written and re-read.
"""

import csv
import io
import json

from .builders import (
    FiniteTopologyData,
    GraphData,
    HypergraphData,
    ScaledMetricData,
)
from .core import POINT_LIMIT, SUBSET_LIMIT, SpaceMap, make_space, make_subset_space
from .errors import ParseError
from .homotopy import homotopy_from_chain


def point_label(p):
    """Canonical string form of a (possibly structured) point."""
    if isinstance(p, str):
        return p
    if isinstance(p, bool):
        return str(int(p))
    if isinstance(p, int):
        return str(p)
    if isinstance(p, tuple):
        return "(" + ",".join(point_label(q) for q in p) + ")"
    if isinstance(p, frozenset):
        return "{" + "|".join(sorted(point_label(q) for q in p)) + "}"
    return repr(p)


def _label_map(space):
    labels = {p: point_label(p) for p in space.points}
    if len(set(labels.values())) != len(labels):
        raise ParseError("point labels collide under canonical flattening")
    return labels


def space_to_doc(space):
    labels = _label_map(space)
    doc = {"points": [labels[p] for p in space.points], "kind": space.kind}
    if space.kind == POINT_LIMIT:
        doc["limits"] = {
            labels[p]: [labels[q] for q in space.sorted_points(space.point_limits[p])]
            for p in space.points
        }
    else:
        entries = []
        for gen in space.nonempty_subsets():
            entries.append({
                "set": [labels[p] for p in space.sorted_points(gen)],
                "limits": [labels[q] for q in
                           space.sorted_points(space.subset_limits[gen])],
            })
        doc["limits"] = entries
    return doc


def space_from_doc(doc):
    try:
        points = list(doc["points"])
        kind = doc["kind"]
        limits = doc["limits"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"space document missing field: {exc}") from None
    if kind == POINT_LIMIT:
        if not isinstance(limits, dict):
            raise ParseError("point-limit document needs a limits object",
                             field="limits")
        table = {p: set(v) for p, v in limits.items()}
        return make_space(points, table)
    if kind == SUBSET_LIMIT:
        table = {}
        for entry in limits:
            try:
                table[frozenset(entry["set"])] = frozenset(entry["limits"])
            except (KeyError, TypeError) as exc:
                raise ParseError(f"bad subset-limit entry: {exc}",
                                 field="limits") from None
        return make_subset_space(points, table)
    raise ParseError(f"unknown space kind {kind!r}", field="kind")


def dumps(obj):
    """Canonical JSON: sorted keys, stable spacing, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


# -- edge lists ----------------------------------------------------------


def graph_from_text(text):
    vertices = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("vertices:"):
                vertices = body[len("vertices:"):].split()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("edge line needs exactly two vertices", line=lineno)
        edges.append(tuple(parts))
    if vertices is None:
        seen = []
        for u, v in edges:
            for w in (u, v):
                if w not in seen:
                    seen.append(w)
        vertices = seen
    try:
        return GraphData(vertices, edges)
    except Exception as exc:
        raise ParseError(str(exc)) from None


def graph_to_text(g):
    lines = ["# vertices: " + " ".join(point_label(v) for v in g.vertices)]
    for e in sorted(tuple(sorted(e, key=point_label)) for e in g.edges):
        lines.append(f"{point_label(e[0])} {point_label(e[1])}")
    return "\n".join(lines) + "\n"


# -- hypergraphs, metrics, topologies -------------------------------------


def hypergraph_from_doc(doc):
    try:
        return HypergraphData(doc["vertices"], [set(e) for e in doc["edges"]])
    except KeyError as exc:
        raise ParseError(f"hypergraph document missing field: {exc}") from None


def hypergraph_to_doc(h):
    return {
        "vertices": [point_label(v) for v in h.vertices],
        "edges": sorted(sorted(point_label(v) for v in e) for e in h.hyperedges),
    }


def metric_from_csv(text, scale):
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("empty distance matrix")
    names = [cell.strip() for cell in rows[0]]
    n = len(names)
    body = rows[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} distance rows, found {len(body)}", line=2)
    matrix = []
    for lineno, row in enumerate(body, start=2):
        cells = [c.strip() for c in row]
        if len(cells) == n + 1 and cells[0] == names[lineno - 2]:
            cells = cells[1:]
        if len(cells) != n:
            raise ParseError(f"expected {n} distances", line=lineno)
        try:
            matrix.append([float(c) for c in cells])
        except ValueError:
            raise ParseError("distances must be numbers", line=lineno) from None
    return ScaledMetricData(names, matrix, scale)


def topology_from_doc(doc):
    try:
        return FiniteTopologyData(doc["points"], [set(o) for o in doc["opens"]])
    except KeyError as exc:
        raise ParseError(f"topology document missing field: {exc}") from None


# -- maps, homotopies, chains ---------------------------------------------


def map_to_doc(f):
    dl = _label_map(f.domain)
    cl = _label_map(f.codomain)
    return {
        "domain": space_to_doc(f.domain),
        "codomain": space_to_doc(f.codomain),
        "assignment": {dl[p]: cl[f.mapping[p]] for p in f.domain.points},
    }


def map_from_doc(doc):
    try:
        dom = space_from_doc(doc["domain"])
        cod = space_from_doc(doc["codomain"])
        assignment = dict(doc["assignment"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"map document missing field: {exc}") from None
    return SpaceMap(dom, cod, assignment)


def homotopy_to_doc(h):
    base = h.cyl.base
    cod = h.map.codomain
    dl = _label_map(base)
    cl = _label_map(cod)
    levels = []
    for t in range(h.length + 1):
        levels.append({dl[a]: cl[h.map.mapping[(a, t)]] for a in base.points})
    return {
        "domain": space_to_doc(base),
        "codomain": space_to_doc(cod),
        "length": h.length,
        "levels": levels,
    }


def homotopy_from_doc(doc):
    try:
        dom = space_from_doc(doc["domain"])
        cod = space_from_doc(doc["codomain"])
        levels = doc["levels"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"homotopy document missing field: {exc}") from None
    maps = [SpaceMap(dom, cod, dict(level)) for level in levels]
    return homotopy_from_chain(maps)


def chain_to_doc(chain):
    """Witness chains serialize as arrays of map assignments."""
    out = []
    for f in chain:
        dl = _label_map(f.domain)
        cl = _label_map(f.codomain)
        out.append({dl[p]: cl[f.mapping[p]] for p in f.domain.points})
    return out
