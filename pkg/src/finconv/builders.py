"""Space constructors from combinatorial and metric data."""

from itertools import combinations

from .core import make_space, closure_of
from .errors import (
    AsymmetricMatrix,
    EmptyHyperedge,
    MalformedEdge,
    NegativeDistance,
    NotATopology,
    UnknownPoint,
)


class GraphData:
    """An undirected graph; self-loops are not stored (reflexivity comes
    from the closure rule)."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise MalformedEdge("duplicate vertex")
        norm = set()
        for e in edges:
            e = tuple(e)
            if len(e) != 2 or e[0] == e[1]:
                raise MalformedEdge(f"not a 2-element edge: {e!r}")
            if e[0] not in vset or e[1] not in vset:
                raise MalformedEdge(f"edge {e!r} leaves the vertex set")
            norm.add(frozenset(e))
        self.edges = frozenset(norm)


class HypergraphData:
    def __init__(self, vertices, hyperedges):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        norm = set()
        for e in hyperedges:
            e = frozenset(e)
            if not e:
                raise EmptyHyperedge("empty hyperedge")
            if not e <= vset:
                raise UnknownPoint(sorted(e - vset)[0])
            norm.add(e)
        self.hyperedges = frozenset(norm)


class ScaledMetricData:
    """A semi-pseudometric with a scale; the triangle inequality is not
    required and not checked."""

    def __init__(self, points, distances, scale):
        self.points = tuple(points)
        n = len(self.points)
        if scale < 0:
            raise NegativeDistance("negative scale")
        rows = [tuple(row) for row in distances]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise AsymmetricMatrix("matrix shape does not match the point count")
        for i in range(n):
            if rows[i][i] != 0:
                raise AsymmetricMatrix("non-zero diagonal")
            for j in range(n):
                if rows[i][j] < 0:
                    raise NegativeDistance(f"d({i},{j}) < 0")
                if rows[i][j] != rows[j][i]:
                    raise AsymmetricMatrix(f"d({i},{j}) != d({j},{i})")
        self.distances = tuple(rows)
        self.scale = scale


class FiniteTopologyData:
    """A finite topology given by its family of open sets (validated)."""

    def __init__(self, points, opens):
        self.points = tuple(points)
        carrier = frozenset(self.points)
        fam = set()
        for o in opens:
            o = frozenset(o)
            if not o <= carrier:
                raise UnknownPoint(sorted(o - carrier)[0])
            fam.add(o)
        if frozenset() not in fam:
            raise NotATopology(frozenset(), "missing the empty set")
        if carrier not in fam:
            raise NotATopology(carrier, "missing the carrier")
        for a in fam:
            for b in fam:
                if a | b not in fam:
                    raise NotATopology(a | b, "not closed under union")
                if a & b not in fam:
                    raise NotATopology(a & b, "not closed under intersection")
        self.opens = frozenset(fam)


def from_graph(g):
    """The closure-rule space of a graph: lim v. = {v} with its neighbors."""
    nbrs = {v: {v} for v in g.vertices}
    for e in g.edges:
        a, b = tuple(e)
        nbrs[a].add(b)
        nbrs[b].add(a)
    return make_space(g.vertices, nbrs)


def two_section(h):
    """The 2-section graph of a hypergraph: vertices co-resident in some
    hyperedge become an edge."""
    edges = set()
    for e in h.hyperedges:
        for pair in combinations(sorted(e, key=repr), 2):
            edges.add(frozenset(pair))
    return GraphData(h.vertices, [tuple(e) for e in edges])


def from_hypergraph(h, mode, orientation="faces"):
    """Build a space from a hypergraph.

    ``skeleton`` takes the closure space of the 2-section.  ``alexandrov``
    builds the simplex set (all non-empty subsets of hyperedges) and lets a
    simplex converge toward its faces; ``orientation="cofaces"`` flips the
    specialization direction.
    """
    if mode == "skeleton":
        return from_graph(two_section(h))
    if mode != "alexandrov":
        raise ValueError(f"unknown hypergraph mode {mode!r}")
    simplices = set()
    for e in h.hyperedges:
        members = sorted(e, key=repr)
        for r in range(1, len(members) + 1):
            for c in combinations(members, r):
                simplices.add(frozenset(c))
    carrier = sorted(simplices, key=lambda s: (len(s), tuple(sorted(map(repr, s)))))
    if orientation == "faces":
        limits = {s: {t for t in simplices if t <= s} for s in carrier}
    elif orientation == "cofaces":
        limits = {s: {t for t in simplices if t >= s} for s in carrier}
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    return make_space(carrier, limits)


def from_scaled_metric(m):
    """Threshold space of a scaled semi-pseudometric: lim y. = closed ball."""
    idx = {p: i for i, p in enumerate(m.points)}
    limits = {
        y: {x for x in m.points if m.distances[idx[x]][idx[y]] <= m.scale}
        for y in m.points
    }
    return make_space(m.points, limits)


def from_finite_topology(t):
    """Kuratowski route: lim y. = topological closure of {y}."""
    carrier = frozenset(t.points)
    closed = [carrier - o for o in t.opens]

    def closure(p):
        out = carrier
        for c in closed:
            if p in c:
                out = out & c
        return out

    return make_space(t.points, {p: closure(p) for p in t.points})


def is_topological(space):
    """A finite space is topological iff its closure operator is idempotent."""
    for p in space.points:
        c1 = closure_of(space, {p})
        if closure_of(space, c1) != c1:
            return False
    return True


# -- small named spaces used throughout -------------------------------


def discrete_space(labels):
    labels = tuple(labels)
    return make_space(labels, {p: {p} for p in labels})


def indiscrete_space(labels):
    labels = tuple(labels)
    full = set(labels)
    return make_space(labels, {p: full for p in labels})


def path_space(n):
    """The path 0 - 1 - ... - n; for n = 0 this is a single point."""
    pts = tuple(range(n + 1))
    g = GraphData(pts, [(i, i + 1) for i in range(n)])
    return from_graph(g)


def cycle_space(k):
    """The k-cycle with points 0..k-1; k = 1 degenerates to a point and
    k = 2 to the indiscrete pair."""
    pts = tuple(range(k))
    if k == 1:
        return make_space(pts, {0: {0}})
    edges = {frozenset((i, (i + 1) % k)) for i in range(k)}
    return from_graph(GraphData(pts, [tuple(e) for e in edges]))
