"""Categorical constructions: products, coproducts, subspaces, quotients,
pushouts, and the continuous-convergence function space.

Operations that materialize new point-limit structures (product, quotient,
pushout, function space plumbing) reflect subset-limit operands through the
pseudotopological modification first; the subspace operation preserves the
kind, since the hereditary rule works verbatim for stored subset limits.
"""

from itertools import combinations

from .core import (
    POINT_LIMIT,
    Space,
    SpaceMap,
    make_space,
    pseudotopological_modification,
)
from .errors import ExponentialTooLarge, KindMismatch, NotAPartition, NotContinuous, UnknownPoint

DEFAULT_EXP_CAP = 50_000


def _as_point_limit(space):
    if space.kind == POINT_LIMIT:
        return space
    return pseudotopological_modification(space)


class Product:
    __slots__ = ("space", "proj0", "proj1", "factors")

    def __init__(self, space, proj0, proj1, factors):
        self.space = space
        self.proj0 = proj0
        self.proj1 = proj1
        self.factors = factors


def product(x, y):
    """Binary product; points are pairs in lexicographic carrier order and
    limits are computed componentwise."""
    x = _as_point_limit(x)
    y = _as_point_limit(y)
    pts = tuple((a, b) for a in x.points for b in y.points)
    limits = {
        (a, b): {(c, d) for c in x.point_limits[a] for d in y.point_limits[b]}
        for (a, b) in pts
    }
    space = make_space(pts, limits)
    proj0 = SpaceMap(space, x, {p: p[0] for p in pts})
    proj1 = SpaceMap(space, y, {p: p[1] for p in pts})
    return Product(space, proj0, proj1, (x, y))


def pairing(prod, f, g):
    """The mediating map z -> (f(z), g(z)) into a product."""
    if f.domain != g.domain:
        raise UnknownPoint("pairing needs a common domain")
    return SpaceMap(f.domain, prod.space,
                    {p: (f.mapping[p], g.mapping[p]) for p in f.domain.points})


class Coproduct:
    __slots__ = ("space", "inj0", "inj1")

    def __init__(self, space, inj0, inj1):
        self.space = space
        self.inj0 = inj0
        self.inj1 = inj1


def coproduct(x, y):
    """Disjoint union with no cross-limits; points are tagged (0,p)/(1,q)."""
    x = _as_point_limit(x)
    y = _as_point_limit(y)
    pts = tuple((0, p) for p in x.points) + tuple((1, q) for q in y.points)
    limits = {}
    for p in x.points:
        limits[(0, p)] = {(0, q) for q in x.point_limits[p]}
    for q in y.points:
        limits[(1, q)] = {(1, r) for r in y.point_limits[q]}
    space = make_space(pts, limits)
    inj0 = SpaceMap(x, space, {p: (0, p) for p in x.points})
    inj1 = SpaceMap(y, space, {q: (1, q) for q in y.points})
    return Coproduct(space, inj0, inj1)


def copairing(cop, f, g):
    """The mediating map out of a coproduct."""
    if f.codomain != g.codomain:
        raise UnknownPoint("copairing needs a common codomain")
    mapping = {}
    for tag, p in cop.space.points:
        mapping[(tag, p)] = f.mapping[p] if tag == 0 else g.mapping[p]
    return SpaceMap(cop.space, f.codomain, mapping)


class Subspace:
    __slots__ = ("space", "inclusion")

    def __init__(self, space, inclusion):
        self.space = space
        self.inclusion = inclusion


def subspace(x, subset):
    """The hereditary structure on a subset: limits intersected with it."""
    subset = frozenset(subset)
    for p in subset:
        if p not in x:
            raise UnknownPoint(p)
    pts = x.sorted_points(subset)
    if x.kind == POINT_LIMIT:
        limits = {p: x.point_limits[p] & subset for p in pts}
        space = make_space(pts, limits)
    else:
        table = {}
        universe = set(pts)
        for r in range(1, len(pts) + 1):
            for combo in combinations(pts, r):
                gen = frozenset(combo)
                table[gen] = x.subset_limits[gen] & frozenset(universe)
        from .core import make_subset_space

        space = make_subset_space(pts, table)
    incl = SpaceMap(space, x, {p: p for p in pts})
    return Subspace(space, incl)


class Quotient:
    __slots__ = ("space", "projection", "class_of")

    def __init__(self, space, projection, class_of):
        self.space = space
        self.projection = projection
        self.class_of = class_of


def quotient(x, classes):
    """Quotient by a partition with the image-relation rule; on finite
    carriers this is simultaneously the PreTop and PsTop quotient."""
    x = _as_point_limit(x)
    blocks = [frozenset(c) for c in classes]
    seen = set()
    for b in blocks:
        if not b or (b & seen):
            raise NotAPartition("classes must be disjoint and non-empty")
        for p in b:
            if p not in x:
                raise UnknownPoint(p)
        seen |= b
    if seen != set(x.points):
        raise NotAPartition("classes must cover the carrier")

    # a class is named by its members in canonical carrier order
    name = {}
    for b in blocks:
        label = x.sorted_points(b)
        for p in b:
            name[p] = label
    pts = tuple(sorted({name[p] for p in x.points},
                       key=lambda lbl: x.index(lbl[0])))
    limits = {q: set() for q in pts}
    for a in x.points:
        limits[name[a]].update(name[b] for b in x.point_limits[a])
    space = make_space(pts, limits)
    proj = SpaceMap(x, space, {p: name[p] for p in x.points})
    return Quotient(space, proj, dict(name))


class PushoutResult:
    """Apex and legs of the pushout of A <- B -> Y, with the class map of
    the underlying quotient of the disjoint union."""

    __slots__ = ("apex", "leg_a", "leg_y", "class_map", "_cop")

    def __init__(self, apex, leg_a, leg_y, class_map, cop):
        self.apex = apex
        self.leg_a = leg_a
        self.leg_y = leg_y
        self.class_map = class_map
        self._cop = cop


def pushout(i, f):
    """Pushout of the span A <-i- B -f-> Y.

    The apex is the quotient of A + Y by the equivalence generated by
    i(b) ~ f(b); the legs are the composites through the quotient map.
    """
    if i.domain != f.domain:
        raise UnknownPoint("pushout needs a common span domain")
    A, Y = i.codomain, f.codomain
    cop = coproduct(A, Y)
    parent = {p: p for p in cop.space.points}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(p, q):
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[rq] = rp

    for b in i.domain.points:
        union((0, i.mapping[b]), (1, f.mapping[b]))

    groups = {}
    for p in cop.space.points:
        groups.setdefault(find(p), []).append(p)
    q = quotient(cop.space, groups.values())
    leg_a = SpaceMap(A, q.space, {a: q.class_of[(0, a)] for a in A.points})
    leg_y = SpaceMap(Y, q.space, {y: q.class_of[(1, y)] for y in Y.points})
    return PushoutResult(q.space, leg_a, leg_y, dict(q.class_of), cop)


def pushout_mediator(res, u, v):
    """The unique map out of a pushout apex agreeing with the cocone (u, v),
    or None when (u, v) does not glue."""
    if u.codomain != v.codomain:
        raise UnknownPoint("cocone needs a common target")
    mapping = {}
    for a in u.domain.points:
        cls = res.leg_a.mapping[a]
        val = u.mapping[a]
        if mapping.setdefault(cls, val) != val:
            return None
    for y in v.domain.points:
        cls = res.leg_y.mapping[y]
        val = v.mapping[y]
        if mapping.setdefault(cls, val) != val:
            return None
    return SpaceMap(res.apex, u.codomain, mapping)


class FunctionSpace:
    """The continuous-convergence structure on the set of continuous maps.

    Points of ``base`` are the graphs (image tuples in domain order) of the
    continuous maps; ``maps`` holds the corresponding SpaceMap objects in
    the same canonical order.
    """

    __slots__ = ("base", "domain", "codomain", "maps", "_by_graph")

    def __init__(self, base, domain, codomain, maps):
        self.base = base
        self.domain = domain
        self.codomain = codomain
        self.maps = maps
        self._by_graph = {m.graph(): m for m in maps}

    def point_of(self, f):
        g = f.graph()
        if g not in self._by_graph:
            raise NotContinuous("map is not a point of the function space")
        return g

    def map_of(self, point):
        return self._by_graph[point]


_FS_CACHE = {}


def function_space(x, y, cap=DEFAULT_EXP_CAP):
    """Materialize C(X, Y) with the point-filter instantiation of continuous
    convergence: f in lim g. iff for every x in lim y. in X,
    f(x) in lim g(y). in Y."""
    if x.kind != POINT_LIMIT or y.kind != POINT_LIMIT:
        raise KindMismatch("function spaces need point-limit operands")
    size = len(y.points) ** len(x.points) if x.points else 1
    if cap is not None and size > cap:
        raise ExponentialTooLarge(size, cap)
    key = (x._canonical(), y._canonical())
    cached = _FS_CACHE.get(key)
    if cached is not None:
        return cached

    from .search import continuous_maps

    maps = list(continuous_maps(x, y))
    graphs = [m.graph() for m in maps]
    ylim = y.point_limits

    def one(f, g):
        # f in lim g. per continuous convergence on point filters
        for yy in x.points:
            gy = g.mapping[yy]
            for xx in x.point_limits[yy]:
                if f.mapping[xx] not in ylim[gy]:
                    return False
        return True

    limits = {}
    for gi, g in enumerate(maps):
        limits[graphs[gi]] = {graphs[fi] for fi, f in enumerate(maps) if one(f, g)}
    base = make_space(tuple(graphs), limits)
    fs = FunctionSpace(base, x, y, maps)
    if len(_FS_CACHE) > 128:
        _FS_CACHE.clear()
    _FS_CACHE[key] = fs
    return fs


def evaluation(x, y, cap=DEFAULT_EXP_CAP):
    """The evaluation map C(X,Y) x X -> Y; continuity is certified, not
    assumed."""
    fs = function_space(x, y, cap=cap)
    prod = product(fs.base, x)
    mapping = {(g, a): fs.map_of(g).mapping[a] for (g, a) in prod.space.points}
    ev = SpaceMap(prod.space, y, mapping)
    return ev, fs, prod


def curry(f, x, y, cap=DEFAULT_EXP_CAP):
    """Transpose f : X x Y -> Z to X -> C(Y, Z).

    ``f.domain`` must be the product of ``x`` and ``y`` (pair points).
    """
    if not f.is_continuous():
        raise NotContinuous("curry needs a continuous map")
    z = f.codomain
    fs = function_space(y, z, cap=cap)
    mapping = {}
    for a in x.points:
        slice_map = SpaceMap(y, z, {b: f.mapping[(a, b)] for b in y.points})
        mapping[a] = fs.point_of(slice_map)
    return SpaceMap(x, fs.base, mapping), fs


def uncurry(g, x, y, z):
    """Inverse transpose of a C(Y,Z)-valued map: (a, b) -> g(a)(b).

    The target ``z`` is passed explicitly because function-space points are
    bare graphs and do not carry their codomain.
    """
    prod = product(x, y)
    mapping = {}
    for (a, b) in prod.space.points:
        graph = g.mapping[a]
        mapping[(a, b)] = graph[y.index(b)]
    return SpaceMap(prod.space, z, mapping)
