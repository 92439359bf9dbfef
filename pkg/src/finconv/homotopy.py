"""Discrete cylinders, finite-length homotopies, gluing, and homotopy
equivalence decisions.

The topological interval is replaced by the graded family I_n of discrete
paths.  A homotopy of length n is a continuous map on X x I_n; chains of
one-step homotopies and cylinder homotopies of the same length are
interchangeable, and transitivity is recovered by interval addition
(I_m glued end to end with I_n is I_{m+n}).
"""

from collections import deque

from .builders import path_space
from .core import POINT_LIMIT, SpaceMap, compose, identity_map, point_space
from .errors import (
    DomainMismatch,
    EndMismatch,
    KindMismatch,
    NotContinuous,
    NotEmbedding,
)
from .constructions import (
    product,
    pushout,
    pushout_mediator,
    quotient,
    subspace,
    function_space,
)
from .search import find_isomorphism


class IntervalObject:
    """The discrete interval I_n with its end inclusions and projection."""

    __slots__ = ("length", "space", "point", "end0", "end1", "proj")

    def __init__(self, n):
        if n < 1:
            raise ValueError("interval length must be positive")
        self.length = n
        self.space = path_space(n)
        self.point = point_space()
        self.end0 = SpaceMap(self.point, self.space, {"*": 0})
        self.end1 = SpaceMap(self.point, self.space, {"*": n})
        self.proj = SpaceMap(self.space, self.point, {t: "*" for t in self.space.points})


class Cylinder:
    """X x I_n together with the structure maps i0, i1 and p."""

    __slots__ = ("base", "interval", "space", "i0", "i1", "p", "prod")

    def __init__(self, base, interval, space, i0, i1, p, prod):
        self.base = base
        self.interval = interval
        self.space = space
        self.i0 = i0
        self.i1 = i1
        self.p = p
        self.prod = prod


def cylinder(x, n):
    """The length-n cylinder on ``x`` with end inclusions and projection."""
    iv = IntervalObject(n)
    prod = product(x, iv.space)
    space = prod.space
    i0 = SpaceMap(x, space, {a: (a, 0) for a in x.points})
    i1 = SpaceMap(x, space, {a: (a, n) for a in x.points})
    p = SpaceMap(space, x, {pt: pt[0] for pt in space.points})
    return Cylinder(x, iv, space, i0, i1, p, prod)


def cylinder_map(f, n):
    """I_n applied to a map: (a, t) -> (f(a), t)."""
    cx = cylinder(f.domain, n)
    cy = cylinder(f.codomain, n)
    return SpaceMap(cx.space, cy.space,
                    {(a, t): (f.mapping[a], t) for (a, t) in cx.space.points})


def one_step(f, g):
    """Decide whether f and g are one-step homotopic.

    True iff both maps are continuous and for every x in lim y. in the
    domain, g(x) in lim f(y). and f(x) in lim g(y). in the codomain; this
    is exactly continuity of the assembled map on X x I_1.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("one_step needs a common domain and codomain")
    if f.domain.kind != POINT_LIMIT or f.codomain.kind != POINT_LIMIT:
        raise KindMismatch("one_step needs point-limit spaces")
    if not f.is_continuous() or not g.is_continuous():
        return False
    X, Y = f.domain, f.codomain
    ylim = Y.point_limits
    fm, gm = f.mapping, g.mapping
    for y in X.points:
        lim_fy = ylim[fm[y]]
        lim_gy = ylim[gm[y]]
        for x in X.point_limits[y]:
            if gm[x] not in lim_fy or fm[x] not in lim_gy:
                return False
    return True


class Homotopy:
    """A continuous map on a cylinder with its two end restrictions."""

    __slots__ = ("cyl", "map", "start", "end")

    def __init__(self, cyl, H, check=True):
        self.cyl = cyl
        self.map = H
        if check and not H.is_continuous():
            raise NotContinuous("homotopy map must be continuous")
        self.start = compose(H, cyl.i0)
        self.end = compose(H, cyl.i1)
        if check:
            n = cyl.interval.length
            for a in cyl.base.points:
                if H.mapping[(a, 0)] != self.start.mapping[a]:
                    raise EndMismatch("start end equation fails")
                if H.mapping[(a, n)] != self.end.mapping[a]:
                    raise EndMismatch("end equation fails")

    @property
    def length(self):
        return self.cyl.interval.length

    def level(self, t):
        """The time-t slice as a map."""
        return SpaceMap(self.cyl.base, self.map.codomain,
                        {a: self.map.mapping[(a, t)] for a in self.cyl.base.points})


def homotopy_from_chain(maps):
    """Assemble the stepwise homotopy H(a, t) = maps[t](a).

    Consecutive maps must be one-step homotopic; a single-map chain yields
    the constant homotopy of length 1.
    """
    if not maps:
        raise EndMismatch("empty chain")
    if len(maps) == 1:
        return constant_homotopy(maps[0], 1)
    X = maps[0].domain
    Y = maps[0].codomain
    n = len(maps) - 1
    cyl = cylinder(X, n)
    H = SpaceMap(cyl.space, Y,
                 {(a, t): maps[t].mapping[a] for (a, t) in cyl.space.points})
    return Homotopy(cyl, H)


def constant_homotopy(f, n):
    cyl = cylinder(f.domain, n)
    H = SpaceMap(cyl.space, f.codomain,
                 {(a, t): f.mapping[a] for (a, t) in cyl.space.points})
    return Homotopy(cyl, H)


def reverse(h):
    n = h.length
    cyl = h.cyl
    H = SpaceMap(cyl.space, h.map.codomain,
                 {(a, t): h.map.mapping[(a, n - t)] for (a, t) in cyl.space.points})
    return Homotopy(cyl, H)


def concatenate(first, second):
    """F * G through the interval-addition isomorphism I_m u I_n = I_{m+n}."""
    if first.cyl.base != second.cyl.base or first.map.codomain != second.map.codomain:
        raise DomainMismatch("concatenation needs matching spaces")
    if first.end.mapping != second.start.mapping:
        raise EndMismatch("first end must equal second start")
    m = first.length
    cyl = cylinder(first.cyl.base, m + second.length)
    mapping = {}
    for (a, t) in cyl.space.points:
        if t <= m:
            mapping[(a, t)] = first.map.mapping[(a, t)]
        else:
            mapping[(a, t)] = second.map.mapping[(a, t - m)]
    return Homotopy(cyl, SpaceMap(cyl.space, first.map.codomain, mapping))


# -- interval gluing ---------------------------------------------------


def interval_glue(m, n):
    """The pushout I_m u_{1~0} I_n (end of the first glued to start of the
    second), with the two pushout legs."""
    im = IntervalObject(m)
    iv = IntervalObject(n)
    pt = point_space()
    res = pushout(SpaceMap(pt, im.space, {"*": m}), SpaceMap(pt, iv.space, {"*": 0}))
    return res, im, iv


class GluingReport:
    __slots__ = ("length", "literal_holds", "literal_reason",
                 "substitute_holds", "substitute_target")

    def __init__(self, length, literal_holds, literal_reason,
                 substitute_holds, substitute_target):
        self.length = length
        self.literal_holds = literal_holds
        self.literal_reason = literal_reason
        self.substitute_holds = substitute_holds
        self.substitute_target = substitute_target

    def to_dict(self):
        return {
            "length": self.length,
            "literal_holds": self.literal_holds,
            "literal_reason": self.literal_reason,
            "substitute_holds": self.substitute_holds,
            "substitute_target": self.substitute_target,
        }


def concat_law(m, n):
    """Whether I_m u I_n is isomorphic to I_{m+n} by an end-preserving iso."""
    res, im, iv = interval_glue(m, n)
    target = IntervalObject(m + n)
    start = res.leg_a.mapping[0]
    finish = res.leg_y.mapping[n]
    iso = find_isomorphism(res.apex, target.space, pins={start: 0, finish: m + n})
    return iso is not None


def gluing_check(n):
    """Decide the literal gluing property for I_n and the graded substitute.

    The literal property asks for an end-compatible isomorphism
    I_n u_{1~0} I_n = I_n; the substitute law replaces the right side by
    I_{2n}.
    """
    res, im, iv = interval_glue(n, n)
    literal_reason = None
    if len(res.apex.points) != n + 1:
        literal = False
        literal_reason = (
            f"carrier sizes differ: {len(res.apex.points)} glued points vs {n + 1}"
        )
    else:  # pragma: no cover - only n = 0 could reach this and lengths are >= 1
        start = res.leg_a.mapping[0]
        finish = res.leg_y.mapping[n]
        literal = find_isomorphism(res.apex, im.space, pins={start: 0, finish: n}) is not None
        if not literal:
            literal_reason = "no end-compatible isomorphism exists"
    return GluingReport(n, literal, literal_reason, concat_law(n, n), 2 * n)


# -- reachability over the one-step relation ---------------------------


def _one_step_neighbors(fs):
    """Symmetrized adjacency of the function-space structure: the one-step
    relation between its points."""
    base = fs.base
    out = base.point_limits
    nbrs = {}
    for g in base.points:
        nbrs[g] = tuple(f for f in base.points if f != g and f in out[g] and g in out[f])
    return nbrs


_CLASS_CACHE = {}


def _map_graphs(x, y, cap):
    """Continuous maps x -> y as index graphs, capped by materialized count
    (the enumeration prunes by continuity, so the cap counts real maps)."""
    from .constructions import DEFAULT_EXP_CAP
    from .errors import ExponentialTooLarge
    from .search import continuous_maps

    eff = cap if cap is not None else DEFAULT_EXP_CAP
    graphs = []
    for f in continuous_maps(x, y, cap=(eff + 1) if eff is not None else None):
        graphs.append(tuple(y.index(f.mapping[p]) for p in x.points))
        if eff is not None and len(graphs) > eff:
            raise ExponentialTooLarge(len(graphs), eff)
    return graphs


def _graphs_and_components(x, y, cap):
    """Cached (graphs, component table) for C(X, Y)."""
    from .search import single_move_components

    key = (x._canonical(), y._canonical())
    hit = _CLASS_CACHE.get(key)
    if hit is not None:
        return hit
    graphs = _map_graphs(x, y, cap)
    class_of, reps = single_move_components(x, y, graphs)
    if len(_CLASS_CACHE) > 128:
        _CLASS_CACHE.clear()
    _CLASS_CACHE[key] = (graphs, class_of, reps)
    return graphs, class_of, reps


def _graph_to_map(x, y, graph):
    return SpaceMap(x, y, {p: y.points[graph[i]] for i, p in enumerate(x.points)})


def homotopy_classes(x, y, cap=None):
    """Partition of C(X, Y) into finite-length homotopy classes.

    Classes are the connected components of the one-step relation (computed
    through single-point moves, whose reachability closure is the same),
    returned in canonical order as lists of SpaceMaps.
    """
    graphs, class_of, reps = _graphs_and_components(x, y, cap)
    classes = [[] for _ in reps]
    for g in sorted(graphs):
        classes[class_of[g]].append(_graph_to_map(x, y, g))
    return classes


def are_homotopic(f, g, cap=None):
    """Shortest one-step chain from f to g, or None if no chain exists.

    Ties are broken by canonical map order, so witnesses are reproducible.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch("are_homotopic needs a common domain and codomain")
    if not f.is_continuous() or not g.is_continuous():
        raise NotContinuous("both maps must be continuous")
    from .constructions import DEFAULT_EXP_CAP

    fs = function_space(f.domain, f.codomain,
                        cap=cap if cap is not None else DEFAULT_EXP_CAP)
    nbrs = _one_step_neighbors(fs)
    src, dst = f.graph(), g.graph()
    if src == dst:
        return [f]
    parent = {src: None}
    frontier = deque([src])
    while frontier:
        cur = frontier.popleft()
        for nxt in sorted(nbrs[cur]):
            if nxt not in parent:
                parent[nxt] = cur
                if nxt == dst:
                    chain = [nxt]
                    while parent[chain[-1]] is not None:
                        chain.append(parent[chain[-1]])
                    chain.reverse()
                    return [fs.map_of(p) for p in chain]
                frontier.append(nxt)
    return None


def _witness_chain(x, y, graphs, f, g, cap):
    """A homotopy chain from f to g: shortest one-step chain when the map
    set is small enough for the materialized search, a single-move chain
    otherwise (still a valid certificate)."""
    from .search import single_move_chain

    if len(graphs) <= 4000:
        try:
            return are_homotopic(f, g, cap=cap)
        except Exception:
            pass
    src = tuple(y.index(f.mapping[p]) for p in x.points)
    dst = tuple(y.index(g.mapping[p]) for p in x.points)
    chain = single_move_chain(x, y, graphs, src, dst)
    if chain is None:
        return None
    return [_graph_to_map(x, y, gr) for gr in chain]


def is_homotopy_equivalence(f, cap=None):
    """Search for a homotopy inverse of f.

    Returns (g, chain to id_Y, chain to id_X) for the first inverse in
    canonical order, or None after exhausting all candidates.
    """
    from .search import continuous_maps

    X, Y = f.domain, f.codomain
    id_x, id_y = identity_map(X), identity_map(Y)
    graphs_x, comp_x, _ = _graphs_and_components(X, X, cap)
    graphs_y, comp_y, _ = _graphs_and_components(Y, Y, cap)

    def graph_idx(m, dom, cod):
        return tuple(cod.index(m.mapping[p]) for p in dom.points)

    want_x = comp_x[graph_idx(id_x, X, X)] if X.points else None
    want_y = comp_y[graph_idx(id_y, Y, Y)] if Y.points else None
    for g in continuous_maps(Y, X):
        fg = compose(f, g)
        gf = compose(g, f)
        if Y.points and comp_y[graph_idx(fg, Y, Y)] != want_y:
            continue
        if X.points and comp_x[graph_idx(gf, X, X)] != want_x:
            continue
        return (g, _witness_chain(Y, Y, graphs_y, fg, id_y, cap),
                _witness_chain(X, X, graphs_x, gf, id_x, cap))
    return None


# -- relative cylinders -------------------------------------------------


class RelativeCylinder:
    """The stationary-on-B model of a relative cylinder.

    ``space`` is (A x I_n) with the column of every point of i(B) collapsed;
    ``i_rel`` maps the double A u_B A onto the two ends, ``p_rel`` projects
    back to A, and ``p_rel o i_rel`` equals the folding map exactly.
    """

    __slots__ = ("inclusion", "length", "space", "double", "i_rel", "p_rel",
                 "fold", "class_of", "cyl")

    def __init__(self, inclusion, length, space, double, i_rel, p_rel, fold,
                 class_of, cyl):
        self.inclusion = inclusion
        self.length = length
        self.space = space
        self.double = double
        self.i_rel = i_rel
        self.p_rel = p_rel
        self.fold = fold
        self.class_of = class_of
        self.cyl = cyl


def check_embedding(i):
    """Raise NotEmbedding unless i is injective, continuous and a
    structure-isomorphism onto its image subspace."""
    vals = list(i.mapping.values())
    if len(set(vals)) != len(vals):
        raise NotEmbedding("not injective")
    if not i.is_continuous():
        raise NotEmbedding("not continuous")
    img = subspace(i.codomain, set(vals))
    B = i.domain
    if B.kind != POINT_LIMIT or i.codomain.kind != POINT_LIMIT:
        raise KindMismatch("embeddings are checked on point-limit spaces")
    for b in B.points:
        image_lim = {i.mapping[q] for q in B.point_limits[b]}
        if image_lim != set(img.space.point_limits[i.mapping[b]]):
            raise NotEmbedding(f"subspace structure disagrees at {b!r}")


def relative_cylinder(i, n):
    """Relative cylinder on an embedding i : B -> A at length n."""
    check_embedding(i)
    A = i.codomain
    image = {i.mapping[b] for b in i.domain.points}
    cyl = cylinder(A, n)
    blocks = []
    for a in A.points:
        if a in image:
            blocks.append([(a, t) for t in range(n + 1)])
        else:
            blocks.extend([[(a, t)] for t in range(n + 1)])
    q = quotient(cyl.space, blocks)
    double = pushout(i, i)
    u = SpaceMap(A, q.space, {a: q.class_of[(a, 0)] for a in A.points})
    v = SpaceMap(A, q.space, {a: q.class_of[(a, n)] for a in A.points})
    i_rel = pushout_mediator(double, u, v)
    p_rel = SpaceMap(q.space, A, {c: c[0][0] for c in q.space.points})
    fold = pushout_mediator(double, identity_map(A), identity_map(A))
    return RelativeCylinder(i, n, q.space, double, i_rel, p_rel, fold,
                            dict(q.class_of), cyl)


def verify_relative_cylinder(rc, cap=None):
    """Per-instance certification: the fold factors exactly, the ends embed,
    and p is a homotopy equivalence (searched)."""
    fold_ok = compose(rc.p_rel, rc.i_rel).mapping == rc.fold.mapping
    witness = is_homotopy_equivalence(rc.p_rel, cap=cap)
    return {
        "fold_factorization": fold_ok,
        "i_rel_continuous": rc.i_rel.is_continuous(),
        "p_rel_continuous": rc.p_rel.is_continuous(),
        "p_rel_equivalence": witness is not None,
    }


def is_homotopy_rel(h, i):
    """Whether the homotopy h is stationary on the image of i, i.e. factors
    through the relative cylinder of i."""
    image = {i.mapping[b] for b in i.domain.points}
    n = h.length
    for a in image:
        base_val = h.map.mapping[(a, 0)]
        for t in range(1, n + 1):
            if h.map.mapping[(a, t)] != base_val:
                return False
    return True
