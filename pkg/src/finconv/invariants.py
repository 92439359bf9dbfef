"""Based objects, wedges, tori, suspensions, and budgeted homotopy groups.

Homotopy sets [Sigma^n S0, X] are computed per interval budget L: based
continuous maps out of the budget-L sphere model are enumerated and
partitioned by reachability under based one-step moves.  Results are always
budget-qualified: stabilization between consecutive budgets is reported,
never assumed, and the group structure is assembled by concatenation at
doubled length with collapse-map bookkeeping.
"""

from .builders import cycle_space, discrete_space
from .core import POINT_LIMIT, SpaceMap, compose, identity_map, point_space
from .errors import (
    BudgetExhausted,
    ExponentialTooLarge,
    KindMismatch,
    NotALoop,
    NotEmbedding,
)
from .constructions import pushout, pushout_mediator
from .homotopy import one_step, relative_cylinder
from .search import continuous_maps


class BasedSpace:
    """A space with a chosen base point; the one-point space is terminal,
    so the trivial map to it is unique."""

    __slots__ = ("space", "base")

    def __init__(self, space, base):
        if base not in space:
            raise NotEmbedding(f"base point {base!r} outside the carrier")
        self.space = space
        self.base = base

    def trivial_map(self):
        pt = point_space()
        return SpaceMap(self.space, pt, {p: "*" for p in self.space.points})

    def __repr__(self):
        return f"BasedSpace({len(self.space)} points, base={self.base!r})"


def base_inclusion(based):
    pt = point_space()
    return SpaceMap(pt, based.space, {"*": based.base})


def wedge(a, b):
    """One-point union of based spaces, based at the glued class."""
    po = pushout(base_inclusion(a), base_inclusion(b))
    base = po.leg_a.mapping[a.base]
    return BasedSpace(po.apex, base), po


class TorusResult:
    """The torus on an embedding Y -> X: the relative cylinder with both
    ends folded onto X."""

    __slots__ = ("space", "tau", "section", "retraction", "rel_cyl")

    def __init__(self, space, tau, section, retraction, rel_cyl):
        self.space = space
        self.tau = tau
        self.section = section
        self.retraction = retraction
        self.rel_cyl = rel_cyl


def torus(i, n):
    """Pushout of the fold along the relative-cylinder inclusion."""
    rc = relative_cylinder(i, n)
    X = i.codomain
    po = pushout(rc.i_rel, rc.fold)
    tau = po.leg_a
    section = po.leg_y
    retraction = pushout_mediator(po, rc.p_rel, identity_map(X))
    if compose(retraction, tau).mapping != rc.p_rel.mapping:
        raise AssertionError("torus retraction fails r o tau = p")
    return TorusResult(po.apex, tau, section, retraction, rc)


class SuspensionLevel:
    """One suspension step with its bookkeeping.

    ``cyl_class[(a, t)]`` is the image of the cylinder point (a, t) in the
    suspension carrier, after canonical relabeling to integers; it realizes
    the collapse A x I_n -> Sigma A in one lookup.
    """

    __slots__ = ("based", "length", "cyl_class", "rep_pair", "sigma_source")

    def __init__(self, based, length, cyl_class, rep_pair, sigma_source):
        self.based = based
        self.length = length
        self.cyl_class = cyl_class
        self.rep_pair = rep_pair
        self.sigma_source = sigma_source


def suspension(based, n):
    """The based suspension by the two-pushout composite: torus on the base
    inclusion, then collapse of the section copy of A."""
    A = based.space
    tor = torus(base_inclusion(based), n)
    pt = point_space()
    o_a = SpaceMap(A, pt, {p: "*" for p in A.points})
    po = pushout(tor.section, o_a)
    sigma = po.leg_a
    base_cls = po.leg_y.mapping["*"]

    raw = po.apex
    relabel = {p: idx for idx, p in enumerate(raw.points)}
    pts = tuple(range(len(raw.points)))
    limits = {relabel[p]: {relabel[q] for q in raw.point_limits[p]}
              for p in raw.points}
    from .core import make_space

    space = make_space(pts, limits)
    new_based = BasedSpace(space, relabel[base_cls])

    cyl_class = {}
    rep_pair = {}
    for a in A.points:
        for t in range(n + 1):
            tor_pt = tor.tau.mapping[tor.rel_cyl.class_of[(a, t)]]
            label = relabel[sigma.mapping[tor_pt]]
            cyl_class[(a, t)] = label
            if label not in rep_pair:
                rep_pair[label] = (a, t)
    # the base class may only be reachable through collapsed columns; make
    # sure it still has a representative pair
    if new_based.base not in rep_pair:
        rep_pair[new_based.base] = (based.base, 0)
    return SuspensionLevel(new_based, n, cyl_class, rep_pair, based)


class SuspensionTower:
    """Iterated suspensions of a based space with per-level bookkeeping."""

    __slots__ = ("seed", "levels")

    def __init__(self, seed, levels):
        self.seed = seed
        self.levels = levels

    @property
    def top(self):
        return self.levels[-1].based if self.levels else self.seed

    def height(self):
        return len(self.levels)


def sphere_space():
    """S0: the based discrete pair."""
    return BasedSpace(discrete_space((0, 1)), 0)


def sphere_model(k, lengths):
    """The budget sphere model: k iterated suspensions of S0 with the given
    interval lengths (one per level)."""
    lengths = tuple(lengths)
    if len(lengths) != k:
        raise ValueError("need one interval length per suspension level")
    seed = sphere_space()
    levels = []
    current = seed
    for n in lengths:
        lvl = suspension(current, n)
        levels.append(lvl)
        current = lvl.based
    return SuspensionTower(seed, levels)


def tower_collapse(big, small):
    """The level-wise collapse map big.top -> small.top, for towers of the
    same height with big lengths >= small lengths."""
    if big.height() != small.height():
        raise KindMismatch("towers must have the same height")
    mapping = {p: p for p in big.seed.space.points}
    for lb, ls in zip(big.levels, small.levels):
        if lb.length < ls.length:
            raise KindMismatch("collapse goes from longer to shorter budgets")
        nxt = {}
        for q in lb.based.space.points:
            xi, t = lb.rep_pair[q]
            nxt[q] = ls.cyl_class[(mapping[xi], min(t, ls.length))]
        mapping = nxt
    f = SpaceMap(big.top.space, small.top.space, mapping)
    if not f.is_continuous():
        raise AssertionError("tower collapse failed to be continuous")
    return f


# -- connected components and based classes -----------------------------


def pi0(space):
    """Connected components via union-find on the symmetrized (mutual)
    point-limit relation, in canonical order.

    Two points are joined when each lies in the other's point-filter limits;
    this is exactly one-step homotopy of the constant maps, so the result
    agrees with the homotopy classes of maps from the one-point space.  One
    -sided adjacency (Sierpinski-like pairs) does not connect: no finite
    interval supports a path across it.
    """
    pts = space.points
    parent = {p: p for p in pts}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for p in pts:
        for q in space.limit_of_point(p):
            if p in space.limit_of_point(q):
                rp, rq = find(p), find(q)
                if rp != rq:
                    parent[rq] = rp
    comps = {}
    for p in pts:
        comps.setdefault(find(p), []).append(p)
    return tuple(tuple(members) for _, members in
                 sorted(comps.items(), key=lambda kv: space.index(kv[1][0])))


class BasedClasses:
    """Based maps dom -> cod partitioned by based one-step reachability.

    Graphs are tuples of codomain indices in domain-carrier order; classes
    are numbered in order of their smallest graph.
    """

    __slots__ = ("dom", "cod", "graphs", "class_of", "reps")

    def __init__(self, dom, cod, graphs, class_of, reps):
        self.dom = dom
        self.cod = cod
        self.graphs = graphs
        self.class_of = class_of
        self.reps = reps

    def __len__(self):
        return len(self.reps)

    def locate(self, graph):
        return self.class_of[graph]


def _graph_of(mapping, dom, cod):
    return tuple(cod.index(mapping[p]) for p in dom.points)


def based_classes(dom_based, cod_based, map_cap=500_000):
    """Classes of based continuous maps under based one-step homotopy.

    Components are explored with single-point moves; their reachability
    closure equals the full one-step relation's (the hybrid argument, also
    exercised against the brute-force relation in the tests).
    """
    dom, cod = dom_based.space, cod_based.space
    if dom.kind != POINT_LIMIT or cod.kind != POINT_LIMIT:
        raise KindMismatch("based classes need point-limit spaces")
    base_i = dom.index(dom_based.base)
    base_val = cod.index(cod_based.base)

    graphs = []
    for f in continuous_maps(dom, cod, fixed={dom_based.base: cod_based.base},
                             cap=map_cap + 1):
        graphs.append(_graph_of(f.mapping, dom, cod))
        if len(graphs) > map_cap:
            raise ExponentialTooLarge(len(graphs), map_cap)
    graphs.sort()

    from .search import single_move_components

    class_of, reps = single_move_components(dom, cod, graphs, frozen=(base_i,))
    del base_val
    return BasedClasses(dom, cod, graphs, class_of, reps)


# -- winding oracle ------------------------------------------------------


def _lift_step(d, k):
    d %= k
    if d == 0:
        return 0
    if d == 1:
        return 1
    if d == k - 1:
        return -1
    raise NotALoop(f"step of size {d} is not a cycle move")


def winding_number(values, k):
    """Winding of a loop on the k-cycle given as a value sequence.

    ``values`` lists the visited cycle positions; the wrap step from the
    last value back to the first is included.  One-step invariant for
    k >= 5 (verified exhaustively in the tests at small lengths).
    """
    if k < 3:
        return 0
    if not values:
        raise NotALoop("empty loop")
    total = 0
    for a, b in zip(values, values[1:]):
        total += _lift_step(b - a, k)
    total += _lift_step(values[0] - values[-1], k)
    if total % k != 0:
        raise NotALoop("increments do not close up")
    return total // k


def winding_oracle(loop, k=None):
    """Winding of a based loop given as a SpaceMap from a cycle or interval.

    Cycle domains wrap around; interval domains must start and end at the
    codomain base (index 0), otherwise NotALoop is raised.
    """
    cod = loop.codomain
    if k is None:
        k = len(cod.points)
    dom = loop.domain
    vals = [cod.index(loop.mapping[p]) for p in dom.points]
    interval_like = len(dom.points) >= 2 and \
        dom.index(dom.points[-1]) not in dom.out_idx[0]
    if interval_like:
        if vals[0] != vals[-1]:
            raise NotALoop("interval loop must return to its start")
        vals = vals[:-1]
    if vals and vals[0] != 0:
        raise NotALoop("loop must be based at index 0")
    return winding_number(vals, k)


# -- straightening on cycle targets --------------------------------------


def _canonical_lift(length, w, k):
    if w >= 0:
        return [min(i, w * k) for i in range(length)]
    return [max(-i, w * k) for i in range(length)]


def straighten_loop(values, k):
    """Monotone chain of single moves from a loop to the canonical
    representative of its winding class.

    Returns the chain as a list of value tuples (first entry the input,
    last the canonical loop).  Raises NotALoop if the winding class has no
    representative at this length.
    """
    L = len(values)
    w = winding_number(values, k)
    if abs(w) * k > L:
        raise NotALoop("winding not realizable at this length")
    lift = [0]
    for a, b in zip(values, values[1:]):
        lift.append(lift[-1] + _lift_step(b - a, k))
    goal = _canonical_lift(L, w, k)
    end = w * k  # virtual lift value of the wrap position
    chain = [tuple(values)]
    cur = list(lift)

    def emit():
        chain.append(tuple(v % k for v in cur))

    while cur != goal:
        diffs = [cur[i] - goal[i] for i in range(L)]
        hi = max(diffs)
        lo = min(diffs)
        if hi > 0:
            candidates = [i for i in range(1, L) if diffs[i] == hi]
            pos = max(candidates, key=lambda i: cur[i])
            left = cur[pos - 1]
            right = cur[pos + 1] if pos + 1 < L else end
            if abs(cur[pos] - 1 - left) > 1 or abs(right - (cur[pos] - 1)) > 1:
                raise AssertionError("straightening step blocked")
            cur[pos] -= 1
        else:
            candidates = [i for i in range(1, L) if diffs[i] == lo]
            pos = min(candidates, key=lambda i: cur[i])
            left = cur[pos - 1]
            right = cur[pos + 1] if pos + 1 < L else end
            if abs(cur[pos] + 1 - left) > 1 or abs(right - (cur[pos] + 1)) > 1:
                raise AssertionError("straightening step blocked")
            cur[pos] += 1
        emit()
    return chain


def cycle_connection(values_a, values_b, k, verify=True):
    """A verified single-move chain between two based loops on C_k of the
    same length, or None when their windings differ.

    Every consecutive pair of the returned chain is checked with the real
    one-step predicate, so a non-None answer is a certificate.
    """
    if len(values_a) != len(values_b):
        raise NotALoop("loops must have the same length")
    if winding_number(values_a, k) != winding_number(values_b, k):
        return None
    fwd = straighten_loop(values_a, k)
    back = straighten_loop(values_b, k)
    chain = fwd + back[-2::-1]
    out = [chain[0]]
    for vals in chain[1:]:
        if vals != out[-1]:
            out.append(vals)
    if verify:
        L = len(values_a)
        dom = cycle_space(L)
        cod = cycle_space(k)
        for a, b in zip(out, out[1:]):
            fa = SpaceMap(dom, cod, {t: a[t] for t in range(L)})
            fb = SpaceMap(dom, cod, {t: b[t] for t in range(L)})
            if not one_step(fa, fb):
                raise AssertionError("straightening produced an illegal move")
    return out


def as_cycle(space):
    """Try to order the carrier of ``space`` as a k-cycle; returns the point
    list in cycle order or None."""
    pts = space.points
    k = len(pts)
    if k < 3:
        return None
    nbr = {}
    for p in pts:
        around = set(space.limit_of_point(p)) - {p}
        for q in around:
            if p not in space.limit_of_point(q):
                return None
        if k == 3:
            if len(around) != 2:
                return None
        elif len(around) != 2:
            return None
        nbr[p] = sorted(around, key=space.index)
    order = [pts[0], nbr[pts[0]][0]]
    while len(order) < k:
        prev, cur = order[-2], order[-1]
        nxt = [q for q in nbr[cur] if q != prev]
        if len(nxt) != 1:
            return None
        order.append(nxt[0])
    if order[0] not in nbr[order[-1]]:
        return None
    return order


# -- budgeted homotopy groups --------------------------------------------


class PiNResult:
    """Budget-qualified homotopy classes with optional group structure."""

    __slots__ = ("n", "budgets", "class_counts", "reps", "stab_bijective",
                 "stabilized", "group", "windings")

    def __init__(self, n, budgets, class_counts, reps, stab_bijective,
                 stabilized, group, windings):
        self.n = n
        self.budgets = budgets
        self.class_counts = class_counts
        self.reps = reps
        self.stab_bijective = stab_bijective
        self.stabilized = stabilized
        self.group = group
        self.windings = windings

    def to_dict(self):
        return {
            "n": self.n,
            "budgets": list(self.budgets),
            "class_counts": list(self.class_counts),
            "stabilization_bijective": list(self.stab_bijective),
            "stabilized": self.stabilized,
            "group": self.group,
            "windings": self.windings,
        }


def _tower_for(n, L):
    return sphere_model(n, (L,) * n)


def _cycle_values(classes, graph, order_idx):
    return [graph[i] for i in order_idx]


def pi_n(based, n, budgets, map_cap=500_000, group=True):
    """Budgeted pi_n: classes of based maps from the budget-L sphere model,
    stabilization maps between consecutive budgets, and a (possibly
    partial) group table at the last budget for n >= 1."""
    if n == 0:
        s0 = sphere_space()
        cls = based_classes(s0, based, map_cap=map_cap)
        reps = list(cls.reps)
        return PiNResult(0, tuple(budgets), [len(reps)] * len(tuple(budgets)) or [len(reps)],
                         reps, [True] * max(len(tuple(budgets)) - 1, 0),
                         True, None, None)
    budgets = tuple(budgets)
    if not budgets or any(b2 <= b1 for b1, b2 in zip(budgets, budgets[1:])):
        raise BudgetExhausted("budgets must be strictly increasing")

    towers = {}
    partitions = {}
    counts = []
    for L in budgets:
        towers[L] = _tower_for(n, L)
        top = towers[L].top
        partitions[L] = based_classes(top, based, map_cap=map_cap)
        counts.append(len(partitions[L]))

    stab_bij = []
    for L1, L2 in zip(budgets, budgets[1:]):
        kappa = tower_collapse(towers[L2], towers[L1])
        small, big = partitions[L1], partitions[L2]
        targets = []
        for rep in small.reps:
            mapped = tuple(rep[small.dom.index(kappa.mapping[p])]
                           for p in big.dom.points)
            targets.append(big.locate(mapped))
        stab_bij.append(len(set(targets)) == len(targets)
                        and len(targets) == len(big.reps))
    stabilized = bool(stab_bij) and stab_bij[-1]

    last = budgets[-1]
    part = partitions[last]
    group_data = None
    windings = None

    cyc = as_cycle(based.space) if n == 1 else None
    top = towers[last].top
    top_cyc = as_cycle(top.space) if n == 1 else None
    if cyc is not None and top_cyc is not None and n == 1:
        windings, group_data = _cycle_group(based, part, top, cyc, top_cyc, last)
    elif group and n >= 1:
        group_data = _generic_group(based, n, part, towers[last], last, map_cap)

    reps = list(part.reps)
    return PiNResult(n, budgets, counts, reps, stab_bij, stabilized,
                     group_data, windings)


def _rotate_to_base(order, base):
    i = order.index(base)
    return order[i:] + order[:i]


def _cycle_group(based, part, top, cyc, top_cyc, L):
    """Group table for cycle targets via concatenation at doubled length and
    verified straightening chains."""
    k = len(cyc)
    cod = based.space
    base_first = _rotate_to_base(cyc, based.base)
    cyc_idx = [cod.index(p) for p in base_first]
    inv_cyc = {v: i for i, v in enumerate(cyc_idx)}

    top_order = _rotate_to_base(top_cyc, top.base)
    top_pos = [top.space.index(p) for p in top_order]

    def loop_values(graph):
        # positions around the domain cycle, values as cycle coordinates
        return [inv_cyc[graph[i]] for i in top_pos]

    windings = []
    for rep in part.reps:
        windings.append(winding_number(loop_values(rep), k))

    ntable = len(part.reps)
    table = [[None] * ntable for _ in range(ntable)]
    by_winding = {w: i for i, w in enumerate(windings)}
    for i, wi in enumerate(windings):
        for j, wj in enumerate(windings):
            w = wi + wj
            target = by_winding.get(w)
            if target is None or abs(w) * k > L:
                continue
            vals_i = loop_values(part.reps[i])
            vals_j = loop_values(part.reps[j])
            product = vals_i + vals_j
            candidate = loop_values(part.reps[target]) + [0] * L
            if cycle_connection(product, candidate, k) is not None:
                table[i][j] = target
    identity = by_winding.get(0)
    inverses = [by_winding.get(-w) for w in windings]
    group_data = {
        "budget": L,
        "table": table,
        "identity": identity,
        "inverses": inverses,
        "method": "winding-straightening",
    }
    return windings, group_data


def _generic_group(based, n, part, tower, L, map_cap):
    """Group table by exact class computation at doubled top length; entries
    stay None when the doubled budget is out of reach."""
    prev = tower.levels[-2].based if tower.height() > 1 else tower.seed
    try:
        ext_level = suspension(prev, 2 * L)
        ext = SuspensionTower(tower.seed, tower.levels[:-1] + [ext_level])
        ext_part = based_classes(ext.top, based, map_cap=map_cap)
    except ExponentialTooLarge:
        return {"budget": L, "table": None, "identity": None,
                "inverses": None, "method": "out-of-budget"}

    kappa = tower_collapse(ext, tower)
    top = tower.top

    def extend(graph):
        return tuple(graph[top.space.index(kappa.mapping[p])]
                     for p in ext.top.space.points)

    stab_class = [ext_part.locate(extend(rep)) for rep in part.reps]
    located = {c: i for i, c in enumerate(stab_class)}

    lvl = ext_level
    half = tower.levels[-1]

    def pinch_product(rep_a, rep_b):
        mapping = {}
        cod = based.space
        for q in ext.top.space.points:
            xi, t = lvl.rep_pair[q]
            if t <= L:
                src = half.cyl_class[(xi, t)]
                val = rep_a[top.space.index(src)]
            else:
                src = half.cyl_class[(xi, t - L)]
                val = rep_b[top.space.index(src)]
            mapping[q] = cod.points[val]
        return _graph_of(mapping, ext.top.space, cod)

    ntable = len(part.reps)
    table = [[None] * ntable for _ in range(ntable)]
    for i, ra in enumerate(part.reps):
        for j, rb in enumerate(part.reps):
            cls = ext_part.locate(pinch_product(ra, rb))
            table[i][j] = located.get(cls)
    const = tuple([based.space.index(based.base)] * len(top.space.points))
    identity = part.locate(const) if const in part.class_of else None
    inverses = []
    for i in range(ntable):
        inv = None
        if identity is not None:
            for j in range(ntable):
                if table[i][j] == identity and table[j][i] == identity:
                    inv = j
                    break
        inverses.append(inv)
    return {"budget": L, "table": table, "identity": identity,
            "inverses": inverses, "method": "doubled-budget"}
