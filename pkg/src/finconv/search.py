"""Exact backtracking kernels: map extension, map enumeration, isomorphism.

Everything here works on carrier indices and prunes with partial
continuity, which keeps the interesting searches (retracts, lifts, map
spaces) well inside their budgets at desk scale.  Results are
deterministic: free positions are ordered by a fixed heuristic and values
are tried in canonical carrier order.
"""

from itertools import product

from .core import POINT_LIMIT, SpaceMap
from .errors import KindMismatch, SearchSpaceTooLarge


class Budget:
    """A mutable node counter shared across nested searches."""

    __slots__ = ("limit", "used")

    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchSpaceTooLarge(self.limit)


def _require_point_limit(*spaces):
    for s in spaces:
        if s.kind != POINT_LIMIT:
            raise KindMismatch("search kernels need point-limit spaces")


def _search_order(domain, fixed_idx):
    """Static variable order: grow outward from the fixed positions so each
    new assignment is checked against as many neighbors as possible."""
    n = len(domain.points)
    out, inn = domain.out_idx, domain.in_idx
    placed = set(fixed_idx)
    order = []
    frontier = sorted(placed) if placed else []
    while len(placed) < n:
        fresh = []
        for i in frontier:
            for j in sorted(out[i] | inn[i]):
                if j not in placed and j not in fresh:
                    fresh.append(j)
        if not fresh:
            fresh = [min(j for j in range(n) if j not in placed)]
        order.extend(fresh)
        placed.update(fresh)
        frontier = fresh
    return order


def find_extension(domain, codomain, fixed, budget=None, value_domains=None):
    """Find a continuous map extending ``fixed`` (a point->point dict).

    ``value_domains`` optionally restricts the candidate values of selected
    domain points.  Returns the full assignment dict, or None when the
    search space is exhausted.
    """
    _require_point_limit(domain, codomain)
    n = len(domain.points)
    didx, cidx = domain._index, codomain._index
    out, inn = domain.out_idx, domain.in_idx
    cout = codomain.out_idx

    assign = [-1] * n
    for p, v in fixed.items():
        assign[didx[p]] = cidx[v]

    def locally_ok(i, v):
        for j in out[i]:
            w = assign[j]
            if w >= 0 and w not in cout[v]:
                return False
        for j in inn[i]:
            w = assign[j]
            if w >= 0 and v not in cout[w]:
                return False
        return True

    for i in range(n):
        if assign[i] >= 0 and not locally_ok(i, assign[i]):
            return None

    free = _search_order(domain, [i for i in range(n) if assign[i] >= 0])
    free = [i for i in free if assign[i] < 0]
    if len(free) + sum(1 for a in assign if a >= 0) != n:
        raise AssertionError("search order lost positions")
    m = len(codomain.points)
    domains = []
    for i in free:
        p = domain.points[i]
        if value_domains and p in value_domains:
            domains.append(sorted(cidx[v] for v in value_domains[p]))
        else:
            domains.append(list(range(m)))

    def bt(k):
        if budget is not None:
            budget.spend()
        if k == len(free):
            return True
        i = free[k]
        for v in domains[k]:
            if locally_ok(i, v):
                assign[i] = v
                if bt(k + 1):
                    return True
                assign[i] = -1
        return False

    if not bt(0):
        return None
    return {domain.points[i]: codomain.points[assign[i]] for i in range(n)}


def continuous_maps(domain, codomain, fixed=None, cap=None):
    """Yield every continuous map domain -> codomain as a SpaceMap, in
    canonical order.  ``cap`` bounds the number of maps yielded."""
    _require_point_limit(domain, codomain)
    n = len(domain.points)
    if n == 0:
        yield SpaceMap(domain, codomain, {})
        return
    if len(codomain.points) == 0:
        return
    didx, cidx = domain._index, codomain._index
    out, inn = domain.out_idx, domain.in_idx
    cout = codomain.out_idx
    assign = [-1] * n
    fixed = fixed or {}
    for p, v in fixed.items():
        assign[didx[p]] = cidx[v]

    def locally_ok(i, v):
        for j in out[i]:
            w = assign[j]
            if w >= 0 and j != i and w not in cout[v]:
                return False
        for j in inn[i]:
            w = assign[j]
            if w >= 0 and j != i and v not in cout[w]:
                return False
        if i in out[i] and v not in cout[v]:
            return False
        return True

    for i in range(n):
        if assign[i] >= 0 and not locally_ok(i, assign[i]):
            return

    free = [i for i in range(n) if assign[i] < 0]
    m = len(codomain.points)
    count = 0

    def bt(k):
        nonlocal count
        if k == len(free):
            count += 1
            yield {domain.points[i]: codomain.points[assign[i]] for i in range(n)}
            return
        i = free[k]
        for v in range(m):
            if locally_ok(i, v):
                assign[i] = v
                yield from bt(k + 1)
                assign[i] = -1
                if cap is not None and count >= cap:
                    return

    for mapping in bt(0):
        yield SpaceMap(domain, codomain, mapping)
        if cap is not None and count >= cap:
            return


def count_continuous_maps(domain, codomain):
    return sum(1 for _ in continuous_maps(domain, codomain))


def find_isomorphism(x, y, pins=None, budget=None):
    """Search for an isomorphism x -> y (bijective, continuous both ways).

    ``pins`` fixes chosen images up front (end-preservation constraints).
    Returns a SpaceMap or None.
    """
    _require_point_limit(x, y)
    n = len(x.points)
    if n != len(y.points):
        return None
    if n == 0:
        return SpaceMap(x, y, {})

    xout, yout = x.out_idx, y.out_idx
    xin, yin = x.in_idx, y.in_idx

    def profile(out, inn, i):
        return (len(out[i]), len(inn[i]))

    xprof = [profile(xout, xin, i) for i in range(n)]
    yprof = [profile(yout, yin, i) for i in range(n)]
    if sorted(xprof) != sorted(yprof):
        return None

    assign = [-1] * n
    used = [False] * n
    if pins:
        for p, q in pins.items():
            i, j = x._index[p], y._index[q]
            if xprof[i] != yprof[j]:
                return None
            assign[i] = j
            used[j] = True

    def ok(i, v):
        # exact relation match against everything already placed
        for j in range(n):
            w = assign[j]
            if w < 0:
                continue
            if (j in xout[i]) != (w in yout[v]):
                return False
            if (i in xout[j]) != (v in yout[w]):
                return False
        return True

    for i in range(n):
        if assign[i] >= 0 and not ok(i, assign[i]):
            return None

    free = [i for i in range(n) if assign[i] < 0]
    free.sort(key=lambda i: (-len(xout[i] | xin[i]), i))

    def bt(k):
        if budget is not None:
            budget.spend()
        if k == len(free):
            return True
        i = free[k]
        for v in range(n):
            if used[v] or yprof[v] != xprof[i]:
                continue
            if ok(i, v):
                assign[i] = v
                used[v] = True
                if bt(k + 1):
                    return True
                assign[i] = -1
                used[v] = False
        return False

    if not bt(0):
        return None
    return SpaceMap(x, y, {x.points[i]: y.points[assign[i]] for i in range(n)})


def legal_single_moves(dom_out, dom_in, cod_out, vals, frozen=()):
    """All graphs reachable from ``vals`` by changing one position, staying
    one-step homotopic (and therefore continuous).

    ``vals`` is a tuple of codomain indices in domain carrier order; the
    positions in ``frozen`` are never moved (base points).
    """
    n = len(vals)
    out = []
    for i in range(n):
        if i in frozen:
            continue
        v = vals[i]
        for w in sorted(cod_out[v]):
            if w == v or v not in cod_out[w]:
                continue
            ok = True
            for y in dom_in[i]:
                if y != i and w not in cod_out[vals[y]]:
                    ok = False
                    break
            if ok:
                for x in dom_out[i]:
                    if x != i and vals[x] not in cod_out[w]:
                        ok = False
                        break
            if ok:
                out.append(vals[:i] + (w,) + vals[i + 1:])
    return out


def single_move_components(dom, cod, graphs, frozen=()):
    """Partition graphs by reachability under single-point one-step moves.

    The reachability closure of single moves equals that of the full
    one-step relation (hybrid argument; exercised against the brute-force
    relation in the tests), so these components are the homotopy classes.
    Returns (class_of, reps): a graph -> class-id dict and the smallest
    graph of each class, classes numbered by their smallest member.
    """
    dom_out = [tuple(sorted(s)) for s in dom.out_idx]
    dom_in = [tuple(sorted(s)) for s in dom.in_idx]
    cod_out = cod.out_idx
    universe = set(graphs)
    class_of = {}
    reps = []
    for g in sorted(universe):
        if g in class_of:
            continue
        cid = len(reps)
        reps.append(g)
        stack = [g]
        class_of[g] = cid
        while stack:
            cur = stack.pop()
            for nxt in legal_single_moves(dom_out, dom_in, cod_out, cur, frozen):
                if nxt in universe and nxt not in class_of:
                    class_of[nxt] = cid
                    stack.append(nxt)
    return class_of, reps


def single_move_chain(dom, cod, graphs, src, dst, frozen=()):
    """Shortest single-move chain between two graphs, or None.

    Valid one-step chains (every link is a one-step pair), though not
    necessarily shortest for the full one-step relation.
    """
    from collections import deque

    if src == dst:
        return [src]
    dom_out = [tuple(sorted(s)) for s in dom.out_idx]
    dom_in = [tuple(sorted(s)) for s in dom.in_idx]
    cod_out = cod.out_idx
    universe = set(graphs)
    parent = {src: None}
    frontier = deque([src])
    while frontier:
        cur = frontier.popleft()
        for nxt in legal_single_moves(dom_out, dom_in, cod_out, cur, frozen):
            if nxt in universe and nxt not in parent:
                parent[nxt] = cur
                if nxt == dst:
                    chain = [nxt]
                    while parent[chain[-1]] is not None:
                        chain.append(parent[chain[-1]])
                    chain.reverse()
                    return chain
                frontier.append(nxt)
    return None


def all_point_limit_spaces(labels):
    """Every point-limit structure on the given carrier, in canonical order.

    Each point may converge-receive any superset of itself, so there are
    2^(n(n-1)) structures; meant for tiny carriers in exhaustive tests.
    """
    from .core import make_space

    labels = tuple(labels)
    n = len(labels)
    others = {p: [q for q in labels if q != p] for p in labels}
    choice_sets = []
    for p in labels:
        opts = []
        for mask in range(1 << (n - 1)):
            lim = {p} | {others[p][k] for k in range(n - 1) if mask >> k & 1}
            opts.append(frozenset(lim))
        choice_sets.append(opts)
    for combo in product(*choice_sets):
        yield make_space(labels, dict(zip(labels, combo)))
