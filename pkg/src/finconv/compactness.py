"""Covering systems, interior, compactness, finite cell attachments,
Serre-fibration lifting, and budget-qualified weak-equivalence checks.

Cell models are finite: the model n-disk is the cone on the model
(n-1)-sphere at a declared interval length, so every fibration or
weak-equivalence verdict is explicitly relative to the declared models and
budgets.
"""

import random

from .builders import is_topological
from .core import (
    POINT_LIMIT,
    SpaceMap,
    closure_of,
    compose,
    empty_space,
    make_space,
    neighborhood_filter,
    point_space,
)
from .errors import (
    ExponentialTooLarge,
    NotACoveringSystem,
    NotContinuousAttachment,
    SearchSpaceTooLarge,
    UnknownPoint,
)
from .constructions import pushout, quotient
from .invariants import BasedSpace, based_classes, pi0, sphere_model, sphere_space, tower_collapse, _tower_for
from .search import Budget, continuous_maps, find_extension


def adherence(space, subset):
    """Adherence of a set: the union of the limits of the point filters of
    its members (equals the closure)."""
    return closure_of(space, subset)


def is_closed(space, subset):
    return adherence(space, subset) == frozenset(subset)


def is_open(space, subset):
    complement = frozenset(space.points) - frozenset(subset)
    return is_closed(space, complement)


class CoveringSystem:
    """An arbitrary family of subsets with a scope; whether it actually
    covers is decided by the predicate, not assumed."""

    __slots__ = ("sets", "scope")

    def __init__(self, sets, scope):
        self.sets = tuple(frozenset(s) for s in sets)
        self.scope = frozenset(scope)


class CoverCertificate:
    __slots__ = ("holds", "witness")

    def __init__(self, holds, witness=None):
        self.holds = holds
        self.witness = witness

    def __bool__(self):
        return self.holds


def is_covering_system(space, cs):
    """Decide the covering-system property on the scope.

    For point-limit spaces only the maximal generator V(x) needs checking:
    every converging principal filter at x has its generator inside V(x),
    and supersets only get easier to cover.  Subset-limit spaces fall back
    to the raw quantifier.
    """
    for x in cs.scope:
        if x not in space:
            raise UnknownPoint(x)
    if space.kind == POINT_LIMIT:
        for x in space.sorted_points(cs.scope):
            vx = neighborhood_filter(space, x).generator
            if not any(vx <= c for c in cs.sets):
                return CoverCertificate(False, (x, vx))
        return CoverCertificate(True)
    for x in space.sorted_points(cs.scope):
        for gen in space.nonempty_subsets():
            if x in space.limit_of_subset(gen):
                if not any(gen <= c for c in cs.sets):
                    return CoverCertificate(False, (x, gen))
    return CoverCertificate(True)


def interior(space, family):
    """Points at which the family is a local covering system."""
    family = [frozenset(s) for s in family]
    out = []
    for x in space.points:
        if is_covering_system(space, CoveringSystem(family, {x})):
            out.append(x)
    return frozenset(out)


def restrict_covering_system(cs, subset):
    subset = frozenset(subset)
    return CoveringSystem([s & subset for s in cs.sets], cs.scope & subset)


class SubcoverResult:
    __slots__ = ("sets", "exact")

    def __init__(self, sets, exact):
        self.sets = tuple(sets)
        self.exact = exact


def finite_subcover(space, cs, exact_threshold=20):
    """Minimal sub-family that is still a covering system of the scope.

    Branch-and-bound is exact up to ``exact_threshold`` candidate sets;
    beyond that a greedy cover is returned and flagged as non-minimal.
    """
    if not is_covering_system(space, cs):
        raise NotACoveringSystem("input family is not a covering system")
    if space.kind != POINT_LIMIT:
        needed = list(space.sorted_points(cs.scope))
        gens = {x: [g for g in space.nonempty_subsets()
                    if x in space.limit_of_subset(g)] for x in needed}

        def covers(sub, x):
            return all(any(g <= c for c in sub) for g in gens[x])
    else:
        needed = list(space.sorted_points(cs.scope))
        vx = {x: neighborhood_filter(space, x).generator for x in needed}

        def covers(sub, x):
            return any(vx[x] <= c for c in sub)

    sets = list(cs.sets)
    if len(sets) > exact_threshold:
        chosen = []
        remaining = set(needed)
        while remaining:
            best = max(sets, key=lambda c: (len([x for x in remaining
                                                 if covers([c], x)]),
                                            -sets.index(c)))
            gained = [x for x in remaining if covers([best], x)]
            if not gained:
                raise NotACoveringSystem("greedy cover stalled")
            chosen.append(best)
            remaining -= set(gained)
        return SubcoverResult(chosen, exact=False)

    best = None
    for size in range(0, len(sets) + 1):
        from itertools import combinations

        for combo in combinations(range(len(sets)), size):
            sub = [sets[i] for i in combo]
            if all(covers(sub, x) for x in needed):
                best = sub
                break
        if best is not None:
            break
    return SubcoverResult(best, exact=True)


def is_compact(space):
    """Every ultrafilter (point filter, finitely) converges; true for every
    well-formed finite space, kept for API parity and the image/subspace
    property tests."""
    return all(space.limit_of_point(p) for p in space.points)


# -- cells ---------------------------------------------------------------


def _relabel(space, keep_order=True):
    mapping = {p: i for i, p in enumerate(space.points)}
    pts = tuple(range(len(space.points)))
    limits = {mapping[p]: {mapping[q] for q in space.point_limits[p]}
              for p in space.points}
    return make_space(pts, limits), mapping


def cell_model(dim, length):
    """Model sphere/disk pair for a cell of the given dimension.

    Returns (sphere, disk, boundary): the model (dim-1)-sphere, the cone on
    it at the declared length, and the inclusion of the sphere as the free
    end of the cone.  For dim 0 the sphere is empty and the disk a point.
    """
    if dim == 0:
        empty = empty_space()
        disk = point_space("cell")
        return empty, disk, SpaceMap(empty, disk, {})
    if dim == 1:
        sphere = sphere_space().space
    else:
        sphere = sphere_model(dim - 1, (length,) * (dim - 1)).top.space
    from .homotopy import cylinder

    cyl = cylinder(sphere, length)
    blocks = [[(s, 0) for s in sphere.points]]
    blocks += [[(s, t)] for s in sphere.points for t in range(1, length + 1)]
    cone = quotient(cyl.space, blocks)
    disk, relabel = _relabel(cone.space)
    boundary = SpaceMap(sphere, disk,
                        {s: relabel[cone.class_of[(s, length)]] for s in sphere.points})
    return sphere, disk, boundary


class Attachment:
    __slots__ = ("dim", "length", "attaching", "sphere", "disk", "boundary")

    def __init__(self, dim, length, attaching, sphere, disk, boundary):
        self.dim = dim
        self.length = length
        self.attaching = attaching
        self.sphere = sphere
        self.disk = disk
        self.boundary = boundary


class Presentation:
    """A finite ordered sequence of cell attachments.

    ``stages`` lists the space after each attachment (relabeled to integer
    carriers), ``forward`` the maps stage -> next stage, and
    ``cell_interiors`` the final-space points coming from each open cell.
    """

    __slots__ = ("base", "attachments", "stages", "forward", "result",
                 "cell_interiors")

    def __init__(self, base, attachments, stages, forward, result,
                 cell_interiors):
        self.base = base
        self.attachments = attachments
        self.stages = stages
        self.forward = forward
        self.result = result
        self.cell_interiors = cell_interiors


def attach_cell(space, attaching, dim, length, fresh="cell"):
    """One cell attachment as a pushout; returns (new_space, bookkeeping).

    ``attaching`` maps the model sphere's points into ``space`` and must be
    continuous (NotContinuousAttachment otherwise).  Points inherited from
    ``space`` keep their labels (each glued class contains at most one of
    them); new open-cell points are labeled ``{fresh}.{j}``.
    """
    sphere, disk, boundary = cell_model(dim, length)
    h = SpaceMap(sphere, space, dict(attaching))
    if not h.is_continuous():
        raise NotContinuousAttachment("attaching map is not continuous")
    po = pushout(h, boundary)
    old = set(space.points)
    relabel = {}
    counter = 0
    for cls in po.apex.points:
        survivors = [p for (tag, p) in cls if tag == 0]
        if survivors:
            relabel[cls] = survivors[0]
        else:
            label = f"{fresh}.{counter}"
            counter += 1
            if label in old:
                raise UnknownPoint(f"fresh label {label!r} collides")
            relabel[cls] = label
    pts = tuple(relabel[c] for c in po.apex.points)
    limits = {relabel[c]: {relabel[d] for d in po.apex.point_limits[c]}
              for c in po.apex.points}
    new_space = make_space(pts, limits)
    old_to_new = {p: relabel[po.leg_a.mapping[p]] for p in space.points}
    disk_to_new = {d: relabel[po.leg_y.mapping[d]] for d in disk.points}
    interior_pts = frozenset(
        disk_to_new[d] for d in disk.points
        if d not in {boundary.mapping[s] for s in sphere.points}
    )
    record = Attachment(dim, length, dict(attaching), sphere, disk, boundary)
    return new_space, old_to_new, disk_to_new, interior_pts, record


def build_presentation(base, specs):
    """Assemble a presentation from (dim, length, attaching-dict) records,
    applied left to right."""
    stages = [base]
    forward = []
    records = []
    interiors = []
    current = base
    for idx, (dim, length, attaching) in enumerate(specs):
        new_space, old_to_new, _disk_to_new, interior_pts, rec = attach_cell(
            current, attaching, dim, length, fresh=f"e{idx}")
        records.append(rec)
        stages.append(new_space)
        forward.append(old_to_new)
        interiors.append(interior_pts)
        current = new_space
    final_interiors = []
    for idx, pts in enumerate(interiors):
        pts = set(pts)
        for step in forward[idx + 1:]:
            pts = {step[p] for p in pts}
        final_interiors.append(frozenset(pts))
    return Presentation(base, records, stages, forward, current,
                        tuple(final_interiors))


def cells_meeting_interior(presentation, subset):
    """Indices of cells whose open part meets the given subset of the final
    space; the finite instance of the compactness bookkeeping."""
    subset = frozenset(subset)
    return tuple(idx for idx, pts in enumerate(presentation.cell_interiors)
                 if pts & subset)


def search_nontopological(attempts=50, seed=0, max_cells=3):
    """Random small presentations, looking for a non-topological result.

    The finite cell models are graph-like, so non-idempotent closures
    appear immediately; the command exists to make that observable.
    """
    rng = random.Random(seed)
    for trial in range(attempts):
        current = empty_space()
        specs = []
        for _ in range(rng.randint(1, max_cells)):
            if len(current.points) == 0:
                specs.append((0, 1, {}))
                current = build_presentation(empty_space(), specs).result
                continue
            dim = rng.choice((0, 1))
            length = rng.randint(1, 2)
            sphere, _disk, _b = cell_model(dim, length)
            attaching = {s: rng.choice(current.points) for s in sphere.points}
            h = SpaceMap(sphere, current, attaching)
            if not h.is_continuous():
                continue
            specs.append((dim, length, attaching))
            current = build_presentation(empty_space(), specs).result
        if len(current.points) and not is_topological(current):
            return {"trial": trial, "specs": [(d, l, dict(a)) for d, l, a in specs],
                    "space": current}
    return None


# -- Serre fibrations ----------------------------------------------------


def serre_check(p, cell_models=((0, 1), (1, 1)), map_cap=2000,
                node_budget=1_000_000):
    """Check the lifting property of p against the declared finite models.

    For every commuting square (u : D -> E, v : D x I_1 -> B) a lift is
    searched exhaustively; the report lists each model with the number of
    squares tried and whether all admitted lifts.
    """
    from .homotopy import cylinder

    E, B = p.domain, p.codomain
    report = {"models": [], "verdict": None}
    all_ok = True
    for dim, length in cell_models:
        _sphere, disk, _boundary = cell_model(dim, length)
        cyl = cylinder(disk, 1)
        squares = 0
        lifted = 0
        failures = []
        try:
            for u in continuous_maps(disk, E, cap=map_cap):
                base_fixed = {(d, 0): p.mapping[u.mapping[d]] for d in disk.points}
                for v in continuous_maps(cyl.space, B, fixed=base_fixed, cap=map_cap):
                    squares += 1
                    fixed = {(d, 0): u.mapping[d] for d in disk.points}
                    fibers = {
                        (d, 1): [e for e in E.points
                                 if p.mapping[e] == v.mapping[(d, 1)]]
                        for d in disk.points
                    }
                    if any(not f for f in fibers.values()):
                        failures.append({"square": squares})
                        continue
                    h = find_extension(cyl.space, E, fixed,
                                       budget=Budget(node_budget),
                                       value_domains=fibers)
                    if h is None or any(p.mapping[h[(d, 1)]] != v.mapping[(d, 1)]
                                        for d in disk.points):
                        failures.append({"square": squares})
                    else:
                        lifted += 1
        except (SearchSpaceTooLarge, ExponentialTooLarge):
            report["models"].append({"dim": dim, "length": length,
                                     "verdict": "inconclusive"})
            all_ok = False
            continue
        ok = not failures
        all_ok = all_ok and ok
        report["models"].append({
            "dim": dim, "length": length, "squares": squares,
            "lifted": lifted, "verdict": "pass" if ok else "fail",
            "failures": failures[:5],
        })
    report["verdict"] = ("fibration w.r.t. declared models" if all_ok
                         else "not verified")
    return report


# -- weak homotopy equivalence -------------------------------------------


def induced_pi0_bijective(f):
    comps_x = pi0(f.domain)
    comps_y = pi0(f.codomain)
    loc_y = {}
    for idx, comp in enumerate(comps_y):
        for q in comp:
            loc_y[q] = idx
    images = [loc_y[f.mapping[comp[0]]] for comp in comps_x]
    return len(set(images)) == len(comps_x) == len(comps_y)


def weak_equivalence_check(f, n_max=1, budgets=(2, 3, 4), map_cap=200_000):
    """Budget-qualified weak-equivalence report for a continuous map.

    The empty/non-empty clause and the pi_0 bijection are exact; for each
    1 <= n <= n_max and every base point of the domain, the induced map on
    budget-L classes must be a bijection at each budget in the schedule.
    """
    X, Y = f.domain, f.codomain
    report = {"budgets": list(budgets), "n_max": n_max, "checks": []}
    if len(X) == 0 or len(Y) == 0:
        verdict = len(X) == 0 and len(Y) == 0
        report["checks"].append({"stage": "emptiness",
                                 "verdict": "pass" if verdict else "fail"})
        report["verdict"] = "pass" if verdict else "fail"
        return report

    ok0 = induced_pi0_bijective(f)
    report["checks"].append({"stage": "pi0", "verdict": "pass" if ok0 else "fail"})
    overall = ok0

    for n in range(1, n_max + 1):
        for x in X.points:
            bx = BasedSpace(X, x)
            by = BasedSpace(Y, f.mapping[x])
            for L in budgets:
                tower = _tower_for(n, L)
                try:
                    part_x = based_classes(tower.top, bx, map_cap=map_cap)
                    part_y = based_classes(tower.top, by, map_cap=map_cap)
                except ExponentialTooLarge:
                    report["checks"].append({
                        "stage": f"pi{n}", "base": repr(x), "budget": L,
                        "verdict": "inconclusive"})
                    continue
                images = []
                for rep in part_x.reps:
                    mapped = tuple(Y.index(f.mapping[X.points[v]]) for v in rep)
                    images.append(part_y.locate(mapped))
                bij = (len(set(images)) == len(part_x.reps) == len(part_y.reps))
                overall = overall and bij
                report["checks"].append({
                    "stage": f"pi{n}", "base": repr(x), "budget": L,
                    "classes": (len(part_x.reps), len(part_y.reps)),
                    "verdict": "pass" if bij else "fail"})
    report["verdict"] = "pass" if overall else "fail"
    return report
