"""Finite convergence structures and continuous maps.

A space is a finite carrier together with a convergence relation between
principal filters and points.  Two storage kinds are supported:

* ``point-limit`` -- only the limits of point filters are stored; the limit
  of a principal filter with generator A is the intersection of the limits
  of the point filters of its members.  Every such space is
  pseudotopological by construction, and on a finite carrier this storage
  covers exactly the pretopologies.
* ``subset-limit`` -- the limit set of every principal filter is stored
  explicitly.  This kind is needed for convergence structures that are not
  pseudotopological (the hierarchy counterexamples).

All values are immutable after construction and every operation is pure.
"""

from itertools import combinations

from .errors import CenteringViolation, UnknownFilter, UnknownPoint

POINT_LIMIT = "point-limit"
SUBSET_LIMIT = "subset-limit"


class PrincipalFilter:
    """A principal filter on a finite carrier, stored by its generator.

    The represented filter is ``{A : generator <= A}``.  On a finite set
    every filter is principal and every ultrafilter is a point filter, so
    this representation is lossless.
    """

    __slots__ = ("carrier", "generator")

    def __init__(self, carrier, generator):
        carrier = tuple(carrier)
        generator = frozenset(generator)
        if not generator:
            raise UnknownFilter(generator)
        for p in generator:
            if p not in carrier:
                raise UnknownPoint(p)
        self.carrier = carrier
        self.generator = generator

    def __eq__(self, other):
        if not isinstance(other, PrincipalFilter):
            return NotImplemented
        return self.carrier == other.carrier and self.generator == other.generator

    def __hash__(self):
        return hash((self.carrier, self.generator))

    def __repr__(self):
        return f"PrincipalFilter({sorted(map(repr, self.generator))})"

    def is_point_filter(self):
        return len(self.generator) == 1

    def is_ultrafilter(self):
        """On a finite carrier the ultrafilters are exactly the point filters."""
        return self.is_point_filter()

    def refining_ultrafilters(self):
        """The point filters of the generator's members, i.e. beta of self."""
        return [PrincipalFilter(self.carrier, {p}) for p in self.generator]


class StructureKind:
    """Classification flags for a finite convergence structure."""

    __slots__ = ("is_convergence", "is_limit", "is_pseudotopological")

    def __init__(self, is_convergence, is_limit, is_pseudotopological):
        # The hierarchy PsTop <= Lim <= Conv is enforced representationally.
        if is_pseudotopological and not is_limit:
            raise ValueError("pseudotopological implies limit")
        if is_limit and not is_convergence:
            raise ValueError("limit implies convergence")
        self.is_convergence = is_convergence
        self.is_limit = is_limit
        self.is_pseudotopological = is_pseudotopological

    def __eq__(self, other):
        if not isinstance(other, StructureKind):
            return NotImplemented
        return (
            self.is_convergence == other.is_convergence
            and self.is_limit == other.is_limit
            and self.is_pseudotopological == other.is_pseudotopological
        )

    def __repr__(self):
        return (
            f"StructureKind(conv={self.is_convergence}, "
            f"limit={self.is_limit}, pstop={self.is_pseudotopological})"
        )


class Space:
    """A finite convergence space with a fixed canonical point order.

    The carrier order given at construction is canonical: all enumerations,
    serializations and searches iterate in this order, which keeps every
    derived result deterministic.
    """

    __slots__ = ("points", "kind", "point_limits", "subset_limits", "_index", "_out_idx", "_in_idx")

    def __init__(self, points, kind, point_limits=None, subset_limits=None):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise UnknownPoint("duplicate carrier point")
        self.kind = kind
        self.point_limits = point_limits
        self.subset_limits = subset_limits
        self._index = {p: i for i, p in enumerate(self.points)}
        self._out_idx = None
        self._in_idx = None

    # -- basic queries ------------------------------------------------

    def __contains__(self, p):
        return p in self._index

    def __len__(self):
        return len(self.points)

    def index(self, p):
        try:
            return self._index[p]
        except KeyError:
            raise UnknownPoint(p) from None

    def limit_of_point(self, p):
        """Limit set of the point filter of ``p``."""
        if p not in self._index:
            raise UnknownPoint(p)
        if self.kind == POINT_LIMIT:
            return self.point_limits[p]
        return self.subset_limits[frozenset((p,))]

    def limit_of_subset(self, gen):
        """Limit set of the principal filter generated by ``gen``."""
        gen = frozenset(gen)
        if not gen:
            raise UnknownFilter(gen)
        for p in gen:
            if p not in self._index:
                raise UnknownPoint(p)
        if self.kind == POINT_LIMIT:
            out = None
            for p in gen:
                lim = self.point_limits[p]
                out = lim if out is None else (out & lim)
                if not out:
                    return frozenset()
            return out
        try:
            return self.subset_limits[gen]
        except KeyError:
            raise UnknownFilter(gen) from None

    def sorted_points(self, subset):
        """The members of ``subset`` in canonical carrier order."""
        return tuple(sorted(subset, key=self._index.__getitem__))

    def nonempty_subsets(self):
        """All non-empty subsets in canonical (size, position) order."""
        for r in range(1, len(self.points) + 1):
            for combo in combinations(self.points, r):
                yield frozenset(combo)

    # -- index tables used by the search kernels ----------------------

    @property
    def out_idx(self):
        """out_idx[i] = indices of the limits of the point filter of point i."""
        if self._out_idx is None:
            idx = self._index
            self._out_idx = tuple(
                frozenset(idx[q] for q in self.limit_of_point(p)) for p in self.points
            )
        return self._out_idx

    @property
    def in_idx(self):
        """in_idx[i] = indices j with i in the limits of the point filter of j."""
        if self._in_idx is None:
            out = self.out_idx
            n = len(self.points)
            self._in_idx = tuple(
                frozenset(j for j in range(n) if i in out[j]) for i in range(n)
            )
        return self._in_idx

    # -- equality and display ------------------------------------------

    def _canonical(self):
        if self.kind == POINT_LIMIT:
            lims = tuple(self.point_limits[p] for p in self.points)
        else:
            lims = tuple(sorted(
                (tuple(sorted(g, key=repr)), tuple(sorted(l, key=repr)))
                for g, l in self.subset_limits.items()
            ))
        return (self.points, self.kind, lims)

    def __eq__(self, other):
        if not isinstance(other, Space):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash((self.points, self.kind))

    def __repr__(self):
        return f"Space({len(self.points)} points, {self.kind})"


def make_space(points, point_limits):
    """Build a point-limit space from the limits of the point filters.

    Raises CenteringViolation if some point filter fails to converge to its
    own point, and UnknownPoint if a limit (or a key) falls outside the
    carrier.
    """
    points = tuple(points)
    carrier = set(points)
    if len(carrier) != len(points):
        raise UnknownPoint("duplicate carrier point")
    limits = {}
    for p, lim in point_limits.items():
        if p not in carrier:
            raise UnknownPoint(p)
        lim = frozenset(lim)
        for q in lim:
            if q not in carrier:
                raise UnknownPoint(q)
        limits[p] = lim
    for p in points:
        if p not in limits or p not in limits[p]:
            raise CenteringViolation(p)
    return Space(points, POINT_LIMIT, point_limits=limits)


def make_subset_space(points, subset_limits):
    """Build a subset-limit space; the limit map must be total.

    Every non-empty subset of the carrier needs an entry (UnknownFilter
    otherwise).  Centering is enforced; monotonicity is not, so that
    ``classify`` can report honestly on raw relations.
    """
    points = tuple(points)
    carrier = set(points)
    table = {}
    for gen, lim in subset_limits.items():
        gen = frozenset(gen)
        lim = frozenset(lim)
        for q in gen | lim:
            if q not in carrier:
                raise UnknownPoint(q)
        if not gen:
            raise UnknownFilter(gen)
        table[gen] = lim
    for r in range(1, len(points) + 1):
        for combo in combinations(points, r):
            if frozenset(combo) not in table:
                raise UnknownFilter(frozenset(combo))
    for p in points:
        if p not in table[frozenset((p,))]:
            raise CenteringViolation(p)
    return Space(points, SUBSET_LIMIT, subset_limits=table)


def filter_limits(space, flt):
    """Limit set of a principal filter (or raw generator) in ``space``."""
    if isinstance(flt, PrincipalFilter):
        if flt.carrier != space.points:
            raise UnknownFilter(flt.generator)
        return space.limit_of_subset(flt.generator)
    return space.limit_of_subset(flt)


def classify(space):
    """Classify a space by exhaustive check over all principal filters.

    convergence = centering + monotonicity in the filter order;
    limit       = limits(A) /\\ limits(B) <= limits(A u B);
    pseudotopological = limits(A) equals the intersection of the point
    filter limits of the members of A.
    """
    if space.kind == POINT_LIMIT:
        # Intersection storage satisfies all three axiom groups by
        # construction; centering was checked when the space was made.
        return StructureKind(True, True, True)

    subsets = list(space.nonempty_subsets())
    lim = space.subset_limits

    centered = all(p in lim[frozenset((p,))] for p in space.points)
    monotone = all(
        lim[b] <= lim[a]
        for a in subsets
        for b in subsets
        if a < b
    )
    is_conv = centered and monotone

    is_lim = is_conv and all(
        (lim[a] & lim[b]) <= lim[a | b] for a in subsets for b in subsets
    )

    def point_meet(gen):
        out = None
        for p in gen:
            l = lim[frozenset((p,))]
            out = l if out is None else (out & l)
        return out

    is_pstop = is_lim and all(lim[a] == point_meet(a) for a in subsets)
    return StructureKind(is_conv, is_lim, is_pstop)


def pseudotopological_modification(space):
    """The pseudotopological reflection: keep point-filter limits, rederive
    the rest by intersection.

    Idempotent, and the result's limits contain the input's limits on every
    principal filter (coarsest refinement).
    """
    limits = {p: frozenset(space.limit_of_point(p)) for p in space.points}
    return make_space(space.points, limits)


def closure_of(space, subset):
    """Adherence of a set: all limits of point filters of its members.

    Additive and grounded: c(A u B) = c(A) u c(B) and c(empty) = empty,
    with A <= c(A) by centering.
    """
    out = set()
    for p in subset:
        out.update(space.limit_of_point(p))
    return frozenset(out)


def neighborhood_filter(space, x):
    """The neighborhood filter of ``x``, generated by V(x) = {y : x in lim y.}.

    Dual to closure: y in V(x) iff x in closure({y}).
    """
    gen = frozenset(y for y in space.points if x in space.limit_of_point(y))
    return PrincipalFilter(space.points, gen)


class ContinuityCertificate:
    """Outcome of a continuity check: a pass witness or a violating pair.

    ``violation`` is ``(generator, x)``: the principal filter with that
    generator converges to ``x`` in the domain while its image filter does
    not converge to the image of ``x``.
    """

    __slots__ = ("continuous", "violation")

    def __init__(self, continuous, violation=None):
        self.continuous = continuous
        self.violation = violation

    def __bool__(self):
        return self.continuous

    def __repr__(self):
        if self.continuous:
            return "ContinuityCertificate(continuous)"
        gen, x = self.violation
        return f"ContinuityCertificate(violated: {sorted(map(repr, gen))} -> {x!r})"


class SpaceMap:
    """A total function between spaces with a cached continuity certificate."""

    __slots__ = ("domain", "codomain", "mapping", "_certificate")

    def __init__(self, domain, codomain, mapping):
        self.domain = domain
        self.codomain = codomain
        m = dict(mapping)
        for p in domain.points:
            if p not in m:
                raise UnknownPoint(p)
            if m[p] not in codomain:
                raise UnknownPoint(m[p])
        if len(m) != len(domain.points):
            raise UnknownPoint("assignment mentions points outside the domain")
        self.mapping = m
        self._certificate = None

    def __call__(self, p):
        return self.mapping[p]

    def __eq__(self, other):
        if not isinstance(other, SpaceMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash((self.domain.points, self.codomain.points,
                     tuple(self.mapping[p] for p in self.domain.points)))

    def __repr__(self):
        return f"SpaceMap({len(self.domain)} -> {len(self.codomain)})"

    def graph(self):
        """Images in canonical domain order; hashable identity of the map."""
        return tuple(self.mapping[p] for p in self.domain.points)

    def certificate(self):
        if self._certificate is None:
            self._certificate = continuity_certificate(self)
        return self._certificate

    def is_continuous(self):
        return bool(self.certificate())


def continuity_certificate(f):
    """Decide continuity of ``f`` and return a certificate.

    When both spaces are point-limit, the point-filter criterion suffices:
    x in lim y. implies f(x) in lim f(y). -- the intersection rule on both
    sides turns this into the full statement.  With a subset-limit codomain
    the criterion is genuinely weaker, so all principal filters are checked.
    """
    X, Y = f.domain, f.codomain
    m = f.mapping
    if X.kind == POINT_LIMIT and Y.kind == POINT_LIMIT:
        ylim = Y.point_limits
        for y in X.points:
            fy_lim = ylim[m[y]]
            for x in X.point_limits[y]:
                if m[x] not in fy_lim:
                    return ContinuityCertificate(False, (frozenset((y,)), x))
        return ContinuityCertificate(True)
    for gen in X.nonempty_subsets():
        dom_lim = X.limit_of_subset(gen)
        if not dom_lim:
            continue
        image_gen = frozenset(m[p] for p in gen)
        cod_lim = Y.limit_of_subset(image_gen)
        for x in dom_lim:
            if m[x] not in cod_lim:
                return ContinuityCertificate(False, (gen, x))
    return ContinuityCertificate(True)


def is_continuous(f):
    """Spec-level entry point; returns the certificate object."""
    return f.certificate()


def identity_map(space):
    return SpaceMap(space, space, {p: p for p in space.points})


def compose(outer, inner):
    """outer o inner (apply ``inner`` first)."""
    if inner.codomain != outer.domain:
        raise UnknownPoint("composition domain mismatch")
    return SpaceMap(
        inner.domain, outer.codomain,
        {p: outer.mapping[inner.mapping[p]] for p in inner.domain.points},
    )


def empty_space():
    return make_space((), {})


def point_space(label="*"):
    return make_space((label,), {label: {label}})
