import itertools
import random

import pytest

from finconv.builders import (
    GraphData,
    cycle_space,
    discrete_space,
    from_graph,
    indiscrete_space,
    path_space,
)
from finconv.core import (
    SpaceMap,
    closure_of,
    compose,
    empty_space,
    identity_map,
    neighborhood_filter,
    point_space,
)
from finconv.errors import NotACoveringSystem, NotContinuousAttachment
from finconv.constructions import quotient, subspace
from finconv.homotopy import cylinder
from finconv.compactness import (
    CoveringSystem,
    adherence,
    attach_cell,
    build_presentation,
    cell_model,
    cells_meeting_interior,
    finite_subcover,
    interior,
    is_closed,
    is_compact,
    is_covering_system,
    is_open,
    restrict_covering_system,
    search_nontopological,
    serre_check,
    weak_equivalence_check,
)
from finconv.invariants import pi0
from finconv.search import find_isomorphism

from conftest import random_point_limit_space


def raw_covering_oracle(space, cs):
    """The covering-system property straight from the definition."""
    for x in space.sorted_points(cs.scope):
        for gen in space.nonempty_subsets():
            if x in space.limit_of_subset(gen):
                if not any(gen <= c for c in cs.sets):
                    return False
    return True


class TestAdherencePredicates:
    def test_singleton_adherence_is_closure(self):
        p3 = path_space(2)
        assert adherence(p3, {0}) == closure_of(p3, {0}) == frozenset({0, 1})

    def test_carrier_closed_and_open(self, rng):
        s = random_point_limit_space(rng, 4)
        carrier = set(s.points)
        assert is_closed(s, carrier) and is_open(s, carrier)
        assert is_closed(s, set()) and is_open(s, set())

    def test_middle_point_not_closed(self):
        p3 = path_space(2)
        assert not is_closed(p3, {1})
        assert adherence(p3, {1}) == frozenset({0, 1, 2})


class TestCoveringSystems:
    def test_whole_carrier_always_covers(self, rng):
        for _ in range(5):
            s = random_point_limit_space(rng, rng.randint(1, 4))
            cs = CoveringSystem([set(s.points)], set(s.points))
            assert is_covering_system(s, cs)

    def test_path_examples(self):
        p3 = path_space(2)
        assert is_covering_system(p3, CoveringSystem([{0, 1}], {0}))
        cert = is_covering_system(p3, CoveringSystem([{0, 1}, {1, 2}], {1}))
        assert not cert
        x, gen = cert.witness
        assert x == 1 and gen == frozenset({0, 1, 2})

    def test_reduction_matches_raw_quantifier(self, rng):
        for _ in range(25):
            s = random_point_limit_space(rng, rng.randint(1, 5))
            pts = list(s.points)
            sets = [set(rng.sample(pts, rng.randint(1, len(pts))))
                    for _ in range(rng.randint(1, 4))]
            scope = set(rng.sample(pts, rng.randint(1, len(pts))))
            cs = CoveringSystem(sets, scope)
            assert bool(is_covering_system(s, cs)) == raw_covering_oracle(s, cs)

    def test_restriction_is_hereditary(self, rng):
        """Intersecting a covering system with a subspace keeps it covering
        at every point that survives."""
        for _ in range(10):
            s = random_point_limit_space(rng, rng.randint(2, 5))
            x = rng.choice(s.points)
            vx = neighborhood_filter(s, x).generator
            cs = CoveringSystem([vx | set(rng.sample(s.points, 1))], {x})
            assert is_covering_system(s, cs)
            u = set(rng.sample(s.points, rng.randint(1, len(s.points))))
            u.add(x)
            sub = subspace(s, u)
            restricted = restrict_covering_system(cs, u)
            assert is_covering_system(sub.space, restricted)


class TestInterior:
    def test_carrier_interior(self, rng):
        s = random_point_limit_space(rng, 4)
        assert interior(s, [set(s.points)]) == frozenset(s.points)

    def test_path_example(self):
        assert interior(path_space(2), [{0, 1}]) == frozenset({0})

    def test_empty_family_member(self):
        assert interior(path_space(2), [set()]) == frozenset()

    def test_duality_exhaustive(self, rng):
        for _ in range(8):
            s = random_point_limit_space(rng, rng.randint(1, 6))
            pts = s.points
            for r in range(len(pts) + 1):
                for combo in itertools.combinations(pts, r):
                    u = set(combo)
                    lhs = interior(s, [u])
                    rhs = frozenset(pts) - adherence(s, frozenset(pts) - u)
                    assert lhs == rhs


class TestFiniteSubcover:
    def test_carrier_set_wins(self):
        p3 = path_space(2)
        cs = CoveringSystem([{0, 1}, {0, 1, 2}, {1, 2}], {0, 1, 2})
        res = finite_subcover(p3, cs)
        assert res.sets == (frozenset({0, 1, 2}),)
        assert res.exact

    def test_discrete_pair(self):
        d = discrete_space(("a", "b"))
        cs = CoveringSystem([{"a"}, {"b"}, {"a", "b"}], {"a", "b"})
        res = finite_subcover(d, cs)
        assert res.sets == (frozenset({"a", "b"}),)

    def test_not_a_covering_system(self):
        p3 = path_space(2)
        with pytest.raises(NotACoveringSystem):
            finite_subcover(p3, CoveringSystem([{0, 1}], {0, 1, 2}))

    def test_result_still_covers(self, rng):
        for _ in range(10):
            s = random_point_limit_space(rng, rng.randint(1, 5))
            base = [neighborhood_filter(s, x).generator for x in s.points]
            extra = [set(rng.sample(s.points, rng.randint(1, len(s.points))))
                     for _ in range(3)]
            cs = CoveringSystem(base + extra, set(s.points))
            res = finite_subcover(s, cs)
            assert is_covering_system(s, CoveringSystem(res.sets, set(s.points)))

    def test_greedy_above_threshold_flagged(self):
        p3 = path_space(2)
        sets = [{0, 1, 2}] * 25
        res = finite_subcover(p3, CoveringSystem(sets, {0, 1, 2}),
                              exact_threshold=20)
        assert not res.exact
        assert is_covering_system(p3, CoveringSystem(res.sets, {0, 1, 2}))


class TestCompactness:
    def test_every_finite_space_compact(self, rng):
        for _ in range(5):
            assert is_compact(random_point_limit_space(rng, rng.randint(0, 5)))

    def test_image_of_compact(self, rng):
        s = random_point_limit_space(rng, 4)
        q = quotient(s, [set(s.points[:2]), set(s.points[2:])])
        assert is_compact(q.space)

    def test_closed_subspace_compact(self, rng):
        s = random_point_limit_space(rng, 4)
        closed = adherence(s, {s.points[0]})
        assert is_compact(subspace(s, closed).space)


class TestCells:
    def test_zero_cell_on_empty(self):
        pres = build_presentation(empty_space(), [(0, 1, {})])
        assert len(pres.result) == 1

    def test_one_cell_on_point_is_circle(self):
        pt = point_space()
        for length in (1, 2, 3):
            space, *_ = attach_cell(pt, {0: "*", 1: "*"}, 1, length)
            assert find_isomorphism(space, cycle_space(2 * length)) is not None

    def test_two_zero_cells_and_an_edge_is_interval(self):
        specs = [(0, 1, {}), (0, 1, {}), (1, 2, {0: 'e0.0', 1: 'e1.0'})]
        pres = build_presentation(empty_space(), specs)
        assert find_isomorphism(pres.result, path_space(4)) is not None

    def test_discontinuous_attachment_rejected(self):
        # the dim-2 sphere model at length 2 is the indiscrete pair, which
        # has no continuous map onto two separated points
        d = discrete_space(("a", "b"))
        sphere, disk, boundary = cell_model(2, 2)
        assert len(sphere.points) == 2
        with pytest.raises(NotContinuousAttachment):
            attach_cell(d, {sphere.points[0]: "a", sphere.points[1]: "b"}, 2, 2)

    def test_order_independence_for_disjoint_cells(self):
        base = discrete_space(("a", "b", "c", "d"))
        s1 = [(1, 1, {0: "a", 1: "b"}), (1, 1, {0: "c", 1: "d"})]
        s2 = [(1, 1, {0: "c", 1: "d"}), (1, 1, {0: "a", 1: "b"})]
        r1 = build_presentation(base, s1).result
        r2 = build_presentation(base, s2).result
        assert find_isomorphism(r1, r2) is not None

    def test_cell_interiors_tracked(self):
        specs = [(0, 1, {}), (0, 1, {}), (1, 2, {0: 'e0.0', 1: 'e1.0'})]
        pres = build_presentation(empty_space(), specs)
        assert len(pres.cell_interiors) == 3
        # the 1-cell interior misses the two original 0-cells
        interiors = pres.cell_interiors[2]
        assert len(interiors) == 3

    def test_cells_meeting_interior(self):
        specs = [(0, 1, {}), (0, 1, {}), (1, 2, {0: 'e0.0', 1: 'e1.0'})]
        pres = build_presentation(empty_space(), specs)
        inner = next(iter(pres.cell_interiors[2]))
        assert cells_meeting_interior(pres, {inner}) == (2,)

    def test_search_nontopological_finds_example(self):
        found = search_nontopological(attempts=20, seed=3)
        assert found is not None


class TestSerre:
    def test_identity_fibration(self):
        c3 = cycle_space(3)
        rep = serre_check(identity_map(c3))
        assert rep["verdict"] == "fibration w.r.t. declared models"

    def test_map_to_point_fibration(self):
        for s in (path_space(2), cycle_space(3), discrete_space((0, 1))):
            p = SpaceMap(s, point_space(), {q: "*" for q in s.points})
            rep = serre_check(p)
            assert rep["verdict"] == "fibration w.r.t. declared models"

    def test_cylinder_projection_fibration(self):
        x = path_space(1)
        cyl = cylinder(x, 1)
        rep = serre_check(cyl.p)
        assert rep["verdict"] == "fibration w.r.t. declared models"

    def test_reports_declared_models(self):
        rep = serre_check(identity_map(point_space()), cell_models=((0, 1),))
        assert rep["models"][0]["dim"] == 0


class TestWeakEquivalence:
    def test_identity_passes(self):
        rep = weak_equivalence_check(identity_map(cycle_space(3)),
                                     n_max=1, budgets=(2, 3))
        assert rep["verdict"] == "pass"

    def test_contractible_inclusion_passes(self):
        i2 = path_space(2)
        incl = SpaceMap(point_space(), i2, {"*": 0})
        rep = weak_equivalence_check(incl, n_max=1, budgets=(2, 3))
        assert rep["verdict"] == "pass"

    def test_point_into_sphere_fails_pi0(self):
        s0 = discrete_space((0, 1))
        incl = SpaceMap(point_space(), s0, {"*": 0})
        rep = weak_equivalence_check(incl, n_max=1, budgets=(2,))
        assert rep["verdict"] == "fail"
        assert rep["checks"][0]["stage"] == "pi0"
        assert rep["checks"][0]["verdict"] == "fail"

    def test_empty_cases(self):
        e = empty_space()
        rep = weak_equivalence_check(SpaceMap(e, e, {}))
        assert rep["verdict"] == "pass"
        rep = weak_equivalence_check(SpaceMap(e, point_space(), {}))
        assert rep["verdict"] == "fail"
