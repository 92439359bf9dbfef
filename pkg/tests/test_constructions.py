import itertools
import random

import pytest

from finconv.builders import discrete_space, indiscrete_space, path_space
from finconv.core import (
    SpaceMap,
    compose,
    empty_space,
    identity_map,
    make_subset_space,
    point_space,
)
from finconv.errors import ExponentialTooLarge, NotAPartition
from finconv.constructions import (
    coproduct,
    copairing,
    curry,
    evaluation,
    function_space,
    pairing,
    product,
    pushout,
    pushout_mediator,
    quotient,
    subspace,
    uncurry,
)
from finconv.invariants import pi0
from finconv.search import (
    all_point_limit_spaces,
    continuous_maps,
    count_continuous_maps,
    find_isomorphism,
)

from conftest import random_point_limit_space


def all_set_maps(dom, cod):
    if not dom.points:
        yield SpaceMap(dom, cod, {})
        return
    for combo in itertools.product(cod.points, repeat=len(dom.points)):
        yield SpaceMap(dom, cod, dict(zip(dom.points, combo)))


class TestProduct:
    def test_unit_law(self):
        x = path_space(2)
        res = product(x, point_space())
        iso = find_isomorphism(res.space, x)
        assert iso is not None

    def test_discrete_times_discrete(self):
        res = product(discrete_space((0, 1)), discrete_space(("a", "b")))
        assert all(len(res.space.point_limits[p]) == 1 for p in res.space.points)

    def test_indiscrete_square_complete(self):
        p2 = path_space(1)
        res = product(p2, p2)
        assert len(res.space) == 4
        assert all(len(res.space.point_limits[p]) == 4 for p in res.space.points)

    def test_projections_continuous(self, rng):
        for _ in range(8):
            x = random_point_limit_space(rng, rng.randint(1, 3))
            y = random_point_limit_space(rng, rng.randint(1, 3), labels="uvw")
            res = product(x, y)
            assert res.proj0.is_continuous() and res.proj1.is_continuous()

    def test_initiality(self, rng):
        """A set map into the product is continuous iff both composites are."""
        for _ in range(6):
            x = random_point_limit_space(rng, rng.randint(1, 3))
            y = random_point_limit_space(rng, rng.randint(1, 3), labels="uvw")
            z = random_point_limit_space(rng, rng.randint(1, 3), labels="kme")
            res = product(x, y)
            for h in all_set_maps(z, res.space):
                lhs = h.is_continuous()
                rhs = compose(res.proj0, h).is_continuous() and \
                    compose(res.proj1, h).is_continuous()
                assert lhs == rhs

    def test_subset_limit_operands_are_reflected(self):
        pts = ("a", "b")
        table = {frozenset("a"): {"a", "b"}, frozenset("b"): {"a", "b"},
                 frozenset(("a", "b")): set()}
        s = make_subset_space(pts, table)
        res = product(s, point_space())
        assert res.space.kind == "point-limit"

    def test_pairing(self, rng):
        x = path_space(2)
        res = product(x, x)
        f = pairing(res, identity_map(x), identity_map(x))
        assert f.is_continuous()
        assert f.mapping[1] == (1, 1)


class TestCoproduct:
    def test_unit(self):
        x = path_space(2)
        res = coproduct(x, empty_space())
        assert find_isomorphism(res.space, x) is not None

    def test_two_points(self):
        res = coproduct(point_space(), point_space())
        assert res.space == discrete_space(((0, "*"), (1, "*")))

    def test_two_components(self):
        p3 = path_space(2)
        res = coproduct(p3, p3)
        assert len(pi0(res.space)) == 2

    def test_finality(self, rng):
        """A map out of the coproduct is continuous iff both restrictions are."""
        for _ in range(6):
            x = random_point_limit_space(rng, 2)
            y = random_point_limit_space(rng, 2, labels="uv")
            z = random_point_limit_space(rng, rng.randint(1, 3), labels="kme")
            res = coproduct(x, y)
            for h in all_set_maps(res.space, z):
                rhs = compose(h, res.inj0).is_continuous() and \
                    compose(h, res.inj1).is_continuous()
                assert h.is_continuous() == rhs


class TestSubspace:
    def test_full_subset_identity(self):
        x = path_space(2)
        res = subspace(x, set(x.points))
        assert res.space == x

    def test_path_endpoints_discrete(self):
        res = subspace(path_space(2), {0, 2})
        assert res.space == discrete_space((0, 2))

    def test_singleton(self):
        res = subspace(path_space(2), {1})
        assert len(res.space) == 1

    def test_subset_limit_kind_preserved(self):
        pts = ("a", "b")
        table = {frozenset("a"): {"a", "b"}, frozenset("b"): {"a", "b"},
                 frozenset(("a", "b")): set()}
        s = make_subset_space(pts, table)
        res = subspace(s, {"a"})
        assert res.space.kind == "subset-limit"

    def test_initiality(self, rng):
        for _ in range(6):
            x = random_point_limit_space(rng, 4)
            u = set(rng.sample(x.points, 2))
            res = subspace(x, u)
            z = random_point_limit_space(rng, 3, labels="kme")
            for h in all_set_maps(z, res.space):
                assert h.is_continuous() == compose(res.inclusion, h).is_continuous()


class TestQuotient:
    def test_identity_partition(self):
        x = path_space(2)
        res = quotient(x, [{p} for p in x.points])
        assert find_isomorphism(res.space, x) is not None

    def test_collapse_all(self):
        res = quotient(path_space(2), [{0, 1, 2}])
        assert len(res.space) == 1

    def test_glue_path_ends(self):
        res = quotient(path_space(2), [{0, 2}, {1}])
        assert len(res.space) == 2
        assert all(len(res.space.point_limits[p]) == 2 for p in res.space.points)

    def test_not_a_partition(self):
        with pytest.raises(NotAPartition):
            quotient(path_space(2), [{0, 1}, {1, 2}])
        with pytest.raises(NotAPartition):
            quotient(path_space(2), [{0, 1}])

    def test_finality(self, rng):
        for _ in range(6):
            x = random_point_limit_space(rng, 4)
            pts = list(x.points)
            rng.shuffle(pts)
            cut = rng.randint(1, len(pts) - 1) if len(pts) > 1 else 1
            classes = [set(pts[:cut]), set(pts[cut:])]
            classes = [c for c in classes if c]
            res = quotient(x, classes)
            z = random_point_limit_space(rng, 3, labels="kme")
            for h in all_set_maps(res.space, z):
                assert h.is_continuous() == compose(h, res.projection).is_continuous()


class TestPushout:
    def test_pushout_of_identities(self):
        a = path_space(2)
        res = pushout(identity_map(a), identity_map(a))
        assert find_isomorphism(res.apex, a) is not None

    def test_empty_span_is_coproduct(self):
        a, y = path_space(1), path_space(2)
        e = empty_space()
        res = pushout(SpaceMap(e, a, {}), SpaceMap(e, y, {}))
        cop = coproduct(a, y)
        assert find_isomorphism(res.apex, cop.space) is not None

    def test_two_intervals_glue_to_one(self):
        i1 = path_space(1)
        pt = point_space()
        res = pushout(SpaceMap(pt, i1, {"*": 1}), SpaceMap(pt, i1, {"*": 0}))
        assert find_isomorphism(res.apex, path_space(2)) is not None

    def test_square_commutes(self, rng):
        for _ in range(6):
            b = random_point_limit_space(rng, 2)
            a = random_point_limit_space(rng, 3, labels="uvw")
            y = random_point_limit_space(rng, 3, labels="kme")
            i = SpaceMap(b, a, {p: rng.choice(a.points) for p in b.points})
            f = SpaceMap(b, y, {p: rng.choice(y.points) for p in b.points})
            res = pushout(i, f)
            assert compose(res.leg_a, i).mapping == compose(res.leg_y, f).mapping
            assert res.leg_a.is_continuous() and res.leg_y.is_continuous()

    def test_universal_property_against_small_cocones(self, rng):
        pool = [random_point_limit_space(rng, n, labels="kmeq") for n in (1, 2, 3, 4)]
        for _ in range(4):
            b = random_point_limit_space(rng, 2)
            a = random_point_limit_space(rng, 3, labels="uvw")
            y = random_point_limit_space(rng, 2, labels="xz")
            i = SpaceMap(b, a, {p: rng.choice(a.points) for p in b.points})
            f = SpaceMap(b, y, {p: rng.choice(y.points) for p in b.points})
            res = pushout(i, f)
            for t in pool:
                for u in continuous_maps(a, t):
                    for v in continuous_maps(y, t):
                        med = pushout_mediator(res, u, v)
                        glues = compose(u, i).mapping == compose(v, f).mapping
                        if not glues:
                            assert med is None
                            continue
                        assert med is not None
                        # finality: the mediator is automatically continuous
                        assert med.is_continuous()
                        assert compose(med, res.leg_a).mapping == u.mapping
                        assert compose(med, res.leg_y).mapping == v.mapping


class TestFunctionSpace:
    def test_point_domain_recovers_target(self):
        y = path_space(2)
        fs = function_space(point_space(), y)
        assert find_isomorphism(fs.base, y) is not None

    def test_point_codomain_trivial(self):
        fs = function_space(path_space(2), point_space())
        assert len(fs.base) == 1

    def test_indiscrete_pair_exponential(self):
        p2 = path_space(1)
        fs = function_space(p2, p2)
        assert len(fs.base) == 4
        assert all(len(fs.base.point_limits[p]) == 4 for p in fs.base.points)

    def test_size_cap(self):
        with pytest.raises(ExponentialTooLarge):
            function_space(discrete_space(range(6)), discrete_space(range(6)), cap=10)

    def test_rule_agrees_with_full_filter_definition(self, rng):
        """Brute-force oracle over all principal filters H on C(X, Y) and
        lambda on X."""
        pool = list(all_point_limit_spaces(("a", "b"))) + \
            [random_point_limit_space(rng, 3) for _ in range(6)]
        checked = 0
        for x in pool:
            for y in pool:
                fs = function_space(x, y)
                maps = fs.maps
                if not (0 < len(maps) <= 12):
                    continue
                checked += 1
                gens_x = list(x.nonempty_subsets())
                for r in range(1, len(maps) + 1):
                    for combo in itertools.combinations(range(len(maps)), r):
                        g_set = [maps[k] for k in combo]
                        gen = frozenset(maps[k].graph() for k in combo)
                        got = fs.base.limit_of_subset(gen)
                        expect = set()
                        for f in maps:
                            ok = True
                            for a_gen in gens_x:
                                img = frozenset(g.mapping[p] for g in g_set
                                                for p in a_gen)
                                lim_y = y.limit_of_subset(img)
                                for xx in x.limit_of_subset(a_gen):
                                    if f.mapping[xx] not in lim_y:
                                        ok = False
                                        break
                                if not ok:
                                    break
                            if ok:
                                expect.add(f.graph())
                        assert got == frozenset(expect)
        assert checked >= 10


class TestEvaluationAndCurry:
    def test_evaluation_continuous_small(self):
        for x, y in [(point_space(), path_space(2)),
                     (path_space(1), path_space(1)),
                     (path_space(2), path_space(2))]:
            ev, fs, prod = evaluation(x, y)
            assert ev.is_continuous()

    def test_hom_count_sixteen(self):
        p2 = path_space(1)
        prod = product(p2, p2)
        fs = function_space(p2, p2)
        assert count_continuous_maps(prod.space, p2) == 16
        assert count_continuous_maps(p2, fs.base) == 16

    def test_curry_round_trip(self):
        p2 = path_space(1)
        prod = product(p2, p2)
        proj = SpaceMap(prod.space, p2, {p: p[1] for p in prod.space.points})
        g, fs = curry(proj, p2, p2)
        assert g.is_continuous()
        back = uncurry(g, p2, p2, p2)
        assert back.mapping == proj.mapping

    def test_curry_is_bijection(self, rng):
        for _ in range(5):
            x = random_point_limit_space(rng, rng.randint(1, 2))
            y = random_point_limit_space(rng, rng.randint(1, 3), labels="uvw")
            z = random_point_limit_space(rng, rng.randint(1, 3), labels="kme")
            prod = product(x, y)
            lhs = list(continuous_maps(prod.space, z))
            fs = function_space(y, z)
            rhs = list(continuous_maps(x, fs.base))
            assert len(lhs) == len(rhs)
            curried = set()
            for f in lhs:
                g, _ = curry(f, x, y)
                assert uncurry(g, x, y, z).mapping == f.mapping
                curried.add(g.graph())
            assert curried == {h.graph() for h in rhs}

    def test_point_domain_identification(self):
        pt = point_space()
        y, z = path_space(1), path_space(2)
        prod = product(pt, y)
        n_maps = count_continuous_maps(y, z)
        assert count_continuous_maps(prod.space, z) == n_maps
