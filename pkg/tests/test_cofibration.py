import itertools
import random

import pytest

from finconv.builders import cycle_space, discrete_space, path_space
from finconv.core import (
    SpaceMap,
    compose,
    empty_space,
    identity_map,
    point_space,
)
from finconv.errors import IncompatibleData
from finconv.constructions import pushout, pushout_mediator, subspace
from finconv.homotopy import (
    Homotopy,
    constant_homotopy,
    cylinder,
    cylinder_map,
    homotopy_from_chain,
)
from finconv.cofibration import (
    double_mapping_cylinder,
    factorize,
    hep_solve,
    interchange,
    interchange_identities,
    is_cofibration,
    is_cofibration_upto,
    is_retract_of,
    mapping_pair,
    verify_axioms,
)
from finconv.samples import standard_sample
from finconv.search import all_point_limit_spaces, continuous_maps

from conftest import random_point_limit_space


def end_inclusion(n, k=0):
    i_n = path_space(n)
    return SpaceMap(point_space(), i_n, {"*": 0 if k == 0 else n})


class TestIsCofibration:
    def test_isomorphisms_both_models(self):
        for model in ("pushout", "union"):
            for s in (point_space(), path_space(2), cycle_space(3)):
                assert is_cofibration(identity_map(s), 1, model=model) is not None

    def test_empty_inclusion_both_models(self):
        for model in ("pushout", "union"):
            for s in (point_space(), path_space(2)):
                incl = SpaceMap(empty_space(), s, {})
                assert is_cofibration(incl, 1, model=model) is not None

    def test_end_inclusion_union_model(self):
        # the mapping-pair retract the worked examples rely on
        assert is_cofibration(end_inclusion(2), 1, model="union") is not None

    def test_end_inclusion_pushout_model_fails(self):
        # with the categorical pushout target the same retract cannot exist:
        # a cylinder level-1 point over the glued column has no preimage
        # neighborhood in the quotient structure
        assert is_cofibration(end_inclusion(2), 1, model="pushout") is None

    def test_union_model_depends_on_length(self):
        # the open question resolves negatively: length 1 succeeds while
        # length 2 already fails for the same inclusion
        assert is_cofibration(end_inclusion(2), 1, model="union") is not None
        assert is_cofibration(end_inclusion(2), 2, model="union") is None

    def test_upto_retries(self):
        n, r = is_cofibration_upto(end_inclusion(2), 3, model="union")
        assert n == 1 and r is not None

    def test_retract_equation(self):
        i = end_inclusion(2)
        r = is_cofibration(i, 1, model="union")
        target, images, cyl_a = mapping_pair(i, 1, model="union")
        for p, img in images.items():
            assert r.mapping[img] == p

    def test_detached_component_is_pushout_cofibration(self):
        from finconv.constructions import coproduct

        cop = coproduct(point_space(), path_space(2))
        r = is_cofibration(cop.inj0, 1, model="pushout")
        assert r is not None


class TestRetractLemma:
    def _all_heps_solvable(self, i, targets):
        B, A = i.domain, i.codomain
        cyl_b = cylinder(B, 1)
        for z in targets:
            if len(z) == 0 and len(A) > 0:
                continue
            for f in continuous_maps(A, z):
                fixed = {(b, 0): f.mapping[i.mapping[b]] for b in B.points}
                for gmap in continuous_maps(cyl_b.space, z, fixed=fixed):
                    hom = Homotopy(cyl_b, gmap)
                    if hep_solve(i, f, hom, k=0) is None:
                        return False
        return True

    def test_soundness_on_retractable_inclusions(self, rng):
        targets = list(all_point_limit_spaces(("a", "b")))
        targets += [s for s in (point_space(),)]
        # inclusions with a pushout-model retract: isos, empty, detached
        from finconv.constructions import coproduct

        cop = coproduct(point_space(), path_space(1))
        cases = [identity_map(path_space(1)),
                 SpaceMap(empty_space(), path_space(1), {}),
                 cop.inj0]
        for i in cases:
            assert is_cofibration(i, 1, model="pushout") is not None
            assert self._all_heps_solvable(i, targets)

    def test_completeness_via_canonical_target(self):
        """When the canonical problem is solvable the solution is a retract;
        contrapositively a no-retract verdict makes it unsolvable."""
        for i in (end_inclusion(1), end_inclusion(2),
                  subspace(path_space(2), {0, 2}).inclusion):
            target, images, cyl_a = mapping_pair(i, 1, model="pushout")
            B, A = i.domain, i.codomain
            cyl_b = cylinder(B, 1)
            f = SpaceMap(A, target, {a: images_inv(images)[(a, 0)]
                                     for a in A.points})
            g_map = SpaceMap(cyl_b.space, target,
                             {(b, t): images_inv(images)[(i.mapping[b], t)]
                              for (b, t) in cyl_b.space.points})
            hom = Homotopy(cyl_b, g_map)
            h = hep_solve(i, f, hom, k=0)
            verdict = is_cofibration(i, 1, model="pushout")
            if verdict is None:
                assert h is None
            else:
                assert h is not None
                for p, img in images.items():
                    assert h.map.mapping[img] == p


def images_inv(images):
    return {img: p for p, img in images.items()}


class TestHepSolve:
    def test_identity_inclusion_returns_g(self):
        a = path_space(2)
        i = identity_map(a)
        f = identity_map(a)
        g = SpaceMap(a, a, {0: 0, 1: 1, 2: 1})
        hom = homotopy_from_chain([f, g])
        h = hep_solve(i, f, hom, k=0)
        assert h is not None
        assert h.map.mapping == hom.map.mapping

    def test_constant_homotopy_constant_extension(self):
        i = end_inclusion(2)
        a = i.codomain
        f = identity_map(a)
        hom = constant_homotopy(SpaceMap(i.domain, a, {"*": 0}), 2)
        h = hep_solve(i, f, hom, k=0)
        assert h is not None
        assert h.start.mapping == f.mapping

    def test_slide_extends(self):
        i = end_inclusion(2)
        a = i.codomain
        f = identity_map(a)
        pt = i.domain
        slide = homotopy_from_chain([SpaceMap(pt, a, {"*": 0}),
                                     SpaceMap(pt, a, {"*": 1})])
        h = hep_solve(i, f, slide, k=0)
        assert h is not None
        assert h.map.mapping[(0, 1)] == 1

    def test_incompatible_data(self):
        i = end_inclusion(2)
        a = i.codomain
        f = identity_map(a)
        pt = i.domain
        wrong = constant_homotopy(SpaceMap(pt, a, {"*": 2}), 1)
        with pytest.raises(IncompatibleData):
            hep_solve(i, f, wrong, k=0)


class TestInterchange:
    @pytest.mark.parametrize("n", [1, 2])
    def test_identities_on_samples(self, n):
        for s in (point_space(), path_space(1), path_space(2), cycle_space(3)):
            assert interchange_identities(s, n)

    def test_involution(self):
        t, inner, outer = interchange(path_space(2), 1)
        twice = compose(t, t)
        assert twice.mapping == identity_map(outer.space).mapping

    def test_continuous(self):
        t, _, _ = interchange(cycle_space(3), 2)
        assert t.is_continuous()


class TestFactorize:
    def test_point_identity(self):
        res = factorize(identity_map(point_space()), 1)
        assert res.cofibration_verdict == "passed"
        assert res.equivalence_verdict == "passed"
        assert len(res.mapping_cylinder.apex) == 2

    def test_exact_commutation(self, rng):
        for _ in range(8):
            x = random_point_limit_space(rng, rng.randint(1, 3))
            y = random_point_limit_space(rng, rng.randint(1, 3), labels="uvw")
            maps = list(continuous_maps(x, y))
            if not maps:
                continue
            f = rng.choice(maps)
            res = factorize(f, 1)
            assert compose(res.g, res.i).mapping == f.mapping

    def test_isomorphism_case(self):
        x = path_space(2)
        perm = SpaceMap(x, x, {0: 2, 1: 1, 2: 0})
        res = factorize(perm, 1)
        assert res.cofibration_verdict == "passed"
        assert res.equivalence_verdict == "passed"

    def test_point_into_pair(self):
        p2 = path_space(1)
        f = SpaceMap(point_space(), p2, {"*": 0})
        res = factorize(f, 1)
        assert res.cofibration_verdict == "passed"
        assert res.equivalence_verdict == "passed"
        assert len(res.mapping_cylinder.apex) == 3


class TestDoubleMappingCylinder:
    def test_j_is_bijective_at_length_one(self):
        i = end_inclusion(2)
        z, j = double_mapping_cylinder(i, 1)
        values = list(j.mapping.values())
        assert len(set(values)) == len(values) == len(j.codomain.points)

    def test_j_union_cofibration(self):
        i = end_inclusion(2)
        z, j = double_mapping_cylinder(i, 1)
        assert is_cofibration(j, 1, model="union") is not None


class TestRetractOfMap:
    def test_map_retract_of_itself(self):
        f = identity_map(path_space(1))
        assert is_retract_of(f, f)

    def test_collapse_not_retract_of_identity(self):
        p2 = path_space(1)
        pt = point_space()
        alpha = SpaceMap(p2, pt, {0: "*", 1: "*"})
        beta = identity_map(pt)
        # alpha has a 2-point domain, beta a 1-point one: the top row
        # cannot compose to the identity of the pair
        assert not is_retract_of(alpha, beta)

    def test_restriction_is_retract(self):
        # the identity of a point is a retract of the identity of a pair
        alpha = identity_map(point_space())
        beta = identity_map(path_space(1))
        assert is_retract_of(alpha, beta)


class TestSuites:
    def test_i_category_suite_passes(self):
        rep = verify_axioms(standard_sample(), "i-category")
        assert rep.exit_code() == 0
        axioms = {e["axiom"] for e in rep.entries}
        assert axioms == {"cylinder", "pushout", "cofibration",
                          "interchange", "relative-cylinder"}

    def test_cofibration_category_suite_zero_failures(self):
        rep = verify_axioms(standard_sample()[:6], "cofibration-category")
        assert all(e["verdict"] != "fail" for e in rep.entries)
        assert rep.exit_code() in (0, 2)

    def test_report_serializes(self):
        rep = verify_axioms([("point", point_space())], "i-category")
        d = rep.to_dict()
        assert d["suite"] == "i-category"
        assert d["cofibration_model"] == "union"
        assert d["exit_code"] == 0

    def test_composed_cofibrations_stay_cofibrations(self):
        i = SpaceMap(point_space(), path_space(1), {"*": 0})
        j_incl = SpaceMap(path_space(1), path_space(2), {0: 0, 1: 1})
        assert is_cofibration(i, 1, model="union") is not None
        assert is_cofibration(j_incl, 1, model="union") is not None
        assert is_cofibration(compose(j_incl, i), 1, model="union") is not None
