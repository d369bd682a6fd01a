"""Atlas enumeration, the union-find cross-check, and the lift verifiers."""

import json

import pytest

from closure_oracle import closure_classes, same_class
from projlink.atlas import (
    closure_partition,
    confluence_audit,
    enumerate_classes,
    relation_lift_compatibility,
    universe,
    verify_lift_injectivity,
)
from projlink.links import AmbientSpace, make_link, normal_form

S3 = AmbientSpace.SPHERE3
RP3 = AmbientSpace.RP3


def as_triples(links):
    return frozenset((t.p, t.q, t.n) for t in links)


class TestEnumerateClasses:
    def test_degenerate_universe_has_three_classes(self):
        atlas = enumerate_classes(S3, 0)
        assert len(atlas.classes) == 3
        assert {as_triples(m) for m in atlas.classes.values()} == {
            frozenset({(0, 0, 0)}), frozenset({(0, 0, 1)}), frozenset({(0, 0, 2)})}

    def test_hopf_class_at_bound_two(self):
        atlas = enumerate_classes(S3, 2)
        hopf = atlas.class_of(make_link(S3, 0, 0, 2))
        assert {(2, 2, 0), (2, -2, 0), (1, 1, 1), (1, -1, 1), (0, 0, 2)} <= \
            as_triples(hopf)

    def test_rp3_class_count_at_bound_one(self):
        # Derived with the independent closure oracle before the build.
        atlas = enumerate_classes(RP3, 1)
        assert len(atlas.classes) == 10

    @pytest.mark.parametrize("space", [S3, RP3])
    @pytest.mark.parametrize("bound", [0, 1, 2, 3])
    def test_matches_independent_oracle(self, space, bound):
        atlas = enumerate_classes(space, bound)
        ours = {as_triples(m) for m in atlas.classes.values()}
        # oracle closure over a larger radius, restricted to the inner universe
        inner = {(p, q, n) for p in range(-bound, bound + 1)
                 for q in range(-bound, bound + 1) for n in (0, 1, 2)}
        oracle = {
            frozenset(cls & inner)
            for cls in closure_classes(space.value, 3 * bound if bound else 0)
            if cls & inner}
        assert ours == oracle

    def test_keys_are_normal_forms_of_members(self):
        atlas = enumerate_classes(RP3, 2)
        for key, members in atlas.classes.items():
            assert all(normal_form(m)[0] == key for m in members)
            assert list(members) == sorted(members, key=lambda t: t.sort_key())

    def test_every_triple_in_exactly_one_class(self):
        atlas = enumerate_classes(S3, 3)
        seen = [m for members in atlas.classes.values() for m in members]
        assert len(seen) == len(set(seen)) == len(universe(S3, 3))

    def test_serialization_is_deterministic(self):
        a = json.dumps(enumerate_classes(S3, 2).to_dict(), sort_keys=True)
        b = json.dumps(enumerate_classes(S3, 2).to_dict(), sort_keys=True)
        assert a == b

    def test_negative_bound_rejected(self):
        with pytest.raises(ValueError):
            enumerate_classes(S3, -1)


class TestClosurePartition:
    @pytest.mark.parametrize("space", [S3, RP3])
    def test_monotone_consistency(self, space):
        # Restricting the closure at a larger bound to a smaller universe
        # must reproduce the smaller closure exactly.
        small = closure_partition(space, 2)
        large = closure_partition(space, 6)
        by_small = {}
        by_large = {}
        for link in universe(space, 2):
            by_small.setdefault(small[link], set()).add(link)
            by_large.setdefault(large[link], set()).add(link)
        assert set(map(frozenset, by_small.values())) == \
            set(map(frozenset, by_large.values()))

    def test_distinct_small_torus_knots(self):
        part = closure_partition(S3, 50)
        assert part[make_link(S3, 2, 3, 0)] != part[make_link(S3, 2, 5, 0)]
        assert same_class("s3", (2, 3, 0), (2, 5, 0), 50) is False


class TestConfluenceAudit:
    @pytest.mark.parametrize("space", [S3, RP3])
    def test_clean_at_bound_ten(self, space):
        report = confluence_audit(space, 10)
        assert report.violations == ()
        assert report.bound == 10

    def test_degenerate_universe(self):
        report = confluence_audit(S3, 0)
        assert report.checked_pairs == 3
        assert report.violations == ()

    def test_report_is_deterministic(self):
        a = confluence_audit(RP3, 4).to_dict(include_elapsed=False)
        b = confluence_audit(RP3, 4).to_dict(include_elapsed=False)
        assert a == b


class TestLiftInjectivity:
    def test_clean_at_bound_twenty(self):
        report = verify_lift_injectivity(20)
        assert report.violations == ()

    def test_degenerate_bound(self):
        report = verify_lift_injectivity(0)
        # only the three triples (0, 0; n) at bound zero
        assert report.checked_pairs == 3 * 2 // 2
        assert report.violations == ()

    def test_first_exceptional_case(self):
        a, b = make_link(RP3, 3, 3, 0), make_link(RP3, 2, 2, 1)
        from projlink.links import isotopic, lift
        assert isotopic(lift(a), lift(b))[0]
        assert isotopic(a, b)[0]


class TestRelationLiftCompatibility:
    def test_clean_at_bound_thirty(self):
        report = relation_lift_compatibility(30)
        assert report.violations == ()
        assert report.checked_pairs > 0
        assert report.notes["max_lift_chain_length"] >= 1

    def test_swap_instance_lifts_to_single_swap(self):
        from projlink.links import apply_relation, isotopic, lift, Relation
        link = make_link(RP3, 1, 3, 0)
        step = apply_relation(link, Relation.R2)
        assert step.after == make_link(RP3, 5, 3, 0)
        assert lift(step.before) == make_link(S3, 1, 5, 0)
        assert lift(step.after) == make_link(S3, 5, 1, 0)
        ok, chain = isotopic(lift(step.before), lift(step.after))
        assert ok and len(chain) >= 1
