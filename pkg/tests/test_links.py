"""Unit and property tests for the torus-link calculus."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projlink.links import (
    AmbientSpace,
    Direction,
    InvalidN,
    NotApplicable,
    Relation,
    SpaceMismatch,
    TorusLink,
    WrongSpace,
    applicable_relations,
    apply_relation,
    chain_from_list,
    chain_to_list,
    classify,
    ClassificationKind,
    component_count,
    isotopic,
    lift,
    link_from_dict,
    link_to_dict,
    make_link,
    normal_form,
    verify_chain,
)

S3 = AmbientSpace.SPHERE3
RP3 = AmbientSpace.RP3

spaces = st.sampled_from([S3, RP3])
coeffs = st.integers(min_value=-200, max_value=200)
triples = st.builds(make_link, spaces, coeffs, coeffs, st.integers(0, 2))


class TestMakeLink:
    def test_constructor_passthrough(self):
        assert make_link(S3, 2, 3, 0) == TorusLink(S3, 2, 3, 0)
        assert make_link(RP3, 0, 0, 1) == TorusLink(RP3, 0, 0, 1)

    def test_out_of_range_n(self):
        with pytest.raises(InvalidN):
            make_link(S3, 1, 1, 3)
        with pytest.raises(InvalidN):
            make_link(S3, 1, 1, -1)

    def test_non_integer_rejected(self):
        with pytest.raises(InvalidN):
            make_link(S3, 1.5, 1, 0)


class TestComponentCount:
    def test_hopf_link_has_two_components(self):
        assert component_count(make_link(S3, 2, 2, 0)) == 2

    def test_unknot(self):
        assert component_count(make_link(S3, 0, 0, 1)) == 1

    def test_parallel_copies_plus_cores(self):
        assert component_count(make_link(S3, 6, 4, 2)) == 4

    def test_empty_family(self):
        assert component_count(make_link(RP3, 0, 0, 0)) == 0


class TestApplicability:
    def test_dividing_p_enables_r3(self):
        assert (Relation.R3, Direction.FORWARD) in applicable_relations(
            make_link(S3, 2, 2, 0))

    def test_degenerate_triple_has_only_involutions(self):
        assert applicable_relations(make_link(S3, 0, 0, 0)) == [
            (Relation.R1, Direction.FORWARD),
            (Relation.R2, Direction.FORWARD),
        ]

    def test_rp3_handlebody_swap(self):
        link = make_link(RP3, 1, 3, 0)
        assert (Relation.R2, Direction.FORWARD) in applicable_relations(link)
        step = apply_relation(link, Relation.R2)
        assert step.after == make_link(RP3, 5, 3, 0)

    def test_no_swap_with_one_core(self):
        rels = applicable_relations(make_link(S3, 3, 2, 1))
        assert (Relation.R2, Direction.FORWARD) not in rels


class TestApplyRelation:
    @pytest.mark.parametrize("space,before,rel,after", [
        (S3, (2, 2, 0), Relation.R3, (1, 1, 1)),
        (S3, (1, 1, 1), Relation.R4, (0, 0, 2)),
        (RP3, (3, 3, 0), Relation.R3, (2, 2, 1)),
        (RP3, (2, 2, 1), Relation.R4, (1, 1, 2)),
    ])
    def test_forward_reductions(self, space, before, rel, after):
        step = apply_relation(make_link(space, *before), rel)
        assert step.after == make_link(space, *after)

    def test_not_applicable(self):
        with pytest.raises(NotApplicable):
            apply_relation(make_link(S3, 2, 3, 0), Relation.R3)
        with pytest.raises(NotApplicable):
            apply_relation(make_link(S3, 2, 2, 1), Relation.R2)

    @given(triples)
    def test_backward_inverts_forward(self, link):
        for rel, direction in applicable_relations(link):
            if direction is not Direction.FORWARD or rel in (
                    Relation.R1, Relation.R2):
                continue
            step = apply_relation(link, rel, direction)
            rels_back = applicable_relations(step.after)
            assert (rel, Direction.BACKWARD) in rels_back
            # The backward map may pick a different canonical preimage only
            # at the degenerate triples (0,0;1) and (0,0;2).
            back = apply_relation(step.after, rel, Direction.BACKWARD)
            if (step.after.p, step.after.q) != (0, 0):
                assert back.after == link


class TestNormalForm:
    def test_hopf_from_two_minus_two(self):
        nf, chain = normal_form(make_link(S3, 2, -2, 0))
        assert nf == normal_form(make_link(S3, 0, 0, 2))[0]
        assert len(chain) >= 2
        assert verify_chain(chain, make_link(S3, 2, -2, 0), nf)

    def test_unknot_family(self):
        assert normal_form(make_link(S3, 1, 7, 0))[0] == \
            normal_form(make_link(S3, 0, 0, 1))[0]

    def test_rp3_four_zero(self):
        assert normal_form(make_link(RP3, 4, 0, 0))[0] == \
            normal_form(make_link(RP3, 2, 0, 2))[0]

    @given(triples)
    @settings(max_examples=300)
    def test_idempotent(self, link):
        nf, _ = normal_form(link)
        assert normal_form(nf)[0] == nf

    @given(triples)
    @settings(max_examples=300)
    def test_witness_replays(self, link):
        nf, chain = normal_form(link)
        assert verify_chain(chain, link, nf)

    @given(triples)
    @settings(max_examples=300)
    def test_component_count_is_invariant(self, link):
        nf, chain = normal_form(link)
        assert component_count(nf) == component_count(link)
        for step in chain.steps:
            assert component_count(step.before) == component_count(step.after)

    @given(triples)
    @settings(max_examples=300)
    def test_forward_reductions_shrink(self, link):
        for rel in (Relation.R3, Relation.R4):
            try:
                step = apply_relation(link, rel, Direction.FORWARD)
            except NotApplicable:
                continue
            before = abs(step.before.p) + abs(step.before.q)
            after = abs(step.after.p) + abs(step.after.q)
            assert after < before


class TestIsotopic:
    def test_swap(self):
        ok, chain = isotopic(make_link(S3, 3, 5, 0), make_link(S3, 5, 3, 0))
        assert ok
        assert verify_chain(chain, make_link(S3, 3, 5, 0), make_link(S3, 5, 3, 0))

    def test_rp3_double_reduction(self):
        ok, _ = isotopic(make_link(RP3, 3, 3, 0), make_link(RP3, 1, 1, 2))
        assert ok

    def test_distinct_torus_links(self):
        # Derived from the bounded closure oracle at bound 50 (disjoint orbits).
        ok, chain = isotopic(make_link(S3, 2, 3, 0), make_link(S3, 2, 5, 0))
        assert not ok
        assert chain is None

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            isotopic(make_link(S3, 1, 1, 0), make_link(RP3, 1, 1, 0))

    @given(triples, triples)
    @settings(max_examples=200)
    def test_positive_verdicts_carry_valid_chains(self, a, b):
        if a.space is not b.space:
            return
        ok, chain = isotopic(a, b)
        if ok:
            assert verify_chain(chain, a, b)


class TestLift:
    @pytest.mark.parametrize("before,after", [
        ((1, 1, 0), (1, 1, 0)),
        ((0, 1, 0), (0, 2, 0)),
        ((2, 1, 1), (2, 0, 1)),
    ])
    def test_formula(self, before, after):
        assert lift(make_link(RP3, *before)) == make_link(S3, *after)

    def test_wrong_space(self):
        with pytest.raises(WrongSpace):
            lift(make_link(S3, 1, 1, 0))

    @given(st.builds(make_link, st.just(RP3), coeffs, coeffs, st.integers(0, 2)))
    @settings(max_examples=200)
    def test_relations_lift_to_isotopies(self, link):
        for rel, direction in applicable_relations(link):
            step = apply_relation(link, rel, direction)
            ok, _ = isotopic(lift(step.before), lift(step.after))
            assert ok, (link, rel, direction)


class TestClassify:
    @pytest.mark.parametrize("space,triple,kind", [
        (S3, (0, 2, 0), ClassificationKind.NON_SEIFERT_SPLIT),
        (RP3, (2, 1, 1), ClassificationKind.NON_SEIFERT_SPLIT),
        (S3, (2, 3, 0), ClassificationKind.SEIFERT_COMPLEMENT),
        (S3, (0, 0, 0), ClassificationKind.EMPTY),
        (S3, (0, 0, 1), ClassificationKind.SEIFERT_COMPLEMENT),
        (RP3, (0, 3, 0), ClassificationKind.NON_SEIFERT_SPLIT),
        (RP3, (4, 2, 1), ClassificationKind.NON_SEIFERT_SPLIT),
        (RP3, (0, 0, 0), ClassificationKind.EMPTY),
    ])
    def test_examples(self, space, triple, kind):
        assert classify(make_link(space, *triple)).kind == kind

    @given(triples)
    @settings(max_examples=200)
    def test_classification_is_a_class_invariant(self, link):
        nf, _ = normal_form(link)
        assert classify(link).kind == classify(nf).kind


class TestSerialization:
    @given(triples)
    def test_link_roundtrip(self, link):
        assert link_from_dict(link_to_dict(link)) == link

    def test_chain_roundtrip(self):
        _, chain = normal_form(make_link(RP3, 4, 0, 0))
        assert chain_from_list(chain_to_list(chain)) == chain
