import json

import pytest
from hypothesis import given, settings

from ckdual.abgroup import TRIVIAL, Z, FgAbGroup, OwnershipError, cyclic
from ckdual.classify import (
    KDatum,
    NotReciprocalForm,
    classify,
    is_ck_form,
    is_reciprocal_ck_form,
    kdatum_of_sheet,
    kp_iso,
    prop22_check,
    reciprocal_kdatum,
    w_case_report,
)
from ckdual.ktheory import invariant_sheet

from conftest import ALL_ONES_2, ALL_ONES_3, EXAMPLE3, admissible_matrices

ZERO = KDatum(TRIVIAL, TRIVIAL.zero(), TRIVIAL)
Z_GEN = KDatum(Z, Z.element((1,)), TRIVIAL)


class TestForms:
    def test_ck_form(self):
        assert is_ck_form(ZERO)
        assert not is_ck_form(Z_GEN)
        G = FgAbGroup(1, (3,))
        assert is_ck_form(KDatum(G, G.element((5,), (1,)), Z))

    def test_reciprocal_form(self):
        assert is_reciprocal_ck_form(Z_GEN)
        assert not is_reciprocal_ck_form(ZERO)

    def test_classify(self):
        assert classify(Z_GEN) == "reciprocal-CK-form"
        assert classify(ZERO) == "CK-form"
        G = FgAbGroup(1, (2,))
        assert classify(KDatum(G, G.element((0,), (1,)), TRIVIAL)) == "reciprocal-CK-form"
        assert classify(KDatum(Z, Z.zero(), FgAbGroup(0, (2,)))) == "neither"
        assert classify(KDatum(FgAbGroup(3), FgAbGroup(3).zero(), Z)) == "neither"

    def test_unit_must_be_owned(self):
        with pytest.raises(OwnershipError):
            KDatum(Z, TRIVIAL.zero(), TRIVIAL)

    def test_json_roundtrip(self):
        G = FgAbGroup(1, (2, 4))
        d = KDatum(G, G.element((3,), (1, 3)), Z)
        assert KDatum.from_dict(json.loads(json.dumps(d.to_dict()))) == d


class TestWCase:
    def test_o2(self):
        r = w_case_report(Z_GEN)
        assert (r.w, r.k0, r.k1) == (1, TRIVIAL, TRIVIAL)

    def test_example3(self):
        r = w_case_report(KDatum(Z, Z.zero(), TRIVIAL))
        assert (r.w, r.k0, r.k1) == (0, Z, Z)

    def test_o3(self):
        r = w_case_report(KDatum(Z, Z.element((2,)), TRIVIAL))
        assert (r.w, r.k0, r.k1) == (1, cyclic(2), TRIVIAL)

    def test_rejects_ck_form(self):
        with pytest.raises(NotReciprocalForm):
            w_case_report(ZERO)


class TestKpIso:
    def test_examples(self):
        assert kp_iso(Z_GEN, Z_GEN)
        assert kp_iso(Z_GEN, KDatum(Z, Z.element((-1,)), TRIVIAL))
        assert kp_iso(reciprocal_kdatum(invariant_sheet(EXAMPLE3)), KDatum(Z, Z.zero(), TRIVIAL))
        assert not kp_iso(Z_GEN, KDatum(Z, Z.element((2,)), TRIVIAL))

    def test_equivalence_relation_on_sample(self):
        data = [reciprocal_kdatum(invariant_sheet(A)) for A in (ALL_ONES_2, ALL_ONES_3, EXAMPLE3)]
        data += [Z_GEN, KDatum(Z, Z.element((-2,)), TRIVIAL), KDatum(Z, Z.zero(), TRIVIAL), ZERO]
        for a in data:
            assert kp_iso(a, a)
            for b in data:
                assert kp_iso(a, b) == kp_iso(b, a)
                for c in data:
                    if kp_iso(a, b) and kp_iso(b, c):
                        assert kp_iso(a, c)


class TestDualCheck:
    def test_examples(self):
        assert prop22_check(ALL_ONES_2, Z_GEN).passed
        assert not prop22_check(ALL_ONES_2, ZERO).passed

    def test_unpointed_cross_check_between_sheets(self):
        a = invariant_sheet(ALL_ONES_2)
        rep = prop22_check(a, kdatum_of_sheet(a), a)
        assert set(rep.unpointed) == {"K0(A) ~ Ext_s^1(B)", "K1(A) ~ Ext_s^0(B)", "Ext_s^0(A) ~ K1(B)", "Ext_s^1(A) ~ K0(B)"}
        assert not rep.unpointed["K0(A) ~ Ext_s^1(B)"]

    @settings(max_examples=100)
    @given(admissible_matrices())
    def test_properties(self, A):
        s = invariant_sheet(A)
        own, dual = kdatum_of_sheet(s), reciprocal_kdatum(s)
        assert is_ck_form(own) and not is_reciprocal_ck_form(own)
        assert is_reciprocal_ck_form(dual) and not is_ck_form(dual)
        assert prop22_check(s, dual).passed
        r = w_case_report(dual)
        assert (r.k0, r.k1) == (s.k0, s.k1)
        assert r.w == s.w_hat
