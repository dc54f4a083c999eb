"""Tests for the built-in curve catalog."""

import pytest

from flexline import catalog, config, curve, gf, mpoly
from flexline.catalog import CurveSpec
from flexline.errors import InadmissibleCharacteristic, SingularParameter


def form_of(cid, p, u=None):
    q, _ = catalog.build(CurveSpec(cid, p, u))
    return q.form


def substitution_fixes(form, m):
    big = gf.compositum(form.ctx, m.ctx)
    f = form.embed_to(big)
    return mpoly.substitute(f, m.embed_to(big).rows()).is_proportional(f)


class TestValidation:
    def test_unknown_id(self):
        with pytest.raises(ValueError):
            catalog.validate(CurveSpec("Zed", 7))

    def test_small_characteristic(self):
        for p in (2, 3):
            with pytest.raises(InadmissibleCharacteristic):
                catalog.validate(CurveSpec("F", p))

    def test_family_needs_parameter(self):
        with pytest.raises(ValueError):
            catalog.validate(CurveSpec("Vu", 11))

    def test_parameter_only_for_family(self):
        with pytest.raises(ValueError):
            catalog.validate(CurveSpec("F", 11, 2))

    def test_singular_parameters(self):
        for u in (0, 1, 13, 14, -13):
            with pytest.raises(SingularParameter):
                catalog.validate(CurveSpec("Vu", 13, u))

    def test_itemized_bad_primes(self):
        bad = [("K", 5), ("K1", 5), ("Cplus", 7), ("Cminus", 7), ("V", 7)]
        for cid, p in bad:
            with pytest.raises(InadmissibleCharacteristic):
                catalog.validate(CurveSpec(cid, p))
            assert not catalog.is_admissible(CurveSpec(cid, p))

    def test_runtime_singularity_net(self):
        # the rescaled forms degenerate away from 13 at some primes the
        # itemized list does not mention; the smoothness check catches them
        for cid, p in (("K2", 5), ("K3", 5), ("K2", 11), ("K3", 11)):
            with pytest.raises(InadmissibleCharacteristic):
                catalog.build(CurveSpec(cid, p))

    def test_labels(self):
        assert CurveSpec("F", 13).label() == "F"
        assert CurveSpec("Vu", 13, 12).label() == "Vu:12"


class TestBuild:
    def test_all_ids_build_at_13(self):
        for cid in catalog.CURVE_IDS:
            spec = CurveSpec(cid, 13, 3 if cid == "Vu" else None)
            q, ctx = catalog.build(spec)
            assert q.form.degree == 4
            assert q.label == spec.label()

    def test_base_field_is_prime_when_possible(self):
        for cid in ("F", "K", "V", "Ec313a", "Ec313b"):
            _, ctx = catalog.build(CurveSpec(cid, 17))
            assert ctx.order == 17

    def test_sqrt7_rational_cases(self):
        # 7 is a square mod 19 and mod 31, so no extension happens
        q19, ctx19 = catalog.build(CurveSpec("Cplus", 19))
        assert ctx19.order == 19
        assert q19.form.coeff((0, 0, 4)).vec() == (9,)
        assert q19.form.coeff((3, 0, 1)).vec() == (11,)
        assert q19.form.coeff((1, 1, 2)).vec() == (16,)
        q31, ctx31 = catalog.build(CurveSpec("Cplus", 31))
        assert ctx31.order == 31
        assert q31.form.coeff((0, 0, 4)).vec() == (8,)
        assert q31.form.coeff((3, 0, 1)).vec() == (13,)

    def test_sqrt7_conjugate_choice(self):
        q, ctx = catalog.build(CurveSpec("Cminus", 31))
        assert ctx.order == 31
        assert q.form.coeff((0, 0, 4)).vec() == (3,)
        assert q.form.coeff((3, 0, 1)).vec() == (24,)
        assert q.form.coeff((1, 1, 2)).vec() == (17,)

    def test_sqrt7_extension_case(self):
        q, ctx = catalog.build(CurveSpec("Cplus", 13))
        assert ctx.spec_string() == "13^2/2,0,1"
        assert q.form.coeff((0, 0, 4)).vec() == (8, 6)
        r = (q.form.coeff((3, 0, 1)) - ctx.el(3))
        assert r * r == ctx.el(7)

    def test_family_parameter_reduced(self):
        a = form_of("Vu", 13, 3)
        b = form_of("Vu", 13, 16)
        assert a == b

    def test_companions_match_family(self):
        assert form_of("Ec313a", 13) == form_of("Vu", 13, -1)
        # the second companion differs from the family in one sign
        b = form_of("Ec313b", 13)
        assert b.coeff((4, 0, 0)).vec() == (1,)
        assert b.coeff((0, 4, 0)).vec() == (12,)

    def test_rescaled_forms_at_13(self):
        k2 = form_of("K2", 13)
        assert k2.coeff((2, 2, 0)).vec() == (1,)   # 27 mod 13
        assert k2.coeff((0, 0, 4)).vec() == (9,)
        k3 = form_of("K3", 13)
        assert k3.coeff((2, 0, 2)).vec() == (1,)
        assert k3.coeff((0, 4, 0)).vec() == (9,)


class TestNamedMaps:
    def test_cycle_action_on_rescaled_forms(self):
        # one marked map carries each rescaled form to the next, cyclically
        maps = {m.name: m for m in catalog.named_maps(CurveSpec("K1", 13))}
        g = maps["gamma13"].map
        k1, k2, k3 = (form_of(c, 13) for c in ("K1", "K2", "K3"))
        assert mpoly.substitute(k1, g.rows()).is_proportional(k2)
        assert mpoly.substitute(k2, g.rows()).is_proportional(k3)
        assert mpoly.substitute(k3, g.rows()).is_proportional(k1)
        assert not maps["gamma13"].curve_aut
        assert maps["gamma13"].config_aut

    def test_gamma13_only_at_13(self):
        names = {m.name for m in catalog.named_maps(CurveSpec("K1", 11))}
        assert "gamma13" not in names and "gamma7" not in names
        names7 = {m.name for m in catalog.named_maps(CurveSpec("K1", 7))}
        assert "gamma7" in names7 and "gamma13" not in names7

    def test_curve_flags_match_substitution(self):
        specs = [CurveSpec("K1", 13), CurveSpec("K1", 7),
                 CurveSpec("Cplus", 13), CurveSpec("Cminus", 31),
                 CurveSpec("V", 11), CurveSpec("V", 13),
                 CurveSpec("Vu", 13, 3), CurveSpec("Vu", 11, 5),
                 CurveSpec("Ec313a", 13), CurveSpec("Ec313b", 13),
                 CurveSpec("Ec313b", 11)]
        for spec in specs:
            q, _ = catalog.build(spec)
            for nm in catalog.named_maps(spec):
                assert substitution_fixes(q.form, nm.map) == nm.curve_aut, \
                    (spec.label(), nm.name)

    def test_gamma7_moves_the_configuration(self):
        spec = CurveSpec("K1", 7)
        q, _ = catalog.build(spec)
        E, recs = curve.inflection_scheme(q)
        conf = config.from_flexes(E, recs)
        gamma7 = next(m for m in catalog.named_maps(spec)
                      if m.name == "gamma7")
        big = gf.compositum(E, gamma7.map.ctx)
        assert not config.is_transporter(
            gamma7.map.embed_to(big), conf.embed_to(big), conf.embed_to(big))

    def test_family_generators_give_order_eight(self):
        maps = [m.map for m in catalog.named_maps(CurveSpec("Vu", 13, 3))]
        assert all(m.ctx.order == 13 for m in maps)
        seen = {}
        frontier = [maps[0].compose(maps[0].inverse())]
        seen[frontier[0].sort_key()] = frontier[0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in maps:
                    c = a.compose(g)
                    if c.sort_key() not in seen:
                        seen[c.sort_key()] = c
                        nxt.append(c)
            frontier = nxt
        assert len(seen) == 8

    def test_companion_generators_stay_rational(self):
        # s^4 = -1 needs only i over GF(13); both maps live over GF(13^2)
        for nm in catalog.named_maps(CurveSpec("Ec313b", 13)):
            assert nm.map.ctx.order in (13, 169)
            assert nm.curve_aut and nm.config_aut


class TestExpectedProfile:
    def test_total_weight_always_exact(self):
        for cid in ("F", "K1", "Cplus", "V", "Ec313b"):
            prof = catalog.expected_profile(CurveSpec(cid, 13))
            e = prof.get("total_weight")
            assert e.value == 24 and e.exact

    def test_flex_counts(self):
        assert catalog.expected_profile(CurveSpec("F", 5)).get("counts") \
            == ("counts", (12, 0), True)
        assert catalog.expected_profile(CurveSpec("K1", 11)).get("counts") \
            == ("counts", (12, 0), False)
        assert catalog.expected_profile(CurveSpec("Cplus", 31)).get("counts") \
            == ("counts", (9, 6), False)
        assert catalog.expected_profile(CurveSpec("Vu", 11, 5)).get("counts") \
            == ("counts", (8, 8), False)

    def test_group_orders_at_13(self):
        k = catalog.expected_profile(CurveSpec("K1", 13))
        assert k.get("config_group_order") == ("config_group_order", 72, True)
        assert k.get("curve_group_order") == ("curve_group_order", 24, True)
        v = catalog.expected_profile(CurveSpec("Vu", 13, 12))
        assert v.get("config_group_order") == ("config_group_order", 16, True)
        assert v.get("curve_group_order") == ("curve_group_order", 8, True)
        b = catalog.expected_profile(CurveSpec("Ec313b", 13))
        assert b.get("config_group_order") == ("config_group_order", 16, True)

    def test_group_orders_away_from_13(self):
        k = catalog.expected_profile(CurveSpec("K1", 17))
        assert k.get("config_group_order") == ("config_group_order", 24, False)
        k7 = catalog.expected_profile(CurveSpec("K1", 7))
        assert k7.get("config_group_order") == ("config_group_order", 24, True)
        v = catalog.expected_profile(CurveSpec("Vu", 17, 16))
        assert v.get("config_group_order") == ("config_group_order", 8, False)

    def test_conic_expectations(self):
        v = catalog.expected_profile(CurveSpec("V", 11))
        assert v.get("hyper_conic_rank").value == 6
        assert v.get("simple_conic").value == {(1, 1, 0): 1, (0, 0, 2): 1}
        f = catalog.expected_profile(CurveSpec("Vu", 13, 3))
        assert f.get("hyper_conic").value == {(1, 1, 0): 1, (0, 0, 2): 1}
        assert f.get("simple_conic").value == {(1, 1, 0): 32, (0, 0, 2): 86}

    def test_line_cover_expectations(self):
        assert catalog.expected_profile(CurveSpec("F", 7)).get(
            "line_cover").value == 3
        assert catalog.expected_profile(CurveSpec("K1", 7)).get(
            "line_cover").value == 6
        assert catalog.expected_profile(CurveSpec("V", 11)).get(
            "line_cover") is None


class TestRoster:
    def test_roster_at_13(self):
        labels = [s.label() for s in catalog.roster(13)]
        assert labels[:4] == ["F", "K1", "K2", "K3"]
        assert "Ec313b" in labels and "Ec313a" not in labels
        assert "K" not in labels
        assert labels.count("Vu:12") == 1
        assert len(labels) == 19

    def test_roster_away_from_13(self):
        labels7 = [s.label() for s in catalog.roster(7)]
        assert "Cplus" not in labels7 and "V" not in labels7
        assert "K1" in labels7
        labels5 = [s.label() for s in catalog.roster(5)]
        assert "K1" not in labels5 and "Cplus" in labels5
        assert "K2" not in labels7 and "Ec313b" not in labels7

    def test_roster_members_admissible(self):
        for p in (5, 7, 11, 13, 17):
            for spec in catalog.roster(p):
                catalog.validate(spec)

    def test_family_sweep_size(self):
        assert catalog.family_parameters(13) == list(range(2, 13))
        assert catalog.family_parameters(37) == list(range(2, 37))
        assert len(catalog.family_parameters(41)) == 36
        assert catalog.family_parameters(41)[0] == 2
        assert len(catalog.roster(41)) == 41
