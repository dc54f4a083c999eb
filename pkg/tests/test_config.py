import itertools
import random

import numpy as np
import pytest

from flexline import config, curve, gf, mpoly, proj
from flexline.config import (
    LineConfiguration,
    ProjGroup,
    automorphism_group,
    collinear_profile,
    curve_automorphisms,
    from_flexes,
    from_json,
    is_transporter,
    minimal_line_cover,
    pencil_invariant,
    support_signature,
    transporters,
)
from flexline.errors import (
    DegenerateConfiguration,
    GroupTooLarge,
)


FERMAT = {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}
KLEIN_LIKE = {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1,
              (2, 2, 0): 3, (2, 0, 2): 3, (0, 2, 2): 3}
KLEIN_LIKE_B = {(4, 0, 0): 1, (0, 4, 0): 3, (0, 0, 4): 9,
                (2, 2, 0): 27, (2, 0, 2): 9, (0, 2, 2): 3}
KLEIN_LIKE_C = {(4, 0, 0): 1, (0, 4, 0): 9, (0, 0, 4): 3,
                (2, 2, 0): 9, (2, 0, 2): 27, (0, 2, 2): 3}
V_COEFFS = {(4, 0, 0): 1, (0, 4, 0): -7, (0, 0, 4): -1,
            (2, 2, 0): -42, (1, 1, 2): 12}


def vu_coeffs(u):
    return {(4, 0, 0): u, (0, 4, 0): 1, (0, 0, 4): -1,
            (2, 2, 0): -2, (1, 1, 2): -4}


def quartic(p, coeffs, k=1):
    ctx = gf.field(p, k)
    return curve.PlaneQuartic(
        mpoly.HomPoly(ctx, 4, {m: ctx.el(c) for m, c in coeffs.items()}))


def sqrt7_curve(p, sign):
    """x, y, z quartic with an irrational coefficient sqrt(7) (or -sqrt(7))."""
    ctx, r = gf.find_nth_root(gf.field(p, 1), 7, 2)
    if sign < 0:
        r = -r
    six = ctx.el(6)
    coeffs = {
        (0, 0, 4): ctx.el(21) + ctx.el(8) * r,
        (1, 1, 2): -six * (ctx.el(2) + r),
        (3, 0, 1): ctx.el(3) + r,
        (0, 3, 1): ctx.el(3) + r,
        (2, 2, 0): ctx.el(-3),
    }
    return curve.PlaneQuartic(mpoly.HomPoly(ctx, 4, coeffs))


_CACHE = {}


def analyzed(key, builder):
    """Cache (curve, flex field, records, configuration) per test module."""
    if key not in _CACHE:
        c = builder()
        E, recs = curve.inflection_scheme(c)
        _CACHE[key] = (c, E, recs, from_flexes(E, recs))
    return _CACHE[key]


def fermat17():
    return analyzed("F17", lambda: quartic(17, FERMAT))


def klein13():
    return analyzed("K13", lambda: quartic(13, KLEIN_LIKE))


def klein7():
    return analyzed("K7", lambda: quartic(7, KLEIN_LIKE))


def vee11():
    return analyzed("V11", lambda: quartic(11, V_COEFFS))


def vu3_13():
    return analyzed("Vu3", lambda: quartic(13, vu_coeffs(3)))


def vu12_13():
    return analyzed("Vu12", lambda: quartic(13, vu_coeffs(12)))


_GROUPS = {}


def group_of(name, conf):
    if name not in _GROUPS:
        _GROUPS[name] = automorphism_group(conf)
    return _GROUPS[name]


S3_ORDERS = {1: 1, 2: 3, 3: 2}
S4_ORDERS = {1: 1, 2: 9, 3: 8, 4: 6}
D4_ORDERS = {1: 1, 2: 5, 4: 2}
D8_16_ORDERS = {1: 1, 2: 9, 4: 2, 8: 4}


# --------------------------------------------------------------------------


class TestLineConfiguration:
    def test_support_sorted_and_weights(self):
        ctx = gf.prime_field(13)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        conf = LineConfiguration(
            ctx, {pt(1, 2, 3): 2, pt(0, 1, 1): 1, pt(1, 0, 0): 1})
        assert conf.support == (pt(0, 1, 1), pt(1, 0, 0), pt(1, 2, 3))
        assert conf.total_weight == 4
        assert conf.weight_histogram() == {1: 2, 2: 1}
        assert conf.weight_class(2) == (pt(1, 2, 3),)
        assert conf.weight(pt(5, 10, 15)) == 2  # same projective point
        assert conf.weight(pt(1, 1, 1)) == 0
        assert len(conf) == 3

    def test_rejects_bad_weights_and_foreign_points(self):
        ctx = gf.prime_field(13)
        other = gf.prime_field(17)
        pt = proj.ProjPoint(ctx, (1, 2, 3))
        with pytest.raises(ValueError):
            LineConfiguration(ctx, {pt: 0})
        with pytest.raises(ValueError):
            LineConfiguration(ctx, {pt: -1})
        with pytest.raises(ValueError):
            LineConfiguration(other, {pt: 1})

    def test_equality_and_hash(self):
        ctx = gf.prime_field(13)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        a = LineConfiguration(ctx, {pt(1, 2, 3): 2, pt(0, 1, 1): 1})
        b = LineConfiguration(ctx, {pt(0, 1, 1): 1, pt(2, 4, 6): 2})
        c = LineConfiguration(ctx, {pt(0, 1, 1): 2, pt(1, 2, 3): 2})
        assert a == b and hash(a) == hash(b)
        assert a != c

    def test_embed_round_trip(self):
        ctx = gf.prime_field(13)
        big = gf.field(13, 2)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        a = LineConfiguration(ctx, {pt(1, 2, 3): 2, pt(0, 1, 1): 1})
        lifted = a.embed_to(big)
        assert lifted.ctx == big
        assert lifted.weight_histogram() == a.weight_histogram()
        assert lifted.weight(proj.ProjPoint(big, (1, 2, 3))) == 2

    def test_from_flexes_accumulates_shared_lines(self):
        ctx = gf.prime_field(13)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        recs = [
            curve.FlexRecord(pt(1, 0, 0), pt(0, 0, 1), 1, 3),
            curve.FlexRecord(pt(0, 1, 0), pt(0, 0, 1), 1, 3),
            curve.FlexRecord(pt(1, 1, 1), pt(1, 1, 1), 2, 4),
        ]
        conf = from_flexes(ctx, recs)
        assert conf.weight(pt(0, 0, 1)) == 2
        assert conf.weight(pt(1, 1, 1)) == 2
        assert conf.total_weight == 4
        assert len(from_flexes(ctx, [])) == 0

    def test_json_round_trip_prime_field(self):
        ctx = gf.prime_field(13)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        a = LineConfiguration(ctx, {pt(1, 2, 3): 2, pt(0, 1, 1): 1})
        data = a.to_json()
        assert data["field"] == "13"
        assert data["points"][0]["dual"] == [0, 1, 1]
        assert from_json(data) == a

    def test_json_round_trip_extension_field(self):
        ctx = gf.field(13, 2)
        t = ctx.gen
        pt1 = proj.ProjPoint(ctx, (ctx.one, t, ctx.el(3)))
        pt2 = proj.ProjPoint(ctx, (ctx.zero, ctx.one, t + 1))
        a = LineConfiguration(ctx, {pt1: 2, pt2: 1})
        data = a.to_json()
        assert data["field"].startswith("13^2/")
        assert all(isinstance(c, list) and len(c) == 2
                   for rec in data["points"] for c in rec["dual"])
        assert from_json(data) == a

    def test_json_accepts_ints_in_extension_fields(self):
        data = {"field": "13^2", "points": [{"dual": [1, 2, 3], "weight": 2}]}
        conf = from_json(data)
        assert conf.ctx == gf.field(13, 2)
        assert conf.weight(proj.ProjPoint(conf.ctx, (1, 2, 3))) == 2

    def test_json_duplicate_duals_accumulate(self):
        data = {"field": "13", "points": [
            {"dual": [0, 0, 1], "weight": 1},
            {"dual": [0, 0, 2], "weight": 1},
        ]}
        conf = from_json(data)
        assert conf.weight(proj.ProjPoint(gf.prime_field(13), (0, 0, 1))) == 2

    def test_json_rejects_wrong_digit_count(self):
        data = {"field": "13^2",
                "points": [{"dual": [[1, 2, 3], 0, 1], "weight": 1}]}
        with pytest.raises(ValueError):
            from_json(data)


# --------------------------------------------------------------------------


class TestSupportInvariants:
    def test_collinear_profile_and_cover_small_sets(self):
        ctx = gf.prime_field(13)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        assert minimal_line_cover([]) == 0
        assert minimal_line_cover([pt(1, 2, 3)]) == 1
        on_line = [pt(0, 1, v) for v in range(4)]
        assert collinear_profile(on_line) == (4,)
        assert minimal_line_cover(on_line) == 1
        square = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)]
        assert collinear_profile(square) == ()
        assert minimal_line_cover(square) == 2

    def test_fermat_signature(self):
        _, _, _, conf = fermat17()
        sig = support_signature(conf)
        assert sig.collinear_profile == (4, 4, 4)
        assert sig.line_cover == 3
        assert sig.conic_rank_weight2 == 6

    def test_klein_like_signature(self):
        _, _, _, conf = klein13()
        sig = support_signature(conf)
        assert sig.collinear_profile == ()
        assert sig.line_cover == 6
        assert sig.conic_rank_weight2 == 6

    def test_v_signature(self):
        _, _, _, conf = vee11()
        sig = support_signature(conf)
        assert sig.conic_rank_weight2 == 6
        assert len(conf.weight_class(2)) == 8

    def test_vu_weight_classes_sit_on_conics(self):
        _, E, _, conf = vu3_13()
        hyper = conf.weight_class(2)
        simple = conf.weight_class(1)
        assert proj.conic_rank(hyper) == 5
        assert proj.conic_rank(simple) == 5
        hconic = proj.conic_through(hyper)
        target = mpoly.HomPoly(E, 2, {(0, 0, 2): E.one, (1, 1, 0): E.one})
        assert hconic.is_proportional(target)
        sconic = proj.conic_through(simple)
        starget = mpoly.HomPoly(
            E, 2, {(1, 1, 0): E.el(32), (0, 0, 2): E.el(27 * 3 + 5)})
        assert sconic.is_proportional(starget)


class TestPencilInvariant:
    def test_one_parameter_family_values(self):
        # cross-ratio comes out as (27u + 5) / 32 in the prime subfield
        for u, key in ((3, "Vu3"), (12, "Vu12")):
            _, _, _, conf = analyzed(key, lambda u=u: quartic(13, vu_coeffs(u)))
            got = pencil_invariant(conf)
            expected = (27 * u + 5) * pow(32, -1, 13) % 13
            assert got == conf.ctx.el(expected)
        _, _, _, conf4 = analyzed("Vu4", lambda: quartic(13, vu_coeffs(4)))
        assert pencil_invariant(conf4) == conf4.ctx.el(8)

    def test_undefined_when_ranks_are_not_five(self):
        _, _, _, fermat = fermat17()
        assert pencil_invariant(fermat) is None  # weight-2 rank is 6
        _, _, _, klein = klein13()
        assert pencil_invariant(klein) is None  # no weight-1 points

    def test_invariant_under_projectivities(self):
        _, E, _, conf = vu3_13()
        base = pencil_invariant(conf)
        rng = random.Random(31)
        for _ in range(5):
            n = random_map(E, rng)
            moved = LineConfiguration(
                E, {n.apply(pt): w for pt, w in conf.entries.items()})
            assert pencil_invariant(moved) == base

    def test_separates_family_members(self):
        _, _, _, a = vu3_13()
        _, _, _, b = analyzed("Vu4", lambda: quartic(13, vu_coeffs(4)))
        big = gf.compositum(a.ctx, b.ctx)
        assert transporters(a.embed_to(big), b.embed_to(big)) == []

    def test_prefilter_matches_exhaustive_reference(self):
        # synthetic configurations: two conics through disjoint point sets;
        # the invariant equals the second conic's z^2 coefficient
        ctx = gf.prime_field(7)

        def on_conic(lam):
            c = mpoly.HomPoly(ctx, 2, {(1, 1, 0): ctx.one,
                                       (0, 0, 2): ctx.el(lam)})
            return {pt for pt in proj.all_points(ctx)
                    if c.evaluate(pt.coords).is_zero}

        w2 = on_conic(1)

        def conf_for(lam):
            w1 = on_conic(lam)
            entries = {pt: 2 for pt in w2 - w1}
            entries.update({pt: 1 for pt in w1 - w2})
            return LineConfiguration(ctx, entries)

        a, b = conf_for(2), conf_for(3)
        assert pencil_invariant(a) == ctx.el(2)
        assert pencil_invariant(b) == ctx.el(3)
        assert transporters(a, b) == []
        assert brute_dual_maps(a, b) == []
        got = transporters(a, a)
        got_dual = sorted({m.line_action() for m in got},
                          key=lambda mm: mm.sort_key())
        assert got_dual == brute_dual_maps(a, a)
        assert len(got) > 0


# --------------------------------------------------------------------------
# brute-force reference: enumerate every invertible matrix over F_p and keep
# the ones that push the weighted dual point set of a onto b


def brute_dual_maps(a, b):
    ctx = a.ctx
    p = ctx.p
    assert ctx.k == 1
    apts = [[int(c.vec()[0]) for c in pt.coords] for pt in a.support]
    aw = [a.entries[pt] for pt in a.support]
    inv = np.array([0] + [pow(v, p - 2, p) for v in range(1, p)],
                   dtype=np.int64)
    allowed = np.zeros(p ** 3, dtype=np.int64)
    for pt, w in b.entries.items():
        v = [int(c.vec()[0]) for c in pt.coords]
        allowed[(v[0] * p + v[1]) * p + v[2]] = w
    out = []
    for lead in range(3):
        total = p ** (8 - lead)
        for start in range(0, total, 1 << 18):
            n = min(1 << 18, total - start)
            m = np.zeros((n, 9), dtype=np.int64)
            m[:, lead] = 1
            rem = np.arange(start, start + n, dtype=np.int64)
            for i in range(8 - lead - 1, -1, -1):
                m[:, lead + 1 + i] = rem % p
                rem //= p
            M = m.reshape(n, 3, 3)
            det = (M[:, 0, 0] * (M[:, 1, 1] * M[:, 2, 2]
                                 - M[:, 1, 2] * M[:, 2, 1])
                   - M[:, 0, 1] * (M[:, 1, 0] * M[:, 2, 2]
                                   - M[:, 1, 2] * M[:, 2, 0])
                   + M[:, 0, 2] * (M[:, 1, 0] * M[:, 2, 1]
                                   - M[:, 1, 1] * M[:, 2, 0])) % p
            good = det != 0
            for v, w in zip(apts, aw):
                img = M @ np.array(v, dtype=np.int64) % p
                first = np.where(img[:, 0] != 0, img[:, 0],
                                 np.where(img[:, 1] != 0, img[:, 1],
                                          img[:, 2]))
                img = (img * inv[first][:, None]) % p
                code = (img[:, 0] * p + img[:, 1]) * p + img[:, 2]
                good &= allowed[code] == w
            for row in m[good]:
                out.append(proj.ProjMap(
                    ctx, [row[0:3].tolist(), row[3:6].tolist(),
                          row[6:9].tolist()]))
    return sorted(set(out), key=lambda mm: mm.sort_key())


def random_config(ctx, n_support, seed):
    r = random.Random(seed)
    pts = {}
    while len(pts) < n_support:
        v = [r.randrange(ctx.p) for _ in range(3)]
        if any(v):
            pts[proj.ProjPoint(ctx, v)] = r.choice([1, 1, 2])
    return LineConfiguration(ctx, pts)


def random_map(ctx, rng):
    while True:
        rows = [[rng.randrange(ctx.p) for _ in range(3)] for _ in range(3)]
        try:
            return proj.ProjMap(ctx, rows)
        except Exception:
            continue


class TestTransporters:
    def test_matches_exhaustive_reference(self):
        ctx = gf.prime_field(5)
        rng = random.Random(99)
        for seed in range(4):
            a = random_config(ctx, 5 + seed, 300 + seed)
            n = random_map(ctx, rng)
            b = LineConfiguration(
                ctx, {n.apply(pt): w for pt, w in a.entries.items()})
            for x, y in ((a, b), (a, a)):
                got = transporters(x, y)
                got_dual = sorted({m.line_action() for m in got},
                                  key=lambda mm: mm.sort_key())
                assert got_dual == brute_dual_maps(x, y)
                assert len(got_dual) == len(got)
                for m in got:
                    assert is_transporter(m, x, y)

    def test_groupoid_composition_and_inverse(self):
        ctx = gf.prime_field(7)
        rng = random.Random(7)
        a = random_config(ctx, 6, 77)
        n1, n2 = random_map(ctx, rng), random_map(ctx, rng)
        b = LineConfiguration(
            ctx, {n1.apply(pt): w for pt, w in a.entries.items()})
        c = LineConfiguration(
            ctx, {n2.apply(pt): w for pt, w in b.entries.items()})
        t_ab = transporters(a, b)
        t_bc = transporters(b, c)
        t_ac = set(transporters(a, c))
        assert t_ab and t_bc and t_ac
        for t in t_ab:
            assert is_transporter(t.inverse(), b, a)
            for s in t_bc:
                assert s.compose(t) in t_ac

    def test_histogram_mismatch_short_circuits(self):
        ctx = gf.prime_field(13)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        frame = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)]
        a = LineConfiguration(ctx, {q: 1 for q in frame})
        b = LineConfiguration(ctx, {q: 2 for q in frame})
        assert transporters(a, b) == []

    def test_requires_common_field(self):
        ctx = gf.prime_field(13)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        frame = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)]
        a = LineConfiguration(ctx, {q: 1 for q in frame})
        with pytest.raises(ValueError):
            transporters(a, a.embed_to(gf.field(13, 2)))

    def test_degenerate_supports_raise(self):
        ctx = gf.prime_field(13)
        pt = lambda *c: proj.ProjPoint(ctx, c)
        tiny = LineConfiguration(ctx, {pt(1, 0, 0): 1, pt(0, 1, 0): 1})
        with pytest.raises(DegenerateConfiguration):
            transporters(tiny, tiny)
        collinear = LineConfiguration(
            ctx, {pt(0, 1, v): 1 for v in range(5)})
        with pytest.raises(DegenerateConfiguration):
            transporters(collinear, collinear)

    def test_klein_like_triple_shares_one_configuration(self):
        _, _, _, a1 = klein13()
        _, _, _, a2 = analyzed("K2_13", lambda: quartic(13, KLEIN_LIKE_B))
        _, _, _, a3 = analyzed("K3_13", lambda: quartic(13, KLEIN_LIKE_C))
        assert a1 == a2 == a3
        moved = transporters(a1, a2)
        fixed = group_of("K13", a1).elements
        assert tuple(moved) == fixed

    def test_sqrt7_pair_not_equivalent(self):
        _, _, _, cp = analyzed("Cp31", lambda: sqrt7_curve(31, +1))
        _, _, _, cm = analyzed("Cm31", lambda: sqrt7_curve(31, -1))
        big = gf.compositum(cp.ctx, cm.ctx)
        assert transporters(cp.embed_to(big), cm.embed_to(big)) == []


# --------------------------------------------------------------------------


class TestGroups:
    def test_projgroup_validates_closure_and_identity(self):
        ctx = gf.prime_field(13)
        ident = proj.ProjMap.identity(ctx)
        d = proj.ProjMap(ctx, [[0, 1, 0], [12, 0, 0], [0, 0, 1]])  # order 4
        g = ProjGroup(ctx, [ident, d, d.compose(d),
                            d.compose(d).compose(d)])
        assert g.order == 4
        assert g.is_abelian()
        assert g.element_orders() == {1: 1, 2: 1, 4: 2}
        with pytest.raises(ValueError):
            ProjGroup(ctx, [ident, d])  # not closed
        with pytest.raises(ValueError):
            ProjGroup(ctx, [d, d.compose(d), d.compose(d).compose(d)])

    def test_projgroup_cap(self):
        ctx = gf.prime_field(1031)
        maps = [proj.ProjMap(ctx, [[1, a, b], [0, 1, c], [0, 0, 1]])
                for a, b, c in itertools.islice(
                    itertools.product(range(25), range(25), range(25)),
                    config.GROUP_CAP + 1)]
        with pytest.raises(GroupTooLarge):
            ProjGroup(ctx, maps)

    def test_fermat_group_order_96(self):
        c, _, _, conf = fermat17()
        g = group_of("F17", conf)
        assert g.order == 96
        assert not g.is_abelian()
        h = curve_automorphisms(c, g)
        assert h.order == 96
        assert h.elements == g.elements

    def test_klein_like_13_has_excess_config_symmetry(self):
        c, _, _, conf = klein13()
        g = group_of("K13", conf)
        assert g.order == 72
        h = curve_automorphisms(c, g)
        assert h.order == 24
        assert h.element_orders() == S4_ORDERS
        cyc = proj.ProjMap(g.ctx, [[0, 0, 1], [3, 0, 0], [0, 9, 0]])
        assert cyc in g
        assert cyc not in set(h.elements)

    def test_klein_like_7_no_excess(self):
        c, _, _, conf = klein7()
        g = group_of("K7", conf)
        assert g.order == 24
        h = curve_automorphisms(c, g)
        assert h.order == 24
        assert h.element_orders() == S4_ORDERS

    def test_sqrt7_groups_are_s3(self):
        cp, _, _, confp = analyzed("Cp31", lambda: sqrt7_curve(31, +1))
        g = group_of("Cp31", confp)
        assert g.order == 6
        assert g.element_orders() == S3_ORDERS
        h = curve_automorphisms(cp, g)
        assert h.order == 6

    def test_v_group_is_dihedral_8(self):
        c, _, _, conf = vee11()
        g = group_of("V11", conf)
        assert g.order == 8
        assert g.element_orders() == D4_ORDERS
        assert not g.is_abelian()
        h = curve_automorphisms(c, g)
        assert h.order == 8

    def test_vu_generic_group_order_8(self):
        c, _, _, conf = vu3_13()
        g = group_of("Vu3", conf)
        assert g.order == 8
        assert g.element_orders() == D4_ORDERS
        h = curve_automorphisms(c, g)
        assert h.order == 8

    def test_vu_minus_one_doubles_up(self):
        c, E, _, conf = vu12_13()
        g = group_of("Vu12", conf)
        assert g.order == 16
        assert g.element_orders() == D8_16_ORDERS
        h = curve_automorphisms(c, g)
        assert h.order == 8
        assert h.element_orders() == D4_ORDERS
        swap = proj.ProjMap(E, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        assert swap in g
        assert swap not in set(h.elements)

    def test_swapped_quartic_shares_the_configuration(self):
        c1, E, _, conf1 = vu12_13()
        c2, E2, _, conf2 = analyzed(
            "Ec313b",
            lambda: quartic(13, {(4, 0, 0): 1, (0, 4, 0): -1, (0, 0, 4): -1,
                                 (2, 2, 0): -2, (1, 1, 2): -4}))
        assert E == E2 and conf1 == conf2
        swap = proj.ProjMap(E, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        assert is_transporter(swap, conf1, conf2)
        f1 = c1.form.embed_to(E)
        f2 = c2.form.embed_to(E)
        assert mpoly.substitute(f1, swap.rows()).is_proportional(f2)

    def test_nonidentity_elements_fix_few_flex_points(self):
        for key in ("K13", "Vu3"):
            c, E, recs, conf = _CACHE[key]
            g = group_of(key, conf)
            ident = proj.ProjMap.identity(g.ctx)
            for m in g:
                if m == ident:
                    continue
                fixed = sum(1 for r in recs if m.apply(r.point) == r.point)
                assert fixed <= 5
