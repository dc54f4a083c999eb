"""Plane quartic analysis: smoothness, tangents, contact orders, flexes.

The inflection scheme is computed by eliminating z from the curve and its
hessian: the resultant is a degree-24 binary form whose root multiplicities
are, fiber by fiber, the sums of the local intersection numbers of the two
curves.  Each fiber is recovered exactly from the gcd of the specialized
polynomials, over an extension large enough to split every fiber, so merged
projections need no retry.  Weights come from tangent contact orders and are
cross-checked against the resultant multiplicities.
"""

from __future__ import annotations

import hashlib
import math
import random

from . import gf, mpoly, proj, upoly
from .errors import (
    EliminationDegenerate,
    HessianVanishes,
    LeadingCoefficientVanishes,
    LineIsComponent,
    SingularMatrix,
    SingularPoint,
    WildFlexBehavior,
)
from .gf import FieldCtx, FieldElement
from .mpoly import HomPoly
from .proj import ProjMap, ProjPoint

# absolute degree over F_p allowed for splitting fields in the pipeline
SCHEME_DEGREE_CAP = 48
MAX_ATTEMPTS = 8


class PlaneQuartic:
    """A nonzero degree-4 form, optionally tagged with a catalog label."""

    __slots__ = ("form", "label")

    def __init__(self, form: HomPoly, label: str | None = None):
        if form.degree != 4:
            raise ValueError(f"quartic expected, got degree {form.degree}")
        if form.is_zero:
            raise ValueError("the zero form is not a curve")
        self.form = form
        self.label = label

    @property
    def ctx(self) -> FieldCtx:
        return self.form.ctx

    def embed_to(self, dst: FieldCtx) -> "PlaneQuartic":
        return PlaneQuartic(self.form.embed_to(dst), self.label)

    def __repr__(self):
        tag = self.label or "quartic"
        return f"PlaneQuartic({tag} over {self.ctx.spec_string})"


class FlexRecord:
    """One inflection point with its line, contact order and weight."""

    __slots__ = ("point", "line", "weight", "contact")

    def __init__(self, point: ProjPoint, line: ProjPoint, weight: int,
                 contact: int):
        self.point = point
        self.line = line
        self.weight = weight
        self.contact = contact

    def __eq__(self, other):
        if not isinstance(other, FlexRecord):
            return NotImplemented
        return (self.point == other.point and self.line == other.line
                and self.weight == other.weight
                and self.contact == other.contact)

    def __hash__(self):
        return hash((self.point, self.line, self.weight, self.contact))

    def __repr__(self):
        kind = "hyper" if self.contact == 4 else "simple"
        return f"FlexRecord({kind}, {self.point}, line {self.line})"


def _seeded_rng(curve: PlaneQuartic, attempt: int,
                seed_override: int | None) -> random.Random:
    ctx = curve.ctx
    h = hashlib.sha256()
    h.update(f"{ctx.p},{ctx.k},{tuple(ctx.mod_np.ravel().tolist())}".encode())
    for mono in curve.form.monomials():
        h.update(repr((mono, curve.form.coeff(mono).vec())).encode())
    h.update(f"attempt={attempt},override={seed_override}".encode())
    return random.Random(int.from_bytes(h.digest()[:8], "big"))


def _attempt_map(curve: PlaneQuartic, attempt: int,
                 seed_override: int | None) -> ProjMap:
    # attempt 0 keeps the given coordinates; catalog equations already have
    # a usable z-lead, and identity keeps splitting fields minimal
    ctx = curve.ctx
    if attempt == 0 and seed_override is None:
        return ProjMap.identity(ctx)
    rng = _seeded_rng(curve, attempt, seed_override)
    q = ctx.order
    while True:
        rows = [[ctx.el(rng.randrange(q)) for _ in range(3)]
                for _ in range(3)]
        try:
            return ProjMap(ctx, rows)
        except SingularMatrix:
            continue


def is_smooth(curve: PlaneQuartic, seed_override: int | None = None) -> bool:
    """True iff the three partials have no common projective zero over the
    algebraic closure.

    After a coordinate change giving the form a z^4 term and an x*z^3 term,
    the x-partial has constant z-lead, so the resultant with the y-partial
    is exact; a resultant root is a genuine singular candidate iff the three
    specialized partials share a nonconstant gcd.  An identically zero
    resultant means the first two partials share a curve, which necessarily
    meets the third partial's zero locus.
    """
    for attempt in range(MAX_ATTEMPTS):
        m = _attempt_map(curve, attempt, seed_override)
        G = mpoly.substitute(curve.form, m.rows())
        if G.coeff((0, 0, 4)).is_zero or G.coeff((1, 0, 3)).is_zero:
            continue
        gx, gy, gz = (G.partial(i) for i in range(3))
        if gy.is_zero:
            return False  # no y anywhere: cone with vertex [0,1,0]
        res = mpoly.resultant_z(gx, gy)
        if res.is_zero:
            return False
        E, roots = res.projective_roots(cap=SCHEME_DEGREE_CAP)
        for (s, t), _ in roots:
            f1 = gx.specialize_xy(s, t)
            f2 = gy.specialize_xy(s, t)
            f3 = gz.specialize_xy(s, t)
            g = upoly.gcd(upoly.gcd(f1, f2), f3)
            if g.is_zero or g.degree >= 1:
                return False
        return True
    raise EliminationDegenerate(
        f"no usable coordinate change in {MAX_ATTEMPTS} attempts")


def tangent_line(curve: PlaneQuartic, point: ProjPoint) -> ProjPoint:
    """Dual coordinates of the tangent at a smooth curve point."""
    F = curve.form
    if point.ctx != F.ctx:
        raise ValueError("point and curve live over different fields")
    if not F.evaluate(point.coords).is_zero:
        raise ValueError("point does not lie on the curve")
    grad = tuple(F.partial(i).evaluate(point.coords) for i in range(3))
    if all(g.is_zero for g in grad):
        raise SingularPoint(f"vanishing gradient at {point}")
    return ProjPoint(F.ctx, grad)


def _companion_on_line(line: ProjPoint, point: ProjPoint) -> ProjPoint:
    ctx = line.ctx
    a, b, c = line.coords
    zero, one = ctx.zero, ctx.one
    if not a.is_zero:
        v1, v2 = (-b, a, zero), (-c, zero, a)
    elif not b.is_zero:
        v1, v2 = (one, zero, zero), (zero, -c, b)
    else:
        v1, v2 = (one, zero, zero), (zero, one, zero)
    cand = ProjPoint(ctx, v1)
    return cand if cand != point else ProjPoint(ctx, v2)


def contact_order(curve: PlaneQuartic, line: ProjPoint,
                  point: ProjPoint) -> int:
    """Order of vanishing of the quartic along the line at the point."""
    F = curve.form
    if point.ctx != F.ctx or line.ctx != F.ctx:
        raise ValueError("line, point and curve must share one field")
    if not proj.incident(point, line):
        raise ValueError("point does not lie on the line")
    if not F.evaluate(point.coords).is_zero:
        raise ValueError("point does not lie on the curve")
    q = _companion_on_line(line, point)
    r = F.restrict_to_line(point.coords, q.coords)
    if r.is_zero:
        raise LineIsComponent(f"{line} is a component of the quartic")
    for i, cf in enumerate(r.coeffs()):
        if not cf.is_zero:
            return i
    raise AssertionError("nonzero restriction without nonzero coefficient")


def _upoly_embed(f: upoly.UPoly, dst: FieldCtx) -> upoly.UPoly:
    return upoly.UPoly(dst, [gf.embed(f.ctx, dst, c) for c in f.coeffs()])


def inflection_scheme(
    curve: PlaneQuartic,
    cap: int = SCHEME_DEGREE_CAP,
    seed_override: int | None = None,
) -> tuple[FieldCtx, list[FlexRecord]]:
    """All inflection points over a splitting extension, with weights.

    Returns (field, records) where records are sorted by point and the
    weights sum to 24.  Raises HessianVanishes when the hessian is the zero
    form, EliminationDegenerate when no projection is usable, and
    WildFlexBehavior when a fiber's contact weights disagree with the
    resultant multiplicity.
    """
    F = curve.form
    ctx = F.ctx
    H = mpoly.hessian(F)
    if H.is_zero:
        raise HessianVanishes("hessian of the quartic is identically zero")
    for attempt in range(MAX_ATTEMPTS):
        m = _attempt_map(curve, attempt, seed_override)
        G = mpoly.substitute(F, m.rows())
        if G.coeff((0, 0, 4)).is_zero:
            continue  # projection center lies on the curve
        HG = mpoly.hessian(G)
        res = mpoly.resultant_z(G, HG)
        if res.is_zero:
            raise EliminationDegenerate(
                "curve and hessian share a component")
        E, roots = res.projective_roots(cap=cap)
        # fiber gcds over E; record the extension needed to split them all
        fibers = []
        need = 1
        for (s, t), mult in roots:
            f1 = G.specialize_xy(s, t)
            f2 = HG.specialize_xy(s, t)
            g = upoly.gcd(f1, f2)
            assert not g.is_zero and g.degree >= 1
            for d in upoly.factor_degrees(g):
                need = math.lcm(need, d)
            fibers.append(((s, t), mult, g))
        if E.k * need > cap:
            raise gf.DegreeOverflow(
                f"scheme needs degree {E.k * need} over F_{ctx.p}, "
                f"cap is {cap}")
        E2 = E if need == 1 else gf.field(ctx.p, E.k * need)
        FE = F.embed_to(E2)
        CE = PlaneQuartic(FE, curve.label)
        mE = m.embed_to(E2)
        records: list[FlexRecord] = []
        for (s, t), mult, g in fibers:
            gE = _upoly_embed(g, E2) if E2 is not E else g
            sE = gf.embed(E, E2, s)
            tE = gf.embed(E, E2, t)
            fiber_weight = 0
            for z0, _ in upoly.roots_with_multiplicity(gE):
                P = mE.apply(ProjPoint(E2, (sE, tE, z0)))
                line = tangent_line(CE, P)
                c = contact_order(CE, line, P)
                assert c <= 4, "contact beyond the degree bound"
                if c < 3:
                    raise WildFlexBehavior(
                        f"hessian point {P} has contact {c}")
                fiber_weight += c - 2
                records.append(FlexRecord(P, line, c - 2, c))
            if fiber_weight != mult:
                raise WildFlexBehavior(
                    f"fiber over ({s}:{t}) carries weight {fiber_weight}, "
                    f"resultant multiplicity is {mult}")
        assert sum(r.weight for r in records) == 24
        records.sort(key=lambda r: r.point.sort_key())
        return E2, records
    raise EliminationDegenerate(
        f"no usable projection in {MAX_ATTEMPTS} attempts")
