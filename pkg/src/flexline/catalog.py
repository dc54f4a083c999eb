"""Built-in quartics, their named symmetries, and expected analysis results.

The library ships a fixed list of plane quartics with at least eight
weight-2 inflection lines, plus a few companion forms used to witness the
characteristic-13 coincidences.  This module constructs them over a chosen
characteristic (extending the prime field only when a coefficient needs an
irrationality), exposes the historically named projective maps attached to
them with expectation flags, and records the expected counts, group orders
and signature facts that the CLI compares against.

Expectations carry an `exact` bit: exact ones must hold at the requested
characteristic and a mismatch is a failure; the rest are transcriptions of
characteristic-0 statements, where a mismatch at some small prime is a
reportable finding rather than an error.
"""

from typing import NamedTuple, Optional

from . import curve as curve_mod
from . import gf, mpoly, proj
from .errors import InadmissibleCharacteristic, SingularParameter

CURVE_IDS = ("F", "K", "K1", "K2", "K3", "Cplus", "Cminus",
             "V", "Vu", "Ec313a", "Ec313b")

# the one-parameter family: u*x^4 + y^4 - z^4 - 2x^2y^2 - 4xyz^2
_FAMILY = {(0, 4, 0): 1, (0, 0, 4): -1, (2, 2, 0): -2, (1, 1, 2): -4}

_EQUATIONS = {
    "F": {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1},
    "K": {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1,
          (2, 2, 0): 3, (2, 0, 2): 3, (0, 2, 2): 3},
    "K2": {(4, 0, 0): 1, (0, 4, 0): 3, (0, 0, 4): 9,
           (2, 2, 0): 27, (2, 0, 2): 9, (0, 2, 2): 3},
    "K3": {(4, 0, 0): 1, (0, 4, 0): 9, (0, 0, 4): 3,
           (2, 2, 0): 9, (2, 0, 2): 27, (0, 2, 2): 3},
    "V": {(4, 0, 0): 1, (0, 4, 0): -7, (0, 0, 4): -1,
          (2, 2, 0): -42, (1, 1, 2): 12},
    "Ec313a": {**_FAMILY, (4, 0, 0): -1},
    "Ec313b": {(4, 0, 0): 1, (0, 4, 0): -1, (0, 0, 4): -1,
               (2, 2, 0): -2, (1, 1, 2): -4},
}
_EQUATIONS["K1"] = _EQUATIONS["K"]


class CurveSpec(NamedTuple):
    id: str
    p: int
    u: Optional[int] = None

    def label(self) -> str:
        if self.id == "Vu":
            return f"Vu:{self.u}"
        return self.id


def _norm_u(spec: CurveSpec) -> int:
    return spec.u % spec.p


def validate(spec: CurveSpec) -> None:
    """Check the itemized smoothness conditions; raise on violation."""
    if spec.id not in CURVE_IDS:
        raise ValueError(f"unknown curve id {spec.id!r}")
    if spec.p in (2, 3):
        raise InadmissibleCharacteristic(
            "characteristics 2 and 3 are excluded throughout")
    if spec.id == "Vu":
        if spec.u is None:
            raise ValueError("the Vu family needs the parameter u")
        if _norm_u(spec) in (0, 1):
            raise SingularParameter(
                f"u = {spec.u}: the family member is singular")
    elif spec.u is not None:
        raise ValueError(f"{spec.id} takes no parameter u")
    if spec.id in ("K", "K1") and spec.p == 5:
        raise InadmissibleCharacteristic(
            f"{spec.id} is singular at characteristic 5")
    if spec.id in ("Cplus", "Cminus") and spec.p == 7:
        raise InadmissibleCharacteristic(
            f"{spec.id} degenerates at characteristic 7")
    if spec.id == "V" and spec.p == 7:
        raise InadmissibleCharacteristic("V is singular at characteristic 7")


def is_admissible(spec: CurveSpec) -> bool:
    try:
        validate(spec)
    except (InadmissibleCharacteristic, SingularParameter, ValueError):
        return False
    return True


def _sqrt7_coeffs(ctx, r):
    """The sign-paired quartic; r is the chosen square root of 7."""
    return {
        (0, 0, 4): ctx.el(21) + ctx.el(8) * r,
        (1, 1, 2): ctx.el(-6) * (ctx.el(2) + r),
        (3, 0, 1): ctx.el(3) + r,
        (0, 3, 1): ctx.el(3) + r,
        (2, 2, 0): ctx.el(-3),
    }


def build(spec: CurveSpec):
    """Construct the curve over the smallest field containing its
    coefficients.  Returns (PlaneQuartic, base field ctx).  Raises
    InadmissibleCharacteristic when the result is singular."""
    validate(spec)
    base = gf.prime_field(spec.p)
    if spec.id in ("Cplus", "Cminus"):
        ctx, r = gf.find_nth_root(base, 7, 2)
        if spec.id == "Cminus":
            r = -r
        coeffs = _sqrt7_coeffs(ctx, r)
    else:
        ctx = base
        if spec.id == "Vu":
            coeffs = {**_FAMILY, (4, 0, 0): _norm_u(spec)}
        else:
            coeffs = _EQUATIONS[spec.id]
        coeffs = {m: ctx.el(c) for m, c in coeffs.items()}
    form = mpoly.HomPoly(ctx, 4, coeffs)
    q = curve_mod.PlaneQuartic(form, spec.label())
    if not curve_mod.is_smooth(q):
        raise InadmissibleCharacteristic(
            f"{spec.label()} is singular at characteristic {spec.p}")
    return q, ctx


class NamedMap(NamedTuple):
    name: str
    map: proj.ProjMap
    curve_aut: bool
    config_aut: bool


def _rho_i(base):
    ctx, i = gf.find_nth_root(base, -1, 2)
    zero, one = ctx.zero, ctx.one
    m = proj.ProjMap(ctx, [[i, zero, zero], [zero, -i, zero],
                           [zero, zero, one]])
    return NamedMap("rho_i", m, True, True)


def _sigma_s(base, fourth_power):
    ctx, s = gf.find_nth_root(base, fourth_power, 4)
    zero, one = ctx.zero, ctx.one
    m = proj.ProjMap(ctx, [[zero, s.inv(), zero], [s, zero, zero],
                           [zero, zero, one]])
    return NamedMap("sigma_s", m, True, True)


def named_maps(spec: CurveSpec):
    """The distinguished projective maps attached to the curve, each flagged
    with whether it is expected to fix the curve and/or its configuration."""
    validate(spec)
    base = gf.prime_field(spec.p)
    out = []
    if spec.id in ("K", "K1", "K2", "K3"):
        out.append(NamedMap(
            "swap_xy",
            proj.ProjMap(base, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
            True, True))
        out.append(NamedMap(
            "cycle_xyz",
            proj.ProjMap(base, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
            True, True))
        out.append(NamedMap(
            "negate_x",
            proj.ProjMap(base, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]),
            True, True))
        if spec.p == 13:
            third = pow(3, spec.p - 2, spec.p)
            out.append(NamedMap(
                "gamma13",
                proj.ProjMap(base, [[0, 0, 1], [3, 0, 0], [0, third, 0]]),
                False, True))
        if spec.p == 7:
            ctx, i = gf.find_nth_root(base, -1, 2)
            half = ctx.el(2).inv()
            zero = ctx.zero
            out.append(NamedMap(
                "gamma7",
                proj.ProjMap(ctx, [[zero, zero, half], [zero, i, zero],
                                   [ctx.el(-2), zero, zero]]),
                False, False))
    elif spec.id in ("Cplus", "Cminus"):
        base7, _ = gf.find_nth_root(base, 7, 2)
        ctx, zeta = gf.find_nth_root(base7, 1, 3, primitive=True)
        zero, one = ctx.zero, ctx.one
        out.append(NamedMap(
            "zeta_scale",
            proj.ProjMap(ctx, [[zeta, zero, zero], [zero, zeta.inv(), zero],
                               [zero, zero, one]]),
            True, True))
        out.append(NamedMap(
            "swap_xy",
            proj.ProjMap(base7, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
            True, True))
    elif spec.id == "V":
        out.append(_rho_i(base))
        ctx, alpha = gf.find_nth_root(base, -7, 4)
        zero, one = ctx.zero, ctx.one
        # the anti-diagonal symmetry; proportionality forces alpha^4 = -7
        out.append(NamedMap(
            "sigma_alpha",
            proj.ProjMap(ctx, [[zero, alpha, zero],
                               [alpha.inv(), zero, zero],
                               [zero, zero, one]]),
            True, True))
    elif spec.id == "Vu":
        out.append(_rho_i(base))
        out.append(_sigma_s(base, _norm_u(spec)))
    elif spec.id in ("Ec313a", "Ec313b"):
        out.append(_rho_i(base))
        out.append(_sigma_s(base, -1))
    return out


class Expectation(NamedTuple):
    name: str
    value: object
    exact: bool


class ExpectedProfile(NamedTuple):
    spec: CurveSpec
    expectations: tuple

    def get(self, name):
        for e in self.expectations:
            if e.name == name:
                return e
        return None


_HYPER_CONIC = {(1, 1, 0): 1, (0, 0, 2): 1}


def _simple_conic(u):
    return {(1, 1, 0): 32, (0, 0, 2): 27 * u + 5}


def expected_profile(spec: CurveSpec) -> ExpectedProfile:
    validate(spec)
    p = spec.p
    e = [Expectation("total_weight", 24, True)]
    if spec.id == "F":
        e.append(Expectation("counts", (12, 0), True))
        e.append(Expectation("config_group_order", 96, False))
        e.append(Expectation("curve_group_order", 96, False))
        e.append(Expectation("line_cover", 3, False))
    elif spec.id in ("K", "K1", "K2", "K3"):
        e.append(Expectation("counts", (12, 0), False))
        if p == 13:
            e.append(Expectation("config_group_order", 72, True))
            e.append(Expectation("curve_group_order", 24, True))
        else:
            e.append(Expectation("config_group_order", 24, p == 7))
            e.append(Expectation("curve_group_order", 24, p == 7))
        e.append(Expectation("line_cover", 6, False))
    elif spec.id in ("Cplus", "Cminus"):
        e.append(Expectation("counts", (9, 6), False))
        e.append(Expectation("config_group_order", 6, False))
        e.append(Expectation("curve_group_order", 6, False))
    elif spec.id == "V":
        e.append(Expectation("counts", (8, 8), False))
        e.append(Expectation("config_group_order", 8, False))
        e.append(Expectation("curve_group_order", 8, False))
        e.append(Expectation("hyper_conic_rank", 6, False))
        e.append(Expectation("simple_conic", _HYPER_CONIC, False))
    else:
        u = -1 if spec.id in ("Ec313a", "Ec313b") else _norm_u(spec)
        e.append(Expectation("counts", (8, 8), False))
        doubled = p == 13 and u % p == p - 1
        if doubled:
            e.append(Expectation("config_group_order", 16, True))
            e.append(Expectation("curve_group_order", 8, True))
        else:
            e.append(Expectation("config_group_order", 8, False))
            e.append(Expectation("curve_group_order", 8, False))
        e.append(Expectation("hyper_conic", _HYPER_CONIC, False))
        e.append(Expectation("simple_conic", _simple_conic(u), False))
    return ExpectedProfile(spec, tuple(e))


def family_parameters(p: int, limit: int = 36):
    """The u sweep for one characteristic: every residue outside {0,1} for
    p <= 37, else the first `limit` of them."""
    us = [u for u in range(2, p)]
    if p > 37:
        us = us[:limit]
    return us


def roster(p: int):
    """The curve list cmd_theorem compares at characteristic p.  The
    companion forms join only at p = 13, where the coincidences they witness
    live; elsewhere they are plain equivalent copies that would show up as
    off-diagonal matches at every prime without saying anything new."""
    specs = [CurveSpec("F", p)]
    if p == 13:
        specs += [CurveSpec("K1", p), CurveSpec("K2", p), CurveSpec("K3", p)]
    elif p != 5:
        specs.append(CurveSpec("K1", p))
    if p != 7:
        specs += [CurveSpec("Cplus", p), CurveSpec("Cminus", p)]
        specs.append(CurveSpec("V", p))
    specs += [CurveSpec("Vu", p, u) for u in family_parameters(p)]
    if p == 13:
        specs.append(CurveSpec("Ec313b", p))
    return specs
