"""Homogeneous ternary forms over a FieldCtx, plus binary forms and the
z-resultant used to eliminate a variable exactly.

HomPoly is a sparse dict of monomials (a, b, c) -> coefficient with
a + b + c equal to the declared degree.  The z-resultant is computed by
fraction-free Bareiss elimination on the Sylvester matrix whose entries are
binary forms in (x, y); every division in that elimination is exact, so no
fractions and no floating point ever appear.  Both inputs must actually
attain their z-degree (the monomial z^degree must be present): that pins the
leading Sylvester entries to nonzero constants and keeps specialization at
any point of the line at infinity compatible with the resultant.

Binary forms are stored dehomogenized: index i of the coefficient array is
the monomial x^(d-i) y^i, so finite projective roots are (1 : u) for roots u
of the array read as a univariate polynomial, and (0 : 1) absorbs the degree
drop.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

import numpy as np

from . import gf, upoly
from .errors import LeadingCoefficientVanishes, SingularMatrix
from .gf import FieldCtx, FieldElement
from .upoly import UPoly, _pv_divmod, _pv_monic, _pv_mul, _pv_sub, _el_inv, _trim

_INT64 = np.int64

Monomial = tuple[int, int, int]
_VARS = ("x", "y", "z")


class HomPoly:
    """Immutable homogeneous polynomial in x, y, z of a fixed degree."""

    __slots__ = ("ctx", "degree", "coeffs")

    def __init__(self, ctx: FieldCtx, degree: int, coeffs: Mapping[Monomial, object]):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean: dict[Monomial, FieldElement] = {}
        for mono, val in coeffs.items():
            a, b, c = (int(e) for e in mono)
            if a < 0 or b < 0 or c < 0 or a + b + c != degree:
                raise ValueError(f"monomial {mono} does not have degree {degree}")
            v = ctx.el(val)
            if not v.is_zero:
                clean[(a, b, c)] = v
        self.ctx = ctx
        self.degree = degree
        self.coeffs = clean

    # -- data access --

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, mono: Monomial) -> FieldElement:
        return self.coeffs.get(tuple(mono), self.ctx.zero)

    def monomials(self) -> list[Monomial]:
        return sorted(self.coeffs)

    def z_degree(self) -> int:
        return max((m[2] for m in self.coeffs), default=-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomPoly)
            and self.ctx == other.ctx
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.degree, tuple(sorted(
            (m, v.coeffs) for m, v in self.coeffs.items()))))

    def __repr__(self):
        return format_poly(self)

    # -- ring operations --

    def _binary(self, other: "HomPoly", sign: int) -> "HomPoly":
        if self.ctx != other.ctx or self.degree != other.degree:
            raise ValueError("operands differ in field or degree")
        out = dict(self.coeffs)
        for m, v in other.coeffs.items():
            w = out.get(m, self.ctx.zero) + (v if sign > 0 else -v)
            if w.is_zero:
                out.pop(m, None)
            else:
                out[m] = w
        return HomPoly(self.ctx, self.degree, out)

    def __add__(self, other: "HomPoly") -> "HomPoly":
        return self._binary(other, +1)

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self._binary(other, -1)

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.ctx, self.degree, {m: -v for m, v in self.coeffs.items()})

    def __mul__(self, other) -> "HomPoly":
        if isinstance(other, HomPoly):
            if self.ctx != other.ctx:
                raise ValueError("operands over different fields")
            out: dict[Monomial, FieldElement] = {}
            for (a1, b1, c1), v1 in self.coeffs.items():
                for (a2, b2, c2), v2 in other.coeffs.items():
                    m = (a1 + a2, b1 + b2, c1 + c2)
                    w = out.get(m, self.ctx.zero) + v1 * v2
                    if w.is_zero:
                        out.pop(m, None)
                    else:
                        out[m] = w
            return HomPoly(self.ctx, self.degree + other.degree, out)
        s = self.ctx.el(other)
        return HomPoly(self.ctx, self.degree, {m: v * s for m, v in self.coeffs.items()})

    __rmul__ = __mul__

    def pow(self, e: int) -> "HomPoly":
        out = HomPoly(self.ctx, 0, {(0, 0, 0): self.ctx.one})
        for _ in range(e):
            out = out * self
        return out

    # -- calculus --

    def partial(self, var: int) -> "HomPoly":
        """Formal partial derivative; var is 0, 1 or 2 for x, y, z."""
        if self.degree == 0:
            return HomPoly(self.ctx, 0, {})
        out = {}
        for m, v in self.coeffs.items():
            e = m[var]
            if e == 0:
                continue
            m2 = list(m)
            m2[var] = e - 1
            out[tuple(m2)] = v * e
        return HomPoly(self.ctx, self.degree - 1, out)

    # -- evaluation and restriction --

    def evaluate(self, point: Iterable) -> FieldElement:
        px, py, pz = (self.ctx.el(c) for c in point)
        acc = self.ctx.zero
        for (a, b, c), v in self.coeffs.items():
            acc = acc + v * px ** a * py ** b * pz ** c
        return acc

    def specialize_xy(self, s: FieldElement, t: FieldElement) -> UPoly:
        """Substitute x = s, y = t; the result is a polynomial in z over the
        field of s and t (which must contain this polynomial's field)."""
        dst = s.ctx
        if t.ctx != dst:
            raise ValueError("specialization values over different fields")
        rows = [dst.zero] * (self.degree + 1)
        for (a, b, c), v in self.coeffs.items():
            rows[c] = rows[c] + gf.embed(self.ctx, dst, v) * s ** a * t ** b
        return UPoly(dst, rows)

    def restrict_to_line(self, p: tuple, q: tuple) -> UPoly:
        """The univariate polynomial u -> F(P + uQ) for points P, Q given as
        coordinate triples over this polynomial's field."""
        ctx = self.ctx
        pc = [ctx.el(c) for c in p]
        qc = [ctx.el(c) for c in q]
        lines = [UPoly(ctx, [pc[i], qc[i]]) for i in range(3)]
        acc = UPoly(ctx, [])
        for (a, b, c), v in self.coeffs.items():
            term = UPoly(ctx, [v])
            for e, line in ((a, lines[0]), (b, lines[1]), (c, lines[2])):
                for _ in range(e):
                    term = term * line
            acc = acc + term
        return acc

    def embed_to(self, dst: FieldCtx) -> "HomPoly":
        return HomPoly(
            dst, self.degree,
            {m: gf.embed(self.ctx, dst, v) for m, v in self.coeffs.items()},
        )

    def normalized(self) -> "HomPoly":
        """Scale so the lexicographically smallest monomial present has
        coefficient one; canonical representative up to scalars."""
        if not self.coeffs:
            return self
        lead = self.coeffs[min(self.coeffs)]
        inv = lead.inv()
        return HomPoly(self.ctx, self.degree,
                       {m: v * inv for m, v in self.coeffs.items()})

    def is_proportional(self, other: "HomPoly") -> bool:
        if self.ctx != other.ctx or self.degree != other.degree:
            return False
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.normalized().coeffs == other.normalized().coeffs


# --------------------------------------------------------------------------
# coordinate changes

def _mat_rows(ctx: FieldCtx, rows) -> list[list[FieldElement]]:
    out = [[ctx.el(v) for v in row] for row in rows]
    if len(out) != 3 or any(len(r) != 3 for r in out):
        raise ValueError("expected a 3x3 matrix")
    return out


def _mat_det(m: list[list[FieldElement]]) -> FieldElement:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _mat_adjugate(m: list[list[FieldElement]]) -> list[list[FieldElement]]:
    def co(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
        return minor if (i + j) % 2 == 0 else -minor

    return [[co(j, i) for j in range(3)] for i in range(3)]


def substitute(f: HomPoly, rows) -> HomPoly:
    """f composed with the linear map given by matrix rows: the polynomial
    (x, y, z) -> f(M (x, y, z))."""
    ctx = f.ctx
    m = _mat_rows(ctx, rows)
    images = [HomPoly(ctx, 1, {(1, 0, 0): m[i][0], (0, 1, 0): m[i][1],
                               (0, 0, 1): m[i][2]}) for i in range(3)]
    pow_cache = []
    for img in images:
        powers = [HomPoly(ctx, 0, {(0, 0, 0): ctx.one})]
        for _ in range(f.degree):
            powers.append(powers[-1] * img)
        pow_cache.append(powers)
    acc = HomPoly(ctx, f.degree, {})
    for (a, b, c), v in f.coeffs.items():
        term = pow_cache[0][a] * pow_cache[1][b] * pow_cache[2][c]
        acc = acc + term * v
    return acc


def transform(f: HomPoly, rows) -> HomPoly:
    """Push f forward along the map: the zero set of the result is the image
    under M of the zero set of f.  Equals substitute(f, M^-1)."""
    ctx = f.ctx
    m = _mat_rows(ctx, rows)
    det = _mat_det(m)
    if det.is_zero:
        raise SingularMatrix("coordinate change has determinant zero")
    inv_det = det.inv()
    adj = _mat_adjugate(m)
    inv = [[adj[i][j] * inv_det for j in range(3)] for i in range(3)]
    return substitute(f, inv)


def hessian(f: HomPoly) -> HomPoly:
    """Determinant of the matrix of second partials; degree 3(d - 2)."""
    if f.degree < 2:
        return HomPoly(f.ctx, 0, {})
    h = [[f.partial(i).partial(j) for j in range(3)] for i in range(3)]
    return (
        h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
        - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0])
    )


# --------------------------------------------------------------------------
# binary forms and the z-resultant

class BinaryForm:
    """Homogeneous form in (x, y) of a declared degree.

    coeff index i is the monomial x^(degree-i) y^i; the array may be shorter
    than degree+1 only through explicit zeros, it is always stored padded.
    """

    __slots__ = ("ctx", "degree", "arr")

    def __init__(self, ctx: FieldCtx, degree: int, coeffs):
        self.ctx = ctx
        self.degree = degree
        rows = [ctx.el(c).coeffs for c in coeffs]
        if len(rows) != degree + 1:
            raise ValueError("need degree + 1 coefficients")
        self.arr = np.array(rows, dtype=_INT64).reshape(degree + 1, ctx.k)

    @classmethod
    def _from_arr(cls, ctx: FieldCtx, degree: int, arr: np.ndarray) -> "BinaryForm":
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.degree = degree
        padded = np.zeros((degree + 1, ctx.k), dtype=_INT64)
        padded[: len(arr)] = arr
        obj.arr = padded
        return obj

    @property
    def is_zero(self) -> bool:
        return not self.arr.any()

    def coeff(self, i: int) -> FieldElement:
        return FieldElement(self.ctx, tuple(int(v) for v in self.arr[i]))

    def evaluate(self, s: FieldElement, t: FieldElement) -> FieldElement:
        acc = s.ctx.zero
        for i in range(self.degree + 1):
            acc = acc + gf.embed(self.ctx, s.ctx, self.coeff(i)) \
                * s ** (self.degree - i) * t ** i
        return acc

    def dehomogenized(self) -> UPoly:
        """The univariate polynomial u -> B(1, u)."""
        return UPoly.from_arr(self.ctx, self.arr.copy())

    def projective_roots(self, cap: int | None = None):
        """Roots on the projective line over the splitting field.

        Returns (field, [((s, t), multiplicity), ...]) where each root is a
        coordinate pair, (1, u) for finite roots and (0, 1) at infinity; the
        multiplicity at infinity is the drop from the declared degree.
        Multiplicities always sum to the declared degree.
        """
        if self.is_zero:
            raise ValueError("zero form vanishes on the whole line")
        f = self.dehomogenized()
        dst, rts = upoly.splitting_roots(f, cap=cap)
        out = []
        inf_mult = self.degree - f.degree
        if inf_mult > 0:
            out.append(((dst.zero, dst.one), inf_mult))
        for r, m in rts:
            out.append(((dst.one, r), m))
        assert sum(m for _, m in out) == self.degree
        return dst, out

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.ctx == other.ctx
            and self.degree == other.degree
            and bool((self.arr == other.arr).all())
        )

    def __repr__(self):
        terms = []
        for i in range(self.degree + 1):
            c = self.coeff(i)
            if c.is_zero:
                continue
            parts = [repr(c)]
            if self.degree - i:
                parts.append(f"x^{self.degree - i}" if self.degree - i > 1 else "x")
            if i:
                parts.append(f"y^{i}" if i > 1 else "y")
            terms.append("*".join(parts))
        return " + ".join(terms) if terms else "0"


def _divexact(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a / b in F_q[t], known exact; b nonzero."""
    if len(a) == 0:
        return a
    lead = b[-1]
    monic = lead[0] == 1 and not lead[1:].any()
    bm = b if monic else _pv_monic(ctx, b)
    q, r = _pv_divmod(ctx, a, bm)
    assert len(r) == 0, "inexact division inside fraction-free elimination"
    if not monic:
        q = _pv_mul(ctx, q, _el_inv(ctx, lead).reshape(1, -1))
    return q


def resultant_z(f: HomPoly, g: HomPoly) -> BinaryForm:
    """Resultant of f and g with respect to z, a binary form in (x, y) of
    degree deg(f) * deg(g).

    f must contain the monomial z^deg(f) with a nonzero coefficient
    (LeadingCoefficientVanishes otherwise); its z-leading coefficient is then
    a nonzero constant, which makes the Sylvester determinant taken at g's
    actual z-degree a nonzero constant multiple of the resultant of the
    forms, whatever g's z-degree is.  Roots and multiplicities are therefore
    exact.  Identically zero output means f and g share a common component.
    """
    if f.ctx != g.ctx:
        raise ValueError("resultant of forms over different fields")
    ctx = f.ctx
    df, dg = f.degree, g.degree
    if f.coeff((0, 0, df)).is_zero:
        raise LeadingCoefficientVanishes(
            f"form of degree {df} has no z^{df} monomial"
        )
    if g.is_zero:
        raise ValueError("resultant against the zero form")
    out_deg = df * dg

    def zcoeff_arr(h: HomPoly, c: int) -> np.ndarray:
        # binary form coefficient of z^c, dehomogenized (index i = y^i)
        m = h.degree - c
        arr = np.zeros((m + 1, ctx.k), dtype=_INT64)
        for i in range(m + 1):
            v = h.coeffs.get((m - i, i, c))
            if v is not None:
                arr[i] = v.coeffs
        return _trim(arr)

    nz = g.z_degree()
    if df == 0:
        return BinaryForm(ctx, 0, [ctx.one])
    if nz <= 0:
        # g is z-free: resultant is g^deg(f) as a binary form
        acc = np.ones((1, ctx.k), dtype=_INT64)
        acc[0, 1:] = 0
        base = zcoeff_arr(g, 0)
        for _ in range(df):
            acc = _pv_mul(ctx, acc, base)
        return BinaryForm._from_arr(ctx, out_deg, acc)

    n = df + nz
    fRows = [zcoeff_arr(f, df - j) for j in range(df + 1)]
    gRows = [zcoeff_arr(g, nz - j) for j in range(nz + 1)]
    mat: list[list[np.ndarray]] = []
    zero = np.zeros((0, ctx.k), dtype=_INT64)
    for i in range(nz):
        mat.append([zero] * i + fRows + [zero] * (nz - 1 - i))
    for i in range(df):
        mat.append([zero] * i + gRows + [zero] * (df - 1 - i))

    sign = 1
    prev = np.ones((1, ctx.k), dtype=_INT64)
    prev[0, 1:] = 0
    for r in range(n - 1):
        if len(mat[r][r]) == 0:
            swap = next((i for i in range(r + 1, n) if len(mat[i][r])), None)
            if swap is None:
                return BinaryForm(ctx, out_deg, [ctx.zero] * (out_deg + 1))
            mat[r], mat[swap] = mat[swap], mat[r]
            sign = -sign
        piv = mat[r][r]
        for i in range(r + 1, n):
            row_i = mat[i]
            head = row_i[r]
            for j in range(r + 1, n):
                num = _pv_sub(ctx.p, _pv_mul(ctx, piv, row_i[j]),
                              _pv_mul(ctx, head, mat[r][j]))
                row_i[j] = _divexact(ctx, num, prev)
            row_i[r] = zero
        prev = piv
    det = mat[n - 1][n - 1]
    if sign < 0:
        det = (-det) % ctx.p
    return BinaryForm._from_arr(ctx, out_deg, det)


# --------------------------------------------------------------------------
# text form

_TERM_RE = re.compile(
    r"^(?P<coeff>\(-?\d+(?:,-?\d+)*\)|\d+)?"
    r"(?P<monos>(?:\*?[xyz](?:\^\d+)?)*)$"
)


def _split_terms(text: str) -> list[str]:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    terms, buf, depth = [], "", 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and buf:
            terms.append(buf)
            buf = ch if ch == "-" else ""
        else:
            buf += ch
    terms.append(buf)
    return [t for t in terms if t not in ("", "+")]


def parse_poly(ctx: FieldCtx, text: str, degree: int | None = None) -> HomPoly:
    """Parse '3*x^2*y^2 + (1,5)*z^4 - x*y*z^2' style text.  All terms must
    share one total degree; an explicit degree pins the zero polynomial."""
    coeffs: dict[Monomial, FieldElement] = {}
    seen_deg = None
    if text.strip() == "0":
        if degree is None:
            raise ValueError("zero polynomial needs an explicit degree")
        return HomPoly(ctx, degree, {})
    for term in _split_terms(text):
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        m = _TERM_RE.match(term)
        if not m or (not m.group("coeff") and not m.group("monos")):
            raise ValueError(f"cannot parse term {term!r}")
        raw = m.group("coeff")
        if not raw:
            val = ctx.one
        elif raw.startswith("("):
            val = ctx.el(tuple(int(v) for v in raw[1:-1].split(",")))
        else:
            val = ctx.el(int(raw))
        if sign < 0:
            val = -val
        exps = {"x": 0, "y": 0, "z": 0}
        for piece in re.findall(r"[xyz](?:\^\d+)?", m.group("monos")):
            var = piece[0]
            e = int(piece[2:]) if "^" in piece else 1
            exps[var] += e
        mono = (exps["x"], exps["y"], exps["z"])
        d = sum(mono)
        if seen_deg is None:
            seen_deg = d
        elif seen_deg != d:
            raise ValueError(f"mixed degrees {seen_deg} and {d} in {text!r}")
        prev = coeffs.get(mono, ctx.zero)
        coeffs[mono] = prev + val
    if degree is not None and seen_deg is not None and degree != seen_deg:
        raise ValueError(f"text has degree {seen_deg}, expected {degree}")
    return HomPoly(ctx, seen_deg if degree is None else degree, coeffs)


def format_poly(f: HomPoly) -> str:
    """Canonical text: terms in descending lexicographic monomial order,
    every coefficient explicit, exponent 1 elided."""
    if f.is_zero:
        return "0"
    parts = []
    for mono in sorted(f.coeffs, reverse=True):
        v = f.coeffs[mono]
        if f.ctx.k == 1:
            cs = str(v.to_int())
        else:
            cs = "(" + ",".join(str(c) for c in v.coeffs) + ")"
        body = []
        for var, e in zip(_VARS, mono):
            if e == 1:
                body.append(var)
            elif e > 1:
                body.append(f"{var}^{e}")
        parts.append("*".join([cs] + body))
    return " + ".join(parts)
