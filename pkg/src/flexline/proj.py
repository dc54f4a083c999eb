"""Projective plane over a FieldCtx: points, linear maps, conics, and the
j-invariant of four points on a line.

Points and maps carry a unique canonical representative (first nonzero
coordinate / entry scaled to one), so equality, hashing and sorting are
plain tuple operations.  Frame transport is division-free: the map through
two frames is assembled from adjugates only, which keeps every entry inside
the field generated by the frame coordinates.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import gf
from .errors import (
    BaseNotOnConic,
    DegenerateFrame,
    DegeneratePoints,
    ReducibleConic,
    SingularMatrix,
)
from .gf import FieldCtx, FieldElement
from .mpoly import BinaryForm, HomPoly


def _coerce3(ctx: FieldCtx, coords) -> tuple[FieldElement, FieldElement, FieldElement]:
    out = tuple(ctx.el(c) for c in coords)
    if len(out) != 3:
        raise ValueError("expected 3 coordinates")
    return out


class ProjPoint:
    """Point of P^2, stored with first nonzero coordinate scaled to 1."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldCtx, coords):
        cs = _coerce3(ctx, coords)
        lead = next((c for c in cs if not c.is_zero), None)
        if lead is None:
            raise ValueError("(0, 0, 0) is not a projective point")
        if lead != ctx.one:
            inv = lead.inv()
            cs = tuple(c * inv for c in cs)
        self.ctx = ctx
        self.coords = cs

    def sort_key(self):
        return tuple(c.coeffs for c in self.coords)

    def embed_to(self, dst: FieldCtx) -> "ProjPoint":
        return ProjPoint(dst, [gf.embed(self.ctx, dst, c) for c in self.coords])

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and self.ctx == other.ctx
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.ctx, self.coords))

    def __repr__(self):
        return "[" + ",".join(repr(c) for c in self.coords) + "]"


def _det3(m) -> FieldElement:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _adj3(m):
    def co(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
        return minor if (i + j) % 2 == 0 else -minor

    # adjugate = transposed cofactor matrix
    return tuple(tuple(co(j, i) for j in range(3)) for i in range(3))


def _mat_mul3(a, b, zero):
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(3)), zero) for j in range(3))
        for i in range(3)
    )


def _mat_vec3(m, v, zero):
    return tuple(sum((m[i][j] * v[j] for j in range(3)), zero) for i in range(3))


class ProjMap:
    """Element of PGL_3, stored as the matrix whose first nonzero entry in
    row-major order is 1."""

    __slots__ = ("ctx", "mat")

    def __init__(self, ctx: FieldCtx, rows):
        mat = tuple(_coerce3(ctx, row) for row in rows)
        if len(mat) != 3:
            raise ValueError("expected a 3x3 matrix")
        det = _det3(mat)
        if det.is_zero:
            raise SingularMatrix("projective map needs a nonzero determinant")
        lead = next(c for row in mat for c in row if not c.is_zero)
        if lead != ctx.one:
            inv = lead.inv()
            mat = tuple(tuple(c * inv for c in row) for row in mat)
        self.ctx = ctx
        self.mat = mat

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "ProjMap":
        return cls(ctx, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def rows(self):
        return self.mat

    def apply(self, p: ProjPoint) -> ProjPoint:
        if p.ctx != self.ctx:
            raise ValueError("point and map over different fields")
        return ProjPoint(self.ctx, _mat_vec3(self.mat, p.coords, self.ctx.zero))

    def compose(self, other: "ProjMap") -> "ProjMap":
        """self after other: (self.compose(other))(P) = self(other(P))."""
        if other.ctx != self.ctx:
            raise ValueError("maps over different fields")
        return ProjMap(self.ctx, _mat_mul3(self.mat, other.mat, self.ctx.zero))

    def inverse(self) -> "ProjMap":
        return ProjMap(self.ctx, _adj3(self.mat))

    def line_action(self) -> "ProjMap":
        """The induced map on dual coordinates: lines of the source go to
        lines of the target.  Proportional to the inverse transpose."""
        adj = _adj3(self.mat)
        return ProjMap(self.ctx, tuple(zip(*adj)))

    def embed_to(self, dst: FieldCtx) -> "ProjMap":
        return ProjMap(
            dst,
            [[gf.embed(self.ctx, dst, c) for c in row] for row in self.mat],
        )

    def sort_key(self):
        return tuple(c.coeffs for row in self.mat for c in row)

    def __eq__(self, other):
        return (
            isinstance(other, ProjMap)
            and self.ctx == other.ctx
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash((self.ctx, self.mat))

    def __repr__(self):
        return "ProjMap" + repr([[repr(c) for c in row] for row in self.mat])


# --------------------------------------------------------------------------
# incidence helpers

def line_through(p: ProjPoint, q: ProjPoint) -> ProjPoint:
    """Dual coordinates of the line joining two distinct points."""
    if p == q:
        raise DegeneratePoints("line through a repeated point")
    a, b = p.coords, q.coords
    cross = (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
    return ProjPoint(p.ctx, cross)


def incident(point: ProjPoint, line: ProjPoint) -> bool:
    s = sum((point.coords[i] * line.coords[i] for i in range(3)), point.ctx.zero)
    return s.is_zero


def are_collinear(points: Sequence[ProjPoint]) -> bool:
    """True when some line carries all the points (any number of them)."""
    pts = list(points)
    if len(pts) <= 2:
        return True
    base = line_through(pts[0], next(q for q in pts[1:] if q != pts[0])) \
        if any(q != pts[0] for q in pts[1:]) else None
    if base is None:
        return True
    return all(incident(q, base) for q in pts)


def in_general_position(points: Sequence[ProjPoint]) -> bool:
    """No three of the points collinear (and no repeats)."""
    pts = list(points)
    if len(set(pts)) != len(pts):
        return False
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                if are_collinear((pts[i], pts[j], pts[k])):
                    return False
    return True


def all_points(ctx: FieldCtx) -> Iterable[ProjPoint]:
    """Every point of P^2 once, in canonical-representative order."""
    one = ctx.one
    for y in ctx.elements():
        for z in ctx.elements():
            yield ProjPoint(ctx, (one, y, z))
    for z in ctx.elements():
        yield ProjPoint(ctx, (ctx.zero, one, z))
    yield ProjPoint(ctx, (ctx.zero, ctx.zero, one))


# --------------------------------------------------------------------------
# frames

def map_from_frames(src, dst) -> ProjMap:
    """The unique projective map carrying one ordered frame (4 points, no 3
    collinear) to another.  Division-free adjugate construction."""
    src = tuple(src)
    dst = tuple(dst)
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("frames are ordered 4-tuples of points")
    ctx = src[0].ctx
    if any(p.ctx != ctx for p in src + dst):
        raise ValueError("frame points over different fields")

    def frame_matrix(pts):
        base = tuple(tuple(p.coords[i] for p in pts[:3]) for i in range(3))
        weights = _mat_vec3(_adj3(base), pts[3].coords, ctx.zero)
        if any(w.is_zero for w in weights):
            raise DegenerateFrame("three of the frame points are collinear")
        return tuple(
            tuple(weights[j] * pts[j].coords[i] for j in range(3))
            for i in range(3)
        )

    n_src = frame_matrix(src)
    n_dst = frame_matrix(dst)
    try:
        return ProjMap(ctx, _mat_mul3(n_dst, _adj3(n_src), ctx.zero))
    except SingularMatrix:
        raise DegenerateFrame("three of the frame points are collinear")


# --------------------------------------------------------------------------
# conics

_CONIC_MONOS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def _conic_matrix(points: Sequence[ProjPoint]):
    rows = []
    for p in points:
        x, y, z = p.coords
        rows.append([x * x, x * y, x * z, y * y, y * z, z * z])
    return rows


def _rref(rows, width):
    """Row-reduce in place; returns (rank, pivot columns)."""
    rank, pivots = 0, []
    for col in range(width):
        piv = next((r for r in range(rank, len(rows))
                    if not rows[r][col].is_zero), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero:
                f = rows[r][col]
                rows[r] = [rows[r][j] - f * rows[rank][j] for j in range(width)]
        pivots.append(col)
        rank += 1
    return rank, pivots


def conic_rank(points: Sequence[ProjPoint]) -> int:
    """Rank of the evaluation matrix of the six conic monomials at the
    points; 5 means a unique conic passes through them, 6 means none."""
    pts = list(points)
    if not pts:
        return 0
    return _rref(_conic_matrix(pts), 6)[0]


def conic_through(points: Sequence[ProjPoint]) -> HomPoly:
    """The conic through the points when it is unique (evaluation rank 5);
    DegeneratePoints otherwise."""
    pts = list(points)
    if not pts:
        raise DegeneratePoints("no points given")
    ctx = pts[0].ctx
    rows = _conic_matrix(pts)
    rank, pivots = _rref(rows, 6)
    if rank != 5:
        raise DegeneratePoints(
            f"conic through the points is not unique (rank {rank})"
        )
    free = next(c for c in range(6) if c not in pivots)
    sol = [ctx.zero] * 6
    sol[free] = ctx.one
    for r, col in enumerate(pivots):
        sol[col] = -rows[r][free]
    coeffs = {m: sol[i] for i, m in enumerate(_CONIC_MONOS)}
    return HomPoly(ctx, 2, coeffs)


def _polarize(c: HomPoly, u, v) -> FieldElement:
    """Bilinear form of the quadric: C(u+v) - C(u) - C(v)."""
    s = tuple(u[i] + v[i] for i in range(3))
    return c.evaluate(s) - c.evaluate(u) - c.evaluate(v)


def conic_is_smooth(c: HomPoly) -> bool:
    """Rank-3 check on the symmetric matrix of the quadric (char != 2)."""
    if c.degree != 2:
        raise ValueError("expected a quadric")
    ctx = c.ctx
    two = ctx.el(2)
    m = [
        [two * c.coeff((2, 0, 0)), c.coeff((1, 1, 0)), c.coeff((1, 0, 1))],
        [c.coeff((1, 1, 0)), two * c.coeff((0, 2, 0)), c.coeff((0, 1, 1))],
        [c.coeff((1, 0, 1)), c.coeff((0, 1, 1)), two * c.coeff((0, 0, 2))],
    ]
    return not _det3(m).is_zero


def parametrize_conic(c: HomPoly, base: ProjPoint):
    """Degree-2 parametrization P^1 -> conic through a base point on it.

    Returns three BinaryForms (X, Y, Z) of degree 2 in parameters (s, t):
    the image of (s : t) is (X(s,t) : Y(s,t) : Z(s,t)), every point of the
    conic is hit exactly once, and (base itself included) no parameter value
    degenerates.  Raises ReducibleConic for rank-deficient quadrics and
    BaseNotOnConic when the base point misses the conic.
    """
    ctx = c.ctx
    if base.ctx != ctx:
        raise ValueError("base point over a different field")
    if not conic_is_smooth(c):
        raise ReducibleConic("quadric is rank-deficient")
    if not c.evaluate(base.coords).is_zero:
        raise BaseNotOnConic(f"{base} does not lie on the conic")
    b = base.coords
    basis = (
        (ctx.one, ctx.zero, ctx.zero),
        (ctx.zero, ctx.one, ctx.zero),
        (ctx.zero, ctx.zero, ctx.one),
    )
    pair = None
    for i in range(3):
        for j in range(i + 1, 3):
            if not _det3((b, basis[i], basis[j])).is_zero:
                pair = (basis[i], basis[j])
                break
        if pair:
            break
    assert pair is not None
    u, v = pair
    # W(s,t) = sU + tV; image = C(W) B - Bil(B, W) W, degree 2 in (s, t)
    cu, cv = c.evaluate(u), c.evaluate(v)
    cuv = _polarize(c, u, v)
    bu, bv = _polarize(c, b, u), _polarize(c, b, v)
    comps = []
    for i in range(3):
        # coefficient of s^2, st, t^2
        s2 = cu * b[i] - bu * u[i]
        st = cuv * b[i] - bu * v[i] - bv * u[i]
        t2 = cv * b[i] - bv * v[i]
        comps.append(BinaryForm(ctx, 2, [s2, st, t2]))
    assert any(not f.is_zero for f in comps)
    return tuple(comps)


def restrict_to_conic(f: HomPoly, param) -> BinaryForm:
    """Compose a ternary form with a conic parametrization: the binary form
    (s, t) -> f(X(s,t), Y(s,t), Z(s,t)) of degree 2 deg(f)."""
    px, py, pz = param
    ctx = f.ctx
    deg_out = 2 * f.degree

    def mul(a: list, b: list) -> list:
        out = [ctx.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return out

    comps = [[form.coeff(i) for i in range(3)] for form in (px, py, pz)]
    acc = [ctx.zero] * (deg_out + 1)
    for (a, b_, c_), v in f.coeffs.items():
        term = [v]
        for e, comp in ((a, comps[0]), (b_, comps[1]), (c_, comps[2])):
            for _ in range(e):
                term = mul(term, comp)
        for i, t in enumerate(term):
            acc[i] = acc[i] + t
    return BinaryForm(ctx, deg_out, acc)


# --------------------------------------------------------------------------
# j-invariant of four points on P^1

def j_from_four_points(pts) -> FieldElement:
    """The j-invariant of an unordered 4-tuple of distinct points of P^1,
    each given as a coordinate pair (s, t).

    j = 256 (L^2 - L + 1)^3 / (L^2 (L - 1)^2) for the cross-ratio L; the
    value does not depend on the ordering.  DegeneratePoints on repeats.
    """
    pts = [tuple(p) for p in pts]
    if len(pts) != 4:
        raise ValueError("need exactly four points")
    ctx = pts[0][0].ctx

    def bracket(a, b):
        return a[0] * b[1] - b[0] * a[1]

    for i in range(4):
        for j in range(i + 1, 4):
            if bracket(pts[i], pts[j]).is_zero:
                raise DegeneratePoints("repeated point among the four")
    num = bracket(pts[0], pts[2]) * bracket(pts[1], pts[3])
    den = bracket(pts[0], pts[3]) * bracket(pts[1], pts[2])
    lam = num / den
    one = ctx.one
    return ctx.el(256) * (lam * lam - lam + one) ** 3 \
        / (lam * lam * (lam - one) ** 2)
