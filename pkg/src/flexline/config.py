"""Weighted configurations of lines, seen as point sets in the dual plane.

The inflection lines of a smooth quartic form a finite weighted set of dual
points (weight 2 for a line meeting the curve four-fold at its flex, weight 1
for ordinary three-fold contact).  This module wraps such sets with exact
equality and JSON serialization and solves the two search problems built on
them: which projective maps carry one configuration onto another
(transporters) and the full symmetry group of a single configuration.

Conventions.  A configuration stores canonical dual points; a transporter is
returned as the map of the original plane whose induced line action matches
the configurations.  Searches enumerate images of one projective frame inside
the support, so their cost is (support size)^4 candidate checks; the batched
candidate filter runs on the kernel backend and every survivor is re-verified
exactly in Python before it is reported.
"""

import itertools
from collections import Counter
from typing import NamedTuple

import numpy as np

from . import backend, gf, mpoly, proj, upoly
from .errors import (
    DegenerateConfiguration,
    DegenerateFrame,
    GroupTooLarge,
)

GROUP_CAP = 10_000

# candidate frames are filtered in batches to bound kernel memory
_CAND_CHUNK = 1 << 16


def _coord_to_json(c):
    v = c.vec()
    return int(v[0]) if len(v) == 1 else [int(d) for d in v]


def _coord_from_json(ctx, c):
    if isinstance(c, bool):
        raise ValueError("coordinate must be an integer or a digit list")
    if isinstance(c, int):
        return ctx.el(c)
    digits = [int(d) for d in c]
    if len(digits) != ctx.k:
        raise ValueError(
            f"coordinate {c!r} has {len(digits)} digits, field needs {ctx.k}")
    return gf.FieldElement(ctx, tuple(d % ctx.p for d in digits))


class LineConfiguration:
    """Finite weighted set of dual-plane points with exact equality.

    entries maps canonical ProjPoint (dual coordinates) to a positive integer
    weight.  Two configurations are equal when they live over the same field
    and their weighted point sets agree exactly.
    """

    __slots__ = ("ctx", "entries", "support")

    def __init__(self, ctx, entries):
        items = {}
        for pt, w in dict(entries).items():
            if not isinstance(pt, proj.ProjPoint) or pt.ctx != ctx:
                raise ValueError("configuration points must share the field")
            w = int(w)
            if w <= 0:
                raise ValueError("weights must be positive integers")
            items[pt] = w
        self.ctx = ctx
        self.support = tuple(sorted(items, key=lambda q: q.sort_key()))
        self.entries = {pt: items[pt] for pt in self.support}

    def weight(self, pt) -> int:
        return self.entries.get(pt, 0)

    @property
    def total_weight(self) -> int:
        return sum(self.entries.values())

    def weight_histogram(self) -> dict:
        return dict(Counter(self.entries.values()))

    def weight_class(self, w: int) -> tuple:
        return tuple(pt for pt in self.support if self.entries[pt] == w)

    def embed_to(self, dst) -> "LineConfiguration":
        return LineConfiguration(
            dst, {pt.embed_to(dst): w for pt, w in self.entries.items()})

    def to_json(self) -> dict:
        return {
            "field": self.ctx.spec_string(),
            "points": [
                {
                    "dual": [_coord_to_json(c) for c in pt.coords],
                    "weight": self.entries[pt],
                }
                for pt in self.support
            ],
        }

    def __len__(self):
        return len(self.support)

    def __eq__(self, other):
        return (
            isinstance(other, LineConfiguration)
            and self.ctx == other.ctx
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ctx, tuple(
            (pt.sort_key(), self.entries[pt]) for pt in self.support)))

    def __repr__(self):
        return (f"LineConfiguration({self.ctx!r}, {len(self.support)} lines, "
                f"total weight {self.total_weight})")


def from_json(data: dict) -> LineConfiguration:
    ctx = gf.parse_field_spec(data["field"])
    entries = {}
    for rec in data["points"]:
        coords = [_coord_from_json(ctx, c) for c in rec["dual"]]
        pt = proj.ProjPoint(ctx, coords)
        entries[pt] = entries.get(pt, 0) + int(rec["weight"])
    return LineConfiguration(ctx, entries)


def from_flexes(ctx, records) -> LineConfiguration:
    """Accumulate flex records into a configuration; lines shared by several
    flexes pick up the summed weight."""
    acc = {}
    for rec in records:
        if rec.line.ctx != ctx:
            raise ValueError("flex record over a different field")
        acc[rec.line] = acc.get(rec.line, 0) + rec.weight
    return LineConfiguration(ctx, acc)


# --------------------------------------------------------------------------
# projective invariants of the support

def _incidence_groups(points):
    """Maximal collinear index sets (size >= 2) of a point tuple."""
    lines = {}
    for i, j in itertools.combinations(range(len(points)), 2):
        key = proj.line_through(points[i], points[j])
        lines.setdefault(key, set()).update((i, j))
    return sorted({frozenset(s) for s in lines.values()},
                  key=lambda s: (-len(s), sorted(s)))


def collinear_profile(points) -> tuple:
    """Sizes of the maximal collinear subsets with at least three points,
    sorted descending.  Invariant under projective maps."""
    return tuple(len(g) for g in _incidence_groups(points) if len(g) >= 3)


def minimal_line_cover(points) -> int:
    """Least number of lines whose union contains all the points (exact
    branch and bound; supports of interest stay below 25 points)."""
    pts = list(points)
    n = len(pts)
    if n == 0:
        return 0
    groups = [g for g in _incidence_groups(pts)]
    maxsz = max((len(g) for g in groups), default=1)
    by_point = [[g for g in groups if i in g] for i in range(n)]
    best = [n]

    def walk(uncovered, used):
        if not uncovered:
            best[0] = min(best[0], used)
            return
        if used + -(-len(uncovered) // maxsz) >= best[0]:
            return
        i = min(uncovered)
        for g in by_point[i]:
            if len(g & uncovered) >= 2:
                walk(uncovered - g, used + 1)
        # a line meeting the rest of the support only in points[i]
        walk(uncovered - {i}, used + 1)

    walk(frozenset(range(n)), 0)
    return best[0]


def _sym_matrix(conic):
    """Symmetric 3x3 matrix of a conic form (characteristic is >= 5)."""
    ctx = conic.ctx
    half = ctx.el(2).inv()
    a = conic.coeff((2, 0, 0))
    b = conic.coeff((0, 2, 0))
    c = conic.coeff((0, 0, 2))
    d = conic.coeff((1, 1, 0)) * half
    e = conic.coeff((1, 0, 1)) * half
    f = conic.coeff((0, 1, 1)) * half
    return ((a, d, e), (d, b, f), (e, f, c))


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def pencil_invariant(conf: LineConfiguration):
    """Cross-ratio invariant of the two weight-class conics, or None.

    When the weight-2 points and the weight-1 points each determine a unique
    conic (evaluation rank 5), the degenerate members of the pencil spanned
    by the two conics cut three parameters on the pencil line.  If they fall
    into one double and one simple parameter, both away from the span
    points, the cross-ratio of (weight-2 conic, weight-1 conic, double
    member, simple member) is a projective invariant of the configuration.
    Returns that field element, or None when any of this degenerates.
    Transporter searches use it as a prefilter; it never changes answers
    because equivalent configurations share it (unique conics map to unique
    conics and multiplicities are preserved).
    """
    ctx = conf.ctx
    w2 = conf.weight_class(2)
    w1 = conf.weight_class(1)
    if proj.conic_rank(w2) != 5 or proj.conic_rank(w1) != 5:
        return None
    m2 = _sym_matrix(proj.conic_through(w2))
    m1 = _sym_matrix(proj.conic_through(w1))

    def det_at(lam, mu):
        m = tuple(tuple(lam * m2[i][j] + mu * m1[i][j] for j in range(3))
                  for i in range(3))
        return _det3(m)

    # det(t*m2 + m1) as a cubic in t, coefficients by interpolation:
    # det_at(1,1) + det_at(1,-1) isolates even powers of the second slot
    c3 = det_at(ctx.one, ctx.zero)
    c0 = det_at(ctx.zero, ctx.one)
    plus = det_at(ctx.one, ctx.one)
    minus = det_at(ctx.one, -ctx.one)
    half = ctx.el(2).inv()
    c1 = (plus + minus) * half - c3
    c2 = (plus - minus) * half - c0
    f = upoly.UPoly(ctx, [c0, c1, c2, c3])
    if f.degree != 3:
        return None  # a degenerate member sits on the weight-2 conic
    sq = upoly.gcd(f, f.derivative())
    if sq.degree != 1:
        return None  # no (double, simple) pattern over this field
    t_double = -sq.coeff(0)
    rest = f // (sq * sq)
    if rest.degree != 1:
        return None
    t_simple = -rest.coeff(0) / rest.coeff(1)
    if t_double.is_zero or t_simple.is_zero:
        return None  # a degenerate member sits on the weight-1 conic
    return t_simple / t_double


class SupportSignature(NamedTuple):
    collinear_profile: tuple
    line_cover: int
    conic_rank_weight2: int


def support_signature(conf: LineConfiguration) -> SupportSignature:
    """Cheap projective invariants of a configuration: the collinear-subset
    profile of the support, the minimal line cover size, and the rank of the
    conic-evaluation matrix of the weight-2 points."""
    return SupportSignature(
        collinear_profile(conf.support),
        minimal_line_cover(conf.support),
        proj.conic_rank(conf.weight_class(2)),
    )


# --------------------------------------------------------------------------
# transporters

def is_transporter(m: proj.ProjMap, a: LineConfiguration,
                   b: LineConfiguration) -> bool:
    """Whether the line action of m carries a onto b, weights included."""
    if m.ctx != a.ctx or a.ctx != b.ctx:
        return False
    if a.weight_histogram() != b.weight_histogram():
        return False
    act = m.line_action()
    return all(b.weight(act.apply(pt)) == w for pt, w in a.entries.items())


def _lex_frame(points):
    for combo in itertools.combinations(range(len(points)), 4):
        if proj.in_general_position([points[i] for i in combo]):
            return combo
    return None


def _transports_dual(n: proj.ProjMap, a: LineConfiguration,
                     b: LineConfiguration) -> bool:
    # n acts on dual points directly; histograms are known equal here, so an
    # injective weight-preserving map into b is onto b
    return all(b.weight(n.apply(pt)) == w for pt, w in a.entries.items())


def transporters(a: LineConfiguration, b: LineConfiguration) -> list:
    """All maps of the plane whose line action carries a onto b.

    Both configurations must live over the same field; embed to a compositum
    first if they do not.  Raises DegenerateConfiguration when the support of
    a contains no projective frame (under 4 points, or too many collinear).
    The weight histogram, collinear profile, weight-2 conic rank and pencil
    cross-ratio are compared first; all four are projective invariants, so a
    mismatch proves the answer empty without any search.
    """
    if a.ctx != b.ctx:
        raise ValueError(
            "configurations over different fields; embed to a compositum")
    ctx = a.ctx
    if a.weight_histogram() != b.weight_histogram():
        return []
    sa_pts = a.support
    sb_pts = b.support
    frame = _lex_frame(sa_pts)
    if frame is None:
        raise DegenerateConfiguration(
            "support contains no four points in general position")
    if collinear_profile(sa_pts) != collinear_profile(sb_pts):
        return []
    if (proj.conic_rank(a.weight_class(2))
            != proj.conic_rank(b.weight_class(2))):
        return []
    inv_a = pencil_invariant(a)
    inv_b = pencil_invariant(b)
    if inv_a is not None and inv_b is not None and inv_a != inv_b:
        return []
    if (inv_a is None) != (inv_b is None):
        return []

    frame_pts = [sa_pts[i] for i in frame]
    pools = [
        [j for j, q in enumerate(sb_pts)
         if b.entries[q] == a.entries[sa_pts[i]]]
        for i in frame
    ]
    cands = [c for c in itertools.product(*pools) if len(set(c)) == 4]
    if not cands:
        return []

    kern = backend.get_kernels()
    sa = backend.pack_points(sa_pts)
    sb = backend.pack_points(sb_pts)
    adj_src = backend.frame_adjugate(frame_pts)
    test_idx = np.array(
        [i for i in range(len(sa_pts)) if i not in frame], dtype=np.int64)
    allowed = np.zeros((len(test_idx), len(sb_pts)), dtype=np.uint8)
    for t, i in enumerate(test_idx):
        w = a.entries[sa_pts[int(i)]]
        for j, q in enumerate(sb_pts):
            if b.entries[q] == w:
                allowed[t, j] = 1
    red = ctx.red_np

    out = []
    for start in range(0, len(cands), _CAND_CHUNK):
        chunk = cands[start:start + _CAND_CHUNK]
        mask = kern.filter_frame_candidates(
            sa, sb, adj_src, np.int64(0), np.array(chunk, dtype=np.int64),
            test_idx, allowed, red, ctx.p)
        for ci in np.flatnonzero(mask):
            cand = chunk[int(ci)]
            try:
                ndual = proj.map_from_frames(
                    frame_pts, [sb_pts[j] for j in cand])
            except DegenerateFrame:
                continue
            if _transports_dual(ndual, a, b):
                out.append(ndual.line_action())
    out.sort(key=lambda m: m.sort_key())
    return out


# --------------------------------------------------------------------------
# groups

class ProjGroup:
    """Finite subgroup of the plane's projective maps with a verified
    multiplication table."""

    __slots__ = ("ctx", "elements", "_table")

    def __init__(self, ctx, elements):
        els = sorted(set(elements), key=lambda m: m.sort_key())
        if len(els) > GROUP_CAP:
            raise GroupTooLarge(
                f"{len(els)} elements exceed the cap {GROUP_CAP}")
        for m in els:
            if m.ctx != ctx:
                raise ValueError("group elements must share the field")
        index = {m: i for i, m in enumerate(els)}
        ident = proj.ProjMap.identity(ctx)
        if ident not in index:
            raise ValueError("group does not contain the identity")
        table = []
        for g in els:
            row = []
            for h in els:
                gh = g.compose(h)
                if gh not in index:
                    raise ValueError("set of maps is not closed under "
                                     "composition")
                row.append(index[gh])
            if index[ident] not in row:
                raise ValueError(f"no inverse for {g!r}")
            table.append(tuple(row))
        self.ctx = ctx
        self.elements = tuple(els)
        self._table = tuple(table)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, m):
        return m in set(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_abelian(self) -> bool:
        t = self._table
        n = len(t)
        return all(t[i][j] == t[j][i] for i in range(n) for j in range(i))

    def element_orders(self) -> dict:
        ident = self.elements.index(proj.ProjMap.identity(self.ctx))
        hist = Counter()
        for i in range(len(self.elements)):
            k, ordr = i, 1
            while k != ident:
                k = self._table[i][k]
                ordr += 1
            hist[ordr] += 1
        return dict(sorted(hist.items()))

    def descriptor(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.is_abelian(),
            "element_orders": self.element_orders(),
        }

    def __repr__(self):
        return f"ProjGroup(order={self.order})"


def automorphism_group(conf: LineConfiguration) -> ProjGroup:
    """Symmetry group of a configuration: every plane map whose line action
    fixes the weighted point set."""
    return ProjGroup(conf.ctx, transporters(conf, conf))


def curve_automorphisms(curve, group: ProjGroup) -> ProjGroup:
    """Subgroup of maps that also fix the quartic itself (its equation is
    carried to a scalar multiple)."""
    form = curve.form.embed_to(group.ctx)
    kept = [m for m in group
            if mpoly.substitute(form, m.rows()).is_proportional(form)]
    return ProjGroup(group.ctx, kept)
