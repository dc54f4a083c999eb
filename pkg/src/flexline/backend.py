"""Kernel backend selection plus shared table builders.

The heavy scans live twice: compiled numba kernels in _kernels_numba and
batched pure-numpy twins in _kernels_numpy.  FLEXLINE_BACKEND picks one:
"numpy" forces the fallback, "numba" demands the compiled path (error if the
import failed), unset or "auto" prefers numba when present.  Both modules
expose the same three functions with identical output arrays.

Also here: discrete-log code tables (with Zech addition) used by the
projective-plane scan, and packing of field elements into the int64
coefficient layout the kernels consume.
"""

import os
from functools import lru_cache

import numpy as np

from .errors import BackendUnavailable
from . import _kernels_numpy

try:
    from . import _kernels_numba
except ImportError:  # pragma: no cover - depends on the environment
    _kernels_numba = None

_ENV = "FLEXLINE_BACKEND"


def get_kernels():
    choice = os.environ.get(_ENV, "auto").strip().lower()
    if choice in ("", "auto"):
        return _kernels_numba if _kernels_numba is not None else _kernels_numpy
    if choice == "numpy":
        return _kernels_numpy
    if choice == "numba":
        if _kernels_numba is None:
            raise BackendUnavailable(
                "numba backend requested via %s but numba is not importable"
                % _ENV)
        return _kernels_numba
    raise BackendUnavailable("unknown %s value %r" % (_ENV, choice))


def active_backend() -> str:
    return get_kernels().BACKEND_NAME


def pack_elements(els) -> np.ndarray:
    """Stack coefficient vectors of field elements, shape (n, k)."""
    return np.array([e.vec() for e in els], dtype=np.int64)


def pack_points(pts) -> np.ndarray:
    """Stack projective points as (n, 3, k) coefficient arrays."""
    return np.array([[c.vec() for c in pt.coords] for pt in pts],
                    dtype=np.int64)


class LogTables:
    """Discrete-log codes for F_q*: code 0 is zero, code v is g^(v-1).

    g is the first generator in coefficient sort order.  zech[d] is the code
    of 1 + g^d (0 when that sum vanishes), so products add exponents and sums
    reduce to one table lookup.
    """

    __slots__ = ("ctx", "gen", "elems", "codes", "zech")

    def __init__(self, ctx):
        q = ctx.order
        gen = None
        for e in ctx.elements():
            if e.is_zero:
                continue
            if e.multiplicative_order() == q - 1:
                gen = e
                break
        assert gen is not None
        elems = [ctx.zero]
        cur = ctx.one
        for _ in range(q - 1):
            elems.append(cur)
            cur = cur * gen
        codes = {e.coeffs: i for i, e in enumerate(elems)}
        zech = np.zeros(q - 1, dtype=np.int64)
        one = ctx.one
        for d in range(q - 1):
            zech[d] = codes[(one + elems[d + 1]).coeffs]
        self.ctx = ctx
        self.gen = gen
        self.elems = elems
        self.codes = codes
        self.zech = zech

    def code(self, e) -> int:
        return self.codes[e.coeffs]

    def element(self, code: int):
        return self.elems[code]


def frame_adjugate(pts) -> np.ndarray:
    """Adjugate of the weighted matrix of a projective frame, kernel layout.

    pts is a 4-tuple of points in general position.  Columns of the weighted
    matrix are c_j P_j where the weights c solve [P1 P2 P3] c = P4.  Returns
    the adjugate packed (3, 3, k); raises DegenerateFrame when the frame is
    not in general position.
    """
    from .errors import DegenerateFrame
    base = [[pts[j].coords[i] for j in range(3)] for i in range(3)]

    def adj3(mat):
        out = [[None] * 3 for _ in range(3)]
        for r in range(3):
            r1, r2 = (r + 1) % 3, (r + 2) % 3
            for c in range(3):
                c1, c2 = (c + 1) % 3, (c + 2) % 3
                out[c][r] = (mat[r1][c1] * mat[r2][c2]
                             - mat[r1][c2] * mat[r2][c1])
        return out

    adj_base = adj3(base)
    det = sum((base[0][j] * adj_base[j][0] for j in range(3)),
              pts[0].ctx.zero)
    if det.is_zero:
        raise DegenerateFrame("first three frame points are collinear")
    weights = []
    for r in range(3):
        w = sum((adj_base[r][j] * pts[3].coords[j] for j in range(3)),
                pts[0].ctx.zero)
        if w.is_zero:
            raise DegenerateFrame("fourth frame point on a side line")
        weights.append(w)
    n = [[weights[j] * base[i][j] for j in range(3)] for i in range(3)]
    adj_n = adj3(n)
    return np.array([[adj_n[r][c].vec() for c in range(3)]
                     for r in range(3)], dtype=np.int64)


def chart_codes(f, tables):
    """Chart coefficient codes of a homogeneous polynomial for the P^2 scan.

    Returns (c1, c2, c3): c1[b, c] codes the y^b z^c coefficient of
    f(1, y, z), c2[c] codes the z^c coefficient of f(0, 1, z), and c3 codes
    f(0, 0, 1).
    """
    d = f.degree
    c1 = np.zeros((d + 1, d + 1), dtype=np.int64)
    for b in range(d + 1):
        for c in range(d + 1 - b):
            c1[b, c] = tables.code(f.coeff((d - b - c, b, c)))
    c2 = np.zeros(d + 1, dtype=np.int64)
    for c in range(d + 1):
        c2[c] = tables.code(f.coeff((0, d - c, c)))
    c3 = int(tables.code(f.coeff((0, 0, d))))
    return c1, c2, c3


@lru_cache(maxsize=None)
def _log_tables_cached(p, k, modulus):
    from . import gf
    if k == 1:
        return LogTables(gf.prime_field(p))
    return LogTables(gf.from_modulus(p, modulus))


def log_tables(ctx) -> LogTables:
    if ctx.order > 1 << 22:
        raise ValueError("field too large for discrete-log tables")
    return _log_tables_cached(ctx.p, ctx.k, ctx.modulus)
