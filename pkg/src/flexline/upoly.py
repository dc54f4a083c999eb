"""Univariate polynomials over F_{p^k} with exact root machinery.

Coefficients are stored densely as int64 matrices of shape (degree+1, k),
low-degree row first, each row a field element in the power basis.  The two
operations that dominate (multiplication and reduction) are vectorized:

- multiplication maps to a single integer np.convolve via Kronecker
  substitution (rows are padded to width 2k-1 so cross terms cannot collide),
- division uses a cached Newton-inverse power series of the reversed divisor,
  so a powmod step costs a handful of convolutions.

Root finding is distinct-degree + Cantor-Zassenhaus with a PRNG seeded from
(p, k, modulus, coefficients), so every run makes identical choices.
Multiplicities are obtained by repeated exact division, which stays correct
when the characteristic does not exceed the degree (derivative tricks fail
there).  Only gcd/roots/degree queries are exposed; full factorization stays
private.
"""

from __future__ import annotations

import hashlib
import math
import random
from typing import Iterable

import numpy as np

from . import gf
from .errors import DegreeOverflow
from .gf import FieldCtx, FieldElement

_INT64 = np.int64


def _zero_arr(k: int) -> np.ndarray:
    return np.zeros((0, k), dtype=_INT64)


def _trim(arr: np.ndarray) -> np.ndarray:
    n = len(arr)
    while n > 0 and not arr[n - 1].any():
        n -= 1
    return arr[:n]


def _flat(arr: np.ndarray, width: int) -> np.ndarray:
    n, k = arr.shape
    out = np.zeros(n * width, dtype=_INT64)
    out.reshape(n, width)[:, :k] = arr
    return out


def _pv_mul(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two coefficient matrices (exact, reduced mod modulus and p)."""
    if len(a) == 0 or len(b) == 0:
        return _zero_arr(ctx.k)
    p, k = ctx.p, ctx.k
    if k == 1:
        out = np.convolve(a[:, 0], b[:, 0]) % p
        return _trim(out.reshape(-1, 1))
    w = 2 * k - 1
    conv = np.convolve(_flat(a, w), _flat(b, w))
    rows = len(a) + len(b) - 1
    buf = np.zeros((rows + 1) * w, dtype=_INT64)
    buf[: len(conv)] = conv
    m = buf.reshape(rows + 1, w)[:rows] % p
    out = (m[:, :k] + m[:, k:] @ ctx.red_np) % p
    return _trim(out)


def _pv_scale(ctx: FieldCtx, arr: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Multiply every coefficient of arr by the field element vector c."""
    return _pv_mul(ctx, arr, c.reshape(1, -1))


def _pv_sub(p: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(len(a), len(b))
    k = a.shape[1] if len(a) else b.shape[1]
    out = np.zeros((n, k), dtype=_INT64)
    out[: len(a)] = a
    out[: len(b)] -= b
    return _trim(out % p)


def _el_inv(ctx: FieldCtx, vec: np.ndarray) -> np.ndarray:
    return np.array(
        FieldElement(ctx, tuple(int(v) for v in vec)).inv().coeffs, dtype=_INT64
    )


def _pv_monic(ctx: FieldCtx, arr: np.ndarray) -> np.ndarray:
    if len(arr) == 0:
        return arr
    lead = arr[-1]
    if ctx.k == 1:
        if lead[0] == 1:
            return arr
    elif lead[0] == 1 and not lead[1:].any():
        return arr
    return _pv_scale(ctx, arr, _el_inv(ctx, lead))


# --- Newton-inverse division ------------------------------------------------

_inv_series_cache: dict[tuple, tuple[int, np.ndarray]] = {}


def _pv_mul_trunc(ctx: FieldCtx, a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return _pv_mul(ctx, a, b)[:n]


def _inv_series(ctx: FieldCtx, f: np.ndarray, n: int) -> np.ndarray:
    """Inverse of f (f[0] must be 1) as a power series mod z^n, cached."""
    key = (ctx.p, ctx.k, ctx.modulus, f.tobytes(), len(f))
    hit = _inv_series_cache.get(key)
    if hit is not None and hit[0] >= n:
        return hit[1][:n]
    k = ctx.k
    inv = np.zeros((1, k), dtype=_INT64)
    inv[0, 0] = 1
    t = 1
    while t < n:
        t = min(2 * t, n)
        fi = _pv_mul_trunc(ctx, f[:t], inv, t)
        corr = (-fi) % ctx.p
        corr[0, 0] = (corr[0, 0] + 2) % ctx.p
        inv = _pv_mul_trunc(ctx, inv, _trim(corr), t)
    if len(inv) < n:
        padded = np.zeros((n, k), dtype=_INT64)
        padded[: len(inv)] = inv
        inv = padded
    _inv_series_cache[key] = (n, inv)
    return inv[:n]


def _pv_divmod(ctx: FieldCtx, a: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Quotient and remainder; f must be monic and nonzero."""
    d = len(f) - 1
    if len(a) - 1 < d:
        return _zero_arr(ctx.k), a
    if d == 0:
        return a, _zero_arr(ctx.k)
    e = len(a) - d  # number of quotient coefficients
    arev = np.ascontiguousarray(a[::-1])
    frev = np.ascontiguousarray(f[::-1])
    qrev = _pv_mul_trunc(ctx, arev[:e], _inv_series(ctx, frev, e), e)
    if len(qrev) < e:
        padded = np.zeros((e, ctx.k), dtype=_INT64)
        padded[: len(qrev)] = qrev
        qrev = padded
    q = _trim(np.ascontiguousarray(qrev[::-1]))
    r = _pv_sub(ctx.p, a[:d], _pv_mul(ctx, q, f)[:d])
    return q, r


def _pv_gcd(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = _trim(a), _trim(b)
    while len(b):
        b = _pv_monic(ctx, b)
        _, r = _pv_divmod(ctx, a, b)
        a, b = b, r
    return _pv_monic(ctx, a)


def _pv_powmod(ctx: FieldCtx, base: np.ndarray, e: int, f: np.ndarray) -> np.ndarray:
    """base^e mod f (f monic); e may be a huge Python int."""
    k = ctx.k
    result = np.zeros((1, k), dtype=_INT64)
    result[0, 0] = 1
    _, base = _pv_divmod(ctx, base, f)
    while e:
        if e & 1:
            _, result = _pv_divmod(ctx, _pv_mul(ctx, result, base), f)
        e >>= 1
        if e:
            _, base = _pv_divmod(ctx, _pv_mul(ctx, base, base), f)
    return result


def _pv_t(k: int) -> np.ndarray:
    out = np.zeros((2, k), dtype=_INT64)
    out[1, 0] = 1
    return out


# --------------------------------------------------------------------------


class UPoly:
    """Immutable dense univariate polynomial over a FieldCtx."""

    __slots__ = ("ctx", "arr")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable):
        self.ctx = ctx
        rows = []
        for c in coeffs:
            rows.append(ctx.el(c).coeffs)
        arr = np.array(rows, dtype=_INT64) if rows else _zero_arr(ctx.k)
        self.arr = _trim(arr)

    @classmethod
    def from_arr(cls, ctx: FieldCtx, arr: np.ndarray) -> "UPoly":
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.arr = _trim(np.asarray(arr, dtype=_INT64) % ctx.p)
        return obj

    @classmethod
    def t_minus(cls, ctx: FieldCtx, r: FieldElement) -> "UPoly":
        return cls(ctx, [-r, ctx.one])

    @property
    def degree(self) -> int:
        return len(self.arr) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.arr) == 0

    @property
    def is_monic(self) -> bool:
        if self.is_zero:
            return False
        lead = self.arr[-1]
        return lead[0] == 1 and not lead[1:].any()

    def coeff(self, i: int) -> FieldElement:
        if i >= len(self.arr):
            return self.ctx.zero
        return FieldElement(self.ctx, tuple(int(v) for v in self.arr[i]))

    def coeffs(self) -> list[FieldElement]:
        return [self.coeff(i) for i in range(len(self.arr))]

    def monic(self) -> "UPoly":
        return UPoly.from_arr(self.ctx, _pv_monic(self.ctx, self.arr))

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.ctx.zero
        for i in range(len(self.arr) - 1, -1, -1):
            acc = acc * x + self.coeff(i)
        return acc

    def derivative(self) -> "UPoly":
        if self.degree < 1:
            return UPoly(self.ctx, [])
        rows = (self.arr[1:] * np.arange(1, len(self.arr)).reshape(-1, 1)) % self.ctx.p
        return UPoly.from_arr(self.ctx, rows)

    def __mul__(self, other: "UPoly") -> "UPoly":
        return UPoly.from_arr(self.ctx, _pv_mul(self.ctx, self.arr, other.arr))

    def __add__(self, other: "UPoly") -> "UPoly":
        return UPoly.from_arr(self.ctx, _pv_sub(self.ctx.p, self.arr, (-other.arr) % self.ctx.p))

    def __sub__(self, other: "UPoly") -> "UPoly":
        return UPoly.from_arr(self.ctx, _pv_sub(self.ctx.p, self.arr, other.arr))

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        q, _ = _pv_divmod(self.ctx, self.arr, _pv_monic(self.ctx, other.arr))
        lead = other.arr[-1]
        if not (lead[0] == 1 and not lead[1:].any()):
            q = _pv_scale(self.ctx, q, _el_inv(self.ctx, lead))
        return UPoly.from_arr(self.ctx, q)

    def __mod__(self, other: "UPoly") -> "UPoly":
        _, r = _pv_divmod(self.ctx, self.arr, _pv_monic(self.ctx, other.arr))
        return UPoly.from_arr(self.ctx, r)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UPoly)
            and self.ctx == other.ctx
            and self.arr.shape == other.arr.shape
            and bool((self.arr == other.arr).all())
        )

    def __hash__(self):
        return hash((self.ctx, self.arr.tobytes()))

    def __repr__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(len(self.arr) - 1, -1, -1):
            c = self.coeff(i)
            if c.is_zero:
                continue
            cs = repr(c)
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}*t")
            else:
                terms.append(f"{cs}*t^{i}")
        return " + ".join(terms)


# --------------------------------------------------------------------------
# public operations

def gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd; gcd(f, 0) is the monic normalization of f."""
    if f.ctx != g.ctx:
        raise ValueError("gcd of polynomials over different fields")
    return UPoly.from_arr(f.ctx, _pv_gcd(f.ctx, f.arr, g.arr))


def _seed_rng(ctx: FieldCtx, arr: np.ndarray) -> random.Random:
    material = repr((ctx.p, ctx.k, ctx.modulus)).encode() + arr.tobytes()
    seed = int.from_bytes(hashlib.sha256(material).digest()[:8], "big")
    return random.Random(seed)


def _cz_linear_roots(ctx: FieldCtx, g: np.ndarray, rng: random.Random) -> list[np.ndarray]:
    """Split a monic product of distinct linear factors into its roots."""
    d = len(g) - 1
    if d <= 0:
        return []
    if d == 1:
        return [(-g[0]) % ctx.p]
    e = (ctx.order - 1) // 2
    for _ in range(64):
        shift = np.array([rng.randrange(ctx.p) for _ in range(ctx.k)], dtype=_INT64)
        base = _pv_t(ctx.k).copy()
        base[0] = shift
        h = _pv_powmod(ctx, base, e, g)
        h1 = h.copy()
        if len(h1) == 0:
            h1 = np.zeros((1, ctx.k), dtype=_INT64)
        h1[0, 0] = (h1[0, 0] - 1) % ctx.p
        g1 = _pv_gcd(ctx, _trim(h1), g)
        if 0 < len(g1) - 1 < d:
            g2, r = _pv_divmod(ctx, g, g1)
            assert len(r) == 0
            return _cz_linear_roots(ctx, g1, rng) + _cz_linear_roots(
                ctx, _pv_monic(ctx, g2), rng
            )
    raise AssertionError("equal-degree splitting failed 64 deterministic attempts")


def roots_with_multiplicity(f: UPoly) -> list[tuple[FieldElement, int]]:
    """All roots of f in its own field, with multiplicities, sorted by
    coefficient tuple.  Multiplicity is found by repeated exact division so
    the answer is right even when p <= deg f."""
    ctx = f.ctx
    if f.is_zero:
        raise ValueError("zero polynomial vanishes everywhere")
    if f.degree == 0:
        return []
    arr = _pv_monic(ctx, f.arr)
    if f.degree == 1:
        root = FieldElement(ctx, tuple(int(v) for v in (-arr[0]) % ctx.p))
        return [(root, 1)]
    t = _pv_t(ctx.k)
    xq = _pv_powmod(ctx, t, ctx.order, arr)
    g = _pv_gcd(ctx, _pv_sub(ctx.p, xq, t), arr)
    root_vecs = _cz_linear_roots(ctx, g, _seed_rng(ctx, arr))
    roots = [FieldElement(ctx, tuple(int(v) for v in vec)) for vec in root_vecs]
    roots.sort(key=lambda r: r.sort_key())
    out = []
    for r in roots:
        lin = np.zeros((2, ctx.k), dtype=_INT64)
        lin[0] = (-np.array(r.coeffs, dtype=_INT64)) % ctx.p
        lin[1, 0] = 1
        rem = arr
        mult = 0
        while True:
            q, rr = _pv_divmod(ctx, rem, lin)
            if len(rr):
                break
            rem, mult = q, mult + 1
        out.append((r, mult))
    return out


def factor_degrees(f: UPoly) -> list[int]:
    """Sorted distinct degrees of the irreducible factors of f (squarefree or
    not); does not expose the factors themselves."""
    ctx = f.ctx
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return []
    f0 = _pv_monic(ctx, f.arr)
    t = _pv_t(ctx.k)
    x = t
    degs = []
    j = 0
    while len(f0) - 1 > 0:
        j += 1
        assert j <= f.degree, "distinct-degree scan overran the degree"
        _, x = _pv_divmod(ctx, x, f0)
        x = _pv_powmod(ctx, x, ctx.order, f0)
        g = _pv_gcd(ctx, _pv_sub(ctx.p, x, t), f0)
        if len(g) - 1 > 0:
            degs.append(j)
            while True:
                h = _pv_gcd(ctx, f0, g)
                if len(h) - 1 <= 0:
                    break
                f0_new, r = _pv_divmod(ctx, f0, h)
                assert len(r) == 0
                f0 = _pv_monic(ctx, f0_new)
            _, x = _pv_divmod(ctx, x, f0)
    return degs


def splitting_roots(
    f: UPoly, cap: int | None = None
) -> tuple[FieldCtx, list[tuple[FieldElement, int]]]:
    """Smallest extension where f splits completely, with all roots there.

    The extension is the canonical field whose degree over the prime field is
    ctx.k * lcm(factor degrees).  Raises DegreeOverflow beyond the cap
    (absolute degree over F_p; default gf.DEFAULT_DEGREE_CAP).
    """
    ctx = f.ctx
    cap = gf.DEFAULT_DEGREE_CAP if cap is None else cap
    degs = factor_degrees(f)
    if not degs:
        return ctx, []
    m = math.lcm(*degs)
    new_k = ctx.k * m
    if new_k > cap:
        raise DegreeOverflow(
            f"splitting field needs degree {new_k} over F_{ctx.p}, cap is {cap}"
        )
    if m == 1:
        out = roots_with_multiplicity(f)
    else:
        dst = gf.field(ctx.p, new_k)
        lifted = UPoly(dst, [gf.embed(ctx, dst, c) for c in f.coeffs()])
        out = roots_with_multiplicity(lifted)
    total = sum(mult for _, mult in out)
    assert total == f.degree, "splitting field did not absorb every root"
    return (ctx if m == 1 else gf.field(ctx.p, new_k)), out


def is_irreducible(f: UPoly) -> bool:
    """Rabin irreducibility test over f's own (possibly non-prime) field."""
    ctx = f.ctx
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    arr = _pv_monic(ctx, f.arr)
    t = _pv_t(ctx.k)
    q = ctx.order
    xqd = _pv_powmod(ctx, t, q ** d, arr)
    if len(_pv_sub(ctx.p, xqd, t)) != 0:
        return False
    for ell in gf.prime_divisors(d):
        xe = _pv_powmod(ctx, t, q ** (d // ell), arr)
        if len(_pv_gcd(ctx, _pv_sub(ctx.p, xe, t), arr)) - 1 != 0:
            return False
    return True
