"""Exact arithmetic in finite fields F_{p^k}, odd characteristic p >= 5.

Canonical choices (all deterministic, so downstream reports are reproducible):

- one canonical field per (p, degree): its modulus is the first monic
  irreducible polynomial in coefficient order, constant term varying fastest;
- towers are always flattened: extending F_{p^k} by a degree-d irreducible
  yields the canonical field of degree k*d, and the compositum of degrees a
  and b is the canonical field of degree lcm(a, b);
- embeddings between canonical fields send the generator to a root of the
  source modulus chosen lexicographically least among those compatible with
  the already-fixed embeddings of all subfields, which makes towers commute;
- whenever a root has to be picked (nth roots, embeddings), ties are broken
  by the lexicographic order of coefficient tuples.

Elements are immutable coefficient tuples over F_p; hot loops elsewhere use
raw int64 vectors instead of FieldElement objects.  Not for cryptographic
use.  p is capped at 2**20 so int64 convolution sums stay exact downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeOverflow,
    ExcludedCharacteristic,
    NoEmbedding,
    NotPrime,
    Reducible,
)

P_MAX = 1 << 20
DEFAULT_DEGREE_CAP = 8

_INT64 = np.int64
_EMPTY = np.zeros(0, dtype=_INT64)


def is_prime(n: int) -> bool:
    """Trial division; fine for the desk-scale moduli this package handles."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# --------------------------------------------------------------------------
# dense polynomials over F_p (1-d int64 arrays, lowest coefficient first);
# only used here for modulus search and element inversion

def _trim1(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _mul1(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return _EMPTY
    return np.convolve(a, b) % p


def _rem1(a: np.ndarray, f: np.ndarray, p: int) -> np.ndarray:
    """a mod f with f monic."""
    a = a.copy() % p
    df = len(f) - 1
    a = _trim1(a)
    while len(a) - 1 >= df:
        da = len(a) - 1
        c = a[da]
        a[da - df: da] = (a[da - df: da] - c * f[:df]) % p
        a = _trim1(a[:da])
    return a


def _gcd1(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd over F_p."""
    a, b = _trim1(a % p), _trim1(b % p)
    while len(b):
        lead = int(b[-1])
        if lead != 1:
            b = (b * pow(lead, -1, p)) % p
        a, b = b, _rem1(a, b, p)
    if len(a):
        lead = int(a[-1])
        if lead != 1:
            a = (a * pow(lead, -1, p)) % p
    return a


def _powmod1(base: np.ndarray, e: int, f: np.ndarray, p: int) -> np.ndarray:
    result = np.ones(1, dtype=_INT64)
    base = _rem1(base, f, p)
    while e:
        if e & 1:
            result = _rem1(_mul1(result, base, p), f, p)
        base = _rem1(_mul1(base, base, p), f, p)
        e >>= 1
    return result


def _irreducible1(f: np.ndarray, p: int) -> bool:
    """Rabin test: f (monic, degree k) is irreducible over F_p."""
    k = len(f) - 1
    if k == 1:
        return True
    t = np.array([0, 1], dtype=_INT64)
    x_q = _powmod1(t, p ** k, f, p)
    diff = np.zeros(max(len(x_q), 2), dtype=_INT64)
    diff[: len(x_q)] = x_q
    diff[1] = (diff[1] - 1) % p
    if len(_trim1(diff)) != 0:
        return False
    for ell in prime_divisors(k):
        g = _powmod1(t, p ** (k // ell), f, p)
        diff = np.zeros(max(len(g), 2), dtype=_INT64)
        diff[: len(g)] = g
        diff[1] = (diff[1] - 1) % p
        if len(_gcd1(diff, f, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def _canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, constant term varying fastest."""
    for n in range(p ** k):
        coeffs, m = [], n
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        f = np.array(coeffs + [1], dtype=_INT64)
        if _irreducible1(f, p):
            return tuple(int(c) for c in f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# --------------------------------------------------------------------------
# field contexts

@dataclass(frozen=True)
class FieldCtx:
    """Immutable description of F_{p^k}; build via prime_field/field/extend."""

    p: int
    k: int
    modulus: tuple[int, ...] | None  # monic, low-first, length k+1; None iff k == 1

    @property
    def order(self) -> int:
        return self.p ** self.k

    @cached_property
    def is_canonical(self) -> bool:
        if self.k == 1:
            return True
        return self.modulus == _canonical_modulus(self.p, self.k)

    @cached_property
    def mod_np(self) -> np.ndarray:
        if self.k == 1:
            return np.array([0, 1], dtype=_INT64)
        return np.array(self.modulus, dtype=_INT64)

    @cached_property
    def red_np(self) -> np.ndarray:
        """Row j = coefficient vector of t^(k+j) mod modulus, shape (k-1, k)."""
        k, p = self.k, self.p
        red = np.zeros((max(k - 1, 0), k), dtype=_INT64)
        if k == 1:
            return red
        row = (-self.mod_np[:k]) % p  # t^k
        for j in range(k - 1):
            red[j] = row
            top = row[k - 1]
            row = np.concatenate(([0], row[: k - 1]))
            if top:
                row = (row + top * red[0]) % p
        return red

    @cached_property
    def _red_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(c) for c in row) for row in self.red_np)

    # --- element constructors ---

    @cached_property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    @cached_property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    @cached_property
    def gen(self) -> "FieldElement":
        """The residue class of t; only meaningful for k >= 2."""
        if self.k == 1:
            raise ValueError("prime field has no extension generator")
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def el(self, x) -> "FieldElement":
        """Coerce an int (mod p constant), coefficient sequence, or element."""
        if isinstance(x, FieldElement):
            if x.ctx != self:
                raise ValueError("element belongs to a different field")
            return x
        if isinstance(x, (int, np.integer)):
            return FieldElement(self, (int(x) % self.p,) + (0,) * (self.k - 1))
        coeffs = tuple(int(c) % self.p for c in x)
        if len(coeffs) > self.k:
            raise ValueError("coefficient vector longer than field degree")
        return FieldElement(self, coeffs + (0,) * (self.k - len(coeffs)))

    def elements(self) -> Iterable["FieldElement"]:
        """All field elements in lexicographic coefficient order (small q only)."""
        if self.order > 1 << 22:
            raise ValueError("field too large to enumerate")
        for n in range(self.order):
            coeffs, m = [], n
            for _ in range(self.k):
                coeffs.append(m % self.p)
                m //= self.p
            # constant coefficient varies slowest here so that the stream is
            # sorted by sort_key(); n's digits are reversed on purpose
            yield FieldElement(self, tuple(reversed(coeffs)))

    def random_element(self, rng) -> "FieldElement":
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def spec_string(self) -> str:
        if self.k == 1:
            return str(self.p)
        return f"{self.p}^{self.k}/" + ",".join(str(c) for c in self.modulus)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


def _validate_p(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p in (2, 3):
        raise ExcludedCharacteristic("characteristic 2 and 3 are unsupported")
    if p > P_MAX:
        raise NotPrime(f"p = {p} exceeds the supported bound {P_MAX}")


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldCtx:
    _validate_p(p)
    return FieldCtx(p, 1, None)


@lru_cache(maxsize=None)
def field(p: int, k: int) -> FieldCtx:
    """The canonical field F_{p^k}."""
    _validate_p(p)
    if k < 1:
        raise ValueError("degree must be >= 1")
    if k == 1:
        return prime_field(p)
    return FieldCtx(p, k, _canonical_modulus(p, k))


@lru_cache(maxsize=None)
def from_modulus(p: int, modulus: tuple[int, ...]) -> FieldCtx:
    """Field with an explicit (possibly non-canonical) monic irreducible modulus."""
    _validate_p(p)
    modulus = tuple(int(c) % p for c in modulus[:-1]) + (int(modulus[-1]),)
    if modulus[-1] != 1:
        raise ValueError("modulus must be monic")
    k = len(modulus) - 1
    if k < 2:
        raise ValueError("explicit modulus needs degree >= 2")
    if not _irreducible1(np.array(modulus, dtype=_INT64), p):
        raise Reducible(f"modulus {modulus} factors over GF({p})")
    canonical = _canonical_modulus(p, k)
    if modulus == canonical:
        return field(p, k)
    return FieldCtx(p, k, modulus)


# --------------------------------------------------------------------------
# F_p[t] on plain int lists (low-first); used by element inversion

def _ltrim(v: list[int]) -> list[int]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _lmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ltrim(out)


def _lsub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i in range(len(out)):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = (x - y) % p
    return _ltrim(out)


def _ldivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Synthetic division, b nonzero; returns (quotient, remainder)."""
    a = a[:]
    db = len(b) - 1
    if len(a) < len(b):
        return [], _ltrim(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for d in range(len(a) - db - 1, -1, -1):
        c = (a[d + db] * inv_lead) % p
        if c:
            q[d] = c
            for i, bi in enumerate(b):
                a[d + i] = (a[d + i] - c * bi) % p
    return _ltrim(q), _ltrim(a)


# --------------------------------------------------------------------------
# elements

class FieldElement:
    """Immutable element of a FieldCtx, stored as a coefficient tuple."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    # -- helpers --

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("mixed-field arithmetic; embed explicitly first")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx.el(int(other))
        return NotImplemented  # type: ignore[return-value]

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def sort_key(self) -> tuple[int, ...]:
        return self.coeffs

    def vec(self) -> tuple[int, ...]:
        return self.coeffs

    def to_int(self) -> int:
        """The residue, for prime-field elements (and constants in extensions)."""
        if any(self.coeffs[1:]):
            raise ValueError("not a prime-field constant")
        return self.coeffs[0]

    # -- arithmetic --

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        p, k = ctx.p, ctx.k
        a, b = self.coeffs, other.coeffs
        if k == 1:
            return FieldElement(ctx, ((a[0] * b[0]) % p,))
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        out = conv[:k]
        red = ctx._red_rows
        for j in range(k - 1):
            c = conv[k + j]
            if c:
                row = red[j]
                for i in range(k):
                    out[i] += c * row[i]
        return FieldElement(ctx, tuple(v % p for v in out))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        ctx = self.ctx
        p = ctx.p
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        if ctx.k == 1:
            return FieldElement(ctx, (pow(self.coeffs[0], -1, p),))
        # extended Euclid in F_p[t] against the modulus
        r0, s0 = _ltrim(list(ctx.modulus)), [0]
        r1, s1 = _ltrim(list(self.coeffs)), [1]
        while len(r1) > 1:
            q, r = _ldivmod(r0, r1, p)
            s = _lsub(s0, _lmul(q, s1, p), p)
            r0, s0, r1, s1 = r1, s1, r, s
            if not r1:
                raise ZeroDivisionError("element not invertible")
        c = pow(r1[0], -1, p)
        out = [(c * v) % p for v in s1]
        out += [0] * (ctx.k - len(out))
        return FieldElement(ctx, tuple(out[: ctx.k]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.ctx.el(other) * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def multiplicative_order(self) -> int:
        if self.is_zero:
            raise ValueError("zero has no multiplicative order")
        n = self.ctx.order - 1
        order = n
        for ell in prime_divisors(n):
            while order % ell == 0 and (self ** (order // ell)) == self.ctx.one:
                order //= ell
        return order

    # -- comparisons --

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.ctx.el(int(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.ctx.modulus, self.coeffs))

    def __repr__(self):
        if self.ctx.k == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def frobenius(a: FieldElement, times: int = 1) -> FieldElement:
    return a ** (a.ctx.p ** times)


# --------------------------------------------------------------------------
# extensions, composita, embeddings

def extend(ctx: FieldCtx, modulus_poly) -> FieldCtx:
    """Extend ctx by an irreducible polynomial; returns the *canonical* field
    of degree ctx.k * deg, flattening the tower.

    modulus_poly is a upoly.UPoly over ctx (monic, degree >= 1).
    """
    from . import upoly

    f = modulus_poly
    if f.ctx != ctx:
        raise ValueError("modulus polynomial is over a different field")
    d = f.degree
    if d < 1:
        raise ValueError("modulus must have degree >= 1")
    if not f.is_monic:
        raise ValueError("modulus must be monic")
    if d == 1:
        return ctx
    if not upoly.is_irreducible(f):
        raise Reducible(f"{f} factors over {ctx}")
    return field(ctx.p, ctx.k * d)


def compositum(c1: FieldCtx, c2: FieldCtx) -> FieldCtx:
    if c1.p != c2.p:
        raise NoEmbedding("different characteristics have no compositum")
    return field(c1.p, math.lcm(c1.k, c2.k))


@lru_cache(maxsize=None)
def _embedding_root(src: FieldCtx, dst: FieldCtx) -> FieldElement:
    """Image of src's generator in dst.

    For canonical fields the choice is filtered to agree with the embeddings
    already fixed on every maximal subfield, then the lexicographically least
    survivor is taken; this makes all canonical towers commute.
    """
    from . import upoly

    if src == dst:
        return dst.gen
    coeffs = [dst.el(c) for c in (src.modulus or (0, 1))]
    f = upoly.UPoly(dst, coeffs)
    cands = [r for r, _ in upoly.roots_with_multiplicity(f)]
    if not cands:
        raise NoEmbedding(f"modulus of {src} has no root in {dst}")
    if src.is_canonical and dst.is_canonical:
        for ell in prime_divisors(src.k):
            d = src.k // ell
            if d == 1:
                continue
            sub = field(src.p, d)
            u = _embedding_root(sub, src)   # in src
            v = _embedding_root(sub, dst)   # in dst
            cands = [r for r in cands if _eval_fp_coeffs(u.coeffs, r) == v]
        if not cands:
            raise AssertionError("no tower-compatible embedding root survived")
    return min(cands, key=lambda r: r.sort_key())


def _eval_fp_coeffs(coeffs: Sequence[int], x: FieldElement) -> FieldElement:
    """Evaluate sum coeffs[i] * x^i with integer (F_p) coefficients."""
    acc = x.ctx.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _embedding_matrix(src: FieldCtx, dst: FieldCtx) -> np.ndarray:
    r = _embedding_root(src, dst)
    rows = []
    acc = dst.one
    for _ in range(src.k):
        rows.append(acc.coeffs)
        acc = acc * r
    return np.array(rows, dtype=_INT64)


def embed(src: FieldCtx, dst: FieldCtx, a: FieldElement) -> FieldElement:
    """Embed a in dst along the fixed embedding src -> dst."""
    if a.ctx != src:
        raise ValueError("element is not over the source field")
    if src.p != dst.p:
        raise NoEmbedding("different characteristics")
    if dst.k % src.k != 0:
        raise NoEmbedding(f"degree {src.k} does not divide {dst.k}")
    if src == dst:
        return a
    if src.k == 1:
        return dst.el(a.coeffs[0])
    m = _embedding_matrix(src, dst)
    out = (np.array(a.coeffs, dtype=_INT64) @ m) % src.p
    return FieldElement(dst, tuple(int(v) for v in out))


# --------------------------------------------------------------------------
# nth roots

def find_nth_root(
    ctx: FieldCtx,
    a: FieldElement | int,
    n: int,
    primitive: bool = False,
    cap: int | None = None,
) -> tuple[FieldCtx, FieldElement]:
    """Smallest-degree extension with an nth root of a, and the root itself.

    With primitive=True, a must be 1 and the root returned has exact
    multiplicative order n.  Deterministic: among valid roots the one with
    lexicographically least coefficient tuple is returned.  Raises
    DegreeOverflow when the needed extension exceeds the cap (absolute
    degree over F_p; default DEFAULT_DEGREE_CAP).
    """
    from . import upoly

    cap = DEFAULT_DEGREE_CAP if cap is None else cap
    a = ctx.el(a)
    if n < 1:
        raise ValueError("n must be positive")
    p, q = ctx.p, ctx.order

    if primitive:
        if a != ctx.one:
            raise ValueError("primitive roots are roots of unity; a must be 1")
        if n % p == 0:
            raise ValueError(f"no primitive {n}th roots of unity in characteristic {p}")
        d = 1
        while (q ** d - 1) % n != 0:
            d += 1
            if ctx.k * d > cap:
                raise DegreeOverflow(
                    f"primitive {n}th root needs degree {ctx.k * d} > cap {cap}"
                )
        dst = ctx if d == 1 else field(p, ctx.k * d)
        one = dst.one
        f = upoly.UPoly(dst, [-one] + [dst.zero] * (n - 1) + [one])  # t^n - 1
        roots = [r for r, _ in upoly.roots_with_multiplicity(f)]
        prim = [r for r in roots if r.multiplicative_order() == n]
        if not prim:
            raise AssertionError("expected a primitive root in the splitting field")
        return dst, min(prim, key=lambda r: r.sort_key())

    f = upoly.UPoly(ctx, [-a] + [ctx.zero] * (n - 1) + [ctx.one])  # t^n - a
    degs = upoly.factor_degrees(f)
    d = min(degs)
    if ctx.k * d > cap:
        raise DegreeOverflow(f"{n}th root of {a} needs degree {ctx.k * d} > cap {cap}")
    dst = ctx if d == 1 else field(p, ctx.k * d)
    if d == 1:
        g = f
    else:
        a2 = embed(ctx, dst, a)
        g = upoly.UPoly(dst, [-a2] + [dst.zero] * (n - 1) + [dst.one])
    roots = [r for r, _ in upoly.roots_with_multiplicity(g)]
    roots = [r for r in roots if r.ctx == dst]
    if not roots:
        raise AssertionError("factor-degree analysis promised a root")
    return dst, min(roots, key=lambda r: r.sort_key())


# --------------------------------------------------------------------------
# field spec strings:  "p"  or  "p^k/c0,c1,...,ck"  (modulus low-first, monic)

def parse_field_spec(spec: str) -> FieldCtx:
    spec = spec.strip()
    if "^" not in spec:
        return prime_field(int(spec))
    head, _, tail = spec.partition("/")
    p_str, _, k_str = head.partition("^")
    p, k = int(p_str), int(k_str)
    if not tail:
        return field(p, k)
    coeffs = tuple(int(c) for c in tail.split(","))
    if len(coeffs) != k + 1:
        raise ValueError(f"modulus must have {k + 1} coefficients")
    return from_modulus(p, coeffs)


def format_field_spec(ctx: FieldCtx) -> str:
    return ctx.spec_string()
