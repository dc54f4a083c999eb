"""Univariate layer: exact division, gcd, roots, factor degrees, splitting.

The reference implementations in this file are deliberately naive
(schoolbook loops over FieldElement) so the vectorized paths in upoly are
checked against something independently simple.
"""

import random

import pytest

from flexline import errors
from flexline.gf import embed, field, prime_field
from flexline.upoly import (
    UPoly,
    factor_degrees,
    gcd,
    is_irreducible,
    roots_with_multiplicity,
    splitting_roots,
)


def ref_mul(f, g):
    ctx = f.ctx
    fc, gc = f.coeffs(), g.coeffs()
    if not fc or not gc:
        return UPoly(ctx, [])
    out = [ctx.zero] * (len(fc) + len(gc) - 1)
    for i, a in enumerate(fc):
        for j, b in enumerate(gc):
            out[i + j] = out[i + j] + a * b
    return UPoly(ctx, out)


def ref_divmod(f, g):
    ctx = f.ctx
    a = f.coeffs()
    b = g.coeffs()
    inv_lead = b[-1].inv()
    q = [ctx.zero] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b):
        c = a[-1] * inv_lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        while a and a[-1].is_zero:
            a.pop()
        if not a:
            break
    return UPoly(ctx, q), UPoly(ctx, a)


def rand_poly(ctx, deg, rng, monic=False):
    coeffs = [ctx.el(tuple(rng.randrange(ctx.p) for _ in range(ctx.k)))
              for _ in range(deg + 1)]
    if monic:
        coeffs[-1] = ctx.one
    elif all(c.is_zero for c in coeffs):
        coeffs[-1] = ctx.one
    return UPoly(ctx, coeffs)


def test_construction_and_eval():
    F13 = prime_field(13)
    f = UPoly(F13, [1, 0, 1])  # t^2 + 1
    assert f.degree == 2 and f.is_monic
    assert f(F13.el(5)) == F13.el(0)
    assert f(F13.el(2)) == F13.el(5)
    assert f.coeff(0) == 1 and f.coeff(1) == 0 and f.coeff(5) == 0
    assert UPoly(F13, [0, 0, 0]).is_zero
    assert UPoly(F13, [3]).degree == 0
    g = f.derivative()
    assert g == UPoly(F13, [0, 2])
    assert UPoly(F13, [4]).derivative().is_zero


def test_mul_divmod_match_reference():
    rng = random.Random(20240812)
    for ctx in (prime_field(13), field(13, 2), field(7, 3)):
        for _ in range(15):
            f = rand_poly(ctx, rng.randrange(0, 9), rng)
            g = rand_poly(ctx, rng.randrange(0, 5), rng, monic=True)
            assert f * g == ref_mul(f, g)
            q, r = ref_divmod(f, g)
            assert f // g == q
            assert f % g == r
            assert q * g + r == f
            assert r.is_zero or r.degree < g.degree


def test_gcd_properties():
    rng = random.Random(5)
    ctx = field(13, 2)
    for _ in range(10):
        f = rand_poly(ctx, 4, rng, monic=True)
        g = rand_poly(ctx, 3, rng, monic=True)
        h = rand_poly(ctx, 2, rng, monic=True)
        d = gcd(f * h, g * h)
        assert d.is_monic
        assert (f * h % d).is_zero and (g * h % d).is_zero
        assert (d % h).is_zero  # common factor h divides the gcd
    assert gcd(UPoly(ctx, []), UPoly(ctx, [2, 1])).is_monic
    with pytest.raises(ValueError):
        gcd(UPoly(prime_field(13), [1]), UPoly(prime_field(7), [1]))


def test_roots_simple():
    F13 = prime_field(13)
    f = UPoly(F13, [-1, 0, 1])  # t^2 - 1
    assert roots_with_multiplicity(f) == [(F13.el(1), 1), (F13.el(12), 1)]
    g = UPoly(F13, [1, 2, 1])  # (t+1)^2
    assert roots_with_multiplicity(g) == [(F13.el(12), 2)]
    # t^2 - 2 has no roots in F13 (squares: 1,3,4,9,10,12)
    assert roots_with_multiplicity(UPoly(F13, [-2, 0, 1])) == []
    assert roots_with_multiplicity(UPoly(F13, [7])) == []
    with pytest.raises(ValueError):
        roots_with_multiplicity(UPoly(F13, []))


def test_roots_random_reconstruction():
    rng = random.Random(424242)
    for ctx in (prime_field(13), field(5, 2), field(13, 2)):
        for _ in range(6):
            # build a polynomial from known roots and one rootless factor
            chosen = {}
            for _ in range(rng.randrange(1, 4)):
                r = ctx.el(tuple(rng.randrange(ctx.p) for _ in range(ctx.k)))
                chosen[r] = chosen.get(r, 0) + rng.randrange(1, 3)
            f = UPoly(ctx, [ctx.one])
            for r, m in chosen.items():
                for _ in range(m):
                    f = f * UPoly.t_minus(ctx, r)
            found = roots_with_multiplicity(f)
            assert dict(found) == chosen
            keys = [r.sort_key() for r, _ in found]
            assert keys == sorted(keys)


def test_roots_wild_multiplicity():
    # t^13 - 1 = (t-1)^13 in characteristic 13; derivative tricks would
    # miscount here, repeated exact division must not
    F13 = prime_field(13)
    f = UPoly(F13, [-1] + [0] * 12 + [1])
    assert roots_with_multiplicity(f) == [(F13.el(1), 13)]
    g = f * UPoly.t_minus(F13, F13.el(3))
    assert roots_with_multiplicity(g) == [(F13.el(1), 13), (F13.el(3), 1)]


def test_factor_degrees_frozen():
    F13, F17, F7 = prime_field(13), prime_field(17), prime_field(7)
    assert factor_degrees(UPoly(F13, [1, 0, 0, 0, 1])) == [2]   # t^4+1
    assert factor_degrees(UPoly(F17, [1, 0, 0, 0, 1])) == [1]
    assert factor_degrees(UPoly(F13, [-1, 0, 0, 0, 0, 0, 1])) == [1]  # t^6-1
    assert factor_degrees(UPoly(F7, [-2, 0, 0, 1])) == [3]      # t^3-2
    assert factor_degrees(UPoly(F13, [3])) == []
    # non-squarefree mixed input: (t^2-2)^2 (t-1)^3
    f = UPoly(F13, [-2, 0, 1])
    g = f * f * UPoly.t_minus(F13, F13.el(1)) ** 3 if hasattr(UPoly, "__pow__") else None
    lin = UPoly.t_minus(F13, F13.el(1))
    g = f * f * lin * lin * lin
    assert factor_degrees(g) == [1, 2]


def test_is_irreducible():
    F13, F7 = prime_field(13), prime_field(7)
    assert is_irreducible(UPoly(F13, [-2, 0, 1]))        # t^2-2
    assert not is_irreducible(UPoly(F13, [-1, 0, 1]))    # t^2-1
    assert is_irreducible(UPoly(F7, [-2, 0, 0, 1]))      # t^3-2
    assert not is_irreducible(UPoly(F7, [6, 0, 0, 1]))
    assert is_irreducible(UPoly(F13, [5, 1]))
    assert not is_irreducible(UPoly(F13, [4]))
    # over an extension field
    F169 = field(13, 2)
    s = F169.el((0, 5))  # a square root of 2
    assert not is_irreducible(UPoly(F169, [-s * s, 0, 1]))
    # brute cross-check on a sample of monic cubics over F7
    rng = random.Random(11)
    for _ in range(20):
        f = rand_poly(F7, 3, rng, monic=True)
        has_lin = any(not f(F7.el(x)).is_zero is True and f(F7.el(x)).is_zero
                      for x in range(7))
        # a cubic is irreducible iff it has no root
        assert is_irreducible(f) == (not any(f(F7.el(x)).is_zero for x in range(7)))


def test_splitting_roots():
    F13 = prime_field(13)
    dst, rts = splitting_roots(UPoly(F13, [-2, 0, 1]), cap=8)
    assert dst is field(13, 2)
    assert [m for _, m in rts] == [1, 1]
    assert all(r * r == embed(F13, dst, F13.el(2)) for r, _ in rts)
    # already split: stays in the same field
    dst, rts = splitting_roots(UPoly(F13, [-1, 0, 1]), cap=8)
    assert dst is F13 and len(rts) == 2
    # mixed degrees: lcm of factor degrees
    f = UPoly(F13, [-2, 0, 1]) * UPoly(F13, [1, 0, 0, 0, 1])  # deg pattern {2}
    dst, rts = splitting_roots(f, cap=8)
    assert dst is field(13, 2) and sum(m for _, m in rts) == 6
    F7 = prime_field(7)
    dst, rts = splitting_roots(UPoly(F7, [-2, 0, 0, 1]), cap=8)
    assert dst is field(7, 3) and sum(m for _, m in rts) == 3
    with pytest.raises(errors.DegreeOverflow):
        splitting_roots(UPoly(F7, [-2, 0, 0, 1]), cap=2)
    # multiplicities survive the lift
    g = UPoly(F13, [-2, 0, 1]) * UPoly(F13, [-2, 0, 1])
    dst, rts = splitting_roots(g, cap=8)
    assert [m for _, m in rts] == [2, 2]


def test_determinism():
    ctx = field(13, 2)
    rng = random.Random(77)
    f = rand_poly(ctx, 6, rng, monic=True)
    g = rand_poly(ctx, 6, rng, monic=True)
    h = f * g * g
    first = roots_with_multiplicity(h)
    for _ in range(3):
        assert roots_with_multiplicity(h) == first
