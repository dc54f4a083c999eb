"""numba kernels: scalar loops compiled with @njit.

Every kernel here has a line-for-line numpy twin in _kernels_numpy; the two
must return identical arrays in identical order.  Field elements travel as
int64 coefficient vectors of length k with a precomputed reduction matrix
(row j = t^(k+j) mod the field modulus), except the projective-plane scan,
which works in discrete-log codes (0 is zero, v is g^(v-1) otherwise) with a
Zech table for addition.  All integers stay below 2^63: p < 2^20 and k <= 48
keep every convolution sum under k * p^2 < 2^51.
"""

import numpy as np
from numba import njit

BACKEND_NAME = "numba"


@njit(cache=True)
def _fmul(a, b, red, p, conv, out):
    k = a.shape[0]
    w = 2 * k - 1
    for i in range(w):
        conv[i] = 0
    for i in range(k):
        ai = a[i]
        if ai != 0:
            for j in range(k):
                conv[i + j] += ai * b[j]
    for i in range(w):
        conv[i] %= p
    for i in range(k):
        out[i] = conv[i]
    for j in range(k - 1):
        c = conv[k + j]
        if c != 0:
            for i in range(k):
                out[i] = (out[i] + c * red[j, i]) % p


@njit(cache=True)
def _is_zero(a):
    for i in range(a.shape[0]):
        if a[i] != 0:
            return False
    return True


@njit(cache=True)
def filter_frame_candidates(sa, sb, adj_src, frame_pt, cands, test_idx,
                            allowed, red, p):
    """Survivor mask over candidate frame images.

    sa, sb: (n, 3, k) support coordinates; adj_src: (3, 3, k) adjugate of the
    weighted source-frame matrix; frame_pt unused here (kept for signature
    parity); cands: (C, 4) indices into sb; test_idx: (T,) indices into sa;
    allowed: (T, nB) uint8 weight-compatibility; red: (k-1, k).

    A candidate survives when its four points are in general position and
    the induced map sends every test point onto an allowed target point.
    """
    C = cands.shape[0]
    nB = sb.shape[0]
    T = test_idx.shape[0]
    k = sa.shape[2]
    w = 2 * k - 1
    conv = np.zeros(w, dtype=np.int64)
    t1 = np.zeros(k, dtype=np.int64)
    t2 = np.zeros(k, dtype=np.int64)
    adj = np.zeros((3, 3, k), dtype=np.int64)
    cvec = np.zeros((3, k), dtype=np.int64)
    ndst = np.zeros((3, 3, k), dtype=np.int64)
    m = np.zeros((3, 3, k), dtype=np.int64)
    u = np.zeros((3, k), dtype=np.int64)
    det = np.zeros(k, dtype=np.int64)
    mask = np.zeros(C, dtype=np.uint8)

    for ci in range(C):
        i1, i2, i3, i4 = cands[ci, 0], cands[ci, 1], cands[ci, 2], cands[ci, 3]
        ok = True
        # adjugate of the matrix with columns sb[i1], sb[i2], sb[i3]
        for r in range(3):
            r1 = (r + 1) % 3
            r2 = (r + 2) % 3
            for c in range(3):
                c1 = (c + 1) % 3
                c2 = (c + 2) % 3
                # adj[c][r] = base[r1][c1] base[r2][c2] - base[r1][c2] base[r2][c1]
                # base[i][j] = sb[col_j][i]
                j1 = cands[ci, c1]
                j2 = cands[ci, c2]
                _fmul(sb[j1, r1], sb[j2, r2], red, p, conv, t1)
                _fmul(sb[j2, r1], sb[j1, r2], red, p, conv, t2)
                for e in range(k):
                    adj[c, r, e] = (t1[e] - t2[e]) % p
        # det via first row expansion: sum_j base[0][j] adj[j][0]
        for e in range(k):
            det[e] = 0
        for j in range(3):
            jj = cands[ci, j]
            _fmul(sb[jj, 0], adj[j, 0], red, p, conv, t1)
            for e in range(k):
                det[e] = (det[e] + t1[e]) % p
        if _is_zero(det):
            continue
        # weights c = adj . P4
        for r in range(3):
            for e in range(k):
                cvec[r, e] = 0
            for j in range(3):
                _fmul(adj[r, j], sb[i4, j], red, p, conv, t1)
                for e in range(k):
                    cvec[r, e] = (cvec[r, e] + t1[e]) % p
            if _is_zero(cvec[r]):
                ok = False
                break
        if not ok:
            continue
        # N_dst[i][j] = cvec[j] * P_j[i]
        for i in range(3):
            for j in range(3):
                jj = cands[ci, j]
                _fmul(cvec[j], sb[jj, i], red, p, conv, ndst[i, j])
        # M = N_dst @ adj_src
        for i in range(3):
            for j in range(3):
                for e in range(k):
                    m[i, j, e] = 0
                for l in range(3):
                    _fmul(ndst[i, l], adj_src[l, j], red, p, conv, t1)
                    for e in range(k):
                        m[i, j, e] = (m[i, j, e] + t1[e]) % p
        # test points
        for t in range(T):
            src = sa[test_idx[t]]
            for i in range(3):
                for e in range(k):
                    u[i, e] = 0
                for j in range(3):
                    _fmul(m[i, j], src[j], red, p, conv, t1)
                    for e in range(k):
                        u[i, e] = (u[i, e] + t1[e]) % p
            hit = False
            for j in range(nB):
                if allowed[t, j] == 0:
                    continue
                prop = True
                for a in range(3):
                    b = (a + 1) % 3
                    _fmul(u[a], sb[j, b], red, p, conv, t1)
                    _fmul(u[b], sb[j, a], red, p, conv, t2)
                    for e in range(k):
                        if (t1[e] - t2[e]) % p != 0:
                            prop = False
                            break
                    if not prop:
                        break
                if prop:
                    hit = True
                    break
            if not hit:
                ok = False
                break
        if ok:
            mask[ci] = 1
    return mask


@njit(cache=True)
def _code_mul(a, b, qm1):
    if a == 0 or b == 0:
        return 0
    return (a - 1 + b - 1) % qm1 + 1


@njit(cache=True)
def _code_add(a, b, zech, qm1):
    if a == 0:
        return b
    if b == 0:
        return a
    d = (b - a) % qm1
    zc = zech[d]
    if zc == 0:
        return 0
    return (a - 1 + zc - 1) % qm1 + 1


@njit(cache=True)
def _pow_code(a, e, qm1):
    if e == 0:
        return 1
    if a == 0:
        return 0
    return ((a - 1) * e) % qm1 + 1


@njit(cache=True)
def p2_zero_scan(f1, f2, f3, h1, h2, h3, zech, q):
    """Common zeros of two curves on P^2(F_q) in discrete-log codes.

    f1/h1: (d+1, d+1) chart (1, y, z) coefficient codes indexed [y-exp, z-exp];
    f2/h2: (d+1,) chart (0, 1, z); f3/h3: chart point (0, 0, 1).
    Returns (m, 3) point codes, charts in order, y then z ascending by code.
    """
    qm1 = q - 1
    d1 = f1.shape[0] - 1
    e1 = h1.shape[0] - 1
    out = np.zeros((6 * q + 16, 3), dtype=np.int64)
    cnt = 0
    acoef = np.zeros(d1 + 1, dtype=np.int64)
    ypow = np.zeros(max(d1, e1) + 1, dtype=np.int64)
    for ycode in range(q):
        ypow[0] = 1
        for i in range(1, ypow.shape[0]):
            ypow[i] = _code_mul(ypow[i - 1], ycode, qm1)
        for c in range(d1 + 1):
            acc = 0
            for b in range(d1 + 1 - c):
                acc = _code_add(acc, _code_mul(f1[b, c], ypow[b], qm1),
                                zech, qm1)
            acoef[c] = acc
        for zcode in range(q):
            val = acoef[d1]
            for c in range(d1 - 1, -1, -1):
                val = _code_add(_code_mul(val, zcode, qm1), acoef[c], zech, qm1)
            if val != 0:
                continue
            hval = 0
            for b in range(e1 + 1):
                for c in range(e1 + 1 - b):
                    term = _code_mul(h1[b, c], ypow[b], qm1)
                    term = _code_mul(term, _pow_code(zcode, c, qm1), qm1)
                    hval = _code_add(hval, term, zech, qm1)
            if hval == 0:
                out[cnt, 0] = 1
                out[cnt, 1] = ycode
                out[cnt, 2] = zcode
                cnt += 1
    d2 = f2.shape[0] - 1
    e2 = h2.shape[0] - 1
    for zcode in range(q):
        val = f2[d2]
        for c in range(d2 - 1, -1, -1):
            val = _code_add(_code_mul(val, zcode, qm1), f2[c], zech, qm1)
        if val != 0:
            continue
        hval = h2[e2]
        for c in range(e2 - 1, -1, -1):
            hval = _code_add(_code_mul(hval, zcode, qm1), h2[c], zech, qm1)
        if hval == 0:
            out[cnt, 0] = 0
            out[cnt, 1] = 1
            out[cnt, 2] = zcode
            cnt += 1
    if f3 == 0 and h3 == 0:
        out[cnt, 0] = 0
        out[cnt, 1] = 0
        out[cnt, 2] = 1
        cnt += 1
    return out[:cnt]


@njit(cache=True)
def pgl3_scan(q, inv_table, a_pts, b_table):
    """All canonical PGL_3(F_q) matrices mapping every point of a_pts into
    the membership table of canonical point codes (x q^2 + y q + z).

    Enumerates matrices with first nonzero entry 1 at position lead in
    {0, 1, 2}, remaining entries a base-q code read most significant first.
    Returns (m, 9) survivor matrices in enumeration order.
    """
    out = np.zeros((4096, 9), dtype=np.int64)
    cap = 4096
    cnt = 0
    nA = a_pts.shape[0]
    m = np.zeros(9, dtype=np.int64)
    for lead in range(3):
        total = 1
        for _ in range(8 - lead):
            total *= q
        for code in range(total):
            for i in range(lead):
                m[i] = 0
            m[lead] = 1
            rem = code
            for i in range(8 - lead):
                power = 8 - lead - 1 - i
                div = 1
                for _ in range(power):
                    div *= q
                m[lead + 1 + i] = (rem // div) % q
            det = (
                m[0] * (m[4] * m[8] - m[5] * m[7])
                - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
            ) % q
            if det == 0:
                continue
            ok = True
            for a in range(nA):
                x = (m[0] * a_pts[a, 0] + m[1] * a_pts[a, 1]
                     + m[2] * a_pts[a, 2]) % q
                y = (m[3] * a_pts[a, 0] + m[4] * a_pts[a, 1]
                     + m[5] * a_pts[a, 2]) % q
                z = (m[6] * a_pts[a, 0] + m[7] * a_pts[a, 1]
                     + m[8] * a_pts[a, 2]) % q
                if x != 0:
                    s = inv_table[x]
                    x, y, z = 1, (y * s) % q, (z * s) % q
                elif y != 0:
                    s = inv_table[y]
                    y, z = 1, (z * s) % q
                else:
                    z = 1
                if b_table[(x * q + y) * q + z] == 0:
                    ok = False
                    break
            if ok:
                if cnt == cap:
                    bigger = np.zeros((cap * 2, 9), dtype=np.int64)
                    bigger[:cap] = out
                    out = bigger
                    cap *= 2
                for i in range(9):
                    out[cnt, i] = m[i]
                cnt += 1
    return out[:cnt]
