"""Pure-numpy kernels: batched twins of the numba kernels.

Same inputs, same outputs, same ordering.  Batching replaces the candidate /
code loops with whole-array arithmetic; the per-coefficient loops over k stay
in Python because k <= 48.  The parity tests in the suite compare these
against the compiled versions element for element.
"""

import numpy as np

BACKEND_NAME = "numpy"

_I64 = np.int64


def _bmul(a, b, red, p):
    """Field product over trailing axis: a, b (..., k) -> (..., k)."""
    k = a.shape[-1]
    if k == 1:
        return (a * b) % p
    conv = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
                    + (2 * k - 1,), dtype=_I64)
    for i in range(k):
        conv[..., i:i + k] += a[..., i:i + 1] * b
    conv %= p
    return (conv[..., :k] + conv[..., k:] @ red) % p


def _bzero(a):
    return ~a.any(axis=-1)


def filter_frame_candidates(sa, sb, adj_src, frame_pt, cands, test_idx,
                            allowed, red, p):
    C = cands.shape[0]
    nB = sb.shape[0]
    k = sa.shape[2]
    mask = np.ones(C, dtype=bool)
    pts = sb[cands]  # (C, 4, 3, k)

    def base(i, j):
        # base matrix entry [i][j] = coordinate i of candidate column j
        return pts[:, j, i, :]

    adj = [[None] * 3 for _ in range(3)]
    for r in range(3):
        r1, r2 = (r + 1) % 3, (r + 2) % 3
        for c in range(3):
            c1, c2 = (c + 1) % 3, (c + 2) % 3
            adj[c][r] = (_bmul(base(r1, c1), base(r2, c2), red, p)
                         - _bmul(base(r1, c2), base(r2, c1), red, p)) % p
    det = np.zeros((C, k), dtype=_I64)
    for j in range(3):
        det = (det + _bmul(base(0, j), adj[j][0], red, p)) % p
    mask &= ~_bzero(det)
    cvec = []
    for r in range(3):
        acc = np.zeros((C, k), dtype=_I64)
        for j in range(3):
            acc = (acc + _bmul(adj[r][j], pts[:, 3, j, :], red, p)) % p
        mask &= ~_bzero(acc)
        cvec.append(acc)
    ndst = [[_bmul(cvec[j], pts[:, j, i, :], red, p) for j in range(3)]
            for i in range(3)]
    m = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = np.zeros((C, k), dtype=_I64)
            for l in range(3):
                acc = (acc + _bmul(ndst[i][l],
                                   adj_src[l, j][None, :], red, p)) % p
            m[i][j] = acc
    for t in range(test_idx.shape[0]):
        src = sa[test_idx[t]]  # (3, k)
        u = []
        for i in range(3):
            acc = np.zeros((C, k), dtype=_I64)
            for j in range(3):
                acc = (acc + _bmul(m[i][j], src[j][None, :], red, p)) % p
            u.append(acc)
        found = np.zeros(C, dtype=bool)
        for j in range(nB):
            if not allowed[t, j]:
                continue
            v = sb[j]
            prop = np.ones(C, dtype=bool)
            for a in range(3):
                b = (a + 1) % 3
                diff = (_bmul(u[a], v[b][None, :], red, p)
                        - _bmul(u[b], v[a][None, :], red, p)) % p
                prop &= _bzero(diff)
            found |= prop
        mask &= found
    return mask.astype(np.uint8)


def _code_mul_arr(a, b, qm1):
    out = (a - 1 + b - 1) % qm1 + 1
    return np.where((a == 0) | (b == 0), 0, out)


def _code_add_arr(a, b, zech, qm1):
    d = (b - a) % qm1
    zc = zech[d]
    mixed = np.where(zc == 0, 0, (a - 1 + zc - 1) % qm1 + 1)
    out = np.where(a == 0, b, np.where(b == 0, a, mixed))
    return out


def _pow_code_arr(a, e, qm1):
    if e == 0:
        return np.ones_like(a)
    return np.where(a == 0, 0, ((a - 1) * e) % qm1 + 1)


def p2_zero_scan(f1, f2, f3, h1, h2, h3, zech, q):
    qm1 = q - 1
    d1 = f1.shape[0] - 1
    e1 = h1.shape[0] - 1
    zcodes = np.arange(q, dtype=_I64)
    zpows_f = [_pow_code_arr(zcodes, c, qm1) for c in range(d1 + 1)]
    zpows_h = [_pow_code_arr(zcodes, c, qm1) for c in range(e1 + 1)]
    rows = []
    for ycode in range(q):
        yarr = np.full(1, ycode, dtype=_I64)
        ypow = [np.ones(1, dtype=_I64)]
        for _ in range(max(d1, e1)):
            ypow.append(_code_mul_arr(ypow[-1], yarr, qm1))
        val = np.zeros(q, dtype=_I64)
        for c in range(d1 + 1):
            acoef = np.zeros(1, dtype=_I64)
            for b in range(d1 + 1 - c):
                acoef = _code_add_arr(
                    acoef, _code_mul_arr(np.full(1, f1[b, c], dtype=_I64),
                                         ypow[b], qm1), zech, qm1)
            val = _code_add_arr(val, _code_mul_arr(
                np.broadcast_to(acoef, (q,)), zpows_f[c], qm1), zech, qm1)
        hits = np.nonzero(val == 0)[0]
        if hits.size:
            hz = np.zeros(hits.size, dtype=_I64)
            zs = zcodes[hits]
            for b in range(e1 + 1):
                ypb = ypow[b][0]
                for c in range(e1 + 1 - b):
                    term = _code_mul_arr(
                        np.full(hits.size, h1[b, c], dtype=_I64),
                        np.full(hits.size, ypb, dtype=_I64), qm1)
                    term = _code_mul_arr(term, zpows_h[c][zs], qm1)
                    hz = _code_add_arr(hz, term, zech, qm1)
            good = zs[hz == 0]
            for z in good:
                rows.append((1, ycode, int(z)))
    d2 = f2.shape[0] - 1
    e2 = h2.shape[0] - 1
    val = np.zeros(q, dtype=_I64)
    for c in range(d2 + 1):
        val = _code_add_arr(val, _code_mul_arr(
            np.full(q, f2[c], dtype=_I64),
            _pow_code_arr(zcodes, c, qm1), qm1), zech, qm1)
    hits = np.nonzero(val == 0)[0]
    if hits.size:
        hval = np.zeros(hits.size, dtype=_I64)
        zs = zcodes[hits]
        for c in range(e2 + 1):
            hval = _code_add_arr(hval, _code_mul_arr(
                np.full(hits.size, h2[c], dtype=_I64),
                _pow_code_arr(zs, c, qm1), qm1), zech, qm1)
        for z in zs[hval == 0]:
            rows.append((0, 1, int(z)))
    if f3 == 0 and h3 == 0:
        rows.append((0, 0, 1))
    if not rows:
        return np.zeros((0, 3), dtype=_I64)
    return np.array(rows, dtype=_I64)


def pgl3_scan(q, inv_table, a_pts, b_table):
    out = []
    chunk = 1 << 18
    for lead in range(3):
        total = q ** (8 - lead)
        for start in range(0, total, chunk):
            codes = np.arange(start, min(start + chunk, total), dtype=_I64)
            n = codes.shape[0]
            m = np.zeros((n, 9), dtype=_I64)
            m[:, lead] = 1
            rem = codes.copy()
            for i in range(8 - lead - 1, -1, -1):
                m[:, lead + 1 + i] = rem % q
                rem //= q
            det = (
                m[:, 0] * (m[:, 4] * m[:, 8] - m[:, 5] * m[:, 7])
                - m[:, 1] * (m[:, 3] * m[:, 8] - m[:, 5] * m[:, 6])
                + m[:, 2] * (m[:, 3] * m[:, 7] - m[:, 4] * m[:, 6])
            ) % q
            alive = det != 0
            m = m[alive]
            for a in range(a_pts.shape[0]):
                if not m.shape[0]:
                    break
                x = (m[:, 0] * a_pts[a, 0] + m[:, 1] * a_pts[a, 1]
                     + m[:, 2] * a_pts[a, 2]) % q
                y = (m[:, 3] * a_pts[a, 0] + m[:, 4] * a_pts[a, 1]
                     + m[:, 5] * a_pts[a, 2]) % q
                z = (m[:, 6] * a_pts[a, 0] + m[:, 7] * a_pts[a, 1]
                     + m[:, 8] * a_pts[a, 2]) % q
                sx = inv_table[x]
                use_x = x != 0
                use_y = (~use_x) & (y != 0)
                sy = inv_table[y]
                nx = np.where(use_x, 1, 0)
                ny = np.where(use_x, (y * sx) % q, np.where(use_y, 1, 0))
                nz = np.where(use_x, (z * sx) % q,
                              np.where(use_y, (z * sy) % q, 1))
                keep = b_table[(nx * q + ny) * q + nz] != 0
                m = m[keep]
            if m.shape[0]:
                out.append(m)
    if not out:
        return np.zeros((0, 9), dtype=_I64)
    return np.concatenate(out, axis=0)
