"""Timing comparison of the two kernel backends on the hot scans.

Workload 1 is the frame-candidate filter as the transporter search issues it:
the 12-line configuration at characteristic 13 searched against itself, all
11880 ordered frame images in one batch (tiled up for stable timing).
Workload 2 is the brute projective-plane scan at q = 7: all of PGL_3(F_7)
filtered against an 8-point orbit constraint.

Both backends receive identical arrays and must return identical outputs;
the script verifies that before timing.  Run:

    python benchmarks/bench_kernels.py [--repeat N] [--tile T]
"""

import argparse
import itertools
import random
import time

import numpy as np

from flexline import backend, catalog, config, curve, gf, proj
from flexline import _kernels_numpy

try:
    from flexline import _kernels_numba
except ImportError:
    _kernels_numba = None


def frame_filter_workload(tile):
    spec = catalog.CurveSpec("K1", 13)
    q, _ = catalog.build(spec)
    E, recs = curve.inflection_scheme(q)
    conf = config.from_flexes(E, recs)
    pts = conf.support
    frame_idx = next(
        c for c in itertools.combinations(range(len(pts)), 4)
        if proj.in_general_position([pts[i] for i in c]))
    frame_pts = [pts[i] for i in frame_idx]

    weights = [conf.entries[p] for p in pts]
    pools = [[j for j, w in enumerate(weights)
              if w == weights[i]] for i in frame_idx]
    cands = np.array(
        [c for c in itertools.product(*pools) if len(set(c)) == 4],
        dtype=np.int64)
    cands = np.tile(cands, (tile, 1))

    sa = backend.pack_points(pts)
    adj = backend.frame_adjugate(frame_pts)
    test_idx = np.array(
        [i for i in range(len(pts)) if i not in frame_idx], dtype=np.int64)
    allowed = np.zeros((len(test_idx), len(pts)), dtype=np.uint8)
    for t, i in enumerate(test_idx):
        for j, w in enumerate(weights):
            allowed[t, j] = w == weights[int(i)]
    args = (sa, sa, adj, np.int64(0), cands, test_idx, allowed,
            E.red_np, E.p)
    return f"frame filter, {cands.shape[0]} candidates, k={E.k}", args


def plane_scan_workload():
    q = 7
    rng = random.Random(20240311)
    ctx = gf.prime_field(q)
    pts = []
    while len(pts) < 8:
        c = [rng.randrange(q) for _ in range(3)]
        if not any(c):
            continue
        pt = proj.ProjPoint(ctx, c)
        if pt not in pts:
            pts.append(pt)
    m = proj.ProjMap(ctx, [[1, 2, 0], [0, 1, 5], [3, 0, 1]])
    images = [m.apply(p) for p in pts]

    a_pts = np.array([[c.to_int() for c in p.coords] for p in pts],
                     dtype=np.int64)
    inv_table = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        inv_table[x] = pow(x, -1, q)
    b_table = np.zeros(q * q * q, dtype=np.int64)
    for p in images:
        x, y, z = (c.to_int() for c in p.coords)
        b_table[(x * q + y) * q + z] = 1
    args = (q, inv_table, a_pts, b_table)
    return f"plane scan, q={q}, 8 constraint points", args


def best_time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--tile", type=int, default=8,
                    help="duplicate the frame-filter batch this many times")
    opts = ap.parse_args()

    backends = [("numpy", _kernels_numpy)]
    if _kernels_numba is not None:
        backends.append(("numba", _kernels_numba))
    else:
        print("numba not importable; timing the numpy fallback only")

    jobs = [
        ("filter_frame_candidates",) + frame_filter_workload(opts.tile),
        ("pgl3_scan",) + plane_scan_workload(),
    ]

    for kernel_name, label, args in jobs:
        outs = {}
        for bname, mod in backends:
            fn = getattr(mod, kernel_name)
            fn(*args)  # warm-up (jit compile / cache)
            outs[bname] = np.asarray(fn(*args))
        if len(outs) == 2 and not np.array_equal(outs["numpy"],
                                                 outs["numba"]):
            raise SystemExit(f"backend outputs differ on {kernel_name}")
        print(f"\n{kernel_name}: {label}")
        base_t = None
        for bname, mod in backends:
            t = best_time(getattr(mod, kernel_name), args, opts.repeat)
            note = ""
            if base_t is None:
                base_t = t
            else:
                note = f"  ({base_t / t:.1f}x vs numpy)"
            print(f"  {bname:<6} {t * 1e3:10.2f} ms{note}")


if __name__ == "__main__":
    main()
