"""Compare the compiled and NumPy kernel backends on representative structures.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""
from __future__ import annotations

import argparse
import json
import statistics
import time

import numpy as np

from rigidlab import kernels
from rigidlab.constructions import (
    VnDescriptor,
    make_prime_field,
    make_vn_module,
    make_zmod,
)
from rigidlab.core import regular_module
from rigidlab.properties import find_idempotents


def _structures():
    z16 = regular_module(make_zmod(16))
    v2, _ = make_vn_module(VnDescriptor(2, make_zmod(16)))
    v3, _ = make_vn_module(VnDescriptor(3, make_prime_field(3)))
    f13 = regular_module(make_prime_field(13))
    v13, _ = make_vn_module(VnDescriptor(2, make_prime_field(13)))
    # fields and their extensions satisfy most properties, forcing full scans
    return {"Z/16": z16, "F13": f13, "V2(Z/16)": v2, "V2(F13)": v13, "V3(F3)": v3}


def _cases(M, limit):
    R = M.ring
    ident = np.arange(R.size, dtype=np.int32)
    idem = np.array(find_idempotents(R), dtype=np.int64)
    small = M.size * R.size <= 256
    cases = {
        "assoc(ring mul)": lambda k: k.assoc_violations(R.mul, limit),
        "rigid": lambda k: k.rigid_violations(M.action, ident, M.zero, limit),
        "semicommutative": lambda k: k.semicomm_violations(M.action, ident, M.zero, limit),
        "intersection": lambda k: k.intersection_violations(M.action, M.zero, limit),
        "abelian": lambda k: k.abelian_violations(M.action, idem, limit),
        "hom(ring mul)": lambda k: k.hom_violations(R.mul, ident, limit),
    }
    if R.size <= 16:
        cases["componentwise(n=3)"] = lambda k: k.componentwise_table(R.add, 3)
        cases["convolution(n=3)"] = lambda k: k.convolution_table(R.mul, R.add, 3)
    if small:
        sigpow = kernels.table(np.stack([ident, ident, ident]))
        cases["armendariz(d=2)"] = lambda k: k.armendariz_violations(
            M.action, M.add, sigpow, M.zero, 2, limit)
        cases["alpha(n=2)"] = lambda k: k.alpha_violations(
            M.action, M.add, ident, M.zero, 2, limit)
    return cases


def _time(fn, repeat):
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        samples.append(time.perf_counter() - t)
    return statistics.median(samples), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--limit", type=int, default=1024)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled backend unavailable; build it with `python3 setup.py build_ext --inplace`")
    rows = []
    for sname, M in _structures().items():
        for cname, fn in _cases(M, args.limit).items():
            row = {"structure": sname, "kernel": cname}
            outputs = {}
            for bname, impl in impls.items():
                secs, out = _time(lambda fn=fn, impl=impl: fn(impl), args.repeat)
                row[bname] = secs
                outputs[bname] = out
            ref = next(iter(outputs.values()))
            row["agree"] = all(np.array_equal(ref, o) for o in outputs.values())
            if "cython" in row and "python" in row and row["cython"] > 0:
                row["speedup"] = row["python"] / row["cython"]
            rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=1))
        return
    print(f"{'structure':<10} {'kernel':<18} {'python s':>10} {'cython s':>10} "
          f"{'speedup':>8}  agree")
    for r in rows:
        print(f"{r['structure']:<10} {r['kernel']:<18} {r.get('python', float('nan')):>10.4f} "
              f"{r.get('cython', float('nan')):>10.4f} {r.get('speedup', float('nan')):>8.1f}"
              f"  {r['agree']}")


if __name__ == "__main__":
    main()
