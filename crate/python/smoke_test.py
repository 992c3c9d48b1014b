#!/usr/bin/env python3
"""Smoke test for the weylkit_py extension module.

Build the module first:

    cargo build -p weylkit-python

then run this script from the repository root:

    python3 python/smoke_test.py
"""

import json
import math
import shutil
import sys
import tempfile
from pathlib import Path


def locate_extension():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "libweylkit_py.so",
        root / "target" / "debug" / "libweylkit_py.so",
        root / "target" / "release" / "libweylkit_py.dylib",
        root / "target" / "debug" / "libweylkit_py.dylib",
    ]
    for cand in candidates:
        if cand.exists():
            return cand
    sys.exit("extension not built; run `cargo build -p weylkit-python` first")


def main():
    lib = locate_extension()
    staging = Path(tempfile.mkdtemp(prefix="weylkit_py_"))
    shutil.copy(lib, staging / "weylkit_py.so")
    sys.path.insert(0, str(staging))
    import weylkit_py as wk

    checks = 0

    def check(cond, what):
        nonlocal checks
        checks += 1
        if not cond:
            sys.exit(f"FAIL: {what}")
        print(f"ok: {what}")

    # root systems and Weyl groups
    for label, order, roots in [("a2", 6, 6), ("b2", 8, 8), ("g2", 12, 12)]:
        rs = wk.RootSystem(label)
        check(rs.weyl_order() == order, f"{label} Weyl order {order}")
        check(rs.num_roots == roots, f"{label} has {roots} roots")
        check(rs.chamber_count() == order, f"{label} chamber count equals group order")

    # Coxeter matrix entries
    g2 = wk.RootSystem("g2")
    check(g2.coxeter_matrix()[0][1] == "6", "g2 Coxeter entry m12 = 6")

    # codimension spectrum
    check(wk.RootSystem("a2").strata_codim_spectrum() == [0, 3, 8], "a2 codim spectrum")

    # alcove strata with the center action
    check(wk.alcove_strata("su3") == 7, "su3 alcove has 7 strata")
    check(wk.alcove_strata("psu3") == 3, "psu3 alcove has 3 strata")

    # exact volume polynomial
    vp = wk.VolumePolynomial("a1")
    check(vp.eval(["2"]) == "4", "rank-one volume polynomial at 2 is 4")
    check(vp.eval(["-3/2"]) == "-3", "rank-one volume polynomial at -3/2 is -3")

    # primitive linear factorization of x^3 + x y^2 + x
    factors, cofactor = wk.factor_polynomial("1 3 0\n1 1 2\n1 1 0\n", 3)
    check(factors == [([1, 0], "0")], "factor extraction finds x")
    check(len(cofactor.strip().splitlines()) == 3, "cofactor has three terms")

    # arrangement file chambers
    strips = "dim 2\nperiod 0 1/2\nbox 0 1 -5/4 5/4\n0 1 ; 0\n"
    check(wk.chambers_of_file(strips) == 6, "strip arrangement has 6 chambers in the box")

    # orbit volume
    v = wk.kks_orbit_volume(1.0, 200, 400)
    check(abs(v - 4 * math.pi) / (4 * math.pi) < 1e-3, "orbit volume close to 4 pi")

    # a short integration-formula consistency run
    lhs, lhs_se, rhs, rhs_se, calib = wk.weyl_integrate("su2", "gaussian:1", 40000, seed=7)
    combined = math.hypot(lhs_se, rhs_se)
    check(abs(lhs - rhs) < 4 * combined + 1e-9, "su2 integration formula consistent")
    check(abs(calib - math.pi) < 1e-12, "su2 calibration constant is pi")

    # pushforward histogram shape
    max_dev, _fit, counts = wk.dh_histogram_su2(200000, 30, 2.0, seed=3)
    check(max_dev < 0.1, "pushforward density tracks c z^2")
    check(counts[0] == min(counts), "singular bin has the lowest count")

    # catalog verification
    names = wk.catalog_names()
    check("gg_dual(g2)" in names, "registry lists gg_dual(g2)")
    ok, report = wk.catalog_verify("su2_dual")
    check(ok, "su2_dual verification passes")
    parsed = json.loads(report)
    check(parsed["model"] == "su2_dual", "report carries the model name")

    print(f"\nsmoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
