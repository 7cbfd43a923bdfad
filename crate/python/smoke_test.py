"""Builds the extension with cargo and exercises the Python API.

    python3 python/smoke_test.py
"""

import cmath
import math
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build():
    subprocess.run(["cargo", "build", "--release", "-p", "whitham-mi-py"], cwd=ROOT, check=True)
    lib = ROOT / "target" / "release" / "libwhitham_mi_py.so"
    dest = pathlib.Path(tempfile.mkdtemp()) / "whitham_mi.so"
    shutil.copy(lib, dest)
    sys.path.insert(0, str(dest.parent))


def main():
    build()
    import whitham_mi as wm

    g = wm.Model.gravity()
    assert abs(g.symbol(1.0) - math.sqrt(math.tanh(1.0))) < 1e-15
    assert g.m0 == 1.0

    roots = wm.critical_wavenumbers(g)
    assert len(roots) == 1 and roots[0][1] == "BF"
    assert abs(roots[0][0] - 1.145) < 2e-3, roots
    assert wm.delta_mi(g, 2.0)["verdict"] == "unstable"
    assert wm.delta_mi(g, 0.5)["verdict"] == "stable"

    cap = wm.Model.dimensional("capillary", g=9.81, d=2.0, surface_tension=0.5)
    assert abs(cap.tau - 0.5 / (9.81 * 4.0)) < 1e-16
    assert wm.Model.capillary(1.0 / 3.0).is_degenerate()

    plus = wm.Model.vorticity(3.0)
    minus = wm.Model.vorticity(-3.0, "minus")
    assert abs(plus.symbol(1.3) + minus.symbol(1.3)) < 1e-12

    wave = wm.traveling_wave(g, 2.0, 0.01, n_modes=12, tol=1e-12)
    assert wave.refined and wave.residual() < 1e-12
    assert abs(wave.cosine_coeffs[1] - 0.005) < 1e-15

    sp = wm.bloch_spectrum(wave, 0.0, n_f=16)
    assert len(sp["eigenvalues"]) == 33
    assert all(isinstance(l, complex) for l in sp["eigenvalues"])
    near_zero = sum(abs(l) < 1e-6 for l in sp["eigenvalues"])
    assert near_zero >= 3, sp["eigenvalues"]
    assert all(abs(l.real) < 1e-8 for l in sp["eigenvalues"])
    left = wm.bloch_spectrum(wave, -0.05, n_f=16)["eigenvalues"]
    right = wm.bloch_spectrum(wave, 0.05, n_f=16)["eigenvalues"]
    assert all(min(abs(l.conjugate() - r) for r in right) < 1e-9 for l in left)

    check = wm.mi_growth_check(g, 2.0, 0.01, [0.002, 0.005, 0.01])
    assert check["agree"] and check["predicted"] == "unstable", check

    curves = wm.stability_diagram("vorticity")
    assert [c["mechanism"] for c in curves] == ["BF+", "BF-"], [c["mechanism"] for c in curves]
    hits = wm.curve_intersections(curves[0]["points"], curves[1]["points"])
    assert len(hits) == 1 and abs(hits[0][0]) < 1e-9 and abs(hits[0][1] - 1.145) < 2e-3, hits
    assert wm.classify_point("capillary", 2.0, 0.0)["verdict"] == "unstable"

    try:
        wm.Model.capillary(-1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative tau accepted")
    try:
        wm.bloch_spectrum(wave, 0.7)
    except ValueError:
        pass
    else:
        raise AssertionError("xi outside the Brillouin zone accepted")
    assert issubclass(wm.NumericalError, RuntimeError)

    print("smoke test passed")


if __name__ == "__main__":
    main()
