#!/usr/bin/env python3
"""Optional sanity cross-check for clusters JSON using Durand-Kerner.

Approximates all roots of the input polynomial with Durand-Kerner iteration
in complex floating point, assigns each approximate root to the nearest
output disc, and compares per-disc counts with the declared multiplicities.
This is a heuristic double-check with float-level accuracy only; the
authoritative verification is the exact one built into `rootclust solve
--verify`. Exits 0 when every sufficiently-separated disc matches.

Usage: durand_kerner_check.py poly.json clusters.json
"""

import json
import sys
from fractions import Fraction


def parse_numeric(spec):
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ValueError(f"bad numeric spec: {spec!r}")
    ((kind, value),) = spec.items()
    if kind == "int":
        return Fraction(int(value))
    if kind == "rational":
        return Fraction(int(value["num"]), int(value["den"]))
    if kind == "decimal":
        return Fraction(value)
    if kind == "dyadic":
        mant, expo = value.split("*2^")
        return Fraction(int(mant)) * Fraction(2) ** int(expo)
    raise ValueError(f"unknown numeric spec kind: {kind}")


def parse_complex(spec):
    if isinstance(spec, dict) and ("re" in spec or "im" in spec):
        re = parse_numeric(spec["re"]) if "re" in spec else Fraction(0)
        im = parse_numeric(spec["im"]) if "im" in spec else Fraction(0)
        return re, im
    return parse_numeric(spec), Fraction(0)


def expand_roots(poly):
    coeffs = [complex(float(parse_numeric(poly.get("lcf", {"int": "1"}))), 0.0)]
    for root in poly["roots"]:
        re, im = parse_complex(root)
        z = complex(float(re), float(im))
        for _ in range(int(root.get("mult", 1))):
            coeffs.append(0j)
            for j in range(len(coeffs) - 1, 0, -1):
                coeffs[j] = coeffs[j - 1] - z * coeffs[j]
            coeffs[0] = -z * coeffs[0]
    return coeffs


def durand_kerner(coeffs, iterations=400):
    n = len(coeffs) - 1
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]

    def eval_monic(z):
        acc = 0j
        for c in reversed(monic):
            acc = acc * z + c
        return acc

    roots = [(0.4 + 0.9j) ** k for k in range(1, n + 1)]
    for _ in range(iterations):
        moved = 0.0
        for i in range(n):
            denom = 1.0 + 0j
            for j in range(n):
                if j != i:
                    denom *= roots[i] - roots[j]
            if denom == 0:
                roots[i] += 1e-8 + 1e-8j
                continue
            step = eval_monic(roots[i]) / denom
            roots[i] -= step
            moved = max(moved, abs(step))
        if moved < 1e-13:
            break
    return roots


def parse_dyadic_str(s):
    mant, expo = s.split("*2^")
    return float(Fraction(int(mant)) * Fraction(2) ** int(expo))


def main():
    if len(sys.argv) != 3:
        print(__doc__)
        return 2
    poly = json.load(open(sys.argv[1]))
    clusters = json.load(open(sys.argv[2]))["clusters"]

    coeffs = expand_roots(poly) if "roots" in poly else [
        complex(float(re), float(im)) for re, im in map(parse_complex, poly["coeffs"])]
    approx_roots = durand_kerner(coeffs)

    ok = True
    for idx, cl in enumerate(clusters):
        cx = parse_dyadic_str(cl["center"]["re"])
        cy = parse_dyadic_str(cl["center"]["im"])
        r = parse_dyadic_str(cl["radius"])
        declared = cl["multiplicity"]
        # Durand-Kerner scatters an m-fold root by about eps_machine^(1/m),
        # so the capture radius must grow with the declared multiplicity.
        slack = max(2.0 * r,
                    100.0 * (1e-15) ** (1.0 / max(1, declared)),
                    1e-9 * (1.0 + abs(complex(cx, cy))))
        inside = sum(1 for z in approx_roots
                     if abs(z - complex(cx, cy)) <= r + slack)
        status = "ok" if inside == declared else "MISMATCH"
        if inside != declared:
            ok = False
        print(f"disc {idx}: center ({cx:.6g}, {cy:.6g}) radius {r:.3g} "
              f"declared {declared} DK-count {inside} [{status}]")
    print("durand-kerner cross-check:", "ok" if ok else "MISMATCH")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
