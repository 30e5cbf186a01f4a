#!/usr/bin/env python3
"""Regenerate tests/data/dist_grid.csv.

High-precision reference values for the distribution substrate, computed
with mpmath at 200 decimal digits and emitted with 25 significant digits.
Each row is: family,p1,p2,x,cdf

  normal  p1=p2=0          cdf = Phi(x)
  t       p1=dof           cdf = P(T_dof <= x)
  f       p1=d1, p2=d2     cdf = P(F_{d1,d2} <= x)
  chisq   p1=dof           cdf = P(X2_dof <= x)
"""

import os
import mpmath as mp

mp.mp.dps = 200

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "dist_grid.csv")


def normal_cdf(x):
    return mp.erfc(-x / mp.sqrt(2)) / 2


def t_cdf(x, dof):
    dof = mp.mpf(dof)
    xx = dof / (dof + x * x)
    half = mp.betainc(dof / 2, mp.mpf(1) / 2, 0, xx, regularized=True) / 2
    return half if x < 0 else 1 - half


def f_cdf(x, d1, d2):
    d1, d2, x = mp.mpf(d1), mp.mpf(d2), mp.mpf(x)
    if x <= 0:
        return mp.mpf(0)
    return mp.betainc(d1 / 2, d2 / 2, 0, d1 * x / (d1 * x + d2), regularized=True)


def chisq_cdf(x, dof):
    if x <= 0:
        return mp.mpf(0)
    return mp.gammainc(mp.mpf(dof) / 2, 0, mp.mpf(x) / 2, regularized=True)


def fmt(v):
    return mp.nstr(v, 25, strip_zeros=False)


def main():
    rows = []

    z_points = [-37, -30, -20, -12, -8, -6, -5, -4, -3, -2.5, -2, -1.959964,
                -1.5, -1, -0.5, -0.25, -0.01, 0, 0.01, 0.25, 0.5, 1, 1.5,
                1.959964, 2, 2.5, 3, 4, 5, 6, 8, 12, 20, 30, 37]
    for z in z_points:
        rows.append(("normal", 0, 0, z, normal_cdf(mp.mpf(z))))

    t_dofs = [1, 2, 3, 4.5, 5, 10, 24.925157, 45, 120, 1000]
    t_points = [-60, -12, -6, -4.202131, -2, -1, -0.5, 0, 0.5, 1, 2, 4.202131, 6, 12, 60]
    for dof in t_dofs:
        for t in t_points:
            rows.append(("t", dof, 0, t, t_cdf(mp.mpf(t), dof)))

    f_pairs = [(1, 1), (1, 45), (2, 8), (3.3, 7.7), (4, 45), (5, 2),
               (10, 100), (20, 20), (100, 100)]
    f_points = [0.001, 0.1, 0.5, 1, 2.5, 17.657903, 60, 1000]
    for d1, d2 in f_pairs:
        for x in f_points:
            rows.append(("f", d1, d2, x, f_cdf(x, d1, d2)))

    chi_dofs = [1, 2, 3, 7, 24, 45, 100, 300]
    for k in chi_dofs:
        for x in [1e-4, 0.01, 0.5, k / 2, k, 2 * k, 5 * k, 10 * k]:
            rows.append(("chisq", k, 0, x, chisq_cdf(x, k)))

    with open(OUT, "w") as f:
        f.write("family,p1,p2,x,cdf\n")
        for fam, p1, p2, x, v in rows:
            f.write(f"{fam},{p1},{p2},{x},{fmt(v)}\n")
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
