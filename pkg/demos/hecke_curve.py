"""Walk through one symplectic Hecke curve on the trivial rank-4 pair.

Run: python3 demos/hecke_curve.py
"""

from fractions import Fraction

from heckelab.degree import hecke_curve_degree
from heckelab.hecke import (
    find_isometry,
    hecke_down,
    hecke_up_symplectic,
    induced_form_symplectic,
    jumping_lines,
    symplectic_hecke_family,
)
from heckelab.pairing import standard_pair, validate_pair


def main():
    p = standard_pair("symplectic", [0, 0], 0)
    theta = [1, 0, 0, 0]
    x = Fraction(0)
    print("input pair:", p.splitting(), "valid:", validate_pair(p).ok)

    w, _ = hecke_down(p.V, x, theta)
    print("down step at x=0:", w.splitting(), "degree", w.degree)

    tk = induced_form_symplectic(p, x, theta)
    print("fiber kernel codimension:", tk.codim)

    base = list(tk.base_direction[0])
    back = hecke_up_symplectic(p, x, theta, base, tk=tk)
    print("up step at the base direction:", back.splitting(), "isometric to input:", find_isometry(back, p, x, tk) is not None)

    other = list(tk.pi[0]) if list(tk.pi[0]) != base else list(tk.pi[1])
    q = hecke_up_symplectic(p, x, theta, other, tk=tk)
    print("up step at another direction:", q.splitting(), "valid:", validate_pair(q).ok)

    family = symplectic_hecke_family(p, x, theta)
    report = jumping_lines(family)
    for j in report.jumps:
        print(f"jumping line over z={j.point}: {j.splitting}, contribution {j.contribution}")
    print("generic restriction:", report.generic)
    print("degree of the curve:", hecke_curve_degree(p.n, report.total_contribution))


if __name__ == "__main__":
    main()
