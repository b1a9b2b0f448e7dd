"""The two rulings behind an orthogonal Hecke curve in rank 5.

Run: python3 demos/orthogonal_rulings.py
"""

from heckelab.degree import hecke_curve_degree
from heckelab.hecke import ig24_for, induced_form_orthogonal, jumping_lines, orthogonal_hecke_family
from heckelab.isogr import incidence
from heckelab.pairing import standard_pair


def main():
    p = standard_pair("orthogonal", [1, 0], 0, mid=1)
    Theta = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]
    tk = induced_form_orthogonal(p, 0, Theta)
    print("input:", p.splitting(), "kernel codimension:", tk.codim)

    rulings, _, base = ig24_for(tk)
    a0, b0 = rulings.family_a.member(0), rulings.family_b.member(0)
    print("base plane lies in ruling", rulings.classify(base))
    print("incidence of first members of the two rulings:", incidence(rulings.space, a0, b0))
    print("incidence of two members of ruling A:", incidence(rulings.space, a0, rulings.family_a.member(1)))

    for ruling in ("base", "other"):
        fam = orthogonal_hecke_family(p, 0, Theta, ruling=ruling)
        rep = jumping_lines(fam)
        jumps = ", ".join(f"z={j.point}: {j.splitting}" for j in rep.jumps)
        print(f"ruling {ruling}: member t=0 is {fam.member(0).splitting()}; jumps {jumps}")
        print(f"  contribution {rep.total_contribution}, degree {hecke_curve_degree(p.n, rep.total_contribution)}")


if __name__ == "__main__":
    main()
