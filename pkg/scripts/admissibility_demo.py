#!/usr/bin/env python3
"""Walk through the boundary counterexample on the flat wall {y3 = 0}.

Shows a function of two quaternionic variables that satisfies the tangential
Cauchy-Riemann-Fueter equations on the wall exactly, yet admits no extension
that is regular to second order in the defining function -- the tangential
system alone does not characterise boundary values of regular functions.
For contrast, the same pipeline is run on a conjugate coordinate that *does*
extend (with an explicit global extension) and on one that is not even
tangentially CRF.
"""

from crfbench.hypercomplex import HNumber
from crfbench.polycalc import HPoly, dbar_system
from crfbench import hypersurface as hs
from crfbench import crfsolve as cs


def coord(h, a):
    return HPoly.coordinate("H", 2, h, a)


def unit(a):
    return HNumber.unit("H", a)


def describe(label, f, S):
    print(f"--- {label}")
    res = hs.is_crf(f, S)
    witness = "" if res else "  (witness at {})".format(
        "(" + ", ".join(str(c) for c in res.witness_point) + ")")
    print(f"  tangentially CRF : {bool(res)}{witness}")
    p = (1, 0, 0, 0, 1, 0, 0, 0)
    rank = hs._complex_rank(hs.rank_matrix(f, S, p))
    solvable = hs.rank_condition(f, S, p)
    print(f"  rank test at {p}: rank {rank}, "
          f"pointwise solvable = {solvable}")
    rep = hs.is_admissible(f, S)
    print(f"  admissible       : {rep.admissible}")
    if res and not rep.admissible:
        bad = [k for k, v in rep.derived.items() if not v]
        print(f"  failing first-order digits: {bad}")
    infeasible = (cs.NotAdmissibleOrBudget, cs.NoPolynomialExtensionWithinBudget)
    try:
        F = cs.crf_extend(f, S, m=1)
        print(f"  order-1 extension: degree {F.degree()} polynomial")
    except infeasible as exc:
        print(f"  order-1 extension: none ({exc})")
    try:
        F = cs.crf_extend(f, S, m=2)
        exact = all(r.is_zero() for r in dbar_system(F))
        print(f"  order-2 extension: degree {F.degree()} polynomial"
              + (", globally regular" if exact else ""))
    except infeasible as exc:
        print(f"  order-2 extension: none ({exc})")
    print()


def main():
    wall = hs.Hypersurface(coord(1, 3))          # {y3 = 0}
    print(f"surface: {wall!r}\n")

    counter = (coord(0, 1) * coord(1, 0)).mul_const_left(-unit(2)) + \
        (coord(0, 0) * coord(1, 0)).mul_const_left(unit(3))
    describe("f = -x1 y0 j + x0 y0 k  (the counterexample)", counter, wall)

    qbar2 = sum((coord(1, a).mul_const_left(-unit(a)) for a in (1, 2, 3)),
                coord(1, 0))
    describe("f = conj(q2)  (admissible: q2bar + 4 y3 k is regular)",
             qbar2, wall)

    qbar1 = sum((coord(0, a).mul_const_left(-unit(a)) for a in (1, 2, 3)),
                coord(0, 0))
    describe("f = conj(q1)  (not even tangentially CRF)", qbar1, wall)


if __name__ == "__main__":
    main()
