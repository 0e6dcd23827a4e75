"""Affine A~1: the two mixed-bracket conventions, the BPS index set and its multiplicity audit."""

from __future__ import annotations

from qlie.bps import bps_basis, conjecture_algebra_checks, multiplicity_audit
from qlie.cartan import root_system
from qlie.cocycle import Orientation, all_orientations, reference_orientation
from qlie.lie import AffineLieAlgebra, jacobi_violations
from qlie.stability import flows_to_extending, nakajima_character


def main():
    rs = root_system("A~1")
    for text in ("0>1,0>1", "1>0,0>1"):
        o = Orientation.parse("A~1", text)
        for mixed in ("cocycle", "plain"):
            alg = AffineLieAlgebra(rs, o, mixed=mixed)
            bad = jacobi_violations(alg, alg.basis_up_to(2), limit=1)
            h = alg.imaginary_of((1,), 1)
            z = alg.bracket(h, alg.e((0, 1)))
            verdict = "Jacobi ok" if not bad else "Jacobi fails at " + ", ".join(map(str, bad[0][:3]))
            print(f"{text:9s} {mixed:8s} [h1(1), e[0,1]] = {z}   {verdict}")

    print("BPS symbols up to 2 delta:", ", ".join(map(str, bps_basis("A~1", cutoff=2))))
    for line in multiplicity_audit("A~2", 2).lines():
        print("  A~2", line)
    print("\n".join(conjecture_algebra_checks("A~1", 3).lines()))

    for label in ("A~3", "D~4"):
        n = sum(flows_to_extending(o) for o in all_orientations(label))
        print(f"{label}: {n} orientations flow to the extending vertex;",
              "Nakajima character at delta:", nakajima_character(label, root_system(label).delta))
    print("reference orientation of D~4:", reference_orientation("D~4"))


if __name__ == "__main__":
    main()
