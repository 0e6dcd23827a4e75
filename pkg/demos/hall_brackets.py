"""Degenerate Hall algebra of A3: products of simples, the bracket identity, and a Serre relation."""

from __future__ import annotations

import itertools

from qlie.cartan import root_system
from qlie.cocycle import all_orientations
from qlie.hall import S, commutator, serre_element, verify_bracket_E


def main():
    o = all_orientations("A3")[0]
    print(f"orientation {o}")
    s1, s2 = S(1, o), S(2, o)
    print("S1 * S2 =", s1 * s2)
    print("S2 * S1 =", s2 * s1)
    print("[S1, S2] =", commutator(s1, s2))

    rs = root_system("A3")
    for a, b in itertools.permutations(rs.positive_roots, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if rs.is_positive_root(s):
            rep = verify_bracket_E(a, b, o)
            print(f"[E{a}, E{b}] = {rep.lhs}   eps = {rep.epsilon:+d}   {'ok' if rep.ok else 'MISMATCH'}")

    print("S1^2 S2 - 2 S1 S2 S1 + S2 S1^2 =", serre_element(1, 2, o))


if __name__ == "__main__":
    main()
