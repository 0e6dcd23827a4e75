"""Coefficients of E*_alpha in the semicanonical basis: A3 from the sign character, D4/D5 from shipped tables."""

from __future__ import annotations

from qlie.semican import COMPUTED_ORIENTATION, STORED, UNKNOWN, cross_check_An, decompose_E_star, validate_case


def show(t):
    print(f"{t.type} root {','.join(map(str, t.root))}, indexed by {t.reference}")
    for k in t.sorted_keys():
        v = t.entries[k]
        print(f"  {'?' if v is None else f'{v:+d}':>3}  {k}   [{t.provenance[k]}]")


def main():
    show(decompose_E_star((1, 1, 1), "A3"))
    for n in (2, 3, 4):
        rep = cross_check_An(n)
        signs = sorted({r.sign for r in rep.rows if r.sign is not None})
        print(f"A{n}: orientation vector = sign character up to {signs} on all {len(rep.rows)} roots: {rep.ok}")

    d4 = decompose_E_star((2, 1, 1, 1), "D4")
    show(d4)
    d5 = decompose_E_star((2, 1, 1, 2, 1), "D5")
    counts = {p: len(d5.keys_with(p)) for p in (COMPUTED_ORIENTATION, STORED, UNKNOWN)}
    print("D5 maximal root:", counts, "of", len(d5.entries))
    for case in ("D4-thetamax", "D5-thetamax"):
        print("\n".join(validate_case(case).lines()))


if __name__ == "__main__":
    main()
