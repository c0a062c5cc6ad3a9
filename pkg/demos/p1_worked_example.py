"""The smallest partition algebra, end to end in exact arithmetic.

P_1(d) has two diagrams: the identity I and the point diagram P (two
singletons).  We print the dual basis, the two Fourier elements, their norms
and the Fourier transform with its irrational entries kept symbolic.

    python demos/p1_worked_example.py --d 1000000
"""

import argparse
from fractions import Fraction

import sympy

from diagram_qft import diagram as dg
from diagram_qft.algebra_core import DiagramAlgebra, Field
from diagram_qft.fourier import FourierData


def name(D):
    return "I" if dg.propagating_number(D) == 1 else "P"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", default="1000000", help="a rational square, e.g. 1000000 or 9/4")
    args = ap.parse_args()

    F = Field(Fraction(args.d), "exact")
    A = DiagramAlgebra("partition", 1, F)
    names = [name(D) for D in A.basis]

    print(f"P_1(d) at d = {F.d}")
    print("dual basis (raw diagrams):")
    inv = A.gram_L_inverse
    for i in range(2):
        terms = " + ".join(f"({inv[i, j] * A.scale(i) * A.scale(j)})*{names[j]}" for j in range(2))
        print(f"  {names[i]}* = {terms}")

    data = FourierData("partition", 1, F, basis="unscaled", algebra=A)
    FT = data.ft_matrix("exact")
    for x, lab in enumerate(data.labels):
        terms = " + ".join(f"({data.coefficients[x, k]})*{names[k]}" for k in range(2))
        print(f"E[{lab}] = {terms}")
        print(f"  norm^2 = {data.norms_sq[x]}")
        row = ", ".join(f"{names[k]}: {sympy.radsimp(sympy.sympify(FT[x, k]))}" for k in range(2))
        print(f"  FT row: {row}")


if __name__ == "__main__":
    main()
