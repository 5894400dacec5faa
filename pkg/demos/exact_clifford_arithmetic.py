"""Exact Clifford algebra arithmetic, step by step.

Everything below is computed over Gaussian rationals: no floats, no
tolerances.  Run with `python demos/exact_clifford_arithmetic.py`.
"""

from fractions import Fraction

from spindex import (Multivector, QuadraticForm, classify_complex,
                     classify_real, embed_lower)

# The algebra Cl_3 with the convention e_i * e_i == -1.
form = QuadraticForm.euclidean(3)
e1 = Multivector.basis_vector(form, 1)
e2 = Multivector.basis_vector(form, 2)
e3 = Multivector.basis_vector(form, 3)

print("e1 * e1 =", e1 * e1)
print("e1 * e2 =", e1 * e2)
print("e2 * e1 =", e2 * e1)

# The defining relation v * v = -q(v) holds for every vector, including
# rational ones.
v = Multivector.vector(form, [3, 4, 0])
print("\n(3 e1 + 4 e2)^2 =", v * v)

w = Multivector.vector(form, [Fraction(1, 2), Fraction(1, 3), 1])
print("q-norm check:", w * w, "= -(1/4 + 1/9 + 1) exactly")

# Grade involution and reversal generate the standard involutions.
x = Multivector.scalar(form, 1) + e1 + e1 * e2 + e1 * e2 * e3
print("\nx           =", x)
print("alpha(x)    =", x.grade_involution())
print("rev(x)      =", x.reversal())
even, odd = x.grade_decompose()
print("even part   =", even)
print("odd part    =", odd)

# Inverses are exact whenever they exist.
u = Multivector.scalar(form, 2) + e1 * e2 * e3
print("\nu =", u, "   u^-1 =", u.inverse(), "   u * u^-1 =", u * u.inverse())

# The even subalgebra of Cl_n is a copy of Cl_{n-1}: e_i -> e_i e_n.
small = QuadraticForm.euclidean(2)
y = Multivector.blade(small, [1, 2])
print("\nembed_lower(e12 in Cl_2) =", embed_lower(y, form), "in Cl_3")

# Classification is computed (center, central square, trace-form signature),
# then verified against the explicit spinor representation.
print("\ncomplex Clifford algebras:")
for n in range(7):
    print(f"  Cl_{n} =", classify_complex(n))
print("real Clifford algebras (all generators squaring to -1):")
for p in range(9):
    print(f"  RCl_{p} =", classify_real(p, 0))
