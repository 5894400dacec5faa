"""Graded Clifford modules, their periodicity quotient, and windings.

The Grothendieck group of graded modules modulo restrictions from one
dimension up alternates Z, 0, Z, 0, ..., computed here from actual module
decompositions.  On the circle the generator is detected analytically as a
winding number of the clutching determinant.
"""

import numpy as np

from spindex import (abs_class, abs_group, chirality_operator,
                     decompose_module, direct_sum, flip_grading,
                     gamma_matrices, restrict_module, spinor_module,
                     thom_class_complex, winding_number)

# Gamma matrices: exact entries, relations gamma_i gamma_j + gamma_j gamma_i
# = -2 delta_ij.
for k in (2, 4):
    gens = gamma_matrices(k)
    print(f"dimension {k}: module size {gens[0].shape[0]}, "
          f"gamma_1^2 = {np.array_equal(gens[0] @ gens[0], -np.eye(gens[0].shape[0]))}")

s2 = spinor_module(2)
print("\nchirality of the 2-dimensional module:")
print(chirality_operator(s2).real)

# The two gradings of the spinor module are inequivalent as graded modules
# but identical after forgetting the grading.
print("\ngraded decomposition of S2      :", decompose_module(s2).multiplicities)
print("graded decomposition of S2 flip :",
      decompose_module(flip_grading(s2)).multiplicities)

# Restriction from one dimension up hits the balanced classes: the quotient
# alternates Z (even) and 0 (odd).
print("\nperiodicity quotient M_hat_k / i* M_hat_{k+1}:")
for k in range(7):
    print(f"  k = {k}:", abs_group(k).group)
restricted = restrict_module(spinor_module(3))
print("restriction of S3-hat decomposes as",
      decompose_module(restricted).multiplicities, "-> balanced, hence trivial class")

# Winding numbers detect the generator on the circle.
w = winding_number(abs_class(s2))
print("\nwinding of the S2 clutching        :", w)
print("winding with the flipped grading   :",
      winding_number(abs_class(flip_grading(s2))))
print("winding of S2 + S2                 :",
      winding_number(abs_class(direct_sum(s2, s2))))
print("winding of the rank-1 Thom class   :",
      winding_number(thom_class_complex(1)))
print("restriction class winds            :",
      winding_number(abs_class(restricted)), "(extends over the disk)")
