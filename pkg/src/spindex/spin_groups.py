"""Spin and Spin^c groups inside the Clifford algebra.

Group elements are even multivectors of unit norm acting on vectors by the
twisted conjugation x v alpha(x)^-1; the induced matrix on the generators is
the double-covered rotation.  Exact rational elements (built from Pythagorean
unit vectors) keep the whole pipeline exact; angle-parametrized lifts use
floats with a 1e-12 working tolerance.

Norm convention: N(x) = rev(alpha(x)) * x, one of the scalar-factor choices;
documented here once rather than claimed canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .clifford import (GaussianRational, Multivector, QuadraticForm,
                       blade_grade)

FLOAT_TOL = 1e-12


class NotInvertibleError(ZeroDivisionError):
    pass


class NotScalarNormError(ValueError):
    pass


# ---------------------------------------------------------------------------
# twisted conjugation and the norm
# ---------------------------------------------------------------------------

def twisted_conjugation(x: Multivector, v: Multivector) -> Multivector:
    """x * v * alpha(x)^-1 (the Clifford-group action on the algebra)."""
    try:
        inv = x.inverse()
    except ZeroDivisionError as exc:
        raise NotInvertibleError("twisting element is not invertible") from exc
    return x * v * inv.grade_involution()


def spin_norm(x: Multivector) -> Union[GaussianRational, complex]:
    """N(x) = rev(alpha(x)) * x, which is scalar on the Clifford group."""
    prod = x.grade_involution().reversal() * x
    scalar = prod.scalar_part()
    rest = prod - Multivector.scalar(x.form, scalar)
    if not _negligible(rest):
        raise NotScalarNormError("norm is not scalar; element is outside the Clifford group")
    return scalar


def _negligible(x: Multivector, tol: float = FLOAT_TOL) -> bool:
    for v in x.terms().values():
        if isinstance(v, GaussianRational):
            if v:
                return False
        elif abs(complex(v)) > tol:
            return False
    return True


def _is_exact(x: Multivector) -> bool:
    return all(isinstance(v, GaussianRational) for v in x.terms().values())


# ---------------------------------------------------------------------------
# rotation matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RotationMatrix:
    """Square matrix with Fraction (exact path) or float entries."""

    entries: Tuple[Tuple[Union[Fraction, float], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def is_exact(self) -> bool:
        return all(isinstance(e, Fraction) for row in self.entries for e in row)

    def to_numpy(self):
        import numpy as np
        return np.array([[float(e) for e in row] for row in self.entries])

    def column(self, j: int):
        return tuple(row[j] for row in self.entries)

    def determinant(self) -> Union[Fraction, float]:
        if self.is_exact():
            return _exact_det([list(r) for r in self.entries])
        import numpy as np
        return float(np.linalg.det(self.to_numpy()))

    def is_special_orthogonal(self, form: QuadraticForm,
                              tol: float = 0.0) -> bool:
        """M^T Q M == Q and det M == +1 (exactly when entries are exact)."""
        n = self.dim
        q = [Fraction(s) for s in form.signs]
        for i in range(n):
            for j in range(n):
                acc: Union[Fraction, float] = Fraction(0) if self.is_exact() else 0.0
                for r in range(n):
                    acc += self.entries[r][i] * q[r] * self.entries[r][j]
                target = q[i] if i == j else 0
                if self.is_exact():
                    if acc != target:
                        return False
                elif abs(acc - target) > max(tol, FLOAT_TOL):
                    return False
        det = self.determinant()
        if self.is_exact():
            return det == 1
        return abs(det - 1.0) <= max(tol, FLOAT_TOL)

    def to_json(self) -> dict:
        if self.is_exact():
            rows = [[str(e) for e in row] for row in self.entries]
        else:
            rows = [[float(e) for e in row] for row in self.entries]
        return {"dim": self.dim, "rows": rows}

    def isclose(self, other: "RotationMatrix", tol: float = FLOAT_TOL) -> bool:
        return self.dim == other.dim and all(
            abs(float(a) - float(b)) <= tol
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb))


def _exact_det(rows: List[List[Fraction]]) -> Fraction:
    n = len(rows)
    a = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


# ---------------------------------------------------------------------------
# membership certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpinCertificate:
    ok: bool
    reason: Optional[str] = None


def is_in_spin(x: Multivector, tol: float = FLOAT_TOL) -> SpinCertificate:
    """Check the Spin(V,q) membership conditions one by one.

    Even-ness, unit norm, real coefficients, preservation of the span of
    1-blades under twisted conjugation, and orientation det +1.
    """
    return _certify(x, tol)[0]


def _certify(x: Multivector, tol: float = FLOAT_TOL):
    exact = _is_exact(x)
    for mask, v in x.terms().items():
        if blade_grade(mask) & 1:
            return SpinCertificate(False, "element has an odd component"), None
        if exact and not v.is_real():
            return SpinCertificate(False, "coefficients are not real"), None
        if not exact and abs(complex(v).imag) > tol:
            return SpinCertificate(False, "coefficients are not real"), None
    try:
        norm = spin_norm(x)
    except NotScalarNormError:
        return SpinCertificate(False, "norm is not scalar"), None
    if exact:
        if norm != 1:
            return SpinCertificate(False, f"norm is {norm}, not 1"), None
    elif abs(complex(norm) - 1) > tol:
        return SpinCertificate(False, f"norm is {norm}, not 1"), None
    try:
        matrix = _conjugation_matrix(x, tol)
    except NotInvertibleError:
        return SpinCertificate(False, "element is not invertible"), None
    except NotScalarNormError:
        return SpinCertificate(False, "twisted conjugation leaves the vector space"), None
    if not matrix.is_special_orthogonal(x.form, tol):
        return SpinCertificate(False, "image is not special orthogonal"), None
    return SpinCertificate(True), matrix


def _conjugation_matrix(x: Multivector, tol: float = FLOAT_TOL) -> RotationMatrix:
    form = x.form
    exact = _is_exact(x)
    try:
        alpha_inv = x.inverse().grade_involution()
    except ZeroDivisionError as exc:
        raise NotInvertibleError("twisting element is not invertible") from exc
    cols = []
    for i in range(1, form.dim + 1):
        image = x * Multivector.basis_vector(form, i) * alpha_inv
        off = image - image.grade_part(1)
        if not _negligible(off, tol):
            raise NotScalarNormError("image of a vector is not a vector")
        coords = image.grade_part(1).vector_coords()
        col = []
        for c in coords:
            if isinstance(c, GaussianRational):
                if exact and c.im != 0:
                    raise NotScalarNormError("vector image has imaginary part")
                col.append(c.re if exact else float(c.re))
            else:
                col.append(float(complex(c).real))
        cols.append(col)
    n = form.dim
    rows = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return RotationMatrix(rows)


@dataclass(frozen=True)
class SpinElement:
    """A multivector certified to lie in Spin(V, q)."""

    value: Multivector

    def __post_init__(self):
        cert, matrix = _certify(self.value)
        if not cert.ok:
            raise ValueError(f"not a Spin element: {cert.reason}")
        object.__setattr__(self, "_matrix", matrix)

    @property
    def form(self) -> QuadraticForm:
        return self.value.form

    def __neg__(self) -> "SpinElement":
        return SpinElement(-self.value)

    def __mul__(self, other: "SpinElement") -> "SpinElement":
        return SpinElement(self.value * other.value)

    def to_json(self) -> dict:
        return self.value.to_json()

    @classmethod
    def from_json(cls, data: dict) -> "SpinElement":
        """Parse a serialized element.

        Floating-point elements round-trip through the fraction-string schema
        as exact dyadic rationals whose norm is off by an ulp; when the exact
        reading fails certification, retry in float arithmetic.
        """
        value = Multivector.from_json(data)
        try:
            return cls(value)
        except ValueError:
            as_float = Multivector(value.form, {
                m: v.to_complex() if isinstance(v, GaussianRational) else v
                for m, v in value.terms().items()})
            return cls(as_float)


def covering_map(u: SpinElement) -> RotationMatrix:
    """The rotation covered by u; satisfies covering_map(-u) == covering_map(u)."""
    return u._matrix


def lift_rotation(i: int, j: int, theta: float,
                  form: Optional[QuadraticForm] = None) -> SpinElement:
    """cos(theta/2) + sin(theta/2) e_i e_j, covering the plane rotation
    e_i -> cos(theta) e_i + sin(theta) e_j.

    Exact for theta = 0 and theta = 2*pi-multiples up to float cos/sin; the
    full-turn lift is -1, exhibiting the two-sheeted cover.
    """
    if form is None:
        form = QuadraticForm.euclidean(max(i, j))
    if i == j:
        raise ValueError("rotation plane needs two distinct axes")
    if not (1 <= i <= form.dim and 1 <= j <= form.dim):
        raise ValueError("axis out of range")
    if form.signs[i - 1] != 1 or form.signs[j - 1] != 1:
        raise ValueError("plane rotation lift needs positive axes")
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    if c == int(c) and s == int(s):
        value = (Multivector.scalar(form, int(c))
                 + Multivector.blade(form, sorted((i, j)),
                                     int(s) if i < j else -int(s)))
    else:
        value = (Multivector.scalar(form, float(c))
                 + Multivector.blade(form, sorted((i, j)),
                                     float(s) if i < j else -float(s)))
    return SpinElement(value)


# ---------------------------------------------------------------------------
# Spin^c
# ---------------------------------------------------------------------------

Phase = Union[GaussianRational, complex]


@dataclass(frozen=True)
class SpinCElement:
    """Class of (spin, phase) modulo the simultaneous sign flip.

    Canonical representative: phase on the closed upper half circle, with the
    real phases resolved to +1 (built by :func:`spinc_canonicalize`).
    """

    spin: SpinElement
    phase: Phase

    def __mul__(self, other: "SpinCElement") -> "SpinCElement":
        return spinc_canonicalize(SpinElement(self.spin.value * other.spin.value),
                                  _phase_mul(self.phase, other.phase))

    def __eq__(self, other):
        if not isinstance(other, SpinCElement):
            return NotImplemented
        if isinstance(self.phase, GaussianRational) != isinstance(other.phase, GaussianRational):
            return False
        if isinstance(self.phase, GaussianRational):
            return self.phase == other.phase and self.spin.value == other.spin.value
        return (abs(complex(self.phase) - complex(other.phase)) <= FLOAT_TOL
                and self.spin.value.isclose(other.spin.value, FLOAT_TOL))

    def to_json(self) -> dict:
        if isinstance(self.phase, GaussianRational):
            phase = {"re": str(self.phase.re), "im": str(self.phase.im)}
        else:
            z = complex(self.phase)
            phase = {"re": z.real, "im": z.imag}
        return {"spin": self.spin.to_json(), "phase": phase}


def _phase_mul(a: Phase, b: Phase) -> Phase:
    if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
        return a * b
    return complex(a if not isinstance(a, GaussianRational) else a.to_complex()) * \
        complex(b if not isinstance(b, GaussianRational) else b.to_complex())


def spinc_canonicalize(u: SpinElement, z: Phase) -> SpinCElement:
    """Deterministic representative of {(u, z), (-u, -z)}."""
    if isinstance(z, GaussianRational):
        if z.re * z.re + z.im * z.im != 1:
            raise ValueError("phase must have unit modulus")
        flip = z.im < 0 or (z.im == 0 and z.re < 0)
    else:
        z = complex(z)
        if abs(abs(z) - 1.0) > FLOAT_TOL:
            raise ValueError("phase must have unit modulus")
        flip = z.imag < -FLOAT_TOL or (abs(z.imag) <= FLOAT_TOL and z.real < 0)
    if flip:
        return SpinCElement(-u, -z)
    return SpinCElement(u, z)


# ---------------------------------------------------------------------------
# rational sampling helpers (Pythagorean unit vectors)
# ---------------------------------------------------------------------------

def rational_unit_vector(rng, dim: int) -> List[Fraction]:
    """A q-norm-1 vector with rational coordinates on the Euclidean sphere,
    via inverse stereographic projection of a random rational point."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    if dim == 1:
        return [Fraction(rng.choice((-1, 1)))]
    while True:
        w = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10)))
             for _ in range(dim - 1)]
        n2 = sum(x * x for x in w)
        denom = n2 + 1
        v = [2 * x / denom for x in w] + [(n2 - 1) / denom]
        if any(v):
            return v


def random_spin_element(rng, form: QuadraticForm, pairs: int = 2) -> SpinElement:
    """Product of 2*pairs random rational unit vectors (hence in Spin)."""
    if any(s != 1 for s in form.signs):
        raise ValueError("rational unit sampling implemented for Euclidean forms")
    value = Multivector.scalar(form, 1)
    for _ in range(2 * pairs):
        coords = rational_unit_vector(rng, form.dim)
        value = value * Multivector.vector(form, coords)
    return SpinElement(value)
