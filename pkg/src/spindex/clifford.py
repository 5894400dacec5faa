"""Exact arithmetic in real and complex Clifford algebras.

Elements are stored blade-wise: a blade is a bitmask over the basis vectors
(bit ``i`` set means ``e_{i+1}`` occurs), which keeps every basis monomial in
the canonical increasing-index form.  Coefficients are exact Gaussian
rationals (see :mod:`spindex.exactnum`); float/complex coefficients are also
accepted for angle-parametrized constructions, in which case arithmetic is
plain IEEE.

Sign convention: generators square to minus their quadratic-form value,
``v * v == -q(v)``, so the Euclidean (all ``+1``) form has ``e_i**2 == -1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .exactnum import GaussianRational

MAX_DIM = 16

Coefficient = Union[GaussianRational, complex, float, int, Fraction]


class FormMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    """Diagonal quadratic form on R^dim with entries +1/-1."""

    dim: int
    signs: Tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.dim <= MAX_DIM):
            raise ValueError(f"dimension must be in [0, {MAX_DIM}], got {self.dim}")
        if len(self.signs) != self.dim:
            raise ValueError("signs length must equal dim")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs entries must be exactly +1 or -1")

    @classmethod
    def euclidean(cls, dim: int) -> "QuadraticForm":
        return cls(dim, (1,) * dim)

    @classmethod
    def of_signature(cls, plus: int, minus: int) -> "QuadraticForm":
        return cls(plus + minus, (1,) * plus + (-1,) * minus)

    def value(self, coords: Sequence) -> Coefficient:
        """q(v) for a coordinate vector."""
        total = None
        for s, c in zip(self.signs, coords):
            term = c * c if s == 1 else -(c * c)
            total = term if total is None else total + term
        return total if total is not None else 0


# ---------------------------------------------------------------------------
# blades
# ---------------------------------------------------------------------------

def blade_from_indices(indices: Iterable[int]) -> int:
    """Bitmask of a canonical blade from 1-based, strictly increasing indices."""
    mask = 0
    prev = 0
    for i in indices:
        if i <= prev:
            raise ValueError("blade indices must be strictly increasing and >= 1")
        mask |= 1 << (i - 1)
        prev = i
    return mask


def blade_indices(mask: int) -> Tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def blade_grade(mask: int) -> int:
    return mask.bit_count()


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i) for i in blade_indices(mask))


def _reorder_swaps(a: int, b: int) -> int:
    """Transpositions needed to interleave e_A e_B into canonical order."""
    swaps = 0
    for i in range(b.bit_length()):
        if b >> i & 1:
            swaps += (a >> (i + 1)).bit_count()
    return swaps


def blade_product(a: int, b: int, form: QuadraticForm) -> Tuple[GaussianRational, int]:
    """Product of two basis blades: (scalar factor, result blade).

    The factor is the transposition-count sign times ``-signs[i]`` for every
    repeated index (each ``e_i**2 = -q(e_i)``).
    """
    limit = 1 << form.dim
    if a >= limit or b >= limit:
        raise ValueError("blade does not fit in the quadratic form dimension")
    sign = -1 if _reorder_swaps(a, b) & 1 else 1
    common = a & b
    for i in range(common.bit_length()):
        if common >> i & 1:
            sign *= -form.signs[i]
    return GaussianRational(sign), a ^ b


def _blade_mul_sign(a: int, b: int, signs: Tuple[int, ...]) -> int:
    sign = -1 if _reorder_swaps(a, b) & 1 else 1
    common = a & b
    while common:
        low = common & -common
        sign *= -signs[low.bit_length() - 1]
        common ^= low
    return sign


# ---------------------------------------------------------------------------
# multivectors
# ---------------------------------------------------------------------------

class Multivector:
    """Element of Cl(V, q) with blade-indexed coefficients.

    Values behave immutably: all operations return fresh instances and the
    term map is never mutated after construction, so instances are safe to
    share across threads.
    """

    __slots__ = ("form", "_terms")

    def __init__(self, form: QuadraticForm, terms: Dict[int, Coefficient]):
        self.form = form
        limit = 1 << form.dim
        clean: Dict[int, Coefficient] = {}
        for mask, value in terms.items():
            if mask >= limit or mask < 0:
                raise ValueError("blade outside algebra dimension")
            if isinstance(value, (int, Fraction)):
                value = GaussianRational(value)
            if value:
                clean[mask] = value
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, form: QuadraticForm) -> "Multivector":
        return cls(form, {})

    @classmethod
    def scalar(cls, form: QuadraticForm, value) -> "Multivector":
        return cls(form, {0: value})

    @classmethod
    def basis_vector(cls, form: QuadraticForm, i: int) -> "Multivector":
        """e_i for 1-based index i."""
        if not 1 <= i <= form.dim:
            raise ValueError(f"basis index {i} out of range")
        return cls(form, {1 << (i - 1): GaussianRational(1)})

    @classmethod
    def blade(cls, form: QuadraticForm, indices: Iterable[int], coeff=1) -> "Multivector":
        return cls(form, {blade_from_indices(indices): coeff})

    @classmethod
    def vector(cls, form: QuadraticForm, coords: Sequence) -> "Multivector":
        if len(coords) != form.dim:
            raise ValueError("coordinate count must equal dimension")
        return cls(form, {1 << i: c for i, c in enumerate(coords)})

    # -- access --------------------------------------------------------------

    def terms(self) -> Dict[int, Coefficient]:
        return dict(self._terms)

    def coefficient(self, mask_or_indices) -> Coefficient:
        mask = (mask_or_indices if isinstance(mask_or_indices, int)
                else blade_from_indices(mask_or_indices))
        return self._terms.get(mask, GaussianRational(0))

    def scalar_part(self) -> Coefficient:
        return self._terms.get(0, GaussianRational(0))

    def grades(self):
        return sorted({blade_grade(m) for m in self._terms})

    def grade_part(self, k: int) -> "Multivector":
        return Multivector(self.form, {m: v for m, v in self._terms.items()
                                       if blade_grade(m) == k})

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self._terms)

    def is_vector(self) -> bool:
        return all(blade_grade(m) == 1 for m in self._terms)

    def vector_coords(self) -> List[Coefficient]:
        if not self.is_vector():
            raise ValueError("not a pure 1-vector")
        return [self._terms.get(1 << i, GaussianRational(0)) for i in range(self.form.dim)]

    # -- ring structure ------------------------------------------------------

    def _check_form(self, other: "Multivector"):
        if self.form != other.form:
            raise FormMismatchError("multivectors live in different Clifford algebras")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_form(other)
        acc = dict(self._terms)
        for m, v in other._terms.items():
            acc[m] = acc[m] + v if m in acc else v
        return Multivector(self.form, acc)

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_form(other)
        acc = dict(self._terms)
        for m, v in other._terms.items():
            acc[m] = acc[m] - v if m in acc else -v
        return Multivector(self.form, acc)

    def __neg__(self):
        return Multivector(self.form, {m: -v for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Multivector):
            return self._scale(other)
        self._check_form(other)
        signs = self.form.signs
        acc: Dict[int, Coefficient] = {}
        for ma, va in self._terms.items():
            for mb, vb in other._terms.items():
                s = _blade_mul_sign(ma, mb, signs)
                m = ma ^ mb
                term = va * vb if s == 1 else -(va * vb)
                acc[m] = acc[m] + term if m in acc else term
        return Multivector(self.form, acc)

    def __rmul__(self, other):
        # scalars commute with everything we ever scale by
        return self._scale(other)

    def _scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = GaussianRational(c)
        elif not isinstance(c, (GaussianRational, float, complex)):
            return NotImplemented
        return Multivector(self.form, {m: c * v for m, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.form == other.form and self._terms == other._terms

    def isclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        """Termwise comparison with tolerance (for float-coefficient paths)."""
        if self.form != other.form:
            return False
        masks = set(self._terms) | set(other._terms)
        for m in masks:
            a = self._terms.get(m, GaussianRational(0))
            b = other._terms.get(m, GaussianRational(0))
            av = a.to_complex() if isinstance(a, GaussianRational) else complex(a)
            bv = b.to_complex() if isinstance(b, GaussianRational) else complex(b)
            if abs(av - bv) > tol:
                return False
        return True

    def __hash__(self):
        return hash((self.form, frozenset(
            (m, v if isinstance(v, GaussianRational) else complex(v))
            for m, v in self._terms.items())))

    # -- involutions -----------------------------------------------------------

    def grade_involution(self) -> "Multivector":
        """alpha: negate odd-grade components (v -> -v on vectors)."""
        return Multivector(self.form, {
            m: (-v if blade_grade(m) & 1 else v) for m, v in self._terms.items()})

    def reversal(self) -> "Multivector":
        """Anti-automorphism e_{i1}...e_{ik} -> e_{ik}...e_{i1}."""
        out = {}
        for m, v in self._terms.items():
            k = blade_grade(m)
            out[m] = -v if (k * (k - 1) // 2) & 1 else v
        return Multivector(self.form, out)

    def grade_decompose(self) -> Tuple["Multivector", "Multivector"]:
        """Split into the +1 / -1 eigenspaces of the grade involution."""
        even = {m: v for m, v in self._terms.items() if not blade_grade(m) & 1}
        odd = {m: v for m, v in self._terms.items() if blade_grade(m) & 1}
        return Multivector(self.form, even), Multivector(self.form, odd)

    # -- inversion ----------------------------------------------------------

    def inverse(self) -> "Multivector":
        """Multiplicative inverse.

        Tries the Clifford-group shortcut rev(alpha(x)) / N(x) first and falls
        back to solving the left-multiplication linear system exactly.
        """
        candidate = self.reversal().grade_involution()
        norm = candidate * self
        # a left inverse in a finite-dimensional algebra is two-sided, so a
        # scalar nonzero norm already certifies the shortcut
        if norm.is_scalar() and not norm.is_zero():
            return candidate * _coeff_reciprocal(norm.scalar_part())
        return self._inverse_by_solving()

    def _inverse_by_solving(self) -> "Multivector":
        n = self.form.dim
        size = 1 << n
        exact = all(isinstance(v, GaussianRational) for v in self._terms.values())
        if not exact:
            import numpy as np
            mat = np.zeros((size, size), dtype=complex)
            for col in range(size):
                prod = self * Multivector(self.form, {col: 1.0 + 0.0j})
                for m, v in prod._terms.items():
                    mat[m, col] = complex(v)
            rhs = np.zeros(size, dtype=complex)
            rhs[0] = 1.0
            try:
                sol = np.linalg.solve(mat, rhs)
            except np.linalg.LinAlgError:
                raise ZeroDivisionError("multivector is not invertible")
            return Multivector(self.form, {m: sol[m] for m in range(size)})
        rows = [[GaussianRational(0)] * size for _ in range(size)]
        for col in range(size):
            prod = self * Multivector(self.form, {col: GaussianRational(1)})
            for m, v in prod._terms.items():
                rows[m][col] = v
        rhs = [GaussianRational(0)] * size
        rhs[0] = GaussianRational(1)
        sol = _solve_exact(rows, rhs)
        return Multivector(self.form, dict(enumerate(sol)))

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for m in sorted(self._terms):
            v = self._terms[m]
            if not isinstance(v, GaussianRational):
                v = GaussianRational(Fraction(complex(v).real), Fraction(complex(v).imag))
            terms.append({"blade": list(blade_indices(m)),
                          "re": str(v.re), "im": str(v.im)})
        return {"dim": self.form.dim, "signs": list(self.form.signs), "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "Multivector":
        form = QuadraticForm(data["dim"], tuple(data["signs"]))
        terms = {}
        for t in data["terms"]:
            mask = blade_from_indices(t["blade"])
            terms[mask] = GaussianRational.parse(str(t["re"]), str(t.get("im", "0")))
        return cls(form, terms)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda m: (blade_grade(m), m)):
            v = self._terms[m]
            parts.append(f"({v})*{blade_name(m)}" if m else f"({v})")
        return " + ".join(parts)


def _coeff_reciprocal(c):
    if isinstance(c, GaussianRational):
        return GaussianRational(1) / c
    return 1.0 / c


def _solve_exact(rows: List[List[GaussianRational]], rhs: List[GaussianRational]):
    """Gaussian elimination over Q(i); raises ZeroDivisionError if singular."""
    n = len(rows)
    a = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("multivector is not invertible")
        a[col], a[pivot] = a[pivot], a[col]
        inv = GaussianRational(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# the even-subalgebra embedding Cl_{n-1} -> Cl^0_n
# ---------------------------------------------------------------------------

def embed_lower(x: Multivector, target: QuadraticForm) -> Multivector:
    """Algebra map Cl(n-1) -> Cl^0(n) on generators ``e_i -> e_i e_n``.

    The source form must satisfy ``signs_src[i] == signs_tgt[i] * signs_tgt[n-1]``
    so that the generator relations are preserved.
    """
    src = x.form
    if target.dim != src.dim + 1:
        raise ValueError("target dimension must be source dimension + 1")
    last = target.signs[-1]
    for i in range(src.dim):
        if src.signs[i] != target.signs[i] * last:
            raise ValueError("incompatible signs between source and target forms")
    e_n = Multivector.basis_vector(target, target.dim)
    out = Multivector.zero(target)
    for mask, v in x.terms().items():
        img = Multivector.scalar(target, 1)
        for i in blade_indices(mask):
            img = img * (Multivector.basis_vector(target, i) * e_n)
        out = out + img * v
    return out


# ---------------------------------------------------------------------------
# algebra classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraType:
    """Matrix-algebra type: one or two factors M(size, D) with D in {R, C, H}."""

    factors: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        if not 1 <= len(self.factors) <= 2:
            raise ValueError("one or two factors expected")
        for tag, size in self.factors:
            if tag not in ("R", "C", "H") or size < 1:
                raise ValueError(f"bad factor ({tag}, {size})")

    def real_dimension(self) -> int:
        per = {"R": 1, "C": 2, "H": 4}
        return sum(per[tag] * size * size for tag, size in self.factors)

    def to_json(self) -> dict:
        return {"factors": [[tag, size] for tag, size in self.factors]}

    def __str__(self):
        return " + ".join(f"M({size},{tag})" for tag, size in self.factors)


def classify_real(plus: int, minus: int) -> AlgebraType:
    """Type of the real Clifford algebra with ``plus`` generators of square -1
    and ``minus`` of square +1, computed from structural invariants (center
    dimension, square of the central element, signature of the trace form)."""
    n = plus + minus
    if n > 12:
        raise ValueError("real classification capped at 12 generators")
    form = QuadraticForm.of_signature(plus, minus)
    signs = form.signs

    center = _center_blades(n)
    # trace form B(x, y) = scalar part of x*y is diagonal on blades; its
    # signature separates R / C / H blocks.
    signature = 0
    for mask in range(1 << n):
        signature += _blade_mul_sign(mask, mask, signs)

    if len(center) == 1:
        if signature > 0:
            k = signature
            algebra = AlgebraType((("R", k),))
        elif signature < 0:
            k = -signature // 2
            algebra = AlgebraType((("H", k),))
        else:
            raise ArithmeticError("central simple algebra with zero signature")
    else:
        vol = center[1]
        vol_sq = _blade_mul_sign(vol, vol, signs)
        if vol_sq == -1:
            k = 1 << ((n - 1) // 2)
            algebra = AlgebraType((("C", k),))
            if signature != 0:
                raise ArithmeticError("complex-center algebra must have zero signature")
        else:
            if signature > 0:
                k = signature // 2
                algebra = AlgebraType((("R", k), ("R", k)))
            elif signature < 0:
                k = -signature // 4
                algebra = AlgebraType((("H", k), ("H", k)))
            else:
                raise ArithmeticError("split-center algebra must have nonzero signature")
    if algebra.real_dimension() != 1 << n:
        raise ArithmeticError(f"classification inconsistent for ({plus},{minus})")
    return algebra


def _center_blades(n: int) -> List[int]:
    """Blades commuting with every generator (exact computation)."""
    out = []
    for mask in range(1 << n):
        k = blade_grade(mask)
        central = True
        for i in range(n):
            inside = mask >> i & 1
            if (k - inside) & 1:
                central = False
                break
        if central:
            out.append(mask)
    return out


def classify_complex(n: int, verify: bool = True) -> AlgebraType:
    """Type of the complex Clifford algebra of dimension n.

    With ``verify=True`` the answer is certified by building the explicit
    spinor representation and checking that the images of all 2^n basis
    blades are linearly independent (pairwise Hilbert-Schmidt orthogonal with
    nonzero norm), which pins down surjectivity by dimension count.
    """
    if n < 0:
        raise ValueError("dimension must be >= 0")
    if n % 2 == 0:
        algebra = AlgebraType((("C", 1 << (n // 2)),))
    else:
        half = 1 << ((n - 1) // 2)
        algebra = AlgebraType((("C", half), ("C", half)))
    if verify and n > 0:
        from . import spinors
        if n > 12:
            raise ValueError("verified classification capped at dimension 12")
        if n % 2 == 0:
            gammas = spinors.gamma_matrices(n)
            reps = [gammas]
        else:
            plus, minus = spinors.odd_irreps(n)
            reps = [plus.generators, minus.generators]
        for mask in range(1, 1 << n):
            tr = 0.0 + 0.0j
            for gens in reps:
                tr += _blade_image_trace(mask, gens)
            if tr != 0:
                raise ArithmeticError(
                    f"blade {blade_name(mask)} image has nonzero trace {tr}; "
                    "representation not an isomorphism")
    return algebra


def _blade_image_trace(mask: int, gens) -> complex:
    import numpy as np
    img = None
    for i in range(mask.bit_length()):
        if mask >> i & 1:
            img = gens[i].copy() if img is None else img @ gens[i]
    return complex(np.trace(img))
