"""Composition algebras by structure constants.

Quaternions, octonions and the dimension-16 negative control are built
by iterated doubling from the ground field: C = A + A*u with u^2 = c and

    (x, y) (z, w) = (x z + c conj(w) y,  w x + y conj(z)).

The norm of the double is <1,-c> tensor N_A, so an algebra built on
slots (a, b, ...) has the corresponding Pfister form as its norm.
Element coordinates are exact Laurent polynomials; the operations used
here (multiply, conjugate, norm, trace) never leave that ring.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import AlgebraMismatch, DimTooLarge, UnsupportedDim, ZeroSlot
from .fields import FieldTower, SquareClass
from .laurent import LaurentPoly, lift_poly
from .qform import is_isotropic, pfister


class CompositionAlgebra:
    """Structure-constant table with its construction history and norm form."""

    def __init__(self, tower, slots, mul_table, norm_coeffs):
        self.tower = tower
        self.slots = tuple(slots)
        self.dim = len(mul_table)
        self.mul_table = mul_table
        self.norm_coeffs = tuple(norm_coeffs)  # exact signed slot products
        self.norm = pfister(tower, self.slots)
        assert self.norm.dim == self.dim
        assert all(
            c.square_class() == e for c, e in zip(self.norm_coeffs, self.norm.entries)
        )

    def __eq__(self, other):
        return (
            isinstance(other, CompositionAlgebra)
            and self.tower == other.tower
            and self.slots == other.slots
        )

    def __hash__(self):
        return hash((self.tower, self.slots))

    def __str__(self):
        inner = ",".join(str(s) for s in self.slots)
        return f"CD({self.tower}; {inner})" if inner else f"CD({self.tower})"

    __repr__ = __str__

    def element(self, coords) -> "AlgebraElement":
        coords = tuple(LaurentPoly.coerce(self.tower, c) for c in coords)
        if len(coords) != self.dim:
            raise AlgebraMismatch(f"need {self.dim} coordinates, got {len(coords)}")
        return AlgebraElement(self, coords)

    def basis(self, i: int) -> "AlgebraElement":
        coords = [0] * self.dim
        coords[i] = 1
        return self.element(coords)

    def one(self) -> "AlgebraElement":
        return self.basis(0)


@dataclass(frozen=True)
class AlgebraElement:
    algebra: CompositionAlgebra
    coords: tuple[LaurentPoly, ...]

    def _check(self, other):
        if self.algebra != other.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            c = LaurentPoly.coerce(self.algebra.tower, other)
            return AlgebraElement(self.algebra, tuple(c * a for a in self.coords))
        self._check(other)
        A = self.algebra
        zero = LaurentPoly.zero(A.tower)
        acc = [zero] * A.dim
        for i, xi in enumerate(self.coords):
            if xi.is_zero:
                continue
            for j, yj in enumerate(other.coords):
                if yj.is_zero:
                    continue
                c = xi * yj
                for k, v in enumerate(A.mul_table[i][j]):
                    if not v.is_zero:
                        acc[k] = acc[k] + c * v
        return AlgebraElement(A, tuple(acc))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    def conj(self) -> "AlgebraElement":
        return AlgebraElement(
            self.algebra, (self.coords[0],) + tuple(-c for c in self.coords[1:])
        )

    def trace(self) -> LaurentPoly:
        return self.coords[0] + self.coords[0]

    def norm(self) -> LaurentPoly:
        """x * conj(x), landing in the scalar span."""
        prod = self * self.conj()
        assert all(c.is_zero for c in prod.coords[1:]), "norm left the scalar span"
        return prod.coords[0]

    def norm_form_value(self) -> LaurentPoly:
        """The norm evaluated as a diagonal form on the coordinates."""
        out = LaurentPoly.zero(self.algebra.tower)
        for c, x in zip(self.algebra.norm_coeffs, self.coords):
            out = out + c * x * x
        return out

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    __repr__ = __str__


def base_algebra(tower: FieldTower) -> CompositionAlgebra:
    one = LaurentPoly.const(tower, 1)
    return CompositionAlgebra(tower, (), (((one,),),), (one,))


def cayley_dickson(A: CompositionAlgebra, c: SquareClass) -> CompositionAlgebra:
    """Double A with a new unit of square c."""
    if A.dim >= 16:
        raise DimTooLarge("doubling past dimension 16 is not supported")
    if not isinstance(c, SquareClass):
        raise ZeroSlot("doubling slot must be a nonzero square class")
    if c.tower != A.tower:
        raise AlgebraMismatch(f"{c.tower} vs {A.tower}")
    tower = A.tower
    d = A.dim
    cm = LaurentPoly.of_class(c)
    zero = LaurentPoly.zero(tower)

    def widened(vec, block):
        out = [zero] * (2 * d)
        for k, v in enumerate(vec):
            out[block * d + k] = v
        return tuple(out)

    def conj_sign(idx):
        return 1 if idx == 0 else -1

    table = []
    for i in range(2 * d):
        bi, ii = divmod(i, d)
        row = []
        for j in range(2 * d):
            bj, jj = divmod(j, d)
            if bi == 0 and bj == 0:
                row.append(widened(A.mul_table[ii][jj], 0))
            elif bi == 0 and bj == 1:
                # (a,0)(0,b) = (0, b a)
                row.append(widened(A.mul_table[jj][ii], 1))
            elif bi == 1 and bj == 0:
                # (0,a)(b,0) = (0, a conj(b))
                sign = conj_sign(jj)
                row.append(widened([sign * v for v in A.mul_table[ii][jj]], 1))
            else:
                # (0,a)(0,b) = (c conj(b) a, 0)
                sign = conj_sign(jj)
                row.append(widened([sign * cm * v for v in A.mul_table[jj][ii]], 0))
        table.append(tuple(row))
    norm_coeffs = A.norm_coeffs + tuple(-(cm * m) for m in A.norm_coeffs)
    return CompositionAlgebra(tower, A.slots + (c,), tuple(table), norm_coeffs)


def quaternion(tower: FieldTower, a: SquareClass, b: SquareClass) -> CompositionAlgebra:
    """Basis 1, i, j, ij with i^2 = a, j^2 = b, ij = -ji; norm <<a,b>>."""
    return cayley_dickson(cayley_dickson(base_algebra(tower), a), b)


def octonion(
    tower: FieldTower, a: SquareClass, b: SquareClass, c: SquareClass
) -> CompositionAlgebra:
    return cayley_dickson(quaternion(tower, a, b), c)


def algebra_from_slots(
    tower: FieldTower, slots: Sequence[SquareClass]
) -> CompositionAlgebra:
    A = base_algebra(tower)
    for s in slots:
        A = cayley_dickson(A, s)
    return A


def is_split(A: CompositionAlgebra) -> bool:
    """Split means isotropic (equivalently hyperbolic) norm form."""
    if A.dim not in (2, 4, 8):
        raise UnsupportedDim(f"splitness is defined for dimensions 2, 4, 8; got {A.dim}")
    return is_isotropic(A.norm)


def composition_defect(x: AlgebraElement, y: AlgebraElement) -> LaurentPoly:
    """N(xy) - N(x)N(y), exactly; zero in every true composition algebra."""
    if x.algebra != y.algebra:
        raise AlgebraMismatch(f"{x.algebra} vs {y.algebra}")
    return (x * y).norm_form_value() - x.norm_form_value() * y.norm_form_value()


# -- witnesses -----------------------------------------------------------------


def _monomial_sqrt(tower: FieldTower, value: LaurentPoly) -> Optional[LaurentPoly]:
    """Exact square root of a square monomial, when representable."""
    if value.is_zero or len(value.terms) != 1:
        return None
    ((exps, coeff),) = value.terms
    if any(e % 2 for e in exps):
        return None
    half = dict(zip(tower.laurent_vars, (e // 2 for e in exps)))
    if tower.kind == "F":
        p = tower.p
        root = next((r for r in range(1, p) if r * r % p == coeff % p), None)
        if root is None:
            return None
    else:
        if coeff <= 0:
            return None
        num, den = coeff.numerator, coeff.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            return None
        root = Fraction(rn, rd)
    return LaurentPoly.monomial(tower, root, half)


def _isotropy_coords(
    tower: FieldTower, coeffs: Sequence[LaurentPoly]
) -> Optional[list[LaurentPoly]]:
    """Exact nonzero solution of sum c_i x_i^2 = 0, monomial coefficients.

    Recursion on the outermost variable: indices are grouped by the
    parity of their uniformizer exponent, a witness found for a block's
    unit parts lifts back after dividing out even monomial factors.
    Over the base field: a two-entry block solved by an exact square
    root, or a brute-force triple (F_p), or a small bounded search (Q).
    """
    n = len(coeffs)
    if tower.laurent_vars:
        inner = tower.inner()
        blocks: dict[int, list[int]] = {0: [], 1: []}
        for idx, c in enumerate(coeffs):
            ((exps, _),) = c.terms
            blocks[exps[-1] % 2].append(idx)
        for parity, idxs in blocks.items():
            if not idxs:
                continue
            sub = []
            for idx in idxs:
                ((exps, coeff),) = coeffs[idx].terms
                sub.append(
                    LaurentPoly.monomial(
                        inner, coeff, dict(zip(inner.laurent_vars, exps[:-1]))
                    )
                )
            got = _isotropy_coords(inner, sub)
            if got is None:
                continue
            out = [LaurentPoly.zero(tower)] * n
            for idx, val in zip(idxs, got):
                ((exps, _),) = coeffs[idx].terms
                shift = -(exps[-1] - parity) // 2
                out[idx] = lift_poly(val, tower) * LaurentPoly.variable(
                    tower, tower.outer_var, shift
                )
            total = LaurentPoly.zero(tower)
            for c, x in zip(coeffs, out):
                total = total + c * x * x
            assert total.is_zero
            return out
        return None

    # base field: try binary blocks first, then small isotropic triples
    for i in range(n):
        for j in range(i + 1, n):
            root = _monomial_sqrt(tower, -(coeffs[i] * coeffs[j]))
            if root is not None:
                out = [LaurentPoly.zero(tower)] * n
                out[i] = root
                out[j] = coeffs[i]
                return out
    if n >= 3 and tower.kind == "F" and tower.degree == 1:
        p = tower.p
        c0, c1, c2 = (c.terms[0][1] for c in coeffs[:3])
        for x0, x1, x2 in itertools.product(range(p), repeat=3):
            if x0 == x1 == x2 == 0:
                continue
            if (c0 * x0 * x0 + c1 * x1 * x1 + c2 * x2 * x2) % p == 0:
                out = [LaurentPoly.zero(tower)] * n
                out[0] = LaurentPoly.const(tower, x0)
                out[1] = LaurentPoly.const(tower, x1)
                out[2] = LaurentPoly.const(tower, x2)
                return out
    if n >= 3 and tower.kind == "Q":
        vals = [c.terms[0][1] for c in coeffs[:3]]
        for x0, x1 in itertools.product(range(31), repeat=2):
            if x0 == x1 == 0:
                continue
            rhs = -(vals[0] * x0 * x0 + vals[1] * x1 * x1) / vals[2]
            if rhs <= 0:
                continue
            root = _monomial_sqrt(tower, LaurentPoly.const(tower, rhs))
            if root is not None:
                out = [LaurentPoly.zero(tower)] * n
                out[0] = LaurentPoly.const(tower, x0)
                out[1] = LaurentPoly.const(tower, x1)
                out[2] = root
                return out
    return None


def zero_divisor_pair(A: CompositionAlgebra):
    """A pair (x, conj x) of nonzero elements multiplying to zero, or None.

    The search is exact, so a returned pair is always genuine; it can
    only succeed when the norm form is isotropic.
    """
    coords = _isotropy_coords(A.tower, list(A.norm_coeffs))
    if coords is None:
        return None
    x = A.element(coords)
    assert not x.is_zero and x.norm().is_zero
    pair = (x, x.conj())
    assert (pair[0] * pair[1]).is_zero
    return pair


def find_defect_witness(A: CompositionAlgebra):
    """Sparse pair with N(xy) != N(x)N(y); such pairs exist in dimension 16."""
    idx = range(A.dim)
    for i, j in itertools.combinations(idx, 2):
        x = A.basis(i) + A.basis(j)
        for k, l in itertools.combinations(idx, 2):
            for sign in (1, -1):
                y = A.basis(k) + (A.basis(l) * sign)
                defect = composition_defect(x, y)
                if not defect.is_zero:
                    return x, y, defect
    return None
