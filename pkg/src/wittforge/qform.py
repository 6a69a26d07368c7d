"""Diagonal quadratic form algebra: Pfister forms, isotropy, Witt theory.

Forms are always diagonal, with canonical square classes as entries.
Isotropy dispatches per field: sign counting over real bases, dimension
and discriminant rules over finite bases, Springer's residue-form
recursion over Laurent towers, and the local-global machinery of
``arithq`` over Q.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import (
    Degenerate,
    DeltaIsSquare,
    FieldMismatch,
    NoSplit,
    NotPfister,
    NotSymmetric,
    WitnessUnsupported,
    ZeroScale,
)
from .fields import (
    FieldTower,
    QuadraticExtension,
    SquareClass,
    enumerate_square_classes,
    lift_class,
    minus_one_class,
    one_class,
    residue_split,
    sq_mul,
    var_class,
)
from .laurent import LaurentPoly


def _pfister_expansion(tower: FieldTower, slots) -> tuple[SquareClass, ...]:
    """Entries of <<a_1,...,a_n>>: fold e -> e ++ (-a)*e over the slots."""
    m1 = minus_one_class(tower)
    entries = [one_class(tower)]
    for a in slots:
        neg_a = sq_mul(m1, a)
        entries = entries + [sq_mul(neg_a, e) for e in entries]
    return tuple(entries)


@dataclass(frozen=True)
class DiagonalForm:
    tower: FieldTower
    entries: tuple[SquareClass, ...]
    pfister_slots: Optional[tuple[SquareClass, ...]] = None

    def __post_init__(self):
        for e in self.entries:
            if e.tower != self.tower:
                raise FieldMismatch(f"entry {e} lives over {e.tower}, not {self.tower}")
        if self.pfister_slots is not None:
            if self.entries != _pfister_expansion(self.tower, self.pfister_slots):
                raise ValueError("entries do not match the recorded Pfister expansion")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def is_pfister(self) -> bool:
        return self.pfister_slots is not None

    def __str__(self) -> str:
        return "[" + ",".join(str(e) for e in self.entries) + "]"

    __repr__ = __str__


def form(tower: FieldTower, entries: Sequence[SquareClass]) -> DiagonalForm:
    return DiagonalForm(tower, tuple(entries))


@lru_cache(maxsize=None)
def _pfister_cached(tower: FieldTower, slots: tuple) -> DiagonalForm:
    return DiagonalForm(tower, _pfister_expansion(tower, slots), slots)


def pfister(tower: FieldTower, slots: Sequence[SquareClass]) -> DiagonalForm:
    """The n-fold Pfister form <1,-a_1> x ... x <1,-a_n>, provenance kept."""
    return _pfister_cached(tower, tuple(slots))


def pure_part(f: DiagonalForm) -> DiagonalForm:
    """Complement of the leading <1> in a Pfister form."""
    if not f.is_pfister:
        raise NotPfister(f"{f} carries no Pfister provenance")
    return DiagonalForm(f.tower, f.entries[1:])


def orthogonal_sum(f: DiagonalForm, g: DiagonalForm) -> DiagonalForm:
    if f.tower != g.tower:
        raise FieldMismatch(f"{f.tower} vs {g.tower}")
    return DiagonalForm(f.tower, f.entries + g.entries)


def tensor(f: DiagonalForm, g: DiagonalForm) -> DiagonalForm:
    """Tensor product; blocks of g scaled by the entries of f.

    When both factors are Pfister the product is the Pfister form on the
    concatenated slots, entry-exactly.
    """
    if f.tower != g.tower:
        raise FieldMismatch(f"{f.tower} vs {g.tower}")
    entries = tuple(sq_mul(a, b) for a in f.entries for b in g.entries)
    slots = None
    if f.pfister_slots is not None and g.pfister_slots is not None:
        slots = g.pfister_slots + f.pfister_slots
    return DiagonalForm(f.tower, entries, slots)


def scale(f: DiagonalForm, a) -> DiagonalForm:
    """Multiply every entry by the class of ``a``."""
    if not isinstance(a, SquareClass):
        if a == 0:
            raise ZeroScale("cannot scale a form by 0")
        a = LaurentPoly.const(f.tower, a).square_class()
    if a.tower != f.tower:
        raise FieldMismatch(f"{a.tower} vs {f.tower}")
    entries = tuple(sq_mul(a, e) for e in f.entries)
    slots = f.pfister_slots if a.is_one else None
    return DiagonalForm(f.tower, entries, slots)


def negate(f: DiagonalForm) -> DiagonalForm:
    return scale(f, minus_one_class(f.tower))


# -- Gram matrix diagonalization ---------------------------------------------


def _congruence(m, t, tower):
    """t^T m t for square LaurentPoly matrices."""
    n = len(m)
    zero = LaurentPoly.zero(tower)
    mt = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if m[i][k].is_zero or t[k][j].is_zero:
                    continue
                acc = acc + m[i][k] * t[k][j]
            mt[i][j] = acc
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                if t[k][i].is_zero or mt[k][j].is_zero:
                    continue
                acc = acc + t[k][i] * mt[k][j]
            out[i][j] = acc
    return out


def _identity(n, tower):
    one = LaurentPoly.const(tower, 1)
    zero = LaurentPoly.zero(tower)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def diagonalize(tower: FieldTower, gram) -> DiagonalForm:
    """Diagonal form isometric to the symmetric Gram matrix.

    Fraction-free symmetric reduction: basis vector i is replaced by
    pivot*e_i - m_ik*e_k, which rescales entries by squares only.  Zero
    diagonals are repaired by e_i += e_j using an off-diagonal entry
    (2 m_ij != 0 in odd characteristic).
    """
    m = [[LaurentPoly.coerce(tower, v) for v in row] for row in gram]
    n = len(m)
    if any(len(row) != n for row in m):
        raise NotSymmetric("Gram matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")

    for k in range(n):
        if m[k][k].is_zero:
            swap = next(
                (i for i in range(k + 1, n) if not m[i][i].is_zero), None
            )
            if swap is not None:
                t = _identity(n, tower)
                t[k][k] = t[swap][swap] = LaurentPoly.zero(tower)
                t[k][swap] = t[swap][k] = LaurentPoly.const(tower, 1)
                m = _congruence(m, t, tower)
            else:
                pair = next(
                    (
                        (i, j)
                        for i in range(k, n)
                        for j in range(i + 1, n)
                        if not m[i][j].is_zero
                    ),
                    None,
                )
                if pair is None:
                    raise Degenerate("Gram matrix is singular")
                i, j = pair
                t = _identity(n, tower)
                t[j][i] = LaurentPoly.const(tower, 1)  # e_i += e_j
                m = _congruence(m, t, tower)
                if i != k:
                    t = _identity(n, tower)
                    t[k][k] = t[i][i] = LaurentPoly.zero(tower)
                    t[k][i] = t[i][k] = LaurentPoly.const(tower, 1)
                    m = _congruence(m, t, tower)
        pivot = m[k][k]
        t = _identity(n, tower)
        for i in range(k + 1, n):
            if not m[i][k].is_zero:
                t[i][i] = pivot
                t[k][i] = -m[i][k]
        m = _congruence(m, t, tower)

    return DiagonalForm(tower, tuple(m[k][k].square_class() for k in range(n)))


# -- isotropy, Witt decomposition -----------------------------------------------


def residue_forms(f: DiagonalForm) -> tuple[DiagonalForm, DiagonalForm]:
    """Unit-part and uniformizer-part residue forms over the inner tower."""
    inner = f.tower.inner()
    units, twisted = [], []
    for e in f.entries:
        parity, unit = residue_split(f.tower, e)
        (twisted if parity else units).append(unit)
    return DiagonalForm(inner, tuple(units)), DiagonalForm(inner, tuple(twisted))


def _sorted_entries(f: DiagonalForm) -> tuple[SquareClass, ...]:
    return tuple(sorted(f.entries, key=lambda e: e.sort_key()))


@lru_cache(maxsize=None)
def _isotropic(tower: FieldTower, entries: tuple[SquareClass, ...]) -> bool:
    f = DiagonalForm(tower, entries)
    if f.dim == 0:
        return False
    if tower.laurent_vars:
        f1, f2 = residue_forms(f)
        return _isotropic(f1.tower, _sorted_entries(f1)) or _isotropic(
            f2.tower, _sorted_entries(f2)
        )
    if tower.kind == "R":
        signs = {e.base for e in entries}
        return signs == {1, -1}
    if tower.kind == "F":
        if f.dim >= 3:
            return True
        if f.dim == 2:
            d = sq_mul(minus_one_class(tower), sq_mul(entries[0], entries[1]))
            return d.is_one
        return False
    from . import arithq

    return arithq.global_isotropy(f)


def is_isotropic(f: DiagonalForm) -> bool:
    return _isotropic(f.tower, _sorted_entries(f))


@dataclass(frozen=True)
class WittDecomposition:
    witt_index: int
    kernel_dim: int
    kernel: Optional[DiagonalForm] = None  # None when only invariants survive (Q)
    kernel_invariants: Optional[object] = None  # arithq.RationalInvariants

    @property
    def is_hyperbolic(self) -> bool:
        return self.kernel_dim == 0

    @property
    def dim(self) -> int:
        return 2 * self.witt_index + self.kernel_dim


def _witt_prime_base(tower: FieldTower, entries) -> WittDecomposition:
    d = len(entries)
    if d == 0:
        return WittDecomposition(0, 0, DiagonalForm(tower, ()))
    if d == 1:
        return WittDecomposition(0, 1, DiagonalForm(tower, entries))
    disc = one_class(tower)
    for e in entries:
        disc = sq_mul(disc, e)
    m1 = minus_one_class(tower)

    def sign_power(k):
        return m1 if k % 2 else one_class(tower)

    if d == 2:
        if sq_mul(m1, disc).is_one:
            return WittDecomposition(1, 0, DiagonalForm(tower, ()))
        return WittDecomposition(0, 2, DiagonalForm(tower, entries))
    if d % 2 == 0:
        if disc == sign_power(d // 2):
            return WittDecomposition(d // 2, 0, DiagonalForm(tower, ()))
        wi = (d - 2) // 2
        k2 = sq_mul(disc, sign_power(wi))
        kernel = DiagonalForm(tower, (one_class(tower), k2))
        return WittDecomposition(wi, 2, kernel)
    wi = (d - 1) // 2
    kernel = DiagonalForm(tower, (sq_mul(disc, sign_power(wi)),))
    return WittDecomposition(wi, 1, kernel)


@lru_cache(maxsize=None)
def _witt(tower: FieldTower, entries: tuple[SquareClass, ...]) -> WittDecomposition:
    f = DiagonalForm(tower, entries)
    if tower.laurent_vars:
        f1, f2 = residue_forms(f)
        w1 = _witt(f1.tower, _sorted_entries(f1))
        w2 = _witt(f2.tower, _sorted_entries(f2))
        kernel = None
        if w1.kernel is not None and w2.kernel is not None:
            t = var_class(tower, tower.outer_var)
            lifted = tuple(lift_class(e, tower) for e in w1.kernel.entries) + tuple(
                sq_mul(t, lift_class(e, tower)) for e in w2.kernel.entries
            )
            kernel = DiagonalForm(tower, lifted)
        return WittDecomposition(
            w1.witt_index + w2.witt_index, w1.kernel_dim + w2.kernel_dim, kernel
        )
    if tower.kind == "R":
        pos = sum(1 for e in entries if e.base == 1)
        neg = len(entries) - pos
        wi = min(pos, neg)
        leftover = (one_class(tower),) * (pos - wi) + (
            minus_one_class(tower),
        ) * (neg - wi)
        return WittDecomposition(wi, len(leftover), DiagonalForm(tower, leftover))
    if tower.kind == "F":
        return _witt_prime_base(tower, entries)
    from . import arithq

    return arithq.witt_index_rational(f)


def witt_decompose(f: DiagonalForm) -> WittDecomposition:
    return _witt(f.tower, _sorted_entries(f))


def is_hyperbolic(f: DiagonalForm) -> bool:
    return witt_decompose(f).is_hyperbolic


@lru_cache(maxsize=None)
def _isometric(tower, entries_f, entries_g) -> bool:
    f = DiagonalForm(tower, entries_f)
    g = DiagonalForm(tower, entries_g)
    if tower.kind == "Q" and not tower.laurent_vars:
        from . import arithq

        return arithq.rational_invariants(f) == arithq.rational_invariants(g)
    return is_hyperbolic(orthogonal_sum(f, negate(g)))


def is_isometric(f: DiagonalForm, g: DiagonalForm) -> bool:
    """Witt cancellation: same dimension and hyperbolic difference."""
    if f.tower != g.tower:
        raise FieldMismatch(f"{f.tower} vs {g.tower}")
    if f.dim != g.dim:
        return False
    return _isometric(f.tower, _sorted_entries(f), _sorted_entries(g))


# -- splitting over quadratic extensions -------------------------------------------


def map_form(f: DiagonalForm, ext: QuadraticExtension) -> DiagonalForm:
    """Base change along a quadratic extension's transfer map."""
    entries = tuple(ext.transfer(e) for e in f.entries)
    slots = (
        tuple(ext.transfer(s) for s in f.pfister_slots)
        if f.pfister_slots is not None
        else None
    )
    return DiagonalForm(ext.tower, entries, slots)


def splits_over_quadratic(f: DiagonalForm, delta: SquareClass) -> bool:
    """Whether the Pfister form becomes hyperbolic over tower(sqrt(delta)).

    Decided entirely downstairs: a hyperbolic form splits over anything,
    and otherwise the pure subform represents -delta exactly when the
    extension kills the form.
    """
    if not f.is_pfister:
        raise NotPfister(f"{f} carries no Pfister provenance")
    if delta.tower != f.tower:
        raise FieldMismatch(f"{delta.tower} vs {f.tower}")
    if delta.is_one:
        raise DeltaIsSquare(f"{delta} is a square")
    if is_isotropic(f):  # isotropic Pfister forms are hyperbolic
        return True
    probe = orthogonal_sum(pure_part(f), DiagonalForm(f.tower, (delta,)))
    return is_isotropic(probe)


def pfister_slot_witness(
    f: DiagonalForm, delta: SquareClass
) -> tuple[SquareClass, ...]:
    """Slots (delta, b_2, ..., b_n) presenting f with delta in front.

    Exhaustive over the square-class group, so only available over
    enumerable towers; over Q the split/no-split decision is all there is.
    """
    if not f.is_pfister:
        raise NotPfister(f"{f} carries no Pfister provenance")
    if not f.tower.is_enumerable:
        raise WitnessUnsupported(f"witness search needs a finite class group, not {f.tower}")
    if not splits_over_quadratic(f, delta):
        raise NoSplit(f"{f} does not split over sqrt({delta})")
    n = len(f.pfister_slots)
    classes = enumerate_square_classes(f.tower)
    import itertools

    for rest in itertools.product(classes, repeat=n - 1):
        candidate = (delta,) + rest
        if is_isometric(pfister(f.tower, candidate), f):
            return candidate
    raise AssertionError("splitting Pfister form with no slot presentation")
