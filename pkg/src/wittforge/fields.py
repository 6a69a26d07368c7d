"""Canonical square-class arithmetic over towers of computable fields.

A field tower is a base field -- Q, F_p (p an odd prime), or a formally
real base that only remembers signs -- with a stack of Laurent series
variables, innermost first.  ``F13((s))((t))`` has variables ("s", "t")
and t is the outermost uniformizer.

Everything downstream works with canonical square classes instead of raw
field elements: quadratic form theory over these fields only sees the
group k^x / k^{x2}.  Canonical representatives:

* Q       signed squarefree integer (trial-divided up to a configurable
          bound, ``WITTFORGE_FACTOR_BOUND``),
* F_p     1 or the least positive quadratic nonresidue u,
* signs   +1 / -1,

each times a set of Laurent variables with odd exponent.

The unramified quadratic extension of an F_p tower is modelled by the
same prime with ``degree == 2`` (the field F_{p^2}); its square-class
group is still {1, u} but every base constant is a square there.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .errors import (
    DeltaIsSquare,
    FactorBoundExceeded,
    FieldMismatch,
    InfiniteSquareClassGroup,
    NotLaurent,
    UnknownVariable,
    UnsupportedDelta,
    ZeroElement,
)

DEFAULT_FACTOR_BOUND = 10**6


def factor_bound() -> int:
    return int(os.environ.get("WITTFORGE_FACTOR_BOUND", DEFAULT_FACTOR_BOUND))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p; 0 when p divides a."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


@lru_cache(maxsize=None)
def _sign_and_primes(n: int, bound: int) -> tuple[int, tuple[int, ...]]:
    """Squarefree decomposition of n by trial division up to ``bound``.

    Returns (sign, primes with odd multiplicity).  A remaining cofactor
    that is a perfect square contributes nothing; anything else past the
    bound raises FactorBoundExceeded.
    """
    sign = -1 if n < 0 else 1
    n = abs(n)
    primes = []
    d = 2
    while d * d <= n and d <= bound:
        if n % d == 0:
            mult = 0
            while n % d == 0:
                n //= d
                mult += 1
            if mult % 2:
                primes.append(d)
        d += 1 if d == 2 else 2
    if n > 1:
        if n <= bound:
            primes.append(n)
        else:
            r = int(n**0.5)
            while r * r < n:
                r += 1
            if r * r != n:
                raise FactorBoundExceeded(
                    f"cofactor {n} exceeds the trial division bound {bound}"
                )
    return sign, tuple(sorted(primes))


def squarefree_decomposition(value) -> tuple[int, tuple[int, ...]]:
    """(sign, odd-multiplicity primes) of a nonzero int or Fraction."""
    if isinstance(value, Fraction):
        n = value.numerator * value.denominator
    else:
        n = int(value)
    if n == 0:
        raise ZeroElement("0 has no square class")
    return _sign_and_primes(n, factor_bound())


_IDENT_OK = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


@dataclass(frozen=True)
class FieldTower:
    """Base field descriptor plus ordered Laurent variables (innermost first)."""

    kind: str  # "Q" | "R" | "F"
    p: Optional[int] = None
    laurent_vars: tuple[str, ...] = ()
    degree: int = 1  # 2 models the unramified quadratic extension of F_p

    def __post_init__(self):
        if self.kind not in ("Q", "R", "F"):
            raise ValueError(f"unknown base kind {self.kind!r}")
        if self.kind == "F":
            if self.p is None or self.p == 2 or not is_prime(self.p):
                raise ValueError("prime base needs an odd prime (char 2 rejected)")
            if self.degree not in (1, 2):
                raise ValueError("only degree 1 and 2 prime bases are supported")
        else:
            if self.p is not None or self.degree != 1:
                raise ValueError(f"base {self.kind} takes no prime/degree")
        if len(set(self.laurent_vars)) != len(self.laurent_vars):
            raise ValueError("Laurent variable names must be distinct")
        for v in self.laurent_vars:
            if not v or v[0].isdigit() or not set(v) <= _IDENT_OK:
                raise ValueError(f"bad variable name {v!r}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def rationals(cls, *laurent_vars: str) -> "FieldTower":
        return cls("Q", None, tuple(laurent_vars))

    @classmethod
    def reals(cls, *laurent_vars: str) -> "FieldTower":
        return cls("R", None, tuple(laurent_vars))

    @classmethod
    def prime(cls, p: int, *laurent_vars: str) -> "FieldTower":
        return cls("F", p, tuple(laurent_vars))

    # -- structure ----------------------------------------------------------

    @property
    def outer_var(self) -> str:
        if not self.laurent_vars:
            raise NotLaurent(f"{self} has no Laurent variable")
        return self.laurent_vars[-1]

    def inner(self) -> "FieldTower":
        if not self.laurent_vars:
            raise NotLaurent(f"{self} has no Laurent variable")
        return FieldTower(self.kind, self.p, self.laurent_vars[:-1], self.degree)

    def with_var(self, name: str) -> "FieldTower":
        return FieldTower(self.kind, self.p, self.laurent_vars + (name,), self.degree)

    @property
    def is_enumerable(self) -> bool:
        return self.kind in ("F", "R")

    @property
    def nonresidue(self) -> int:
        """Canonical nonresidue marker of a prime base."""
        if self.kind != "F":
            raise ValueError(f"{self} has no canonical nonresidue")
        return least_nonresidue(self.p)

    def minus_one_is_square(self) -> bool:
        if self.kind == "F":
            return self.degree == 2 or self.p % 4 == 1
        return False

    def has_zeta3(self) -> bool:
        """Whether the base contains a primitive cube root of unity."""
        if self.kind != "F":
            return False
        if self.degree == 2:
            return self.p != 3
        return self.p % 3 == 1

    def __str__(self) -> str:
        if self.kind == "F":
            head = f"F{self.p ** self.degree}"
        else:
            head = self.kind
        return head + "".join(f"(({v}))" for v in self.laurent_vars)


@dataclass(frozen=True)
class SquareClass:
    """Canonical representative of an element of k^x / k^{x2}.

    ``base`` is the base-field part (see module docstring); ``odd_vars``
    is the set of Laurent variables carrying an odd exponent.
    """

    tower: FieldTower
    base: int
    odd_vars: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.odd_vars <= set(self.tower.laurent_vars):
            raise UnknownVariable(
                f"variables {set(self.odd_vars) - set(self.tower.laurent_vars)} "
                f"not declared in {self.tower}"
            )
        if self.tower.kind == "F":
            if self.base not in (1, self.tower.nonresidue):
                raise ValueError(f"non-canonical prime base part {self.base}")
        elif self.tower.kind == "R":
            if self.base not in (1, -1):
                raise ValueError(f"non-canonical sign part {self.base}")
        elif self.base == 0:
            raise ZeroElement("0 has no square class")

    @property
    def is_one(self) -> bool:
        return self.base == 1 and not self.odd_vars

    def sort_key(self):
        vbits = tuple(
            1 if v in self.odd_vars else 0 for v in reversed(self.tower.laurent_vars)
        )
        if self.tower.kind == "Q":
            return vbits + (abs(self.base), 1 if self.base < 0 else 0)
        return vbits + (0 if self.base == 1 else 1,)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return sq_mul(self, other)

    def __str__(self) -> str:
        vars_part = [v for v in self.tower.laurent_vars if v in self.odd_vars]
        if self.tower.kind == "F":
            base_part = "1" if self.base == 1 else "u"
        else:
            base_part = str(self.base)
        if not vars_part:
            return base_part
        if base_part == "1":
            return "*".join(vars_part)
        if base_part == "-1":
            return "-" + "*".join(vars_part)
        return "*".join([base_part] + vars_part)

    __repr__ = __str__


def one_class(tower: FieldTower) -> SquareClass:
    return SquareClass(tower, 1, frozenset())


def minus_one_class(tower: FieldTower) -> SquareClass:
    if tower.kind == "F":
        if tower.minus_one_is_square():
            return one_class(tower)
        return SquareClass(tower, tower.nonresidue, frozenset())
    return SquareClass(tower, -1, frozenset())


def nonresidue_class(tower: FieldTower) -> SquareClass:
    if tower.kind != "F":
        raise ValueError(f"{tower} has no canonical nonresidue class")
    return SquareClass(tower, tower.nonresidue, frozenset())


def var_class(tower: FieldTower, name: str) -> SquareClass:
    if name not in tower.laurent_vars:
        raise UnknownVariable(f"{name!r} not declared in {tower}")
    return SquareClass(tower, 1, frozenset((name,)))


def _base_class_of_constant(tower: FieldTower, coeff) -> int:
    """Canonical base part of a nonzero constant, per base kind."""
    if isinstance(coeff, float):
        raise TypeError("exact constants only (int or Fraction)")
    if coeff == 0:
        raise ZeroElement("0 has no square class")
    if tower.kind == "Q":
        sign, primes = squarefree_decomposition(coeff)
        out = sign
        for q in primes:
            out *= q
        return out
    if tower.kind == "R":
        return 1 if coeff > 0 else -1
    # prime base
    p = tower.p
    if isinstance(coeff, Fraction):
        num, den = coeff.numerator, coeff.denominator
        if den % p == 0:
            raise ZeroElement(f"denominator of {coeff} vanishes in F_{p}")
        c = num * pow(den, -1, p)
    else:
        c = int(coeff)
    if c % p == 0:
        raise ZeroElement(f"{coeff} vanishes in F_{p}")
    if tower.degree == 2:
        return 1  # every base constant is a square in F_{p^2}
    return 1 if legendre(c, p) == 1 else tower.nonresidue


def canonical_square_class(
    tower: FieldTower, coeff, exponents: Optional[dict[str, int]] = None
) -> SquareClass:
    """Square class of the monomial ``coeff * prod(v**e)``.

    Idempotent: feeding a canonical representative back in returns the
    same class.
    """
    exponents = exponents or {}
    for v in exponents:
        if v not in tower.laurent_vars:
            raise UnknownVariable(f"{v!r} not declared in {tower}")
    odd = frozenset(v for v, e in exponents.items() if e % 2)
    return SquareClass(tower, _base_class_of_constant(tower, coeff), odd)


def sq_mul(x: SquareClass, y: SquareClass) -> SquareClass:
    """Group law of k^x / k^{x2}; every class is its own inverse."""
    if x.tower != y.tower:
        raise FieldMismatch(f"{x.tower} vs {y.tower}")
    t = x.tower
    if t.kind == "Q":
        g = math.gcd(abs(x.base), abs(y.base))
        base = (x.base // g) * (y.base // g)
    elif t.kind == "R":
        base = x.base * y.base
    else:
        xb = x.base != 1
        yb = y.base != 1
        base = t.nonresidue if xb != yb else 1
    return SquareClass(t, base, x.odd_vars ^ y.odd_vars)


def enumerate_square_classes(tower: FieldTower) -> list[SquareClass]:
    """All square classes, in binary-counter order (outermost bit first)."""
    if not tower.is_enumerable:
        raise InfiniteSquareClassGroup(f"{tower} has infinitely many square classes")
    outer_first = tuple(reversed(tower.laurent_vars))
    nonsq = tower.nonresidue if tower.kind == "F" else -1
    out = []
    for bits in itertools.product((0, 1), repeat=len(outer_first) + 1):
        vbits, bbit = bits[:-1], bits[-1]
        odd = frozenset(v for v, b in zip(outer_first, vbits) if b)
        out.append(SquareClass(tower, nonsq if bbit else 1, odd))
    return out


def residue_split(tower: FieldTower, x: SquareClass) -> tuple[int, SquareClass]:
    """Split x = unit * t_outer^parity into (parity, unit class downstairs)."""
    if not tower.laurent_vars:
        raise NotLaurent(f"{tower} has no Laurent variable")
    if x.tower != tower:
        raise FieldMismatch(f"{x.tower} vs {tower}")
    outer = tower.outer_var
    parity = 1 if outer in x.odd_vars else 0
    unit = SquareClass(tower.inner(), x.base, x.odd_vars - {outer})
    return parity, unit


def lift_class(x: SquareClass, tower: FieldTower) -> SquareClass:
    """Reinterpret a class of the inner tower one Laurent level up."""
    if tower.inner() != x.tower:
        raise FieldMismatch(f"{x.tower} is not the inner tower of {tower}")
    return SquareClass(tower, x.base, x.odd_vars)


@dataclass(frozen=True)
class QuadraticExtension:
    """Model of tower(sqrt(delta)) with its square-class transfer map."""

    tower: FieldTower
    delta: SquareClass
    transfer: Callable[[SquareClass], SquareClass]


def _fresh_var(taken: tuple[str, ...]) -> str:
    name = "r"
    k = 2
    while name in taken:
        name = f"r{k}"
        k += 1
    return name


def extend_quadratic(tower: FieldTower, delta: SquareClass) -> QuadraticExtension:
    """Adjoin a square root of delta for the two supported shapes.

    * delta purely in the base: unramified, becomes the degree-2 base;
    * delta = (base unit) * outermost variable: ramified, the outer
      uniformizer is replaced by its square root.

    Classes mixing inner variables have no tower-shaped model here; use
    the pure-subform splitting criterion for those.
    """
    if delta.tower != tower:
        raise FieldMismatch(f"{delta.tower} vs {tower}")
    if delta.is_one:
        raise DeltaIsSquare(f"{delta} is a square")
    if tower.kind != "F":
        raise UnsupportedDelta(f"quadratic extension models need a prime base, got {tower}")

    if not delta.odd_vars:
        # unramified: delta is the base nonresidue
        if tower.degree == 2:
            raise UnsupportedDelta("base is already quadratically extended")
        new_tower = FieldTower("F", tower.p, tower.laurent_vars, 2)

        def transfer(x: SquareClass, _t=new_tower) -> SquareClass:
            if x.tower != tower:
                raise FieldMismatch(f"{x.tower} vs {tower}")
            return SquareClass(_t, 1, x.odd_vars)

        return QuadraticExtension(new_tower, delta, transfer)

    if delta.odd_vars == {tower.outer_var}:
        # ramified: t = r^2 / delta0, so the class of t maps to delta0
        delta0 = SquareClass(tower, delta.base, frozenset())
        inner_vars = tower.laurent_vars[:-1]
        new_tower = FieldTower(
            tower.kind, tower.p, inner_vars + (_fresh_var(inner_vars),), tower.degree
        )
        outer = tower.outer_var

        def transfer(x: SquareClass, _t=new_tower, _d0=delta0) -> SquareClass:
            if x.tower != tower:
                raise FieldMismatch(f"{x.tower} vs {tower}")
            base = x.base
            if outer in x.odd_vars:
                y = sq_mul(SquareClass(tower, base, frozenset()), _d0)
                base = y.base
            return SquareClass(_t, base, x.odd_vars - {outer})

        return QuadraticExtension(new_tower, delta, transfer)

    raise UnsupportedDelta(
        f"{delta} mixes inner variables; only base units and base*outer are modelled"
    )
