"""Brute-force oracles, independent of the decision procedures they check.

These searches only ever certify: a returned witness is verified exactly,
and the "none found" answers are exhaustive over their stated candidate
spaces.  The test suite compares them against the library verdicts; the
CLI exposes them behind ``--oracle``.
"""
from __future__ import annotations

import itertools
import math
from typing import Optional, Sequence

from .laurent import LaurentPoly
from .qform import DiagonalForm


class OracleBudgetExceeded(RuntimeError):
    pass


# -- truncated Laurent series witness search (one variable) ------------------------


def truncated_witness_search(
    f: DiagonalForm, precision: int = 4, budget: int = 2_000_000
) -> Optional[list[LaurentPoly]]:
    """Isotropy witness with truncated series coordinates, or None.

    Coordinates are polynomials sum x_m t^m with m < precision and
    coefficients exhausted over F_p, normalized so the constant layer is
    nonzero; the congruence q(x) = 0 mod t^precision is checked layer by
    layer.  A layer whose constraint is constant and nonzero prunes the
    node, which keeps the anisotropic side exhaustive and cheap.
    """
    tower = f.tower
    if tower.kind != "F" or tower.degree != 1 or len(tower.laurent_vars) != 1:
        raise ValueError("series search expects a one-variable prime-base tower")
    p = tower.p
    d = f.dim
    if d == 0:
        return None
    entries = [(e.base % p, 1 if e.odd_vars else 0) for e in f.entries]
    grid = list(itertools.product(range(p), repeat=d))
    spent = 0

    def layer_value(layers, k):
        total = 0
        for i, (ci, ei) in enumerate(entries):
            kk = k - ei
            if kk < 0:
                continue
            s = 0
            for m in range(kk + 1):
                n = kk - m
                if m < len(layers) and n < len(layers):
                    s += layers[m][i] * layers[n][i]
            total += ci * s
        return total % p

    def dfs(layers):
        nonlocal spent
        k = len(layers)
        if k == precision:
            return layers
        # affine structure in the new layer: gradient from the unit block
        grad = tuple(
            (2 * ci * layers[0][i]) % p if ei == 0 else 0
            for i, (ci, ei) in enumerate(entries)
        )
        const = layer_value(layers + [(0,) * d], k)
        if not any(grad):
            if const != 0:
                return None
            candidates = grid
        else:
            candidates = None  # filter below
        spent += len(grid)
        if spent > budget:
            raise OracleBudgetExceeded(f"search exceeded {budget} nodes")
        for xk in grid:
            if candidates is None:
                val = (const + sum(g * v for g, v in zip(grad, xk))) % p
                if val != 0:
                    continue
            got = dfs(layers + [xk])
            if got is not None:
                return got
        return None

    for x0 in grid:
        if not any(x0):
            continue
        if layer_value([x0], 0) != 0:
            continue
        got = dfs([x0])
        if got is not None:
            coords = []
            for i in range(d):
                poly = LaurentPoly.zero(tower)
                for m, layer in enumerate(got):
                    if layer[i]:
                        poly = poly + LaurentPoly.monomial(
                            tower, layer[i], {tower.laurent_vars[0]: m}
                        )
                coords.append(poly)
            # exact residual check modulo t^precision
            total = LaurentPoly.zero(tower)
            for e, x in zip(f.entries, coords):
                total = total + LaurentPoly.of_class(e) * x * x
            assert all(exps[0] >= precision for exps, _ in total.terms)
            return coords
    return None


# -- exact constant-coordinate search (any enumerable tower) ------------------------


def constant_witness_search(f: DiagonalForm) -> Optional[list[LaurentPoly]]:
    """Exact isotropy witness with base-field constant coordinates.

    Meet-in-the-middle over the two coordinate halves; the match is an
    exact polynomial identity, so a hit certifies isotropy outright.
    For square-class entries a constant witness exists whenever the form
    is isotropic: some residue block is isotropic downstairs and its
    witness lifts with zeros elsewhere.
    """
    tower = f.tower
    if tower.kind != "F" or tower.degree != 1:
        raise ValueError("constant search expects a prime-base tower")
    p = tower.p
    d = f.dim
    if d == 0:
        return None
    # entries are class monomials: (exponent vector, unit coefficient)
    monos = []
    for e in f.entries:
        ((exps, coeff),) = LaurentPoly.of_class(e).terms
        monos.append((exps, coeff))
    half = d // 2
    left, right = list(range(half)), list(range(half, d))

    def values(idxs):
        out = []
        for assign in itertools.product(range(p), repeat=len(idxs)):
            acc: dict = {}
            for i, x in zip(idxs, assign):
                if x:
                    exps, coeff = monos[i]
                    acc[exps] = (acc.get(exps, 0) + coeff * x * x) % p
            val = frozenset((e, c) for e, c in acc.items() if c)
            out.append((assign, val))
        return out

    def negated(val):
        return frozenset((e, (-c) % p) for e, c in val)

    first: dict = {}
    first_nonzero: dict = {}
    for assign, val in values(left):
        first.setdefault(val, assign)
        if any(assign):
            first_nonzero.setdefault(val, assign)
    for assign, val in values(right):
        target = negated(val)
        if any(assign):
            match = first.get(target)
        else:
            match = first_nonzero.get(target)
        if match is not None:
            coords = [LaurentPoly.const(tower, v) for v in match + assign]
            total = LaurentPoly.zero(tower)
            for e, x in zip(f.entries, coords):
                total = total + LaurentPoly.of_class(e) * x * x
            assert total.is_zero  # exact certificate
            return coords
    return None


# -- rational witness search ---------------------------------------------------------


def _reduce(ws: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for w in ws:
        g = math.gcd(g, abs(w))
    return tuple(w // g for w in ws) if g > 1 else tuple(ws)


def _perfect_square(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_witness_search(
    entries: Sequence[int], bounds: Sequence[int] = (30, 120, 400)
) -> Optional[tuple[int, ...]]:
    """Integer isotropy witness for a diagonal form over Q, or None.

    Pair rule, then ternary subforms (loop two coordinates, perfect
    square for the third), then a quaternary meet-in-the-middle, with an
    escalating coordinate bound.
    """
    a = [int(x) for x in entries]
    d = len(a)
    if d <= 1:
        return None
    for i in range(d):
        for j in range(i + 1, d):
            s = _perfect_square(-a[i] * a[j])
            if s is not None and s != 0:
                out = [0] * d
                out[i], out[j] = s, abs(a[i])
                return _reduce(out)
    for bound in bounds:
        for combo in itertools.combinations(range(d), 3):
            i, j, k = combo
            for x in range(bound + 1):
                for y in range(bound + 1):
                    if x == 0 and y == 0:
                        continue
                    s = _perfect_square(-a[k] * (a[i] * x * x + a[j] * y * y))
                    if s is not None:
                        out = [0] * d
                        out[i], out[j], out[k] = a[k] * x, a[k] * y, s
                        if any(out):
                            return _reduce(out)
        if d >= 4:
            table: dict[int, tuple[int, int]] = {}
            nonzero_table: dict[int, tuple[int, int]] = {}
            for x1 in range(bound + 1):
                for x2 in range(bound + 1):
                    v = a[0] * x1 * x1 + a[1] * x2 * x2
                    table.setdefault(v, (x1, x2))
                    if x1 or x2:
                        nonzero_table.setdefault(v, (x1, x2))
            for x3 in range(bound + 1):
                for x4 in range(bound + 1):
                    v = -(a[2] * x3 * x3 + a[3] * x4 * x4)
                    match = table.get(v) if (x3 or x4) else nonzero_table.get(v)
                    if match is not None:
                        out = (match[0], match[1], x3, x4) + (0,) * (d - 4)
                        return _reduce(out)
    return None


def verify_rational_witness(entries: Sequence[int], witness: Sequence[int]) -> bool:
    total = sum(int(a) * w * w for a, w in zip(entries, witness))
    return total == 0 and any(witness)


# -- local oracles --------------------------------------------------------------------


def hilbert2_unit_solvable(a: int, b: int) -> int:
    """(a,b)_2 for odd a, b by exhausting z^2 = a x^2 + b y^2 mod 8.

    A primitive solution mod 8 exists exactly when the symbol is +1.
    """
    if a % 2 == 0 or b % 2 == 0:
        raise ValueError("unit oracle wants odd arguments")
    for x, y, z in itertools.product(range(8), repeat=3):
        if x % 2 == 0 and y % 2 == 0 and z % 2 == 0:
            continue
        if (a * x * x + b * y * y - z * z) % 8 == 0:
            return 1
    return -1


def legendre_by_enumeration(a: int, p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return 1 if a % p in squares else -1


def unit_form_liftable_mod_p(entries: Sequence[int], p: int) -> bool:
    """Nonsingular zero mod an odd prime; Hensel lifts it to Z_p.

    Only meaningful when every entry is a unit at p.
    """
    a = [int(x) % p for x in entries]
    if any(x == 0 for x in a):
        raise ValueError("entries must be units at p")
    d = len(a)
    for vec in itertools.product(range(p), repeat=d):
        if not any(vec):
            continue
        if sum(c * x * x for c, x in zip(a, vec)) % p == 0:
            if any((2 * c * x) % p for c, x in zip(a, vec)):
                return True
    return False
