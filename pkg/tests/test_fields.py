import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittforge.errors import (
    DeltaIsSquare,
    FactorBoundExceeded,
    FieldMismatch,
    InfiniteSquareClassGroup,
    NotLaurent,
    UnknownVariable,
    UnsupportedDelta,
    ZeroElement,
)
from wittforge.fields import (
    FieldTower,
    canonical_square_class,
    enumerate_square_classes,
    extend_quadratic,
    lift_class,
    minus_one_class,
    nonresidue_class,
    one_class,
    residue_split,
    sq_mul,
    var_class,
)

Q = FieldTower.rationals()
F5 = FieldTower.prime(5)
F5T = FieldTower.prime(5, "t")
F13ST = FieldTower.prime(13, "s", "t")
RTS = FieldTower.reals("t", "s")

DESK = [F5T, F13ST, RTS]


class TestCanonical:
    def test_rational_squarefree(self):
        assert canonical_square_class(Q, 18).base == 2  # 18 = 2 * 3^2
        assert canonical_square_class(Q, -12).base == -3
        assert canonical_square_class(Q, Fraction(1, 2)).base == 2
        assert str(canonical_square_class(Q, -6)) == "-6"

    def test_prime_nonresidue_by_enumeration(self):
        # oracle: the squares mod 5 are exactly {1, 4}
        squares = {x * x % 5 for x in range(1, 5)}
        assert squares == {1, 4}
        assert 3 not in squares
        assert canonical_square_class(F5, 3) == nonresidue_class(F5)
        assert F5.nonresidue == 2  # least nonresidue

    def test_laurent_monomial(self):
        # 4 t^3 = (2 t)^2 * t
        assert canonical_square_class(F5T, 4, {"t": 3}) == var_class(F5T, "t")

    def test_real_signs(self):
        assert canonical_square_class(RTS, Fraction(-7, 3)).base == -1
        assert canonical_square_class(RTS, 9).is_one

    def test_zero_and_unknown(self):
        with pytest.raises(ZeroElement):
            canonical_square_class(Q, 0)
        with pytest.raises(UnknownVariable):
            canonical_square_class(F5T, 1, {"x": 1})
        with pytest.raises(ZeroElement):
            canonical_square_class(F5, 10)  # vanishes mod 5

    def test_factor_bound(self, monkeypatch):
        monkeypatch.setenv("WITTFORGE_FACTOR_BOUND", "10")
        with pytest.raises(FactorBoundExceeded):
            canonical_square_class(Q, 101 * 103)
        # perfect square cofactor is still fine
        assert canonical_square_class(Q, 101 * 101).is_one

    @given(
        c=st.integers(min_value=-10**5, max_value=10**5).filter(lambda n: n != 0),
        es=st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    )
    @settings(max_examples=150, deadline=None)
    def test_idempotent_on_random_monomials(self, c, es):
        tower = FieldTower.rationals("x", "y")
        cls = canonical_square_class(tower, c, {"x": es[0], "y": es[1]})
        again = canonical_square_class(
            tower, cls.base, {v: 1 for v in cls.odd_vars}
        )
        assert again == cls


class TestGroupLaw:
    def test_examples(self):
        two = canonical_square_class(Q, 2)
        assert sq_mul(two, two).is_one
        m2, three = canonical_square_class(Q, -2), canonical_square_class(Q, 3)
        assert sq_mul(m2, three) == canonical_square_class(Q, -6)
        u = nonresidue_class(F5T)
        ut = sq_mul(u, var_class(F5T, "t"))
        assert sq_mul(u, ut) == var_class(F5T, "t")

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            sq_mul(one_class(Q), one_class(F5))

    @pytest.mark.parametrize("tower", DESK, ids=str)
    def test_elementary_abelian_two_group(self, tower):
        classes = enumerate_square_classes(tower)
        assert len(classes) == 2 ** (1 + len(tower.laurent_vars))
        assert len(set(classes)) == len(classes)
        for x in classes:
            assert sq_mul(x, x).is_one
            for y in classes:
                assert sq_mul(x, y) in classes
                assert sq_mul(x, y) == sq_mul(y, x)

    def test_enumeration_order_and_examples(self):
        assert [str(c) for c in enumerate_square_classes(F5)] == ["1", "u"]
        assert [str(c) for c in enumerate_square_classes(F13ST)] == [
            "1", "u", "s", "u*s", "t", "u*t", "s*t", "u*s*t",
        ]
        with pytest.raises(InfiniteSquareClassGroup):
            enumerate_square_classes(Q)

    def test_classes_are_distinct_no_monomial_square_hits_them(self):
        # truncated square search: a square of a several-term series has
        # distinct extreme terms, so only monomial squares could land on a
        # monomial class; exhaust those.
        for tower in (F5T, F13ST):
            p = tower.p
            nonsquares = [c for c in enumerate_square_classes(tower) if not c.is_one]
            square_classes = set()
            for c in range(1, p):
                for exps in itertools.product(range(-2, 3), repeat=len(tower.laurent_vars)):
                    mono = canonical_square_class(
                        tower,
                        c * c % p,
                        {v: 2 * e for v, e in zip(tower.laurent_vars, exps)},
                    )
                    square_classes.add(mono)
            assert square_classes == {one_class(tower)}
            assert all(ns not in square_classes for ns in nonsquares)


class TestResidueSplit:
    def test_examples(self):
        u = nonresidue_class(F5T)
        x = sq_mul(u, var_class(F5T, "t"))
        assert residue_split(F5T, x) == (1, nonresidue_class(F5))
        four = canonical_square_class(F5T, 4)
        assert residue_split(F5T, four) == (0, one_class(F5))
        with pytest.raises(NotLaurent):
            residue_split(Q, one_class(Q))

    @pytest.mark.parametrize("tower", DESK, ids=str)
    def test_bijection_and_roundtrip(self, tower):
        inner = tower.inner()
        seen = set()
        t = var_class(tower, tower.outer_var)
        for x in enumerate_square_classes(tower):
            parity, unit = residue_split(tower, x)
            seen.add((parity, unit))
            back = lift_class(unit, tower)
            if parity:
                back = sq_mul(back, t)
            assert back == x
        assert len(seen) == 2 * len(enumerate_square_classes(inner))


class TestExtendQuadratic:
    def test_unramified(self):
        ext = extend_quadratic(F5, nonresidue_class(F5))
        assert str(ext.tower) == "F25"
        assert ext.transfer(nonresidue_class(F5)).is_one

    def test_ramified_t(self):
        t = var_class(F5T, "t")
        ext = extend_quadratic(F5T, t)
        assert str(ext.tower) == "F5((r))"
        assert ext.transfer(t).is_one
        assert not ext.transfer(nonresidue_class(F5T)).is_one

    def test_ramified_ut(self):
        u, t = nonresidue_class(F5T), var_class(F5T, "t")
        ext = extend_quadratic(F5T, sq_mul(u, t))
        got = ext.transfer(t)
        assert got.base == ext.tower.nonresidue and not got.odd_vars

    def test_substitution_oracle(self):
        # delta = t: substitute t = r^2; delta = u t: substitute t = r^2 / u.
        u, t = nonresidue_class(F5T), var_class(F5T, "t")
        for delta, tpow_base in ((t, 1), (sq_mul(u, t), F5T.nonresidue)):
            ext = extend_quadratic(F5T, delta)
            for x in enumerate_square_classes(F5T):
                e = 1 if "t" in x.odd_vars else 0
                subst = canonical_square_class(
                    ext.tower,
                    x.base * pow(tpow_base, e, 5),
                    {ext.tower.outer_var: 2 * e},
                )
                assert subst == ext.transfer(x)

    def test_homomorphism_kernel(self):
        supported = {
            F5T: enumerate_square_classes(F5T)[1:],  # u, t, ut
            F13ST: [
                nonresidue_class(F13ST),
                var_class(F13ST, "t"),
                sq_mul(nonresidue_class(F13ST), var_class(F13ST, "t")),
            ],
        }
        for tower, deltas in supported.items():
            classes = enumerate_square_classes(tower)
            for delta in deltas:
                ext = extend_quadratic(tower, delta)
                kernel = {x for x in classes if ext.transfer(x).is_one}
                assert kernel == {one_class(tower), delta}
                for x in classes:
                    for y in classes:
                        assert ext.transfer(sq_mul(x, y)) == sq_mul(
                            ext.transfer(x), ext.transfer(y)
                        )

    def test_errors(self):
        with pytest.raises(DeltaIsSquare):
            extend_quadratic(F5T, one_class(F5T))
        with pytest.raises(UnsupportedDelta):
            extend_quadratic(F13ST, var_class(F13ST, "s"))  # inner variable
        with pytest.raises(UnsupportedDelta):
            extend_quadratic(
                F13ST,
                sq_mul(var_class(F13ST, "s"), var_class(F13ST, "t")),
            )
        with pytest.raises(UnsupportedDelta):
            extend_quadratic(RTS, minus_one_class(RTS))  # base not prime


class TestTowerBasics:
    def test_descriptor_strings(self):
        assert str(F13ST) == "F13((s))((t))"
        assert str(RTS) == "R((t))((s))"
        assert str(Q) == "Q"

    def test_char2_and_bad_bases_rejected(self):
        with pytest.raises(ValueError):
            FieldTower.prime(2)
        with pytest.raises(ValueError):
            FieldTower.prime(9)
        with pytest.raises(ValueError):
            FieldTower.prime(5, "t", "t")
