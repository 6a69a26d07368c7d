import itertools
import random
from fractions import Fraction

import pytest

from wittforge.arithq import (
    Place,
    REAL_PLACE,
    global_isotropy,
    global_isotropy_certificate,
    hilbert_symbol,
    is_square_in_qp,
    local_isotropy,
    ramification_set,
    rational_invariants,
    witt_index_rational,
)
from wittforge.errors import ZeroArgument
from wittforge.fields import FieldTower, canonical_square_class
from wittforge.oracles import (
    hilbert2_unit_solvable,
    legendre_by_enumeration,
    rational_witness_search,
    unit_form_liftable_mod_p,
    verify_rational_witness,
)
from wittforge.qform import DiagonalForm, pfister

Q = FieldTower.rationals()
PLACES = [REAL_PLACE, Place(2), Place(3), Place(5), Place(7), Place(13)]
RANGE30 = [n for n in range(-30, 31) if n != 0]


def qcls(c):
    return canonical_square_class(Q, c)


def qform_of(entries):
    return DiagonalForm(Q, tuple(qcls(e) for e in entries))


class TestHilbertSymbol:
    def test_trivial_first_argument(self):
        for b in (2, -3, 7, 30):
            for v in PLACES:
                assert hilbert_symbol(1, b, v) == 1

    def test_minus_one_minus_one(self):
        assert hilbert_symbol(-1, -1, REAL_PLACE) == -1
        # oracle: exhaust z^2 = -x^2 - y^2 mod 8 over primitive triples
        assert hilbert2_unit_solvable(-1, -1) == -1
        assert hilbert_symbol(-1, -1, Place(2)) == -1

    def test_2_3_at_3(self):
        # oracle: 2 is a nonresidue mod 3
        assert legendre_by_enumeration(2, 3) == -1
        assert hilbert_symbol(2, 3, Place(3)) == -1

    def test_symmetry_full_range(self):
        for a, b in itertools.product(RANGE30, repeat=2):
            for v in PLACES:
                assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)

    def test_bimultiplicativity(self):
        small = [n for n in range(-10, 11) if n != 0]
        for v in PLACES:
            for a, b, c in itertools.product(small, small[:10], small[:10]):
                assert hilbert_symbol(a * b, c, v) == hilbert_symbol(
                    a, c, v
                ) * hilbert_symbol(b, c, v)

    def test_a_minus_a(self):
        for a in RANGE30:
            for v in PLACES:
                assert hilbert_symbol(a, -a, v) == 1

    def test_mod8_oracle_cross_check(self):
        odds = [n for n in RANGE30 if n % 2]
        for a, b in itertools.product(odds[::3], odds[::3]):
            assert hilbert_symbol(a, b, Place(2)) == hilbert2_unit_solvable(a, b)

    def test_product_formula(self):
        for a, b in itertools.product(RANGE30, repeat=2):
            prod = hilbert_symbol(a, b, REAL_PLACE)
            support = {2}
            for n in (abs(a), abs(b)):
                d = 2
                while d * d <= n:
                    if n % d == 0:
                        support.add(d)
                        while n % d == 0:
                            n //= d
                    d += 1
                if n > 1:
                    support.add(n)
            for p in support:
                prod *= hilbert_symbol(a, b, Place(p))
            assert prod == 1

    def test_zero_rejected(self):
        with pytest.raises(ZeroArgument):
            hilbert_symbol(0, 1, REAL_PLACE)

    def test_fractions(self):
        assert hilbert_symbol(Fraction(1, 2), Fraction(-3, 5), Place(2)) in (-1, 1)
        assert hilbert_symbol(Fraction(2, 1), 8, Place(2)) == hilbert_symbol(
            2, 2, Place(2)
        )


class TestRamification:
    def test_examples(self):
        assert ramification_set(-1, -1) == frozenset({Place(2), REAL_PLACE})
        assert ramification_set(-1, -2) == frozenset({Place(2), REAL_PLACE})
        assert ramification_set(-1, -3) == frozenset({Place(3), REAL_PLACE})
        assert ramification_set(1, 17) == frozenset()

    def test_even_cardinality(self):
        rng = random.Random(7)
        for _ in range(200):
            a = rng.choice(RANGE30)
            b = rng.choice(RANGE30)
            assert len(ramification_set(a, b)) % 2 == 0


class TestInvariants:
    def test_examples(self):
        inv = rational_invariants(qform_of([1, 1]))
        assert (inv.dim, inv.signature) == (2, (2, 0))
        assert inv.disc.is_one and not inv.hasse_minus

        inv = rational_invariants(qform_of([1, -1]))
        assert inv.disc == qcls(-1) and inv.signature == (1, 1)

        inv = rational_invariants(qform_of([2, -3]))
        assert inv.disc == qcls(-6)
        for v in [REAL_PLACE, Place(2), Place(3)]:
            assert inv.hasse(v) == hilbert_symbol(2, -3, v)

    def test_product_formula_for_hasse(self):
        rng = random.Random(11)
        for _ in range(100):
            entries = [rng.choice(RANGE30) for _ in range(rng.randint(1, 4))]
            inv = rational_invariants(qform_of(entries))
            assert len(inv.hasse_minus) % 2 == 0

    def test_hyperbolic_hasse_matches_symbolic_plane_sum(self):
        # hyperbolic forms of equal dimension share the hasse map of m * <1,-1>
        for m, entries in [
            (1, [2, -2]),
            (2, [1, -1, 3, -3]),
            (2, [5, -5, 7, -7]),
            (3, [1, -1, 2, -2, 15, -15]),
        ]:
            f = qform_of(entries)
            assert witt_index_rational(f).witt_index == m
            reference = qform_of([1, -1] * m)
            assert (
                rational_invariants(f).hasse_minus
                == rational_invariants(reference).hasse_minus
            )


class TestLocalIsotropy:
    def test_definite_at_real(self):
        assert not local_isotropy(qform_of([1, 1, 1, 1]), REAL_PLACE)

    def test_117_at_7(self):
        assert legendre_by_enumeration(-1, 7) == -1  # oracle
        assert not local_isotropy(qform_of([1, 1, -7]), Place(7))

    def test_five_squares_at_3(self):
        # oracle: a nonsingular zero mod 3 lifts by Hensel
        assert unit_form_liftable_mod_p([1, 1, 1, 1, 1], 3)
        assert local_isotropy(qform_of([1, 1, 1, 1, 1]), Place(3))

    def test_isotropic_everywhere_unit_odd_places(self):
        f = qform_of([1, 1, -7])
        for p in (3, 5, 11, 13):
            assert local_isotropy(f, Place(p))

    def test_square_in_qp(self):
        assert is_square_in_qp(Fraction(1, 4), 2)
        assert not is_square_in_qp(2, 2)
        assert is_square_in_qp(17, 2)  # 17 = 1 mod 8
        assert not is_square_in_qp(5, 5)
        assert is_square_in_qp(4, 7)


class TestGlobalIsotropy:
    def test_examples(self):
        assert global_isotropy(qform_of([1, -1]))
        assert global_isotropy(qform_of([1, 1, -2]))
        assert not global_isotropy(qform_of([1, 1, -7]))

    def test_certificate_names_place(self):
        # 1,1,-7 fails at both 2 and 7 (product formula: obstructions pair up)
        f = qform_of([1, 1, -7])
        ok, place = global_isotropy_certificate(f)
        assert not ok and place in (Place(2), Place(7))
        assert not local_isotropy(f, place)
        assert not local_isotropy(f, Place(7))

    def test_sampled_against_witness_search(self):
        rng = random.Random(23)
        for _ in range(150):
            dim = rng.randint(1, 4)
            entries = [rng.choice(RANGE30) for _ in range(dim)]
            f = qform_of(entries)
            raw = [e.base for e in f.entries]
            if global_isotropy(f):
                w = rational_witness_search(raw)
                assert w is not None and verify_rational_witness(raw, w)
            else:
                ok, place = global_isotropy_certificate(f)
                assert not ok and place is not None
                assert not local_isotropy(f, place)


class TestWittIndexRational:
    def test_split(self):
        w = witt_index_rational(qform_of([1, -1, 1, -1]))
        assert (w.witt_index, w.kernel_dim) == (2, 0)

    def test_quaternion_norm_2_3(self):
        # (2,3) ramifies at 3, so <<2,3>> is anisotropic
        assert hilbert_symbol(2, 3, Place(3)) == -1
        f = pfister(Q, (qcls(2), qcls(3)))
        w = witt_index_rational(f)
        assert (w.witt_index, w.kernel_dim) == (0, 4)

    def test_1177(self):
        w = witt_index_rational(qform_of([1, 1, -7, -7]))
        assert (w.witt_index, w.kernel_dim) == (0, 4)
        inv = w.kernel_invariants
        assert inv.dim == 4 and inv.signature == (2, 2)

    def test_odd_dimension(self):
        w = witt_index_rational(qform_of([1, -1, 3]))
        assert (w.witt_index, w.kernel_dim) == (1, 1)

    def test_kernel_invariants_anisotropic(self):
        rng = random.Random(5)
        for _ in range(60):
            dim = rng.randint(1, 5)
            f = qform_of([rng.choice(RANGE30) for _ in range(dim)])
            w = witt_index_rational(f)
            assert 2 * w.witt_index + w.kernel_dim == dim
            if w.kernel_dim:
                inv = w.kernel_invariants
                pos, neg = inv.signature
                assert pos >= 0 and neg >= 0


class TestPlace:
    def test_validation_and_repr(self):
        assert str(REAL_PLACE) == "oo"
        assert str(Place(13)) == "13"
        with pytest.raises(ValueError):
            Place(6)
