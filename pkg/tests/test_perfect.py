import itertools

import pytest

from wittlab.monoidalg import FiniteCommMonoid
from wittlab.perfect import (
    FiniteField,
    PerfectRing,
    canonical_modulus,
    frobenius,
    inverse_frobenius,
    is_p_divisible_monoid,
    ring_homs,
    tilt,
    truncated_polynomial_ring,
    zmod_ring,
)
from wittlab.witt import get_witt_coords


class TestFiniteField:
    def test_canonical_moduli(self):
        # least-integer-encoding irreducibles; the F_8 pick is x^3 + x + 1
        assert canonical_modulus(2, 2) == (1, 1)
        assert canonical_modulus(2, 3) == (1, 1, 0)
        assert canonical_modulus(3, 2) == (1, 0)

    def test_modulus_verified_irreducible(self):
        with pytest.raises(ValueError):
            FiniteField(2, 2, modulus=(0, 0))  # x^2 is reducible

    def test_field_axioms_f8(self):
        F = FiniteField(2, 3)
        els = list(F.elements())
        for a, b in itertools.product(els, repeat=2):
            assert F.mul(a, b) == F.mul(b, a)
        for a in els:
            if a != F.zero:
                assert F.mul(a, F.inverse(a)) == F.one

    def test_frobenius_fermat(self):
        # prime-subfield elements are Frobenius-fixed
        F = FiniteField(5, 2)
        for c in range(5):
            assert F.frobenius(F.from_int(c)) == F.from_int(c)

    def test_frobenius_omega_f4(self):
        # omega^2 = omega + 1 in the multiplication table of F_4
        F = FiniteField(2, 2)
        omega = (0, 1)
        assert F.mul(omega, omega) == (1, 1)
        assert F.frobenius(omega) == (1, 1)

    def test_frobenius_zero(self):
        F = FiniteField(2, 2)
        assert F.frobenius(F.zero) == F.zero


class TestPerfectRing:
    def test_inverse_frobenius_simple(self, F4):
        assert inverse_frobenius(F4, F4.one) == F4.one
        omega = ((0, 1),)
        omega_plus_1 = ((1, 1),)
        assert frobenius(F4, omega) == omega_plus_1
        assert inverse_frobenius(F4, omega_plus_1) == omega

    def test_inverse_frobenius_f9_is_cube(self, F9):
        # on F_{p^k} the inverse Frobenius is the (k-1)-fold power map
        for x in F9.elements():
            y = inverse_frobenius(F9, x)
            assert F9.pow(y, 3) == x
            assert y == F9.pow(x, 3)

    def test_frobenius_is_ring_hom(self, F9):
        for x, y in itertools.product(F9.elements(), repeat=2):
            assert frobenius(F9, F9.add(x, y)) == F9.add(
                frobenius(F9, x), frobenius(F9, y)
            )
            assert frobenius(F9, F9.mul(x, y)) == F9.mul(
                frobenius(F9, x), frobenius(F9, y)
            )

    def test_round_trip_both_ways(self, F4):
        for x in F4.elements():
            assert inverse_frobenius(F4, frobenius(F4, x)) == x
            assert frobenius(F4, inverse_frobenius(F4, x)) == x

    def test_perfectness_exhaustive(self, F4, F9):
        assert F4.is_perfect()
        assert F9.is_perfect()
        prod = PerfectRing([FiniteField(2, 1), FiniteField(2, 2)])
        assert prod.is_perfect()

    def test_json_round_trip(self, F9):
        assert PerfectRing.from_json(F9.to_json()) == F9


class TestPDivisibleMonoid:
    def test_field_monoid(self, F4):
        M = FiniteCommMonoid.multiplicative(F4)
        assert is_p_divisible_monoid(M, 2)

    def test_idempotent_monoid(self):
        # multiplicative monoid {0, 1}
        M = FiniteCommMonoid([0, 1], [[0, 0], [0, 1]], 1)
        assert is_p_divisible_monoid(M, 2)

    def test_nondivisible_monoid(self):
        # {1, a} with a*a = 1: the square map is constant at 1, not onto
        M = FiniteCommMonoid(["1", "a"], [[0, 1], [1, 0]], 0)
        assert not is_p_divisible_monoid(M, 2)


class TestRingHoms:
    def test_prime_field_rigid(self, F2):
        homs = ring_homs(F2, F2)
        assert len(homs) == 1

    def test_galois_group_f4(self, F4):
        homs = ring_homs(F4, F4)
        assert len(homs) == 2
        model = F4.as_finite_ring()
        omega = ((0, 1),)
        images = {
            model.decode(h.apply(model.encode(omega))) for h in homs
        }
        assert images == {omega, frobenius(F4, omega)}

    def test_no_homs_f4_to_f2(self, F4, F2):
        assert ring_homs(F4, F2) == []

    def test_composition_closure(self, F4):
        homs = ring_homs(F4, F4)
        graphs = {h.graph() for h in homs}
        for f, g in itertools.product(homs, repeat=2):
            composed = tuple(
                sorted((x, f.apply(g.apply(x))) for x in f.src.elements())
            )
            assert composed in graphs

    def test_homs_between_fcr(self):
        # Z/4 -> Z/2 has exactly the reduction
        homs = ring_homs(zmod_ring(4), zmod_ring(2))
        assert len(homs) == 1
        # Z/2 -> Z/4 has none (1 must map to 1, but 2*1 != 0 in Z/4)
        assert ring_homs(zmod_ring(2), zmod_ring(4)) == []


class TestTilt:
    def test_zmod_pn(self, F2):
        for n in (1, 2, 3):
            res = tilt(zmod_ring(2**n), 2)
            assert res.perfect.to_json() == F2.to_json()

    def test_zmod_9(self, F3):
        res = tilt(zmod_ring(9), 3)
        assert res.perfect.to_json() == F3.to_json()

    def test_dual_numbers(self, F2):
        # squares kill the nilpotent, so the stable image is F_2
        res = tilt(truncated_polynomial_ring(2, 2), 2)
        assert res.perfect.to_json() == F2.to_json()

    def test_w2_f4(self, F4):
        A = get_witt_coords(F4, 2).as_finite_ring().ring
        res = tilt(A, 2)
        assert res.perfect.to_json() == F4.to_json()

    def test_tilt_is_perfect_and_embeds(self):
        A = truncated_polynomial_ring(3, 3)
        res = tilt(A, 3)
        assert res.perfect.is_perfect()
        assert res.check_is_iso_onto_image()

    def test_tilt_equals_quotient_when_quotient_perfect(self, F4):
        # A/p already perfect: tilt is all of A/p
        A = get_witt_coords(F4, 2).as_finite_ring().ring
        res = tilt(A, 2)
        assert len(set(res.embed.values())) == res.quotient.order
