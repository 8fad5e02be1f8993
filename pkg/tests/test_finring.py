import pytest

from multclose.bounds import Bounds
from multclose.errors import InputError, ResourceBoundError
from multclose.finring import (
    FiniteRing,
    RingExtension,
    chain_ring,
    full_extension,
    generated_subring,
    identity_surjection,
    is_ideal,
    is_prime,
    is_unit,
    min_irreducible,
    prime_diagonal_extension,
    product_ring,
    quotient_surjection,
    subring_ring,
)
from multclose.linalg import full_subspace, rref, zero_subspace


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_min_irreducible_choices():
    # low-degree-first lexicographic minimum among irreducibles
    assert min_irreducible(2, 2) == (1, 1, 1)        # w^2 = w + 1
    assert min_irreducible(2, 3) == (1, 0, 1, 1)     # w^3 = w^2 + 1
    assert min_irreducible(3, 2) == (1, 0, 1)        # w^2 = -1
    assert min_irreducible(2, 1) == (0, 1)


def test_chain_ring_nilpotent(b3):
    assert b3.dim == 3
    assert b3.labels == ("1", "x", "x^2")
    x, x2 = b3.basis_vec(1), b3.basis_vec(2)
    assert b3.mul(x, x2) == (0, 0, 0)
    assert b3.mul(x, x) == x2


def test_chain_ring_f4(f4):
    w = f4.basis_vec(1)
    assert f4.mul(w, w) == (1, 1)  # w^2 = w + 1
    assert f4.dim == 2


def test_chain_ring_prime_field():
    f3 = chain_ring(3, 1, 1)
    assert f3.dim == 1 and f3.one == (1,)


def test_chain_ring_bad_parameters():
    with pytest.raises(InputError):
        chain_ring(4, 1, 1)
    with pytest.raises(InputError):
        chain_ring(2, 0, 1)
    with pytest.raises(ResourceBoundError):
        chain_ring(2, 3, 3)  # dim 9 over the default bound
    with pytest.raises(ResourceBoundError):
        chain_ring(7, 1, 1)  # prime over the default bound


@pytest.mark.parametrize("p,f,e", [(2, 1, 3), (2, 2, 2), (3, 1, 2), (2, 3, 1), (5, 1, 2)])
def test_chain_ring_units_are_nonzero_constant_terms(p, f, e):
    ring = chain_ring(p, f, e)
    assert ring.size() <= 4096
    for v in ring.elements():
        const = v[:f]
        assert is_unit(ring, v) == any(const)


def test_product_ring_orthogonal_idempotents(f2xf2):
    assert f2xf2.dim == 2
    assert f2xf2.mul((1, 0), (0, 1)) == (0, 0)
    assert f2xf2.one == (1, 1)


def test_product_ring_single_factor(b3):
    assert product_ring([b3]) is b3


def test_product_ring_dimension():
    r = product_ring([chain_ring(2, 2, 1), chain_ring(2, 1, 2)])
    assert r.dim == 4


def test_product_ring_mixed_characteristic():
    with pytest.raises(InputError):
        product_ring([chain_ring(2, 1, 1), chain_ring(3, 1, 1)])
    with pytest.raises(InputError):
        product_ring([])


def test_is_unit_examples(b2, f2xf2):
    assert is_unit(b2, (1, 1))
    assert not is_unit(b2, (0, 1))
    assert not is_unit(f2xf2, (1, 0))


def test_prime_diagonal_extension(b3, f4, f2xf2):
    assert prime_diagonal_extension(f4).subring.rows == ((1, 0),)
    assert prime_diagonal_extension(b3).subring.rows == ((1, 0, 0),)
    assert prime_diagonal_extension(f2xf2).subring.rows == ((1, 1),)


def test_generated_subring(b3):
    assert generated_subring(b3, []).subring == prime_diagonal_extension(b3).subring
    g = generated_subring(b3, [(0, 0, 1)])
    assert g.subring.rows == ((1, 0, 0), (0, 0, 1))
    full = generated_subring(b3, [b3.basis_vec(i) for i in range(3)])
    assert full.subring == full_subspace(2, 3)


def test_extension_validation(b3):
    # spanned but not closed under products: {1, x} with x*x = x^2 outside
    with pytest.raises(InputError):
        RingExtension(b3, rref([(1, 0, 0), (0, 1, 0)], p=2))
    # does not contain one
    with pytest.raises(InputError):
        RingExtension(b3, rref([(0, 0, 1)], p=2))


def test_quotient_surjection_structure(b3, b2):
    phi = quotient_surjection(b3, rref([(0, 0, 1)], p=2))
    assert phi.target.mul_table == b2.mul_table
    assert phi.target.one == b2.one
    assert phi.kernel == rref([(0, 0, 1)], p=2)
    # pullback of the zero space recovers the ideal
    assert phi.preimage(zero_subspace(2, 2)) == rref([(0, 0, 1)], p=2)


def test_quotient_surjection_identity(b3):
    phi = quotient_surjection(b3, zero_subspace(2, 3))
    assert phi.source is phi.target
    assert phi.apply((1, 1, 0)) == (1, 1, 0)


def test_quotient_surjection_rejects_degenerate(b3):
    with pytest.raises(InputError):
        quotient_surjection(b3, full_subspace(2, 3))  # zero ring target
    with pytest.raises(InputError):
        quotient_surjection(b3, rref([(1, 0, 0)], p=2))  # not an ideal


def test_is_ideal(b3):
    assert is_ideal(b3, rref([(0, 1, 0), (0, 0, 1)], p=2))
    assert not is_ideal(b3, rref([(1, 0, 0)], p=2))


def test_identity_surjection_roundtrip(f4):
    phi = identity_surjection(f4)
    s = rref([(0, 1)], p=2)
    assert phi.image(s) == s and phi.preimage(s) == s


def test_finite_ring_rejects_bad_tables():
    # non-commutative 2-dim table
    with pytest.raises(InputError):
        FiniteRing(
            2,
            2,
            (((1, 0), (0, 1)), ((0, 0), (0, 1))),
            (1, 0),
        )
    # unit law broken: e1 * one != e1
    with pytest.raises(InputError):
        FiniteRing(
            2,
            2,
            (((1, 0), (0, 0)), ((0, 0), (0, 1))),
            (1, 0),
        )
    # non-associative: (e1 e1) e1 != e1 (e1 e1)
    with pytest.raises(InputError):
        FiniteRing(
            2,
            3,
            (
                ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
                ((0, 1, 0), (0, 0, 1), (0, 1, 0)),
                ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
            ),
            (1, 0, 0),
        )
    with pytest.raises(InputError):
        FiniteRing(2, 0, (), ())  # zero ring


def test_subring_ring(b3):
    sub, embed = subring_ring(b3, rref([(1, 0, 0), (0, 0, 1)], p=2))
    assert sub.dim == 2
    # span{1, x^2} is isomorphic to F_2[y]/(y^2): second basis vector squares to 0
    assert sub.mul(sub.basis_vec(1), sub.basis_vec(1)) == (0, 0)
    assert embed == ((1, 0, 0), (0, 0, 1))


def test_associativity_check_scales():
    # an 8-dimensional construction still validates quickly
    ring = chain_ring(2, 2, 4)
    assert ring.dim == 8
    assert is_unit(ring, ring.one)
