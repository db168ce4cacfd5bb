from fractions import Fraction

import pytest

from siegelfactors.siegel.eigen import hecke_matrix
from siegelfactors.siegel.eisenstein import eisenstein_expansion
from siegelfactors.siegel.elliptic import delta_product, delta_q, eigenform_q
from siegelfactors.siegel.forms import FourierExpansion, InsufficientPrecision, reduced_forms, transform
from siegelfactors.siegel.hecke import cosets, hecke_operator
from siegelfactors.siegel.ring import cusp_subspace


def classical_hecke_coefficient(F, p, form):
    """Coefficient of T(p)F from the three-term formula over the projective line mod p."""
    k = F.weight
    a, b, c = form
    total = F[(p * a, p * b, p * c)]
    columns = [((1, 0), (j, 1)) for j in range(p)] + [((0, -1), (1, 0))]
    for U in columns:
        a1, b1, c1 = transform(form, U)
        if a1 % p == 0:
            total += Fraction(p) ** (k - 2) * F[(a1 // p, b1, p * c1)]
    if a % p == 0 and b % p == 0 and c % p == 0:
        total += Fraction(p) ** (2 * k - 3) * F[(a // p, b // p, c // p)]
    return total


@pytest.mark.parametrize("p", [2, 3])
def test_coset_counts(p):
    assert sum(c.lattice_size for c in cosets(p)) == (p + 1) * (p * p + 1)


@pytest.mark.parametrize("p", [2, 3])
def test_generic_operator_matches_classical_formula_on_cusp_form(chi10, p):
    image = hecke_operator(chi10, p)
    for form in reduced_forms(image.det_bound):
        assert image[form] == classical_hecke_coefficient(chi10, p, form), form


@pytest.mark.parametrize("p", [2, 3])
def test_generic_operator_matches_classical_formula_on_eisenstein_series(p):
    E4 = eisenstein_expansion(4, 9 * p * p)
    image = hecke_operator(E4, p)
    for form in reduced_forms(image.det_bound):
        assert image[form] == classical_hecke_coefficient(E4, p, form), form


def test_eisenstein_eigenvalue_at_two():
    E4 = eisenstein_expansion(4, 36)
    image = hecke_operator(E4, 2)
    lam = image[(0, 0, 0)]
    assert lam == (1 + 2 ** 3) * (1 + 2 ** 2)  # (1 + p^(k-1)) (1 + p^(k-2))
    assert image == E4.truncate(image.det_bound).scale(lam)


def test_zero_form_maps_to_zero():
    assert hecke_operator(FourierExpansion(10, 40), 2).is_zero()


def test_window_too_small():
    with pytest.raises(InsufficientPrecision):
        hecke_operator(FourierExpansion(10, 2), 2)
    with pytest.raises(ValueError):
        hecke_operator(FourierExpansion(10, 2), 0)


@pytest.mark.parametrize("p", [2, 3])
def test_cusp_forms_stay_cuspidal(chi12, p):
    assert hecke_operator(chi12, p).is_cuspidal()


def test_weight_twenty_cusp_space_is_stable(window):
    basis = cusp_subspace(20, window)
    for p in (2, 3):
        for F in basis:
            assert hecke_operator(F, p).is_cuspidal()
    # the matrix certifies that each image lies in the span on the window
    assert len(hecke_matrix(basis, 2)) == 3


def test_hecke_operators_commute_on_weight_twelve(chi12):
    a = hecke_operator(hecke_operator(chi12, 2), 3)
    b = hecke_operator(hecke_operator(chi12, 3), 2)
    assert (a - b).is_zero()
    assert not a.is_zero()


def test_hecke_matrices_commute_on_weight_twenty(window):
    basis = cusp_subspace(20, window)
    M2, M3 = hecke_matrix(basis, 2), hecke_matrix(basis, 3)
    n = len(basis)
    prod = lambda A, B: [[sum(A[i][t] * B[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    assert prod(M2, M3) == prod(M3, M2)


@pytest.mark.parametrize("p", [2, 3])
def test_eigenvalue_is_independent_of_the_index(chi10, p):
    image = hecke_operator(chi10, p)
    ratios = {image[f] / chi10[f] for f in reduced_forms(image.det_bound) if chi10[f]}
    assert len(ratios) == 1
    assert sum(1 for f in reduced_forms(image.det_bound) if chi10[f]) >= 2


# -- the elliptic oracle ----------------------------------------------------------------

def test_discriminant_function_from_product_and_eta():
    assert delta_product(50) == list(delta_q(50))
    assert list(delta_q(4)) == [0, 1, -24, 252, -1472]


def test_elliptic_eigenform_coefficients():
    f18, f22 = eigenform_q(18, 5), eigenform_q(22, 5)
    assert (f18[2], f18[3]) == (-528, -4284)
    assert (f22[2], f22[3]) == (-288, -128844)
    # Hecke relation at a prime square: a(4) = a(2)^2 - 2^(k-1)
    assert f18[4] == f18[2] ** 2 - 2 ** 17
    assert f22[4] == f22[2] ** 2 - 2 ** 21


@pytest.mark.parametrize("k, p", [(10, 2), (10, 3), (12, 2), (12, 3)])
def test_saito_kurokawa_eigenvalue_law(chi10, chi12, k, p):
    F = chi10 if k == 10 else chi12
    lam = hecke_operator(F, p)[(1, 1, 1)] / F[(1, 1, 1)]
    f = eigenform_q(2 * k - 2, p + 1)
    assert lam == f[p] + p ** (k - 1) + p ** (k - 2)


def test_eigenvalues_at_prime_squares(chi10):
    assert hecke_operator(chi10, 4)[(1, 1, 1)] == 135424
    assert hecke_operator(chi10, 9)[(1, 1, 1)] == 293343849
