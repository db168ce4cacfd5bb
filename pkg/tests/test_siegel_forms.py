from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from siegelfactors.siegel.eisenstein import eisenstein_coefficient, eisenstein_expansion
from siegelfactors.siegel.forms import (
    FourierExpansion,
    HalfIntegralForm,
    InsufficientPrecision,
    UnsupportedWeight,
    linear_combination,
    reduce_form,
    reduced_forms,
    transform,
)
from siegelfactors.siegel.ring import (
    certified_dimension,
    cusp_subspace,
    dimension,
    product,
    ring_basis,
)


# -- an independent model of E4: the genus-2 theta series of the E8 lattice --------

@lru_cache(maxsize=None)
def e8_shells():
    """Vectors of squared length 2 and 4 in E8, in doubled coordinates."""
    shells = {2: [], 4: []}
    for v in cartesian(range(-2, 3), repeat=8):
        n = sum(x * x for x in v)
        if n in shells and sum(v) % 2 == 0:
            shells[n].append([2 * x for x in v])
    for v in cartesian((-3, -1, 1, 3), repeat=8):
        n4 = sum(x * x for x in v)  # four times the squared length
        if n4 in (8, 16) and sum(v) % 4 == 0:
            shells[n4 // 4].append(list(v))
    return {n: np.array(vs) for n, vs in shells.items()}


def theta_coefficient(a, b, c):
    """#{(x, y) in E8^2 : x.x = 2a, y.y = 2c, x.y = b}."""
    shells = e8_shells()
    gram = shells[2 * a] @ shells[2 * c].T  # entries are 4 x.y
    return int(np.count_nonzero(gram == 4 * b))


def test_e8_shell_sizes():
    shells = e8_shells()
    assert len(shells[2]) == 240 and len(shells[4]) == 2160


@pytest.mark.parametrize("form", [(1, 1, 1), (1, 0, 1), (1, 1, 2), (1, 0, 2)])
def test_weight_four_eisenstein_is_the_e8_theta_series(form):
    assert eisenstein_coefficient(4, *form) == theta_coefficient(*form)


def test_weight_four_values():
    assert eisenstein_coefficient(4, 1, 1, 1) == 13440
    assert eisenstein_coefficient(4, 1, 0, 1) == 30240
    assert eisenstein_coefficient(4, 1, 1, 2) == 138240
    assert eisenstein_coefficient(4, 2, 2, 2) == 604800


def test_constant_term_and_rank_one_ratio():
    E4 = eisenstein_expansion(4, 10)
    assert E4[(0, 0, 0)] == 1
    assert E4[(1, 0, 0)] / E4[(2, 0, 0)] == Fraction(1, 9)


@pytest.mark.parametrize("k", [4, 6, 10, 12])
def test_rank_one_restriction_is_elliptic_eisenstein(k):
    E = eisenstein_expansion(k, 12)
    scale = -Fraction(2 * k) / Fraction(str(sympy.bernoulli(k)))
    for n in range(1, 13):
        assert E[(n, 0, 0)] == scale * sympy.divisor_sigma(n, k - 1)
        # rank-1 forms in other positions reduce to the same index
        assert E[(n, 2 * n, n)] == E[(n, 0, 0)]


def test_square_of_weight_four_is_weight_eight():
    assert product(eisenstein_expansion(4, 20), eisenstein_expansion(4, 20)) == eisenstein_expansion(8, 20)


def test_odd_weight_rejected():
    with pytest.raises(UnsupportedWeight):
        eisenstein_expansion(5, 4)


# -- reduction and windows ---------------------------------------------------------------------

def test_reduction_examples():
    assert reduce_form(2, 2, 1) == (1, 0, 1)
    assert reduce_form(3, -5, 3) == (1, 1, 3)
    assert reduce_form(4, 4, 1) == (1, 0, 0)
    assert reduce_form(0, 0, 0) == (0, 0, 0)
    with pytest.raises(ValueError):
        reduce_form(1, 3, 1)


def test_reduced_window_is_sorted_and_reduced():
    forms = reduced_forms(8)
    discs = [4 * a * c - b * b for a, b, c in forms]
    assert discs == sorted(discs)
    for a, b, c in forms:
        if 4 * a * c - b * b:
            assert 0 <= b <= a <= c
    # class numbers: one reduced form of discriminant 3 and 4, two of discriminant 15
    count = Counter(discs)
    assert count[3] == count[4] == 1 and count[15] == 2


def test_half_integral_form():
    f = HalfIntegralForm(2, 2, 4)
    assert f.det == Fraction(7) and f.content == 2
    assert f.reduced().astuple() == (2, 2, 4)
    with pytest.raises(ValueError):
        HalfIntegralForm(1, 3, 1)


def test_lookup_outside_window_raises():
    E4 = eisenstein_expansion(4, 4)
    with pytest.raises(InsufficientPrecision):
        E4[(3, 1, 3)]
    with pytest.raises(InsufficientPrecision):
        E4.truncate(5)
    assert E4.truncate(2)[(1, 1, 1)] == 13440


def test_expansion_arithmetic():
    E4 = eisenstein_expansion(4, 6)
    assert (E4 - E4).is_zero()
    assert E4 + E4 == E4.scale(2)
    assert linear_combination([2, -1], [E4, E4]) == E4
    assert not E4.is_cuspidal()


unimodular_steps = st.lists(st.sampled_from([((1, 1), (0, 1)), ((1, -1), (0, 1)), ((0, 1), (1, 0)),
                                              ((-1, 0), (0, 1)), ((1, 0), (1, 1))]), max_size=8)


def compose(steps):
    M = ((1, 0), (0, 1))
    for (p, q), (r, s) in steps:
        (a, b), (c, d) = M
        M = ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s))
    return M


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(reduced_forms(12)), unimodular_steps)
def test_coefficients_are_unimodular_invariants(form, steps):
    E6 = eisenstein_expansion(6, 12)
    moved = transform(form, compose(steps))
    assert reduce_form(*moved) == form
    assert E6[moved] == E6[form]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(reduced_forms(12)), unimodular_steps)
def test_cusp_form_coefficients_are_unimodular_invariants(form, steps):
    (F,) = cusp_subspace(10, 12)
    assert F[transform(form, compose(steps))] == F[form]


# -- graded ring ------------------------------------------------------------------------------------

DIMENSIONS = {4: 1, 6: 1, 8: 1, 10: 2, 12: 3, 14: 2, 16: 4, 18: 4, 20: 5}
CUSP_DIMENSIONS = {4: 0, 6: 0, 8: 0, 10: 1, 12: 1, 14: 1, 16: 2, 18: 2, 20: 3}


def test_dimension_table_matches_generating_function():
    t = sympy.symbols("t")
    series = sympy.series(1 / ((1 - t ** 4) * (1 - t ** 6) * (1 - t ** 10) * (1 - t ** 12)), t, 0, 21).removeO()
    for k, d in DIMENSIONS.items():
        assert series.coeff(t, k) == d == dimension(k)


@pytest.mark.parametrize("k", sorted(DIMENSIONS))
def test_dimensions_certified_by_linear_algebra(window, generators, k):
    assert certified_dimension(k, window) == DIMENSIONS[k]
    assert len(cusp_subspace(k, window)) == CUSP_DIMENSIONS[k]


def test_weight_four_ring_basis(window):
    assert [F.name for F in ring_basis(4, window)] == ["E4"]


def test_weight_ten_ring_basis(window, generators):
    basis = ring_basis(10, window)
    assert len(basis) == 2 and "E4*E6" in [F.name for F in basis]


def test_cusp_generators(generators):
    E4, E6, chi10, chi12 = generators
    assert chi10.is_cuspidal() and chi12.is_cuspidal()
    assert [chi10[f] for f in ((1, 1, 1), (1, 0, 1), (1, 1, 2))] == [1, -2, -16]
    assert [chi12[f] for f in ((1, 1, 1), (1, 0, 1))] == [1, 10]


def test_cusp_generators_are_combinations_of_eisenstein_products(window, generators):
    E4, E6, chi10, _ = generators
    E10 = eisenstein_expansion(10, window)
    E4E6 = product(E4, E6)
    # chi10 is in span{E4 E6, E10}; the rank-1 coefficient at n = 1 fixes the ratio
    x = E10[(1, 0, 0)]
    y = E4E6[(1, 0, 0)]
    combo = (E4E6.scale(x) - E10.scale(y))
    assert combo.is_cuspidal()
    assert combo.scale(1 / combo[(1, 1, 1)]) == chi10


def test_no_cusp_forms_in_weight_four(window):
    assert cusp_subspace(4, window) == []


def test_unsupported_ring_weight(window):
    with pytest.raises(UnsupportedWeight):
        ring_basis(22, window)


def test_empty_expansion_is_zero():
    assert FourierExpansion(10, 4).is_zero()
