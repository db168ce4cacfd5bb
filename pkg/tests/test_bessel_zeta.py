import pytest

from siegelfactors.algebra import const, series_coefficients, substitute, symbols
from siegelfactors.bessel_zeta import (
    SuganoData,
    UnsupportedCombination,
    UnsupportedTau,
    ZetaContext,
    compare_x,
    local_zeta_series,
    sugano_series,
    x_factor,
    x_lemma_target,
    y_factor,
    zeta_closed_form,
)
from siegelfactors.localfactors import (
    INERT,
    SPLIT,
    RamChar,
    RamPS,
    Supercuspidal,
    UnramLambda,
    UnramPS,
    UnramTwistSteinberg,
    ramified_extension,
)
from siegelfactors.verify import run_suite

v, a, b, L, L1, L2, B1, B2, W, X = symbols("v a b L L1 L2 B1 B2 W X")
RAMIFIED = ramified_extension(1)


def gamma_sum(d):
    return sum(d.satake.multiset(), const(0))


@pytest.mark.parametrize("ext", [INERT, SPLIT, RAMIFIED], ids=["inert", "split", "ramified"])
def test_series_starts_with_one(ext):
    assert sugano_series(SuganoData.symbolic(ext), 1)[0] == const(1)


def test_inert_linear_coefficient():
    d = SuganoData.symbolic(INERT)
    assert sugano_series(d, 2)[1] == v ** -3 * gamma_sum(d)


def test_ramified_linear_coefficient():
    d = SuganoData.symbolic(RAMIFIED)
    assert sugano_series(d, 2)[1] == v ** -3 * gamma_sum(d) - v ** -4 * L


@pytest.mark.parametrize("ext", [INERT, SPLIT, RAMIFIED], ids=["inert", "split", "ramified"])
def test_series_satisfies_denominator_recurrence(ext):
    d = SuganoData.symbolic(ext)
    n = 9
    series = sugano_series(d, n)
    q = series_coefficients(d.denominator(), "y", 5)
    for l in range(3, n):
        assert sum((q[j] * series[l - j] for j in range(5) if l - j >= 0), const(0)) == const(0)


def test_supercuspidal_zeta_integral_is_one():
    ctx = ZetaContext(SuganoData.symbolic(INERT), Supercuspidal())
    assert local_zeta_series(ctx) == const(1)
    assert zeta_closed_form(ctx) == const(1)


@pytest.mark.parametrize("ext", [INERT, SPLIT, RAMIFIED], ids=["inert", "split", "ramified"])
@pytest.mark.parametrize("tau", [
    RamPS(B1, RamChar(B2, 2)),
    UnramTwistSteinberg(W),
    RamPS(B1, RamChar(B2, 1, True)),
], ids=["RamPS", "Steinberg", "RamPS-twist-unramified"])
def test_zeta_integral_matches_closed_form(ext, tau):
    ctx = ZetaContext(SuganoData.symbolic(ext), tau)
    assert local_zeta_series(ctx) == zeta_closed_form(ctx)


def test_closed_form_without_correction_factor_fails():
    ctx = ZetaContext(SuganoData.symbolic(INERT), UnramTwistSteinberg(W))
    assert y_factor(ctx) != const(1)
    assert local_zeta_series(ctx) != zeta_closed_form(ctx) / y_factor(ctx)


def test_degenerate_specialization_agrees():
    ctx = ZetaContext(SuganoData.symbolic(SPLIT), UnramTwistSteinberg(W))
    ones = {name: 1 for name in ("a", "b", "L1", "L2", "W")}
    lhs = substitute(local_zeta_series(ctx), ones)
    rhs = substitute(zeta_closed_form(ctx), ones)
    assert lhs == rhs
    assert set(lhs.symbols) <= {"X", "v"}


def test_unramified_tau_rejected():
    ctx = ZetaContext(SuganoData.symbolic(INERT), UnramPS(B1, B2))
    with pytest.raises(UnsupportedTau):
        local_zeta_series(ctx)


@pytest.mark.parametrize("ext", [INERT, SPLIT], ids=["inert", "split"])
def test_x_factor_unramified_is_one(ext):
    rational, eps = x_factor(UnramPS(B1, B2), ext, UnramLambda.trivial_on_base(ext))
    assert rational == const(1)
    assert eps == x_lemma_target(UnramPS(B1, B2), ext, UnramLambda.trivial_on_base(ext))
    assert eps.q_exponent.alpha == 0 and not eps.atoms


def test_x_factor_ramified_extension_matches_q_exponent():
    lam = UnramLambda.trivial_on_base(RAMIFIED)
    status, _ = compare_x(UnramPS(B1, B2), RAMIFIED, lam)
    rational, eps = x_factor(UnramPS(B1, B2), RAMIFIED, lam)
    assert status == "flagged"
    assert rational == const(1)
    assert eps.q_exponent == x_lemma_target(UnramPS(B1, B2), RAMIFIED, lam).q_exponent


@pytest.mark.parametrize("ext", [INERT, SPLIT], ids=["inert", "split"])
def test_x_factor_ramified_tau(ext):
    tau = RamPS(B1, RamChar(B2, 2))
    status, witness = compare_x(tau, ext)
    assert status == "pass", witness
    _, eps = x_factor(tau, ext)
    assert eps.q_exponent.alpha == -24


def test_x_target_undefined_for_ramified_pair():
    with pytest.raises(UnsupportedCombination):
        x_lemma_target(RamPS(B1, RamChar(B2)), RAMIFIED)


def test_nonarchimedean_suite_has_no_failures():
    report = run_suite("x-nonarch")
    counts = report.counts()
    assert counts == {"pass": 14, "fail": 0, "flagged": 6}
    assert all("ramified" in c.descriptor for c in report.cases if c.status == "flagged")
