"""Invariant suites with line-oriented, deterministic reports."""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

__all__ = [
    "CaseResult",
    "VerifyReport",
    "SUITES",
    "run_suite",
    "suite_cases",
]

STATUSES = ("pass", "fail", "flagged")


@dataclass(frozen=True)
class CaseResult:
    descriptor: str
    status: str
    witness: str = ""


@dataclass
class VerifyReport:
    suite: str
    cases: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.cases)

    def counts(self) -> dict:
        return {s: sum(c.status == s for c in self.cases) for s in STATUSES}

    def serialize(self) -> str:
        lines = [f"suite {self.suite}"]
        for c in self.cases:
            line = f"{c.status} {c.descriptor}"
            if c.witness:
                line += f" :: {c.witness}"
            lines.append(line)
        counts = self.counts()
        lines.append("total " + " ".join(f"{s}={counts[s]}" for s in STATUSES))
        return "\n".join(lines) + "\n"


def _run(descriptor: str, thunk: Callable) -> CaseResult:
    try:
        status, witness = thunk()
    except Exception as exc:  # a crashing case is reported, never hidden
        return CaseResult(descriptor, "fail", f"{type(exc).__name__}: {exc}")
    return CaseResult(descriptor, status, witness)


def _short(x, limit: int = 240) -> str:
    text = " ".join(str(x).split())
    return text if len(text) <= limit else text[: limit - 3] + "..."


# -- sugano-zeta ----------------------------------------------------------------

def _tau_variants() -> list:
    from .algebra import SymbolicFunction
    from .localfactors import (BothRamPS, RamChar, RamPS, RamTwistSteinberg, Supercuspidal,
                               UnramTwistSteinberg)
    B1, B2, W = (SymbolicFunction.var(n) for n in ("B1", "B2", "W"))
    return [
        ("RamPS cond 1", RamPS(B1, RamChar(B2, 1))),
        ("RamPS cond 2", RamPS(B1, RamChar(B2, 2))),
        ("RamPS unramified after quadratic twist", RamPS(B1, RamChar(B2, 1, True))),
        ("UnramTwistSteinberg", UnramTwistSteinberg(W)),
        ("RamTwistSteinberg", RamTwistSteinberg()),
        ("Supercuspidal", Supercuspidal()),
        ("BothRamPS", BothRamPS(RamChar(B1), RamChar(B2))),
    ]


def _extensions() -> list:
    from .localfactors import INERT, SPLIT, ramified_extension
    return [("inert", INERT), ("split", SPLIT), ("ramified", ramified_extension(1))]


def _sugano_cases(options) -> list:
    from .bessel_zeta import SuganoData, ZetaContext, local_zeta_series, zeta_closed_form
    cases = []
    for ext_name, ext in _extensions():
        for tau_name, tau in _tau_variants():
            def thunk(ext=ext, tau=tau):
                ctx = ZetaContext(SuganoData.symbolic(ext), tau)
                series = local_zeta_series(ctx)
                closed = zeta_closed_form(ctx)
                if series == closed:
                    return "pass", ""
                return "fail", _short(series - closed)
            cases.append((f"{ext_name} / {tau_name}", thunk))
    return cases


# -- rho-relations -------------------------------------------------------------------

def _rho_cases(options) -> list:
    from .satake import (LocalFactor, SatakeQuadruple, ext_square, rep_local_factor, sym_square,
                         tensor_factor)
    sq = SatakeQuadruple.symbolic()

    def rho(n):
        # coefficients only, so that derived factors go through power sums
        return LocalFactor.from_denominator(rep_local_factor(sq, n).denominator)

    relations = [
        ("ext2(rho4) = rho1 + rho5", lambda: ext_square(rho(4)), lambda: rho(1) * rho(5)),
        ("ext2(rho5) = rho10", lambda: ext_square(rho(5)), lambda: rho(10)),
        ("sym2(rho4) = rho10", lambda: sym_square(rho(4)), lambda: rho(10)),
        ("sym2(rho5) = rho1 + rho14", lambda: sym_square(rho(5)), lambda: rho(1) * rho(14)),
        ("rho4 x rho5 = rho4 + rho16", lambda: tensor_factor(rho(4), rho(5)), lambda: rho(4) * rho(16)),
    ]
    cases = []
    for name, lhs, rhs in relations:
        def thunk(lhs=lhs, rhs=rhs):
            a, b = lhs(), rhs()
            if a.same_factor(b):
                return "pass", ""
            return "fail", _short(a.denominator_polynomial() - b.denominator_polynomial())
        cases.append((name, thunk))
    return cases


# -- x-nonarch ---------------------------------------------------------------------

def _x_nonarch_cases(options) -> list:
    from .algebra import SymbolicFunction
    from .bessel_zeta import compare_x
    from .localfactors import (INERT, SPLIT, BothRamPS, RamChar, RamPS, RamTwistSteinberg, Supercuspidal,
                               UnramLambda, UnramPS, UnramTwistSteinberg, ramified_extension)
    B1, B2, W = (SymbolicFunction.var(n) for n in ("B1", "B2", "W"))
    cases = []

    def add(name, tau, ext, lam=None):
        def thunk():
            status, witness = compare_x(tau, ext, lam)
            return status, "" if status == "pass" else _short(witness)
        cases.append((name, thunk))

    for ext_name, ext in (("inert", INERT), ("split", SPLIT)):
        add(f"case (i) {ext_name}", UnramPS(B1, B2), ext, UnramLambda.trivial_on_base(ext))
    for delta in (1, 2, 3):
        for sign in (1, -1):
            ext = ramified_extension(delta)
            add(f"case (i) ramified delta={delta} sign={sign:+d}", UnramPS(B1, B2), ext,
                UnramLambda.trivial_on_base(ext, sign))
    taus = [
        ("RamPS cond 1", RamPS(B1, RamChar(B2, 1))),
        ("RamPS cond 3", RamPS(B1, RamChar(B2, 3))),
        ("UnramTwistSteinberg", UnramTwistSteinberg(W)),
        ("Supercuspidal", Supercuspidal()),
        ("RamTwistSteinberg cond 3", RamTwistSteinberg(3)),
        ("BothRamPS", BothRamPS(RamChar(B1), RamChar(B2, 2))),
    ]
    for ext_name, ext in (("inert", INERT), ("split", SPLIT)):
        for tau_name, tau in taus:
            add(f"case (ii) {ext_name} / {tau_name}", tau, ext)
    return cases


# -- x-arch ------------------------------------------------------------------------

def _x_arch_cases(options) -> list:
    from .arch import DiscreteSeries, PrincipalSeries, arch_X_check
    cases = []
    grid = [("B", l, PrincipalSeries(parity=l % 2), f"B l={l} principal series") for l in range(2, 7)]
    grid += [("A", l, DiscreteSeries(p), f"A l={l} discrete series p={p}")
             for l, p in ((4, 11), (10, 19), (5, 12), (6, 13))]
    for case, l, tau, name in grid:
        def thunk(case=case, l=l, tau=tau):
            ok, X, target = arch_X_check(case, l, tau)
            return ("pass", "") if ok else ("fail", _short(f"{X} vs {target}"))
        cases.append((name, thunk))
    return cases


# -- gamma-tables -----------------------------------------------------------------

def _gamma_cases(options) -> list:
    import mpmath
    from .arch import GammaProduct, S, arch_rho_factor, gamma_C, gamma_R
    from .lnumeric import gamma_eval
    cases = []

    def exact(name, lhs, rhs):
        def thunk():
            a, b = lhs(), rhs()
            return ("pass", "") if a.equals(b) else ("fail", _short((a / b).normalize()))
        cases.append((name, thunk))

    def numeric(name, g, s, expected, tol=mpmath.mpf(10) ** -30):
        def thunk():
            with mpmath.workdps(50):
                v = gamma_eval(g(), s, 160)
                e = expected()
                return ("pass", "") if abs(v - e) <= tol * max(1, abs(e)) else ("fail", _short(f"{v} vs {e}"))
        cases.append((name, thunk))

    exact("Gamma_R(1) = 1", lambda: gamma_R(1), lambda: GammaProduct.constant(1))
    exact("Gamma_C(s+1) = s/(2 pi) Gamma_C(s)", lambda: gamma_C(S + 1),
          lambda: GammaProduct.make(S / 2, powers={"pi": -1}) * gamma_C(S))
    exact("Gamma_R(s) Gamma_R(s+1) = Gamma_C(s)", lambda: gamma_R(S) * gamma_R(S + 1), lambda: gamma_C(S))
    exact("Gamma_R(s+2) = s/(2 pi) Gamma_R(s)", lambda: gamma_R(S + 2),
          lambda: GammaProduct.make(S / 2, powers={"pi": -1}) * gamma_R(S))
    numeric("Gamma_R(1) numeric", lambda: gamma_R(1), 0, lambda: mpmath.mpf(1))
    numeric("Gamma_C(2) = 1/(2 pi^2)", lambda: gamma_C(2), 0, lambda: 1 / (2 * mpmath.pi ** 2))
    numeric("Gamma_C(s+1) / (s/(2 pi) Gamma_C(s)) at s = 1.7",
            lambda: gamma_C(S + 1) / (GammaProduct.make(S / 2, powers={"pi": -1}) * gamma_C(S)),
            Fraction(17, 10), lambda: mpmath.mpf(1))
    for l in range(2, 7):
        for n in (1, 4, 5, 10, 14, 16):
            def thunk(l=l, n=n):
                L, eps = arch_rho_factor(l, n)
                degree = sum((1 if kind == "R" else 2) * m for (kind, _), m in L.gammas)
                if degree != n:
                    return "fail", f"degree {degree}"
                sign = eps.normalize()
                if sign.rational not in (1, -1) or sign.i_power or sign.gammas or sign.powers:
                    return "fail", _short(sign)
                return "pass", ""
            cases.append((f"rho{n} l={l} degree and sign", thunk))
    return cases


# -- Siegel suites (need caches) ----------------------------------------------------

SIEGEL_DET_BOUND = 61
_LOCK = threading.RLock()


def _records(weight: int, options) -> list:
    from .cache import find_cache
    from .siegel.eigen import eigenforms_from_basis
    bound = options.get("det_bound") or SIEGEL_DET_BOUND
    cache = find_cache(weight, bound, options.get("cache_dir"))
    if cache.det_bound != bound:
        cache_basis = [F.truncate(bound) for F in cache.expansions("cusp")]
        ring = [F.truncate(bound) for F in cache.expansions("ring")]
    else:
        cache_basis, ring = cache.expansions("cusp"), cache.expansions("ring")
    return eigenforms_from_basis(cache_basis, ring, 2, options.get("primes") or (2, 3))


def _sk_cases(options) -> list:
    from .siegel.eigen import spin_factor_from_eigenvalues
    from .siegel.elliptic import eigenform_q
    cases = []
    for k in (10, 12):
        state = {}

        def record(k=k, state=state):
            with _LOCK:
                if "rec" not in state:
                    recs = _records(k, options)
                    if len(recs) != 1:
                        raise ValueError(f"expected one eigenform in weight {k}, found {len(recs)}")
                    state["rec"] = recs[0]
            return state["rec"]

        f = eigenform_q(2 * k - 2, 5)
        for p in options.get("primes") or (2, 3):
            def law(k=k, p=p, record=record, f=f):
                lam = record().eigenvalue(p)
                expected = f[p] + p ** (k - 1) + p ** (k - 2)
                return ("pass", "") if lam == expected else ("fail", f"lambda({p}) = {lam}, expected {expected}")

            def product_form(k=k, p=p, record=record, f=f):
                rec = record()
                spin_factor_from_eigenvalues(rec.eigenvalue(p), rec.eigenvalue(p * p), k, p, elliptic_ap=f[p])
                return "pass", ""
            cases.append((f"weight {k} p={p} eigenvalue law", law))
            cases.append((f"weight {k} p={p} spin factor equals zeta(s+1/2) zeta(s-1/2) L(s,f{2 * k - 2})",
                          product_form))
    return cases


def _ramanujan_cases(options) -> list:
    import mpmath
    from .siegel.eigen import satake_from_factor, sk_classify
    cases = []
    state = {}

    def records(k):
        with _LOCK:
            if k not in state:
                state[k] = _records(k, options)
        return state[k]

    for p in options.get("primes") or (2, 3):
        def nonsk(p=p):
            recs = [r for r in records(20) if sk_classify(r) == "nonSK"]
            if len(recs) != 1:
                return "fail", f"{len(recs)} non-SK classes in weight 20"
            worst = 0
            precision = options.get("precision") or 160
            for view in recs[0].conjugates():
                quad = satake_from_factor(view.spin_factor(p), precision)
                with mpmath.workprec(precision):
                    worst = max([worst] + [abs(abs(x) - 1) for x in quad.multiset()])
            return ("pass", "") if worst < mpmath.mpf(10) ** -10 else ("fail", f"max deviation {worst}")
        cases.append((f"weight 20 non-SK p={p} roots on the unit circle", nonsk))

    def sk_violation():
        (rec,) = records(10)
        precision = options.get("precision") or 160
        quad = satake_from_factor(rec.spin_factor(2), precision)
        with mpmath.workprec(precision):
            mods = sorted(float(abs(x)) for x in quad.multiset())
        expected = [2 ** -0.5, 1.0, 1.0, 2 ** 0.5]
        if all(abs(a - b) < 1e-12 for a, b in zip(mods, expected)):
            return "pass", ""
        return "fail", f"moduli {mods}"
    cases.append(("weight 10 SK p=2 violates with the pair (2^(1/2), 2^(-1/2))", sk_violation))
    return cases


CACHE_WEIGHTS = {"sk-factorization": (10, 12), "ramanujan": (10, 20)}

SUITES = {
    "sugano-zeta": _sugano_cases,
    "rho-relations": _rho_cases,
    "x-nonarch": _x_nonarch_cases,
    "x-arch": _x_arch_cases,
    "sk-factorization": _sk_cases,
    "ramanujan": _ramanujan_cases,
    "gamma-tables": _gamma_cases,
}


def suite_cases(name: str, options: Optional[dict] = None) -> list:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](dict(options or {}))


def run_suite(name: str, options: Optional[dict] = None, workers: int = 1) -> VerifyReport:
    """Run a suite; results keep the case order whatever the number of workers."""
    options = dict(options or {})
    if name in CACHE_WEIGHTS:
        # a missing cache is a configuration error, not a failed case
        from .cache import find_cache
        for k in CACHE_WEIGHTS[name]:
            find_cache(k, options.get("det_bound") or SIEGEL_DET_BOUND, options.get("cache_dir"))
    cases = suite_cases(name, options)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _run(*c), cases))
    else:
        results = [_run(*c) for c in cases]
    return VerifyReport(name, results)
