"""Products of expansions, Igusa generators, monomial bases and cusp subspaces."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .eisenstein import eisenstein_expansion
from .forms import FourierExpansion, InsufficientPrecision, UnsupportedWeight, reduce_form, reduced_forms
from .linalg import nullspace, rank, rref

__all__ = [
    "product",
    "power",
    "igusa_generators",
    "monomial_exponents",
    "ring_basis",
    "cusp_subspace",
    "dimension",
    "certified_dimension",
]

GENERATOR_WEIGHTS = (4, 6, 10, 12)
GENERATOR_NAMES = ("E4", "E6", "chi10", "chi12")


def _dense(F: FourierExpansion) -> dict:
    """Coefficient lookup on unreduced triples, filled lazily."""
    table = {}
    coeffs = F.coefficients

    def get(a, b, c):
        key = (a, b, c)
        if key in table:
            return table[key]
        v = coeffs.get(reduce_form(a, b, c), 0)
        table[key] = v
        return v

    return get


def product(F: FourierExpansion, G: FourierExpansion, det_bound=None) -> FourierExpansion:
    """Coefficients of F*G: sum of a_F(T1) a_G(T - T1) over T1, T - T1 >= 0."""
    bound = min(F.det_bound, G.det_bound) if det_bound is None else Fraction(det_bound)
    if bound > min(F.det_bound, G.det_bound):
        raise InsufficientPrecision("factor windows are smaller than the requested product window")
    f = _dense(F)
    g = _dense(G)
    out = {}
    for (a, b, c) in reduced_forms(bound):
        total = 0
        for a1 in range(a + 1):
            a2 = a - a1
            for c1 in range(c + 1):
                c2 = c - c1
                r1 = isqrt(4 * a1 * c1)
                r2 = isqrt(4 * a2 * c2)
                lo = max(-r1, b - r2)
                hi = min(r1, b + r2)
                for b1 in range(lo, hi + 1):
                    x = f(a1, b1, c1)
                    if x:
                        y = g(a2, b - b1, c2)
                        if y:
                            total += x * y
        if total:
            out[(a, b, c)] = total
    name = f"{F.name}*{G.name}" if F.name and G.name else ""
    return FourierExpansion(F.weight + G.weight, bound, out, name)


def power(F: FourierExpansion, n: int) -> FourierExpansion:
    result = F
    for _ in range(n - 1):
        result = product(result, F)
    return result


def monomial_exponents(weight: int) -> list:
    """Exponent tuples (i, j, l, m) with 4i + 6j + 10l + 12m = weight."""
    out = []
    for m in range(weight // 12 + 1):
        for l in range((weight - 12 * m) // 10 + 1):
            for j in range((weight - 12 * m - 10 * l) // 6 + 1):
                rest = weight - 12 * m - 10 * l - 6 * j
                if rest % 4 == 0:
                    out.append((rest // 4, j, l, m))
    return sorted(out, reverse=True)


def dimension(weight: int) -> int:
    """dim M_k of even weight from the Igusa generating function."""
    return len(monomial_exponents(weight)) if weight % 2 == 0 and weight >= 0 else 0


def _rank_one_keys(det_bound) -> list:
    return [key for key in reduced_forms(det_bound) if key[1] == 0 and key[2] == 0]


def _definite_keys(det_bound) -> list:
    return [key for key in reduced_forms(det_bound) if key[2] != 0]


def _normalize_first(F: FourierExpansion) -> FourierExpansion:
    for key in F.indices():
        v = F.coefficients.get(key, 0)
        if v:
            return F.scale(1 / v if not isinstance(v, int) else Fraction(1, v))
    return F


def _cusp_combinations(forms: list, det_bound) -> list:
    """Basis of the cuspidal part of span(forms), in reduced echelon form on the index order."""
    degenerate = _rank_one_keys(det_bound)
    rows = [[F.coefficients.get(key, Fraction(0)) for F in forms] for key in degenerate]
    kernel = nullspace(rows, len(forms))
    combos = [linear_combination_of(vec, forms) for vec in kernel]
    if not combos:
        return []
    keys = _definite_keys(det_bound)
    matrix = [[F.coefficients.get(key, Fraction(0)) for key in keys] for F in combos]
    echelon, pivots = rref(matrix)
    if len(pivots) < len(combos):
        raise InsufficientPrecision("cusp combinations are dependent on the window")
    # express echelon rows as combinations of the original forms
    out = []
    for row in echelon[: len(pivots)]:
        coeffs = {key: v for key, v in zip(keys, row) if v}
        out.append(FourierExpansion(forms[0].weight, det_bound, coeffs))
    return out


def linear_combination_of(vec, forms) -> FourierExpansion:
    from .forms import linear_combination
    return linear_combination(vec, forms)


class _GeneratorCache:
    """Generators and monomials for one window, built on demand and memoized."""

    def __init__(self, det_bound):
        self.det_bound = Fraction(det_bound)
        self.monomials = {}
        self._gens = None

    def generators(self) -> tuple:
        if self._gens is None:
            bound = self.det_bound
            E4 = eisenstein_expansion(4, bound)
            E6 = eisenstein_expansion(6, bound)
            E10 = eisenstein_expansion(10, bound)
            E12 = eisenstein_expansion(12, bound)
            E4E6 = product(E4, E6)
            E4sq = product(E4, E4)
            E4cube = product(E4sq, E4)
            E6sq = product(E6, E6)
            chi10 = _cusp_combinations([E4E6, E10], bound)
            chi12 = _cusp_combinations([E4cube, E6sq, E12], bound)
            if len(chi10) != 1 or len(chi12) != 1:
                raise InsufficientPrecision("window too small to isolate chi10 and chi12")
            chi10, chi12 = chi10[0], chi12[0]
            chi10.name, chi12.name = "chi10", "chi12"
            self._gens = (E4, E6, chi10, chi12)
            self.monomials[(1, 0, 0, 0)] = E4
            self.monomials[(0, 1, 0, 0)] = E6
            self.monomials[(0, 0, 1, 0)] = chi10
            self.monomials[(0, 0, 0, 1)] = chi12
            self.monomials[(2, 0, 0, 0)] = E4sq
            self.monomials[(3, 0, 0, 0)] = E4cube
            self.monomials[(0, 2, 0, 0)] = E6sq
            self.monomials[(1, 1, 0, 0)] = E4E6
        return self._gens

    def monomial(self, exps: tuple) -> FourierExpansion:
        gens = self.generators()
        if exps in self.monomials:
            return self.monomials[exps]
        if sum(exps) == 0:
            raise ValueError("the constant monomial is not a modular form of positive weight")
        # peel off the last generator that occurs
        idx = max(i for i, e in enumerate(exps) if e)
        smaller = list(exps)
        smaller[idx] -= 1
        smaller = tuple(smaller)
        if sum(smaller) == 0:
            return gens[idx]
        result = product(self.monomial(smaller), gens[idx])
        result.name = _monomial_name(exps)
        self.monomials[exps] = result
        return result


def _monomial_name(exps: tuple) -> str:
    parts = []
    for name, e in zip(GENERATOR_NAMES, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


_CACHES = {}


def _cache(det_bound) -> _GeneratorCache:
    key = Fraction(det_bound)
    if key not in _CACHES:
        _CACHES[key] = _GeneratorCache(key)
    return _CACHES[key]


def igusa_generators(det_bound) -> tuple:
    """(E4, E6, chi10, chi12) with the cusp forms scaled so that a([1,1,1]) = 1."""
    return _cache(det_bound).generators()


def ring_basis(weight: int, det_bound) -> list:
    """Monomials in the Igusa generators spanning M_weight, certified independent on the window."""
    if weight % 2 or weight < 4 or weight > 20:
        raise UnsupportedWeight(f"ring basis supports even weights 4..20, got {weight}")
    cache = _cache(det_bound)
    basis = []
    for exps in monomial_exponents(weight):
        F = cache.monomial(exps)
        F.name = _monomial_name(exps)
        basis.append(F)
    if certified_rank(basis) != len(basis):
        raise InsufficientPrecision(f"window det <= {det_bound} does not certify independence in weight {weight}")
    return basis


def certified_rank(forms: list) -> int:
    if not forms:
        return 0
    keys = reduced_forms(min(F.det_bound for F in forms))
    return rank([[F.coefficients.get(key, Fraction(0)) for key in keys] for F in forms])


def certified_dimension(weight: int, det_bound) -> int:
    """Rank of the monomial coefficient matrix on the window."""
    if weight == 0:
        return 1
    if weight % 2 or weight < 4:
        return 0
    cache = _cache(det_bound)
    return certified_rank([cache.monomial(e) for e in monomial_exponents(weight)])


def cusp_subspace(weight: int, det_bound) -> list:
    """Echelon basis of the forms in M_weight whose rank <= 1 coefficients vanish."""
    basis = ring_basis(weight, det_bound)
    out = _cusp_combinations(basis, det_bound)
    for i, F in enumerate(out):
        F.weight = weight
        F.name = f"S{weight}_{i}"
    return out
