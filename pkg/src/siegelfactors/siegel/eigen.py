"""Hecke eigenforms, spin Euler factors, Satake roots and Saito-Kurokawa classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import sympy

from ..satake import LocalFactor, SatakeQuadruple, ext_square
from .arith import divisors, is_fundamental_discriminant
from .forms import FourierExpansion, InsufficientPrecision, linear_combination, reduce_form, reduced_forms
from .hecke import hecke_coefficient, hecke_operator
from .linalg import char_poly, nullspace, rref
from .numberfield import NFElement, NumberField, quadratic_sqrt_field, to_complex
from .ring import cusp_subspace, ring_basis

__all__ = [
    "NonSemisimple",
    "CalibrationFailure",
    "PairingFailure",
    "InconsistentClassification",
    "EigenformRecord",
    "hecke_matrix",
    "eigenforms",
    "eigenforms_from_basis",
    "spin_factor_from_eigenvalues",
    "classical_spin_polynomial",
    "satake_from_factor",
    "maass_relation_holds",
    "has_pole_pair",
    "sk_classify",
    "bessel_data_scan",
]


class NonSemisimple(ArithmeticError):
    pass


class CalibrationFailure(ArithmeticError):
    pass


class PairingFailure(ArithmeticError):
    pass


class InconsistentClassification(ArithmeticError):
    pass


@dataclass
class EigenformRecord:
    """A Hecke eigenform over the field generated by its T(p) eigenvalue.

    ``field`` is None for rational eigenforms; otherwise elements live in
    K = Q[t]/(minimal_polynomial) under the embedding chosen by the field.
    """

    weight: int
    label: str
    minimal_polynomial: tuple          # rational coefficients, low degree first
    field: Optional[NumberField]
    cusp_coordinates: tuple
    coordinates: tuple                 # in the monomial basis of M_weight
    expansion: FourierExpansion
    eigenvalues: dict = field(default_factory=dict)
    classification: str = "unknown"
    det_bound: Fraction = Fraction(0)

    def eigenvalue(self, m: int):
        if m not in self.eigenvalues:
            raise KeyError(f"eigenvalue of T({m}) not computed for {self.label}")
        return self.eigenvalues[m]

    def spin_factor(self, p: int, elliptic_ap=None) -> LocalFactor:
        return spin_factor_from_eigenvalues(self.eigenvalue(p), self.eigenvalue(p * p), self.weight, p,
                                            elliptic_ap=elliptic_ap)

    def conjugates(self) -> list:
        """Numeric embeddings: one record view per root of the minimal polynomial."""
        if self.field is None:
            return [self]
        out = []
        for K in self.field.conjugates():
            rebased = lambda x, K=K: NFElement(K, x.coeffs) if isinstance(x, NFElement) else x
            out.append(EigenformRecord(
                self.weight, f"{self.label}[{K.root_index}]", self.minimal_polynomial, K,
                tuple(rebased(c) for c in self.cusp_coordinates), tuple(rebased(c) for c in self.coordinates),
                self.expansion.map(rebased), {m: rebased(v) for m, v in self.eigenvalues.items()},
                self.classification, self.det_bound))
        return out


def _first_index(F: FourierExpansion, max_det) -> tuple:
    for key in reduced_forms(max_det):
        if F.coefficients.get(key, 0) != 0:
            return key
    raise InsufficientPrecision("expansion vanishes on the window")


def hecke_matrix(basis: Sequence[FourierExpansion], m: int) -> list:
    """Matrix M with T(m) F_i = sum_j M[i][j] F_j, certified on the window det <= bound / m^2."""
    bound = min(F.det_bound for F in basis) / (m * m)
    keys = [k for k in reduced_forms(bound) if k[2] != 0]
    rows = [[F.coefficients.get(k, Fraction(0)) for k in keys] for F in basis]
    echelon, pivots = rref([r + [Fraction(int(i == j)) for j in range(len(basis))] for i, r in enumerate(rows)])
    if pivots[: len(basis)] != pivots or len(pivots) < len(basis) or pivots[len(basis) - 1] >= len(keys):
        raise InsufficientPrecision(f"T({m}) window det <= {bound} does not separate the basis")
    pivot_keys = [keys[c] for c in pivots[: len(basis)]]
    # coordinates of a form in the basis are read off at the pivot indices after echelonizing
    transform = [row[len(keys):] for row in echelon[: len(basis)]]
    images = [hecke_operator(F, m) for F in basis]
    matrix = []
    for G in images:
        # G = sum_j c_j F_j; solve using the echelon rows
        values = [G.coefficients.get(k, Fraction(0)) for k in pivot_keys]
        coords = [sum((values[r] * transform[r][j] for r in range(len(basis))), Fraction(0))
                  for j in range(len(basis))]
        recon = linear_combination(coords, [F.truncate(G.det_bound) for F in basis])
        if recon != G:
            raise InsufficientPrecision(f"T({m}) image is not in the span of the basis on the window")
        matrix.append(coords)
    return matrix


def _factor_char_poly(coeffs: list) -> list:
    x = sympy.Symbol("x")
    poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(coeffs)), x)
    _, factors = sympy.factor_list(poly)
    out = []
    for f, mult in factors:
        f = sympy.Poly(f, x).monic()
        if mult > 1:
            raise NonSemisimple(f"repeated eigenvalue factor {f.as_expr()}")
        c = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in reversed(f.all_coeffs())]
        out.append(tuple(c))
    out.sort(key=lambda c: (len(c), [float(v) for v in c]))
    return out


def _default_index_bound(bound, m) -> Fraction:
    return Fraction(bound) / (m * m)


def eigenforms(weight: int, p: int = 2, det_bound=61, primes: Sequence[int] = (2, 3),
               squares: bool = True) -> list:
    """Eigenforms of T(p) on the cusp space, with eigenvalues of T(q) and T(q^2) for q in primes."""
    basis = cusp_subspace(weight, det_bound)
    if not basis:
        return []
    return eigenforms_from_basis(basis, ring_basis(weight, det_bound), p, primes, squares)


def eigenforms_from_basis(basis: list, monomials: list, p: int = 2, primes: Sequence[int] = (2, 3),
                          squares: bool = True) -> list:
    """Eigenforms of T(p) in the span of a cusp basis (for instance one read from a cache file)."""
    if not basis:
        return []
    weight = basis[0].weight
    det_bound = min(F.det_bound for F in basis)
    M = hecke_matrix(basis, p)
    n = len(basis)
    records = []
    for idx, g in enumerate(_factor_char_poly(char_poly(M))):
        if len(g) == 2:
            K = None
            theta = -g[0]
        else:
            K = NumberField(g, name=f"t{weight}")
            theta = K.gen()
        # left eigenvector: v M = theta v
        A = [[(M[j][i] if K is None else K(M[j][i])) - (theta if i == j else 0) for j in range(n)] for i in range(n)]
        A = [[x if K is not None else Fraction(x) for x in row] for row in A]
        ker = _nullspace_field(A, n, K)
        if len(ker) != 1:
            raise NonSemisimple(f"eigenspace of dimension {len(ker)} in weight {weight}")
        v = ker[0]
        F = linear_combination(v, basis)
        lead = F.coefficients[_first_index(F, det_bound)]
        v = [c / lead for c in v]
        F = linear_combination(v, basis)
        F.name = f"F{weight}_{idx}"
        coords = _monomial_coordinates(basis, monomials, v, K)
        rec = EigenformRecord(weight, F.name, g, K, tuple(v), tuple(coords), F, det_bound=Fraction(det_bound))
        records.append(rec)
    for rec in records:
        for q in primes:
            for m in ((q, q * q) if squares else (q,)):
                if Fraction(det_bound) / (m * m) < Fraction(3, 4):
                    continue
                rec.eigenvalues[m] = _eigenvalue(rec, basis, m)
    return records


def _nullspace_field(A: list, n: int, K) -> list:
    if K is None:
        return nullspace(A, n)
    m, pivots = rref(A)
    free = [j for j in range(n) if j not in pivots]
    out = []
    for f in free:
        v = [K.zero() for _ in range(n)]
        v[f] = K.one()
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        out.append(v)
    return out


def _monomial_coordinates(basis, monomials, v, K) -> list:
    """Coordinates of sum v_i basis_i in the monomial basis, solved on pivot indices."""
    keys = reduced_forms(min(F.det_bound for F in monomials))
    rows = [[F.coefficients.get(k, Fraction(0)) for k in keys] for F in monomials]
    echelon, pivots = rref([r + [Fraction(int(i == j)) for j in range(len(monomials))] for i, r in enumerate(rows)])
    pivot_keys = [keys[c] for c in pivots[: len(monomials)]]
    transform = [row[len(keys):] for row in echelon[: len(monomials)]]
    target = [sum((c * F.coefficients.get(k, Fraction(0)) for c, F in zip(v, basis)), Fraction(0))
              for k in pivot_keys]
    return [sum((target[r] * transform[r][j] for r in range(len(monomials))), Fraction(0))
            for j in range(len(monomials))]


def _eigenvalue(rec: EigenformRecord, basis: list, m: int):
    """lambda(m) from T(m) on the whole window det <= bound / m^2, certified index by index."""
    bound = rec.det_bound / (m * m)
    images = [hecke_operator(F, m) for F in basis]
    G = linear_combination(list(rec.cusp_coordinates), images)
    anchor = _first_index(rec.expansion, bound)
    lam = G.coefficients.get(anchor, 0) / rec.expansion.coefficients[anchor]
    for key in reduced_forms(bound):
        if G.coefficients.get(key, 0) != lam * rec.expansion.coefficients.get(key, 0):
            raise NonSemisimple(f"T({m}) eigen-equation fails at {key} for {rec.label}")
    return lam


# -- Euler factors ---------------------------------------------------------------

def classical_spin_polynomial(lam_p, lam_p2, k: int, p: int) -> list:
    """Andrianov's quartic 1 - l(p) X + (l(p)^2 - l(p^2) - p^(2k-4)) X^2 - l(p) p^(2k-3) X^3 + p^(4k-6) X^4."""
    if (2 * Fraction(k)).denominator != 1:
        raise ValueError("weight must be integral or half-integral")
    q = Fraction(p)

    def pw(e):
        return q ** int(e)
    return [lam_p * 0 + 1, -lam_p, lam_p * lam_p - lam_p2 - pw(2 * k - 4),
            -lam_p * pw(2 * k - 3), lam_p * 0 + pw(4 * k - 6)]


def _field_of(x):
    return x.field if isinstance(x, NFElement) else None


def spin_factor_from_eigenvalues(lam_p, lam_p2, k: int, p: int, elliptic_ap=None) -> LocalFactor:
    """Spin Euler factor in the analytic normalization (functional equation s -> 1-s).

    Coefficient j of the classical quartic is divided by p^(j(k - 3/2)); the
    result lives in K(sqrt p). Raises CalibrationFailure when the exterior
    square lacks the double root 1 (a structural sanity check that any
    symplectic quartic passes), or when ``elliptic_ap`` (the coefficient
    a_f(p) of the weight 2k-2 eigenform) is given and the factor differs from
    (1 - p^(1/2) X)(1 - p^(-1/2) X)(1 - a_f(p) p^(3/2-k) X + X^2).
    """
    L = quadratic_sqrt_field(p, base=_field_of(lam_p) or _field_of(lam_p2))
    s = L.gen()
    classical = classical_spin_polynomial(lam_p, lam_p2, k, p)
    coeffs = [L(c) * (s ** int(-j * (2 * k - 3))) for j, c in enumerate(classical)]
    factor = LocalFactor.from_denominator(coeffs)
    _check_ext_square(factor)
    if elliptic_ap is not None:
        target = sk_product_factor(elliptic_ap, k, p, L)
        if not factor.same_factor(target):
            raise CalibrationFailure(f"spin factor at p={p} differs from the Saito-Kurokawa product form")
    return factor


def sk_product_factor(ap, k: int, p: int, L: Optional[NumberField] = None) -> LocalFactor:
    """(1 - p^(1/2) X)(1 - p^(-1/2) X)(1 - a_f(p) p^(3/2-k) X + X^2) over Q(sqrt p)."""
    L = L or quadratic_sqrt_field(p)
    s = L.gen()
    zeta_part = LocalFactor.from_roots([s, 1 / s])
    elliptic = LocalFactor.from_denominator([L.one(), -L(ap) * s ** (3 - 2 * k), L.one()])
    return zeta_part * elliptic


def _check_ext_square(factor: LocalFactor):
    lam2 = ext_square(factor)
    c = lam2.denominator
    value = sum(c, c[0] * 0)
    slope = sum((i * x for i, x in enumerate(c)), c[0] * 0)
    if value != 0 or slope != 0:
        raise CalibrationFailure("exterior square of the spin factor lacks the double root 1")


def satake_from_factor(factor: LocalFactor, precision: int = 160) -> SatakeQuadruple:
    """Numeric reciprocal roots paired as {a, 1/a, b, 1/b}; precision in bits.

    The factor must be 1 + c1 X + c2 X^2 + c1 X^3 + X^4. Its reciprocal roots x
    satisfy y^2 + c1 y + c2 - 2 = 0 with y = x + 1/x, so each pair comes from a
    quadratic and repeated roots need no special care.
    """
    if factor.degree != 4:
        raise PairingFailure("Satake extraction needs a degree-4 factor")
    if not factor.is_palindromic():
        raise PairingFailure("factor is not palindromic")
    dps = int(precision * 0.30103) + 10
    with mpmath.workdps(dps + 20):
        c = [to_complex(x, dps + 20) for x in factor.denominator]
        tol = mpmath.mpf(10) ** -dps
        if abs(c[0] - 1) > tol or abs(c[4] - 1) > tol or abs(c[1] - c[3]) > tol:
            raise PairingFailure("reciprocal roots do not pair to 1")
        root = mpmath.sqrt(c[1] ** 2 - 4 * (c[2] - 2))
        pairs = []
        for y in ((-c[1] + root) / 2, (-c[1] - root) / 2):
            w = mpmath.sqrt(y * y - 4)
            x, partner = (y + w) / 2, (y - w) / 2
            pairs.append(mpmath.mpc(x if abs(x) >= abs(partner) else partner))
        pairs.sort(key=lambda z: (-float(abs(z)), float(mpmath.arg(z))))
    return SatakeQuadruple(pairs[0], pairs[1])


# -- classification ----------------------------------------------------------

def maass_relation_holds(F: FourierExpansion, det_bound=None) -> bool:
    """a(n, r, m) = sum_{d | (n, r, m)} d^(k-1) a(nm/d^2, r/d, 1) for all definite indices in the window."""
    k = F.weight
    bound = F.det_bound if det_bound is None else Fraction(det_bound)
    for (n, r, m) in reduced_forms(bound):
        if m == 0:
            continue
        rhs = 0
        for d in divisors(_gcd3(n, r, m)):
            rhs = rhs + d ** (k - 1) * F[(n * m // (d * d), r // d, 1)]
        if F[(n, r, m)] != rhs:
            return False
    return True


def _gcd3(a, b, c):
    from math import gcd
    return gcd(gcd(a, b), c)


def has_pole_pair(factor: LocalFactor, p: int) -> bool:
    """Whether p^(1/2) and p^(-1/2) are both reciprocal roots of the factor."""
    c = factor.denominator
    L = c[1].field if isinstance(c[1], NFElement) else quadratic_sqrt_field(p)
    s = L.gen()
    def at(x):
        total = c[0] * 0
        for i, ci in enumerate(c):
            total = total + ci * x ** i
        return total
    return at(1 / s) == 0 and at(s) == 0


def sk_classify(rec: EigenformRecord, p: int = 2) -> str:
    """'SK' or 'nonSK' from the Maass relation and the pole pair of the spin factor at p."""
    if rec.expansion.is_zero():
        raise ValueError("the zero form is not an eigenform")
    maass = maass_relation_holds(rec.expansion)
    pole = has_pole_pair(rec.spin_factor(p), p)
    if maass != pole:
        raise InconsistentClassification(
            f"{rec.label}: Maass relation {'holds' if maass else 'fails'} but pole pair "
            f"{'present' if pole else 'absent'}")
    rec.classification = "SK" if maass else "nonSK"
    return rec.classification


def bessel_data_scan(F: FourierExpansion, D_max: int) -> list:
    """Fundamental discriminants -D, 0 < D <= D_max, with a nonzero coefficient of discriminant D."""
    if Fraction(D_max, 4) > F.det_bound:
        raise InsufficientPrecision(f"det_bound {F.det_bound} below D_max/4 = {Fraction(D_max, 4)}")
    found = set()
    for key in reduced_forms(Fraction(D_max, 4)):
        a, b, c = key
        D = 4 * a * c - b * b
        if D > 0 and is_fundamental_discriminant(-D) and F.coefficients.get(key, 0) != 0:
            found.add(D)
    return sorted(found)
