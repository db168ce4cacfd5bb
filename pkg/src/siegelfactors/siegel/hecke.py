"""Classical Hecke operators T(m) on Fourier expansions of degree 2.

The similitude-m cosets are [[m tD^-1, B], [0, D]] with D running over row
Hermite normal forms [[a, b], [0, d]] (0 <= b < d, m D^-1 integral) and
B = Y D for symmetric Y modulo integral symmetric matrices. Summing over Y
leaves a character condition, so that

    a(T(m)F, N) = m^(2k-3) sum_D det(D)^(-k) |L_D| [tr(T Y) in Z for Y in L_D] a(F, T),

with T = D N tD / m and L_D = {Y symmetric : Y D integral} / Sym2(Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

from .forms import FourierExpansion, InsufficientPrecision, reduced_forms

__all__ = ["Coset", "cosets", "hecke_coefficient", "hecke_operator"]


@dataclass(frozen=True)
class Coset:
    D: tuple            # ((a, b), (0, d))
    det: int
    lattice_size: int   # |L_D|
    generators: tuple   # generators (s11, s12, s22) of L_D, with Y = S / m


def _span(gens: list, m: int) -> set:
    span = {(0, 0, 0)}
    for g in gens:
        new = set(span)
        frontier = list(span)
        while frontier:
            x = frontier.pop()
            y = tuple((xi + gi) % m for xi, gi in zip(x, g))
            if y not in new:
                new.add(y)
                frontier.append(y)
        span = new
    return span


@lru_cache(maxsize=None)
def cosets(m: int) -> tuple:
    out = []
    for a in range(1, m + 1):
        if m % a:
            continue
        for d in range(1, m + 1):
            if m % d:
                continue
            for b in range(d):
                if (m * b) % (a * d):
                    continue
                lattice = [
                    (s11, s12, s22)
                    for s11, s12, s22 in cartesian(range(m), repeat=3)
                    if (s11 * a) % m == 0 and (s11 * b + s12 * d) % m == 0
                    and (s12 * a) % m == 0 and (s12 * b + s22 * d) % m == 0
                ]
                gens = []
                span = {(0, 0, 0)}
                for y in lattice:
                    if y not in span:
                        gens.append(y)
                        span = _span(gens, m)
                if len(span) != len(lattice):
                    raise AssertionError("lattice generators do not span")
                out.append(Coset(((a, b), (0, d)), a * d, len(lattice), tuple(gens)))
    return tuple(out)


def _image_index(D: tuple, form: tuple, m: int):
    """T = D N tD / m as a triple, or None when T is not half-integral."""
    (p, q), (_, s) = D
    A, B, C = form  # 2N = [[2A, B], [B, 2C]]
    x00 = 2 * A * p * p + 2 * B * p * q + 2 * C * q * q
    x01 = B * p * s + 2 * C * q * s
    x11 = 2 * C * s * s
    if x00 % (2 * m) or x11 % (2 * m) or x01 % m:
        return None
    return (x00 // (2 * m), x01 // m, x11 // (2 * m))


def hecke_coefficient(lookup, weight: int, m: int, form: tuple):
    """Coefficient of T(m)F at ``form``; ``lookup`` returns a(F, T) for any triple."""
    total = 0
    for coset in cosets(m):
        T = _image_index(coset.D, form, m)
        if T is None:
            continue
        a, b, c = T
        if any((a * s11 + b * s12 + c * s22) % m for s11, s12, s22 in coset.generators):
            continue
        v = lookup(T)
        if v:
            total = total + v * (Fraction(m) ** (2 * weight - 3) * coset.lattice_size / Fraction(coset.det) ** weight)
    return total


def hecke_operator(F: FourierExpansion, m: int) -> FourierExpansion:
    """T(m)F on the window det <= F.det_bound / m^2."""
    if m < 1:
        raise ValueError("m must be positive")
    bound = F.det_bound / (m * m)
    if bound < Fraction(3, 4):
        raise InsufficientPrecision(f"det_bound {F.det_bound} too small for T({m})")
    out = {}
    for key in reduced_forms(bound):
        v = hecke_coefficient(F.__getitem__, F.weight, m, key)
        if v:
            out[key] = v
    return FourierExpansion(F.weight, bound, out, f"T({m}){F.name}")
