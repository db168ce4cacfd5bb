"""Command-line driver: expansion caches, Hecke data, Euler factors and verification suites.

Exit codes: 0 success or all cases passed, 1 some verification case failed,
2 usage or configuration error, 3 missing cache or unknown form.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import cache as cache_mod
from .cache import MissingCache, build_cache, cache_path, find_cache
from .siegel.forms import InsufficientPrecision, UnsupportedWeight

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MISSING = 0, 1, 2, 3


def _primes(text: str) -> tuple:
    try:
        primes = tuple(int(x) for x in text.split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from exc
    if any(p not in (2, 3, 5, 7) for p in primes):
        raise argparse.ArgumentTypeError("primes must be among 2, 3, 5, 7")
    return primes


def _cache_dir(args) -> Path:
    return Path(args.cache_dir) if args.cache_dir else cache_mod.cache_dir()


def _load(weight: int, args, min_bound=0):
    return find_cache(weight, args.det_bound or min_bound, _cache_dir(args))


def _records(weight: int, args):
    from .siegel.eigen import eigenforms_from_basis
    cache = _load(weight, args)
    return eigenforms_from_basis(cache.expansions("cusp"), cache.expansions("ring"), args.p if hasattr(args, "p") else 2,
                                 getattr(args, "primes", None) or (2, 3))


def _find_record(label: str, args):
    try:
        weight = int(label[1:].split("_")[0])
    except ValueError:
        raise MissingCache(f"unknown form {label!r}") from None
    for rec in _records(weight, args):
        if rec.label == label:
            return rec
    raise MissingCache(f"unknown form {label!r}")


def _fmt(x) -> str:
    return str(x)


def _numeric(x, digits=20) -> str:
    from .siegel.numberfield import to_complex
    v = to_complex(x, digits + 10) if not isinstance(x, (mpmath.mpf, mpmath.mpc)) else x
    if mpmath.im(v) == 0:
        return mpmath.nstr(mpmath.re(v), digits)
    return mpmath.nstr(v, digits)


# -- subcommands -------------------------------------------------------------------

def cmd_expand(args) -> int:
    out = Path(args.out) if args.out else cache_path(args.weight, args.det_bound or 40, _cache_dir(args))
    cache = build_cache(args.weight, args.det_bound or 40)
    cache.write(out)
    ring, cusp = cache.section("ring"), cache.section("cusp")
    print(f"wrote {out}")
    print(f"ring basis ({len(ring.forms)}):" + "".join(" " + f for f in ring.forms))
    print(f"cusp basis ({len(cusp.forms)}):" + "".join(" " + f for f in cusp.forms))
    return EXIT_OK


def cmd_hecke(args) -> int:
    from .siegel.eigen import hecke_matrix
    cache = _load(args.weight, args)
    basis = cache.expansions("cusp")
    if not basis:
        print(f"weight {args.weight}: cusp space is zero")
        return EXIT_OK
    M = hecke_matrix(basis, args.p)
    print(f"T({args.p}) on the weight-{args.weight} cusp basis {' '.join(F.name for F in basis)}:")
    for row in M:
        print("  [" + ", ".join(_fmt(x) for x in row) + "]")
    return EXIT_OK


def cmd_eigen(args) -> int:
    from .siegel.eigen import sk_classify
    for rec in _records(args.weight, args):
        try:
            sk_classify(rec, args.p)
        except KeyError:
            pass
        poly = " + ".join(f"({c})*x^{i}" for i, c in enumerate(rec.minimal_polynomial) if c)
        print(f"{rec.label}: class {rec.classification}; T({args.p}) eigenvalue root of {poly}")
        for m in sorted(rec.eigenvalues):
            print(f"  lambda({m}) = {rec.eigenvalues[m]}")
    return EXIT_OK


def cmd_satake(args) -> int:
    from .siegel.eigen import satake_from_factor
    recs = [_find_record(args.form, args)] if args.form else _records(args.weight, args)
    for rec in recs:
        for view in rec.conjugates():
            quad = satake_from_factor(view.spin_factor(args.p), args.precision)
            # the inverse roots are formed here, so keep the requested precision
            with mpmath.workprec(args.precision):
                roots = ", ".join(_numeric(x) for x in quad.multiset())
                mods = ", ".join(mpmath.nstr(abs(x), 15) for x in quad.multiset())
            print(f"{view.label} p={args.p}: roots [{roots}]; moduli [{mods}]")
    return EXIT_OK


def cmd_lfactor(args) -> int:
    from .satake import LocalFactor, rep_factor_from_spin, tensor_factor
    from .siegel.eigen import satake_from_factor
    from .siegel.elliptic import eigenform_q
    from .siegel.numberfield import NFElement
    rec = _find_record(args.form, args)
    spin = rec.spin_factor(args.p)
    if args.gl2:
        a = eigenform_q(args.gl2, args.p)[args.p]
        s = spin.denominator[1].field.gen() if isinstance(spin.denominator[1], NFElement) else None
        L = spin.denominator[1].field
        elliptic = LocalFactor.from_denominator([L.one(), -L(a) * s ** (1 - args.gl2), L.one()])
        factor = tensor_factor(spin, elliptic)
        what = f"spin x f{args.gl2}"
    else:
        factor = rep_factor_from_spin(spin, args.rep)
        what = f"rho{args.rep}"
    print(f"{rec.label} p={args.p} {what}: 1 / P(X), X = p^-s, degree {factor.degree}")
    for i, c in enumerate(factor.denominator):
        print(f"  X^{i}: {c}")
    with mpmath.workdps(40):
        from .siegel.numberfield import to_complex
        coeffs = [to_complex(c, 40) for c in reversed(factor.denominator)]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=200)
        recips = sorted((1 / r for r in roots), key=lambda z: (-float(abs(z)), float(mpmath.arg(z))))
    print("  reciprocal roots: " + ", ".join(mpmath.nstr(r, 15) for r in recips))
    return EXIT_OK


def cmd_classify(args) -> int:
    from .siegel.eigen import sk_classify
    for rec in _records(args.weight, args):
        print(f"{rec.label}: {sk_classify(rec, args.p)}")
    return EXIT_OK


def cmd_bessel_scan(args) -> int:
    from .siegel.eigen import bessel_data_scan
    cache = _load(args.weight, args)
    forms = cache.expansions("cusp") or cache.expansions("ring")
    for F in forms:
        found = bessel_data_scan(F, args.d_max)
        print(f"{F.name}: D in {found}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    options = {"det_bound": args.det_bound, "primes": args.primes, "precision": args.precision,
               "cache_dir": _cache_dir(args)}
    failed = False
    for name in suites:
        report = run_suite(name, options, workers=args.workers)
        sys.stdout.write(report.serialize())
        failed = failed or report.failed
    return EXIT_FAIL if failed else EXIT_OK


def cmd_eval(args) -> int:
    from .lnumeric import elliptic_spec, evaluate_partial_L, sk_spin_spec, zeta_spec
    if args.spec == "zeta":
        spec = zeta_spec()
    elif args.spec == "elliptic":
        spec = elliptic_spec(args.weight, args.terms)
    else:
        (rec,) = [r for r in _records(args.weight, args) if r.field is None] or [None]
        if rec is None:
            raise MissingCache(f"no rational eigenform of weight {args.weight}")
        spec = sk_spin_spec(rec, args.terms)
    result = evaluate_partial_L(spec, Fraction(args.s), args.terms, args.precision)
    digits = max(10, int(args.precision * 0.30103))
    print(f"{spec.name} at s={args.s}, primes <= {args.terms}: {_numeric(result.value, digits)}")
    print(f"tail bound (unit-modulus roots): {mpmath.nstr(result.tail_bound, 5)}")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelfactors",
        description="Exact local factors, Siegel Hecke eigenforms and verification suites.",
        epilog=f"Caches live in ${cache_mod.CACHE_ENV} (default ~/.cache/siegelfactors).")
    parser.add_argument("--cache-dir", help=f"cache directory (overrides ${cache_mod.CACHE_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, weight=True, prime=True):
        if weight:
            p.add_argument("--weight", type=int, required=True)
        p.add_argument("--det-bound", type=Fraction, default=None, help="determinant bound of the window")
        if prime:
            p.add_argument("--p", type=int, default=2, choices=(2, 3, 5, 7))
        p.add_argument("--primes", type=_primes, default=None, help="comma separated, e.g. 2,3")
        p.add_argument("--precision", type=int, default=160, help="working precision in bits")

    p = sub.add_parser("expand", help="build and write the expansion cache for a weight")
    common(p, prime=False)
    p.add_argument("--out", help="output path (default: cache directory)")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("hecke", help="matrix of T(p) on the cached cusp basis")
    common(p)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("eigen", help="Hecke eigenforms with exact eigenvalues")
    common(p)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("satake", help="numeric spin Satake roots")
    common(p, weight=False)
    p.add_argument("--weight", type=int)
    p.add_argument("--form", help="eigenform label such as F20_0")
    p.set_defaults(func=cmd_satake)

    p = sub.add_parser("lfactor", help="exact local factor of an eigenform")
    common(p, weight=False)
    p.add_argument("--form", required=True, help="eigenform label such as F10_0")
    p.add_argument("--rep", type=int, default=4, choices=(1, 4, 5, 10, 14, 16))
    p.add_argument("--gl2", type=int, default=None, help="tensor the spin factor with the elliptic eigenform of this weight")
    p.set_defaults(func=cmd_lfactor)

    p = sub.add_parser("classify", help="Saito-Kurokawa classification")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bessel-scan", help="fundamental discriminants with nonzero coefficients")
    common(p, prime=False)
    p.add_argument("--d-max", type=int, default=20)
    p.set_defaults(func=cmd_bessel_scan)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p, weight=False, prime=False)
    p.add_argument("--suite", required=True,
                   choices=("all", "sugano-zeta", "rho-relations", "x-nonarch", "x-arch", "sk-factorization",
                            "ramanujan", "gamma-tables"))
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate a partial Euler product")
    common(p, weight=False, prime=False)
    p.add_argument("--spec", choices=("zeta", "elliptic", "sk-spin"), default="zeta")
    p.add_argument("--weight", type=int, default=10)
    p.add_argument("--s", default="2")
    p.add_argument("--terms", type=int, default=10000)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "satake" and not args.form and args.weight is None:
        parser.error("satake needs --weight or --form")
    try:
        return args.func(args)
    except MissingCache as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except (UnsupportedWeight, InsufficientPrecision, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
