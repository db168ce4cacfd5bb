"""Exact local factors of GSp4 and GL2 representations, degree-2 Siegel Hecke eigenforms and their L-functions.

Subpackages and modules:

* ``algebra``: exact rational functions in the residue-field size and q^-s.
* ``satake``: Satake parameters, dual-group representations and local Euler factors.
* ``localfactors`` and ``bessel_zeta``: ramified GL2 data and local zeta integrals.
* ``arch``: archimedean Gamma products with a normal form.
* ``siegel``: Fourier expansions, Eisenstein series, Hecke operators and eigenforms.
* ``lnumeric``: high-precision Euler products and Dirichlet series.
* ``cache``, ``verify`` and ``cli``: expansion caches, invariant suites and the command line.
"""

__version__ = "0.1.0"
