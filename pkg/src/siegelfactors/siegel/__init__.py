"""Fourier expansions of degree-2 Siegel modular forms of full level."""
