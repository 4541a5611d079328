"""Genus fields and Hilbert genus fields of real cyclic quartic fields Q(sqrt(a*eps_p*sqrt(p)))."""

__version__ = "0.1.0"
