"""maxcurves: exact verification toolkit for maximal curves over F_{p^2}."""

__version__ = "0.1.0"
