"""Left cancellative small categories: rings, spectra, germ groupoids and operators."""

__version__ = "0.1.0"
