"""Exact PBW bases, canonical bases and simple characters for ADE quantum groups.

Modules:

* :mod:`exact` -- Laurent polynomials, rational functions, truncated series
* :mod:`linalg` -- fraction-free linear algebra over Q(t)
* :mod:`roots` -- Cartan data, reduced words, braid moves, Kostant partitions
* :mod:`words` -- the word-space model of U+, shuffle product, Lusztig form
* :mod:`pbw` -- Lusztig data, root vectors, PBW bases, bar matrices
* :mod:`bases` -- canonical bases, simple characters, transition matrices
* :mod:`quiver` -- representations of Dynkin quivers
* :mod:`klr` -- KLR algebras by generators and relations
* :mod:`checks`, :mod:`report`, :mod:`cli` -- verification driver and CLI
"""

from .exact import LaurentPoly, RatFun, TruncSeries, series_expand
from .roots import CartanData, cartan

__version__ = "0.1.0"

__all__ = ["LaurentPoly", "RatFun", "TruncSeries", "series_expand", "CartanData", "cartan", "__version__"]
