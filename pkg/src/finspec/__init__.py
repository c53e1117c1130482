"""finspec: exact homology computations for finite symmetric spectra.

Simplicial sets, integer chain complexes, symmetric sequences and
spectra, homotopy colimits over finite categories, a stable-equivalence
detection functor, and three topological Hochschild homology
constructions, all over exact integer arithmetic with range
certificates.
"""

__version__ = "0.1.0"
