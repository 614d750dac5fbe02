"""cfslab: numerical laboratory for the regularized Dirac sea vacuum.

Kernels of the fermionic projector, spectral causal classification,
finite-mode operator algebras and epsilon-scaling experiments.
"""

__version__ = "0.1.0"
