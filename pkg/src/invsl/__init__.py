"""Inverse Sturm-Liouville problems with singular potentials.

``sigma`` (a primitive of the potential ``q``) is recovered from two spectra
or from Dirichlet eigenvalues with norming constants. The forward problem
is solved by shooting on the quasi-derivative system, norming constants
come from paired Hadamard products and the inverse step solves the
Gelfand-Levitan-Marchenko equation.
"""
from .direct import ForwardResult, eigenvalues, forward
from .fourier import GridFunction
from .glm import GlmSolution, reconstruct
from .norming import norming_constants
from .spectral_data import NormingSpectra, RhoSequence, TwoSpectra, rho_of

__version__ = "0.1.0"

__all__ = [
    "ForwardResult", "GlmSolution", "GridFunction", "NormingSpectra", "RhoSequence",
    "TwoSpectra", "eigenvalues", "forward", "norming_constants", "reconstruct", "rho_of",
]
