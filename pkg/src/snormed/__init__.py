"""Computational S-normed spaces: structures, generators, axiom falsifiers,
ball geometry, finite-set Chebyshev analysis and Rhoades-type conditions."""
from .axioms import CheckReport, SampleSpec, Verdict
from .catalog import resolve
from .structures import Kind, StructureHandle, as_vector, vector

__all__ = ["CheckReport", "Kind", "SampleSpec", "StructureHandle", "Verdict", "as_vector", "resolve", "vector"]
__version__ = "0.1.0"
