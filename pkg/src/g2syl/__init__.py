"""Exact supercharacter and character theory of the maximal unipotent
subgroup of G2(q), realised inside the 8x8 matrix model of D4."""

from .ffield import FieldSpec, FqElem, fq_enumerate

__all__ = ["FieldSpec", "FqElem", "fq_enumerate"]
__version__ = "0.1.0"
