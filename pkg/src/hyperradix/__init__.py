"""Number systems in the rings of hyperbolic and dual integers."""

from .algebra import DNum, HNum, norm_A, norm_D
from .numsys import Base, DigitString, Family, Mode, decode, encode, validate_base
from .radix import contraction, expand_point, fd_bbox, fd_sample
from .rings import DGaussInt, HInt, gd

__all__ = [
    "Base",
    "DGaussInt",
    "DNum",
    "DigitString",
    "Family",
    "HInt",
    "HNum",
    "Mode",
    "contraction",
    "decode",
    "encode",
    "expand_point",
    "fd_bbox",
    "fd_sample",
    "gd",
    "norm_A",
    "norm_D",
    "validate_base",
]
