"""Exact lattice Fock spaces, vertex operators and Hilbert-scheme generating functions."""

from .errors import FockForgeError, TruncationError, UnsupportedInputError, UsageError
from .fock import FockState, OperatorSymbol, PairingSpec
from .hilbgen import HodgeDiamond
from .kernels import BACKEND
from .lattice import Lattice
from .partitions import Multipartition, Partition
from .series import LaurentPoly, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FockForgeError",
    "FockState",
    "HodgeDiamond",
    "LaurentPoly",
    "Lattice",
    "Multipartition",
    "OperatorSymbol",
    "PairingSpec",
    "Partition",
    "TruncatedSeries",
    "TruncationError",
    "UnsupportedInputError",
    "UsageError",
]
