"""Left eigenvalues of 2x2 quaternionic matrices via unilateral quadratic equations."""
from .cxlift import QuatMatrix2, complexify, sdet, sdet_shift
from .errors import ConsistencyError, DomainError, NumericalError, QuatEigError
from .lefteig2 import left_eigenvalues
from .quat import Quaternion
from .sp2 import classify_spectrum, is_symplectic, random_symplectic
from .uniquad import solve

__all__ = [
    "ConsistencyError",
    "DomainError",
    "NumericalError",
    "QuatEigError",
    "QuatMatrix2",
    "Quaternion",
    "classify_spectrum",
    "complexify",
    "is_symplectic",
    "left_eigenvalues",
    "random_symplectic",
    "sdet",
    "sdet_shift",
    "solve",
]

__version__ = "0.1.0"
