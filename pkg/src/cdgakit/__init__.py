"""Exact-arithmetic computations with commutative cochain algebras:
cosimplicial machinery, polynomial-forms totalization, filtrations and
weight spectral sequences, the bar construction, and connection-algebra
section obstructions.
"""

__version__ = "0.1.0"

from .linalg import Matrix, Subspace
from .complexes import Complex, ChainMap, cohomology, is_quasi_iso, tot
from .cdga import CDGA, validate, tensor, h_star, ground_field
from .cosimplicial import (CosimplicialModule, CosimplicialCDGA, normalize,
                           tot_n, constant_cosimplicial, dold_kan_D)
from .thomsullivan import th, integration_map
from .filtration import (FilteredComplex, FilteredCDGA, FrobStructure,
                         convolution, spectral_sequence, is_er_quasi_iso,
                         purity_check, mixedness_check)
from .bar import bar, h0_hopf, indecomposables, pi_n
from .connection import (ConnectionAlgebra, section_check,
                         cohomology_section_check)
