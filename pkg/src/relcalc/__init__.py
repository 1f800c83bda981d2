"""Finite-dimensional calculus of linear relations.

Relations are subspaces of ``C^n (+) C^n`` stored by orthonormal bases.  The
package computes adjoints, parts, classifications, deficiency indices,
spectra, Cayley/Z transforms and dissipative extensions, with two worked
models: truncated Jacobi matrices and polynomial de Branges spaces.
"""
from .errors import *  # noqa: F401,F403
from .subspace import DEFAULT_TOL, Subspace, ToleranceProfile
from .relation import (ClassificationReport, LinearRelation, RelationParts, add, adjoint,
                       classify, compose, deficiency_index, deficiency_space, direct_sum,
                       eta_minus, eta_plus, from_blocks, from_pairs, graph, inverse,
                       multivalued_part, operator_matrix, operator_norm, operator_part,
                       orthogonal_complement, orthogonal_difference, orthogonal_sum, parts,
                       reduce, relative_bound, scale, shift, zero_relation)
from .spectra import SpectrumReport, eigenvalues, in_quasi_regular, in_regular, kernel_basis
from .transforms import cayley, z_transform, z_transform_scaled
from .extensions import (ExtensionParameter, VonNeumannDecomposition, contractive_join,
                         eta_e, extend_by_contraction, extension_parameter, index_budget,
                         maximal_dissipative_extension, selfadjoint_extension_at,
                         von_neumann_decompose)

__version__ = '0.1.0'
