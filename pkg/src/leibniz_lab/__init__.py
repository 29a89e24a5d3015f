"""Exact linear algebra over Q(i) for triangular nilpotent algebras,
their solvable extensions, and the classification of the n = 4 family."""

from .scalars import ONE, ZERO, I, Poly, Scalar, scalar
from .linalg import Matrix, Subspace, invert, kernel, rref, span
from .algebra import (BasisChange, StructureTable, TableChecks, bracket,
                      change_of_basis, derivation_algebra, derived_series,
                      dumps_table, is_derivation, is_ideal, is_leibniz, is_lie,
                      is_nilpotent, is_solvable, leibniz_residues, load_table,
                      loads_table, lower_central_series, mult_matrix,
                      right_annihilator, save_table, series_signature)
from .triangular import (ShapeReport, StructureMatrices, allowed_offdiagonal,
                         check_structure_shape, corner_index, count_offdiagonal,
                         diagonal_vector, generator_label, nil_independent_count,
                         pair_index, pair_label, pairs, structure_matrices,
                         triangular)
from .extensions import (ExtensionSpec, MaxExtensionCheck, ResidueReport,
                         build_extension, derive_relations,
                         expected_relation_forms, expected_substitution,
                         generic_extension, master_param_names,
                         maximal_extension_spec, reduced_extension,
                         sample_extension_specs, stated_restrictions,
                         verify_corner_annihilation, verify_max_extension_is_lie)
from .classify import (CanonicalForm, Classification, L41Params, build_L41,
                       build_canonical, classify_L41, distinguish,
                       sample_l41_params)

__version__ = "0.1.0"
