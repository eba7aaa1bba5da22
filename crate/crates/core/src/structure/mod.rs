//! Ring-theoretic decision procedures and classification.

pub mod acyclic;
pub mod density;
pub mod division;
pub mod ideals;
pub mod laurent;
pub mod minpoly;
pub mod semisimple;
pub mod tensor;

pub use acyclic::{
    acyclic_decomposition, acyclicity_witness, homology_dims, is_acyclic, skew_presentation, AcyclicDecomposition,
    AcyclicityVerdict, AcyclicityWitness, DecompositionRow, SkewPresentation,
};
pub use density::{cycle_endomorphisms, d_independent, density_solve, DensityInstance, DensitySolution, Independence};
pub use division::{
    classify_dg_division, graded_center_division_check, homogeneous_inverse, homology_of_division, is_dg_division,
    is_gr_division, regularity_condition, verify_inverse_table, CenterDivisionCheck, CyclesShape, DifferentialCase,
    DivisionClassification, DivisionVerdict, GrDivisionVerdict, GrRoute, HomologyOfDivision, RegularityVerdict,
};
pub use ideals::{
    dg_ideal_generate, find_simple_faithful, is_dg_ideal, is_dg_prime, is_dg_simple_algebra, is_dg_simple_module,
    minimal_cyclic_submodules, search_ideals, verify_ideal_certificate, Candidate, DGIdeal, IdealCertificate,
    IdealSearch, ModuleSimplicity, PrimeVerdict, PrimeWitness, PrimitivityVerdict, ProperWitness, Side,
    SimplicityVerdict,
};
pub use laurent::{
    classify_laurent, graded_center_check_laurent, homology_of_division_laurent, is_acyclic_laurent,
    is_dg_division_laurent, is_gr_division_laurent_cycles, regularity_laurent, LaurentAcyclicity, LaurentCenterCheck,
    LaurentClassification, LaurentHomology,
};
pub use semisimple::{
    is_semisimple_category, matrix_decomposition, matrix_decomposition_unchecked, shifted_matrix_algebra,
    MatrixDecomposition, SemisimplicityVerdict,
};
pub use tensor::{
    acyclic_tensor_check, cycles_of_tensor_check, tensor_of_divisions_simplicity, AcyclicTensor, CyclesOfTensor,
    TensorSimplicity,
};
