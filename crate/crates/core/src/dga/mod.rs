//! Dg-algebras: structure constants, validation, constructions and the
//! twisted Laurent family.

pub mod algebra;
pub mod constructions;
pub mod laurent;

pub use algebra::{
    validate_dga, validate_table, Axiom, AxiomFailure, DGAlgebra, HomogeneousElement, StructureTable,
    ValidationReport,
};
pub use constructions::{
    cycles_algebra, dg_map_failures, graded_center, homology_algebra, is_dg_isomorphism, opposite_algebra,
    quotient_algebra, subalgebra, tensor_over_base, tensor_over_central, tensor_vector, CentralPair,
    CentralSubalgebraWitness, CentralTensor, Homology, QuotientAlgebra, Subalgebra,
};
pub use laurent::{laurent_window, LaurentElement, LaurentWindow, TwistedLaurentDGA};
