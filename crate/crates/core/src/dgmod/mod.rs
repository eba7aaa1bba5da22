//! Dg-modules over finite-dimensional dg-algebras.

pub mod free;
pub mod functors;
pub mod hom;
pub mod module;

pub use free::{free_basis, free_basis_unchecked, submodule_rank_compare, FreeBasis, RankComparison};
pub use functors::{induce_functor, induction_round_trip, z_functor, CyclesModule, Induced, RoundTrip};
pub use hom::{
    annihilator, end_algebra, end_algebra_with_complex, faithful_embedding, hom_complex, Annihilator,
    FaithfulEmbedding, HomComplex,
};
pub use module::{
    direct_sum, extend_scalars, is_submodule, module_map_failures, quotient_module, regular_module,
    restrict_to_base, shift_module, submodule, submodule_closure, validate_module, DGModule, ModuleAxiom,
    ModuleFailure, ModuleValidation,
};
