//! Built-in example algebras and modules.

use crate::dga::{laurent_window, tensor_over_base, DGAlgebra, LaurentElement, LaurentWindow, TwistedLaurentDGA};
use crate::dgmod::{end_algebra, extend_scalars, DGModule};
use crate::linalg::matrix::unit_vec;
use crate::linalg::{FieldSpec, Matrix};

/// The base field in degree 0.
pub fn q0(f: FieldSpec) -> DGAlgebra {
    DGAlgebra::new(
        f,
        vec!["one".into()],
        vec![0],
        vec![f.one()],
        vec![vec![vec![f.one()]]],
        Matrix::zeros(f, 1, 1),
    )
    .expect("valid")
}

/// `K[ε]/(ε²)`, `|ε| = -1`, `d(ε) = 1`.
pub fn dual(f: FieldSpec) -> DGAlgebra {
    let (one, eps) = (unit_vec(f, 2, 0), unit_vec(f, 2, 1));
    let zero = vec![f.zero(), f.zero()];
    DGAlgebra::new(
        f,
        vec!["one".into(), "eps".into()],
        vec![0, -1],
        one.clone(),
        vec![vec![one, eps.clone()], vec![eps, zero]],
        Matrix::from_entries(f, 2, 2, vec![f.zero(), f.one(), f.zero(), f.zero()]),
    )
    .expect("valid")
}

/// The complex `K → K` (identity) over the base field, in degrees 0 and 1.
pub fn two_term(f: FieldSpec) -> DGModule {
    DGModule::new(
        q0(f),
        vec!["m0".into(), "m1".into()],
        vec![0, 1],
        vec![Matrix::identity(f, 2)],
        Matrix::from_entries(f, 2, 2, vec![f.zero(), f.zero(), f.one(), f.zero()]),
    )
    .expect("valid")
}

/// `End(K → K)`: basis `E01, E00, E11, E10`, with `d(E01) = 1`.
pub fn m2(f: FieldSpec) -> DGAlgebra {
    end_algebra(&two_term(f)).expect("End of a complex")
}

/// `DUAL ⊗ DUAL`.
pub fn dd(f: FieldSpec) -> DGAlgebra {
    tensor_over_base(&dual(f), &dual(f)).expect("same field")
}

/// `K[X, X⁻¹]`, `|X| = -1`, `d(X) = 1`, so `d(X^{2n+1}) = X^{2n}`.
pub fn lau(f: FieldSpec) -> TwistedLaurentDGA {
    TwistedLaurentDGA::new(
        q0(f),
        Matrix::identity(f, 1),
        -1,
        LaurentElement::monomial(vec![f.one()], 0),
        vec![],
    )
    .expect("valid")
}

/// `K[T, T⁻¹]`, `|T| = 2`, `d = 0`.
pub fn lau2(f: FieldSpec) -> TwistedLaurentDGA {
    TwistedLaurentDGA::new(q0(f), Matrix::identity(f, 1), 2, LaurentElement::zero(), vec![]).expect("valid")
}

pub const DEFAULT_WINDOW: (i64, i64) = (-4, 4);

pub fn lau_window(f: FieldSpec) -> LaurentWindow {
    laurent_window(&lau(f), DEFAULT_WINDOW.0, DEFAULT_WINDOW.1).expect("wide enough")
}

pub fn lau2_window(f: FieldSpec) -> LaurentWindow {
    laurent_window(&lau2(f), DEFAULT_WINDOW.0, DEFAULT_WINDOW.1).expect("wide enough")
}

/// `DUAL ⊗ (K → K)`, a 4-dimensional module over `DUAL`.
pub fn dual_tensor_two_term(f: FieldSpec) -> DGModule {
    extend_scalars(&dual(f), &two_term(f)).expect("same field")
}

#[derive(Clone, Debug)]
pub enum CatalogObject {
    Algebra(DGAlgebra),
    Laurent(TwistedLaurentDGA),
    Module(DGModule),
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Where the example comes from.
    pub note: &'static str,
    /// Verdicts the catalog promises to reproduce.
    pub expected: &'static [(&'static str, &'static str)],
    build: fn(FieldSpec) -> CatalogObject,
}

impl CatalogEntry {
    pub fn build(&self, f: FieldSpec) -> CatalogObject {
        (self.build)(f)
    }
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "Q0",
        description: "the base field in degree 0, d = 0",
        note: "base case",
        expected: &[("is_dg_division", "dg_division"), ("classify_dg_division", "zero_differential")],
        build: |f| CatalogObject::Algebra(q0(f)),
    },
    CatalogEntry {
        name: "DUAL",
        description: "K[eps]/(eps^2), |eps| = -1, d(eps) = 1",
        note: "computed from the definitions",
        expected: &[("is_dg_division", "dg_division"), ("is_acyclic", "acyclic")],
        build: |f| CatalogObject::Algebra(dual(f)),
    },
    CatalogEntry {
        name: "M2",
        description: "End of the contractible complex K -> K",
        note: "computed from the definitions",
        expected: &[("is_dg_simple_algebra", "simple"), ("is_dg_division", "not_dg_division")],
        build: |f| CatalogObject::Algebra(m2(f)),
    },
    CatalogEntry {
        name: "DD",
        description: "DUAL tensor DUAL over the base field",
        note: "computed from the definitions",
        expected: &[("is_dg_simple_algebra", "not_simple"), ("is_dg_prime", "not_prime")],
        build: |f| CatalogObject::Algebra(dd(f)),
    },
    CatalogEntry {
        name: "LAU",
        description: "K[X, X^-1], |X| = -1, d(X) = 1",
        note: "worked example, d(X^(2n+1)) = X^(2n)",
        expected: &[("is_dg_division", "dg_division"), ("classify_dg_division", "acyclic")],
        build: |f| CatalogObject::Laurent(lau(f)),
    },
    CatalogEntry {
        name: "LAU2",
        description: "K[T, T^-1], |T| = 2, d = 0",
        note: "worked example of the zero-differential case",
        expected: &[("is_dg_division", "dg_division"), ("classify_dg_division", "zero_differential")],
        build: |f| CatalogObject::Laurent(lau2(f)),
    },
    CatalogEntry {
        name: "TWO_TERM",
        description: "the complex K -> K as a module over the base field",
        note: "computed from the definitions",
        expected: &[],
        build: |f| CatalogObject::Module(two_term(f)),
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}
