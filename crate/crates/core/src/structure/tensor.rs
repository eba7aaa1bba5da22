//! Cycles and acyclicity of tensor products, and simplicity of `D_A ⊗_Z D_B`.

use std::collections::BTreeMap;

use crate::dga::{
    graded_center, homology_algebra, is_dg_isomorphism, tensor_over_base, tensor_over_central, tensor_vector,
    CentralPair, DGAlgebra,
};
use crate::enumerate::Budget;
use crate::error::{DgError, Result};
use crate::linalg::matrix::vec_sub;
use crate::linalg::{kernel_and_image, GradedSubspace, Matrix, Vector};

use super::division::is_dg_division;
use super::ideals::{is_dg_simple_algebra, SimplicityVerdict};

#[derive(Clone, Debug)]
pub struct CyclesOfTensor {
    pub kernel_dims: BTreeMap<i64, usize>,
    pub formula_dims: BTreeMap<i64, usize>,
    pub expected_dim: usize,
    pub direct: bool,
    pub equal: bool,
}

impl CyclesOfTensor {
    pub fn passed(&self) -> bool {
        self.direct && self.equal && self.kernel_dims.values().sum::<usize>() == self.expected_dim
    }
}

/// `ker(d_{A⊗B}) = (Z_A ⊗ Z_B) ⊕ (1⊗w - z⊗1)(Z_A ⊗ Z_B)` for `d(z) = 1`, `d(w) = 1`.
pub fn cycles_of_tensor_check(a: &DGAlgebra, b: &DGAlgebra, z: &Vector, w: &Vector) -> Result<CyclesOfTensor> {
    if a.d(z) != *a.unit() || b.d(w) != *b.unit() {
        return Err(DgError::Precondition("witnesses must satisfy d(z) = 1 and d(w) = 1".into()));
    }
    let t = tensor_over_base(a, b)?;
    let (ka, _) = kernel_and_image(&a.diff_map()?);
    let (kb, _) = kernel_and_image(&b.diff_map()?);
    let (kt, _) = kernel_and_image(&t.diff_map()?);
    let mut base = GradedSubspace::zero(t.space().clone());
    for x in ka.basis() {
        for y in kb.basis() {
            base.insert(&tensor_vector(x, y))?;
        }
    }
    let u = vec_sub(&tensor_vector(a.unit(), w), &tensor_vector(z, b.unit()));
    let mut twisted = GradedSubspace::zero(t.space().clone());
    for v in base.basis() {
        twisted.insert(&t.mul(&u, v))?;
    }
    let mut sum = base.clone();
    for v in twisted.basis() {
        sum.insert(v)?;
    }
    let direct = sum.dim() == base.dim() + twisted.dim();
    let equal = sum.equals(&kt);
    Ok(CyclesOfTensor {
        kernel_dims: kt.dims(),
        formula_dims: sum.dims(),
        expected_dim: 2 * ka.dim() * kb.dim(),
        direct,
        equal,
    })
}

#[derive(Clone, Debug)]
pub struct AcyclicTensor {
    pub algebra: DGAlgebra,
    /// Transported witness in the tensor.
    pub witness: Vector,
    pub witness_verified: bool,
    pub homology_zero: bool,
}

/// Transports `z_A ⊗ 1` (or `1 ⊗ z_B`) into `A ⊗_Z B`; `pair = None` means over the base field.
pub fn acyclic_tensor_check(
    a: &DGAlgebra,
    b: &DGAlgebra,
    pair: Option<&CentralPair>,
    za: Option<&Vector>,
    zb: Option<&Vector>,
) -> Result<AcyclicTensor> {
    let lift = match (za, zb) {
        (Some(z), _) if a.d(z) == *a.unit() => tensor_vector(z, b.unit()),
        (_, Some(z)) if b.d(z) == *b.unit() => tensor_vector(a.unit(), z),
        _ => return Err(DgError::Precondition("one factor needs an acyclicity witness".into())),
    };
    let (algebra, witness) = match pair {
        None => (tensor_over_base(a, b)?, lift),
        Some(p) => {
            let ct = tensor_over_central(a, b, p)?;
            let w = ct.projection.mul_vec(&lift);
            (ct.algebra, w)
        }
    };
    let witness_verified = algebra.d(&witness) == *algebra.unit();
    let homology_zero = homology_algebra(&algebra)?.algebra.dim() == 0;
    Ok(AcyclicTensor { algebra, witness, witness_verified, homology_zero })
}

#[derive(Clone, Debug)]
pub struct TensorSimplicity {
    pub algebra: DGAlgebra,
    pub simplicity: SimplicityVerdict,
    pub characteristic_two: bool,
}

/// `Z_gr(D_A)` and `Z_gr(D_B)` must coincide (same structure constants on the
/// derived bases); the tensor over it is predicted to be dg-simple.
pub fn tensor_of_divisions_simplicity(da: &DGAlgebra, db: &DGAlgebra, budget: &mut Budget) -> Result<TensorSimplicity> {
    for (name, x) in [("D_A", da), ("D_B", db)] {
        if !is_dg_division(x, budget)?.division {
            return Err(DgError::Precondition(format!("{name} is not a dg-division algebra")));
        }
    }
    let ca = graded_center(da)?;
    let cb = graded_center(db)?;
    let (za, zb) = (&ca.sub.algebra, &cb.sub.algebra);
    if za.dim() != zb.dim() || !is_dg_isomorphism(za, zb, &Matrix::identity(za.field(), za.dim())) {
        return Err(DgError::Precondition("the graded centers of D_A and D_B differ".into()));
    }
    let pair = CentralPair { z: za.clone(), into_a: ca.sub.embedding.clone(), into_b: cb.sub.embedding.clone() };
    let t = tensor_over_central(da, db, &pair)?;
    let simplicity = is_dg_simple_algebra(&t.algebra, budget)?;
    if !simplicity.simple {
        return Err(DgError::Alarm("tensor of dg-division algebras over their common center is not dg-simple".into()));
    }
    Ok(TensorSimplicity {
        algebra: t.algebra,
        simplicity,
        characteristic_two: da.field().characteristic() == 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn cycles_of_dual_squared() {
        let a = catalog::dual(Q);
        let e = a.basis_vec(1);
        let c = cycles_of_tensor_check(&a, &a, &e, &e).unwrap();
        assert!(c.passed());
        assert_eq!(c.kernel_dims, BTreeMap::from([(-1, 1), (0, 1)]));
        let m2 = catalog::m2(Q);
        let c = cycles_of_tensor_check(&a, &m2, &e, &m2.basis_vec(0)).unwrap();
        assert!(c.passed());
        assert_eq!(c.expected_dim, 4);
    }

    #[test]
    fn acyclic_tensors() {
        let a = catalog::dual(Q);
        let e = a.basis_vec(1);
        let t = acyclic_tensor_check(&a, &a, None, Some(&e), None).unwrap();
        assert!(t.witness_verified && t.homology_zero);
        let t = acyclic_tensor_check(&a, &catalog::q0(Q), None, Some(&e), None).unwrap();
        assert!(t.witness_verified && t.homology_zero);
        let m2 = catalog::m2(Q);
        let t = acyclic_tensor_check(&m2, &a, None, Some(&m2.basis_vec(0)), None).unwrap();
        assert!(t.witness_verified && t.homology_zero);
        let pair = CentralPair::graded_center_of(&a).unwrap();
        let t = acyclic_tensor_check(&a, &a, Some(&pair), Some(&e), None).unwrap();
        assert!(t.witness_verified && t.homology_zero && t.algebra.dim() == 2);
    }

    #[test]
    fn division_tensor() {
        let f = FieldSpec::prime(3).unwrap();
        let mut b = Budget::default();
        let t = tensor_of_divisions_simplicity(&catalog::dual(f), &catalog::dual(f), &mut b).unwrap();
        assert_eq!(t.algebra.dim(), 2);
        assert!(t.simplicity.simple);
        assert!(matches!(
            tensor_of_divisions_simplicity(&catalog::dual(f), &catalog::q0(f), &mut b),
            Err(DgError::Precondition(_))
        ));
        assert!(!is_dg_simple_algebra(&catalog::dd(f), &mut b).unwrap().simple);
    }
}
