//! Independence over `D = ker(d_Hom) ⊆ End(M)` and the density solver.

use crate::dga::cycles_algebra;
use crate::dgmod::{end_algebra_with_complex, DGModule};
use crate::enumerate::Budget;
use crate::error::{DgError, Result};
use crate::linalg::matrix::is_zero_vec;
use crate::linalg::{Matrix, Vector};

use super::acyclic::acyclicity_witness;
use super::ideals::is_dg_simple_module;

/// Basis of the cycles of `End(M)` as matrices on `M`.
pub fn cycle_endomorphisms(m: &DGModule) -> Result<Vec<Matrix>> {
    let (end, h) = end_algebra_with_complex(m)?;
    let z = cycles_algebra(&end)?;
    Ok(z.embedding.columns().iter().map(|c| h.from_coords(c)).collect())
}

#[derive(Clone, Debug)]
pub struct Independence {
    pub independent: bool,
    /// `(f_1, ..., f_k)` with `Σ f_i(x_i) = 0`, not all zero.
    pub dependency: Option<Vec<Matrix>>,
}

pub fn d_independent(m: &DGModule, xs: &[Vector]) -> Result<Independence> {
    if xs.iter().any(|x| !is_zero_vec(&m.d(x))) {
        return Err(DgError::Precondition("every x_i must be a cycle".into()));
    }
    let d = cycle_endomorphisms(m)?;
    let cols: Vec<Vector> = xs.iter().flat_map(|x| d.iter().map(move |f| f.mul_vec(x))).collect();
    let sys = Matrix::from_columns(m.algebra().field(), m.dim(), &cols);
    let kernel = sys.nullspace();
    let dependency = kernel.first().map(|c| {
        (0..xs.len())
            .map(|i| {
                let mut acc = Matrix::zeros(m.algebra().field(), m.dim(), m.dim());
                for (j, f) in d.iter().enumerate() {
                    acc = acc.add(&f.scale(&c[i * d.len() + j]));
                }
                acc
            })
            .collect()
    });
    Ok(Independence { independent: dependency.is_none(), dependency })
}

#[derive(Clone, Debug)]
pub struct DensityInstance {
    pub module: DGModule,
    pub xs: Vec<Vector>,
    pub ys: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct DensitySolution {
    pub a: Vector,
    pub verified: bool,
    pub notes: Vec<String>,
}

/// Finds `a ∈ ker(d)` with `a x_i = y_i`; the preconditions guarantee one exists.
pub fn density_solve(inst: &DensityInstance, budget: &mut Budget) -> Result<DensitySolution> {
    let m = &inst.module;
    let alg = m.algebra();
    let f = alg.field();
    let mut notes = Vec::new();
    if inst.xs.len() != inst.ys.len() {
        return Err(DgError::Precondition("x and y must have the same length".into()));
    }
    if acyclicity_witness(alg)?.is_none() {
        return Err(DgError::Precondition("the algebra is not acyclic".into()));
    }
    if inst.ys.iter().any(|y| !is_zero_vec(&m.d(y))) {
        return Err(DgError::Precondition("every y_i must be a cycle".into()));
    }
    if f.order().is_some() {
        if !is_dg_simple_module(m, budget)?.simple {
            return Err(DgError::Precondition("the module is not dg-simple".into()));
        }
    } else {
        notes.push("dg-simplicity of the module is assumed over Q".into());
    }
    if !d_independent(m, &inst.xs)?.independent {
        return Err(DgError::Precondition("x is not D-independent".into()));
    }
    let n = alg.dim();
    let mut rows: Vec<Vector> = (0..n).map(|r| alg.diff_matrix().row(r).to_vec()).collect();
    let mut rhs: Vector = vec![f.zero(); n];
    for (x, y) in inst.xs.iter().zip(&inst.ys) {
        let cols: Vec<Vector> = (0..n).map(|j| m.act(&alg.basis_vec(j), x)).collect();
        let block = Matrix::from_columns(f, m.dim(), &cols);
        for r in 0..m.dim() {
            rows.push(block.row(r).to_vec());
        }
        rhs.extend(y.iter().cloned());
    }
    let sys = Matrix::from_rows(f, n, &rows);
    let (a, _) = sys
        .solve(&rhs)
        .ok_or_else(|| DgError::Alarm("density system has no solution on a certified instance".into()))?;
    let verified = is_zero_vec(&alg.d(&a)) && inst.xs.iter().zip(&inst.ys).all(|(x, y)| m.act(&a, x) == *y);
    if !verified {
        return Err(DgError::Alarm("density solution fails substitution".into()));
    }
    Ok(DensitySolution { a, verified, notes })
}
