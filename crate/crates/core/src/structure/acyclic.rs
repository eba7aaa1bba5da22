//! Acyclicity, the decomposition `A = ker(d) ⊕ ker(d)·y`, and the skew presentation.

use std::collections::BTreeMap;

use crate::dga::{cycles_algebra, dg_map_failures, validate_dga, DGAlgebra, Subalgebra};
use crate::error::{DgError, Result};
use crate::linalg::matrix::{vec_sub, zero_vec};
use crate::linalg::{kernel_and_image, solve_affine, AffineSolution, Matrix, Span, Vector};

/// `y` with `d(y) = 1`; necessarily of degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityWitness {
    pub y: Vector,
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct AcyclicityVerdict {
    pub acyclic: bool,
    pub witness: Option<AcyclicityWitness>,
    pub homology_dims: BTreeMap<i64, usize>,
}

pub fn homology_dims(a: &DGAlgebra) -> Result<BTreeMap<i64, usize>> {
    let (ker, im) = kernel_and_image(&a.diff_map()?);
    Ok(a
        .space()
        .support()
        .into_iter()
        .map(|n| (n, ker.dim_in(n) - im.dim_in(n)))
        .filter(|(_, d)| *d > 0)
        .collect())
}

pub fn acyclicity_witness(a: &DGAlgebra) -> Result<Option<AcyclicityWitness>> {
    if a.dim() == 0 {
        return Ok(None);
    }
    match solve_affine(&a.diff_map()?, 0, a.unit())? {
        AffineSolution::Solutions { particular, .. } => Ok(Some(AcyclicityWitness { y: particular, degree: -1 })),
        AffineSolution::NoSolution => Ok(None),
    }
}

pub fn is_acyclic(a: &DGAlgebra) -> Result<AcyclicityVerdict> {
    let witness = acyclicity_witness(a)?;
    let homology_dims = homology_dims(a)?;
    Ok(AcyclicityVerdict { acyclic: witness.is_some(), witness, homology_dims })
}

fn check_witness(a: &DGAlgebra, y: &[crate::linalg::Scalar]) -> Result<()> {
    if a.d(y) != *a.unit() {
        return Err(DgError::Precondition("d(y) != 1".into()));
    }
    Ok(())
}

/// Per-degree dimension counts of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionRow {
    pub degree: i64,
    pub dim_a: usize,
    pub dim_cycles: usize,
    pub dim_cycles_y: usize,
    pub dim_y_cycles: usize,
    pub rank_left: usize,
    pub rank_right: usize,
}

#[derive(Clone, Debug)]
pub struct AcyclicDecomposition {
    pub rows: Vec<DecompositionRow>,
    /// `A = ker(d) ⊕ ker(d)·y`.
    pub left: bool,
    /// `A = ker(d) ⊕ y·ker(d)`.
    pub right: bool,
}

pub fn acyclic_decomposition(a: &DGAlgebra, y: &Vector) -> Result<AcyclicDecomposition> {
    check_witness(a, y)?;
    let f = a.field();
    let (ker, _) = kernel_and_image(&a.diff_map()?);
    let mut rows = Vec::new();
    for n in a.space().support() {
        let c_n = ker.basis_in(n);
        let c_up = ker.basis_in(n + 1);
        let cy: Vec<Vector> = c_up.iter().map(|c| a.mul(c, y)).collect();
        let yc: Vec<Vector> = c_up.iter().map(|c| a.mul(y, c)).collect();
        let rank = |extra: &[Vector]| {
            let mut s = Span::from_vectors(f, a.dim(), &c_n);
            for v in extra {
                s.insert(v);
            }
            s.dim()
        };
        rows.push(DecompositionRow {
            degree: n,
            dim_a: a.space().dim_in(n),
            dim_cycles: c_n.len(),
            dim_cycles_y: Span::from_vectors(f, a.dim(), &cy).dim(),
            dim_y_cycles: Span::from_vectors(f, a.dim(), &yc).dim(),
            rank_left: rank(&cy),
            rank_right: rank(&yc),
        });
    }
    let left = rows.iter().all(|r| r.rank_left == r.dim_a && r.dim_cycles + r.dim_cycles_y == r.dim_a);
    let right = rows.iter().all(|r| r.rank_right == r.dim_a && r.dim_cycles + r.dim_y_cycles == r.dim_a);
    Ok(AcyclicDecomposition { rows, left, right })
}

/// `ker(d)[X; D]/(X² - y²)` on the basis `c_i, c_i X`, with `Φ(a + bX) = a + b y`.
#[derive(Clone, Debug)]
pub struct SkewPresentation {
    pub base: Subalgebra,
    pub algebra: DGAlgebra,
    /// Column `i` is `D(c_i)` in the basis of `ker(d)`.
    pub derivation: Matrix,
    /// `y²` in the basis of `ker(d)`.
    pub x_squared: Vector,
    /// Columns: `Φ` of the presentation basis, in the basis of `A`.
    pub phi: Matrix,
    pub failures: Vec<String>,
}

impl SkewPresentation {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn skew_presentation(a: &DGAlgebra, y: &Vector) -> Result<SkewPresentation> {
    check_witness(a, y)?;
    let f = a.field();
    let base = cycles_algebra(a)?;
    let c = &base.algebra;
    let k = c.dim();
    let in_c = |v: &Vector, what: &str| {
        base.from_host(v).ok_or_else(|| DgError::Alarm(format!("{what} is not a cycle")))
    };
    let mut failures = Vec::new();
    let mut derivation_cols = Vec::with_capacity(k);
    for i in 0..k {
        let ci = base.embedding.column(i);
        let deg = c.degree(i);
        let commutator = vec_sub(&a.mul(y, &ci), &a.mul(&ci, y).into_iter().map(|x| x.signed(deg)).collect::<Vec<_>>());
        let via_d: Vector = a.d(&a.mul(&a.mul(y, &ci), y)).into_iter().map(|x| -x.signed(deg)).collect();
        if commutator != via_d {
            failures.push(format!("two formulas for D({}) disagree", c.names()[i]));
        }
        derivation_cols.push(in_c(&commutator, "D(c)")?);
    }
    let derivation = Matrix::from_columns(f, k, &derivation_cols);
    let x_squared = in_c(&a.mul(y, y), "y²")?;
    let n = 2 * k;
    let top = |v: &Vector| {
        let mut out = v.clone();
        out.extend(zero_vec(f, k));
        out
    };
    let bottom = |v: &Vector| {
        let mut out = zero_vec(f, k);
        out.extend(v.iter().cloned());
        out
    };
    let mut mul = vec![vec![zero_vec(f, n); n]; n];
    for i in 0..k {
        let ci = c.basis_vec(i);
        for j in 0..k {
            let cj = c.basis_vec(j);
            let sj = c.degree(j);
            let prod = c.mul(&ci, &cj);
            let signed: Vector = prod.iter().map(|x| x.clone().signed(sj)).collect();
            let ci_dj = c.mul(&ci, &derivation_cols[j]);
            mul[i][j] = top(&prod);
            mul[i][k + j] = bottom(&prod);
            mul[k + i][j] = crate::linalg::matrix::vec_add(&top(&ci_dj), &bottom(&signed));
            mul[k + i][k + j] = crate::linalg::matrix::vec_add(&bottom(&ci_dj), &top(&c.mul(&signed, &x_squared)));
        }
    }
    let mut diff = Matrix::zeros(f, n, n);
    for i in 0..k {
        diff.set(i, k + i, f.one().signed(c.degree(i)));
    }
    let mut degrees = c.degrees().to_vec();
    degrees.extend(c.degrees().iter().map(|d| d - 1));
    let mut names = c.names().to_vec();
    names.extend(c.names().iter().map(|x| format!("{x}.X")));
    let algebra = DGAlgebra::new(f, names, degrees, top(c.unit()), mul, diff)?;
    let report = validate_dga(&algebra);
    failures.extend(report.failures.iter().map(|x| format!("presentation fails {}", x.axiom.name())));
    let mut phi_cols: Vec<Vector> = base.embedding.columns();
    phi_cols.extend(base.embedding.columns().iter().map(|ci| a.mul(ci, y)));
    let phi = Matrix::from_columns(f, a.dim(), &phi_cols);
    failures.extend(dg_map_failures(&algebra, a, &phi));
    if phi.rows() != phi.cols() || phi.inverse().is_none() {
        failures.push("Φ is not bijective".into());
    }
    Ok(SkewPresentation { base, algebra, derivation, x_squared, phi, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn witnesses() {
        assert!(!is_acyclic(&catalog::q0(Q)).unwrap().acyclic);
        assert_eq!(is_acyclic(&catalog::q0(Q)).unwrap().homology_dims, BTreeMap::from([(0, 1)]));
        let a = catalog::dual(Q);
        let v = is_acyclic(&a).unwrap();
        assert_eq!(v.witness.unwrap().y, a.basis_vec(1));
        assert!(v.homology_dims.is_empty());
        let m2 = catalog::m2(Q);
        assert_eq!(is_acyclic(&m2).unwrap().witness.unwrap().y, m2.basis_vec(0));
    }

    #[test]
    fn decompositions() {
        for a in [catalog::dual(Q), catalog::m2(Q), catalog::dd(Q)] {
            let y = acyclicity_witness(&a).unwrap().unwrap().y;
            let d = acyclic_decomposition(&a, &y).unwrap();
            assert!(d.left && d.right, "{:?}", d.rows);
            let cycles: usize = d.rows.iter().map(|r| r.dim_cycles).sum();
            assert_eq!(2 * cycles, a.dim());
        }
        assert!(acyclic_decomposition(&catalog::q0(Q), &vec![Q.one()]).is_err());
    }

    #[test]
    fn skew_presentations() {
        for a in [catalog::dual(Q), catalog::m2(Q), catalog::dd(Q)] {
            let y = acyclicity_witness(&a).unwrap().unwrap().y;
            let s = skew_presentation(&a, &y).unwrap();
            assert!(s.verified(), "{:?}", s.failures);
        }
        let a = catalog::dual(Q);
        let s = skew_presentation(&a, &a.basis_vec(1)).unwrap();
        assert!(s.derivation.is_zero());
        assert_eq!(s.x_squared, vec![Q.zero()]);
    }
}
