//! Semisimplicity of the dg-module category and `End(M) ≅ Mat_n(D)`.

use std::collections::BTreeMap;

use crate::dga::{cycles_algebra, is_dg_isomorphism, validate_dga, DGAlgebra};
use crate::dgmod::{end_algebra_with_complex, hom_complex, regular_module, shift_module, submodule, DGModule};
use crate::enumerate::{projective_count, projective_reps, Budget};
use crate::error::{DgError, Result};
use crate::linalg::matrix::zero_vec;
use crate::linalg::{GradedSubspace, Matrix, Span};

use super::acyclic::{is_acyclic, AcyclicityWitness};
use super::ideals::{is_dg_simple_algebra, minimal_cyclic_submodules};

#[derive(Clone, Debug)]
pub struct SemisimplicityVerdict {
    pub semisimple: bool,
    pub witness: Option<AcyclicityWitness>,
    pub homology_dims: BTreeMap<i64, usize>,
    /// Whether the regular graded `ker(d)`-module is a sum of gr-simples.
    pub cycles_semisimple: Option<bool>,
    /// Dimension of the socle of the regular `ker(d)`-module.
    pub socle_dim: Option<usize>,
    /// Carriers of a decomposition of the regular dg-module into dg-simples.
    pub regular_decomposition: Option<Vec<GradedSubspace>>,
    pub notes: Vec<String>,
}

fn socle(m: &DGModule, budget: &mut Budget) -> Result<(GradedSubspace, Vec<GradedSubspace>)> {
    let minimal = minimal_cyclic_submodules(m, budget)?;
    let mut sum = GradedSubspace::zero(m.space().clone());
    let mut direct = Vec::new();
    for (_, c) in minimal {
        let before = sum.dim();
        for v in c.basis() {
            sum.insert(v)?;
        }
        if sum.dim() == before + c.dim() {
            direct.push(c);
        } else if sum.dim() != before {
            return Err(DgError::Alarm("minimal submodule meets the socle partially".into()));
        }
    }
    Ok((sum, direct))
}

pub fn is_semisimple_category(a: &DGAlgebra, budget: &mut Budget) -> Result<SemisimplicityVerdict> {
    if a.field().order().is_none() {
        return Err(DgError::UnsupportedField("semisimplicity is decided by enumeration over F_p".into()));
    }
    let acyclic = is_acyclic(a)?;
    if !acyclic.acyclic {
        return Ok(SemisimplicityVerdict {
            semisimple: false,
            witness: None,
            homology_dims: acyclic.homology_dims,
            cycles_semisimple: None,
            socle_dim: None,
            regular_decomposition: None,
            notes: vec!["not acyclic".into()],
        });
    }
    let z = cycles_algebra(a)?;
    let (soc, _) = socle(&regular_module(&z.algebra), budget)?;
    let cycles_semisimple = soc.is_full();
    let mut notes = Vec::new();
    let regular_decomposition = if cycles_semisimple {
        let (sum, parts) = socle(&regular_module(a), budget)?;
        if !sum.is_full() {
            return Err(DgError::Alarm("regular dg-module is not a sum of dg-simples".into()));
        }
        notes.push(format!("regular dg-module is a direct sum of {} dg-simples", parts.len()));
        Some(parts)
    } else {
        None
    };
    Ok(SemisimplicityVerdict {
        semisimple: cycles_semisimple,
        witness: acyclic.witness,
        homology_dims: acyclic.homology_dims,
        cycles_semisimple: Some(cycles_semisimple),
        socle_dim: Some(soc.dim()),
        regular_decomposition,
        notes,
    })
}

/// `M ≅ ⊕ S[k_i]` with explicit inclusions and projections, and
/// `Ψ: End(M) → Mat_n(D)`, `Ψ(g)_{ij} = π_i g ι_j`.
#[derive(Clone, Debug)]
pub struct MatrixDecomposition {
    pub simple: DGModule,
    pub d: DGAlgebra,
    pub shifts: Vec<i64>,
    /// `ι_j` as `dim M × dim S` matrices, homogeneous of degree `-k_j`.
    pub inclusions: Vec<Matrix>,
    /// `π_i` as `dim S × dim M` matrices, homogeneous of degree `k_i`.
    pub projections: Vec<Matrix>,
    pub end_m: DGAlgebra,
    pub matrices: DGAlgebra,
    pub psi: Matrix,
    pub failures: Vec<String>,
}

impl MatrixDecomposition {
    pub fn n(&self) -> usize {
        self.shifts.len()
    }

    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Mat_n(D)` with entries `(i, j, e)` of degree `|e| - k_i + k_j`, differential `(-1)^{k_i} ∂` entrywise.
pub fn shifted_matrix_algebra(d: &DGAlgebra, shifts: &[i64]) -> Result<DGAlgebra> {
    let f = d.field();
    let n = shifts.len();
    let m = d.dim();
    let total = n * n * m;
    let idx = |i: usize, j: usize, e: usize| (i * n + j) * m + e;
    let mut names = Vec::with_capacity(total);
    let mut degrees = Vec::with_capacity(total);
    for i in 0..n {
        for j in 0..n {
            for e in 0..m {
                names.push(format!("{}_{}{}", d.names()[e], i + 1, j + 1));
                degrees.push(d.degree(e) - shifts[i] + shifts[j]);
            }
        }
    }
    let mut mul = vec![vec![zero_vec(f, total); total]; total];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for a in 0..m {
                    for b in 0..m {
                        let prod = d.product(a, b);
                        let out = &mut mul[idx(i, j, a)][idx(j, l, b)];
                        for (c, x) in prod.iter().enumerate() {
                            out[idx(i, l, c)] = x.clone();
                        }
                    }
                }
            }
        }
    }
    let mut unit = zero_vec(f, total);
    for i in 0..n {
        for (e, x) in d.unit().iter().enumerate() {
            unit[idx(i, i, e)] = x.clone();
        }
    }
    let mut diff = Matrix::zeros(f, total, total);
    for i in 0..n {
        for j in 0..n {
            for e in 0..m {
                for (c, x) in d.diff_of(e).iter().enumerate() {
                    diff.set(idx(i, j, c), idx(i, j, e), x.clone().signed(shifts[i]));
                }
            }
        }
    }
    DGAlgebra::new(f, names, degrees, unit, mul, diff)
}

/// Certifies `A` dg-simple with semisimple module category over `F_p`, then decomposes `M`.
pub fn matrix_decomposition(m: &DGModule, budget: &mut Budget) -> Result<MatrixDecomposition> {
    let a = m.algebra();
    if a.field().order().is_none() {
        return Err(DgError::UnsupportedField("the hypotheses are certified by enumeration over F_p".into()));
    }
    if !is_dg_simple_algebra(a, budget)?.simple {
        return Err(DgError::Precondition("the algebra is not dg-simple".into()));
    }
    if !is_semisimple_category(a, budget)?.semisimple {
        return Err(DgError::Precondition("the dg-module category is not semisimple".into()));
    }
    matrix_decomposition_unchecked(m, budget)
}

fn unique_simple(a: &DGAlgebra, budget: &mut Budget) -> Result<DGModule> {
    let reg = regular_module(a);
    let (_, carrier) = minimal_cyclic_submodules(&reg, budget)?
        .into_iter()
        .next()
        .ok_or_else(|| DgError::Precondition("the regular module has no dg-simple submodule".into()))?;
    let (s, _) = submodule(&reg, &carrier)?;
    let lowest = *s.degrees().iter().min().unwrap_or(&0);
    Ok(shift_module(&s, lowest))
}

pub fn matrix_decomposition_unchecked(m: &DGModule, budget: &mut Budget) -> Result<MatrixDecomposition> {
    let a = m.algebra();
    let f = a.field();
    let s = unique_simple(a, budget)?;
    let (d, hd) = end_algebra_with_complex(&s)?;
    let h = hom_complex(&s, m)?;
    let mut span = Span::zero(f, m.dim());
    let mut inclusions = Vec::new();
    let mut shifts = Vec::new();
    let mut hom_degrees: Vec<i64> = h.degrees.clone();
    hom_degrees.sort_unstable();
    hom_degrees.dedup();
    for p in hom_degrees {
        let cycles = h.cycles_in(p);
        if cycles.is_empty() {
            continue;
        }
        budget.precheck(projective_count(f, cycles.len())?)?;
        for c in projective_reps(f, cycles.len())? {
            if span.is_full() {
                break;
            }
            budget.charge(1)?;
            let mut g = Matrix::zeros(f, m.dim(), s.dim());
            for (x, b) in c.iter().zip(&cycles) {
                g = g.add(&b.scale(x));
            }
            let mut trial = span.clone();
            let fresh = g.columns().iter().filter(|v| trial.insert(v)).count();
            if fresh == s.dim() {
                span = trial;
                inclusions.push(g);
                shifts.push(-p);
            }
        }
    }
    if !span.is_full() {
        return Err(DgError::Alarm("M is not a direct sum of shifts of the simple module".into()));
    }
    let assembled = Matrix::from_columns(f, m.dim(), &inclusions.iter().flat_map(|g| g.columns()).collect::<Vec<_>>());
    let inv = assembled
        .inverse()
        .ok_or_else(|| DgError::Alarm("assembled inclusions are not invertible".into()))?;
    let rows: Vec<usize> = (0..m.dim()).collect();
    let projections: Vec<Matrix> = (0..inclusions.len())
        .map(|i| inv.submatrix(&(i * s.dim()..(i + 1) * s.dim()).collect::<Vec<_>>(), &rows))
        .collect();
    let (end_m, hm) = end_algebra_with_complex(m)?;
    let matrices = shifted_matrix_algebra(&d, &shifts)?;
    let n = shifts.len();
    let mut failures = Vec::new();
    let mut cols = Vec::with_capacity(end_m.dim());
    for g in &hm.basis {
        let mut col = zero_vec(f, matrices.dim());
        for i in 0..n {
            for j in 0..n {
                let entry = projections[i].mul(g).mul(&inclusions[j]);
                match hd.coords(&entry) {
                    Some(c) => {
                        for (e, x) in c.into_iter().enumerate() {
                            col[(i * n + j) * d.dim() + e] = x;
                        }
                    }
                    None => failures.push(format!("entry ({i}, {j}) is not in End(S)")),
                }
            }
        }
        cols.push(col);
    }
    let psi = Matrix::from_columns(f, matrices.dim(), &cols);
    let report = validate_dga(&matrices);
    failures.extend(report.failures.iter().map(|x| format!("Mat_n(D) fails {}", x.axiom.name())));
    if !is_dg_isomorphism(&end_m, &matrices, &psi) {
        failures.push("Ψ is not a dg-algebra isomorphism".into());
    }
    Ok(MatrixDecomposition { simple: s, d, shifts, inclusions, projections, end_m, matrices, psi, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dgmod::direct_sum;
    use crate::linalg::FieldSpec;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn semisimplicity() {
        let mut b = Budget::default();
        let v = is_semisimple_category(&catalog::dual(f3()), &mut b).unwrap();
        assert!(v.semisimple);
        assert_eq!(v.regular_decomposition.unwrap().len(), 1);
        let v = is_semisimple_category(&catalog::m2(f3()), &mut b).unwrap();
        assert!(!v.semisimple);
        assert_eq!(v.cycles_semisimple, Some(false));
        let v = is_semisimple_category(&catalog::q0(f3()), &mut b).unwrap();
        assert!(!v.semisimple && v.witness.is_none());
        assert!(is_semisimple_category(&catalog::dual(FieldSpec::Rationals), &mut b).is_err());
    }

    #[test]
    fn decompositions_over_dual() {
        let mut b = Budget::default();
        let a = catalog::dual(f3());
        let reg = regular_module(&a);
        let d = matrix_decomposition(&reg, &mut b).unwrap();
        assert!(d.verified(), "{:?}", d.failures);
        assert_eq!(d.n(), 1);
        assert_eq!(d.d.dim(), 2);
        let m = direct_sum(&reg, &shift_module(&reg, 2)).unwrap();
        let d = matrix_decomposition(&m, &mut b).unwrap();
        assert!(d.verified(), "{:?}", d.failures);
        assert_eq!(d.n(), 2);
        assert_eq!(d.matrices.dim(), 4 * d.d.dim());
        let mut shifts = d.shifts.clone();
        shifts.sort_unstable();
        assert_eq!(shifts, vec![1, 3]);
    }
}
