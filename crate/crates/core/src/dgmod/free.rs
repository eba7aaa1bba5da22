//! Bases of cycles for dg-modules over dg-division algebras.

use crate::dga::constructions::coords_in;
use crate::enumerate::Budget;
use crate::error::{DgError, Result};
use crate::linalg::matrix::{is_zero_vec, vec_sub};
use crate::linalg::{GradedSubspace, Matrix, Span, Vector};

use super::module::{module_map_failures, regular_module, shift_module, submodule, DGModule};

/// Homogeneous cycles `m_k` with `M = ⊕ A m_k`.
#[derive(Clone, Debug)]
pub struct FreeBasis {
    pub generators: Vec<(i64, Vector)>,
    /// Columns `e_i m_k`, grouped by generator.
    pub assembled: Matrix,
    pub direct: bool,
    /// `φ_k(a) = (-1)^{p|a|} a m_k` from the shifted regular module `A[-p]`.
    pub factor_maps: Vec<Matrix>,
    pub factors_verified: bool,
}

fn a_span(m: &DGModule, x: &Vector) -> Vec<Vector> {
    m.action_matrices().iter().map(|a| a.mul_vec(x)).collect()
}

/// Certifies that the algebra is dg-division, then builds the basis.
pub fn free_basis(m: &DGModule, budget: &mut Budget) -> Result<FreeBasis> {
    let verdict = crate::structure::is_dg_division(m.algebra(), budget)?;
    if !verdict.division {
        return Err(DgError::Precondition("the algebra is not a dg-division algebra".into()));
    }
    free_basis_unchecked(m)
}

/// Greedy construction: adjoin a cycle outside the current sum `F` each step.
/// For `x ∉ F`: if `δx = 0` adjoin `x`; if `δx ∉ F` adjoin `δx`; otherwise
/// adjoin the cycle `x - y` for some `y ∈ F` with `δy = δx`.
pub fn free_basis_unchecked(m: &DGModule) -> Result<FreeBasis> {
    let a = m.algebra();
    let f = a.field();
    let mut gens: Vec<(i64, Vector)> = Vec::new();
    let mut span = Span::zero(f, m.dim());
    let mut graded_f = GradedSubspace::zero(m.space().clone());
    while !span.is_full() {
        let before = span.dim();
        let j = (0..m.dim()).find(|&j| !span.contains(&m.basis_vec(j))).expect("not full");
        let x = m.basis_vec(j);
        let p = m.degree(j);
        let dx = m.d(&x);
        let new = if is_zero_vec(&dx) {
            (p, x)
        } else if !span.contains(&dx) {
            (p + 1, dx)
        } else {
            let fp = graded_f.basis_in(p);
            let cols: Vec<Vector> = fp.iter().map(|v| m.d(v)).collect();
            let sys = Matrix::from_columns(f, m.dim(), &cols);
            let (c, _) = sys.solve(&dx).ok_or_else(|| {
                DgError::Precondition(format!(
                    "δ({}) lies in the span of the chosen generators but is not a boundary there; \
                     the module is not free on cycles",
                    m.names()[j]
                ))
            })?;
            let y = Matrix::from_columns(f, m.dim(), &fp).mul_vec(&c);
            (p, vec_sub(&x, &y))
        };
        for v in a_span(m, &new.1) {
            span.insert(&v);
            graded_f.insert(&v)?;
        }
        gens.push(new);
        if span.dim() == before {
            return Err(DgError::Alarm("free basis construction made no progress".into()));
        }
    }
    let cols: Vec<Vector> = gens.iter().flat_map(|(_, g)| a_span(m, g)).collect();
    let assembled = Matrix::from_columns(f, m.dim(), &cols);
    let direct = assembled.rank() == cols.len() && cols.len() == m.dim();
    let reg = regular_module(a);
    let mut factor_maps = Vec::new();
    let mut factors_verified = true;
    for (p, g) in &gens {
        let src = shift_module(&reg, -p);
        let cs: Vec<Vector> = (0..a.dim())
            .map(|i| {
                m.act(&a.basis_vec(i), g)
                    .into_iter()
                    .map(|x| x.signed(p * a.degree(i)))
                    .collect()
            })
            .collect();
        let phi = Matrix::from_columns(f, m.dim(), &cs);
        if !module_map_failures(&src, m, &phi).is_empty() || phi.rank() != a.dim() {
            factors_verified = false;
        }
        factor_maps.push(phi);
    }
    Ok(FreeBasis { generators: gens, assembled, direct, factor_maps, factors_verified })
}

/// Comparison of free ranks for a dg-submodule `N ⊆ M`.
#[derive(Clone, Debug)]
pub struct RankComparison {
    pub m_rank: usize,
    pub n_rank: usize,
    /// `coefficients[j][i] = d_{j,i}` with `y_j = Σ_i d_{j,i} x_i`.
    pub coefficients: Vec<Vec<Vector>>,
    pub coefficients_are_cycles: bool,
    pub equal: bool,
}

impl RankComparison {
    pub fn consistent(&self) -> bool {
        self.coefficients_are_cycles && self.n_rank <= self.m_rank && ((self.n_rank == self.m_rank) == self.equal)
    }
}

pub fn submodule_rank_compare(m: &DGModule, n: &GradedSubspace, budget: &mut Budget) -> Result<RankComparison> {
    let a = m.algebra();
    if !a.is_graded_commutative() {
        return Err(DgError::Precondition("the algebra is not graded-commutative".into()));
    }
    if n.ambient() != m.space() {
        return Err(DgError::NotContained);
    }
    let (nm, inc) = submodule(m, n)?;
    let fm = free_basis(m, budget)?;
    let fnb = free_basis_unchecked(&nm)?;
    let k = fm.generators.len();
    let mut coefficients = Vec::new();
    let mut cycles = true;
    for (_, y) in &fnb.generators {
        let y_in_m = inc.mul_vec(y);
        let c = coords_in(&fm.assembled, &y_in_m).ok_or(DgError::NotContained)?;
        let row: Vec<Vector> = (0..k).map(|i| c[i * a.dim()..(i + 1) * a.dim()].to_vec()).collect();
        cycles &= row.iter().all(|d| is_zero_vec(&a.d(d)));
        coefficients.push(row);
    }
    Ok(RankComparison {
        m_rank: k,
        n_rank: fnb.generators.len(),
        coefficients,
        coefficients_are_cycles: cycles,
        equal: n.is_full(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dgmod::module::{direct_sum, submodule_closure};
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn regular_module_has_basis_one() {
        let a = catalog::dual(Q);
        let fb = free_basis(&regular_module(&a), &mut Budget::default()).unwrap();
        assert_eq!(fb.generators.len(), 1);
        assert!(fb.direct && fb.factors_verified);
    }

    #[test]
    fn sum_with_shift_has_two_generators() {
        let a = catalog::dual(Q);
        let r = regular_module(&a);
        let m = direct_sum(&r, &shift_module(&r, 2)).unwrap();
        let fb = free_basis(&m, &mut Budget::default()).unwrap();
        let mut degs: Vec<i64> = fb.generators.iter().map(|(d, _)| *d).collect();
        degs.sort();
        assert_eq!(degs, vec![-2, 0]);
        assert!(fb.direct && fb.factors_verified);
    }

    #[test]
    fn dual_tensor_two_term_space() {
        let a = catalog::dual(Q);
        let m = catalog::dual_tensor_two_term(Q);
        let fb = free_basis(&m, &mut Budget::default()).unwrap();
        assert_eq!(fb.generators.len(), 2);
        assert_eq!(m.dim(), 2 * fb.generators.len());
        assert!(fb.direct && fb.factors_verified);
        for (_, g) in &fb.generators {
            assert!(is_zero_vec(&m.d(g)));
        }
        let _ = a;
    }

    #[test]
    fn zero_differential_division_algebra_refuses_non_free_module() {
        // Over K with d = 0, the complex K → K is not a sum of cycles.
        let m = catalog::two_term(Q);
        assert!(matches!(free_basis(&m, &mut Budget::default()), Err(DgError::Precondition(_))));
    }

    #[test]
    fn rank_comparison() {
        let a = catalog::dual(Q);
        let r = regular_module(&a);
        let m = direct_sum(&r, &r).unwrap();
        let full = GradedSubspace::full(m.space().clone());
        let c = submodule_rank_compare(&m, &full, &mut Budget::default()).unwrap();
        assert!(c.consistent() && c.equal && c.n_rank == 2);
        let first = submodule_closure(&m, &[m.basis_vec(0)]).unwrap();
        let c = submodule_rank_compare(&m, &first, &mut Budget::default()).unwrap();
        assert_eq!((c.n_rank, c.m_rank), (1, 2));
        assert!(c.consistent());
    }
}
