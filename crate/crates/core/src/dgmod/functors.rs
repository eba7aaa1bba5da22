//! The cycles functor `Z` and induction `A ⊗_{ker d} -` for acyclic `A`.

use crate::dga::constructions::coords_in;
use crate::dga::{cycles_algebra, DGAlgebra, Subalgebra};
use crate::error::{DgError, Result};
use crate::linalg::matrix::vec_add;
use crate::linalg::{kernel_and_image, Matrix, Vector};

use super::module::{module_map_failures, DGModule};

/// `ker δ` as a module over the cycles algebra.
#[derive(Clone, Debug)]
pub struct CyclesModule {
    pub module: DGModule,
    pub cycles: Subalgebra,
    /// Columns: basis of `ker δ` in `M`.
    pub inclusion: Matrix,
}

pub fn z_functor(m: &DGModule) -> Result<CyclesModule> {
    let a = m.algebra();
    let f = a.field();
    let cycles = cycles_algebra(a)?;
    let (ker, _) = kernel_and_image(&m.delta_map()?);
    let basis = ker.graded_basis();
    let vecs: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
    let inclusion = Matrix::from_columns(f, m.dim(), &vecs);
    let action = (0..cycles.algebra.dim())
        .map(|k| {
            let act = m.action_of(&cycles.embedding.column(k));
            let cols: Vec<Vector> = vecs
                .iter()
                .map(|v| {
                    coords_in(&inclusion, &act.mul_vec(v))
                        .ok_or_else(|| DgError::Alarm("a cycle times a cycle is not a cycle".into()))
                })
                .collect::<Result<_>>()?;
            Ok(Matrix::from_columns(f, vecs.len(), &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let names = crate::dga::constructions::derived_names(m.names(), &vecs, "k");
    let degrees = basis.iter().map(|(d, _)| *d).collect();
    let module = DGModule::new(
        cycles.algebra.clone(),
        names,
        degrees,
        action,
        Matrix::zeros(f, vecs.len(), vecs.len()),
    )?;
    Ok(CyclesModule { module, cycles, inclusion })
}

/// `A ⊗_C N` realised on `N ⊕ y⊗N` through `A = C ⊕ y C`, `C = ker d`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub module: DGModule,
    pub cycles: Subalgebra,
    /// Columns: `1 ⊗ n_j` in the induced module.
    pub unit_map: Matrix,
}

pub fn induce_functor(a: &DGAlgebra, y: &Vector, n: &DGModule) -> Result<Induced> {
    let f = a.field();
    if &a.d(y) != a.unit() {
        return Err(DgError::Precondition("d(y) != 1: the algebra is not acyclic with this witness".into()));
    }
    let cycles = cycles_algebra(a)?;
    if n.algebra() != &cycles.algebra {
        return Err(DgError::AlgebraMismatch("N must be a module over the cycles algebra".into()));
    }
    let c = &cycles.algebra;
    let cdim = c.dim();
    let mut cols: Vec<Vector> = cycles.embedding.columns();
    cols.extend(cycles.embedding.columns().iter().map(|cv| a.mul(y, cv)));
    let decomp = Matrix::from_columns(f, a.dim(), &cols)
        .inverse()
        .ok_or_else(|| DgError::Alarm("A is not ker(d) ⊕ y ker(d)".into()))?;
    let nd = n.dim();
    let total = 2 * nd;
    // Coordinates of a ∈ A as (c, c') with a = c + y c'.
    let split = |v: &Vector| {
        let x = decomp.mul_vec(v);
        (x[..cdim].to_vec(), x[cdim..].to_vec())
    };
    let place = |top: Vector, bottom: Vector| {
        let mut v = top;
        v.extend(bottom);
        v
    };
    let mut action = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let ei = a.basis_vec(i);
        let (c1, c1y) = split(&ei);
        let (c2, c2y) = split(&a.mul(&ei, y));
        let (m1, m1y, m2, m2y) = (n.action_of(&c1), n.action_of(&c1y), n.action_of(&c2), n.action_of(&c2y));
        let mut mat = Matrix::zeros(f, total, total);
        for j in 0..nd {
            let nj = n.basis_vec(j);
            let on_one = place(m1.mul_vec(&nj), m1y.mul_vec(&nj));
            let on_y = place(m2.mul_vec(&nj), m2y.mul_vec(&nj));
            for r in 0..total {
                mat.set(r, j, on_one[r].clone());
                mat.set(r, nd + j, on_y[r].clone());
            }
        }
        action.push(mat);
    }
    let y_deg = a
        .degree_of_vector(y)?
        .ok_or(DgError::NotHomogeneous)?;
    let mut delta = Matrix::zeros(f, total, total);
    for j in 0..nd {
        let dn = n.d(&n.basis_vec(j));
        let zero = vec![f.zero(); nd];
        let on_one = place(dn.clone(), zero.clone());
        let minus: Vector = dn.iter().map(|x| x.clone().signed(y_deg)).collect();
        let on_y = vec_add(&place(n.basis_vec(j), zero), &place(vec![f.zero(); nd], minus));
        for r in 0..total {
            delta.set(r, j, on_one[r].clone());
            delta.set(r, nd + j, on_y[r].clone());
        }
    }
    let mut names: Vec<String> = n.names().to_vec();
    names.extend(n.names().iter().map(|x| format!("y.{x}")));
    let mut degrees = n.degrees().to_vec();
    degrees.extend(n.degrees().iter().map(|d| d + y_deg));
    let module = DGModule::new(a.clone(), names, degrees, action, delta)?;
    let unit_cols: Vec<Vector> = (0..nd).map(|j| place(n.basis_vec(j), vec![f.zero(); nd])).collect();
    Ok(Induced { module, cycles, unit_map: Matrix::from_columns(f, total, &unit_cols) })
}

/// Mutually inverse graded maps `N ⇄ Z(A ⊗_C N)`.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub forward: Matrix,
    pub backward: Matrix,
    pub failures: Vec<String>,
}

impl RoundTrip {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn induction_round_trip(a: &DGAlgebra, y: &Vector, n: &DGModule) -> Result<RoundTrip> {
    let ind = induce_functor(a, y, n)?;
    let z = z_functor(&ind.module)?;
    let f = a.field();
    let fwd_cols: Vec<Vector> = ind
        .unit_map
        .columns()
        .iter()
        .map(|v| coords_in(&z.inclusion, v).ok_or_else(|| DgError::Alarm("1 ⊗ n is not a cycle".into())))
        .collect::<Result<_>>()?;
    let forward = Matrix::from_columns(f, z.module.dim(), &fwd_cols);
    let mut failures = module_map_failures(n, &z.module, &forward);
    let backward = match forward.inverse() {
        Some(b) => b,
        None => {
            failures.push("1 ⊗ - is not bijective onto the cycles".into());
            Matrix::zeros(f, n.dim(), z.module.dim())
        }
    };
    failures.extend(module_map_failures(&z.module, n, &backward));
    if forward.rows() == forward.cols() && backward.mul(&forward) != Matrix::identity(f, n.dim()) {
        failures.push("maps are not mutually inverse".into());
    }
    Ok(RoundTrip { forward, backward, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dgmod::module::{regular_module, shift_module, validate_module};
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn z_of_small_modules() {
        let z = z_functor(&regular_module(&catalog::q0(Q))).unwrap();
        assert_eq!(z.module.dim(), 1);
        let z = z_functor(&regular_module(&catalog::dual(Q))).unwrap();
        assert_eq!(z.module.degrees(), &[0]);
        let z = z_functor(&catalog::two_term(Q)).unwrap();
        assert_eq!(z.module.degrees(), &[1]);
    }

    #[test]
    fn induce_from_the_field_gives_regular_dual() {
        let a = catalog::dual(Q);
        let y = a.basis_vec(a.index_of("eps").unwrap());
        let c = cycles_algebra(&a).unwrap().algebra;
        let n = regular_module(&c);
        let ind = induce_functor(&a, &y, &n).unwrap();
        assert!(validate_module(&ind.module).passed());
        let reg = regular_module(&a);
        assert_eq!(ind.module.degrees(), reg.degrees());
        assert!(module_map_failures(&ind.module, &reg, &Matrix::identity(Q, 2)).is_empty());
        assert!(induction_round_trip(&a, &y, &n).unwrap().verified());
        let n3 = shift_module(&n, 3);
        let ind3 = induce_functor(&a, &y, &n3).unwrap();
        let sign = Matrix::from_entries(Q, 2, 2, vec![Q.one(), Q.zero(), Q.zero(), Q.from_i64(-1)]);
        assert!(module_map_failures(&ind3.module, &shift_module(&reg, 3), &sign).is_empty());
    }

    #[test]
    fn induce_cycles_of_m2() {
        let a = catalog::m2(Q);
        let y = a.basis_vec(a.index_of("E01").unwrap());
        let c = cycles_algebra(&a).unwrap().algebra;
        let n = regular_module(&c);
        let ind = induce_functor(&a, &y, &n).unwrap();
        assert_eq!(ind.module.dim(), 4);
        assert!(validate_module(&ind.module).passed());
        assert!(induction_round_trip(&a, &y, &n).unwrap().verified());
    }
}
