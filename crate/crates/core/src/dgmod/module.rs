//! Dg-modules given by action matrices, their validation and basic constructions.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::dga::constructions::coords_in;
use crate::dga::DGAlgebra;
use crate::error::{DgError, Result};
use crate::linalg::matrix::{axpy, is_zero_vec, unit_vec, vec_add, zero_vec};
use crate::linalg::{GradedMap, GradedSpace, GradedSubspace, Matrix, Scalar, Vector};

/// A left dg-module: `action[i]` is the matrix of `m ↦ e_i m`, `delta` the differential.
#[derive(Clone, PartialEq, Eq)]
pub struct DGModule {
    algebra: DGAlgebra,
    names: Vec<String>,
    space: GradedSpace,
    action: Vec<Matrix>,
    delta: Matrix,
}

impl fmt::Debug for DGModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DGModule")
            .field("algebra", &self.algebra)
            .field("basis", &self.names.iter().zip(self.space.basis_degrees()).collect::<Vec<_>>())
            .finish()
    }
}

impl DGModule {
    pub fn new(
        algebra: DGAlgebra,
        names: Vec<String>,
        degrees: Vec<i64>,
        action: Vec<Matrix>,
        delta: Matrix,
    ) -> Result<Self> {
        let n = degrees.len();
        if names.len() != n || names.iter().collect::<HashSet<_>>().len() != n {
            return Err(DgError::MalformedModule("basis names must be unique, one per vector".into()));
        }
        if action.len() != algebra.dim() {
            return Err(DgError::MalformedModule("one action matrix per algebra basis vector".into()));
        }
        if action.iter().chain(std::iter::once(&delta)).any(|m| m.rows() != n || m.cols() != n) {
            return Err(DgError::MalformedModule("action or differential has the wrong shape".into()));
        }
        if action.iter().chain(std::iter::once(&delta)).any(|m| m.field() != algebra.field()) {
            return Err(DgError::FieldMismatch("module and algebra over different fields".into()));
        }
        let space = GradedSpace::new(algebra.field(), degrees);
        Ok(DGModule { algebra, names, space, action, delta })
    }

    pub fn algebra(&self) -> &DGAlgebra {
        &self.algebra
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.space.degree_of(i)
    }

    pub fn degrees(&self) -> &[i64] {
        self.space.basis_degrees()
    }

    pub fn action_matrices(&self) -> &[Matrix] {
        &self.action
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn delta_map(&self) -> Result<GradedMap> {
        GradedMap::new(self.space.clone(), self.space.clone(), 1, self.delta.clone())
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.algebra.field(), self.dim(), i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Matrix of `m ↦ a m` for an algebra element `a`.
    pub fn action_of(&self, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.algebra.field(), self.dim(), self.dim());
        for (c, m) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn act(&self, a: &[Scalar], m: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.algebra.field(), self.dim());
        for (c, mat) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                axpy(&mut out, c, &mat.mul_vec(m));
            }
        }
        out
    }

    pub fn d(&self, m: &[Scalar]) -> Vector {
        self.delta.mul_vec(m)
    }

    pub fn with_delta(mut self, delta: Matrix) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() || names.iter().collect::<HashSet<_>>().len() != names.len() {
            return Err(DgError::MalformedModule("invalid renaming".into()));
        }
        self.names = names;
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleAxiom {
    ActionDegree,
    Unit,
    Associativity,
    DeltaShift,
    DeltaSquare,
    Leibniz,
}

impl ModuleAxiom {
    pub fn name(self) -> &'static str {
        match self {
            ModuleAxiom::ActionDegree => "action_degree",
            ModuleAxiom::Unit => "unit",
            ModuleAxiom::Associativity => "associativity",
            ModuleAxiom::DeltaShift => "delta_shift",
            ModuleAxiom::DeltaSquare => "delta_square",
            ModuleAxiom::Leibniz => "leibniz",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleFailure {
    pub axiom: ModuleAxiom,
    /// Algebra and/or module basis indices witnessing the failure.
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModuleValidation {
    pub failures: Vec<ModuleFailure>,
}

impl ModuleValidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_axioms(&self) -> Vec<ModuleAxiom> {
        let mut v: Vec<ModuleAxiom> = self.failures.iter().map(|f| f.axiom).collect();
        v.sort();
        v.dedup();
        v
    }
}

pub fn validate_module(m: &DGModule) -> ModuleValidation {
    let a = &m.algebra;
    let mut out = ModuleValidation::default();
    let mut fail = |axiom, indices, detail: String| out.failures.push(ModuleFailure { axiom, indices, detail });
    for i in 0..a.dim() {
        for j in 0..m.dim() {
            let v = m.action[i].column(j);
            if !m.space.is_homogeneous_of(&v, a.degree(i) + m.degree(j)) {
                fail(ModuleAxiom::ActionDegree, vec![i, j], format!("{} * {} has the wrong degree", a.names()[i], m.names[j]));
            }
        }
    }
    let unit = m.action_of(a.unit());
    if unit != Matrix::identity(a.field(), m.dim()) {
        fail(ModuleAxiom::Unit, vec![], "the unit does not act as the identity".into());
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.action_of(a.product(i, j));
            let rhs = m.action[i].mul(&m.action[j]);
            if lhs != rhs {
                fail(
                    ModuleAxiom::Associativity,
                    vec![i, j],
                    format!("({} {}) m != {} ({} m)", a.names()[i], a.names()[j], a.names()[i], a.names()[j]),
                );
            }
        }
    }
    for j in 0..m.dim() {
        if !m.space.is_homogeneous_of(&m.delta.column(j), m.degree(j) + 1) {
            fail(ModuleAxiom::DeltaShift, vec![j], format!("δ({}) is not in degree {}", m.names[j], m.degree(j) + 1));
        }
    }
    let dd = m.delta.mul(&m.delta);
    for j in 0..m.dim() {
        if !is_zero_vec(&dd.column(j)) {
            fail(ModuleAxiom::DeltaSquare, vec![j], format!("δ(δ({})) != 0", m.names[j]));
        }
    }
    for i in 0..a.dim() {
        let da = m.action_of(&a.diff_of(i));
        for j in 0..m.dim() {
            let mj = m.basis_vec(j);
            let lhs = m.d(&m.action[i].mul_vec(&mj));
            let rhs = vec_add(
                &da.mul_vec(&mj),
                &m.action[i]
                    .mul_vec(&m.d(&mj))
                    .into_iter()
                    .map(|x| x.signed(a.degree(i)))
                    .collect::<Vector>(),
            );
            if lhs != rhs {
                fail(
                    ModuleAxiom::Leibniz,
                    vec![i, j],
                    format!("δ({} {}) violates the Leibniz rule", a.names()[i], m.names[j]),
                );
            }
        }
    }
    out
}

pub fn regular_module(a: &DGAlgebra) -> DGModule {
    let action = (0..a.dim()).map(|i| a.left_mul_matrix(&a.basis_vec(i))).collect();
    DGModule::new(a.clone(), a.names().to_vec(), a.degrees().to_vec(), action, a.diff_matrix().clone())
        .expect("same shape as the algebra")
}

/// `(M[k])_n = M_{n+k}`, `δ' = (-1)^k δ`, `a ·' m = (-1)^{k|a|} a m`.
pub fn shift_module(m: &DGModule, k: i64) -> DGModule {
    let f = m.algebra.field();
    let action = m
        .action
        .iter()
        .enumerate()
        .map(|(i, mat)| mat.scale(&f.one().signed(k * m.algebra.degree(i))))
        .collect();
    let degrees = m.degrees().iter().map(|d| d - k).collect();
    DGModule::new(m.algebra.clone(), m.names.clone(), degrees, action, m.delta.scale(&f.one().signed(k)))
        .expect("same shape")
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    let n = a.rows() + b.rows();
    let mut out = Matrix::zeros(f, n, n);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            out.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    out
}

pub fn direct_sum(m: &DGModule, n: &DGModule) -> Result<DGModule> {
    if m.algebra != n.algebra {
        return Err(DgError::AlgebraMismatch("direct sum of modules over different algebras".into()));
    }
    let mut names: Vec<String> = m.names.iter().map(|x| format!("{x}_1")).collect();
    names.extend(n.names.iter().map(|x| format!("{x}_2")));
    let mut degrees = m.degrees().to_vec();
    degrees.extend_from_slice(n.degrees());
    let action = m.action.iter().zip(&n.action).map(|(x, y)| block_diag(x, y)).collect();
    DGModule::new(m.algebra.clone(), names, degrees, action, block_diag(&m.delta, &n.delta))
}

/// Smallest dg-submodule containing the homogeneous generators.
pub fn submodule_closure(m: &DGModule, generators: &[Vector]) -> Result<GradedSubspace> {
    let mut carrier = GradedSubspace::zero(m.space.clone());
    let mut queue = VecDeque::new();
    for g in generators {
        if g.len() != m.dim() {
            return Err(DgError::MalformedModule("generator has the wrong length".into()));
        }
        if m.space.degree_of_vector(g)?.is_none() && !is_zero_vec(g) {
            return Err(DgError::NotHomogeneous);
        }
        if carrier.insert(g)? {
            queue.push_back(g.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        if carrier.is_full() {
            break;
        }
        let mut images: Vec<Vector> = m.action.iter().map(|a| a.mul_vec(&v)).collect();
        images.push(m.d(&v));
        for w in images {
            if carrier.insert(&w)? {
                queue.push_back(w);
            }
        }
    }
    Ok(carrier)
}

pub fn is_submodule(m: &DGModule, carrier: &GradedSubspace) -> bool {
    carrier.basis().iter().all(|v| {
        carrier.contains(&m.d(v)) && m.action.iter().all(|a| carrier.contains(&a.mul_vec(v)))
    })
}

/// A submodule as a module, with its inclusion (columns: basis in `M`).
pub fn submodule(m: &DGModule, carrier: &GradedSubspace) -> Result<(DGModule, Matrix)> {
    if !is_submodule(m, carrier) {
        return Err(DgError::Precondition("not a dg-submodule".into()));
    }
    let f = m.algebra.field();
    let basis = carrier.graded_basis();
    let vecs: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
    let inc = Matrix::from_columns(f, m.dim(), &vecs);
    let restrict = |op: &Matrix| {
        let cols: Vec<Vector> = vecs
            .iter()
            .map(|v| coords_in(&inc, &op.mul_vec(v)).expect("closed"))
            .collect();
        Matrix::from_columns(f, vecs.len(), &cols)
    };
    let action = m.action.iter().map(restrict).collect();
    let delta = restrict(&m.delta);
    let names = crate::dga::constructions::derived_names(&m.names, &vecs, "s");
    let degrees = basis.iter().map(|(d, _)| *d).collect();
    Ok((DGModule::new(m.algebra.clone(), names, degrees, action, delta)?, inc))
}

/// `M / U` with the projection matrix (M coordinates to quotient coordinates).
pub fn quotient_module(m: &DGModule, carrier: &GradedSubspace) -> Result<(DGModule, Matrix)> {
    if !is_submodule(m, carrier) {
        return Err(DgError::Precondition("not a dg-submodule".into()));
    }
    let f = m.algebra.field();
    let n = m.dim();
    let units: Vec<Vector> = (0..n).map(|i| unit_vec(f, n, i)).collect();
    let lifts = carrier.span().complement_from(&units);
    let q = lifts.len();
    let mut cols = lifts.clone();
    cols.extend(carrier.basis().iter().cloned());
    let change = Matrix::from_columns(f, n, &cols).inverse().expect("complement");
    let projection = change.submatrix(&(0..q).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
    let push = |op: &Matrix| {
        let cs: Vec<Vector> = lifts.iter().map(|v| projection.mul_vec(&op.mul_vec(v))).collect();
        Matrix::from_columns(f, q, &cs)
    };
    let action = m.action.iter().map(push).collect();
    let delta = push(&m.delta);
    let idx: Vec<usize> = lifts.iter().map(|v| v.iter().position(|x| !x.is_zero()).expect("unit")).collect();
    let names = idx.iter().map(|&i| m.names[i].clone()).collect();
    let degrees = idx.iter().map(|&i| m.degree(i)).collect();
    Ok((DGModule::new(m.algebra.clone(), names, degrees, action, delta)?, projection))
}

/// Failures of `f` (target × source) to be a degree-0 dg-module map.
pub fn module_map_failures(src: &DGModule, tgt: &DGModule, f: &Matrix) -> Vec<String> {
    let mut out = Vec::new();
    if src.algebra != tgt.algebra {
        out.push("modules over different algebras".into());
        return out;
    }
    if f.rows() != tgt.dim() || f.cols() != src.dim() {
        out.push("shape mismatch".into());
        return out;
    }
    for j in 0..src.dim() {
        if !tgt.space.is_homogeneous_of(&f.column(j), src.degree(j)) {
            out.push(format!("image of {} has the wrong degree", src.names[j]));
        }
    }
    for (i, (a, b)) in src.action.iter().zip(&tgt.action).enumerate() {
        if f.mul(a) != b.mul(f) {
            out.push(format!("does not commute with {}", src.algebra.names()[i]));
        }
    }
    if f.mul(&src.delta) != tgt.delta.mul(f) {
        out.push("does not commute with δ".into());
    }
    out
}

/// The same graded space and differential viewed over the base field.
pub fn restrict_to_base(m: &DGModule) -> DGModule {
    let k = crate::catalog::q0(m.algebra.field());
    DGModule::new(
        k,
        m.names.clone(),
        m.degrees().to_vec(),
        vec![Matrix::identity(m.algebra.field(), m.dim())],
        m.delta.clone(),
    )
    .expect("same shape")
}

/// `A ⊗ V` for a complex `V` over the base field: `a(b⊗v) = ab⊗v`,
/// `δ(b⊗v) = d(b)⊗v + (-1)^{|b|} b⊗δ(v)`.
pub fn extend_scalars(a: &DGAlgebra, v: &DGModule) -> Result<DGModule> {
    let f = a.field();
    if v.algebra.field() != f {
        return Err(DgError::FieldMismatch("complex and algebra over different fields".into()));
    }
    let (na, nv) = (a.dim(), v.dim());
    let n = na * nv;
    let idx = |i: usize, j: usize| i * nv + j;
    let mut names = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for i in 0..na {
        for j in 0..nv {
            names.push(format!("{}.{}", a.names()[i], v.names[j]));
            degrees.push(a.degree(i) + v.degree(j));
        }
    }
    let action = (0..na)
        .map(|k| {
            let mut m = Matrix::zeros(f, n, n);
            for i in 0..na {
                let p = a.product(k, i);
                for (l, c) in p.iter().enumerate() {
                    for j in 0..nv {
                        m.set(idx(l, j), idx(i, j), c.clone());
                    }
                }
            }
            m
        })
        .collect();
    let mut delta = Matrix::zeros(f, n, n);
    for i in 0..na {
        let di = a.diff_of(i);
        for j in 0..nv {
            let col = idx(i, j);
            for (l, c) in di.iter().enumerate() {
                if !c.is_zero() {
                    delta.set(idx(l, j), col, c.clone());
                }
            }
            for (l, c) in v.delta.column(j).iter().enumerate() {
                if !c.is_zero() {
                    let cur = delta.get(idx(i, l), col).clone();
                    delta.set(idx(i, l), col, cur + c.clone().signed(a.degree(i)));
                }
            }
        }
    }
    DGModule::new(a.clone(), names, degrees, action, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn regular_modules_validate() {
        for a in [catalog::q0(Q), catalog::dual(Q), catalog::m2(Q), catalog::dd(Q)] {
            let m = regular_module(&a);
            assert_eq!(m.dim(), a.dim());
            assert!(validate_module(&m).passed());
        }
    }

    #[test]
    fn broken_delta_fails_leibniz_at_eps_one() {
        let a = catalog::dual(Q);
        let m = regular_module(&a);
        let m = m.clone().with_delta(Matrix::zeros(Q, 2, 2));
        let v = validate_module(&m);
        let eps = a.index_of("eps").unwrap();
        let one = a.index_of("one").unwrap();
        assert!(v
            .failures
            .iter()
            .any(|f| f.axiom == ModuleAxiom::Leibniz && f.indices == vec![eps, one]));
    }

    #[test]
    fn shifts() {
        let a = catalog::dual(Q);
        let m = regular_module(&a);
        assert_eq!(shift_module(&m, 0), m);
        let s = shift_module(&m, 1);
        assert_eq!(s.degrees(), &[-1, -2]);
        assert!(validate_module(&s).passed());
        assert_eq!(shift_module(&s, -1), m);
        let k = regular_module(&catalog::q0(Q));
        assert_eq!(shift_module(&k, 3).degrees(), &[-3]);
    }

    #[test]
    fn closures() {
        let dual = catalog::dual(Q);
        let m = regular_module(&dual);
        assert!(submodule_closure(&m, &[]).unwrap().is_zero());
        let eps = m.basis_vec(1);
        assert!(submodule_closure(&m, &[eps]).unwrap().is_full());
        let dd = catalog::dd(Q);
        let r = regular_module(&dd);
        let w = vec_add(
            &r.basis_vec(dd.index_of("one.eps").unwrap()),
            &r.basis_vec(dd.index_of("eps.one").unwrap()).iter().map(|x| -x).collect::<Vector>(),
        );
        let c = submodule_closure(&r, &[w.clone()]).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&w));
        assert!(c.contains(&r.basis_vec(dd.index_of("eps.eps").unwrap())));
    }

    #[test]
    fn sub_and_quotient_modules_validate() {
        let dd = catalog::dd(Q);
        let r = regular_module(&dd);
        let ee = r.basis_vec(dd.index_of("eps.eps").unwrap());
        let c = submodule_closure(&r, &[ee]).unwrap();
        let (s, inc) = submodule(&r, &c).unwrap();
        assert!(validate_module(&s).passed());
        assert!(module_map_failures(&s, &r, &inc).is_empty());
        let (q, proj) = quotient_module(&r, &c).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(validate_module(&q).passed());
        assert!(module_map_failures(&r, &q, &proj).is_empty());
    }
}
