//! Finite-support Z-graded vector spaces, degree-shifting maps and graded
//! subspaces. Coordinates are global: a graded space is a basis with a
//! degree attached to each vector, and every graded object is stored in
//! those coordinates with homogeneity checked on construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::matrix::{is_zero_vec, zero_vec, Matrix, Vector};
use super::scalar::{FieldSpec, Scalar};
use super::span::Span;
use crate::error::{DgError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GradedSpace {
    field: FieldSpec,
    degrees: Vec<i64>,
}

impl GradedSpace {
    pub fn new(field: FieldSpec, degrees: Vec<i64>) -> Self {
        GradedSpace { field, degrees }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_of(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn basis_degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    pub fn dim_in(&self, degree: i64) -> usize {
        self.degrees.iter().filter(|&&d| d == degree).count()
    }

    pub fn support(&self) -> BTreeSet<i64> {
        self.degrees.iter().copied().collect()
    }

    pub fn indices_in(&self, degree: i64) -> Vec<usize> {
        (0..self.degrees.len())
            .filter(|&i| self.degrees[i] == degree)
            .collect()
    }

    /// `Ok(None)` for the zero vector, `Ok(Some(n))` if homogeneous of degree n.
    pub fn degree_of_vector(&self, v: &[Scalar]) -> Result<Option<i64>> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return Err(DgError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous_of(&self, v: &[Scalar], degree: i64) -> bool {
        v.iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() || self.degrees[i] == degree)
    }

    /// Component of `v` in the given degree, as a global vector.
    pub fn component(&self, v: &[Scalar], degree: i64) -> Vector {
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                if self.degrees[i] == degree {
                    x.clone()
                } else {
                    self.field.zero()
                }
            })
            .collect()
    }

    /// Global vector from coordinates on the degree-`n` basis.
    pub fn embed_component(&self, degree: i64, local: &[Scalar]) -> Vector {
        let idx = self.indices_in(degree);
        assert_eq!(idx.len(), local.len(), "component length mismatch");
        let mut v = zero_vec(self.field, self.dim());
        for (&i, x) in idx.iter().zip(local) {
            v[i] = x.clone();
        }
        v
    }

    pub fn restrict_component(&self, degree: i64, v: &[Scalar]) -> Vector {
        self.indices_in(degree).iter().map(|&i| v[i].clone()).collect()
    }

    /// The space with every degree moved by `-k`, so `(V[k])_n = V_{n+k}`.
    pub fn shifted(&self, k: i64) -> GradedSpace {
        GradedSpace::new(self.field, self.degrees.iter().map(|d| d - k).collect())
    }

    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        let mut d = self.degrees.clone();
        d.extend_from_slice(&other.degrees);
        GradedSpace::new(self.field, d)
    }
}

/// A homogeneous linear map of fixed degree `shift` (degree n goes to n+shift).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    shift: i64,
    matrix: Matrix,
}

impl GradedMap {
    pub fn new(source: GradedSpace, target: GradedSpace, shift: i64, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(DgError::MalformedMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                if !matrix.get(r, c).is_zero() && target.degree_of(r) != source.degree_of(c) + shift {
                    return Err(DgError::MalformedMap(format!(
                        "entry ({r},{c}) maps degree {} to degree {}, shift is {shift}",
                        source.degree_of(c),
                        target.degree_of(r)
                    )));
                }
            }
        }
        Ok(GradedMap {
            source,
            target,
            shift,
            matrix,
        })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, shift: i64) -> Self {
        let m = Matrix::zeros(source.field(), target.dim(), source.dim());
        GradedMap {
            source,
            target,
            shift,
            matrix: m,
        }
    }

    pub fn identity(space: GradedSpace) -> Self {
        let m = Matrix::identity(space.field(), space.dim());
        GradedMap {
            source: space.clone(),
            target: space,
            shift: 0,
            matrix: m,
        }
    }

    /// Assembles a map from per-degree blocks `dim(target, n+shift) x dim(source, n)`.
    pub fn from_blocks(
        source: GradedSpace,
        target: GradedSpace,
        shift: i64,
        blocks: &BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let mut m = Matrix::zeros(source.field(), target.dim(), source.dim());
        for (&n, block) in blocks {
            let cols = source.indices_in(n);
            let rows = target.indices_in(n + shift);
            if block.rows() != rows.len() || block.cols() != cols.len() {
                return Err(DgError::MalformedMap(format!(
                    "block at degree {n} has shape {}x{}, expected {}x{}",
                    block.rows(),
                    block.cols(),
                    rows.len(),
                    cols.len()
                )));
            }
            for (i, &r) in rows.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    m.set(r, c, block.get(i, j).clone());
                }
            }
        }
        Self::new(source, target, shift, m)
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn block(&self, degree: i64) -> Matrix {
        let cols = self.source.indices_in(degree);
        let rows = self.target.indices_in(degree + self.shift);
        self.matrix.submatrix(&rows, &cols)
    }

    pub fn blocks(&self) -> BTreeMap<i64, Matrix> {
        self.source
            .support()
            .into_iter()
            .map(|n| (n, self.block(n)))
            .collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap> {
        if inner.target != self.source {
            return Err(DgError::MalformedMap("composition of incompatible maps".into()));
        }
        GradedMap::new(
            inner.source.clone(),
            self.target.clone(),
            self.shift + inner.shift,
            self.matrix.mul(&inner.matrix),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// A graded subspace: a span of homogeneous vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    ambient: GradedSpace,
    span: Span,
}

impl GradedSubspace {
    pub fn zero(ambient: GradedSpace) -> Self {
        let span = Span::zero(ambient.field(), ambient.dim());
        GradedSubspace { ambient, span }
    }

    pub fn full(ambient: GradedSpace) -> Self {
        let span = Span::full(ambient.field(), ambient.dim());
        GradedSubspace { ambient, span }
    }

    pub fn from_homogeneous<'a>(
        ambient: GradedSpace,
        vectors: impl IntoIterator<Item = &'a Vector>,
    ) -> Result<Self> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> &GradedSpace {
        &self.ambient
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    pub fn is_full(&self) -> bool {
        self.span.is_full()
    }

    /// Inserts a homogeneous vector; returns whether the subspace grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool> {
        self.ambient.degree_of_vector(v)?;
        Ok(self.span.insert(v))
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.span.contains(v)
    }

    pub fn basis(&self) -> &[Vector] {
        self.span.basis()
    }

    /// Basis vectors paired with their degree, ordered by degree then echelon order.
    pub fn graded_basis(&self) -> Vec<(i64, Vector)> {
        let mut out: Vec<(i64, Vector)> = self
            .span
            .basis()
            .iter()
            .map(|v| {
                let d = self
                    .ambient
                    .degree_of_vector(v)
                    .expect("homogeneous by construction")
                    .expect("basis vectors are nonzero");
                (d, v.clone())
            })
            .collect();
        out.sort_by_key(|(d, _)| *d);
        out
    }

    pub fn basis_in(&self, degree: i64) -> Vec<Vector> {
        self.graded_basis()
            .into_iter()
            .filter(|(d, _)| *d == degree)
            .map(|(_, v)| v)
            .collect()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (d, _) in self.graded_basis() {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    pub fn dim_in(&self, degree: i64) -> usize {
        self.basis_in(degree).len()
    }

    /// The subspace as a graded space in its own (degree-sorted) basis.
    pub fn as_space(&self) -> GradedSpace {
        GradedSpace::new(
            self.ambient.field(),
            self.graded_basis().into_iter().map(|(d, _)| d).collect(),
        )
    }

    /// Coordinates of `v` relative to `graded_basis()`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let basis = self.graded_basis();
        if !self.contains(v) {
            return None;
        }
        if basis.is_empty() {
            return Some(Vec::new());
        }
        let cols: Vec<Vector> = basis.into_iter().map(|(_, b)| b).collect();
        let m = Matrix::from_columns(self.ambient.field(), self.ambient.dim(), &cols);
        m.solve(v).map(|(x, _)| x)
    }

    /// Inclusion of `as_space()` into the ambient space.
    pub fn inclusion(&self) -> GradedMap {
        let cols: Vec<Vector> = self.graded_basis().into_iter().map(|(_, b)| b).collect();
        let m = Matrix::from_columns(self.ambient.field(), self.ambient.dim(), &cols);
        GradedMap::new(self.as_space(), self.ambient.clone(), 0, m).expect("homogeneous basis")
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subspace(&self, other: &GradedSubspace) -> bool {
        self.span.contains_span(&other.span)
    }

    pub fn equals(&self, other: &GradedSubspace) -> bool {
        self.ambient == other.ambient && self.span == other.span
    }
}

/// Kernel (in the source) and image (in the target), degree by degree.
pub fn kernel_and_image(f: &GradedMap) -> (GradedSubspace, GradedSubspace) {
    let mut ker = GradedSubspace::zero(f.source.clone());
    let mut im = GradedSubspace::zero(f.target.clone());
    for n in f.source.support() {
        let block = f.block(n);
        for k in block.nullspace() {
            ker.insert(&f.source.embed_component(n, &k))
                .expect("homogeneous");
        }
        if block.rows() > 0 {
            for col in block.columns() {
                if !is_zero_vec(&col) {
                    im.insert(&f.target.embed_component(n + f.shift, &col))
                        .expect("homogeneous");
                }
            }
        }
    }
    (ker, im)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Intersect,
}

pub fn subspace_combine(op: CombineOp, u: &GradedSubspace, v: &GradedSubspace) -> Result<GradedSubspace> {
    if u.ambient != v.ambient {
        return Err(DgError::AmbientMismatch);
    }
    let span = match op {
        CombineOp::Sum => u.span.sum(&v.span),
        // Intersection of graded subspaces is graded; its echelon basis
        // consists of homogeneous vectors because both spans do.
        CombineOp::Intersect => {
            let mut out = Span::zero(u.ambient.field(), u.ambient.dim());
            for n in u.ambient.support() {
                let a = Span::from_vectors(u.ambient.field(), u.ambient.dim(), &u.basis_in(n));
                let b = Span::from_vectors(u.ambient.field(), u.ambient.dim(), &v.basis_in(n));
                for w in a.intersect(&b).basis() {
                    out.insert(w);
                }
            }
            out
        }
    };
    Ok(GradedSubspace {
        ambient: u.ambient.clone(),
        span,
    })
}

/// `U / V` with its projection from `U` (in `U`'s graded basis coordinates).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub space: GradedSpace,
    pub projection: GradedMap,
    /// Ambient-coordinate lifts of the quotient basis.
    pub lifts: Vec<Vector>,
    sub: GradedSubspace,
    killed: GradedSubspace,
}

impl Quotient {
    /// Quotient coordinates of an ambient vector lying in `U`.
    pub fn project(&self, v: &[Scalar]) -> Option<Vector> {
        let coords = self.sub.coordinates(v)?;
        Some(self.projection.apply(&coords))
    }

    pub fn numerator(&self) -> &GradedSubspace {
        &self.sub
    }

    pub fn denominator(&self) -> &GradedSubspace {
        &self.killed
    }
}

pub fn quotient(u: &GradedSubspace, v: &GradedSubspace) -> Result<Quotient> {
    if u.ambient != v.ambient {
        return Err(DgError::AmbientMismatch);
    }
    if !u.contains_subspace(v) {
        return Err(DgError::NotContained);
    }
    let field = u.ambient.field();
    let mut lifts = Vec::new();
    let mut degrees = Vec::new();
    for n in u.ambient.support() {
        let base = Span::from_vectors(field, u.ambient.dim(), &v.basis_in(n));
        for c in base.complement_from(&u.basis_in(n)) {
            lifts.push(c);
            degrees.push(n);
        }
    }
    let space = GradedSpace::new(field, degrees);
    // Express every basis vector of U in the basis (V basis, lifts).
    let mut cols: Vec<Vector> = v.graded_basis().into_iter().map(|(_, b)| b).collect();
    let kv = cols.len();
    cols.extend(lifts.iter().cloned());
    let change = Matrix::from_columns(field, u.ambient.dim(), &cols);
    let ub = u.graded_basis();
    let mut proj = Matrix::zeros(field, lifts.len(), ub.len());
    for (j, (_, b)) in ub.iter().enumerate() {
        let (x, _) = change.solve(b).expect("U is spanned by V and the lifts");
        for i in 0..lifts.len() {
            proj.set(i, j, x[kv + i].clone());
        }
    }
    let projection = GradedMap::new(u.as_space(), space.clone(), 0, proj)?;
    Ok(Quotient {
        space,
        projection,
        lifts,
        sub: u.clone(),
        killed: v.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Solutions { particular: Vector, kernel: Vec<Vector> },
    NoSolution,
}

/// Solves `f(x) = target` where `target` lies in degree `degree` of the
/// target space. Returned vectors live in the source degree `degree - shift`.
pub fn solve_affine(f: &GradedMap, degree: i64, target: &[Scalar]) -> Result<AffineSolution> {
    if !f.target.is_homogeneous_of(target, degree) {
        return Err(DgError::NotHomogeneous);
    }
    let src_deg = degree - f.shift;
    let block = f.block(src_deg);
    let rhs = f.target.restrict_component(degree, target);
    if block.cols() == 0 {
        return Ok(if is_zero_vec(target) {
            AffineSolution::Solutions {
                particular: zero_vec(f.source.field(), f.source.dim()),
                kernel: Vec::new(),
            }
        } else {
            AffineSolution::NoSolution
        });
    }
    match block.solve(&rhs) {
        None => Ok(AffineSolution::NoSolution),
        Some((x, ker)) => {
            let particular = f.source.embed_component(src_deg, &x);
            debug_assert_eq!(f.apply(&particular), target.to_vec());
            Ok(AffineSolution::Solutions {
                particular,
                kernel: ker
                    .iter()
                    .map(|k| f.source.embed_component(src_deg, k))
                    .collect(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn qv(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    fn dual_d() -> GradedMap {
        // basis: one (deg 0), eps (deg -1); d(eps) = one
        let space = GradedSpace::new(q(), vec![0, -1]);
        let m = Matrix::from_rows(q(), 2, &[qv(&[0, 1]), qv(&[0, 0])]);
        GradedMap::new(space.clone(), space, 1, m).unwrap()
    }

    #[test]
    fn zero_and_identity_maps() {
        let s = GradedSpace::new(q(), vec![0, 0]);
        let (k, i) = kernel_and_image(&GradedMap::zero(s.clone(), s.clone(), 0));
        assert!(k.is_full() && i.is_zero());
        let (k, i) = kernel_and_image(&GradedMap::identity(s));
        assert!(k.is_zero() && i.is_full());
    }

    #[test]
    fn dual_differential_kernel_and_image() {
        let (k, i) = kernel_and_image(&dual_d());
        assert_eq!(k.dims(), BTreeMap::from([(0, 1)]));
        assert_eq!(i.dims(), BTreeMap::from([(0, 1)]));
        let h = quotient(&k, &i).unwrap();
        assert_eq!(h.space.dim(), 0);
    }

    #[test]
    fn solve_affine_examples() {
        let d = dual_d();
        match solve_affine(&d, 0, &qv(&[1, 0])).unwrap() {
            AffineSolution::Solutions { particular, kernel } => {
                assert_eq!(particular, qv(&[0, 1]));
                assert!(kernel.is_empty());
            }
            AffineSolution::NoSolution => panic!("d(eps) = 1"),
        }
        let s = GradedSpace::new(q(), vec![0]);
        let z = GradedMap::zero(s.clone(), s, 0);
        assert_eq!(solve_affine(&z, 0, &qv(&[1])).unwrap(), AffineSolution::NoSolution);
        // target degree outside the support
        assert_eq!(solve_affine(&d, 7, &qv(&[0, 0])).unwrap(), AffineSolution::Solutions {
            particular: qv(&[0, 0]),
            kernel: vec![]
        });
    }

    #[test]
    fn malformed_maps_are_rejected() {
        let s = GradedSpace::new(q(), vec![0, 1]);
        let bad = Matrix::from_rows(q(), 2, &[qv(&[1, 0]), qv(&[0, 1])]);
        assert!(GradedMap::new(s.clone(), s.clone(), 1, bad).is_err());
        let wrong_shape = Matrix::zeros(q(), 3, 2);
        assert!(GradedMap::new(s.clone(), s, 0, wrong_shape).is_err());
    }

    #[test]
    fn quotient_trivial_cases() {
        let s = GradedSpace::new(q(), vec![0, 1, 1]);
        let full = GradedSubspace::full(s.clone());
        let zero = GradedSubspace::zero(s);
        let a = quotient(&full, &zero).unwrap();
        assert_eq!(a.space.dims(), full.dims());
        assert_eq!(a.projection.matrix(), &Matrix::identity(q(), 3));
        assert_eq!(quotient(&full, &full).unwrap().space.dim(), 0);
        assert!(matches!(quotient(&zero, &full), Err(DgError::NotContained)));
    }

    #[test]
    fn combine_in_a_single_degree() {
        let s = GradedSpace::new(q(), vec![0, 0]);
        let x = GradedSubspace::from_homogeneous(s.clone(), &[qv(&[1, 0])]).unwrap();
        let y = GradedSubspace::from_homogeneous(s.clone(), &[qv(&[0, 1])]).unwrap();
        assert!(subspace_combine(CombineOp::Sum, &x, &y).unwrap().is_full());
        assert!(subspace_combine(CombineOp::Intersect, &x, &y).unwrap().is_zero());
        let z = GradedSubspace::zero(s);
        assert!(subspace_combine(CombineOp::Sum, &x, &z).unwrap().equals(&x));
        assert!(subspace_combine(CombineOp::Intersect, &x, &x).unwrap().equals(&x));
        let other = GradedSubspace::zero(GradedSpace::new(q(), vec![0]));
        assert!(subspace_combine(CombineOp::Sum, &x, &other).is_err());
    }

    #[test]
    fn inhomogeneous_insert_is_rejected() {
        let s = GradedSpace::new(q(), vec![0, 1]);
        let mut u = GradedSubspace::zero(s);
        assert!(u.insert(&qv(&[1, 1])).is_err());
    }
}
