//! Opposite algebras, sub- and quotient algebras, cycles, homology, the
//! graded center and tensor products.

use std::collections::HashSet;

use crate::error::{DgError, Result};
use crate::linalg::matrix::{is_zero_vec, unit_vec, vec_sub, zero_vec};
use crate::linalg::{kernel_and_image, GradedSubspace, Matrix, Scalar, Span, Vector};

use super::algebra::DGAlgebra;

/// Coordinates of `v` in the basis given by the (independent) columns of `basis`.
pub fn coords_in(basis: &Matrix, v: &[Scalar]) -> Option<Vector> {
    basis.solve(v).map(|(x, _)| x)
}

/// Names for vectors of a host algebra: a host basis vector keeps its name,
/// anything else gets `prefix` and an index.
pub(crate) fn derived_names(host_names: &[String], vectors: &[Vector], prefix: &str) -> Vec<String> {
    let mut used = HashSet::new();
    let mut out = Vec::with_capacity(vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        let mut name = if nonzero.len() == 1 && v[nonzero[0]].is_one() {
            host_names[nonzero[0]].clone()
        } else {
            format!("{prefix}{k}")
        };
        while !used.insert(name.clone()) {
            name.push('\'');
        }
        out.push(name);
    }
    out
}

pub fn opposite_algebra(a: &DGAlgebra) -> DGAlgebra {
    let n = a.dim();
    let mul = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    a.product(j, i)
                        .iter()
                        .map(|x| x.clone().signed(a.degree(i) * a.degree(j)))
                        .collect()
                })
                .collect()
        })
        .collect();
    DGAlgebra::new(
        a.field(),
        a.names().to_vec(),
        a.degrees().to_vec(),
        a.unit().clone(),
        mul,
        a.diff_matrix().clone(),
    )
    .expect("same shape as the input")
}

/// A dg-subalgebra, with its basis as columns of `embedding` (host coordinates).
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: DGAlgebra,
    pub embedding: Matrix,
}

impl Subalgebra {
    pub fn to_host(&self, v: &[Scalar]) -> Vector {
        self.embedding.mul_vec(v)
    }

    pub fn from_host(&self, v: &[Scalar]) -> Option<Vector> {
        coords_in(&self.embedding, v)
    }
}

/// The span of homogeneous host vectors as an algebra in its own right.
/// Fails unless the span is a unital subalgebra closed under `d`.
pub fn subalgebra(host: &DGAlgebra, basis: &[(i64, Vector)], names: Vec<String>) -> Result<Subalgebra> {
    let field = host.field();
    let vectors: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
    let emb = Matrix::from_columns(field, host.dim(), &vectors);
    if emb.rank() != vectors.len() {
        return Err(DgError::MalformedAlgebra("subalgebra basis is not independent".into()));
    }
    let unit = coords_in(&emb, host.unit())
        .ok_or_else(|| DgError::MalformedAlgebra("span does not contain the unit".into()))?;
    let mut mul = Vec::with_capacity(vectors.len());
    for (i, x) in vectors.iter().enumerate() {
        let mut row = Vec::with_capacity(vectors.len());
        for (j, y) in vectors.iter().enumerate() {
            let p = host.mul(x, y);
            row.push(coords_in(&emb, &p).ok_or_else(|| {
                DgError::MalformedAlgebra(format!("span is not closed under multiplication ({}, {})", names[i], names[j]))
            })?);
        }
        mul.push(row);
    }
    let mut dcols = Vec::with_capacity(vectors.len());
    for (i, x) in vectors.iter().enumerate() {
        dcols.push(
            coords_in(&emb, &host.d(x))
                .ok_or_else(|| DgError::MalformedAlgebra(format!("span is not closed under d ({})", names[i])))?,
        );
    }
    let diff = Matrix::from_columns(field, vectors.len(), &dcols);
    let degrees = basis.iter().map(|(d, _)| *d).collect();
    let algebra = DGAlgebra::new(field, names, degrees, unit, mul, diff)?;
    Ok(Subalgebra { algebra, embedding: emb })
}

/// Whether a graded subspace is a two-sided ideal closed under `d`.
pub fn ideal_failures(host: &DGAlgebra, ideal: &GradedSubspace) -> Vec<String> {
    let mut out = Vec::new();
    for v in ideal.basis() {
        if !ideal.contains(&host.d(v)) {
            out.push("not closed under d".to_string());
            break;
        }
    }
    'outer: for v in ideal.basis() {
        for j in 0..host.dim() {
            if !ideal.contains(&host.mul(&host.basis_vec(j), v)) {
                out.push("not closed under left multiplication".to_string());
                break 'outer;
            }
        }
    }
    'outer2: for v in ideal.basis() {
        for j in 0..host.dim() {
            if !ideal.contains(&host.mul(v, &host.basis_vec(j))) {
                out.push("not closed under right multiplication".to_string());
                break 'outer2;
            }
        }
    }
    out
}

/// `A / I` for a two-sided dg-ideal `I`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: DGAlgebra,
    /// Columns: host lifts of the quotient basis.
    pub lifts: Matrix,
    /// Host coordinates to quotient coordinates.
    pub projection: Matrix,
}

pub fn quotient_algebra(host: &DGAlgebra, ideal: &GradedSubspace) -> Result<QuotientAlgebra> {
    let failures = ideal_failures(host, ideal);
    if !failures.is_empty() {
        return Err(DgError::Precondition(format!("not a two-sided dg-ideal: {}", failures.join(", "))));
    }
    let field = host.field();
    let n = host.dim();
    let units: Vec<Vector> = (0..n).map(|i| unit_vec(field, n, i)).collect();
    let lifts = ideal.span().complement_from(&units);
    let q = lifts.len();
    let mut cols = lifts.clone();
    cols.extend(ideal.basis().iter().cloned());
    let change = Matrix::from_columns(field, n, &cols).inverse().expect("lifts complement the ideal");
    let rows: Vec<usize> = (0..q).collect();
    let all: Vec<usize> = (0..n).collect();
    let projection = change.submatrix(&rows, &all);
    let project = |v: &Vector| projection.mul_vec(v);
    let lift_idx: Vec<usize> = lifts
        .iter()
        .map(|v| v.iter().position(|x| !x.is_zero()).expect("unit vector"))
        .collect();
    let names = lift_idx.iter().map(|&i| host.names()[i].clone()).collect();
    let degrees = lift_idx.iter().map(|&i| host.degree(i)).collect();
    let mul = lifts
        .iter()
        .map(|x| lifts.iter().map(|y| project(&host.mul(x, y))).collect())
        .collect();
    let dcols: Vec<Vector> = lifts.iter().map(|x| project(&host.d(x))).collect();
    let diff = Matrix::from_columns(field, q, &dcols);
    let algebra = DGAlgebra::new(field, names, degrees, project(host.unit()), mul, diff)?;
    Ok(QuotientAlgebra {
        algebra,
        lifts: Matrix::from_columns(field, n, &lifts),
        projection,
    })
}

/// `ker(d)` with the induced multiplication and its inclusion.
pub fn cycles_algebra(a: &DGAlgebra) -> Result<Subalgebra> {
    let (ker, _) = kernel_and_image(&a.diff_map()?);
    let basis = ker.graded_basis();
    let vectors: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
    let names = derived_names(a.names(), &vectors, "z");
    subalgebra(a, &basis, names)
}

/// `H(A,d) = ker(d)/im(d)` as a graded algebra.
#[derive(Clone, Debug)]
pub struct Homology {
    pub algebra: DGAlgebra,
    pub cycles: Subalgebra,
    /// Cycle coordinates to homology coordinates.
    pub projection: Matrix,
}

pub fn homology_algebra(a: &DGAlgebra) -> Result<Homology> {
    let d = a.diff_map()?;
    let (ker, im) = kernel_and_image(&d);
    for b in im.basis() {
        for z in ker.basis() {
            if !im.contains(&a.mul(b, z)) || !im.contains(&a.mul(z, b)) {
                return Err(DgError::Precondition("boundaries are not an ideal of the cycles".into()));
            }
        }
    }
    let cycles = cycles_algebra(a)?;
    let inner: Vec<Vector> = im
        .basis()
        .iter()
        .map(|b| cycles.from_host(b).expect("boundaries are cycles"))
        .collect();
    let ideal = GradedSubspace::from_homogeneous(cycles.algebra.space().clone(), &inner)?;
    let q = quotient_algebra(&cycles.algebra, &ideal)?;
    let names = q
        .algebra
        .names()
        .iter()
        .map(|n| format!("[{n}]"))
        .collect();
    Ok(Homology {
        algebra: q.algebra.with_names(names)?,
        cycles,
        projection: q.projection,
    })
}

fn commutation_solutions(a: &DGAlgebra, n: i64, graded: bool) -> Vec<Vector> {
    let field = a.field();
    let idx = a.space().indices_in(n);
    if idx.is_empty() {
        return Vec::new();
    }
    let dim = a.dim();
    let cols: Vec<Vector> = idx
        .iter()
        .map(|&k| {
            let mut col = Vec::with_capacity(dim * dim);
            for j in 0..dim {
                let sign = if graded { n * a.degree(j) } else { 0 };
                let rhs: Vector = a.product(j, k).iter().map(|x| x.clone().signed(sign)).collect();
                col.extend(vec_sub(a.product(k, j), &rhs));
            }
            col
        })
        .collect();
    let m = Matrix::from_columns(field, dim * dim, &cols);
    m.nullspace()
        .into_iter()
        .map(|c| {
            let mut v = zero_vec(field, dim);
            for (coef, &k) in c.iter().zip(&idx) {
                v[k] = coef.clone();
            }
            v
        })
        .collect()
}

/// The graded center, certified to be a unital dg-subalgebra of graded-central
/// elements, together with the even-degree comparison against the ungraded center.
#[derive(Clone, Debug)]
pub struct CentralSubalgebraWitness {
    pub host: DGAlgebra,
    pub carrier: GradedSubspace,
    pub sub: Subalgebra,
    pub ungraded_center: GradedSubspace,
    pub diff_closed: bool,
    pub mult_closed: bool,
    pub contains_unit: bool,
    /// Even degrees where the graded and ungraded centers differ.
    pub even_mismatch: Vec<i64>,
}

impl CentralSubalgebraWitness {
    pub fn certified(&self) -> bool {
        self.diff_closed && self.mult_closed && self.contains_unit
    }

    pub fn even_matches_ungraded(&self) -> bool {
        self.even_mismatch.is_empty()
    }
}

pub fn graded_center(a: &DGAlgebra) -> Result<CentralSubalgebraWitness> {
    let mut graded = Vec::new();
    let mut ungraded = Vec::new();
    for n in a.space().support() {
        graded.extend(commutation_solutions(a, n, true).into_iter().map(|v| (n, v)));
        ungraded.extend(commutation_solutions(a, n, false));
    }
    let carrier = GradedSubspace::from_homogeneous(a.space().clone(), graded.iter().map(|(_, v)| v))?;
    let ungraded_center = GradedSubspace::from_homogeneous(a.space().clone(), &ungraded)?;
    let diff_closed = carrier.basis().iter().all(|v| carrier.contains(&a.d(v)));
    let mult_closed = carrier
        .basis()
        .iter()
        .all(|x| carrier.basis().iter().all(|y| carrier.contains(&a.mul(x, y))));
    let contains_unit = carrier.contains(a.unit());
    let mut even_mismatch = Vec::new();
    for n in a.space().support() {
        if n.rem_euclid(2) == 0 && carrier.dim_in(n) != ungraded_center.dim_in(n) {
            even_mismatch.push(n);
        } else if n.rem_euclid(2) == 0 {
            let g = Span::from_vectors(a.field(), a.dim(), &carrier.basis_in(n));
            let u = Span::from_vectors(a.field(), a.dim(), &ungraded_center.basis_in(n));
            if g != u {
                even_mismatch.push(n);
            }
        }
    }
    let basis = carrier.graded_basis();
    let vectors: Vec<Vector> = basis.iter().map(|(_, v)| v.clone()).collect();
    let names = derived_names(a.names(), &vectors, "c");
    let sub = subalgebra(a, &basis, names)
        .map_err(|e| DgError::Alarm(format!("graded center is not a dg-subalgebra: {e}")))?;
    Ok(CentralSubalgebraWitness {
        host: a.clone(),
        carrier,
        sub,
        ungraded_center,
        diff_closed,
        mult_closed,
        contains_unit,
        even_mismatch,
    })
}

fn kron(u: &[Scalar], v: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for x in u {
        for y in v {
            out.push(x * y);
        }
    }
    out
}

/// Tensor product over the base field with Koszul signs.
pub fn tensor_over_base(a: &DGAlgebra, b: &DGAlgebra) -> Result<DGAlgebra> {
    if a.field() != b.field() {
        return Err(DgError::FieldMismatch(format!("{} vs {}", a.field(), b.field())));
    }
    let (na, nb) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * nb + j;
    let mut names = Vec::with_capacity(na * nb);
    let mut degrees = Vec::with_capacity(na * nb);
    let mut used = HashSet::new();
    for i in 0..na {
        for j in 0..nb {
            let mut name = format!("{}.{}", a.names()[i], b.names()[j]);
            while !used.insert(name.clone()) {
                name.push('\'');
            }
            names.push(name);
            degrees.push(a.degree(i) + b.degree(j));
        }
    }
    let mut mul = vec![vec![Vec::new(); na * nb]; na * nb];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let p: Vector = kron(a.product(i1, i2), b.product(j1, j2))
                        .into_iter()
                        .map(|x| x.signed(b.degree(j1) * a.degree(i2)))
                        .collect();
                    mul[idx(i1, j1)][idx(i2, j2)] = p;
                }
            }
        }
    }
    let mut dcols = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            let left = kron(&a.diff_of(i), &b.basis_vec(j));
            let right: Vector = kron(&a.basis_vec(i), &b.diff_of(j))
                .into_iter()
                .map(|x| x.signed(a.degree(i)))
                .collect();
            dcols.push(left.iter().zip(&right).map(|(x, y)| x + y).collect());
        }
    }
    let diff = Matrix::from_columns(a.field(), na * nb, &dcols);
    DGAlgebra::new(a.field(), names, degrees, kron(a.unit(), b.unit()), mul, diff)
}

/// Elementary tensor `x ⊗ y` in the coordinates of [`tensor_over_base`].
pub fn tensor_vector(x: &[Scalar], y: &[Scalar]) -> Vector {
    kron(x, y)
}

/// A common central dg-algebra `Z` with its embeddings into `A` and `B`
/// (columns are images of the basis of `Z`).
#[derive(Clone, Debug)]
pub struct CentralPair {
    pub z: DGAlgebra,
    pub into_a: Matrix,
    pub into_b: Matrix,
}

impl CentralPair {
    /// `Z = K` embedded by the units.
    pub fn base_field(a: &DGAlgebra, b: &DGAlgebra) -> Result<CentralPair> {
        let z = crate::catalog::q0(a.field());
        Ok(CentralPair {
            z,
            into_a: Matrix::from_columns(a.field(), a.dim(), &[a.unit().clone()]),
            into_b: Matrix::from_columns(b.field(), b.dim(), &[b.unit().clone()]),
        })
    }

    /// `Z = Z_gr(A)` itself, when `A = B`.
    pub fn graded_center_of(a: &DGAlgebra) -> Result<CentralPair> {
        let c = graded_center(a)?;
        Ok(CentralPair {
            z: c.sub.algebra.clone(),
            into_a: c.sub.embedding.clone(),
            into_b: c.sub.embedding,
        })
    }
}

/// Failures of `m` (columns: images of the source basis) to be a unital
/// degree-preserving dg-algebra map.
pub fn dg_map_failures(src: &DGAlgebra, tgt: &DGAlgebra, m: &Matrix) -> Vec<String> {
    let mut out = Vec::new();
    if src.field() != tgt.field() {
        out.push("field mismatch".into());
        return out;
    }
    if m.rows() != tgt.dim() || m.cols() != src.dim() {
        out.push("shape mismatch".into());
        return out;
    }
    for i in 0..src.dim() {
        if !tgt.space().is_homogeneous_of(&m.column(i), src.degree(i)) {
            out.push(format!("image of {} has the wrong degree", src.names()[i]));
        }
    }
    if &m.mul_vec(src.unit()) != tgt.unit() {
        out.push("unit is not preserved".into());
    }
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = m.mul_vec(src.product(i, j));
            let rhs = tgt.mul(&m.column(i), &m.column(j));
            if lhs != rhs {
                out.push(format!("not multiplicative on ({}, {})", src.names()[i], src.names()[j]));
            }
        }
        if m.mul_vec(&src.diff_of(i)) != tgt.d(&m.column(i)) {
            out.push(format!("does not commute with d on {}", src.names()[i]));
        }
    }
    out
}

pub fn is_dg_isomorphism(src: &DGAlgebra, tgt: &DGAlgebra, m: &Matrix) -> bool {
    dg_map_failures(src, tgt, m).is_empty() && src.dim() == tgt.dim() && m.inverse().is_some()
}

/// `A ⊗_Z B` as a quotient of `A ⊗_K B`.
#[derive(Clone, Debug)]
pub struct CentralTensor {
    pub algebra: DGAlgebra,
    pub base_tensor: DGAlgebra,
    pub relations: GradedSubspace,
    /// Base-tensor coordinates to quotient coordinates.
    pub projection: Matrix,
    pub lifts: Matrix,
}

fn check_central_embedding(host: &DGAlgebra, z: &DGAlgebra, emb: &Matrix, side: &str) -> Result<()> {
    let failures = dg_map_failures(z, host, emb);
    if !failures.is_empty() {
        return Err(DgError::Precondition(format!("embedding into {side}: {}", failures.join("; "))));
    }
    if emb.rank() != z.dim() {
        return Err(DgError::Precondition(format!("embedding into {side} is not injective")));
    }
    let center = graded_center(host)?;
    for c in emb.columns() {
        if !center.carrier.contains(&c) {
            return Err(DgError::Precondition(format!("image of Z is not graded-central in {side}")));
        }
    }
    Ok(())
}

pub fn tensor_over_central(a: &DGAlgebra, b: &DGAlgebra, pair: &CentralPair) -> Result<CentralTensor> {
    if a.field() != b.field() || pair.z.field() != a.field() {
        return Err(DgError::FieldMismatch("tensor factors over different fields".into()));
    }
    check_central_embedding(a, &pair.z, &pair.into_a, "A")?;
    check_central_embedding(b, &pair.z, &pair.into_b, "B")?;
    let t = tensor_over_base(a, b)?;
    let mut rel = GradedSubspace::zero(t.space().clone());
    for k in 0..pair.z.dim() {
        let za = pair.into_a.column(k);
        let zb = pair.into_b.column(k);
        for i in 0..a.dim() {
            let ai = a.basis_vec(i);
            let az = a.mul(&ai, &za);
            for j in 0..b.dim() {
                let bj = b.basis_vec(j);
                let v = vec_sub(&kron(&az, &bj), &kron(&ai, &b.mul(&zb, &bj)));
                if !is_zero_vec(&v) {
                    rel.insert(&v)?;
                }
            }
        }
    }
    let failures = ideal_failures(&t, &rel);
    if !failures.is_empty() {
        return Err(DgError::Alarm(format!("balancing relations do not descend: {}", failures.join(", "))));
    }
    let q = quotient_algebra(&t, &rel)?;
    Ok(CentralTensor {
        algebra: q.algebra,
        base_tensor: t,
        relations: rel,
        projection: q.projection,
        lifts: q.lifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dga::validate_dga;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn opposite_is_an_involution_and_fixes_dual() {
        for a in [catalog::q0(Q), catalog::dual(Q), catalog::m2(Q), catalog::dd(Q)] {
            assert_eq!(opposite_algebra(&opposite_algebra(&a)), a);
            assert!(validate_dga(&opposite_algebra(&a)).passed());
        }
        assert_eq!(opposite_algebra(&catalog::dual(Q)), catalog::dual(Q));
    }

    #[test]
    fn cycles_and_homology_of_small_algebras() {
        let dual = catalog::dual(Q);
        let z = cycles_algebra(&dual).unwrap();
        assert_eq!(z.algebra.dim(), 1);
        assert_eq!(z.algebra.degrees(), &[0]);
        assert_eq!(homology_algebra(&dual).unwrap().algebra.dim(), 0);
        let q0 = catalog::q0(Q);
        assert_eq!(homology_algebra(&q0).unwrap().algebra.dim(), 1);
        // K ⊕ K t with |t| = 2, t^2 = 0, d = 0.
        let f = Q;
        let t = DGAlgebra::new(
            f,
            vec!["one".into(), "t".into()],
            vec![0, 2],
            vec![f.one(), f.zero()],
            vec![
                vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]],
                vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]],
            ],
            Matrix::zeros(f, 2, 2),
        )
        .unwrap();
        let h = homology_algebra(&t).unwrap();
        assert_eq!(h.algebra.dim(), 2);
        assert_eq!(h.algebra.structure_constants(), t.structure_constants());
    }

    #[test]
    fn graded_centers() {
        let m2 = catalog::m2(Q);
        let c = graded_center(&m2).unwrap();
        assert_eq!(c.carrier.dim(), 1);
        assert!(c.carrier.contains(m2.unit()));
        assert!(c.certified() && c.even_matches_ungraded());
        let dual = catalog::dual(Q);
        assert!(graded_center(&dual).unwrap().carrier.is_full());
        assert!(graded_center(&catalog::q0(Q)).unwrap().carrier.is_full());
    }

    #[test]
    fn dd_signs() {
        let dual = catalog::dual(Q);
        let dd = tensor_over_base(&dual, &dual).unwrap();
        assert!(validate_dga(&dd).passed());
        let one = dual.basis_vec(0);
        let eps = dual.basis_vec(1);
        let x = tensor_vector(&one, &eps);
        let y = tensor_vector(&eps, &one);
        let ee = tensor_vector(&eps, &eps);
        let neg_ee: Vector = ee.iter().map(|s| -s).collect();
        assert_eq!(dd.mul(&x, &y), neg_ee);
        let w = vec_sub(&x, &y);
        assert!(is_zero_vec(&dd.mul(&w, &w)));
        assert_eq!(dd.d(&ee), w);
    }

    #[test]
    fn tensor_with_base_field_is_the_algebra() {
        let m2 = catalog::m2(Q);
        let t = tensor_over_base(&catalog::q0(Q), &m2).unwrap();
        let id = Matrix::identity(Q, 4);
        assert!(is_dg_isomorphism(&m2, &t, &id));
    }

    #[test]
    fn balanced_tensor_of_dual_collapses() {
        let dual = catalog::dual(Q);
        let pair = CentralPair::graded_center_of(&dual).unwrap();
        let t = tensor_over_central(&dual, &dual, &pair).unwrap();
        assert_eq!(t.algebra.dim(), 2);
        assert!(validate_dga(&t.algebra).passed());
        // a ↦ a ⊗ 1 is an isomorphism onto the quotient.
        let cols: Vec<Vector> = (0..2)
            .map(|i| t.projection.mul_vec(&tensor_vector(&dual.basis_vec(i), dual.unit())))
            .collect();
        assert!(is_dg_isomorphism(&dual, &t.algebra, &Matrix::from_columns(Q, 2, &cols)));

        let base = CentralPair::base_field(&dual, &dual).unwrap();
        let plain = tensor_over_central(&dual, &dual, &base).unwrap();
        assert_eq!(plain.algebra.dim(), 4);
        assert!(plain.relations.is_zero());
    }

    #[test]
    fn central_tensor_with_z_is_identity() {
        let dual = catalog::dual(Q);
        let c = graded_center(&dual).unwrap();
        let z = c.sub.algebra.clone();
        let pair = CentralPair {
            z: z.clone(),
            into_a: c.sub.embedding.clone(),
            into_b: Matrix::identity(Q, z.dim()),
        };
        let t = tensor_over_central(&dual, &z, &pair).unwrap();
        assert_eq!(t.algebra.dim(), dual.dim());
    }

    #[test]
    fn non_central_z_is_rejected() {
        let m2 = catalog::m2(Q);
        let e10 = m2.basis_vec(m2.index_of("E10").unwrap());
        // K[w]/(w^2) with |w| = 1 embedded via w ↦ E10 is not central.
        let f = Q;
        let z = DGAlgebra::new(
            f,
            vec!["one".into(), "w".into()],
            vec![0, 1],
            vec![f.one(), f.zero()],
            vec![
                vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]],
                vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]],
            ],
            Matrix::zeros(f, 2, 2),
        )
        .unwrap();
        let emb = Matrix::from_columns(f, 4, &[m2.unit().clone(), e10]);
        let pair = CentralPair { z, into_a: emb.clone(), into_b: emb };
        assert!(matches!(tensor_over_central(&m2, &m2, &pair), Err(DgError::Precondition(_))));
    }
}
