//! Hom and End complexes, annihilators and the embedding into `End_K(M)`.

use std::collections::BTreeSet;

use crate::dga::constructions::coords_in;
use crate::dga::{dg_map_failures, DGAlgebra};
use crate::error::{DgError, Result};
use crate::linalg::matrix::zero_vec;
use crate::linalg::{GradedSpace, GradedSubspace, Matrix, Vector};

use super::module::{restrict_to_base, DGModule};

/// Degree-`k` maps `f` with `f(a m) = (-1)^{|a| k} a f(m)`, with `d_Hom(f) = δ_N f - (-1)^{|f|} f δ_M`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: DGModule,
    pub target: DGModule,
    pub degrees: Vec<i64>,
    /// Basis maps as `target.dim() × source.dim()` matrices.
    pub basis: Vec<Matrix>,
    /// Column `j` is `d_Hom(basis[j])` in basis coordinates.
    pub dhom: Matrix,
    flat: Matrix,
}

fn flatten(m: &Matrix) -> Vector {
    m.entries().to_vec()
}

impl HomComplex {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(self.source.algebra().field(), self.degrees.clone())
    }

    /// Coordinates of a map in the basis, if it lies in the complex.
    pub fn coords(&self, f: &Matrix) -> Option<Vector> {
        if self.basis.is_empty() {
            return f.is_zero().then(Vec::new);
        }
        coords_in(&self.flat, &flatten(f))
    }

    pub fn from_coords(&self, v: &[crate::linalg::Scalar]) -> Matrix {
        let f = self.source.algebra().field();
        let mut out = Matrix::zeros(f, self.target.dim(), self.source.dim());
        for (c, b) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    pub fn d_hom(&self, f: &Matrix, degree: i64) -> Matrix {
        let one = self.source.algebra().field().one();
        self.target
            .delta()
            .mul(f)
            .sub(&f.mul(self.source.delta()).scale(&one.signed(degree)))
    }

    pub fn dhom_squares_to_zero(&self) -> bool {
        self.dhom.mul(&self.dhom).is_zero()
    }

    /// Degree-0 cycles: the dg-module maps.
    pub fn cycles_in(&self, degree: i64) -> Vec<Matrix> {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.degrees[i] == degree).collect();
        if idx.is_empty() {
            return Vec::new();
        }
        let cols: Vec<Vector> = idx.iter().map(|&i| self.dhom.column(i)).collect();
        let m = Matrix::from_columns(self.source.algebra().field(), self.dim(), &cols);
        m.nullspace()
            .into_iter()
            .map(|c| {
                let mut v = zero_vec(self.source.algebra().field(), self.dim());
                for (x, &i) in c.iter().zip(&idx) {
                    v[i] = x.clone();
                }
                self.from_coords(&v)
            })
            .collect()
    }
}

pub fn hom_complex(m: &DGModule, n: &DGModule) -> Result<HomComplex> {
    if m.algebra() != n.algebra() {
        return Err(DgError::AlgebraMismatch("Hom between modules over different algebras".into()));
    }
    let a = m.algebra();
    let f = a.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut ks = BTreeSet::new();
    for &p in m.degrees() {
        for &q in n.degrees() {
            ks.insert(q - p);
        }
    }
    let mut degrees = Vec::new();
    let mut basis = Vec::new();
    for k in ks {
        let unknowns: Vec<(usize, usize)> = (0..dn)
            .flat_map(|r| (0..dm).map(move |c| (r, c)))
            .filter(|&(r, c)| n.degree(r) == m.degree(c) + k)
            .collect();
        let cols: Vec<Vector> = unknowns
            .iter()
            .map(|&(r, c0)| {
                let mut col = Vec::with_capacity(a.dim() * dm * dn);
                for i in 0..a.dim() {
                    let am = &m.action_matrices()[i];
                    let an = &n.action_matrices()[i];
                    let s = f.one().signed(a.degree(i) * k);
                    for c in 0..dm {
                        for r2 in 0..dn {
                            // (E_{r c0} A^M_i - s A^N_i E_{r c0}) e_c, row r2
                            let mut x = f.zero();
                            if r2 == r {
                                x += am.get(c0, c);
                            }
                            if c == c0 {
                                x -= &(&s * an.get(r2, r));
                            }
                            col.push(x);
                        }
                    }
                }
                col
            })
            .collect();
        if unknowns.is_empty() {
            continue;
        }
        let sys = Matrix::from_columns(f, a.dim() * dm * dn, &cols);
        for sol in sys.nullspace() {
            let mut mat = Matrix::zeros(f, dn, dm);
            for (x, &(r, c)) in sol.iter().zip(&unknowns) {
                mat.set(r, c, x.clone());
            }
            degrees.push(k);
            basis.push(mat);
        }
    }
    let flat_cols: Vec<Vector> = basis.iter().map(flatten).collect();
    let flat = Matrix::from_columns(f, dm * dn, &flat_cols);
    let mut hc = HomComplex {
        source: m.clone(),
        target: n.clone(),
        degrees,
        basis,
        dhom: Matrix::zeros(f, 0, 0),
        flat,
    };
    let dcols: Vec<Vector> = (0..hc.dim())
        .map(|j| {
            let img = hc.d_hom(&hc.basis[j], hc.degrees[j]);
            hc.coords(&img).ok_or_else(|| DgError::Alarm("d_Hom leaves the Hom complex".into()))
        })
        .collect::<Result<_>>()?;
    hc.dhom = Matrix::from_columns(f, hc.dim(), &dcols);
    Ok(hc)
}

fn matrix_unit_name(m: &Matrix) -> Option<String> {
    let mut hit = None;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if x.is_zero() {
                continue;
            }
            if !x.is_one() || hit.is_some() {
                return None;
            }
            hit = Some((r, c));
        }
    }
    let (r, c) = hit?;
    Some(if r < 10 && c < 10 { format!("E{r}{c}") } else { format!("E{r}_{c}") })
}

/// `End(M)` with composition, as a dg-algebra, plus its Hom complex.
pub fn end_algebra_with_complex(m: &DGModule) -> Result<(DGAlgebra, HomComplex)> {
    let h = hom_complex(m, m)?;
    let f = m.algebra().field();
    let n = h.dim();
    let mut names = Vec::with_capacity(n);
    let mut seen = BTreeSet::new();
    for (i, b) in h.basis.iter().enumerate() {
        let mut name = matrix_unit_name(b).unwrap_or_else(|| format!("f{i}"));
        while !seen.insert(name.clone()) {
            name.push('\'');
        }
        names.push(name);
    }
    let mul = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| h.coords(&h.basis[i].mul(&h.basis[j])).ok_or_else(|| DgError::Alarm("End is not closed under composition".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = h
        .coords(&Matrix::identity(f, m.dim()))
        .ok_or_else(|| DgError::Alarm("identity is not in End".into()))?;
    let alg = DGAlgebra::new(f, names, h.degrees.clone(), unit, mul, h.dhom.clone())?;
    Ok((alg, h))
}

pub fn end_algebra(m: &DGModule) -> Result<DGAlgebra> {
    end_algebra_with_complex(m).map(|(a, _)| a)
}

/// `{a : a M = 0}`, computed degreewise, with its ideal certification.
#[derive(Clone, Debug)]
pub struct Annihilator {
    pub ideal: GradedSubspace,
    pub d_closed: bool,
    pub two_sided: bool,
}

pub fn annihilator(m: &DGModule) -> Result<Annihilator> {
    let a = m.algebra();
    let f = a.field();
    let mut vectors = Vec::new();
    for n in a.space().support() {
        let idx = a.space().indices_in(n);
        let cols: Vec<Vector> = idx.iter().map(|&i| flatten(&m.action_matrices()[i])).collect();
        let sys = Matrix::from_columns(f, m.dim() * m.dim(), &cols);
        for c in sys.nullspace() {
            let mut v = zero_vec(f, a.dim());
            for (x, &i) in c.iter().zip(&idx) {
                v[i] = x.clone();
            }
            vectors.push(v);
        }
    }
    let ideal = GradedSubspace::from_homogeneous(a.space().clone(), &vectors)?;
    let d_closed = ideal.basis().iter().all(|v| ideal.contains(&a.d(v)));
    let two_sided = ideal.basis().iter().all(|v| {
        (0..a.dim()).all(|j| {
            let e = a.basis_vec(j);
            ideal.contains(&a.mul(&e, v)) && ideal.contains(&a.mul(v, &e))
        })
    });
    Ok(Annihilator { ideal, d_closed, two_sided })
}

/// `μ: A → End_K(M)`, `μ(a) = (m ↦ a m)`, with its certification.
#[derive(Clone, Debug)]
pub struct FaithfulEmbedding {
    pub end_k: DGAlgebra,
    /// Columns: `μ(e_i)` in the basis of `End_K(M)`.
    pub mu: Matrix,
    /// Failures of `μ` to be a unital dg-algebra map (expected empty).
    pub map_failures: Vec<String>,
    pub faithful: bool,
    pub kernel_witness: Option<Vector>,
}

pub fn faithful_embedding(m: &DGModule) -> Result<FaithfulEmbedding> {
    let a = m.algebra();
    let base = restrict_to_base(m);
    let (end_k, h) = end_algebra_with_complex(&base)?;
    let cols: Vec<Vector> = m
        .action_matrices()
        .iter()
        .map(|act| h.coords(act).ok_or_else(|| DgError::Alarm("action is not a graded endomorphism".into())))
        .collect::<Result<_>>()?;
    let mu = Matrix::from_columns(a.field(), end_k.dim(), &cols);
    let map_failures = dg_map_failures(a, &end_k, &mu);
    let faithful = mu.rank() == a.dim();
    let kernel_witness = if faithful {
        None
    } else {
        annihilator(m)?.ideal.graded_basis().into_iter().map(|(_, v)| v).next()
    };
    Ok(FaithfulEmbedding { end_k, mu, map_failures, faithful, kernel_witness })
}
