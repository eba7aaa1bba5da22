//! Subspaces of `K^n` kept in reduced row echelon form.

use super::matrix::{is_zero_vec, vec_scale, Matrix, Vector};
use super::scalar::{FieldSpec, Scalar};

/// A subspace of `K^n` stored as a reduced row echelon basis. Two spans of
/// the same ambient dimension are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Span {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            s.insert(&super::matrix::unit_vec(field, ambient, i));
        }
        s
    }

    pub fn from_vectors<'a>(
        field: FieldSpec,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a Vector>,
    ) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating against the basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &(&c * r);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let r = vec_scale(&r[p].inv().expect("nonzero"), &r);
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &(&c * y);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Span) -> Span {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn intersect(&self, other: &Span) -> Span {
        let mut out = Span::zero(self.field, self.ambient);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let mut cols: Vec<Vector> = self.rows.clone();
        cols.extend(other.rows.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(self.field, self.ambient, &cols);
        for k in m.nullspace() {
            let mut v = super::matrix::zero_vec(self.field, self.ambient);
            for (c, row) in k.iter().zip(&self.rows) {
                super::matrix::axpy(&mut v, c, row);
            }
            out.insert(&v);
        }
        out
    }

    /// Vectors of `candidates`, in order, that extend `self` to a basis of
    /// `self + span(candidates)`.
    pub fn complement_from(&self, candidates: &[Vector]) -> Vec<Vector> {
        let mut acc = self.clone();
        candidates
            .iter()
            .filter(|v| acc.insert(v))
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| FieldSpec::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn canonical_form_makes_equality_basis_independent() {
        let f = FieldSpec::Rationals;
        let a = Span::from_vectors(f, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Span::from_vectors(f, 3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.coordinates(&v(&[2, 3, 1])).unwrap().len(), 2);
        assert!(a.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn sum_and_intersection_of_axes() {
        let f = FieldSpec::Rationals;
        let x = Span::from_vectors(f, 2, &[v(&[1, 0])]);
        let y = Span::from_vectors(f, 2, &[v(&[0, 1])]);
        assert!(x.sum(&y).is_full());
        assert!(x.intersect(&y).is_zero());
        assert_eq!(x.intersect(&x), x);
    }
}
