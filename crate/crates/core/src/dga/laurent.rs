//! Twisted Laurent dg-algebras `R0[X, X^-1; σ]` with `X r = σ(r) X`, handled
//! symbolically and through finite degree windows.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{DgError, Result};
use crate::linalg::matrix::{is_zero_vec, unit_vec, vec_scale, zero_vec};
use crate::linalg::{FieldSpec, Matrix, Scalar, Span, Vector};

use super::algebra::{DGAlgebra, StructureTable};
use super::constructions::coords_in;

/// A finite sum `Σ r_k X^k` with coefficients in `R0` (as coordinate vectors).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentElement {
    terms: BTreeMap<i64, Vector>,
}

impl fmt::Debug for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl LaurentElement {
    pub fn zero() -> Self {
        LaurentElement::default()
    }

    pub fn monomial(r: Vector, k: i64) -> Self {
        let mut e = LaurentElement::zero();
        e.add_term(k, &r);
        e
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vector> {
        &self.terms
    }

    pub fn coefficient(&self, k: i64) -> Option<&Vector> {
        self.terms.get(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: i64, r: &[Scalar]) {
        if is_zero_vec(r) {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(|| r.iter().map(|x| x.field().zero()).collect());
        for (a, b) in entry.iter_mut().zip(r) {
            *a += b;
        }
        if is_zero_vec(entry) {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for (k, r) in &other.terms {
            out.add_term(*k, r);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for (k, r) in &self.terms {
            out.add_term(*k, &vec_scale(c, r));
        }
        out
    }

    pub fn neg(&self) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for (k, r) in &self.terms {
            out.add_term(*k, &r.iter().map(|x| -x).collect::<Vector>());
        }
        out
    }

    /// Powers of `X` that occur.
    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }
}

/// `R0[X, X^-1; σ]` with `|X| = g` and a differential determined by `d(X)`
/// and `d` on `R0` through the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedLaurentDGA {
    field: FieldSpec,
    r0: DGAlgebra,
    sigma: Matrix,
    sigma_inv: Matrix,
    gen_degree: i64,
    dx: LaurentElement,
    dr0: Vec<LaurentElement>,
}

impl TwistedLaurentDGA {
    /// `dr0[i]` is `d(e_i)` for the basis of `R0`; pass an empty vector for `d|R0 = 0`.
    pub fn new(
        r0: DGAlgebra,
        sigma: Matrix,
        gen_degree: i64,
        dx: LaurentElement,
        dr0: Vec<LaurentElement>,
    ) -> Result<Self> {
        let field = r0.field();
        let n = r0.dim();
        if r0.degrees().iter().any(|&d| d != 0) || !r0.has_zero_differential() {
            return Err(DgError::MalformedAlgebra("R0 must sit in degree 0 with zero differential".into()));
        }
        if gen_degree == 0 {
            return Err(DgError::MalformedAlgebra("the generator must have nonzero degree".into()));
        }
        if sigma.rows() != n || sigma.cols() != n {
            return Err(DgError::MalformedAlgebra("sigma has the wrong shape".into()));
        }
        let sigma_inv = sigma
            .inverse()
            .ok_or_else(|| DgError::MalformedAlgebra("sigma is not invertible".into()))?;
        if &sigma.mul_vec(r0.unit()) != r0.unit() {
            return Err(DgError::MalformedAlgebra("sigma does not fix the unit".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if sigma.mul_vec(r0.product(i, j)) != r0.mul(&sigma.column(i), &sigma.column(j)) {
                    return Err(DgError::MalformedAlgebra("sigma is not multiplicative".into()));
                }
            }
        }
        let dr0 = if dr0.is_empty() { vec![LaurentElement::zero(); n] } else { dr0 };
        if dr0.len() != n {
            return Err(DgError::MalformedAlgebra("one value of d per basis vector of R0".into()));
        }
        let check_len = |e: &LaurentElement| e.terms.values().all(|r| r.len() == n);
        if !check_len(&dx) || !dr0.iter().all(check_len) {
            return Err(DgError::MalformedAlgebra("coefficients have the wrong length".into()));
        }
        for k in dx.support() {
            if k * gen_degree != gen_degree + 1 {
                return Err(DgError::MalformedAlgebra(format!(
                    "d(X) has a term X^{k} outside degree {}",
                    gen_degree + 1
                )));
            }
        }
        for e in &dr0 {
            for k in e.support() {
                if k * gen_degree != 1 {
                    return Err(DgError::MalformedAlgebra("d on R0 must land in degree 1".into()));
                }
            }
        }
        Ok(TwistedLaurentDGA { field, r0, sigma, sigma_inv, gen_degree, dx, dr0 })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn r0(&self) -> &DGAlgebra {
        &self.r0
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn gen_degree(&self) -> i64 {
        self.gen_degree
    }

    pub fn dx(&self) -> &LaurentElement {
        &self.dx
    }

    pub fn dr0(&self) -> &[LaurentElement] {
        &self.dr0
    }

    pub fn has_zero_differential(&self) -> bool {
        self.dx.is_zero() && self.dr0.iter().all(LaurentElement::is_zero)
    }

    pub fn one(&self) -> LaurentElement {
        LaurentElement::monomial(self.r0.unit().clone(), 0)
    }

    /// `X^k`.
    pub fn x_pow(&self, k: i64) -> LaurentElement {
        LaurentElement::monomial(self.r0.unit().clone(), k)
    }

    pub fn sigma_pow(&self, k: i64) -> Matrix {
        let base = if k >= 0 { &self.sigma } else { &self.sigma_inv };
        let mut m = Matrix::identity(self.field, self.r0.dim());
        for _ in 0..k.unsigned_abs() {
            m = base.mul(&m);
        }
        m
    }

    /// Degree of `r X^k`.
    pub fn degree_of_power(&self, k: i64) -> i64 {
        k * self.gen_degree
    }

    /// The power `k` with `k g = n`, if any.
    pub fn power_in_degree(&self, n: i64) -> Option<i64> {
        (n % self.gen_degree == 0).then(|| n / self.gen_degree)
    }

    pub fn degree_of(&self, e: &LaurentElement) -> Option<i64> {
        let s = e.support();
        match s.as_slice() {
            [] => None,
            [k] => Some(self.degree_of_power(*k)),
            _ => None,
        }
    }

    /// `(r X^a)(s X^b) = r σ^a(s) X^{a+b}`.
    pub fn multiply(&self, a: &LaurentElement, b: &LaurentElement) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for (ka, r) in &a.terms {
            let sig = self.sigma_pow(*ka);
            for (kb, s) in &b.terms {
                out.add_term(ka + kb, &self.r0.mul(r, &sig.mul_vec(s)));
            }
        }
        out
    }

    /// `d(X^k)` by the Leibniz recursion, with `d(X^-1)` forced by `d(X X^-1) = 0`.
    pub fn d_x_pow(&self, k: i64) -> LaurentElement {
        let g = self.gen_degree;
        if k == 0 {
            return LaurentElement::zero();
        }
        if k > 0 {
            let mut acc = self.dx.clone();
            for j in 2..=k {
                let a = self.multiply(&self.dx, &self.x_pow(j - 1));
                let b = self.multiply(&self.x_pow(1), &acc).scale(&self.field.one().signed(g));
                acc = a.add(&b);
            }
            acc
        } else {
            let xi = self.x_pow(-1);
            let d_inv = self
                .multiply(&self.multiply(&xi, &self.dx), &xi)
                .scale(&self.field.one().signed(g))
                .neg();
            let mut acc = d_inv.clone();
            for j in 2..=(-k) {
                let a = self.multiply(&d_inv, &self.x_pow(-(j - 1)));
                let b = self.multiply(&xi, &acc).scale(&self.field.one().signed(g));
                acc = a.add(&b);
            }
            acc
        }
    }

    /// `d(r X^k) = d(r) X^k + r d(X^k)` extended linearly.
    pub fn differentiate(&self, a: &LaurentElement) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for (k, r) in &a.terms {
            let xk = self.x_pow(*k);
            let dxk = self.d_x_pow(*k);
            for (i, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let ei = LaurentElement::monomial(unit_vec(self.field, self.r0.dim(), i), 0);
                let term = self.multiply(&self.dr0[i], &xk).add(&self.multiply(&ei, &dxk));
                out = out.add(&term.scale(c));
            }
        }
        out
    }

    /// Basis of degree `n`: `e_i X^k` with `k g = n`.
    pub fn basis_in(&self, n: i64) -> Vec<LaurentElement> {
        match self.power_in_degree(n) {
            Some(k) => (0..self.r0.dim())
                .map(|i| LaurentElement::monomial(unit_vec(self.field, self.r0.dim(), i), k))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Coordinates of a degree-`n` element on [`Self::basis_in`].
    pub fn coords_in_degree(&self, n: i64, e: &LaurentElement) -> Option<Vector> {
        let dim = self.r0.dim();
        match self.power_in_degree(n) {
            Some(k) => {
                if e.terms.keys().any(|&j| j != k) {
                    return None;
                }
                Some(e.terms.get(&k).cloned().unwrap_or_else(|| zero_vec(self.field, dim)))
            }
            None => e.is_zero().then(Vec::new),
        }
    }

    fn from_coords(&self, n: i64, v: &[Scalar]) -> LaurentElement {
        match self.power_in_degree(n) {
            Some(k) => LaurentElement::monomial(v.to_vec(), k),
            None => LaurentElement::zero(),
        }
    }

    /// Matrix of `d` from degree `n` to degree `n+1`.
    pub fn diff_block(&self, n: i64) -> Matrix {
        let src = self.basis_in(n);
        let rows = self.basis_in(n + 1).len();
        let cols: Vec<Vector> = src
            .iter()
            .map(|b| self.coords_in_degree(n + 1, &self.differentiate(b)).expect("d is homogeneous"))
            .collect();
        Matrix::from_columns(self.field, rows, &cols)
    }

    pub fn cycles_in_degree(&self, n: i64) -> Vec<LaurentElement> {
        self.diff_block(n)
            .nullspace()
            .into_iter()
            .map(|v| self.from_coords(n, &v))
            .collect()
    }

    pub fn boundaries_in_degree(&self, n: i64) -> Vec<LaurentElement> {
        let b = self.diff_block(n - 1);
        let mut span = Span::zero(self.field, b.rows());
        b.columns()
            .into_iter()
            .filter(|c| span.insert(c))
            .map(|c| self.from_coords(n, &c))
            .collect()
    }

    pub fn homology_dim(&self, n: i64) -> usize {
        self.cycles_in_degree(n).len() - self.boundaries_in_degree(n).len()
    }

    /// Inverse of a homogeneous element `r X^k` when `r` is invertible in `R0`.
    pub fn inverse(&self, a: &LaurentElement) -> Option<LaurentElement> {
        let s = a.support();
        let [k] = s.as_slice() else { return None };
        let r = &a.terms[k];
        let l = self.r0.left_mul_matrix(r);
        let rinv = coords_in(&l, self.r0.unit())?;
        if self.r0.mul(&rinv, r) != *self.r0.unit() {
            return None;
        }
        let inv = LaurentElement::monomial(self.sigma_pow(-k).mul_vec(&rinv), -k);
        let one = self.one();
        (self.multiply(a, &inv) == one && self.multiply(&inv, a) == one).then_some(inv)
    }

    /// Graded-central elements of degree `n`: checked against `R0` and `X`,
    /// which generate the algebra together with `X^-1`.
    pub fn graded_center_in_degree(&self, n: i64) -> Vec<LaurentElement> {
        let basis = self.basis_in(n);
        if basis.is_empty() {
            return Vec::new();
        }
        let mut gens: Vec<(i64, LaurentElement)> = (0..self.r0.dim())
            .map(|i| (0, LaurentElement::monomial(unit_vec(self.field, self.r0.dim(), i), 0)))
            .collect();
        gens.push((self.gen_degree, self.x_pow(1)));
        let cols: Vec<Vector> = basis
            .iter()
            .map(|b| {
                let mut col = Vec::new();
                for (deg, g) in &gens {
                    let lhs = self.multiply(b, g);
                    let rhs = self.multiply(g, b).scale(&self.field.one().signed(n * deg));
                    let diff = lhs.add(&rhs.neg());
                    let m = n + deg;
                    col.extend(self.coords_in_degree(m, &diff).expect("homogeneous"));
                }
                col
            })
            .collect();
        let rows = cols.first().map(Vec::len).unwrap_or(0);
        Matrix::from_columns(self.field, rows, &cols)
            .nullspace()
            .into_iter()
            .map(|v| self.from_coords(n, &v))
            .collect()
    }

    /// Solves `d(y) = 1` in degree -1.
    pub fn acyclicity_witness(&self) -> Option<LaurentElement> {
        let block = self.diff_block(-1);
        let target = self.coords_in_degree(0, &self.one())?;
        let (x, _) = block.solve(&target)?;
        Some(self.from_coords(-1, &x))
    }
}

/// The part of a Laurent algebra with degrees in `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct LaurentWindow {
    pub algebra: TwistedLaurentDGA,
    pub lo: i64,
    pub hi: i64,
    /// `(k, i)` stands for `e_i X^k`.
    basis: Vec<(i64, usize)>,
}

pub fn laurent_window(l: &TwistedLaurentDGA, lo: i64, hi: i64) -> Result<LaurentWindow> {
    if hi - lo < 2 {
        return Err(DgError::WindowTooSmall { lo, hi });
    }
    let mut basis = Vec::new();
    for n in lo..=hi {
        if let Some(k) = l.power_in_degree(n) {
            for i in 0..l.r0.dim() {
                basis.push((k, i));
            }
        }
    }
    Ok(LaurentWindow { algebra: l.clone(), lo, hi, basis })
}

impl LaurentWindow {
    pub fn basis(&self) -> &[(i64, usize)] {
        &self.basis
    }

    pub fn contains_degree(&self, n: i64) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    /// Degrees whose cycles and homology are fully determined by the window.
    pub fn interior(&self) -> std::ops::RangeInclusive<i64> {
        (self.lo + 1)..=(self.hi - 1)
    }

    pub fn is_trusted(&self, n: i64) -> bool {
        self.interior().contains(&n)
    }

    fn index(&self, k: i64, i: usize) -> Option<usize> {
        self.basis.iter().position(|&(kk, ii)| kk == k && ii == i)
    }

    /// Window coordinates of an element whose powers all lie in the window.
    pub fn to_window(&self, e: &LaurentElement) -> Option<Vector> {
        let mut v = zero_vec(self.algebra.field, self.basis.len());
        for (k, r) in &e.terms {
            for (i, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                v[self.index(*k, i)?] = c.clone();
            }
        }
        Some(v)
    }

    pub fn from_window(&self, v: &[Scalar]) -> LaurentElement {
        let mut out = LaurentElement::zero();
        let n = self.algebra.r0.dim();
        for (c, &(k, i)) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                out.add_term(k, &vec_scale(c, &unit_vec(self.algebra.field, n, i)));
            }
        }
        out
    }

    /// Cycle dimensions on interior degrees.
    pub fn cycle_dims(&self) -> BTreeMap<i64, usize> {
        self.interior().map(|n| (n, self.algebra.cycles_in_degree(n).len())).collect()
    }

    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        self.interior().map(|n| (n, self.algebra.homology_dim(n))).collect()
    }

    fn element(&self, idx: usize) -> LaurentElement {
        let (k, i) = self.basis[idx];
        LaurentElement::monomial(unit_vec(self.algebra.field, self.algebra.r0.dim(), i), k)
    }
}

impl StructureTable for LaurentWindow {
    fn field(&self) -> FieldSpec {
        self.algebra.field
    }
    fn dim(&self) -> usize {
        self.basis.len()
    }
    fn degree(&self, i: usize) -> i64 {
        self.algebra.degree_of_power(self.basis[i].0)
    }
    fn name(&self, i: usize) -> String {
        let (k, j) = self.basis[i];
        format!("{}*X^{k}", self.algebra.r0.names()[j])
    }
    fn unit(&self) -> Option<Vector> {
        self.to_window(&self.algebra.one())
    }
    fn product(&self, i: usize, j: usize) -> Option<Vector> {
        let p = self.algebra.multiply(&self.element(i), &self.element(j));
        let deg = self.degree(i) + self.degree(j);
        if !self.contains_degree(deg) {
            return None;
        }
        self.to_window(&p)
    }
    fn diff(&self, i: usize) -> Option<Vector> {
        if !self.contains_degree(self.degree(i) + 1) {
            return None;
        }
        self.to_window(&self.algebra.differentiate(&self.element(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dga::algebra::validate_table;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn lau_differential_follows_parity() {
        let l = catalog::lau(Q);
        for k in -6..=6 {
            let d = l.d_x_pow(k);
            if k.rem_euclid(2) == 1 {
                assert_eq!(d, l.x_pow(k - 1), "k = {k}");
            } else {
                assert!(d.is_zero(), "k = {k}");
            }
        }
        assert_eq!(l.differentiate(&l.x_pow(-1)), l.x_pow(-2));
        assert_eq!(l.multiply(&l.x_pow(1), &l.x_pow(-1)), l.one());
    }

    #[test]
    fn windows_validate_and_see_even_cycles() {
        for l in [catalog::lau(Q), catalog::lau2(Q), catalog::lau(FieldSpec::Prime(2))] {
            let w = laurent_window(&l, -4, 4).unwrap();
            let r = validate_table(&w);
            assert!(r.passed(), "{:?}", r.failures);
        }
        let w = laurent_window(&catalog::lau(Q), -4, 4).unwrap();
        for (n, d) in w.cycle_dims() {
            assert_eq!(d, usize::from(n % 2 == 0), "degree {n}");
        }
        let w2 = laurent_window(&catalog::lau2(Q), -4, 4).unwrap();
        for (n, d) in w2.cycle_dims() {
            assert_eq!(d, usize::from(n % 2 == 0));
        }
        assert!(matches!(laurent_window(&catalog::lau(Q), 0, 1), Err(DgError::WindowTooSmall { .. })));
    }

    #[test]
    fn zero_differential_window_has_full_homology() {
        let r0 = crate::catalog::q0(Q);
        let l = TwistedLaurentDGA::new(r0, Matrix::identity(Q, 1), 1, LaurentElement::zero(), vec![]).unwrap();
        let w = laurent_window(&l, -2, 2).unwrap();
        for (_, d) in w.homology_dims() {
            assert_eq!(d, 1);
        }
    }

    #[test]
    fn acyclicity_and_inverses() {
        let l = catalog::lau(Q);
        assert_eq!(l.acyclicity_witness(), Some(l.x_pow(1)));
        assert!(catalog::lau2(Q).acyclicity_witness().is_none());
        assert_eq!(l.inverse(&l.x_pow(3)), Some(l.x_pow(-3)));
    }

    #[test]
    fn graded_center_of_lau_is_even_part() {
        let l = catalog::lau(Q);
        for n in -4..=4 {
            assert_eq!(l.graded_center_in_degree(n).len(), usize::from(n % 2 == 0));
        }
        let l2 = catalog::lau(FieldSpec::Prime(2));
        assert_eq!(l2.graded_center_in_degree(1).len(), 1);
    }

    #[test]
    fn malformed_laurent_data_is_rejected() {
        let r0 = crate::catalog::q0(Q);
        let bad = TwistedLaurentDGA::new(r0.clone(), Matrix::zeros(Q, 1, 1), 1, LaurentElement::zero(), vec![]);
        assert!(bad.is_err());
        let wrong_degree = LaurentElement::monomial(vec![Q.one()], 1);
        assert!(TwistedLaurentDGA::new(r0, Matrix::identity(Q, 1), -1, wrong_degree, vec![]).is_err());
    }
}
