//! gr-division, the regularity condition, and dg-division algebras.

use serde::Serialize;

use crate::dga::{cycles_algebra, graded_center, homology_algebra, CentralSubalgebraWitness, DGAlgebra, LaurentElement};
use crate::enumerate::{homogeneous_count, homogeneous_reps, Budget};
use crate::error::{DgError, Result};
use crate::linalg::matrix::{vec_sub, vec_scale};
use crate::linalg::{FieldSpec, Matrix, Scalar, Vector};

use super::acyclic::{acyclicity_witness, AcyclicityWitness};
use super::ideals::{is_dg_simple_algebra, search_ideals, IdealSearch, Side};
use super::minpoly::{integer_polynomial, irreducibility_prime, minimal_polynomial, rational_root};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrRoute {
    Enumeration,
    NonzeroDegree,
    MinimalPolynomial,
    Structural,
    ZeroAlgebra,
}

#[derive(Clone, Debug)]
pub struct GrDivisionVerdict {
    pub gr_division: bool,
    pub route: GrRoute,
    /// A nonzero homogeneous element without a two-sided inverse.
    pub witness: Option<(i64, Vector)>,
    pub checked: u64,
    pub note: Option<String>,
}

/// Homogeneous two-sided inverse of `x`, if any.
pub fn homogeneous_inverse(g: &DGAlgebra, x: &Vector) -> Option<Vector> {
    let (l, _) = g.left_mul_matrix(x).solve(g.unit())?;
    let (r, _) = g.right_mul_matrix(x).solve(g.unit())?;
    // A left and a right inverse coincide.
    let deg = g.degree_of_vector(x).ok().flatten()?;
    let l = g.space().component(&l, -deg);
    let r = g.space().component(&r, -deg);
    (g.mul(&l, x) == *g.unit() && g.mul(x, &r) == *g.unit()).then_some(l)
}

fn verdict(gr: bool, route: GrRoute, witness: Option<(i64, Vector)>, checked: u64, note: Option<String>) -> GrDivisionVerdict {
    GrDivisionVerdict { gr_division: gr, route, witness, checked, note }
}

/// Decides whether every nonzero homogeneous element of `g` (a graded algebra;
/// its differential is ignored) is invertible.
pub fn is_gr_division(g: &DGAlgebra, budget: &mut Budget) -> Result<GrDivisionVerdict> {
    if g.dim() == 0 {
        return Ok(verdict(false, GrRoute::ZeroAlgebra, None, 0, Some("the zero algebra".into())));
    }
    if let Some(n) = g.space().support().into_iter().find(|&n| n != 0) {
        // Powers of an invertible element of nonzero degree never vanish,
        // which a finite-dimensional algebra cannot accommodate.
        let i = g.space().indices_in(n)[0];
        let x = g.basis_vec(i);
        if homogeneous_inverse(g, &x).is_some() {
            return Err(DgError::Alarm("an element of nonzero degree is invertible in finite dimension".into()));
        }
        return Ok(verdict(false, GrRoute::NonzeroDegree, Some((n, x)), 1, None));
    }
    match g.field() {
        FieldSpec::Prime(_) => gr_division_by_enumeration(g, budget),
        FieldSpec::Rationals => gr_division_by_minpoly(g),
    }
}

fn gr_division_by_enumeration(g: &DGAlgebra, budget: &mut Budget) -> Result<GrDivisionVerdict> {
    budget.precheck(homogeneous_count(g.space())?)?;
    let mut checked = 0;
    for (n, x) in homogeneous_reps(g.space())? {
        budget.charge(1)?;
        checked += 1;
        if homogeneous_inverse(g, &x).is_none() {
            return Ok(verdict(false, GrRoute::Enumeration, Some((n, x)), checked, None));
        }
    }
    Ok(verdict(true, GrRoute::Enumeration, None, checked, None))
}

fn trace_form(g: &DGAlgebra) -> Matrix {
    let f = g.field();
    let n = g.dim();
    let mut t = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let l = g.left_mul_matrix(g.product(i, j));
            let mut tr = f.zero();
            for k in 0..n {
                tr += l.get(k, k);
            }
            t.set(i, j, tr);
        }
    }
    t
}

/// Commutative algebras in degree 0 over Q: reduced (nondegenerate trace form),
/// then a primitive element whose minimal polynomial is tested for irreducibility.
fn gr_division_by_minpoly(g: &DGAlgebra) -> Result<GrDivisionVerdict> {
    let f = g.field();
    let n = g.dim();
    if !g.is_commutative() {
        return Err(DgError::UnsupportedInstance(
            "gr-division over Q is decided only for commutative algebras in degree 0; supply an inverse table instead"
                .into(),
        ));
    }
    let radical = trace_form(g).nullspace();
    if let Some(z) = radical.into_iter().next() {
        return Ok(verdict(false, GrRoute::MinimalPolynomial, Some((0, z)), 0, Some("nilpotent element".into())));
    }
    let mut primitive = None;
    for t in 1..(n * n + 8) as i64 {
        let mut x = vec![f.zero(); n];
        let mut c = f.one();
        for xi in x.iter_mut() {
            *xi = c.clone();
            c = &c * &f.from_i64(t);
        }
        let m = minimal_polynomial(g, &x);
        if m.len() == n + 1 {
            primitive = Some((x, m));
            break;
        }
    }
    let (x, m) = primitive.ok_or_else(|| DgError::UnsupportedInstance("no primitive element found".into()))?;
    let ints = integer_polynomial(&m).expect("rational coefficients");
    if n == 1 {
        return Ok(verdict(true, GrRoute::MinimalPolynomial, None, 0, None));
    }
    match rational_root(&ints) {
        Ok(Some(r)) => {
            let r = Scalar::Rat(r);
            let w = vec_sub(&x, &vec_scale(&r, g.unit()));
            return Ok(verdict(false, GrRoute::MinimalPolynomial, Some((0, w)), 0, Some("rational root".into())));
        }
        Ok(None) if n <= 3 => {
            return Ok(verdict(true, GrRoute::MinimalPolynomial, None, 0, Some("no rational root".into())));
        }
        _ => {}
    }
    match irreducibility_prime(&ints) {
        Some(p) => Ok(verdict(true, GrRoute::MinimalPolynomial, None, 0, Some(format!("irreducible mod {p}")))),
        None => Err(DgError::UnsupportedInstance(
            "could not decide irreducibility of the minimal polynomial; supply an inverse table instead".into(),
        )),
    }
}

/// Checks claimed pairs `(x, x⁻¹)`; any field.
pub fn verify_inverse_table(g: &DGAlgebra, table: &[(Vector, Vector)]) -> bool {
    table.iter().all(|(x, y)| g.mul(x, y) == *g.unit() && g.mul(y, x) == *g.unit())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub holds: Option<bool>,
    pub justification: String,
}

/// Left-regular homogeneous elements coincide with right-regular ones.
pub fn regularity_condition(g: &DGAlgebra) -> RegularityVerdict {
    if g.is_graded_commutative() {
        return RegularityVerdict { holds: Some(true), justification: "graded-commutative".into() };
    }
    RegularityVerdict {
        holds: Some(true),
        justification: "finite-dimensional: an injective multiplication map is bijective".into(),
    }
}

/// Compares left and right regularity of every homogeneous line.
pub fn regularity_by_enumeration(g: &DGAlgebra, budget: &mut Budget) -> Result<Option<(i64, Vector)>> {
    budget.precheck(homogeneous_count(g.space())?)?;
    for (n, x) in homogeneous_reps(g.space())? {
        budget.charge(1)?;
        let left = g.right_mul_matrix(&x).rank() == g.dim();
        let right = g.left_mul_matrix(&x).rank() == g.dim();
        if left != right {
            return Ok(Some((n, x)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct DivisionVerdict {
    pub division: bool,
    pub regularity: RegularityVerdict,
    pub left: Option<IdealSearch>,
    pub right: Option<IdealSearch>,
    pub cycles: GrDivisionVerdict,
    pub notes: Vec<String>,
}

/// Runs the ideal enumeration (prime fields) and the cycles criterion, and
/// raises an alarm if they disagree.
pub fn is_dg_division(a: &DGAlgebra, budget: &mut Budget) -> Result<DivisionVerdict> {
    let z = cycles_algebra(a)?;
    let regularity = regularity_condition(&z.algebra);
    if regularity.holds != Some(true) {
        return Err(DgError::RegularityUndecided(regularity.justification));
    }
    let cycles = is_gr_division(&z.algebra, budget)?;
    let mut notes = Vec::new();
    let (left, right) = if a.field().order().is_some() {
        let l = search_ideals(a, Side::Left, budget)?;
        let r = search_ideals(a, Side::Right, budget)?;
        if l.trivial != cycles.gr_division || r.trivial != cycles.gr_division {
            return Err(DgError::Alarm(format!(
                "ideal enumeration (left {}, right {}) disagrees with the cycles criterion ({})",
                l.trivial, r.trivial, cycles.gr_division
            )));
        }
        (Some(l), Some(r))
    } else {
        notes.push("ideal enumeration needs a prime field; verdict from the cycles criterion".into());
        (None, None)
    };
    Ok(DivisionVerdict { division: cycles.gr_division, regularity, left, right, cycles, notes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferentialCase {
    ZeroDifferential,
    Acyclic,
}

impl DifferentialCase {
    pub fn name(self) -> &'static str {
        match self {
            DifferentialCase::ZeroDifferential => "zero_differential",
            DifferentialCase::Acyclic => "acyclic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclesShape {
    DegreeZeroDivision,
    /// `R0[T, T⁻¹; σ]` with `σ(r) = T r T⁻¹` on the degree-0 cycles.
    TwistedLaurent { generator: LaurentElement, degree: i64, sigma: Matrix, sigma_is_identity: bool },
}

impl CyclesShape {
    pub fn name(&self) -> &'static str {
        match self {
            CyclesShape::DegreeZeroDivision => "degree_zero_division",
            CyclesShape::TwistedLaurent { .. } => "twisted_laurent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DivisionClassification {
    pub case: DifferentialCase,
    pub witness: Option<AcyclicityWitness>,
    pub shape: CyclesShape,
}

pub fn classify_dg_division(a: &DGAlgebra, budget: &mut Budget) -> Result<DivisionClassification> {
    let v = is_dg_division(a, budget)?;
    if !v.division {
        return Err(DgError::Precondition("the algebra is not a dg-division algebra".into()));
    }
    let zero = a.has_zero_differential();
    let witness = acyclicity_witness(a)?;
    let case = match (zero, &witness) {
        (true, None) => DifferentialCase::ZeroDifferential,
        (false, Some(_)) => DifferentialCase::Acyclic,
        (true, Some(_)) => return Err(DgError::Alarm("d = 0 and acyclic at once".into())),
        (false, None) => return Err(DgError::Alarm("dg-division algebra with d != 0 that is not acyclic".into())),
    };
    let z = cycles_algebra(a)?;
    if z.algebra.space().support().into_iter().any(|n| n != 0) {
        return Err(DgError::Alarm("finite-dimensional gr-division cycles outside degree 0".into()));
    }
    Ok(DivisionClassification { case, witness, shape: CyclesShape::DegreeZeroDivision })
}

#[derive(Clone, Debug)]
pub struct HomologyOfDivision {
    pub case: DifferentialCase,
    pub homology_dim: usize,
    /// In the zero-differential case: `H = ker(d) = A`, re-certified gr-division.
    pub equals_cycles: Option<bool>,
    pub gr_division: Option<bool>,
}

pub fn homology_of_division(a: &DGAlgebra, budget: &mut Budget) -> Result<HomologyOfDivision> {
    let c = classify_dg_division(a, budget)?;
    let h = homology_algebra(a)?;
    let homology_dim = h.algebra.dim();
    match c.case {
        DifferentialCase::Acyclic => {
            if homology_dim != 0 {
                return Err(DgError::Alarm("acyclic algebra with nonzero homology".into()));
            }
            Ok(HomologyOfDivision { case: c.case, homology_dim, equals_cycles: None, gr_division: None })
        }
        DifferentialCase::ZeroDifferential => {
            let equals = homology_dim == a.dim() && h.algebra.structure_constants() == a.structure_constants();
            let gr = is_gr_division(&h.algebra, budget)?.gr_division;
            if !equals || !gr {
                return Err(DgError::Alarm("zero-differential dg-division algebra whose homology is not itself".into()));
            }
            Ok(HomologyOfDivision { case: c.case, homology_dim, equals_cycles: Some(equals), gr_division: Some(gr) })
        }
    }
}

#[derive(Clone, Debug)]
pub struct CenterDivisionCheck {
    pub center: CentralSubalgebraWitness,
    pub division: DivisionVerdict,
    /// `None` in characteristic 2.
    pub cycles_even: Option<bool>,
    pub shape: CyclesShape,
}

/// For a dg-simple `A`: `Z_gr(A)` is dg-division with cycles in even degrees.
pub fn graded_center_division_check(a: &DGAlgebra, budget: &mut Budget) -> Result<CenterDivisionCheck> {
    if !is_dg_simple_algebra(a, budget)?.simple {
        return Err(DgError::Precondition("the algebra is not dg-simple".into()));
    }
    center_check_unchecked(a, budget)
}

pub(crate) fn center_check_unchecked(a: &DGAlgebra, budget: &mut Budget) -> Result<CenterDivisionCheck> {
    let center = graded_center(a)?;
    let z = &center.sub.algebra;
    let division = is_dg_division(z, budget)?;
    if !division.division {
        return Err(DgError::Alarm("graded center of a dg-simple algebra is not dg-division".into()));
    }
    let zc = cycles_algebra(z)?;
    let cycles_even = (a.field().characteristic() != 2)
        .then(|| zc.algebra.space().support().into_iter().all(|n| n.rem_euclid(2) == 0));
    if cycles_even == Some(false) {
        return Err(DgError::Alarm("center cycles in odd degree".into()));
    }
    let shape = classify_dg_division(z, budget)?.shape;
    Ok(CenterDivisionCheck { center, division, cycles_even, shape })
}

/// Row-reduction check that the center is closed under `d` and that its
/// cycles span is what the classification reports.
#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn gr_division_examples() {
        let mut b = Budget::default();
        assert!(is_gr_division(&catalog::q0(f3()), &mut b).unwrap().gr_division);
        let dd = catalog::dd(Q);
        let z = cycles_algebra(&dd).unwrap();
        let v = is_gr_division(&z.algebra, &mut b).unwrap();
        assert!(!v.gr_division);
        let (deg, wit) = v.witness.unwrap();
        assert_eq!(deg, -1);
        assert!(z.algebra.left_mul_matrix(&wit).solve(z.algebra.unit()).is_none());
        let m2 = catalog::m2(f3());
        let v = is_gr_division(&cycles_algebra(&m2).unwrap().algebra, &mut b).unwrap();
        assert!(!v.gr_division);
        assert_eq!(v.witness.unwrap().0, 1);
    }

    #[test]
    fn minimal_polynomial_route() {
        let mut b = Budget::default();
        let f = Q;
        // Q(i) = Q[t]/(t² + 1) on the basis 1, t.
        let one = vec![f.one(), f.zero()];
        let t = vec![f.zero(), f.one()];
        let minus_one = vec![f.from_i64(-1), f.zero()];
        let qi = DGAlgebra::new(
            f,
            vec!["one".into(), "t".into()],
            vec![0, 0],
            one.clone(),
            vec![vec![one.clone(), t.clone()], vec![t.clone(), minus_one]],
            Matrix::zeros(f, 2, 2),
        )
        .unwrap();
        let v = is_gr_division(&qi, &mut b).unwrap();
        assert!(v.gr_division && v.route == GrRoute::MinimalPolynomial);
        // Q × Q: t² = 1.
        let split = qi.clone().with_product(1, 1, one.clone());
        let v = is_gr_division(&split, &mut b).unwrap();
        assert!(!v.gr_division);
        let w = v.witness.unwrap().1;
        assert!(split.left_mul_matrix(&w).solve(split.unit()).is_none());
        // Q[t]/(t²).
        let nil = qi.with_product(1, 1, vec![f.zero(), f.zero()]);
        assert!(!is_gr_division(&nil, &mut b).unwrap().gr_division);
    }

    #[test]
    fn division_dual_paths() {
        let mut b = Budget::default();
        let v = is_dg_division(&catalog::dual(f3()), &mut b).unwrap();
        assert!(v.division);
        assert!(v.left.unwrap().trivial && v.right.unwrap().trivial);
        let v = is_dg_division(&catalog::m2(f3()), &mut b).unwrap();
        assert!(!v.division);
        assert!(!v.left.unwrap().trivial);
        let v = is_dg_division(&catalog::dual(Q), &mut b).unwrap();
        assert!(v.division && v.left.is_none());
    }

    #[test]
    fn classification_and_homology() {
        let mut b = Budget::default();
        let c = classify_dg_division(&catalog::q0(Q), &mut b).unwrap();
        assert_eq!(c.case, DifferentialCase::ZeroDifferential);
        let c = classify_dg_division(&catalog::dual(Q), &mut b).unwrap();
        assert_eq!(c.case, DifferentialCase::Acyclic);
        assert_eq!(c.witness.unwrap().y, catalog::dual(Q).basis_vec(1));
        assert_eq!(homology_of_division(&catalog::dual(Q), &mut b).unwrap().homology_dim, 0);
        let h = homology_of_division(&catalog::q0(Q), &mut b).unwrap();
        assert_eq!(h.equals_cycles, Some(true));
        assert!(classify_dg_division(&catalog::m2(Q), &mut b).is_err());
    }

    #[test]
    fn center_checks() {
        let mut b = Budget::default();
        let c = graded_center_division_check(&catalog::m2(f3()), &mut b).unwrap();
        assert_eq!(c.center.sub.algebra.dim(), 1);
        assert_eq!(c.shape, CyclesShape::DegreeZeroDivision);
        let c = graded_center_division_check(&catalog::dual(f3()), &mut b).unwrap();
        assert_eq!(c.center.sub.algebra.dim(), 2);
        assert_eq!(c.cycles_even, Some(true));
        assert!(graded_center_division_check(&catalog::dd(f3()), &mut b).is_err());
    }

    #[test]
    fn regularity() {
        let mut b = Budget::default();
        for a in [catalog::dual(f3()), catalog::m2(f3()), catalog::dd(f3())] {
            assert_eq!(regularity_condition(&a).holds, Some(true));
            assert!(regularity_by_enumeration(&a, &mut b).unwrap().is_none());
        }
        assert_eq!(regularity_condition(&catalog::dual(Q)).justification, "graded-commutative");
    }
}
