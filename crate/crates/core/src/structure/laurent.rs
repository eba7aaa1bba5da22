//! Structural answers for twisted Laurent dg-algebras, with window checks.

use std::collections::BTreeMap;

use crate::dga::{LaurentElement, LaurentWindow, TwistedLaurentDGA};
use crate::enumerate::Budget;
use crate::error::{DgError, Result};
use crate::linalg::{Matrix, Vector};

use super::division::{
    is_gr_division, CyclesShape, DifferentialCase, DivisionVerdict, GrDivisionVerdict, GrRoute, RegularityVerdict,
};

#[derive(Clone, Debug)]
pub struct LaurentAcyclicity {
    pub acyclic: bool,
    pub witness: Option<LaurentElement>,
    /// Interior degrees only.
    pub homology_dims: BTreeMap<i64, usize>,
}

pub fn is_acyclic_laurent(w: &LaurentWindow) -> LaurentAcyclicity {
    let witness = w.algebra.acyclicity_witness();
    LaurentAcyclicity { acyclic: witness.is_some(), witness, homology_dims: w.homology_dims() }
}

/// Every homogeneous element is `r X^k`, invertible iff `r` is; inverses of
/// cycles are cycles. So the cycles are gr-division when `R0` is a division algebra.
pub fn is_gr_division_laurent_cycles(l: &TwistedLaurentDGA, budget: &mut Budget) -> Result<GrDivisionVerdict> {
    let r0 = is_gr_division(l.r0(), budget)?;
    if r0.gr_division {
        return Ok(GrDivisionVerdict {
            gr_division: true,
            route: GrRoute::Structural,
            witness: None,
            checked: r0.checked,
            note: Some("R0 is a division algebra and sigma is invertible".into()),
        });
    }
    if l.dr0().iter().all(LaurentElement::is_zero) {
        return Ok(GrDivisionVerdict {
            gr_division: false,
            route: GrRoute::Structural,
            witness: r0.witness,
            checked: r0.checked,
            note: Some("a non-invertible cycle of R0".into()),
        });
    }
    Err(DgError::UnsupportedInstance("R0 is not a division algebra and d is nonzero on R0".into()))
}

/// Graded commutativity of the cycles on the interior of the window.
pub fn cycles_commute_on_window(w: &LaurentWindow) -> bool {
    let l = &w.algebra;
    let cycles: Vec<(i64, LaurentElement)> =
        w.interior().flat_map(|n| l.cycles_in_degree(n).into_iter().map(move |c| (n, c))).collect();
    cycles.iter().all(|(n, a)| {
        cycles.iter().all(|(m, b)| {
            let lhs = l.multiply(a, b);
            let rhs = l.multiply(b, a).scale(&l.field().one().signed(n * m));
            lhs == rhs
        })
    })
}

pub fn regularity_laurent(w: &LaurentWindow, budget: &mut Budget) -> Result<RegularityVerdict> {
    if is_gr_division(w.algebra.r0(), budget)?.gr_division {
        return Ok(RegularityVerdict {
            holds: Some(true),
            justification: "every nonzero homogeneous cycle is invertible".into(),
        });
    }
    if cycles_commute_on_window(w) {
        return Ok(RegularityVerdict {
            holds: Some(true),
            justification: "graded-commutative (checked on the window)".into(),
        });
    }
    Ok(RegularityVerdict { holds: None, justification: "neither finite-dimensional nor graded-commutative".into() })
}

pub fn is_dg_division_laurent(w: &LaurentWindow, budget: &mut Budget) -> Result<DivisionVerdict> {
    let regularity = regularity_laurent(w, budget)?;
    if regularity.holds != Some(true) {
        return Err(DgError::RegularityUndecided(regularity.justification));
    }
    let cycles = is_gr_division_laurent_cycles(&w.algebra, budget)?;
    Ok(DivisionVerdict {
        division: cycles.gr_division,
        regularity,
        left: None,
        right: None,
        cycles,
        notes: vec!["infinite-dimensional: verdict from the cycles criterion".into()],
    })
}

#[derive(Clone, Debug)]
pub struct LaurentClassification {
    pub case: DifferentialCase,
    pub witness: Option<LaurentElement>,
    pub shape: CyclesShape,
}

/// The invertible cycle of least positive degree (first basis cycle in that
/// degree) and conjugation by it on the degree-0 cycles.
pub fn classify_laurent(w: &LaurentWindow, budget: &mut Budget) -> Result<LaurentClassification> {
    let v = is_dg_division_laurent(w, budget)?;
    if !v.division {
        return Err(DgError::Precondition("the algebra is not a dg-division algebra".into()));
    }
    let l = &w.algebra;
    let witness = l.acyclicity_witness();
    let case = match (l.has_zero_differential(), &witness) {
        (true, None) => DifferentialCase::ZeroDifferential,
        (false, Some(_)) => DifferentialCase::Acyclic,
        (true, Some(_)) => return Err(DgError::Alarm("d = 0 and acyclic at once".into())),
        (false, None) => return Err(DgError::Alarm("dg-division algebra with d != 0 that is not acyclic".into())),
    };
    let positive = (1..=w.hi - 1).find(|&n| !l.cycles_in_degree(n).is_empty());
    let shape = match positive {
        None => CyclesShape::DegreeZeroDivision,
        Some(n) => {
            let t = l.cycles_in_degree(n).into_iter().next().expect("nonempty");
            let t_inv = l.inverse(&t).ok_or_else(|| DgError::Alarm("cycle of a dg-division algebra not invertible".into()))?;
            if !l.differentiate(&t_inv).is_zero() {
                return Err(DgError::Alarm("inverse of a cycle is not a cycle".into()));
            }
            let zero_cycles = l.cycles_in_degree(0);
            let coords = |e: &LaurentElement| l.coords_in_degree(0, e).expect("degree 0");
            let basis: Vec<Vector> = zero_cycles.iter().map(coords).collect();
            let dim = basis.first().map(Vec::len).unwrap_or(0);
            let basis_m = Matrix::from_columns(l.field(), dim, &basis);
            let mut cols = Vec::new();
            for r in &zero_cycles {
                let s = l.multiply(&l.multiply(&t, r), &t_inv);
                let lhs = l.multiply(&t, r);
                let rhs = l.multiply(&s, &t);
                if lhs != rhs {
                    return Err(DgError::Alarm("T r != sigma(r) T".into()));
                }
                let c = crate::dga::constructions::coords_in(&basis_m, &coords(&s))
                    .ok_or_else(|| DgError::Alarm("conjugation leaves the degree-0 cycles".into()))?;
                cols.push(c);
            }
            let sigma = Matrix::from_columns(l.field(), zero_cycles.len(), &cols);
            let sigma_is_identity = sigma == Matrix::identity(l.field(), zero_cycles.len());
            CyclesShape::TwistedLaurent { generator: t, degree: n, sigma, sigma_is_identity }
        }
    };
    Ok(LaurentClassification { case, witness, shape })
}

#[derive(Clone, Debug)]
pub struct LaurentHomology {
    pub case: DifferentialCase,
    pub homology_dims: BTreeMap<i64, usize>,
    pub cycles_dims: BTreeMap<i64, usize>,
    pub gr_division: Option<bool>,
}

pub fn homology_of_division_laurent(w: &LaurentWindow, budget: &mut Budget) -> Result<LaurentHomology> {
    let c = classify_laurent(w, budget)?;
    let homology_dims = w.homology_dims();
    let cycles_dims = w.cycle_dims();
    let gr_division = match c.case {
        DifferentialCase::Acyclic => {
            if homology_dims.values().any(|&d| d != 0) {
                return Err(DgError::Alarm("acyclic algebra with nonzero homology".into()));
            }
            None
        }
        DifferentialCase::ZeroDifferential => {
            if homology_dims != cycles_dims {
                return Err(DgError::Alarm("H differs from ker(d) although d = 0".into()));
            }
            Some(is_gr_division_laurent_cycles(&w.algebra, budget)?.gr_division)
        }
    };
    Ok(LaurentHomology { case: c.case, homology_dims, cycles_dims, gr_division })
}

#[derive(Clone, Debug)]
pub struct LaurentCenterCheck {
    /// Interior degree -> dimension of the graded center there.
    pub center_dims: BTreeMap<i64, usize>,
    pub center_cycle_dims: BTreeMap<i64, usize>,
    pub cycles_even: Option<bool>,
    pub d_closed: bool,
}

/// `Z_gr` on the window; the algebra is dg-division, hence dg-simple.
pub fn graded_center_check_laurent(w: &LaurentWindow, budget: &mut Budget) -> Result<LaurentCenterCheck> {
    if !is_dg_division_laurent(w, budget)?.division {
        return Err(DgError::Precondition("dg-simplicity is certified here only through dg-division".into()));
    }
    let l = &w.algebra;
    let mut center_dims = BTreeMap::new();
    let mut center_cycle_dims = BTreeMap::new();
    let mut d_closed = true;
    for n in w.interior() {
        let z = l.graded_center_in_degree(n);
        center_dims.insert(n, z.len());
        let z_up = l.graded_center_in_degree(n + 1);
        let up: Vec<Vector> = z_up.iter().filter_map(|e| l.coords_in_degree(n + 1, e)).collect();
        let dim_up = l.basis_in(n + 1).len();
        let span = crate::linalg::Span::from_vectors(l.field(), dim_up, &up);
        let mut cycles = 0;
        for e in &z {
            let de = l.differentiate(e);
            if de.is_zero() {
                cycles += 1;
            } else if w.is_trusted(n + 1) && !span.contains(&l.coords_in_degree(n + 1, &de).expect("homogeneous")) {
                d_closed = false;
            }
        }
        center_cycle_dims.insert(n, cycles);
    }
    let cycles_even = (l.field().characteristic() != 2)
        .then(|| center_cycle_dims.iter().all(|(n, &c)| c == 0 || n.rem_euclid(2) == 0));
    if cycles_even == Some(false) {
        return Err(DgError::Alarm("center cycles in odd degree".into()));
    }
    Ok(LaurentCenterCheck { center_dims, center_cycle_dims, cycles_even, d_closed })
}
