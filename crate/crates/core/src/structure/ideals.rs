//! Dg-ideals, simplicity, primeness and primitivity by exhaustive enumeration.

use std::collections::VecDeque;

use serde::Serialize;

use crate::dga::DGAlgebra;
use crate::dgmod::{annihilator, regular_module, submodule, submodule_closure, DGModule};
use crate::enumerate::{homogeneous_count, homogeneous_reps, Budget};
use crate::error::{DgError, Result};
use crate::linalg::matrix::is_zero_vec;
use crate::linalg::{GradedSubspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "twosided",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DGIdeal {
    pub side: Side,
    pub carrier: GradedSubspace,
}

impl DGIdeal {
    pub fn is_proper(&self) -> bool {
        !self.carrier.is_full()
    }
}

/// Smallest `d`-closed ideal on `side` containing `elements`.
pub fn dg_ideal_generate(a: &DGAlgebra, elements: &[Vector], side: Side) -> Result<DGIdeal> {
    let mut carrier = GradedSubspace::zero(a.space().clone());
    let mut queue: VecDeque<Vector> = VecDeque::new();
    for e in elements {
        if a.degree_of_vector(e)?.is_none() && !is_zero_vec(e) {
            return Err(DgError::NotHomogeneous);
        }
        queue.push_back(e.clone());
    }
    while let Some(v) = queue.pop_front() {
        if is_zero_vec(&v) || !carrier.insert(&v)? {
            continue;
        }
        queue.push_back(a.d(&v));
        for i in 0..a.dim() {
            let e = a.basis_vec(i);
            if side != Side::Right {
                queue.push_back(a.mul(&e, &v));
            }
            if side != Side::Left {
                queue.push_back(a.mul(&v, &e));
            }
        }
    }
    Ok(DGIdeal { side, carrier })
}

/// Whether `carrier` is a `d`-closed ideal on `side`.
pub fn is_dg_ideal(a: &DGAlgebra, carrier: &GradedSubspace, side: Side) -> bool {
    carrier.basis().iter().all(|v| {
        carrier.contains(&a.d(v))
            && (0..a.dim()).all(|i| {
                let e = a.basis_vec(i);
                (side == Side::Right || carrier.contains(&a.mul(&e, v)))
                    && (side == Side::Left || carrier.contains(&a.mul(v, &e)))
            })
    })
}

/// A homogeneous generator whose closure is proper.
#[derive(Clone, Debug)]
pub struct ProperWitness {
    pub degree: i64,
    pub generator: Vector,
    pub carrier: GradedSubspace,
}

/// Outcome of "every nonzero homogeneous element generates everything".
#[derive(Clone, Debug)]
pub struct IdealSearch {
    pub side: Side,
    pub trivial: bool,
    pub witness: Option<ProperWitness>,
    pub checked: u64,
}

/// Enumerates projective representatives; the first proper closure is the witness.
pub fn search_ideals(a: &DGAlgebra, side: Side, budget: &mut Budget) -> Result<IdealSearch> {
    budget.precheck(homogeneous_count(a.space())?)?;
    let mut checked = 0;
    for (degree, g) in homogeneous_reps(a.space())? {
        budget.charge(1)?;
        checked += 1;
        let ideal = dg_ideal_generate(a, &[g.clone()], side)?;
        if ideal.is_proper() {
            return Ok(IdealSearch {
                side,
                trivial: false,
                witness: Some(ProperWitness { degree, generator: g, carrier: ideal.carrier }),
                checked,
            });
        }
    }
    Ok(IdealSearch { side, trivial: true, witness: None, checked })
}

#[derive(Clone, Debug)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub witness: Option<ProperWitness>,
    pub checked: u64,
}

pub fn is_dg_simple_algebra(a: &DGAlgebra, budget: &mut Budget) -> Result<SimplicityVerdict> {
    if a.dim() == 0 {
        return Ok(SimplicityVerdict { simple: false, witness: None, checked: 0 });
    }
    let s = search_ideals(a, Side::TwoSided, budget)?;
    Ok(SimplicityVerdict { simple: s.trivial, witness: s.witness, checked: s.checked })
}

/// Checks a claimed proper nonzero dg-ideal; usable over any field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCertificate {
    pub is_dg_ideal: bool,
    pub nonzero: bool,
    pub proper: bool,
}

impl IdealCertificate {
    pub fn refutes_simplicity(&self) -> bool {
        self.is_dg_ideal && self.nonzero && self.proper
    }
}

pub fn verify_ideal_certificate(a: &DGAlgebra, carrier: &GradedSubspace, side: Side) -> IdealCertificate {
    IdealCertificate {
        is_dg_ideal: is_dg_ideal(a, carrier, side),
        nonzero: !carrier.is_zero(),
        proper: !carrier.is_full(),
    }
}

#[derive(Clone, Debug)]
pub struct PrimeWitness {
    pub a: (i64, Vector),
    pub b: (i64, Vector),
    pub ideal_a: GradedSubspace,
    pub ideal_b: GradedSubspace,
}

#[derive(Clone, Debug)]
pub struct PrimeVerdict {
    pub prime: bool,
    pub witness: Option<PrimeWitness>,
    pub distinct_ideals: usize,
}

fn product_vanishes(a: &DGAlgebra, i: &GradedSubspace, j: &GradedSubspace) -> bool {
    i.basis().iter().all(|x| j.basis().iter().all(|y| is_zero_vec(&a.mul(x, y))))
}

/// Two-sided dg-ideals generated by single homogeneous elements, tested pairwise.
pub fn is_dg_prime(a: &DGAlgebra, budget: &mut Budget) -> Result<PrimeVerdict> {
    budget.precheck(homogeneous_count(a.space())?)?;
    let mut ideals: Vec<((i64, Vector), GradedSubspace)> = Vec::new();
    for (degree, g) in homogeneous_reps(a.space())? {
        budget.charge(1)?;
        let ideal = dg_ideal_generate(a, &[g.clone()], Side::TwoSided)?.carrier;
        if !ideals.iter().any(|(_, c)| c.equals(&ideal)) {
            ideals.push(((degree, g), ideal));
        }
    }
    for (ga, ia) in &ideals {
        for (gb, ib) in &ideals {
            if product_vanishes(a, ia, ib) {
                return Ok(PrimeVerdict {
                    prime: false,
                    witness: Some(PrimeWitness {
                        a: ga.clone(),
                        b: gb.clone(),
                        ideal_a: ia.clone(),
                        ideal_b: ib.clone(),
                    }),
                    distinct_ideals: ideals.len(),
                });
            }
        }
    }
    Ok(PrimeVerdict { prime: a.dim() > 0, witness: None, distinct_ideals: ideals.len() })
}

#[derive(Clone, Debug)]
pub struct ModuleSimplicity {
    pub simple: bool,
    pub witness: Option<ProperWitness>,
    pub checked: u64,
}

/// `M` is dg-simple iff every nonzero homogeneous vector generates `M`.
pub fn is_dg_simple_module(m: &DGModule, budget: &mut Budget) -> Result<ModuleSimplicity> {
    if m.dim() == 0 {
        return Ok(ModuleSimplicity { simple: false, witness: None, checked: 0 });
    }
    budget.precheck(homogeneous_count(m.space())?)?;
    let mut checked = 0;
    for (degree, v) in homogeneous_reps(m.space())? {
        budget.charge(1)?;
        checked += 1;
        let c = submodule_closure(m, &[v.clone()])?;
        if !c.is_full() {
            return Ok(ModuleSimplicity {
                simple: false,
                witness: Some(ProperWitness { degree, generator: v, carrier: c }),
                checked,
            });
        }
    }
    Ok(ModuleSimplicity { simple: true, witness: None, checked })
}

/// Inclusion-minimal closures of homogeneous vectors, in order of discovery.
pub fn minimal_cyclic_submodules(m: &DGModule, budget: &mut Budget) -> Result<Vec<(Vector, GradedSubspace)>> {
    budget.precheck(homogeneous_count(m.space())?)?;
    let mut all: Vec<(Vector, GradedSubspace)> = Vec::new();
    for (_, v) in homogeneous_reps(m.space())? {
        budget.charge(1)?;
        let c = submodule_closure(m, &[v.clone()])?;
        if !all.iter().any(|(_, x)| x.equals(&c)) {
            all.push((v, c));
        }
    }
    let minimal = all
        .iter()
        .filter(|(_, c)| !all.iter().any(|(_, o)| o.dim() < c.dim() && c.contains_subspace(o)))
        .cloned()
        .collect();
    Ok(minimal)
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub generator: Vector,
    pub carrier: GradedSubspace,
    pub faithful: bool,
    pub annihilator_witness: Option<Vector>,
}

#[derive(Clone, Debug)]
pub struct PrimitivityVerdict {
    pub primitive: bool,
    pub witness: Option<DGModule>,
    pub candidates: Vec<Candidate>,
}

/// Searches the minimal dg-submodules of the regular module for a faithful one.
pub fn find_simple_faithful(a: &DGAlgebra, budget: &mut Budget) -> Result<PrimitivityVerdict> {
    let reg = regular_module(a);
    let mut candidates = Vec::new();
    for (g, c) in minimal_cyclic_submodules(&reg, budget)? {
        let (s, _) = submodule(&reg, &c)?;
        let ann = annihilator(&s)?;
        let faithful = ann.ideal.is_zero();
        let witness = ann.ideal.graded_basis().into_iter().map(|(_, v)| v).next();
        candidates.push(Candidate { generator: g, carrier: c, faithful, annihilator_witness: witness });
        if faithful {
            return Ok(PrimitivityVerdict { primitive: true, witness: Some(s), candidates });
        }
    }
    Ok(PrimitivityVerdict { primitive: false, witness: None, candidates })
}
