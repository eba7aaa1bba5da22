//! Projective enumeration of homogeneous vectors over prime fields, with a budget.

use crate::error::{DgError, Result};
use crate::linalg::{FieldSpec, GradedSpace, Scalar, Vector};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Caps the number of closures an enumeration may perform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used
    }

    /// Fails without charging if `needed` closures would exceed what is left.
    pub fn precheck(&self, needed: u128) -> Result<()> {
        if needed > self.remaining() as u128 {
            return Err(DgError::BudgetExceeded { needed: needed + self.used as u128, budget: self.limit });
        }
        Ok(())
    }

    pub fn charge(&mut self, n: u64) -> Result<()> {
        self.precheck(n as u128)?;
        self.used += n;
        Ok(())
    }
}

fn prime_of(f: FieldSpec) -> Result<u64> {
    f.order().ok_or_else(|| {
        DgError::UnsupportedField("enumeration needs a prime field; over Q use certificate verification".into())
    })
}

/// Number of lines in `F_p^dim`.
pub fn projective_count(f: FieldSpec, dim: usize) -> Result<u128> {
    let p = prime_of(f)? as u128;
    Ok((0..dim).map(|_| p).product::<u128>().saturating_sub(1) / (p - 1))
}

/// Lines of homogeneous vectors summed over all degrees of `space`.
pub fn homogeneous_count(space: &GradedSpace) -> Result<u128> {
    let f = space.field();
    let mut total = 0u128;
    for n in space.support() {
        total += projective_count(f, space.dim_in(n))?;
    }
    Ok(total)
}

/// Vectors of `F_p^dim` whose first nonzero coordinate is 1: by position of
/// that coordinate, then counting in base `p` with the last coordinate fastest.
pub fn projective_reps(f: FieldSpec, dim: usize) -> Result<ProjectiveReps> {
    let elements = f.elements().ok_or_else(|| DgError::UnsupportedField("not a prime field".into()))?;
    prime_of(f)?;
    Ok(ProjectiveReps { elements, dim, lead: 0, digits: vec![0; dim.saturating_sub(1)], done: dim == 0 })
}

#[derive(Clone, Debug)]
pub struct ProjectiveReps {
    elements: Vec<Scalar>,
    dim: usize,
    lead: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for ProjectiveReps {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        if self.done {
            return None;
        }
        let zero = self.elements[0].clone();
        let mut v = vec![zero; self.dim];
        v[self.lead] = self.elements[1].clone();
        let tail = self.dim - self.lead - 1;
        for (k, &d) in self.digits[..tail].iter().enumerate() {
            v[self.lead + 1 + k] = self.elements[d].clone();
        }
        let p = self.elements.len();
        let mut k = tail;
        loop {
            if k == 0 {
                self.lead += 1;
                if self.lead == self.dim {
                    self.done = true;
                }
                self.digits.iter_mut().for_each(|d| *d = 0);
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < p {
                break;
            }
            self.digits[k] = 0;
        }
        Some(v)
    }
}

/// `(degree, global vector)` for every homogeneous line, degrees ascending.
pub fn homogeneous_reps(space: &GradedSpace) -> Result<impl Iterator<Item = (i64, Vector)> + '_> {
    let f = space.field();
    prime_of(f)?;
    let mut parts = Vec::new();
    for n in space.support() {
        let reps = projective_reps(f, space.dim_in(n))?;
        parts.push(reps.map(move |local| (n, space.embed_component(n, &local))));
    }
    Ok(parts.into_iter().flatten())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        for p in [2u32, 3, 5] {
            let f = FieldSpec::prime(p).unwrap();
            for dim in 0..4 {
                let reps: Vec<Vector> = projective_reps(f, dim).unwrap().collect();
                assert_eq!(reps.len() as u128, projective_count(f, dim).unwrap());
                for (i, a) in reps.iter().enumerate() {
                    assert!(a.iter().find(|x| !x.is_zero()).unwrap().is_one());
                    assert!(!reps[i + 1..].contains(a));
                }
            }
        }
    }

    #[test]
    fn order_is_fixed() {
        let f = FieldSpec::prime(3).unwrap();
        let reps: Vec<Vec<String>> = projective_reps(f, 2)
            .unwrap()
            .map(|v| v.iter().map(|x| x.to_exact_string()).collect())
            .collect();
        assert_eq!(reps.len(), 4);
        assert_eq!(reps[0], vec!["1 mod 3", "0 mod 3"]);
        assert_eq!(reps[3], vec!["0 mod 3", "1 mod 3"]);
    }

    #[test]
    fn rationals_refused() {
        assert!(matches!(projective_reps(FieldSpec::Rationals, 2), Err(DgError::UnsupportedField(_))));
    }

    #[test]
    fn budget() {
        let mut b = Budget::new(10);
        b.charge(7).unwrap();
        assert!(matches!(b.charge(4), Err(DgError::BudgetExceeded { needed: 11, budget: 10 })));
        assert_eq!(b.used(), 7);
    }
}
