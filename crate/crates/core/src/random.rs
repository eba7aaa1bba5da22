//! Seeded random dg-algebras and graded modules of small dimension over `F_p`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::catalog;
use crate::dga::{cycles_algebra, tensor_over_base, validate_dga, DGAlgebra};
use crate::dgmod::{
    direct_sum, end_algebra, quotient_module, regular_module, shift_module, submodule_closure, DGModule,
};
use crate::error::{DgError, Result};
use crate::linalg::matrix::{unit_vec, zero_vec};
use crate::linalg::{FieldSpec, Matrix, Scalar, Vector};

/// Largest total dimension produced.
pub const MAX_DIM: usize = 4;

fn random_scalar<R: Rng>(f: FieldSpec, rng: &mut R) -> Scalar {
    let p = f.order().expect("finite field") as i64;
    f.from_i64(rng.gen_range(0..p))
}

fn random_nonzero<R: Rng>(f: FieldSpec, rng: &mut R) -> Scalar {
    let p = f.order().expect("finite field") as i64;
    f.from_i64(rng.gen_range(1..p))
}

/// Random invertible matrix preserving the grading given by `degrees`.
pub fn random_graded_automorphism<R: Rng>(f: FieldSpec, degrees: &[i64], rng: &mut R) -> Matrix {
    let n = degrees.len();
    loop {
        let mut p = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                if degrees[r] == degrees[c] {
                    p.set(r, c, random_scalar(f, rng));
                }
            }
        }
        if p.inverse().is_some() {
            return p;
        }
    }
}

/// The same algebra on the basis given by the columns of `p`.
pub fn rebase(a: &DGAlgebra, p: &Matrix) -> Result<DGAlgebra> {
    let inv = p.inverse().ok_or_else(|| DgError::Precondition("change of basis is singular".into()))?;
    let n = a.dim();
    let cols = p.columns();
    let mul = (0..n)
        .map(|i| (0..n).map(|j| inv.mul_vec(&a.mul(&cols[i], &cols[j]))).collect())
        .collect();
    let diff = inv.mul(a.diff_matrix()).mul(p);
    DGAlgebra::new(a.field(), a.names().to_vec(), a.degrees().to_vec(), inv.mul_vec(a.unit()), mul, diff)
}

/// `A × B` with componentwise operations.
pub fn direct_product(a: &DGAlgebra, b: &DGAlgebra) -> Result<DGAlgebra> {
    if a.field() != b.field() {
        return Err(DgError::FieldMismatch("direct product over different fields".into()));
    }
    let f = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let lift = |v: &Vector, offset: usize| {
        let mut out = zero_vec(f, n);
        for (k, x) in v.iter().enumerate() {
            out[offset + k] = x.clone();
        }
        out
    };
    let mut mul = vec![vec![zero_vec(f, n); n]; n];
    for i in 0..na {
        for j in 0..na {
            mul[i][j] = lift(a.product(i, j), 0);
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            mul[na + i][na + j] = lift(b.product(i, j), na);
        }
    }
    let mut unit = lift(a.unit(), 0);
    for (k, x) in b.unit().iter().enumerate() {
        unit[na + k] = x.clone();
    }
    let mut diff = Matrix::zeros(f, n, n);
    for r in 0..na {
        for c in 0..na {
            diff.set(r, c, a.diff_matrix().get(r, c).clone());
        }
    }
    for r in 0..nb {
        for c in 0..nb {
            diff.set(na + r, na + c, b.diff_matrix().get(r, c).clone());
        }
    }
    let mut names: Vec<String> = a.names().iter().map(|x| format!("{x}_1")).collect();
    names.extend(b.names().iter().map(|x| format!("{x}_2")));
    let mut degrees = a.degrees().to_vec();
    degrees.extend_from_slice(b.degrees());
    DGAlgebra::new(f, names, degrees, unit, mul, diff)
}

/// `K[x]/(x^n)`, `|x| = g`; for odd `g = -1`, `d(x^k) = c x^{k-1}` on odd `k`.
pub fn truncated_polynomial(f: FieldSpec, n: usize, g: i64, c: Scalar) -> Result<DGAlgebra> {
    let names = (0..n).map(|k| if k == 0 { "one".to_string() } else { format!("x{k}") }).collect();
    let degrees = (0..n as i64).map(|k| k * g).collect();
    let mul = (0..n)
        .map(|i| (0..n).map(|j| if i + j < n { unit_vec(f, n, i + j) } else { zero_vec(f, n) }).collect())
        .collect();
    let mut diff = Matrix::zeros(f, n, n);
    if g == -1 {
        for k in (1..n).step_by(2) {
            diff.set(k - 1, k, c.clone());
        }
    }
    DGAlgebra::new(f, names, degrees, unit_vec(f, n, 0), mul, diff)
}

/// `K[t]/(q)` in degree 0 for monic `q` given by its lower coefficients.
pub fn monogenic(f: FieldSpec, lower: &[Scalar]) -> Result<DGAlgebra> {
    let n = lower.len();
    let names = (0..n).map(|k| if k == 0 { "one".to_string() } else { format!("t{k}") }).collect();
    let mut powers: Vec<Vector> = (0..n).map(|k| unit_vec(f, n, k)).collect();
    for _ in n..2 * n {
        let last = powers.last().expect("nonempty").clone();
        let mut next = zero_vec(f, n);
        for k in 1..n {
            next[k] = last[k - 1].clone();
        }
        for k in 0..n {
            next[k] = next[k].clone() - last[n - 1].clone() * lower[k].clone();
        }
        powers.push(next);
    }
    let mul = (0..n).map(|i| (0..n).map(|j| powers[i + j].clone()).collect()).collect();
    DGAlgebra::new(f, names, vec![0; n], unit_vec(f, n, 0), mul, Matrix::zeros(f, n, n))
}

/// `End_K(V)` for a random complex `V` of dimension 1 or 2.
pub fn random_end_of_complex<R: Rng>(f: FieldSpec, rng: &mut R) -> Result<DGAlgebra> {
    let base = catalog::q0(f);
    let dim = rng.gen_range(1..=2);
    let degrees: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
    let mut delta = Matrix::zeros(f, dim, dim);
    if dim == 2 {
        if degrees[1] == degrees[0] + 1 {
            delta.set(1, 0, random_scalar(f, rng));
        } else if degrees[0] == degrees[1] + 1 {
            delta.set(0, 1, random_scalar(f, rng));
        }
    }
    let names = (0..dim).map(|i| format!("v{i}")).collect();
    let v = DGModule::new(base, names, degrees, vec![Matrix::identity(f, dim)], delta)?;
    end_algebra(&v)
}

fn leaf<R: Rng>(f: FieldSpec, rng: &mut R, max_dim: usize) -> Result<(String, DGAlgebra)> {
    loop {
        let choice = rng.gen_range(0..6);
        let out = match choice {
            0 => {
                let n = rng.gen_range(1..=max_dim);
                let g = *[-2i64, -1, 0, 1, 2].choose(rng).expect("nonempty");
                let c = if g == -1 && n % 2 == 0 { random_scalar(f, rng) } else { f.zero() };
                ("truncated", truncated_polynomial(f, n, g, c)?)
            }
            1 if max_dim >= 2 => {
                let n = rng.gen_range(2..=max_dim);
                let lower: Vec<Scalar> = (0..n).map(|_| random_scalar(f, rng)).collect();
                ("monogenic", monogenic(f, &lower)?)
            }
            2 if max_dim >= 4 => ("end", random_end_of_complex(f, rng)?),
            3 if max_dim >= 2 => ("dual", catalog::dual(f)),
            4 if max_dim >= 4 => ("m2", catalog::m2(f)),
            5 if max_dim >= 4 => ("dd", catalog::dd(f)),
            _ => continue,
        };
        if out.1.dim() <= max_dim {
            return Ok((out.0.to_string(), out.1));
        }
    }
}

/// A random valid dg-algebra of dimension at most [`MAX_DIM`], with a family label.
pub fn random_dga<R: Rng>(f: FieldSpec, rng: &mut R) -> Result<(String, DGAlgebra)> {
    let (label, a) = match rng.gen_range(0..10) {
        0 | 1 => {
            let (la, a) = leaf(f, rng, 2)?;
            let (lb, b) = leaf(f, rng, MAX_DIM - a.dim())?;
            (format!("{la}x{lb}"), direct_product(&a, &b)?)
        }
        2 | 3 => {
            let (la, a) = leaf(f, rng, 2)?;
            let (lb, b) = leaf(f, rng, MAX_DIM / a.dim())?;
            (format!("{la}*{lb}"), tensor_over_base(&a, &b)?)
        }
        4 => {
            let (l, a) = leaf(f, rng, MAX_DIM)?;
            (format!("Z({l})"), cycles_algebra(&a)?.algebra)
        }
        _ => leaf(f, rng, MAX_DIM)?,
    };
    let p = random_graded_automorphism(f, a.degrees(), rng);
    let a = rebase(&a, &p)?;
    let report = validate_dga(&a);
    if !report.passed() {
        return Err(DgError::Alarm(format!("random generator produced an invalid algebra ({label})")));
    }
    Ok((label, a))
}

/// `count` random dg-algebras over `f`.
pub fn population<R: Rng>(f: FieldSpec, count: usize, rng: &mut R) -> Result<Vec<(String, DGAlgebra)>> {
    (0..count).map(|_| random_dga(f, rng)).collect()
}

/// A random graded module with zero differential over an algebra with `d = 0`:
/// a sum of shifted free modules and cyclic quotients.
pub fn random_graded_module<R: Rng>(c: &DGAlgebra, rng: &mut R) -> Result<DGModule> {
    if !c.has_zero_differential() {
        return Err(DgError::Precondition("graded modules need an algebra with zero differential".into()));
    }
    let f = c.field();
    let reg = regular_module(c);
    let pieces = rng.gen_range(1..=2);
    let mut out: Option<DGModule> = None;
    for _ in 0..pieces {
        let piece = loop {
            let base = if rng.gen_bool(0.5) {
                reg.clone()
            } else {
                let degree = *c.degrees().choose(rng).expect("nonzero algebra");
                let idx = c.space().indices_in(degree);
                let mut v = zero_vec(f, c.dim());
                for &i in &idx {
                    v[i] = random_scalar(f, rng);
                }
                if v.iter().all(|x| x.is_zero()) {
                    v[idx[0]] = random_nonzero(f, rng);
                }
                let carrier = submodule_closure(&reg, &[v])?;
                let (q, _) = quotient_module(&reg, &carrier)?;
                if q.dim() == 0 {
                    continue;
                }
                q
            };
            break shift_module(&base, rng.gen_range(-2..=2));
        };
        out = Some(match out {
            None => piece,
            Some(m) => direct_sum(&m, &piece)?,
        });
    }
    Ok(out.expect("at least one piece"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn population_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3] {
            let f = FieldSpec::prime(p).unwrap();
            for (_, a) in population(f, 60, &mut rng).unwrap() {
                assert!(a.dim() <= MAX_DIM);
                assert!(validate_dga(&a).passed());
            }
        }
    }

    #[test]
    fn rebase_round_trip() {
        let f = FieldSpec::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = catalog::m2(f);
        let p = random_graded_automorphism(f, a.degrees(), &mut rng);
        let b = rebase(&a, &p).unwrap();
        assert!(validate_dga(&b).passed());
        let back = rebase(&b, &p.inverse().unwrap()).unwrap();
        assert_eq!(back.structure_constants(), a.structure_constants());
    }

    #[test]
    fn monogenic_fields() {
        let f = FieldSpec::prime(3).unwrap();
        let a = monogenic(f, &[f.one(), f.zero()]).unwrap();
        assert!(validate_dga(&a).passed());
        let t = a.basis_vec(1);
        assert_eq!(a.mul(&t, &t), vec![f.from_i64(-1), f.zero()]);
    }

    #[test]
    fn graded_modules() {
        let f = FieldSpec::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = cycles_algebra(&catalog::m2(f)).unwrap().algebra;
        for _ in 0..10 {
            let n = random_graded_module(&c, &mut rng).unwrap();
            assert!(crate::dgmod::validate_module(&n).passed());
        }
    }
}
