//! Minimal polynomials over Q and irreducibility via reduction mod p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dga::DGAlgebra;
use crate::linalg::scalar::rational_parts;
use crate::linalg::{Matrix, Scalar, Vector};

/// Monic minimal polynomial of `x` (coefficients from the constant term up).
pub fn minimal_polynomial(a: &DGAlgebra, x: &Vector) -> Vec<Scalar> {
    let f = a.field();
    let mut powers: Vec<Vector> = vec![a.unit().clone()];
    loop {
        let next = a.mul(powers.last().expect("nonempty"), x);
        let sys = Matrix::from_columns(f, a.dim(), &powers);
        if let Some((c, _)) = sys.solve(&next) {
            let mut out: Vec<Scalar> = c.into_iter().map(|v| -v).collect();
            out.push(f.one());
            return out;
        }
        powers.push(next);
    }
}

/// Clears denominators and content.
pub fn integer_polynomial(coeffs: &[Scalar]) -> Option<Vec<BigInt>> {
    let parts: Vec<(BigInt, BigInt)> = coeffs.iter().map(rational_parts).collect::<Option<_>>()?;
    let l = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let ints: Vec<BigInt> = parts.iter().map(|(n, d)| n * (&l / d)).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    Some(ints.into_iter().map(|c| if g.is_zero() { c } else { c / &g }).collect())
}

fn eval(coeffs: &[BigInt], r: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * r + BigRational::from_integer(c.clone()))
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// A rational root, `Ok(None)` if there is none, `Err(())` if the search is too large.
pub fn rational_root(coeffs: &[BigInt]) -> Result<Option<BigRational>, ()> {
    if coeffs.len() < 2 {
        return Ok(None);
    }
    if coeffs[0].is_zero() {
        return Ok(Some(BigRational::zero()));
    }
    let num = small_divisors(&coeffs[0]).ok_or(())?;
    let den = small_divisors(coeffs.last().expect("nonempty")).ok_or(())?;
    for a in &num {
        for b in &den {
            for s in [1i64, -1] {
                let r = BigRational::new(BigInt::from(*a) * s, BigInt::from(*b));
                if eval(coeffs, &r).is_zero() {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let m = trim(m.to_vec());
    let lead_inv = inv_mod(*m.last().expect("nonzero modulus"), p);
    while a.len() >= m.len() {
        let c = a.last().expect("nonempty") * lead_inv % p;
        let shift = a.len() - m.len();
        for (i, mi) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * mi % p) % p;
        }
        a = trim(a);
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = poly_rem(&[1], m, p);
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
    let mut v = a.to_vec();
    if v.len() < 2 {
        v.resize(2, 0);
    }
    v[1] = (v[1] + p - 1) % p;
    trim(v)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test over `F_p`; `f` must have degree at least 1.
pub fn irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let frob = |k: usize| {
        let mut h = vec![0, 1];
        for _ in 0..k {
            h = poly_powmod(&h, p, &f, p);
        }
        h
    };
    if !sub_x(&frob(n), p).is_empty() {
        return false;
    }
    prime_factors(n).into_iter().all(|q| {
        let g = poly_gcd(&f, &sub_x(&frob(n / q), p), p);
        g.len() == 1
    })
}

const SMALL_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// A prime modulo which the integer polynomial stays of full degree and is irreducible.
pub fn irreducibility_prime(coeffs: &[BigInt]) -> Option<u64> {
    SMALL_PRIMES.iter().copied().find(|&p| {
        let bp = BigInt::from(p);
        let red: Vec<u64> = coeffs.iter().map(|c| c.mod_floor(&bp).to_u64().expect("small")).collect();
        red.last() != Some(&0) && irreducible_mod_p(&red, p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rabin_small_cases() {
        assert!(irreducible_mod_p(&[1, 1, 1], 2));
        assert!(!irreducible_mod_p(&[1, 0, 1], 2));
        assert!(irreducible_mod_p(&[1, 0, 1], 3));
        assert!(irreducible_mod_p(&[1, 1, 0, 1], 2));
        assert!(!irreducible_mod_p(&[1, 0, 0, 0, 1], 3));
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_root(&ints(&[-2, 0, 1])).unwrap(), None);
        assert_eq!(rational_root(&ints(&[-1, 0, 4])).unwrap().unwrap().to_string(), "1/2");
        assert!(irreducibility_prime(&ints(&[-2, 0, 1])).is_some());
        assert!(irreducibility_prime(&ints(&[1, 0, 0, 0, 1])).is_none());
        assert!(irreducibility_prime(&ints(&[-1, 0, 1])).is_none());
    }
}
