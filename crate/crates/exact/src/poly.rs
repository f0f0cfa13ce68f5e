//! Dense univariate polynomials over ℤ and ℚ, and cyclotomic polynomials.
//!
//! Coefficient vectors are stored lowest degree first and kept trimmed
//! (no trailing zeros; the zero polynomial is the empty vector).

use crate::arith::divisors;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer polynomial, lowest degree first.
pub type IntPoly = Vec<BigInt>;
/// Rational polynomial, lowest degree first.
pub type RatPoly = Vec<BigRational>;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Product of two integer polynomials.
pub fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact division of integer polynomials by a monic divisor.
/// Panics if the divisor is not monic or the division leaves a remainder.
pub fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let lead = b.last().expect("division by zero polynomial");
    assert!(lead.is_one(), "divisor must be monic");
    let mut rem: IntPoly = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        assert!(rem.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); rem.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = rem[k + b.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    trim(&mut rem);
    assert!(rem.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

/// The cyclotomic polynomial Φ_k with integer coefficients.
pub fn cyclotomic(k: u64) -> IntPoly {
    assert!(k >= 1);
    // t^k - 1 divided by Φ_d for every proper divisor d of k.
    let mut num = vec![BigInt::zero(); k as usize + 1];
    num[0] = -BigInt::one();
    num[k as usize] = BigInt::one();
    for d in divisors(k) {
        if d < k {
            num = int_div_exact(&num, &cyclotomic(d));
        }
    }
    num
}

/// Convert an integer polynomial to a rational one.
pub fn to_rat(p: &[BigInt]) -> RatPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Sum of two rational polynomials.
pub fn rat_add(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x + y);
    }
    trim(&mut out);
    out
}

/// Difference of two rational polynomials.
pub fn rat_sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let neg: RatPoly = b.iter().map(|c| -c.clone()).collect();
    rat_add(a, &neg)
}

/// Product of two rational polynomials.
pub fn rat_mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of rational polynomial division.
pub fn rat_divmod(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut bb = b.to_vec();
    trim(&mut bb);
    let lead = bb.last().expect("division by zero polynomial").clone();
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < bb.len() {
        return (Vec::new(), rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - bb.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &rem[k + bb.len() - 1] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in bb.iter().enumerate() {
            let t = &c * bj;
            rem[k + j] -= t;
        }
        q[k] = c;
    }
    trim(&mut rem);
    trim(&mut q);
    (q, rem)
}

/// Extended Euclid: returns (g, s) with s·a ≡ g (mod b), g = gcd(a, b) made monic.
pub fn rat_inverse_mod(a: &[BigRational], modulus: &[BigRational]) -> Option<RatPoly> {
    // Invariant: r_i ≡ s_i · a (mod modulus).
    let mut r0: RatPoly = modulus.to_vec();
    let mut s0: RatPoly = Vec::new();
    let mut r1: RatPoly = rat_divmod(a, modulus).1;
    let mut s1: RatPoly = vec![BigRational::one()];
    trim(&mut r0);
    while !r1.is_empty() {
        let (q, r) = rat_divmod(&r0, &r1);
        let s = rat_sub(&s0, &rat_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let inv: RatPoly = s0.iter().map(|x| x / &c).collect();
    Some(rat_divmod(&inv, modulus).1)
}
