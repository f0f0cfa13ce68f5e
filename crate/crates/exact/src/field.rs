//! Exact fields used throughout the workspace.
//!
//! Elements carry enough context (modulus, radicand, cyclotomic order) to
//! produce the zero and one of their own field, so generic linear algebra
//! only ever needs a prototype element.

use crate::arith::{is_prime, totient};
use crate::poly::{cyclotomic, rat_divmod, rat_inverse_mod, rat_mul, to_rat, RatPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::Arc;

/// Exact field arithmetic with prototype-based constants.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    /// The additive identity of the field `self` lives in.
    fn zero_like(&self) -> Self;
    /// The multiplicative identity of the field `self` lives in.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Image of an integer under the canonical ring map ℤ → field.
    fn from_int(&self, v: &BigInt) -> Self;

    fn from_i64(&self, v: i64) -> Self {
        self.from_int(&BigInt::from(v))
    }
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// Rational numbers.
pub type Rational = BigRational;

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(&self, v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
}

/// Shorthand for a rational from a numerator and denominator.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Element of the prime field 𝔽_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    /// Construct `v mod p`; `p` must be prime (checked once by [`Fp::checked_modulus`]).
    pub fn new(v: i64, p: u64) -> Self {
        let pi = p as i64;
        Fp { v: v.rem_euclid(pi) as u64, p }
    }
    /// Validate that `p` is prime and return a zero element of 𝔽_p.
    pub fn checked_modulus(p: u64) -> Option<Self> {
        if is_prime(p) && p < (1 << 31) {
            Some(Fp { v: 0, p })
        } else {
            None
        }
    }
    pub fn value(&self) -> u64 {
        self.v
    }
    pub fn modulus(&self) -> u64 {
        self.p
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.v;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Fp { v: acc, p: self.p }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp { v: (self.v + rhs.v) % self.p, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp { v: (self.v + self.p - rhs.v) % self.p, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp { v: self.v * rhs.v % self.p, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
    fn from_int(&self, v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(self.p));
        Fp { v: r.to_u64().expect("reduced residue fits"), p: self.p }
    }
}

/// Element a + b·√d of the quadratic field ℚ(√d).
///
/// `d == 0` denotes ℚ itself, in which case `b` is always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: i64,
}

impl Quad {
    /// A rational element of the field with radicand `d`.
    pub fn rational(a: BigRational, d: i64) -> Self {
        Quad { a, b: BigRational::zero(), d }
    }
    /// The element a + b√d; `d` must be 0 (then `b` must vanish) or a squarefree integer ≠ 1.
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        assert!(d != 0 || Zero::is_zero(&b), "ℚ elements have no irrational part");
        Quad { a, b, d }
    }
    pub fn from_i64(v: i64, d: i64) -> Self {
        Quad::rational(BigRational::from_integer(BigInt::from(v)), d)
    }
    /// True when the element lies in ℚ.
    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }
    /// Field norm a² − d·b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }
    /// Sign of a real element (d > 0 or rational); `None` for non-real fields with b ≠ 0.
    pub fn signum_real(&self) -> Option<i32> {
        if Zero::is_zero(&self.b) {
            return Some(sign_of(&self.a));
        }
        if self.d < 0 {
            return None;
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb || sa == 0 {
            return Some(sb);
        }
        // a and b√d have opposite signs: compare a² with d·b².
        let lhs = &self.a * &self.a;
        let rhs = BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b;
        Some(if lhs > rhs { sa } else { sb })
    }
    fn check(&self, rhs: &Self) {
        debug_assert_eq!(self.d, rhs.d, "mixed quadratic fields");
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}√{}", self.a, self.b, self.d)
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Field for Quad {
    fn zero_like(&self) -> Self {
        Quad::from_i64(0, self.d)
    }
    fn one_like(&self) -> Self {
        Quad::from_i64(1, self.d)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Quad { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Quad { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let d = BigRational::from_integer(BigInt::from(self.d));
        Quad {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }
    fn neg(&self) -> Self {
        Quad { a: -&self.a, b: -&self.b, d: self.d }
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let n = self.norm();
        Some(Quad { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }
    fn from_int(&self, v: &BigInt) -> Self {
        Quad::rational(BigRational::from_integer(v.clone()), self.d)
    }
}

/// Context for the cyclotomic field ℚ(ζ_k) = ℚ[t]/Φ_k(t).
#[derive(PartialEq, Eq, Debug)]
pub struct CycloCtx {
    pub k: u64,
    modulus: RatPoly,
}

/// Element of ℚ(ζ_k), stored as a reduced polynomial in ζ of degree < φ(k).
#[derive(Clone)]
pub struct Cyclo {
    ctx: Arc<CycloCtx>,
    c: RatPoly,
}

impl Cyclo {
    /// The zero element of ℚ(ζ_k).
    pub fn field(k: u64) -> Self {
        assert!(k >= 1, "cyclotomic order must be positive");
        let ctx = Arc::new(CycloCtx { k, modulus: to_rat(&cyclotomic(k)) });
        Cyclo { ctx, c: Vec::new() }
    }
    pub fn order(&self) -> u64 {
        self.ctx.k
    }
    /// ζ_k^e for any integer exponent e.
    pub fn zeta_pow(&self, e: i64) -> Self {
        let k = self.ctx.k as i64;
        let e = e.rem_euclid(k) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        self.reduce(p)
    }
    /// Coefficients in the power basis 1, ζ, …, ζ^{φ(k)-1}.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let deg = totient(self.ctx.k) as usize;
        let mut v = self.c.clone();
        v.resize(deg, BigRational::zero());
        v
    }
    fn reduce(&self, p: RatPoly) -> Self {
        Cyclo { ctx: self.ctx.clone(), c: rat_divmod(&p, &self.ctx.modulus).1 }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.k == other.ctx.k && self.c == other.c
    }
}
impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{}){:?}", self.ctx.k, self.c)
    }
}

impl Field for Cyclo {
    fn zero_like(&self) -> Self {
        Cyclo { ctx: self.ctx.clone(), c: Vec::new() }
    }
    fn one_like(&self) -> Self {
        self.reduce(vec![BigRational::one()])
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        Cyclo { ctx: self.ctx.clone(), c: crate::poly::rat_add(&self.c, &rhs.c) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Cyclo { ctx: self.ctx.clone(), c: crate::poly::rat_sub(&self.c, &rhs.c) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.reduce(rat_mul(&self.c, &rhs.c))
    }
    fn neg(&self) -> Self {
        Cyclo { ctx: self.ctx.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
    fn inv(&self) -> Option<Self> {
        if self.c.is_empty() {
            return None;
        }
        rat_inverse_mod(&self.c, &self.ctx.modulus).map(|c| Cyclo { ctx: self.ctx.clone(), c })
    }
    fn from_int(&self, v: &BigInt) -> Self {
        self.reduce(vec![BigRational::from_integer(v.clone())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let z = Fp::checked_modulus(7).unwrap();
        let a = z.from_i64(3);
        assert_eq!(a.mul(&a.inv().unwrap()), z.one_like());
        assert_eq!(z.from_i64(-1).value(), 6);
        assert!(Fp::checked_modulus(9).is_none());
    }

    #[test]
    fn golden_ratio_identities() {
        let half = rat(1, 2);
        let phi = Quad::new(half.clone(), half, 5);
        // φ² = φ + 1
        assert_eq!(phi.mul(&phi), phi.add(&phi.one_like()));
        assert_eq!(phi.mul(&phi.inv().unwrap()), phi.one_like());
        assert_eq!(phi.signum_real(), Some(1));
        let psi = phi.one_like().sub(&phi); // 1 - φ < 0
        assert_eq!(psi.signum_real(), Some(-1));
    }

    #[test]
    fn cube_roots_of_unity() {
        let omega = Quad::new(rat(-1, 2), rat(1, 2), -3);
        let w3 = omega.mul(&omega).mul(&omega);
        assert_eq!(w3, omega.one_like());
        let s = omega.one_like().add(&omega).add(&omega.mul(&omega));
        assert!(s.is_zero());
    }

    #[test]
    fn cyclotomic_field() {
        let z = Cyclo::field(6);
        let zeta = z.zeta_pow(1);
        let mut acc = z.one_like();
        for _ in 0..6 {
            acc = acc.mul(&zeta);
        }
        assert!(acc.is_one());
        assert_eq!(zeta.mul(&zeta).mul(&zeta), z.from_i64(-1));
        let x = zeta.sub(&z.one_like());
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(z.zeta_pow(-1), zeta.inv().unwrap());
    }
}
