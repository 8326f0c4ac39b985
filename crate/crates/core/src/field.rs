//! Exact base fields, from prime fields and their quadratic extensions up to `Q`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

/// Description of a base field, used for reports and for dispatch in the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    Prime { p: u64 },
    /// `F_p[x] / (x^2 + c1 x + c0)`.
    QuadraticExtension { p: u64, c1: u64, c0: u64 },
    Rationals,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Prime { p } | FieldSpec::QuadraticExtension { p, .. } => p,
            FieldSpec::Rationals => 0,
        }
    }

    /// Parses `p`, `p:2` or `Q`.
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let (base, ext) = match s.split_once(':') {
            Some((b, e)) => (b, Some(e)),
            None => (s, None),
        };
        let p: u64 = base
            .parse()
            .map_err(|_| Error::InvalidField(format!("cannot parse prime from {s:?}")))?;
        match ext {
            None => PrimeField::new(p).map(|f| f.spec()),
            Some("2") => QuadraticExtension::new(p).map(|f| f.spec()),
            Some(e) => Err(Error::InvalidField(format!("unsupported extension degree {e}"))),
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::QuadraticExtension { p, .. } => write!(f, "F_{p}^2"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// A field with exactly representable elements.
///
/// Elements are plain values; the field object carries the modulus or
/// extension data. All operations are total except `inv`, which returns
/// `None` on zero.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator is not invertible.
    fn from_rational(&self, v: &BigRational) -> Option<Self::Elem> {
        let den = self.from_bigint(v.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.from_bigint(v.numer()), &inv))
    }

    /// The element as a rational number, for fields of characteristic zero.
    fn as_rational(&self, _a: &Self::Elem) -> Option<BigRational> {
        None
    }

    /// A faster kernel computation than plain elimination, if the field has one.
    /// Must return the same basis as [`crate::matrix::Matrix::exact_kernel`].
    fn fast_kernel(_m: &crate::matrix::Matrix<Self>) -> Option<Vec<Vec<Self::Elem>>>
    where
        Self: Sized,
    {
        None
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// A random element. For the rationals this draws a small integer.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Decimal rendering used by reports.
    fn render(&self, a: &Self::Elem) -> String;
}

/// `F_p` with word-sized `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_MODULUS: u64 = 1 << 62;

    pub fn new(p: u64) -> Result<Self> {
        if p >= Self::MAX_MODULUS || !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^62")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_raw(*a, *b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        self.inv_raw(*a)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        (self.p <= 1 << 24).then(|| (0..self.p).collect())
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// `F_{p^2}` for `p` in {2, 3, 5, 7}, with a fixed irreducible `x^2 + c1 x + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticExtension {
    base: PrimeField,
    c1: u64,
    c0: u64,
}

impl QuadraticExtension {
    /// Stored defining polynomials `(p, c1, c0)`.
    pub const SUPPORTED: [(u64, u64, u64); 6] = [(2, 1, 1), (3, 0, 1), (5, 0, 2), (7, 0, 1), (11, 0, 1), (13, 0, 11)];

    pub fn new(p: u64) -> Result<Self> {
        let &(_, c1, c0) = Self::SUPPORTED
            .iter()
            .find(|(q, _, _)| *q == p)
            .ok_or_else(|| Error::InvalidField(format!("F_{p}^2 is only supported for p in {{2,3,5,7,11,13}}")))?;
        Ok(QuadraticExtension { base: PrimeField::new(p)?, c1, c0 })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// Coefficients `(c1, c0)` of the defining polynomial.
    pub fn modulus_poly(&self) -> (u64, u64) {
        (self.c1, self.c0)
    }

    pub fn embed(&self, a: u64) -> (u64, u64) {
        (a % self.base.p, 0)
    }
}

impl Field for QuadraticExtension {
    /// `(a0, a1)` stands for `a0 + a1 x`.
    type Elem = (u64, u64);

    fn spec(&self) -> FieldSpec {
        FieldSpec::QuadraticExtension { p: self.base.p, c1: self.c1, c0: self.c0 }
    }
    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.base.p * self.base.p)
    }
    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn one(&self) -> (u64, u64) {
        (1, 0)
    }
    fn from_i64(&self, v: i64) -> (u64, u64) {
        (self.base.from_i64(v), 0)
    }
    fn from_bigint(&self, v: &BigInt) -> (u64, u64) {
        (self.base.from_bigint(v), 0)
    }
    fn add(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        let f = &self.base;
        (f.add(&a.0, &b.0), f.add(&a.1, &b.1))
    }
    fn sub(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        let f = &self.base;
        (f.sub(&a.0, &b.0), f.sub(&a.1, &b.1))
    }
    fn mul(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        // x^2 = -c1 x - c0
        let f = &self.base;
        let lo = f.mul(&a.0, &b.0);
        let mid = f.add(&f.mul(&a.0, &b.1), &f.mul(&a.1, &b.0));
        let hi = f.mul(&a.1, &b.1);
        let r0 = f.sub(&lo, &f.mul(&hi, &self.c0));
        let r1 = f.sub(&mid, &f.mul(&hi, &self.c1));
        (r0, r1)
    }
    fn neg(&self, a: &(u64, u64)) -> (u64, u64) {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn inv(&self, a: &(u64, u64)) -> Option<(u64, u64)> {
        if self.is_zero(a) {
            return None;
        }
        // a^{-1} = a^{q-2}
        let q = self.base.p * self.base.p;
        Some(self.pow(a, q - 2))
    }
    fn is_zero(&self, a: &(u64, u64)) -> bool {
        a.0 == 0 && a.1 == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> (u64, u64) {
        (self.base.random(rng), self.base.random(rng))
    }
    fn elements(&self) -> Option<Vec<(u64, u64)>> {
        let p = self.base.p;
        Some((0..p).flat_map(|a1| (0..p).map(move |a0| (a0, a1))).collect())
    }
    fn render(&self, a: &(u64, u64)) -> String {
        match (a.0, a.1) {
            (a0, 0) => a0.to_string(),
            (0, a1) => format!("{a1}x"),
            (a0, a1) => format!("{a0}+{a1}x"),
        }
    }
}

/// The rationals, with always-reduced fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn fast_kernel(m: &crate::matrix::Matrix<Self>) -> Option<Vec<Vec<BigRational>>> {
        crate::matrix::multimodular_kernel(m)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> Option<BigRational> {
        Some(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Renders a rational the way reports expect (`n` or `n/d`).
pub fn render_rational(a: &BigRational) -> String {
    Rationals.render(a)
}

/// Parses `n` or `n/d` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Whether a rational is p-integral, i.e. `p` does not divide its denominator.
pub fn is_p_integral(v: &BigRational, p: u64) -> bool {
    !v.denom().abs().is_multiple_of(&BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn large_prime_field() {
        let p = (1u64 << 61) - 1;
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = f.random(&mut rng);
            if a == 0 {
                continue;
            }
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert!(PrimeField::new(1 << 62).is_err());
        assert!(PrimeField::new(91).is_err());
    }

    #[test]
    fn extension_polynomials_are_irreducible() {
        for &(p, c1, c0) in &QuadraticExtension::SUPPORTED {
            // no root in F_p
            for x in 0..p {
                assert_ne!((x * x + c1 * x + c0) % p, 0, "x^2+{c1}x+{c0} has a root mod {p}");
            }
            let f = QuadraticExtension::new(p).unwrap();
            let elems = f.elements().unwrap();
            assert_eq!(elems.len() as u64, p * p);
            for a in elems.iter().filter(|a| !f.is_zero(a)) {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
            }
        }
        assert!(QuadraticExtension::new(17).is_err());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("2").unwrap(), FieldSpec::Prime { p: 2 });
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(
            FieldSpec::parse("2:2").unwrap(),
            FieldSpec::QuadraticExtension { p: 2, c1: 1, c0: 1 }
        );
        assert!(FieldSpec::parse("4").is_err());
        assert!(FieldSpec::parse("17:2").is_err());
        assert!(FieldSpec::parse("7:3").is_err());
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(7).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half), Some(4));
        let seventh = BigRational::new(1.into(), 7.into());
        assert_eq!(f.from_rational(&seventh), None);
        assert_eq!(parse_rational("-6/4").unwrap(), BigRational::new((-3).into(), 2.into()));
    }
}
