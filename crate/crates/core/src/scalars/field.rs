//! The cyclotomic field ℚ(ζ_N) with elements stored as reduced residues modulo Φ_N.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Arithmetic data for one cyclotomic field.
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// Monic Φ_N, low degree first, length `degree + 1`.
    modulus: Vec<Rational>,
    /// `powers[k]` is ζ^k reduced, for `k` in `0..order`.
    powers: Vec<Vec<Rational>>,
}

static FIELDS: OnceLock<Mutex<BTreeMap<u32, &'static CyclotomicField>>> = OnceLock::new();

impl CyclotomicField {
    /// Returns the shared field ℚ(ζ_N). Fields are built once and live for the whole process.
    pub fn get(order: u32) -> Result<&'static CyclotomicField> {
        if order == 0 {
            return Err(Error::ZeroRootOrder);
        }
        let registry = FIELDS.get_or_init(|| Mutex::new(BTreeMap::new()));
        let mut guard = registry.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(field) = guard.get(&order) {
            return Ok(field);
        }
        let field: &'static CyclotomicField = Box::leak(Box::new(Self::build(order)));
        guard.insert(order, field);
        Ok(field)
    }

    /// ℚ itself, realized as ℚ(ζ_1).
    pub fn rationals() -> &'static CyclotomicField {
        Self::get(1).expect("order 1 is valid")
    }

    fn build(order: u32) -> Self {
        let phi: Vec<Rational> = cyclotomic_polynomial(order)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let degree = phi.len() - 1;
        let mut field = CyclotomicField {
            order,
            degree,
            modulus: phi,
            powers: Vec::new(),
        };
        let mut powers = Vec::with_capacity(order as usize);
        for k in 0..order as usize {
            let mut poly = vec![Rational::zero(); k + 1];
            poly[k] = Rational::one();
            powers.push(field.reduce(poly));
        }
        field.powers = powers;
        field
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of Φ_N, i.e. Euler's totient of N.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_N, low degree first.
    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    pub fn zero(&'static self) -> Scalar {
        Scalar {
            field: self,
            coeffs: vec![Rational::zero(); self.degree],
        }
    }

    pub fn one(&'static self) -> Scalar {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&'static self, n: i64) -> Scalar {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&'static self, q: Rational) -> Scalar {
        let mut coeffs = vec![Rational::zero(); self.degree];
        coeffs[0] = q;
        Scalar {
            field: self,
            coeffs,
        }
    }

    pub fn from_ratio(&'static self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_rational(Rational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// ζ_N^k in canonical form; `k` may be negative.
    pub fn root(&'static self, k: i64) -> Scalar {
        let idx = k.rem_euclid(self.order as i64) as usize;
        Scalar {
            field: self,
            coeffs: self.powers[idx].clone(),
        }
    }

    /// Builds an element from an arbitrary polynomial in ζ (low degree first), reducing mod Φ_N.
    pub fn from_poly(&'static self, poly: Vec<Rational>) -> Scalar {
        Scalar {
            field: self,
            coeffs: self.reduce(poly),
        }
    }

    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree;
        if poly.len() > d {
            for k in (d..poly.len()).rev() {
                if poly[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut poly[k]);
                for i in 0..d {
                    if !self.modulus[i].is_zero() {
                        let t = &c * &self.modulus[i];
                        poly[k - d + i] -= t;
                    }
                }
            }
        }
        poly.resize(d, Rational::zero());
        poly
    }
}

// Fields are interned per order, so the order identifies the field.
impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

/// Φ_n with integer coefficients, low degree first, via x^n - 1 = ∏_{d | n} Φ_d.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = exact_div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// An element of ℚ(ζ_N).
#[derive(Clone)]
pub struct Scalar {
    field: &'static CyclotomicField,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn root_order(&self) -> u32 {
        self.field.order
    }

    /// Reduced coefficients in the power basis 1, ζ, …, ζ^{φ(N)-1}.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational number if it lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Scalar) -> Result<()> {
        if std::ptr::eq(self.field, other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.order, other.field.order))
        }
    }

    fn same_field(&self, other: &Scalar) {
        if let Err(e) = self.check_same_field(other) {
            panic!("{e}");
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        Ok(self * &other.inverse()?)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φ_N.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree == 1 {
            return Ok(self.field.from_rational(self.coeffs[0].recip()));
        }
        let mut r0 = self.field.modulus.clone();
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_N is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let scaled = s0.into_iter().map(|a| a * &c).collect();
        Ok(self.field.from_poly(scaled))
    }

    /// Multiplies by ζ^k without going through a full product when N ≤ 2.
    pub fn mul_root(&self, k: i64) -> Scalar {
        match self.field.order {
            1 => self.clone(),
            2 => {
                if k.rem_euclid(2) == 1 {
                    -self
                } else {
                    self.clone()
                }
            }
            _ => self * &self.field.root(k),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] -= &c * bi;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        Scalar {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        Scalar {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        if self.field.degree == 1 {
            return Scalar {
                field: self.field,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let d = self.field.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Scalar {
            field: self.field,
            coeffs: self.field.reduce(prod),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &'a Scalar) {
        self.same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<'a> SubAssign<&'a Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &'a Scalar) {
        self.same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::literal::format_scalar(self))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar[N={}]({})", self.field.order, self)
    }
}

/// Reduced rational constructor used by the literal parser.
pub(crate) fn rational(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Ok(Rational::new_raw(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), big(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), big(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), big(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), big(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), big(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), big(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn degree_is_totient() {
        let totients = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (n, &phi) in (1..=12).zip(totients.iter()) {
            assert_eq!(CyclotomicField::get(n).unwrap().degree(), phi);
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(CyclotomicField::get(0).unwrap_err(), Error::ZeroRootOrder);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f = CyclotomicField::get(4).unwrap();
        let i = f.root(1);
        assert_eq!(&i * &i, f.from_int(-1));
    }

    #[test]
    fn inverse_in_q_zeta5() {
        let f = CyclotomicField::get(5).unwrap();
        let a = &f.from_int(2) + &f.root(3);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn division_by_zero() {
        let f = CyclotomicField::get(3).unwrap();
        assert_eq!(f.zero().inverse().unwrap_err(), Error::DivisionByZero);
        assert_eq!(
            f.one().checked_div(&f.zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn mismatched_fields() {
        let a = CyclotomicField::get(3).unwrap().one();
        let b = CyclotomicField::get(4).unwrap().one();
        assert_eq!(a.checked_add(&b).unwrap_err(), Error::FieldMismatch(3, 4));
    }

    #[test]
    fn mul_root_matches_product() {
        for n in 1..=8u32 {
            let f = CyclotomicField::get(n).unwrap();
            let a = &f.from_ratio(3, 7).unwrap() + &f.root(1);
            for k in -3..10 {
                assert_eq!(a.mul_root(k), &a * &f.root(k));
            }
        }
    }
}
