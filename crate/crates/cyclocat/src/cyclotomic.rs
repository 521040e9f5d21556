//! Exact arithmetic in the cyclotomic field `Q(θ)`, where `θ` is a fixed
//! primitive `n`-th root of unity.
//!
//! Elements are represented canonically as polynomials in `θ` reduced modulo
//! the `n`-th cyclotomic polynomial `Φ_n`, with arbitrary-precision rational
//! coefficients. Equality of field elements is therefore exactly equality of
//! coefficient vectors. Pure monomials `θ^e` have a dedicated fast path
//! ([`RootPower`]) since they are closed under multiplication and inversion
//! and never need polynomial reduction.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("division by zero in Q(θ)")]
    DivisionByZero,
    #[error("modulus mismatch: n={0} vs n={1}")]
    ModulusMismatch(usize, usize),
}

/// The order `n` of the cyclic group and of the fixed root of unity `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(usize);

impl Modulus {
    /// Panics if `n == 0`; the group of order zero does not exist here.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "modulus must be positive");
        Modulus(n)
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Reduces an integer to its canonical representative in `0..n`.
    pub fn reduce(self, e: i64) -> usize {
        let n = self.0 as i64;
        e.rem_euclid(n) as usize
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A pure monomial `θ^e`, with the exponent stored reduced mod `n`.
///
/// Every root of unity appearing in the rewriting calculus is of this form,
/// so diagram normalization never has to leave the monomial fast path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootPower {
    n: Modulus,
    e: usize,
}

impl RootPower {
    pub fn new(n: Modulus, e: i64) -> Self {
        RootPower { n, e: n.reduce(e) }
    }

    pub fn one(n: Modulus) -> Self {
        RootPower { n, e: 0 }
    }

    pub fn modulus(self) -> Modulus {
        self.n
    }

    pub fn exponent(self) -> usize {
        self.e
    }

    pub fn is_one(self) -> bool {
        self.e == 0
    }

    pub fn mul(self, other: RootPower) -> RootPower {
        assert_eq!(self.n, other.n, "root powers over different moduli");
        RootPower::new(self.n, (self.e + other.e) as i64)
    }

    pub fn inv(self) -> RootPower {
        RootPower::new(self.n, -(self.e as i64))
    }

    pub fn pow(self, k: i64) -> RootPower {
        let n = self.n.0 as i64;
        let e = ((self.e as i64) % n * (k.rem_euclid(n))) % n;
        RootPower::new(self.n, e)
    }

    /// The multiplicative order: the least `m ≥ 1` with `e·m ≡ 0 (mod n)`,
    /// which is `n / gcd(e, n)`.
    pub fn order(self) -> usize {
        let n = self.n.0;
        n / gcd(self.e, n)
    }
}

impl fmt::Display for RootPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta^{}", self.e)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Euler's totient, by trial-division factorization. Inputs are small.
pub fn euler_phi(n: usize) -> usize {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// Dense polynomial over `Q`, coefficients low degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly(pub Vec<BigRational>);

impl Poly {
    fn trim(mut v: Vec<BigRational>) -> Poly {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }

    fn zero() -> Poly {
        Poly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::trim(out)
    }

    fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in other.0.iter().enumerate() {
            out[i] -= b;
        }
        Poly::trim(out)
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly::trim(self.0.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero());
        let mut rem = self.clone();
        let dd = divisor.degree();
        let lead = divisor.0[dd].clone();
        let mut quot = vec![BigRational::zero(); self.0.len()];
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let c = &rem.0[rem.degree()] / &lead;
            quot[shift] = c.clone();
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(divisor.0.iter().map(|a| a * &c));
            rem = rem.sub(&Poly::trim(sub));
        }
        (Poly::trim(quot), rem)
    }
}

/// The `n`-th cyclotomic polynomial `Φ_n`, monic with integer coefficients
/// and degree `φ(n)`, computed by dividing `x^n − 1` by the product of `Φ_d`
/// over the proper divisors `d` of `n`.
pub fn cyclotomic_poly(n: Modulus) -> Vec<BigRational> {
    cyclotomic_poly_inner(n.get()).0
}

fn cyclotomic_poly_inner(n: usize) -> Poly {
    // x^n - 1
    let mut xn1 = vec![BigRational::zero(); n + 1];
    xn1[0] = rat(-1);
    xn1[n] = rat(1);
    let mut divisor = Poly(vec![rat(1)]);
    for d in 1..n {
        if n % d == 0 {
            divisor = divisor.mul(&cyclotomic_poly_inner(d));
        }
    }
    let (q, r) = Poly(xn1).div_rem(&divisor);
    debug_assert!(r.is_zero(), "x^n - 1 must be divisible by prod of Phi_d");
    q
}

/// An exact element of `Q(θ)`: a polynomial in `θ` of degree `< φ(n)`,
/// reduced modulo `Φ_n`. The coefficient vector is the canonical form, so
/// two values are equal in the field iff their vectors are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycScalar {
    n: Modulus,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    fn from_poly(n: Modulus, p: Poly) -> CycScalar {
        let phi = Poly(cyclotomic_poly(n));
        let (_, r) = p.div_rem(&phi);
        let mut coeffs = r.0;
        coeffs.resize(phi.degree(), BigRational::zero());
        CycScalar { n, coeffs }
    }

    pub fn zero(n: Modulus) -> CycScalar {
        CycScalar {
            n,
            coeffs: vec![BigRational::zero(); euler_phi(n.get())],
        }
    }

    pub fn one(n: Modulus) -> CycScalar {
        CycScalar::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: Modulus, q: BigRational) -> CycScalar {
        CycScalar::from_poly(n, Poly::trim(vec![q]))
    }

    pub fn from_integer(n: Modulus, k: i64) -> CycScalar {
        CycScalar::from_rational(n, rat(k))
    }

    /// The monomial `θ^e` reduced mod `Φ_n`. Injective and multiplicative.
    pub fn embed(r: RootPower) -> CycScalar {
        let mut v = vec![BigRational::zero(); r.exponent() + 1];
        v[r.exponent()] = rat(1);
        CycScalar::from_poly(r.modulus(), Poly::trim(v))
    }

    pub fn modulus(&self) -> Modulus {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == CycScalar::one(self.n)
    }

    fn check_modulus(&self, other: &CycScalar) -> Result<(), ArithmeticError> {
        if self.n != other.n {
            Err(ArithmeticError::ModulusMismatch(
                self.n.get(),
                other.n.get(),
            ))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &CycScalar) -> CycScalar {
        self.check_modulus(other).expect("modulus mismatch in add");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycScalar { n: self.n, coeffs }
    }

    pub fn neg(&self) -> CycScalar {
        CycScalar {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &CycScalar) -> CycScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycScalar) -> CycScalar {
        self.check_modulus(other).expect("modulus mismatch in mul");
        let p = Poly::trim(self.coeffs.clone()).mul(&Poly::trim(other.coeffs.clone()));
        CycScalar::from_poly(self.n, p)
    }

    pub fn scale(&self, q: &BigRational) -> CycScalar {
        CycScalar {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    /// Multiplication by `θ^e` without going through a full `embed`+`mul`.
    pub fn mul_root(&self, r: RootPower) -> CycScalar {
        assert_eq!(self.n, r.modulus(), "modulus mismatch in mul_root");
        self.mul(&CycScalar::embed(r))
    }

    /// Field inverse via the extended Euclidean algorithm with `Φ_n`.
    /// `Q[x]/Φ_n` is a field, so every nonzero element is invertible.
    pub fn inv(&self) -> Result<CycScalar, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        let phi = Poly(cyclotomic_poly(self.n));
        let a = Poly::trim(self.coeffs.clone());
        // Extended gcd: maintain r = s·a mod phi, stop when r is a unit.
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (Poly::zero(), Poly(vec![rat(1)]));
        while r1.degree() > 0 || r1.0.len() > 1 {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            if r1.is_zero() {
                unreachable!("gcd(a, Phi_n) must be a nonzero constant");
            }
        }
        let c = r1.0[0].clone();
        Ok(CycScalar::from_poly(self.n, s1.scale(&(rat(1) / c))))
    }

    pub fn div(&self, other: &CycScalar) -> Result<CycScalar, ArithmeticError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u64) -> CycScalar {
        let mut acc = CycScalar::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Is this value a rational multiple of a power of `θ`? Returns the
    /// decomposition `(q, e)` with `self = q·θ^e` if so. Decompositions
    /// with positive `q` are preferred (so `−1` reports as `θ^{n/2}` when
    /// `n` is even), then the least exponent `e`.
    pub fn as_root_monomial(&self) -> Option<(BigRational, usize)> {
        if self.is_zero() {
            return Some((BigRational::zero(), 0));
        }
        let mut fallback = None;
        for e in 0..self.n.get() {
            let m = CycScalar::embed(RootPower::new(self.n, e as i64));
            let q = self.div(&m).expect("theta^e is nonzero");
            let mut nonzero = q.coeffs.iter().filter(|c| !c.is_zero());
            if let Some(c) = nonzero.next() {
                if nonzero.next().is_none() && !q.coeffs[0].is_zero() {
                    if c.numer().sign() == num_bigint::Sign::Plus {
                        return Some((c.clone(), e));
                    }
                    if fallback.is_none() {
                        fallback = Some((c.clone(), e));
                    }
                }
            }
        }
        fallback
    }

    /// Numerical evaluation at `θ = e^{2πi/n}`, for cross-validation only.
    pub fn eval_f64(&self) -> Complex64 {
        let n = self.n.get() as f64;
        let theta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            let cf =
                c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            acc = acc * theta + Complex64::new(cf, 0.0);
        }
        acc
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((q, e)) = self.as_root_monomial() {
            if q.is_zero() {
                return write!(f, "0");
            }
            let sign = if q.is_negative() { "-" } else { "" };
            let aq = q.abs();
            match (aq.is_one(), e) {
                (true, 0) => write!(f, "{sign}1"),
                (true, _) => write!(f, "{sign}theta^{e}"),
                (false, 0) => write!(f, "{sign}{aq}"),
                (false, _) => write!(f, "{sign}{aq} theta^{e}"),
            }
        } else {
            let terms: Vec<String> = self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    if i == 0 {
                        format!("{c}")
                    } else {
                        format!("{c} theta^{i}")
                    }
                })
                .collect();
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycScalar", 2)?;
        s.serialize_field("n", &self.n.get())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| format!("{c}")).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize) -> Modulus {
        Modulus::new(n)
    }

    /// Independent oracle for `Φ_n`: evaluate the candidate at `e^{2πi/n}`
    /// numerically and require a near-zero result at every primitive root.
    fn assert_vanishes_at_primitive_roots(n: usize, poly: &[BigRational]) {
        for k in 1..=n {
            if gcd(k, n) != 1 {
                continue;
            }
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            let mut acc = Complex64::new(0.0, 0.0);
            for c in poly.iter().rev() {
                let cf = c.numer().to_f64().unwrap() / c.denom().to_f64().unwrap();
                acc = acc * z + Complex64::new(cf, 0.0);
            }
            assert!(acc.norm() < 1e-9, "Phi_{n} does not vanish at root {k}");
        }
    }

    #[test]
    fn cyclotomic_poly_base_case() {
        // n=1: x - 1
        assert_eq!(cyclotomic_poly(m(1)), vec![rat(-1), rat(1)]);
    }

    #[test]
    fn cyclotomic_poly_small_cases() {
        // Frozen from the recursive-division oracle, cross-checked numerically.
        assert_eq!(cyclotomic_poly(m(4)), vec![rat(1), rat(0), rat(1)]); // x^2 + 1
        assert_eq!(cyclotomic_poly(m(6)), vec![rat(1), rat(-1), rat(1)]); // x^2 - x + 1
        for n in 1..=30 {
            let p = cyclotomic_poly(m(n));
            assert_eq!(p.len() - 1, euler_phi(n), "degree of Phi_{n}");
            assert!(p.last().unwrap().is_one(), "Phi_{n} monic");
            assert!(p.iter().all(|c| c.denom().is_one()), "Phi_{n} integral");
            assert_vanishes_at_primitive_roots(n, &p);
        }
    }

    #[test]
    fn embed_examples() {
        assert_eq!(
            CycScalar::embed(RootPower::new(m(4), 2)),
            CycScalar::from_integer(m(4), -1)
        );
        assert_eq!(
            CycScalar::embed(RootPower::new(m(5), 0)),
            CycScalar::one(m(5))
        );
        assert_eq!(
            CycScalar::embed(RootPower::new(m(2), 1)),
            CycScalar::from_integer(m(2), -1)
        );
    }

    #[test]
    fn geometric_sum_of_roots_vanishes() {
        let n = m(5);
        let mut acc = CycScalar::zero(n);
        for e in 0..5 {
            acc = acc.add(&CycScalar::embed(RootPower::new(n, e)));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn monomial_arithmetic() {
        let n = m(5);
        let a = RootPower::new(n, 3);
        let b = RootPower::new(n, 4);
        assert_eq!(a.mul(b), RootPower::new(n, 2));
        let inv = CycScalar::embed(RootPower::new(m(7), 2)).inv().unwrap();
        assert_eq!(inv, CycScalar::embed(RootPower::new(m(7), 5)));
    }

    #[test]
    fn embed_is_multiplicative() {
        for n in 1..=16 {
            let nn = m(n);
            for a in 0..n {
                for b in 0..n {
                    let lhs = CycScalar::embed(RootPower::new(nn, a as i64))
                        .mul(&CycScalar::embed(RootPower::new(nn, b as i64)));
                    let rhs = CycScalar::embed(RootPower::new(nn, (a + b) as i64));
                    assert_eq!(lhs, rhs, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn root_power_has_order_dividing_n() {
        for n in 1..=20 {
            let nn = m(n);
            for e in 0..n {
                let r = RootPower::new(nn, e as i64);
                assert!(r.pow(n as i64).is_one());
                assert_eq!(r.pow(r.order() as i64), RootPower::one(nn));
            }
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(RootPower::new(m(12), 4).order(), 3);
        assert_eq!(RootPower::new(m(7), 0).order(), 1);
        assert_eq!(RootPower::new(m(8), 6).order(), 4);
    }

    #[test]
    fn field_axioms_spot_checks() {
        let n = m(12);
        let x = CycScalar::embed(RootPower::new(n, 5)).add(&CycScalar::from_rational(
            n,
            BigRational::new(3.into(), 7.into()),
        ));
        let y = CycScalar::embed(RootPower::new(n, 2)).sub(&CycScalar::from_integer(n, 4));
        // distributivity
        let z = CycScalar::embed(RootPower::new(n, 11));
        let lhs = x.mul(&y.add(&z));
        let rhs = x.mul(&y).add(&x.mul(&z));
        assert_eq!(lhs, rhs);
        // inverse
        let xi = x.inv().unwrap();
        assert!(x.mul(&xi).is_one());
        assert_eq!(
            CycScalar::zero(n).inv(),
            Err(ArithmeticError::DivisionByZero)
        );
    }

    #[test]
    fn float_cross_validation() {
        // Exact values agree with their numerical images to 1e-9.
        for n in [1usize, 2, 3, 5, 8, 12, 24, 40, 64] {
            let nn = m(n);
            let x = CycScalar::embed(RootPower::new(nn, 1))
                .scale(&BigRational::new(355.into(), 113.into()))
                .add(&CycScalar::embed(RootPower::new(nn, (n as i64) - 1)).scale(&rat(997)));
            let y = CycScalar::embed(RootPower::new(nn, 2)).sub(&CycScalar::from_integer(nn, 3));
            let exact = x.mul(&y);
            let approx = x.eval_f64() * y.eval_f64();
            assert!(
                (exact.eval_f64() - approx).norm() < 1e-9,
                "n={n}: {} vs {}",
                exact.eval_f64(),
                approx
            );
        }
    }

    #[test]
    fn monomial_decomposition() {
        let n = m(6);
        let x = CycScalar::embed(RootPower::new(n, 4)).scale(&BigRational::new(3.into(), 2.into()));
        let (q, e) = x.as_root_monomial().unwrap();
        assert_eq!(q, BigRational::new(3.into(), 2.into()));
        assert_eq!(e, 4);
        // A genuine sum is not a monomial.
        let s = CycScalar::embed(RootPower::new(n, 1)).add(&CycScalar::from_integer(n, 5));
        assert!(s.as_root_monomial().is_none());
    }

    #[test]
    fn serialization_shape() {
        let n = m(4);
        let x = CycScalar::embed(RootPower::new(n, 1)).scale(&BigRational::new(1.into(), 2.into()));
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"n":4,"coeffs":["0","1/2"]}"#);
    }
}
