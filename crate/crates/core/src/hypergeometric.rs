//! Terminating Gauss hypergeometric series `2F1(-k, b; c; x)`.
//!
//! With a non-positive integer first parameter the series is a polynomial
//! of degree `k`: the factor `(-k)_j` vanishes for every `j > k`.

use std::ops::{Add, Div, Mul};

use crate::error::{Error, Result};

/// Unevaluated sum `hi + lo` carrying about 32 significant digits.
///
/// The polynomial has roots in `(0, 1)` for the parameter ranges used here,
/// and plain `f64` summation loses all relative accuracy near them.
#[derive(Clone, Copy, Debug)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let s = Self::two_sum(self.hi, rhs.hi);
        let t = Self::two_sum(self.lo, rhs.lo);
        let hi = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(hi.hi, hi.lo + t.lo)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let p = self.hi * rhs.hi;
        let err = self.hi.mul_add(rhs.hi, -p);
        Self::quick_two_sum(p, err + (self.hi * rhs.lo + self.lo * rhs.hi))
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self + DoubleDouble::from_f64(-1.0) * (rhs * DoubleDouble::from_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r + DoubleDouble::from_f64(-1.0) * (rhs * DoubleDouble::from_f64(q2));
        let q3 = r.hi / rhs.hi;
        Self::quick_two_sum(q1, q2) + DoubleDouble::from_f64(q3)
    }
}

fn shifted(a: f64, j: usize) -> DoubleDouble {
    DoubleDouble::two_sum(a, j as f64)
}

fn terms_dd(k: u32, b: f64, c: f64, x: f64) -> Result<Vec<DoubleDouble>> {
    let k = k as usize;
    let x = DoubleDouble::from_f64(x);
    let mut terms = Vec::with_capacity(k + 1);
    let mut term = DoubleDouble::from_f64(1.0);
    terms.push(term);
    for j in 0..k {
        let denom = shifted(c, j);
        if denom.is_zero() {
            return Err(Error::PochhammerPole { c, j: j + 1 });
        }
        let falling = DoubleDouble::from_f64(j as f64 - k as f64);
        let next = DoubleDouble::from_f64(j as f64 + 1.0);
        term = term * falling * shifted(b, j) * x / (denom * next);
        terms.push(term);
    }
    Ok(terms)
}

/// The `k + 1` terms `(-k)_j (b)_j / ((c)_j j!) x^j`, `j = 0..=k`, built by
/// the forward recurrence
/// `t_{j+1} = t_j (j - k)(b + j) x / ((c + j)(j + 1))`.
pub fn gauss_2f1_terms(k: u32, b: f64, c: f64, x: f64) -> Result<Vec<f64>> {
    Ok(terms_dd(k, b, c, x)?.into_iter().map(DoubleDouble::to_f64).collect())
}

/// `2F1(-k, b; c; x)` summed left to right over exactly `k + 1` terms.
///
/// Terms and partial sums are carried in double-double precision, so the
/// result keeps full relative accuracy close to the polynomial's roots.
/// Fails with [`Error::PochhammerPole`] when `(c)_j` vanishes for some
/// `j <= k`, i.e. `c` is a non-positive integer with `|c| < k`.
pub fn gauss_2f1_polynomial(k: u32, b: f64, c: f64, x: f64) -> Result<f64> {
    let sum = terms_dd(k, b, c, x)?
        .into_iter()
        .fold(DoubleDouble::from_f64(0.0), |acc, t| acc + t);
    Ok(sum.to_f64())
}
