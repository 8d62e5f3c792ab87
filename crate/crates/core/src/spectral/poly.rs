//! Dense integer polynomials and the division-free characteristic polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with big-integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - r`.
    pub fn linear(r: &BigInt) -> Self {
        IntPoly::new(vec![-r, BigInt::one()])
    }

    /// `x^2 + b x + c`.
    pub fn monic_quadratic(b: BigInt, c: BigInt) -> Self {
        IntPoly::new(vec![c, b, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        if self.coeffs.len() <= dd {
            return (IntPoly::new(Vec::new()), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &lead * dc;
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// `Some(self / divisor)` when the monic `divisor` divides exactly.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// Divides out `factor` as often as possible; returns the count.
    pub fn strip_factor(&mut self, factor: &IntPoly) -> usize {
        let mut count = 0;
        while let Some(q) = self.div_exact_monic(factor) {
            if self.is_zero() {
                break;
            }
            *self = q;
            count += 1;
        }
        count
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `det(xI - A)` for an integer matrix (row-major, `n x n`) by Berkowitz's
/// division-free algorithm.
pub fn char_poly_berkowitz(a: &[i64], n: usize) -> IntPoly {
    assert_eq!(a.len(), n * n);
    let at = |i: usize, j: usize| BigInt::from(a[i * n + j]);
    // coefficients highest degree first
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..n {
        // leading principal block M = A[0..k, 0..k], column C = A[0..k, k], row R = A[k, 0..k]
        let mut q = Vec::with_capacity(k + 2);
        q.push(BigInt::one());
        q.push(-at(k, k));
        let mut v: Vec<BigInt> = (0..k).map(|i| at(i, k)).collect();
        for j in 0..k {
            let rv: BigInt = (0..k).map(|i| at(k, i) * &v[i]).sum();
            q.push(-rv);
            if j + 1 < k {
                v = (0..k).map(|i| (0..k).map(|l| at(i, l) * &v[l]).sum()).collect();
            }
        }
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                *slot += &q[i - j] * pj;
            }
        }
        p = next;
    }
    p.reverse();
    IntPoly::new(p)
}
