//! Exact integer polynomials in the indeterminate `q`.
//!
//! Character degrees and group orders are polynomials in `q`; all arithmetic
//! here is over arbitrary-precision integers and division is exact or an error.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QPolyError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division is not exact")]
    NotExact,
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("cannot parse polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

/// Polynomial with integer coefficients, stored in ascending degree.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients in ascending degree; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Quotient and remainder. Each step divides by the divisor's leading
    /// coefficient, which must be exact.
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly), QPolyError> {
        let dd = divisor
            .degree()
            .ok_or_else(|| QPolyError::InvalidArgument("division by zero polynomial".into()))?;
        let lead = divisor.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(QPolyError::NotExact);
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        Ok((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly, QPolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(QPolyError::NotExact)
        }
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
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

fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|e| n.is_multiple_of(*e)).collect();
    out.sort_unstable();
    out
}

fn cyclotomic_memo(d: u32, memo: &mut HashMap<u32, QPoly>) -> QPoly {
    if let Some(p) = memo.get(&d) {
        return p.clone();
    }
    let mut p = &QPoly::monomial(1, d as usize) - &QPoly::one();
    for e in divisors(d) {
        if e < d {
            let phi_e = cyclotomic_memo(e, memo);
            p = p
                .exact_div(&phi_e)
                .expect("cyclotomic factors divide x^d - 1");
        }
    }
    memo.insert(d, p.clone());
    p
}

/// The `d`-th cyclotomic polynomial, by exact division of `x^d - 1` by the
/// cyclotomic polynomials of the proper divisors of `d`.
pub fn cyclotomic(d: u32) -> Result<QPoly, QPolyError> {
    if d == 0 {
        return Err(QPolyError::InvalidArgument(
            "cyclotomic index must be positive".into(),
        ));
    }
    Ok(cyclotomic_memo(d, &mut HashMap::new()))
}

/// Largest `a` such that `Phi_d^a` divides `p`.
pub fn phi_part(p: &QPoly, d: u32) -> Result<u32, QPolyError> {
    if p.is_zero() {
        return Err(QPolyError::InvalidArgument(
            "Phi-part of the zero polynomial".into(),
        ));
    }
    let phi = cyclotomic(d)?;
    let mut a = 0;
    let mut cur = p.clone();
    loop {
        match cur.div_rem(&phi)? {
            (q, r) if r.is_zero() => {
                cur = q;
                a += 1;
            }
            _ => return Ok(a),
        }
    }
}

/// Defect of a character of degree `deg` in a group of order `order` with
/// respect to `Phi_d`.
pub fn defect(deg: &QPoly, order: &QPoly, d: u32) -> Result<u32, QPolyError> {
    let a = phi_part(order, d)?;
    let b = phi_part(deg, d)?;
    a.checked_sub(b).ok_or_else(|| {
        QPolyError::Inconsistent(format!(
            "Phi_{d}-part of the degree ({b}) exceeds that of the order ({a})"
        ))
    })
}

/// True iff `Phi_d` divides `p1 - p2`.
pub fn congruent_mod_phi(p1: &QPoly, p2: &QPoly, d: u32) -> Result<bool, QPolyError> {
    let phi = cyclotomic(d)?;
    let (_, r) = (p1 - p2).div_rem(&phi)?;
    Ok(r.is_zero())
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for QPoly {
    type Err = QPolyError;

    /// Grammar: sums (`+`, `-`) of products (`*`) of integers, `q` and `q^k`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| QPolyError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut neg = false;
        let bytes = s.as_bytes();
        for i in 0..=bytes.len() {
            let at_sep = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-') && i > 0 && bytes[i - 1] != b'^');
            if i == 0 && (bytes[0] == b'+' || bytes[0] == b'-') {
                neg = bytes[0] == b'-';
                start = 1;
                continue;
            }
            if at_sep {
                let t = &s[start..i];
                if t.is_empty() {
                    return Err(err("empty term"));
                }
                terms.push((neg, t));
                if i < bytes.len() {
                    neg = bytes[i] == b'-';
                    start = i + 1;
                }
            }
        }
        let mut acc = QPoly::zero();
        for (neg, t) in terms {
            let mut term = QPoly::one();
            for factor in t.split('*') {
                let f = if factor == "q" {
                    QPoly::q()
                } else if let Some(exp) = factor.strip_prefix("q^") {
                    let k: usize = exp.parse().map_err(|_| err("bad exponent"))?;
                    QPoly::monomial(1, k)
                } else {
                    let c: BigInt = factor.parse().map_err(|_| err("bad factor"))?;
                    QPoly::from_coeffs(vec![c])
                };
                term = &term * &f;
            }
            acc = if neg { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }
}
