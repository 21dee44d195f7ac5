//! Exact integer and rational arithmetic, generalized binomial coefficients,
//! and the two alternating binomial-sum identities used throughout the
//! power-of-the-maximal-ideal formulas.
//!
//! Everything here is arbitrary precision. There is no fixed-width fast path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Generalized binomial coefficient `a(a-1)...(a-k+1) / k!`.
///
/// Returns 0 for `k < 0`. For `a >= 0` this is the usual binomial and vanishes
/// when `k > a`. For negative `a` the upper-negation rule
/// `binom(a, k) = (-1)^k binom(k - a - 1, k)` is applied before evaluating.
pub fn binom(a: i64, k: i64) -> ExactInt {
    if k < 0 {
        return BigInt::zero();
    }
    if a >= 0 {
        BigInt::from(binom_nonneg(a as u64, k as u64))
    } else {
        let upper = (k as i128 - a as i128 - 1) as u64;
        let mag = BigInt::from(binom_nonneg(upper, k as u64));
        if k % 2 == 0 {
            mag
        } else {
            -mag
        }
    }
}

fn binom_nonneg(a: u64, k: u64) -> BigUint {
    if k > a {
        return BigUint::zero();
    }
    let k = k.min(a - k);
    let mut acc = BigUint::one();
    // acc = binom(a, i) after step i; each division is exact.
    for i in 0..k {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `⌈n / d⌉` for positive operands.
pub fn ceil_div(n: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(n.div_ceil(d))
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Checks `Σ_{j=0}^{k} (-1)^{k-j} binom(d-j, k-j) binom(n, j) = binom(n-d+k-1, k)`
/// exactly. Meaningful for `0 <= k <= d <= n`.
pub fn identity_magic(n: i64, d: i64, k: i64) -> bool {
    let lhs: ExactInt = (0..=k)
        .map(|j| sign(k - j) * binom(d - j, k - j) * binom(n, j))
        .sum();
    lhs == binom(n - d + k - 1, k)
}

/// Checks `Σ_{l=0}^{k} (-1)^{k-l} binom(n+l-1, l) binom(d, k-l) = binom(n-d+k-1, k)`
/// exactly, for nonnegative `n, d, k`.
pub fn identity_magic2(n: i64, d: i64, k: i64) -> bool {
    let lhs: ExactInt = (0..=k)
        .map(|l| sign(k - l) * binom(n + l - 1, l) * binom(d, k - l))
        .sum();
    lhs == binom(n - d + k - 1, k)
}

/// Exact rational number kept in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactRatio {
    #[serde(with = "crate::decimal")]
    numer: ExactInt,
    #[serde(with = "crate::decimal")]
    denom: ExactInt,
}

impl ExactRatio {
    pub fn new(numer: ExactInt, denom: ExactInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = ExactRatio { numer, denom };
        r.normalize();
        Ok(r)
    }

    pub fn from_int(v: impl Into<ExactInt>) -> Self {
        ExactRatio {
            numer: v.into(),
            denom: BigInt::one(),
        }
    }

    fn normalize(&mut self) {
        if self.denom.sign() == Sign::Minus {
            self.numer = -std::mem::take(&mut self.numer);
            self.denom = -std::mem::take(&mut self.denom);
        }
        let g = self.numer.gcd(&self.denom);
        if !g.is_one() && !g.is_zero() {
            self.numer /= &g;
            self.denom /= &g;
        }
        if self.numer.is_zero() {
            self.denom = BigInt::one();
        }
    }

    pub fn numer(&self) -> &ExactInt {
        &self.numer
    }

    pub fn denom(&self) -> &ExactInt {
        &self.denom
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive, so cross-multiplication preserves order
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExactRatio {
    type Output = ExactRatio;
    fn add(self, rhs: &ExactRatio) -> ExactRatio {
        let mut r = ExactRatio {
            numer: &self.numer * &rhs.denom + &rhs.numer * &self.denom,
            denom: &self.denom * &rhs.denom,
        };
        r.normalize();
        r
    }
}

impl Sub for &ExactRatio {
    type Output = ExactRatio;
    fn sub(self, rhs: &ExactRatio) -> ExactRatio {
        self + &(-rhs.clone())
    }
}

impl Mul for &ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: &ExactRatio) -> ExactRatio {
        let mut r = ExactRatio {
            numer: &self.numer * &rhs.numer,
            denom: &self.denom * &rhs.denom,
        };
        r.normalize();
        r
    }
}

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}
