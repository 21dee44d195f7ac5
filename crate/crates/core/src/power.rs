//! Closed forms for `𝔪^t = (x_1, ..., x_n)^t` and its polarization `I_t` in
//! `nt` variables.
//!
//! Besides the fast quasi-depth computation this module carries the edge β
//! expressions, the alternating sums `b(n, m, t, k)` and `f(n, m, t, k, j)`
//! and the printed forms of a few displayed quantities that do not match
//! direct evaluation (kept so the discrepancies stay pinned by tests).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom, ceil_div, ExactInt, ExactRatio};
use crate::feasibility::{Descent, QDepthResult};

/// `(n, t)` with the derived `m = ⌈n / (t+1)⌉`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerParams {
    pub n: u64,
    pub t: u64,
    pub m: u64,
}

impl PowerParams {
    pub fn new(n: u64, t: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
        }
        if t < 1 {
            return Err(Error::InvalidParameter(format!("t must be >= 1, got {t}")));
        }
        Ok(PowerParams {
            n,
            t,
            m: ceil_div(n, t + 1)?,
        })
    }

    /// Variables of the polarized ring, `nt`.
    pub fn nvars(&self) -> u64 {
        self.n * self.t
    }

    /// `nt - n + m`, the conjectured quasi depth of `I_t`.
    pub fn edge_d(&self) -> u64 {
        self.n * self.t - self.n + self.m
    }
}

fn sgn(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn ii(v: u64) -> i64 {
    v as i64
}

fn check_dk(p: &PowerParams, d: u64, k: u64) -> Result<()> {
    if k > d || d > p.nvars() {
        return Err(Error::IndexOutOfRange(format!(
            "need 0 <= k <= d <= nt = {}, got k={k}, d={d}",
            p.nvars()
        )));
    }
    Ok(())
}

/// `α_k(R_t / I_t) = Σ_{j<t} binom(nt-n-j, k-j) binom(n+j-1, j)`.
pub fn alpha_power(n: u64, t: u64, k: u64) -> Result<ExactInt> {
    let p = PowerParams::new(n, t)?;
    if k > p.nvars() {
        return Err(Error::IndexOutOfRange(format!(
            "k={k} exceeds nt={}",
            p.nvars()
        )));
    }
    let (n, t, k) = (ii(n), ii(t), ii(k));
    Ok((0..t)
        .map(|j| binom(n * t - n - j, k - j) * binom(n + j - 1, j))
        .sum())
}

fn beta_quotient_sum(n: i64, t: i64, d: i64, k: i64) -> ExactInt {
    (0..t)
        .map(|l| binom(n + l - 1, l) * binom(t * n - n - d + k - l - 1, k - l))
        .sum()
}

/// `β_k^d(R_t / I_t) = Σ_{l<t} binom(n+l-1, l) binom(tn-n-d+k-l-1, k-l)`.
pub fn beta_quotient_power(n: u64, t: u64, d: u64, k: u64) -> Result<ExactInt> {
    let p = PowerParams::new(n, t)?;
    check_dk(&p, d, k)?;
    Ok(beta_quotient_sum(ii(n), ii(t), ii(d), ii(k)))
}

/// `β_k^d(I_t) = binom(nt-d+k-1, k) - β_k^d(R_t / I_t)`.
pub fn beta_ideal_power(n: u64, t: u64, d: u64, k: u64) -> Result<ExactInt> {
    let p = PowerParams::new(n, t)?;
    check_dk(&p, d, k)?;
    let (n, t, d, k) = (ii(n), ii(t), ii(d), ii(k));
    Ok(binom(n * t - d + k - 1, k) - beta_quotient_sum(n, t, d, k))
}

/// `β_{t+1}^{nt-n+m+1}(I_t)` through the edge expression
/// `binom(n-m+t-1, t+1) + Σ_{l<t} (-1)^{t-l} binom(n+l-1, l) binom(m+1, t+1-l)`.
pub fn beta_edge_plus(n: u64, t: u64) -> Result<ExactInt> {
    let p = PowerParams::new(n, t)?;
    let (n, t, m) = (ii(n), ii(t), ii(p.m));
    let sum: ExactInt = (0..t)
        .map(|l| sgn(t - l) * binom(n + l - 1, l) * binom(m + 1, t + 1 - l))
        .sum();
    Ok(binom(n - m + t - 1, t + 1) + sum)
}

/// `binom(n+t, t+1) - (m+1) binom(n+t-1, t)`, the simplified form of
/// [`beta_edge_plus`].
pub fn beta_edge_plus_closed(n: u64, t: u64) -> Result<ExactInt> {
    let p = PowerParams::new(n, t)?;
    let (n, t, m) = (ii(n), ii(t), ii(p.m));
    Ok(binom(n + t, t + 1) - (m + 1) * binom(n + t - 1, t))
}

/// `(n-1)/(t+1) - m`; [`beta_edge_plus_closed`] equals
/// `binom(n+t-1, t)` times this, and it is always negative.
pub fn edge_plus_factor(n: u64, t: u64) -> Result<ExactRatio> {
    let p = PowerParams::new(n, t)?;
    let q = ExactRatio::new(BigInt::from(n - 1), BigInt::from(t + 1))?;
    Ok(&q - &ExactRatio::from_int(p.m))
}

/// The edge value as displayed in the upper-bound argument, including the
/// extra `-binom(n-m+t-1, t)` term. Differs from [`beta_edge_plus`]; kept only
/// to pin that discrepancy.
pub fn beta_edge_plus_as_printed(n: u64, t: u64) -> Result<ExactInt> {
    let p = PowerParams::new(n, t)?;
    let (n, t, m) = (ii(n), ii(t), ii(p.m));
    Ok(-binom(n - m + t - 1, t) - binom(n + t - 1, t) * (m + 1) + binom(n + t, t + 1))
}

fn check_edge_k(p: &PowerParams, k: u64) -> Result<()> {
    if k < p.t + 1 || k > p.edge_d() {
        return Err(Error::IndexOutOfRange(format!(
            "need t+1 <= k <= nt-n+m, i.e. {} <= k <= {}, got {k}",
            p.t + 1,
            p.edge_d()
        )));
    }
    Ok(())
}

/// `β_k^{nt-n+m}(I_t) = binom(n-m+k-1, k) - Σ_{l<t} (-1)^{k-l} binom(n+l-1, l) binom(m, k-l)`
/// for `t+1 <= k <= nt-n+m`.
pub fn beta_edge(n: u64, t: u64, k: u64) -> Result<ExactInt> {
    let p = PowerParams::new(n, t)?;
    check_edge_k(&p, k)?;
    let (n, t, m, k) = (ii(n), ii(t), ii(p.m), ii(k));
    let sum: ExactInt = (0..t)
        .map(|l| sgn(k - l) * binom(n + l - 1, l) * binom(m, k - l))
        .sum();
    Ok(binom(n - m + k - 1, k) - sum)
}

/// `Σ_{j=0}^{k-t} (-1)^j binom(n+k-j-1, k-j) binom(m, j)`, equal to
/// [`beta_edge`] on the same range.
pub fn eqi2_sum(n: u64, t: u64, k: u64) -> Result<ExactInt> {
    let p = PowerParams::new(n, t)?;
    check_edge_k(&p, k)?;
    let (n, t, m, k) = (ii(n), ii(t), ii(p.m), ii(k));
    Ok((0..=k - t)
        .map(|j| sgn(j) * binom(n + k - j - 1, k - j) * binom(m, j))
        .sum())
}

/// `b(n, m, t, k) = Σ_{j=0}^{k} (-1)^j binom(k+t, j) binom(n-j, m-j)`.
pub fn b_sum(n: i64, m: i64, t: i64, k: i64) -> ExactInt {
    (0..=k)
        .map(|j| sgn(j) * binom(k + t, j) * binom(n - j, m - j))
        .sum()
}

/// `binom(n-t-k, m)`, the value of `b(n, m, t, k)` when `1 <= m <= k`.
pub fn b_closed(n: i64, m: i64, t: i64, k: i64) -> Result<ExactInt> {
    if m < 1 || m > k {
        return Err(Error::InvalidParameter(format!(
            "closed form needs 1 <= m <= k, got m={m}, k={k}"
        )));
    }
    Ok(binom(n - t - k, m))
}

fn check_j(j: i64, max: i64) -> Result<()> {
    if j < 0 || j > max {
        return Err(Error::IndexOutOfRange(format!(
            "need 0 <= j <= {max}, got {j}"
        )));
    }
    Ok(())
}

/// `f(n, m, t, k, j) = binom(k+t, j) binom(n-j, m-j)`, the `j`-th term of `b`.
pub fn f_term(n: i64, m: i64, t: i64, k: i64, j: i64) -> Result<ExactInt> {
    check_j(j, k)?;
    Ok(binom(k + t, j) * binom(n - j, m - j))
}

/// Whether `f(.., j) >= f(.., j+1)`, by comparing the two exact terms.
pub fn f_ratio_ge_one(n: i64, m: i64, t: i64, k: i64, j: i64) -> Result<bool> {
    check_j(j, k - 1)?;
    Ok(f_term(n, m, t, k, j)? >= f_term(n, m, t, k, j + 1)?)
}

/// `f(j) / f(j+1)` computed from the two terms; `None` when `f(j+1) = 0`.
pub fn f_ratio_exact(n: i64, m: i64, t: i64, k: i64, j: i64) -> Result<Option<ExactRatio>> {
    check_j(j, k - 1)?;
    let den = f_term(n, m, t, k, j + 1)?;
    if den.is_zero() {
        return Ok(None);
    }
    Ok(Some(ExactRatio::new(f_term(n, m, t, k, j)?, den)?))
}

/// The displayed ratio `(n-k+j+1)(j+1) / ((m-k+j+1)(k+t-j))`. It does not
/// agree with [`f_ratio_exact`] in general.
pub fn f_ratio_as_printed(n: i64, m: i64, t: i64, k: i64, j: i64) -> Result<ExactRatio> {
    ExactRatio::new(
        BigInt::from((n - k + j + 1) * (j + 1)),
        BigInt::from((m - k + j + 1) * (k + t - j)),
    )
}

/// `φ(j) = m + k + t - 2j - 1 + (m-k)(k+t+1)/(j+1)`.
pub fn phi(m: i64, k: i64, t: i64, j: i64) -> Result<ExactRatio> {
    if j < 0 {
        return Err(Error::IndexOutOfRange(format!("need j >= 0, got {j}")));
    }
    let frac = ExactRatio::new(BigInt::from((m - k) * (k + t + 1)), BigInt::from(j + 1))?;
    Ok(&ExactRatio::from_int(m + k + t - 2 * j - 1) + &frac)
}

/// Which first argument the `b`-criterion feeds to `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CriterionIndexing {
    /// `b(n + t + κ - 1, m, t, κ)`: the substitution `n' = n + k - 1`,
    /// `κ = k - t` applied to the edge sums.
    Corrected,
    /// `b(n + κ - 1, m, t, κ)` as stated; fails already at `(n, t) = (2, 2)`.
    Literal,
}

/// Checks `b(.., m, t, κ) >= 0` for `1 <= κ <= nt - n - t + m`. When the
/// corrected variant holds, `qdepth(𝔪^t) = m`.
pub fn criterion_b(n: u64, t: u64) -> Result<bool> {
    criterion_b_with(n, t, CriterionIndexing::Corrected)
}

pub fn criterion_b_with(n: u64, t: u64, indexing: CriterionIndexing) -> Result<bool> {
    let p = PowerParams::new(n, t)?;
    let (n, t, m) = (ii(n), ii(t), ii(p.m));
    let top = n * t - n - t + m;
    Ok((1..=top).all(|kappa| {
        let first = match indexing {
            CriterionIndexing::Corrected => n + t + kappa - 1,
            CriterionIndexing::Literal => n + kappa - 1,
        };
        !b_sum(first, m, t, kappa).is_negative()
    }))
}

/// Walks rows `d = top, top-1, ..., 0` starting from `row` (the full row at
/// `d = top`), deriving each lower row by prefix sums:
/// `β_k^{d-1} = Σ_{i<=k} β_i^d`. This holds for any α vector, since the
/// generating function of row `d` is `(1-y)` times that of row `d-1`.
pub fn descend_rows(mut row: Vec<ExactInt>, mut visit: impl FnMut(usize, &[ExactInt])) {
    let top = row.len() - 1;
    for d in (0..=top).rev() {
        visit(d, &row);
        if d == 0 {
            break;
        }
        row.truncate(d);
        for k in 1..d {
            let (lo, hi) = row.split_at_mut(k);
            hi[0] += &lo[k - 1];
        }
    }
}

/// Every β row of `I_t`, `rows[d][k]`, via the descent. Intended for tests and
/// small parameters.
pub fn beta_ideal_rows(n: u64, t: u64) -> Result<Vec<Vec<ExactInt>>> {
    let p = PowerParams::new(n, t)?;
    let top = top_row(&p, beta_ideal_power)?;
    let mut rows = vec![Vec::new(); top.len()];
    descend_rows(top, |d, r| rows[d] = r.to_vec());
    Ok(rows)
}

fn top_row(
    p: &PowerParams,
    f: fn(u64, u64, u64, u64) -> Result<ExactInt>,
) -> Result<Vec<ExactInt>> {
    let nt = p.nvars();
    (0..=nt).map(|k| f(p.n, p.t, nt, k)).collect()
}

/// `qdepth(𝔪^t)` from the closed-form β values of `I_t`.
///
/// Every `d` in `0..=nt` is tested; the top row comes from
/// [`beta_ideal_power`] and the rest from [`descend_rows`].
pub fn qdepth_power_fast(n: u64, t: u64) -> Result<QDepthResult> {
    let p = PowerParams::new(n, t)?;
    let mut descent = Descent::new(p.nvars() as usize);
    descend_rows(top_row(&p, beta_ideal_power)?, |d, r| descent.visit(d, r));
    Ok(descent.finish((n * (t - 1)) as usize))
}

/// `qdepth(S / 𝔪^t)` from the closed-form β values of `R_t / I_t`.
pub fn qdepth_quotient_power_fast(n: u64, t: u64) -> Result<QDepthResult> {
    let p = PowerParams::new(n, t)?;
    let mut descent = Descent::new(p.nvars() as usize);
    descend_rows(top_row(&p, beta_quotient_power)?, |d, r| {
        descent.visit(d, r)
    });
    Ok(descent.finish((n * (t - 1)) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn params() {
        let p = PowerParams::new(7, 2).unwrap();
        assert_eq!((p.m, p.nvars(), p.edge_d()), (3, 14, 10));
        assert!(PowerParams::new(1, 2).is_err());
        assert!(PowerParams::new(3, 0).is_err());
        for n in 2..60 {
            for t in 1..8 {
                let p = PowerParams::new(n, t).unwrap();
                assert!(p.m * (t + 1) >= n && n > (p.m - 1) * (t + 1));
            }
        }
    }

    #[test]
    fn alpha_power_examples() {
        assert_eq!(alpha_power(2, 2, 2).unwrap(), big(3));
        assert_eq!(alpha_power(3, 2, 2).unwrap(), big(9));
        assert_eq!(alpha_power(2, 2, 4).unwrap(), big(0));
        assert!(alpha_power(2, 2, 5).is_err());
    }

    #[test]
    fn beta_quotient_examples() {
        assert_eq!(beta_quotient_power(2, 2, 2, 1).unwrap(), big(2));
        assert_eq!(beta_quotient_power(2, 2, 2, 2).unwrap(), big(0));
        for n in 2..7 {
            for t in 1..5 {
                for k in 0..t {
                    assert_eq!(
                        beta_quotient_power(n, t, n * t - n, k).unwrap(),
                        binom((n + k - 1) as i64, k as i64)
                    );
                }
            }
        }
        assert!(beta_quotient_power(2, 2, 5, 1).is_err());
        assert!(beta_quotient_power(2, 2, 2, 3).is_err());
    }

    #[test]
    fn beta_ideal_examples() {
        assert_eq!(beta_ideal_power(2, 2, 4, 3).unwrap(), big(-2));
        assert_eq!(beta_ideal_power(2, 2, 3, 3).unwrap(), big(1));
        assert_eq!(beta_ideal_power(3, 2, 5, 3).unwrap(), big(-2));
    }

    #[test]
    fn edge_examples() {
        assert_eq!(beta_edge_plus(2, 2).unwrap(), big(-2));
        assert_eq!(beta_edge_plus(3, 2).unwrap(), big(-2));
        assert_eq!(beta_edge_plus(7, 2).unwrap(), big(-28));
        assert_eq!(beta_edge(2, 2, 3).unwrap(), big(1));
        assert_eq!(beta_edge(3, 2, 3).unwrap(), eqi2_sum(3, 2, 3).unwrap());
        assert_eq!(eqi2_sum(2, 2, 3).unwrap(), big(1));
        // t >= n-1: β_k^{nt-n+1} = binom(n+k-2, k)
        for n in 2..7u64 {
            for t in n - 1..n + 3 {
                for k in t + 1..=n * t - n + 1 {
                    assert_eq!(
                        beta_edge(n, t, k).unwrap(),
                        binom((n + k - 2) as i64, k as i64)
                    );
                }
            }
        }
    }

    #[test]
    fn edge_range_errors() {
        assert!(beta_edge(2, 2, 2).is_err());
        assert!(beta_edge(2, 2, 4).is_err());
        // k = 2 is above nt-n+m = 1 for (n, t) = (2, 1)
        assert!(eqi2_sum(2, 1, 2).is_err());
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_sum(10, 2, 3, 2), big(10));
        assert_eq!(b_sum(6, 1, 2, 1), big(3));
        assert_eq!(b_sum(4, 1, 2, 1), big(1));
        assert_eq!(b_closed(10, 2, 3, 2).unwrap(), big(10));
        assert_eq!(b_closed(6, 1, 2, 1).unwrap(), big(3));
        assert_eq!(b_closed(5, 3, 1, 3).unwrap(), big(0));
        assert_eq!(b_sum(5, 3, 1, 3), big(0));
        assert!(b_closed(5, 4, 1, 3).is_err());
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_term(10, 4, 1, 3, 1).unwrap(), big(336));
        assert!(f_ratio_ge_one(10, 4, 1, 3, 1).unwrap());
        assert!(!f_ratio_ge_one(10, 4, 1, 3, 0).unwrap());
        assert!(f_term(10, 4, 1, 3, 4).is_err());
        assert!(f_ratio_ge_one(10, 4, 1, 3, 3).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(4, 1, 1, 0).unwrap(), ExactRatio::from_int(14));
        for m in 1..6 {
            for t in 1..4 {
                for j in 0..5 {
                    assert_eq!(
                        phi(m, m, t, j).unwrap(),
                        ExactRatio::from_int(m + m + t - 2 * j - 1)
                    );
                }
            }
        }
        for m in 1..10 {
            for k in 1..=m {
                for t in 1..6 {
                    for j in 0..10 {
                        assert!(phi(m, k, t, j).unwrap() >= phi(m, k, t, j + 1).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn criterion_examples() {
        assert!(criterion_b(2, 2).unwrap());
        assert_eq!(b_sum(4, 1, 2, 1), big(1));
        assert!(criterion_b(4, 1).unwrap());
        assert!(!criterion_b_with(2, 2, CriterionIndexing::Literal).unwrap());
        assert_eq!(b_sum(2, 1, 2, 1), big(-1));
    }

    #[test]
    fn fast_examples() {
        assert_eq!(qdepth_power_fast(4, 1).unwrap().qdepth, 2);
        assert_eq!(qdepth_power_fast(7, 2).unwrap().qdepth, 3);
        assert_eq!(qdepth_power_fast(3, 5).unwrap().qdepth, 1);
        let r = qdepth_power_fast(2, 2).unwrap();
        assert_eq!((r.polarized_qdepth, r.added_vars), (3, 2));
        let w = r.witness.unwrap();
        assert_eq!((w.d, w.k, w.beta), (4, 3, big(-2)));
    }

    #[test]
    fn descent_rows_match_direct_formula() {
        for n in 2..6u64 {
            for t in 1..5u64 {
                let rows = beta_ideal_rows(n, t).unwrap();
                for (d, row) in rows.iter().enumerate() {
                    assert_eq!(row.len(), d + 1);
                    for (k, v) in row.iter().enumerate() {
                        assert_eq!(v, &beta_ideal_power(n, t, d as u64, k as u64).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_fast_is_zero() {
        for n in 2..8 {
            for t in 1..5 {
                let r = qdepth_quotient_power_fast(n, t).unwrap();
                assert_eq!(r.qdepth, 0);
                assert_eq!(r.polarized_qdepth as u64, n * t - n);
            }
        }
    }

    #[test]
    fn printed_edge_differs() {
        assert_eq!(beta_edge_plus_as_printed(2, 2).unwrap(), big(-3));
        assert_eq!(beta_edge_plus_closed(2, 2).unwrap(), big(-2));
        assert!(edge_plus_factor(2, 2).unwrap().is_negative());
    }
}
