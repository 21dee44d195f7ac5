//! Quasi depth by definition: count squarefree monomials of `J \ I` degree by
//! degree, transform the counts into β rows, and test every `d`.
//!
//! This path deliberately uses no closed forms. It is the ground truth the
//! formulas in [`crate::power`] are checked against.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom, ExactInt};
use crate::exec::Exec;
use crate::feasibility::{Descent, QDepthResult};
use crate::monomial::{MonomialIdeal, Polarizer, QuotientPresentation};

/// Largest polarized ring the enumeration accepts.
pub const MAX_ENUM_VARS: usize = 32;

/// `α_k(J/I)` for `k = 0..=nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaVector {
    #[serde(with = "crate::decimal::vec")]
    counts: Vec<ExactInt>,
}

impl AlphaVector {
    pub fn new(counts: Vec<ExactInt>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidParameter("empty α vector".into()));
        }
        Ok(AlphaVector { counts })
    }

    pub fn nvars(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[ExactInt] {
        &self.counts
    }

    pub fn get(&self, k: usize) -> &ExactInt {
        &self.counts[k]
    }
}

/// All `β_k^d` for `0 <= k <= d <= nvars`; `row(d)[k] = β_k^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTable {
    rows: Vec<Vec<ExactInt>>,
}

impl BetaTable {
    pub fn from_alpha(alpha: &AlphaVector) -> Self {
        let n = alpha.nvars();
        let rows = (0..=n)
            .map(|d| {
                (0..=d)
                    .map(|k| beta_from_alpha(alpha, d, k).expect("indices in range"))
                    .collect()
            })
            .collect();
        BetaTable { rows }
    }

    pub fn nvars(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, d: usize) -> &[ExactInt] {
        &self.rows[d]
    }
}

fn to_masks(ideal: &MonomialIdeal) -> Vec<u64> {
    ideal
        .generators()
        .iter()
        .map(|g| g.support_mask().expect("checked against MAX_ENUM_VARS"))
        .collect()
}

fn in_ideal(gens: &[u64], u: u64) -> bool {
    gens.iter().any(|&g| g & !u == 0)
}

/// Counts the degree-`k` subsets of `nvars` variables that lie in `outer` and
/// not in `inner`, visiting subsets in increasing bitmask (colex) order.
fn count_degree(nvars: usize, k: usize, inner: &[u64], outer: &[u64]) -> u64 {
    let mut count = 0;
    let mut mask: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let last = mask << (nvars - k);
    loop {
        if in_ideal(outer, mask) && !in_ideal(inner, mask) {
            count += 1;
        }
        if mask == last {
            break;
        }
        // next subset of the same size
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    count
}

pub fn alpha_enumerate(q: &QuotientPresentation) -> Result<AlphaVector> {
    alpha_enumerate_with(q, Exec::default())
}

pub fn alpha_enumerate_with(q: &QuotientPresentation, exec: Exec) -> Result<AlphaVector> {
    for g in q.inner().generators().iter().chain(q.outer().generators()) {
        if !g.is_squarefree() {
            return Err(Error::NotSquarefree(g.to_string()));
        }
    }
    let nvars = q.nvars();
    if nvars > MAX_ENUM_VARS {
        return Err(Error::TooManyVariables {
            nvars,
            limit: MAX_ENUM_VARS,
        });
    }
    let inner = to_masks(q.inner());
    let outer = to_masks(q.outer());
    let degrees: Vec<usize> = (0..=nvars).collect();
    let counts = exec.map(&degrees, |&k| {
        BigInt::from(count_degree(nvars, k, &inner, &outer))
    });
    AlphaVector::new(counts)
}

fn check_indices(d: usize, k: usize, nvars: Option<usize>) -> Result<()> {
    if k > d || nvars.is_some_and(|n| d > n) {
        return Err(Error::IndexOutOfRange(format!(
            "need 0 <= k <= d <= nvars, got k={k}, d={d}"
        )));
    }
    Ok(())
}

/// `β_k^d = Σ_{j<=k} (-1)^{k-j} binom(d-j, k-j) α_j`.
pub fn beta_from_alpha(alpha: &AlphaVector, d: usize, k: usize) -> Result<ExactInt> {
    check_indices(d, k, Some(alpha.nvars()))?;
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binom((d - j) as i64, (k - j) as i64) * alpha.get(j);
        if (k - j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `α_k = Σ_{j<=k} binom(d-j, k-j) β_j^d`, the inverse transform of one row.
pub fn alpha_from_beta(beta_row: &[ExactInt], d: usize, k: usize) -> Result<ExactInt> {
    check_indices(d, k, None)?;
    if beta_row.len() <= k {
        return Err(Error::IndexOutOfRange(format!(
            "β row has {} entries, need index {k}",
            beta_row.len()
        )));
    }
    Ok((0..=k)
        .map(|j| binom((d - j) as i64, (k - j) as i64) * &beta_row[j])
        .sum())
}

/// Quasi depth of a squarefree quotient, testing every `d` in `0..=nvars`.
pub fn qdepth_squarefree(q: &QuotientPresentation) -> Result<QDepthResult> {
    qdepth_squarefree_with(q, Exec::default())
}

pub fn qdepth_squarefree_with(q: &QuotientPresentation, exec: Exec) -> Result<QDepthResult> {
    let alpha = alpha_enumerate_with(q, exec)?;
    Ok(qdepth_from_alpha(&alpha, 0))
}

pub(crate) fn qdepth_from_alpha(alpha: &AlphaVector, added_vars: usize) -> QDepthResult {
    let table = BetaTable::from_alpha(alpha);
    let mut descent = Descent::new(table.nvars());
    for d in (0..=table.nvars()).rev() {
        descent.visit(d, table.row(d));
    }
    descent.finish(added_vars)
}

/// Quasi depth of `outer / inner` for arbitrary monomial ideals: polarize both
/// into one ring, compute the squarefree quasi depth, subtract the number of
/// added variables.
pub fn qdepth_general(inner: &MonomialIdeal, outer: &MonomialIdeal) -> Result<QDepthResult> {
    qdepth_general_with(inner, outer, Exec::default())
}

pub fn qdepth_general_with(
    inner: &MonomialIdeal,
    outer: &MonomialIdeal,
    exec: Exec,
) -> Result<QDepthResult> {
    QuotientPresentation::new(inner.clone(), outer.clone())?;
    let pol = Polarizer::for_ideals(&[inner, outer])?;
    let q = QuotientPresentation::new(pol.apply(inner)?, pol.apply(outer)?)?;
    let alpha = alpha_enumerate_with(&q, exec)?;
    Ok(qdepth_from_alpha(&alpha, pol.added_vars()))
}
