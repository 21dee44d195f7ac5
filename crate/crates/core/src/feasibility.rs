//! Quasi-depth bookkeeping shared by the enumeration oracle and the closed-form
//! path: given every β row, find the largest feasible `d` (all `β_k^d >= 0`),
//! its certificate row, and a negative entry of the row above it.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::exact::ExactInt;

/// A negative β entry `β_k^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub d: usize,
    pub k: usize,
    #[serde(with = "crate::decimal")]
    pub beta: ExactInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QDepthResult {
    /// Polarized quasi depth minus the number of added variables.
    pub qdepth: i64,
    pub polarized_qdepth: usize,
    pub added_vars: usize,
    /// Variable count of the (polarized) ring the β rows live in.
    pub nvars: usize,
    /// First negative entry of row `polarized_qdepth + 1`, if that row exists.
    pub witness: Option<Witness>,
    /// Row `polarized_qdepth`, all entries nonnegative.
    #[serde(with = "crate::decimal::vec")]
    pub certificate: Vec<ExactInt>,
    /// Some `d < polarized_qdepth` was infeasible.
    pub gap_below: bool,
}

pub(crate) fn is_feasible(row: &[BigInt]) -> bool {
    row.iter().all(|b| !b.is_negative())
}

fn first_negative(d: usize, row: &[BigInt]) -> Option<Witness> {
    row.iter()
        .enumerate()
        .find(|(_, b)| b.is_negative())
        .map(|(k, b)| Witness {
            d,
            k,
            beta: b.clone(),
        })
}

/// Consumes rows in strictly decreasing `d` order (`d = nvars, ..., 0`).
pub(crate) struct Descent {
    nvars: usize,
    above: Option<Witness>,
    found: Option<(usize, Vec<BigInt>, Option<Witness>)>,
    gap_below: bool,
}

impl Descent {
    pub fn new(nvars: usize) -> Self {
        Descent {
            nvars,
            above: None,
            found: None,
            gap_below: false,
        }
    }

    pub fn visit(&mut self, d: usize, row: &[BigInt]) {
        let feasible = is_feasible(row);
        if self.found.is_some() {
            self.gap_below |= !feasible;
            return;
        }
        if feasible {
            self.found = Some((d, row.to_vec(), self.above.take()));
        } else {
            self.above = first_negative(d, row);
        }
    }

    pub fn finish(self, added_vars: usize) -> QDepthResult {
        // row 0 is (α_0) and α_0 >= 0, so a feasible row always exists
        let (d, certificate, witness) = self.found.expect("row d = 0 is always feasible");
        debug_assert!(d == self.nvars || witness.is_some());
        QDepthResult {
            qdepth: d as i64 - added_vars as i64,
            polarized_qdepth: d,
            added_vars,
            nvars: self.nvars,
            witness,
            certificate,
            gap_below: self.gap_below,
        }
    }
}
