//! Per-statement verifiers for the quasi depth of `𝔪^t`.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom, ExactInt};
use crate::power::{
    beta_edge_plus, beta_quotient_power, qdepth_power_fast, qdepth_quotient_power_fast, PowerParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `qdepth(𝔪^t) <= ⌈n/(t+1)⌉`, with the edge β value as negativity witness.
    UpperBound,
    /// `qdepth(𝔪^t) = 1` when `t >= n - 1`.
    TGeNMinus1,
    /// `qdepth(𝔪^2) = ⌈n/3⌉`.
    Square,
    /// `qdepth(𝔪^t) = ⌈n/(t+1)⌉` when `n <= (t+1)(t+3)`.
    Teo3,
    /// `qdepth(S/𝔪^t) = 0`.
    RemarkZero,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::UpperBound,
        TheoremId::TGeNMinus1,
        TheoremId::Square,
        TheoremId::Teo3,
        TheoremId::RemarkZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::UpperBound => "upper_bound",
            TheoremId::TGeNMinus1 => "t_ge_n_minus_1",
            TheoremId::Square => "square",
            TheoremId::Teo3 => "teo3",
            TheoremId::RemarkZero => "remark_zero",
        }
    }

    /// Whether `(n, t)` satisfies the statement's hypothesis.
    pub fn applies(self, n: u64, t: u64) -> bool {
        match self {
            TheoremId::UpperBound | TheoremId::RemarkZero => true,
            TheoremId::TGeNMinus1 => t + 1 >= n,
            TheoremId::Square => t == 2,
            TheoremId::Teo3 => n <= (t + 1) * (t + 3),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown theorem `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub theorem: TheoremId,
    pub n: u64,
    pub t: u64,
    pub m: u64,
    pub pass: bool,
    pub qdepth: i64,
    pub expected: String,
    /// `β_{t+1}^{nt-n+m+1}(I_t)` for the upper bound, `β_t^{nt-n+1}(R_t/I_t)`
    /// for the zero-depth statement.
    #[serde(with = "opt_decimal")]
    pub witness_beta: Option<ExactInt>,
}

mod opt_decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(b) => s.serialize_some(&b.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub fn verify_theorem(id: TheoremId, n: u64, t: u64) -> Result<VerdictRecord> {
    let p = PowerParams::new(n, t)?;
    if !id.applies(n, t) {
        return Err(Error::Hypothesis {
            theorem: id.name(),
            n,
            t,
        });
    }
    let record = |pass, qdepth, expected: String, witness_beta| VerdictRecord {
        theorem: id,
        n,
        t,
        m: p.m,
        pass,
        qdepth,
        expected,
        witness_beta,
    };
    let m = p.m as i64;
    match id {
        TheoremId::UpperBound => {
            let q = qdepth_power_fast(n, t)?.qdepth;
            let edge = beta_edge_plus(n, t)?;
            let pass = q <= m && edge.is_negative();
            Ok(record(pass, q, format!("<= {m}"), Some(edge)))
        }
        TheoremId::TGeNMinus1 => {
            let q = qdepth_power_fast(n, t)?.qdepth;
            Ok(record(q == 1, q, "1".into(), None))
        }
        TheoremId::Square | TheoremId::Teo3 => {
            let q = qdepth_power_fast(n, t)?.qdepth;
            Ok(record(q == m, q, m.to_string(), None))
        }
        TheoremId::RemarkZero => {
            let r = qdepth_quotient_power_fast(n, t)?;
            let base = n * t - n;
            let (ni, ti) = (n as i64, t as i64);
            let row_ok = (0..=base).all(|k| {
                let expect = if k < t {
                    binom(ni + k as i64 - 1, k as i64)
                } else {
                    0.into()
                };
                beta_quotient_power(n, t, base, k).is_ok_and(|b| b == expect)
            });
            let w = beta_quotient_power(n, t, base + 1, t)?;
            let w_ok = w == -binom(ni + ti - 2, ti - 1) && w.is_negative();
            let pass = r.polarized_qdepth as u64 == base && r.qdepth == 0 && row_ok && w_ok;
            Ok(record(pass, r.qdepth, "0".into(), Some(w)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn examples() {
        let v = verify_theorem(TheoremId::UpperBound, 5, 2).unwrap();
        assert!(v.pass);
        assert!(v.witness_beta.unwrap().is_negative());
        let v = verify_theorem(TheoremId::Square, 9, 2).unwrap();
        assert!(v.pass && v.qdepth == 3);
        let v = verify_theorem(TheoremId::Teo3, 15, 3).unwrap();
        assert!(v.pass && v.qdepth == 4);
        let v = verify_theorem(TheoremId::RemarkZero, 3, 3).unwrap();
        assert!(v.pass);
        assert_eq!(v.witness_beta, Some(BigInt::from(-6)));
        assert!(verify_theorem(TheoremId::TGeNMinus1, 4, 3).unwrap().pass);
    }

    #[test]
    fn hypothesis_violations() {
        assert!(matches!(
            verify_theorem(TheoremId::Square, 9, 3),
            Err(Error::Hypothesis { .. })
        ));
        assert!(matches!(
            verify_theorem(TheoremId::TGeNMinus1, 6, 2),
            Err(Error::Hypothesis { .. })
        ));
        assert!(matches!(
            verify_theorem(TheoremId::Teo3, 25, 3),
            Err(Error::Hypothesis { .. })
        ));
        assert!(matches!(
            verify_theorem(TheoremId::UpperBound, 1, 3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn names_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }
}
