//! Plain-text ideal files.
//!
//! ```text
//! # the square of the maximal ideal in two variables
//! vars: 2
//! x1^2
//! x1*x2
//! x2^2
//! ```
//!
//! One monomial per line, `^1` optional, `1` for the unit monomial. `#` starts
//! a comment and blank lines are ignored. A file with only the header is the
//! zero ideal.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut nvars: Option<usize> = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        match nvars {
            None => {
                let rest = line
                    .strip_prefix("vars:")
                    .ok_or_else(|| err("expected header `vars: <n>`".into()))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("invalid variable count `{}`", rest.trim())))?;
                if n == 0 {
                    return Err(err("variable count must be positive".into()));
                }
                nvars = Some(n);
            }
            Some(n) => gens.push(parse_monomial(line, n).map_err(err)?),
        }
    }
    let n = nvars.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing header `vars: <n>`".into(),
    })?;
    MonomialIdeal::new(n, gens)
}

fn parse_monomial(s: &str, nvars: usize) -> std::result::Result<Monomial, String> {
    let mut exps = vec![0u32; nvars];
    if s == "1" {
        return Ok(Monomial::new(exps));
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let body = factor
            .strip_prefix('x')
            .ok_or_else(|| format!("expected a variable like `x3`, found `{factor}`"))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i.trim(), e.trim()),
            None => (body, "1"),
        };
        let i: usize = idx
            .parse()
            .map_err(|_| format!("invalid variable index in `{factor}`"))?;
        if i == 0 || i > nvars {
            return Err(format!("variable x{i} outside x1..x{nvars}"));
        }
        let e: u32 = exp
            .parse()
            .map_err(|_| format!("invalid exponent in `{factor}`"))?;
        exps[i - 1] += e;
    }
    Ok(Monomial::new(exps))
}

pub fn render_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("vars: {}\n", ideal.nvars());
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
