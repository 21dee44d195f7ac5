//! Monomials, monomial ideals with minimal generators, squarefree enumeration
//! and polarization.

use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector over a fixed, ordered set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The identity monomial `1`.
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    /// Squarefree monomial with the given (0-based) support.
    pub fn from_support(nvars: usize, support: &[usize]) -> Self {
        let mut exps = vec![0; nvars];
        for &i in support {
            exps[i] = 1;
        }
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Bitmask of the support; `None` past 64 variables.
    pub fn support_mask(&self) -> Option<u64> {
        if self.exps.len() > 64 {
            return None;
        }
        Some(
            self.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i)),
        )
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        check_nvars(self.nvars(), other.nvars())?;
        Ok(self.divides_unchecked(other))
    }

    fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

fn check_nvars(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::NvarsMismatch { expected, found });
    }
    Ok(())
}

/// Monomial ideal stored by its minimal generating set.
///
/// Generators are kept in a canonical order (degree, then descending
/// exponent vector), so two values compare equal exactly when they are the
/// same ideal. An empty generator set is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            check_nvars(nvars, g.nvars())?;
        }
        Ok(MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Largest exponent of each variable over all generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.nvars];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn contains(&self, u: &Monomial) -> Result<bool> {
        check_nvars(self.nvars, u.nvars())?;
        Ok(self.gens.iter().any(|g| g.divides_unchecked(u)))
    }

    /// True when `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        check_nvars(self.nvars, other.nvars)?;
        Ok(other
            .gens
            .iter()
            .all(|g| self.gens.iter().any(|h| h.divides_unchecked(g))))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Minimal generating set in canonical order.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|g| g.degree());
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|h| h.divides_unchecked(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| Reverse(&a.exps).cmp(&Reverse(&b.exps)))
    });
    kept
}

/// `𝔪^t` in `n` variables: all monomials of degree exactly `t`.
pub fn maximal_power_ideal(n: usize, t: u32) -> Result<MonomialIdeal> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    if t < 1 {
        return Err(Error::InvalidParameter("t must be >= 1".into()));
    }
    let mut gens = Vec::new();
    let mut exps = vec![0u32; n];
    compositions(&mut exps, 0, t, &mut gens);
    MonomialIdeal::new(n, gens)
}

fn compositions(exps: &mut [u32], pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos == exps.len() - 1 {
        exps[pos] = left;
        out.push(Monomial::new(exps.to_vec()));
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        compositions(exps, pos + 1, left - e, out);
    }
    exps[pos] = 0;
}

/// Iterator over the squarefree monomials of degree `k` in colexicographic
/// order of their supports.
pub struct SquarefreeIter {
    nvars: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for SquarefreeIter {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let cur = self.current.as_mut()?;
        let out = Monomial::from_support(self.nvars, cur);
        let k = cur.len();
        let mut advanced = false;
        for i in 0..k {
            let limit = if i + 1 < k { cur[i + 1] } else { self.nvars };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().take(i) {
                    *c = j;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

pub fn squarefree_of_degree(nvars: usize, k: usize) -> Result<SquarefreeIter> {
    if k > nvars {
        return Err(Error::IndexOutOfRange(format!(
            "degree {k} exceeds {nvars} variables"
        )));
    }
    Ok(SquarefreeIter {
        nvars,
        current: Some((0..k).collect()),
    })
}

/// Pair `(I, J)` with `I ⊊ J` in a common ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientPresentation {
    inner: MonomialIdeal,
    outer: MonomialIdeal,
}

impl QuotientPresentation {
    pub fn new(inner: MonomialIdeal, outer: MonomialIdeal) -> Result<Self> {
        if !outer.contains_ideal(&inner)? {
            return Err(Error::NotContained);
        }
        if inner == outer {
            return Err(Error::EqualIdeals);
        }
        Ok(QuotientPresentation { inner, outer })
    }

    pub fn inner(&self) -> &MonomialIdeal {
        &self.inner
    }

    pub fn outer(&self) -> &MonomialIdeal {
        &self.outer
    }

    pub fn nvars(&self) -> usize {
        self.outer.nvars
    }

    pub fn is_squarefree(&self) -> bool {
        self.inner.is_squarefree() && self.outer.is_squarefree()
    }
}

/// Variable layout for polarizing one or more ideals into a shared ring.
///
/// Copy `s` (0-based) of variable `j` is placed level by level: level 0 keeps
/// the original variables, and each later level lists, in variable order, the
/// variables that still need a copy there. When every variable needs the same
/// number of copies this is the layout `x_{n*s + j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarizer {
    nvars: usize,
    enlarged: usize,
    var_map: Vec<Vec<usize>>,
}

impl Polarizer {
    pub fn for_ideals(ideals: &[&MonomialIdeal]) -> Result<Self> {
        let nvars = ideals
            .first()
            .map(|i| i.nvars())
            .ok_or_else(|| Error::InvalidParameter("no ideals to polarize".into()))?;
        let mut levels = vec![1u32; nvars];
        for ideal in ideals {
            check_nvars(nvars, ideal.nvars())?;
            for (l, e) in levels.iter_mut().zip(ideal.max_exponents()) {
                *l = (*l).max(e);
            }
        }
        let mut var_map: Vec<Vec<usize>> = (0..nvars).map(|j| vec![j]).collect();
        let mut next = nvars;
        let top = levels.iter().copied().max().unwrap_or(1);
        for s in 1..top {
            for j in 0..nvars {
                if levels[j] > s {
                    var_map[j].push(next);
                    next += 1;
                }
            }
        }
        Ok(Polarizer {
            nvars,
            enlarged: next,
            var_map,
        })
    }

    pub fn original_nvars(&self) -> usize {
        self.nvars
    }

    pub fn enlarged_nvars(&self) -> usize {
        self.enlarged
    }

    pub fn added_vars(&self) -> usize {
        self.enlarged - self.nvars
    }

    /// `var_map()[j][s]` is the polarized index of copy `s` of variable `j`.
    pub fn var_map(&self) -> &[Vec<usize>] {
        &self.var_map
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<Monomial> {
        check_nvars(self.nvars, m.nvars())?;
        let mut exps = vec![0u32; self.enlarged];
        for (j, &e) in m.exponents().iter().enumerate() {
            let copies = &self.var_map[j];
            if e as usize > copies.len() {
                return Err(Error::InvalidParameter(format!(
                    "exponent {e} of x{} exceeds the polarization layout",
                    j + 1
                )));
            }
            for &v in &copies[..e as usize] {
                exps[v] = 1;
            }
        }
        Ok(Monomial::new(exps))
    }

    pub fn apply(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        let gens = ideal
            .generators()
            .iter()
            .map(|g| self.apply_monomial(g))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(self.enlarged, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationResult {
    pub ideal: MonomialIdeal,
    pub added_vars: usize,
    pub var_map: Vec<Vec<usize>>,
}

pub fn polarize(ideal: &MonomialIdeal) -> Result<PolarizationResult> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let p = Polarizer::for_ideals(&[ideal])?;
    Ok(PolarizationResult {
        ideal: p.apply(ideal)?,
        added_vars: p.added_vars(),
        var_map: p.var_map,
    })
}
