//! Integer calculus on types `(d; ν_1, ..., ν_r)`.
//!
//! A [`MultiplicityType`] is a degree together with virtual multiplicities
//! attached to point positions. Positions are never reordered: every
//! selection of "the three highest" multiplicities goes through
//! [`MultiplicityType::sorted_indices`], which sorts non-increasingly and
//! breaks ties by the lowest position.

mod hudson;
mod literal;

pub use hudson::{hudson_test, HudsonStep, HudsonTrace, Verdict};
pub use literal::{parse_literal, ParseError};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("a type needs at least one multiplicity")]
    Empty,
    #[error("negative multiplicity {value} at position {}", .index + 1)]
    NegativeMultiplicity { index: usize, value: i64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("not sub-homaloidal: {0}")]
    NotSubhomaloidal(String),
    #[error("not homaloidal: {0}")]
    NotHomaloidal(String),
    #[error("not 3-uniform: {0}")]
    NotThreeUniform(String),
    #[error("indices must be distinct, got ({}, {}, {})", .0[0] + 1, .0[1] + 1, .0[2] + 1)]
    RepeatedIndex([usize; 3]),
    #[error("index {} is outside arity {arity}", .index + 1)]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("the first multiplicity must be a maximal one ({first} < {max})")]
    LeadingNotMaximal { first: i64, max: i64 },
    #[error("the minus type is undefined when the first multiplicity is 0")]
    MinusUndefined,
    #[error("need at least {needed} multiplicities, got {got}")]
    TooFewMultiplicities { needed: usize, got: usize },
    #[error("degree must be non-negative, got {0}")]
    NegativeDegree(i64),
}

/// A degree paired with positional virtual multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityType {
    degree: i64,
    mults: Vec<i64>,
}

impl MultiplicityType {
    /// Builds a user-supplied type. Negative multiplicities are rejected.
    pub fn new(degree: i64, mults: Vec<i64>) -> Result<Self, TypeError> {
        if mults.is_empty() {
            return Err(TypeError::Empty);
        }
        if let Some((index, &value)) = mults.iter().enumerate().find(|(_, &m)| m < 0) {
            return Err(TypeError::NegativeMultiplicity { index, value });
        }
        Ok(Self { degree, mults })
    }

    /// Builds a type that may carry negative multiplicities, as produced by
    /// quadratic transformations.
    pub(crate) fn virtual_type(degree: i64, mults: Vec<i64>) -> Self {
        debug_assert!(!mults.is_empty());
        Self { degree, mults }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn arity(&self) -> usize {
        self.mults.len()
    }

    pub fn has_negative(&self) -> bool {
        self.mults.iter().any(|&m| m < 0)
    }

    /// Positions ordered by non-increasing multiplicity, ties by lowest position.
    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.mults.len()).collect();
        idx.sort_by(|&a, &b| self.mults[b].cmp(&self.mults[a]).then(a.cmp(&b)));
        idx
    }

    /// The canonical view: multiplicities sorted non-increasingly, zeros kept.
    pub fn sorted(&self) -> Self {
        let mut mults = self.mults.clone();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            degree: self.degree,
            mults,
        }
    }

    /// Multiplicities of the canonical view.
    pub fn sorted_mults(&self) -> Vec<i64> {
        self.sorted().mults
    }

    /// Extends the arity with trailing zeros up to `arity`.
    pub fn padded(&self, arity: usize) -> Self {
        let mut mults = self.mults.clone();
        if mults.len() < arity {
            mults.resize(arity, 0);
        }
        Self {
            degree: self.degree,
            mults,
        }
    }

    /// Multiplies the degree and every multiplicity by `n`.
    pub fn scaled(&self, n: i64) -> Result<Self, TypeError> {
        let degree = self
            .degree
            .checked_mul(n)
            .ok_or(TypeError::Overflow("scaled degree"))?;
        let mults = self
            .mults
            .iter()
            .map(|m| {
                m.checked_mul(n)
                    .ok_or(TypeError::Overflow("scaled multiplicity"))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { degree, mults })
    }

    fn require_nonnegative(&self) -> Result<(), TypeError> {
        match self.mults.iter().enumerate().find(|(_, &m)| m < 0) {
            Some((index, &value)) => Err(TypeError::NegativeMultiplicity { index, value }),
            None => Ok(()),
        }
    }

    fn top_three_sum(&self) -> Result<i64, TypeError> {
        let s = self.sorted_mults();
        s.iter()
            .take(3)
            .try_fold(0i64, |acc, &m| acc.checked_add(m))
            .ok_or(TypeError::Overflow(
                "sum of the three highest multiplicities",
            ))
    }
}

impl fmt::Display for MultiplicityType {
    /// Canonical literal: sorted non-increasingly with runs compressed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.degree, format_runs(&self.sorted_mults()))
    }
}

/// Prints a non-increasing multiset as `m1^e1,m2^e2,...`.
pub fn format_runs(sorted: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        let run = j - i;
        if run == 1 {
            parts.push(v.to_string());
        } else {
            parts.push(format!("{v}^{run}"));
        }
        i = j;
    }
    parts.join(",")
}

fn checked_sum(values: &[i64], what: &'static str) -> Result<i64, TypeError> {
    values
        .iter()
        .try_fold(0i64, |acc, &m| acc.checked_add(m))
        .ok_or(TypeError::Overflow(what))
}

fn checked_square_sum(values: &[i64], what: &'static str) -> Result<i64, TypeError> {
    values
        .iter()
        .try_fold(0i64, |acc, &m| {
            m.checked_mul(m).and_then(|sq| acc.checked_add(sq))
        })
        .ok_or(TypeError::Overflow(what))
}

/// `C(n+1, 2) = n(n+1)/2` with overflow detection.
fn triangle(n: i64) -> Result<i64, TypeError> {
    n.checked_mul(n + 1)
        .map(|v| v / 2)
        .ok_or(TypeError::Overflow("binomial coefficient"))
}

/// Result of checking both families of equations of condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeClassification {
    pub is_homaloidal: bool,
    pub subhomaloidal_degree: Option<i64>,
    pub noether: bool,
    pub three_uniform: Option<bool>,
    pub bordiga: Option<bool>,
}

/// Checks `Σν = 3(d−1), Σν² = d²−1` against the type's own degree and
/// `Σμ = 3(s−1), Σμ² = s(s−1)` for the unique candidate `s`.
pub fn classify(t: &MultiplicityType) -> Result<TypeClassification, TypeError> {
    t.require_nonnegative()?;
    let sum = checked_sum(&t.mults, "multiplicity sum")?;
    let sq = checked_square_sum(&t.mults, "square sum")?;
    let d = t.degree;

    let is_homaloidal = d >= 1
        && (d.checked_sub(1).and_then(|v| v.checked_mul(3)) == Some(sum))
        && (d.checked_mul(d).and_then(|v| v.checked_sub(1)) == Some(sq));

    let subhomaloidal_degree = subhomaloidal_degree_of(sum, sq)?;
    let top = t.top_three_sum()?;
    let noether = top > d;

    let (three_uniform, bordiga) = match subhomaloidal_degree {
        Some(s) => {
            let sorted = t.sorted().padded(3).mults;
            let uniform = (s - 1) % 2 == 0 && sorted[..3].iter().all(|&m| 2 * m == s - 1);
            let bordiga = 2 * top == 3 * (s - 1);
            (Some(uniform), Some(bordiga))
        }
        None => (None, None),
    };

    Ok(TypeClassification {
        is_homaloidal,
        subhomaloidal_degree,
        noether,
        three_uniform,
        bordiga,
    })
}

fn subhomaloidal_degree_of(sum: i64, sq: i64) -> Result<Option<i64>, TypeError> {
    if sum % 3 != 0 {
        return Ok(None);
    }
    let s = sum / 3 + 1;
    if s < 2 {
        return Ok(None);
    }
    let rhs = s
        .checked_mul(s - 1)
        .ok_or(TypeError::Overflow("sub-homaloidal square relation"))?;
    Ok((rhs == sq).then_some(s))
}

/// Explains which sub-homaloidal relation fails, if any.
fn subhomaloidal_failure(t: &MultiplicityType) -> Result<Option<String>, TypeError> {
    let sum = checked_sum(&t.mults, "multiplicity sum")?;
    let sq = checked_square_sum(&t.mults, "square sum")?;
    if sum % 3 != 0 {
        return Ok(Some(format!("Σμ = {sum} is not of the form 3(s−1)")));
    }
    let s = sum / 3 + 1;
    if s < 2 {
        return Ok(Some(format!("Σμ = {sum} gives s = {s} < 2")));
    }
    if s * (s - 1) != sq {
        return Ok(Some(format!(
            "Σμ² = {sq} but s(s−1) = {} for s = {s}",
            s * (s - 1)
        )));
    }
    Ok(None)
}

/// Maps a sub-homaloidal `(s; μ)` to the homaloidal `(2s−1; 2μ)`.
pub fn double(t: &MultiplicityType) -> Result<MultiplicityType, TypeError> {
    t.require_nonnegative()?;
    if let Some(reason) = subhomaloidal_failure(t)? {
        return Err(TypeError::NotSubhomaloidal(reason));
    }
    let s = checked_sum(&t.mults, "multiplicity sum")? / 3 + 1;
    let degree = s
        .checked_mul(2)
        .and_then(|v| v.checked_sub(1))
        .ok_or(TypeError::Overflow("doubled degree"))?;
    let doubled = t.scaled(2)?;
    Ok(MultiplicityType::virtual_type(degree, doubled.mults))
}

/// Arithmetic quadratic transformation based at positions `j, k, l`
/// (zero-based). Types of arity < 3 are padded with zeros first.
pub fn quad_transform(
    t: &MultiplicityType,
    j: usize,
    k: usize,
    l: usize,
) -> Result<MultiplicityType, TypeError> {
    if j == k || k == l || j == l {
        return Err(TypeError::RepeatedIndex([j, k, l]));
    }
    let padded = t.padded(3);
    let arity = padded.arity();
    for index in [j, k, l] {
        if index >= arity {
            return Err(TypeError::IndexOutOfRange { index, arity });
        }
    }
    let d = padded.degree;
    let (a, b, c) = (padded.mults[j], padded.mults[k], padded.mults[l]);
    let ovf = || TypeError::Overflow("quadratic transformation");
    let degree = d
        .checked_mul(2)
        .and_then(|v| v.checked_sub(a))
        .and_then(|v| v.checked_sub(b))
        .and_then(|v| v.checked_sub(c))
        .ok_or_else(ovf)?;
    let minus_two = |x: i64, y: i64| d.checked_sub(x).and_then(|v| v.checked_sub(y));
    let mut mults = padded.mults;
    mults[j] = minus_two(b, c).ok_or_else(ovf)?;
    mults[k] = minus_two(a, c).ok_or_else(ovf)?;
    mults[l] = minus_two(a, b).ok_or_else(ovf)?;
    Ok(MultiplicityType::virtual_type(degree, mults))
}

/// Quadratic transformation at the three highest multiplicities of the
/// sorted view.
pub fn quad_transform_highest(t: &MultiplicityType) -> Result<MultiplicityType, TypeError> {
    let idx = t.padded(3).sorted_indices();
    quad_transform(t, idx[0], idx[1], idx[2])
}

/// Σ μ_i(μ_i+1)/2, the degree of the fat point scheme.
pub fn scheme_degree(t: &MultiplicityType) -> Result<i64, TypeError> {
    t.require_nonnegative()?;
    t.mults.iter().try_fold(0i64, |acc, &m| {
        triangle(m)?
            .checked_add(acc)
            .ok_or(TypeError::Overflow("scheme degree"))
    })
}

/// `max{0, C(deg+2, 2) − Σ C(μ_i+1, 2)}`.
pub fn expected_dim(t: &MultiplicityType, deg: i64) -> Result<i64, TypeError> {
    if deg < 0 {
        return Err(TypeError::NegativeDegree(deg));
    }
    let forms = triangle(deg + 1)?;
    Ok((forms - scheme_degree(t)?).max(0))
}

/// The pair (μ⁻, μ⁺) obtained by lowering and raising the first multiplicity.
pub fn plus_minus(t: &MultiplicityType) -> Result<(MultiplicityType, MultiplicityType), TypeError> {
    t.require_nonnegative()?;
    let first = t.mults[0];
    let max = *t.mults.iter().max().expect("non-empty");
    if first < max {
        return Err(TypeError::LeadingNotMaximal { first, max });
    }
    if first == 0 {
        return Err(TypeError::MinusUndefined);
    }
    let mut minus = t.mults.clone();
    minus[0] -= 1;
    let mut plus = t.mults.clone();
    plus[0] = first
        .checked_add(1)
        .ok_or(TypeError::Overflow("plus multiplicity"))?;
    Ok((
        MultiplicityType::new(t.degree, minus)?,
        MultiplicityType::new(t.degree, plus)?,
    ))
}

/// `(twice_square · n² + twice_linear · n + twice_constant) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfQuadratic {
    pub twice_square: i64,
    pub twice_linear: i64,
    pub twice_constant: i64,
}

impl HalfQuadratic {
    pub fn eval(&self, n: i64) -> i64 {
        (self.twice_square * n * n + self.twice_linear * n + self.twice_constant) / 2
    }
}

/// Closed-form invariants of a 3-uniform sub-homaloidal type and its
/// transform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionPrediction {
    pub subhomaloidal_degree: i64,
    pub generator_count: i64,
    pub generator_degree: i64,
    pub syzygy_counts: BTreeMap<i64, i64>,
    pub regularity: i64,
    pub image_degree: i64,
    pub image_hilbert: HalfQuadratic,
    pub transformed_type: MultiplicityType,
    pub transformed_indeg: i64,
    pub second_symbolic_indeg: i64,
    pub second_symbolic_dim: i64,
}

pub fn predict_invariants(t: &MultiplicityType) -> Result<ResolutionPrediction, TypeError> {
    let class = classify(t)?;
    let s = match class.subhomaloidal_degree {
        Some(s) => s,
        None => {
            let reason = subhomaloidal_failure(t)?.unwrap_or_default();
            return Err(TypeError::NotSubhomaloidal(reason));
        }
    };
    if class.three_uniform != Some(true) {
        return Err(TypeError::NotThreeUniform(format!(
            "need μ1 = μ2 = μ3 = (s−1)/2 for s = {s}, sorted view is {}",
            t.sorted()
        )));
    }
    let linear_syz = 3;
    let quadratic_syz = (s - 3) / 2;
    let mut syzygy_counts = BTreeMap::new();
    syzygy_counts.insert(s + 1, linear_syz);
    syzygy_counts.insert(s + 2, quadratic_syz);
    let regularity = if quadratic_syz > 0 { s + 1 } else { s };
    let transformed_type = quad_transform_highest(t)?;
    Ok(ResolutionPrediction {
        subhomaloidal_degree: s,
        generator_count: (s + 5) / 2,
        generator_degree: s,
        syzygy_counts,
        regularity,
        image_degree: s,
        image_hilbert: HalfQuadratic {
            twice_square: s,
            twice_linear: 3,
            twice_constant: 2,
        },
        transformed_indeg: (s + 3) / 2,
        transformed_type,
        second_symbolic_indeg: s + 2,
        second_symbolic_dim: s,
    })
}

/// Whether a degree satisfies both hypotheses of Dumnicki's bound on the
/// sorted view: `deg ≥ μ1+μ2` and
/// `C(deg+2,2) − Σ C(μ_i+1,2) ≥ (3μ4² − 7μ4 + 4)/2`.
pub fn dumnicki_check(t: &MultiplicityType, deg: i64) -> Result<bool, TypeError> {
    t.require_nonnegative()?;
    if t.arity() < 4 {
        return Err(TypeError::TooFewMultiplicities {
            needed: 4,
            got: t.arity(),
        });
    }
    if deg < 0 {
        return Err(TypeError::NegativeDegree(deg));
    }
    let m = t.sorted_mults();
    if deg < m[0] + m[1] {
        return Ok(false);
    }
    let excess = triangle(deg + 1)? - scheme_degree(t)?;
    let mu4 = m[3];
    let bound_twice = mu4
        .checked_mul(mu4)
        .and_then(|v| v.checked_mul(3))
        .and_then(|v| v.checked_sub(7 * mu4))
        .and_then(|v| v.checked_add(4))
        .ok_or(TypeError::Overflow("Dumnicki bound"))?;
    Ok(2 * excess >= bound_twice)
}
