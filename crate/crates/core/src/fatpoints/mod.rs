//! Ideals of fat points `I(p; μ) = ∩ P_i^{μ_i}` instantiated at sampled
//! points over a prime field.
//!
//! Every quantity is a rank over `F_p` at one point configuration. By
//! semicontinuity a sampled dimension can only exceed the generic one, so
//! matching the conditions-count lower bound (or sampling 0) certifies the
//! generic value; anything else is reported as uncertified.

pub mod forms;
mod points;

pub use points::{
    derive_seed, quad_transform_points, sample_points, PointError, PointSet, ProjPoint, Provenance,
};

use crate::ffla::{FMatrix, FieldConfig, FieldError, PrimeField};
use crate::typecalc::{self, MultiplicityType, TypeError};
use forms::{monomial_count, monomial_index, monomials, multiply, times_variable};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const DEFAULT_RETRIES: usize = 5;
pub const DEFAULT_BETTI_WINDOW: u32 = 3;
const MAX_PRODUCTS: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Points(#[from] PointError),
    #[error("modulus {modulus} too small: need p > {needed}")]
    ModulusTooSmall { modulus: u64, needed: u64 },
    #[error("{mults} multiplicities for {points} points")]
    ArityMismatch { mults: usize, points: usize },
    #[error("multiplicity {value} at position {} is out of range", .index + 1)]
    BadMultiplicity { index: usize, value: i64 },
    #[error("retries must be at least 1")]
    NoRetries,
    #[error("expected target degree {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("no nonzero forms in degrees ≤ {0}")]
    NoFormsUpTo(u32),
    #[error("{count} products exceed the limit of {limit}")]
    TooManyProducts { count: u64, limit: u64 },
    #[error("Hilbert values are not certified: {0}")]
    Uncertified(String),
    #[error("basis row {row} is not divisible by x^{}y^{}z^{} after substitution", .nu[0], .nu[1], .nu[2])]
    NotDivisible { row: usize, nu: [u32; 3] },
    #[error("transformed degree 2·{degree} − {nu_sum} is negative")]
    NegativeDegree { degree: u32, nu_sum: u32 },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Points together with positional multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatIdealSpec {
    points: PointSet,
    mults: Vec<u32>,
}

impl FatIdealSpec {
    pub fn new(points: PointSet, mults: Vec<u32>) -> Result<Self, EngineError> {
        if mults.len() != points.len() {
            return Err(EngineError::ArityMismatch {
                mults: mults.len(),
                points: points.len(),
            });
        }
        Ok(Self { points, mults })
    }

    /// Uses the multiplicities of `t`; its degree is ignored.
    pub fn from_type(points: PointSet, t: &MultiplicityType) -> Result<Self, EngineError> {
        let mults = t
            .mults()
            .iter()
            .enumerate()
            .map(|(index, &m)| {
                u32::try_from(m).map_err(|_| EngineError::BadMultiplicity { index, value: m })
            })
            .collect::<Result<_, _>>()?;
        Self::new(points, mults)
    }

    /// Samples `arity` general points for the multiplicities of `t`.
    pub fn general(
        t: &MultiplicityType,
        field: FieldConfig,
        frame: bool,
    ) -> Result<Self, EngineError> {
        let points = sample_points(t.arity(), field, frame)?;
        Self::from_type(points, t)
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn field(&self) -> PrimeField {
        self.points.field()
    }

    /// Same points, multiplicities `n·μ`.
    pub fn scaled(&self, n: u32) -> Result<Self, EngineError> {
        let mults = self
            .mults
            .iter()
            .map(|&m| {
                m.checked_mul(n)
                    .ok_or(TypeError::Overflow("scaled multiplicity"))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            points: self.points.clone(),
            mults,
        })
    }

    /// Same points, other multiplicities.
    pub fn with_mults(&self, mults: Vec<u32>) -> Result<Self, EngineError> {
        Self::new(self.points.clone(), mults)
    }

    pub fn resampled(&self, attempt: u64) -> Result<Self, EngineError> {
        if attempt == 0 {
            return Ok(self.clone());
        }
        Ok(Self {
            points: self.points.resampled(attempt)?,
            mults: self.mults.clone(),
        })
    }

    /// The type `(t; μ)` for bookkeeping with the integer calculus.
    pub fn as_type(&self, degree: u32) -> MultiplicityType {
        MultiplicityType::new(
            degree as i64,
            self.mults.iter().map(|&m| m as i64).collect(),
        )
        .expect("non-empty and non-negative")
    }

    pub fn expected_dim(&self, t: u32) -> Result<u64, EngineError> {
        Ok(typecalc::expected_dim(&self.as_type(t), t as i64)? as u64)
    }

    pub fn scheme_degree(&self) -> u64 {
        self.mults
            .iter()
            .map(|&m| m as u64 * (m as u64 + 1) / 2)
            .sum()
    }

    fn check_modulus(&self, t: u32) -> Result<(), EngineError> {
        let p = self.field().modulus();
        let max_mult = self.mults.iter().copied().max().unwrap_or(0) as u64;
        let needed = (2 * t as u64).max(max_mult);
        if p <= needed {
            return Err(EngineError::ModulusTooSmall { modulus: p, needed });
        }
        Ok(())
    }
}

/// Basis of `J_t`: rows are coefficient vectors over the degree-`t`
/// monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    degree: u32,
    basis: FMatrix,
}

impl LinearSystem {
    pub fn new(degree: u32, basis: FMatrix) -> Result<Self, EngineError> {
        if basis.cols() != monomial_count(degree) {
            return Err(EngineError::Invariant(format!(
                "{} columns for degree {degree}",
                basis.cols()
            )));
        }
        Ok(Self { degree, basis })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &FMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Whether every row of `other` lies in this row space.
    pub fn contains(&self, other: &LinearSystem) -> Result<bool, EngineError> {
        if other.degree != self.degree {
            return Ok(other.dim() == 0);
        }
        let ours = self.basis.rank();
        Ok(FMatrix::stack(&[&self.basis, &other.basis])?.rank() == ours)
    }

    pub fn same_span(&self, other: &LinearSystem) -> Result<bool, EngineError> {
        Ok(self.contains(other)? && other.contains(self)?)
    }
}

fn falling(n: u32, k: u32) -> u64 {
    (n - k + 1..=n).map(|v| v as u64).product()
}

/// Vanishing to order `μ_i` at `p_i` as linear conditions on degree-`t`
/// coefficients: each row evaluates `∂_u^a ∂_v^b` (`a + b < μ_i`) of every
/// monomial at `p_i`, in the affine chart of its last nonzero coordinate.
pub fn conditions_matrix(spec: &FatIdealSpec, t: u32) -> Result<FMatrix, EngineError> {
    spec.check_modulus(t)?;
    let f = spec.field();
    let monos = monomials(t);
    let mut m = FMatrix::zeros(f, 0, monos.len());
    for (point, &mu) in spec.points.points().iter().zip(&spec.mults) {
        if mu == 0 {
            continue;
        }
        // coordinates are already scaled so the chart coordinate is 1
        let coords = point.coords();
        let chart = (0..3)
            .rev()
            .find(|&i| coords[i] != 0)
            .expect("nonzero point");
        let (u, v) = match chart {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let pow = |base: u64, e: u32| f.pow(base, e as u64);
        for order in 0..mu {
            for a in (0..=order).rev() {
                let b = order - a;
                let row: Vec<u64> = monos
                    .iter()
                    .map(|e| {
                        let (eu, ev) = (e[u], e[v]);
                        if eu < a || ev < b {
                            return 0;
                        }
                        let coeff = f.mul(f.reduce(falling(eu, a)), f.reduce(falling(ev, b)));
                        f.mul(coeff, f.mul(pow(coords[u], eu - a), pow(coords[v], ev - b)))
                    })
                    .collect();
                m.push_row(&row);
            }
        }
    }
    Ok(m)
}

pub fn linear_system(spec: &FatIdealSpec, t: u32) -> Result<LinearSystem, EngineError> {
    let cond = conditions_matrix(spec, t)?;
    LinearSystem::new(t, cond.kernel_basis())
}

/// `dim J_t` at the spec's own points.
fn sampled_dim(spec: &FatIdealSpec, t: u32) -> Result<u64, EngineError> {
    let cond = conditions_matrix(spec, t)?;
    Ok((monomial_count(t) - cond.rank()) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub degree: u32,
    pub sampled_dim: u64,
    pub expected: u64,
    pub certified: bool,
    pub samples_used: usize,
}

fn certifies(sampled: u64, expected: u64) -> bool {
    sampled == expected || sampled == 0
}

/// `dim J_t`, resampling up to `retries` configurations in total until the
/// value is certified; the minimum observed is reported.
pub fn hilbert_value(
    spec: &FatIdealSpec,
    t: u32,
    retries: usize,
) -> Result<HilbertReport, EngineError> {
    if retries == 0 {
        return Err(EngineError::NoRetries);
    }
    let expected = spec.expected_dim(t)?;
    let mut best = u64::MAX;
    for attempt in 0..retries {
        let sample = spec.resampled(attempt as u64)?;
        let dim = sampled_dim(&sample, t)?;
        if dim < expected {
            return Err(EngineError::Invariant(format!(
                "sampled dim {dim} below the lower bound {expected} in degree {t}"
            )));
        }
        best = best.min(dim);
        if certifies(dim, expected) {
            return Ok(HilbertReport {
                degree: t,
                sampled_dim: dim,
                expected,
                certified: true,
                samples_used: attempt + 1,
            });
        }
    }
    Ok(HilbertReport {
        degree: t,
        sampled_dim: best,
        expected,
        certified: false,
        samples_used: retries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialDegree {
    pub degree: u32,
    /// The value at `degree` matched its lower bound; the zeros below are
    /// always exact.
    pub certified: bool,
}

pub fn initial_degree(
    spec: &FatIdealSpec,
    t_max: u32,
    retries: usize,
) -> Result<InitialDegree, EngineError> {
    for t in 0..=t_max {
        let h = hilbert_value(spec, t, retries)?;
        if h.sampled_dim > 0 {
            return Ok(InitialDegree {
                degree: t,
                certified: h.certified,
            });
        }
    }
    Err(EngineError::NoFormsUpTo(t_max))
}

/// Least `t` with `C(t+2,2) > Σ C(μ_i+1,2)`; `J_t ≠ 0` there for any points.
pub fn forced_degree(spec: &FatIdealSpec) -> u32 {
    let deg = spec.scheme_degree();
    (0u32..)
        .find(|&t| monomial_count(t) as u64 > deg)
        .expect("unbounded search")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultMap {
    pub source_degree: u32,
    pub source_dim: usize,
    pub image_rank: usize,
    pub target_dim: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
    pub surjective_certified: bool,
}

/// Rank of `R_1 ⊗ J_t → J_{t+1}` from the basis `sys` of `J_t`.
pub fn mult_map(
    sys: &LinearSystem,
    spec: &FatIdealSpec,
    target_degree: u32,
) -> Result<MultMap, EngineError> {
    let t = sys.degree;
    if target_degree != t + 1 {
        return Err(EngineError::DegreeMismatch {
            expected: t + 1,
            got: target_degree,
        });
    }
    let f = spec.field();
    let image = multiply_by_linear_forms(f, sys);
    let image_rank = image.rank();
    let target = linear_system(spec, t + 1)?;
    let source_dim = sys.dim();
    let target_dim = target.dim();
    if image_rank > (3 * source_dim).min(target_dim) {
        return Err(EngineError::Invariant(format!(
            "image rank {image_rank} exceeds min(3·{source_dim}, {target_dim})"
        )));
    }
    let surjective = image_rank == target_dim;
    let source_ok = certifies(source_dim as u64, spec.expected_dim(t)?);
    let target_ok = certifies(target_dim as u64, spec.expected_dim(t + 1)?);
    Ok(MultMap {
        source_degree: t,
        source_dim,
        image_rank,
        target_dim,
        kernel_dim: 3 * source_dim - image_rank,
        surjective,
        surjective_certified: surjective && source_ok && target_ok,
    })
}

/// `x·f, y·f, z·f` for every basis row `f`, in that order.
fn multiply_by_linear_forms(f: PrimeField, sys: &LinearSystem) -> FMatrix {
    let mut out = FMatrix::zeros(f, 0, monomial_count(sys.degree + 1));
    for row in sys.basis.row_iter() {
        for var in 0..3 {
            out.push_row(&times_variable(row, sys.degree, var));
        }
    }
    out
}

/// `dim ker(R_k ⊗ J_t → R_{t+k})` for the span of `sys`: relations
/// `Σ a_i f_i = 0` with `deg a_i = k`.
pub fn multiplier_kernel(sys: &LinearSystem, k: u32) -> usize {
    let f = sys.basis.field();
    let t = sys.degree;
    let mut rows = FMatrix::zeros(f, 0, monomial_count(t + k));
    let width = monomial_count(k);
    for row in sys.basis.row_iter() {
        for m in 0..width {
            let mut mono = vec![0u64; width];
            mono[m] = 1;
            rows.push_row(&multiply(f, row, t, &mono, k));
        }
    }
    rows.rows() - rows.rank()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerDim {
    pub n: u32,
    pub base_degree: u32,
    pub degree: u32,
    pub products: u64,
    pub dim: usize,
}

fn multiset_count(m: u64, n: u64) -> Option<u64> {
    // C(m+n-1, n)
    let mut acc: u64 = 1;
    for i in 0..n {
        acc = acc.checked_mul(m + i)? / (i + 1);
    }
    Some(acc)
}

/// `dim (J^n)_{n·t₀}` at the spec's own points, `t₀ = indeg J`.
pub fn power_dim(spec: &FatIdealSpec, n: u32) -> Result<PowerDim, EngineError> {
    if n == 0 {
        return Err(EngineError::Invariant("power exponent must be ≥ 1".into()));
    }
    let t0 = initial_degree(spec, forced_degree(spec), 1)?.degree;
    let sys = linear_system(spec, t0)?;
    power_dim_of_system(&sys, spec.field(), n)
}

/// Rank of all products of `n` elements of `sys`.
pub fn power_dim_of_system(
    sys: &LinearSystem,
    field: PrimeField,
    n: u32,
) -> Result<PowerDim, EngineError> {
    let m = sys.dim() as u64;
    let t0 = sys.degree;
    let products = multiset_count(m, n as u64).unwrap_or(u64::MAX);
    if products > MAX_PRODUCTS {
        return Err(EngineError::TooManyProducts {
            count: products,
            limit: MAX_PRODUCTS,
        });
    }
    let degree = t0 * n;
    let mut rows = FMatrix::zeros(field, 0, monomial_count(degree));
    if m > 0 {
        let basis: Vec<Vec<u64>> = sys.basis.row_iter().map(|r| r.to_vec()).collect();
        let one = vec![1u64];
        extend_products(field, &basis, t0, n, 0, &one, 0, &mut rows);
    }
    Ok(PowerDim {
        n,
        base_degree: t0,
        degree,
        products: if m == 0 { 0 } else { products },
        dim: rows.rank(),
    })
}

#[allow(clippy::too_many_arguments)]
fn extend_products(
    field: PrimeField,
    basis: &[Vec<u64>],
    t0: u32,
    remaining: u32,
    start: usize,
    partial: &[u64],
    partial_degree: u32,
    out: &mut FMatrix,
) {
    if remaining == 0 {
        out.push_row(partial);
        return;
    }
    for i in start..basis.len() {
        let next = multiply(field, partial, partial_degree, &basis[i], t0);
        extend_products(
            field,
            basis,
            t0,
            remaining - 1,
            i,
            &next,
            partial_degree + t0,
            out,
        );
    }
}

/// `dim (J^{(n)})_t`, the fat ideal with multiplicities `n·μ`.
pub fn symbolic_dim(
    spec: &FatIdealSpec,
    n: u32,
    t: u32,
    retries: usize,
) -> Result<HilbertReport, EngineError> {
    hilbert_value(&spec.scaled(n)?, t, retries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub initial_degree: u32,
    /// Minimal generators per degree (nonzero entries only).
    pub generators: BTreeMap<u32, u64>,
    /// First syzygies per degree (nonzero entries only).
    pub syzygies: BTreeMap<u32, u64>,
    /// Hilbert values used, all certified.
    pub hilbert: BTreeMap<u32, u64>,
    pub samples_used: usize,
}

impl BettiTable {
    pub fn generator_count(&self) -> u64 {
        self.generators.values().sum()
    }

    pub fn syzygy_count(&self) -> u64 {
        self.syzygies.values().sum()
    }
}

/// Graded Betti numbers of `J` from `n_t = dim J_t − dim R_1 J_{t−1}` and
/// `u_t = n_t − Δ³h_J(t)` on `[t₀, t₀ + window]`.
pub fn betti_table(
    spec: &FatIdealSpec,
    window: u32,
    retries: usize,
) -> Result<BettiTable, EngineError> {
    if retries == 0 {
        return Err(EngineError::NoRetries);
    }
    let mut diagnostics = Vec::new();
    for attempt in 0..retries {
        let sample = spec.resampled(attempt as u64)?;
        match betti_at_sample(&sample, window)? {
            Ok(mut table) => {
                table.samples_used = attempt + 1;
                return Ok(table);
            }
            Err(msg) => diagnostics.push(format!("sample {attempt}: {msg}")),
        }
    }
    Err(EngineError::Uncertified(diagnostics.join("; ")))
}

fn betti_at_sample(
    spec: &FatIdealSpec,
    window: u32,
) -> Result<Result<BettiTable, String>, EngineError> {
    let t_forced = forced_degree(spec);
    let mut hilbert = BTreeMap::new();
    let mut systems = Vec::new();
    let mut t0 = None;
    let mut t = 0u32;
    loop {
        let sys = linear_system(spec, t)?;
        let dim = sys.dim() as u64;
        let expected = spec.expected_dim(t)?;
        if !certifies(dim, expected) {
            return Ok(Err(format!(
                "dim J_{t} = {dim} but the lower bound is {expected}"
            )));
        }
        hilbert.insert(t, dim);
        if dim > 0 && t0.is_none() {
            t0 = Some(t);
        }
        systems.push(sys);
        if let Some(start) = t0 {
            if t >= start + window {
                break;
            }
        } else if t > t_forced {
            return Err(EngineError::NoFormsUpTo(t_forced));
        }
        t += 1;
    }
    let t0 = t0.expect("loop exits with an initial degree");
    let h = |d: i64| -> i64 {
        if d < 0 {
            0
        } else {
            hilbert.get(&(d as u32)).copied().unwrap_or(0) as i64
        }
    };
    let mut generators = BTreeMap::new();
    let mut syzygies = BTreeMap::new();
    for t in t0..=t0 + window {
        let dim = h(t as i64) as u64;
        let image = if t == 0 {
            0
        } else {
            multiply_by_linear_forms(spec.field(), &systems[(t - 1) as usize]).rank() as u64
        };
        let n_t = dim - image;
        let ti = t as i64;
        let third_diff = h(ti) - 3 * h(ti - 1) + 3 * h(ti - 2) - h(ti - 3);
        let u_t = n_t as i64 - third_diff;
        if u_t < 0 {
            return Err(EngineError::Invariant(format!(
                "negative syzygy count {u_t} in degree {t}"
            )));
        }
        if n_t > 0 {
            generators.insert(t, n_t);
        }
        if u_t > 0 {
            syzygies.insert(t, u_t as u64);
        }
    }
    let table = BettiTable {
        initial_degree: t0,
        generators,
        syzygies,
        hilbert,
        samples_used: 1,
    };
    if table.syzygy_count() + 1 != table.generator_count() {
        return Err(EngineError::Invariant(format!(
            "Hilbert–Burch count fails: {} syzygies for {} generators (window {window} too small?)",
            table.syzygy_count(),
            table.generator_count()
        )));
    }
    Ok(Ok(table))
}

/// `f ↦ f(yz, xz, xy) / (x^{ν1} y^{ν2} z^{ν3})` on every basis row.
pub fn eta_transform(sys: &LinearSystem, nu: [u32; 3]) -> Result<LinearSystem, EngineError> {
    let t = sys.degree;
    let nu_sum = nu[0] + nu[1] + nu[2];
    if nu_sum > 2 * t {
        return Err(EngineError::NegativeDegree { degree: t, nu_sum });
    }
    let target = 2 * t - nu_sum;
    let f = sys.basis.field();
    let monos = monomials(t);
    let mut out = FMatrix::zeros(f, 0, monomial_count(target));
    for (row_idx, row) in sys.basis.row_iter().enumerate() {
        let mut image = vec![0u64; monomial_count(target)];
        for (i, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let [a, b, e] = monos[i];
            // x^a y^b z^e ↦ x^{b+e} y^{a+e} z^{a+b}
            let ex = (b + e).checked_sub(nu[0]);
            let ey = (a + e).checked_sub(nu[1]);
            let ez = (a + b).checked_sub(nu[2]);
            match (ex, ey, ez) {
                (Some(ex), Some(ey), Some(_)) => image[monomial_index(target, ex, ey)] = c,
                _ => return Err(EngineError::NotDivisible { row: row_idx, nu }),
            }
        }
        out.push_row(&image);
    }
    LinearSystem::new(target, out)
}

/// Exponents `(t−ν2−ν3, t−ν1−ν3, t−ν1−ν2)` of the inverse substitution.
pub fn inverse_exponents(t: u32, nu: [u32; 3]) -> Result<[u32; 3], EngineError> {
    let sub = |x: u32, y: u32| {
        t.checked_sub(x + y)
            .ok_or_else(|| EngineError::Invariant(format!("{t} < {x} + {y}")))
    };
    Ok([sub(nu[1], nu[2])?, sub(nu[0], nu[2])?, sub(nu[0], nu[1])?])
}

/// Inverse of [`eta_transform`] for a system that came from degree
/// `source_degree` with exponents `nu`.
pub fn zeta_transform(
    sys: &LinearSystem,
    source_degree: u32,
    nu: [u32; 3],
) -> Result<LinearSystem, EngineError> {
    eta_transform(sys, inverse_exponents(source_degree, nu)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typecalc::parse_literal;

    fn spec(lit: &str, seed: u64) -> FatIdealSpec {
        let t = parse_literal(lit).unwrap();
        FatIdealSpec::general(&t, FieldConfig::default().with_seed(seed), false).unwrap()
    }

    fn points_of(coords: &[[u64; 3]]) -> PointSet {
        let fc = FieldConfig::default();
        let f = fc.field();
        let pts = coords.iter().map(|&c| ProjPoint::new(f, c)).collect();
        let prov = Provenance {
            seed: 0,
            attempts: 0,
            frame: None,
            quad_transformed_at: None,
        };
        PointSet::from_points(pts, fc, prov).unwrap()
    }

    #[test]
    fn one_simple_point_in_degree_one() {
        let ps = points_of(&[[3, 5, 1]]);
        let s = FatIdealSpec::new(ps, vec![1]).unwrap();
        let m = conditions_matrix(&s, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 3));
        assert_eq!(m.row(0), &[3, 5, 1]);
    }

    #[test]
    fn double_coordinate_point_gives_square_of_maximal_ideal() {
        let ps = points_of(&[[0, 0, 1]]);
        let s = FatIdealSpec::new(ps, vec![2]).unwrap();
        let sys = linear_system(&s, 2).unwrap();
        assert_eq!(sys.dim(), 3);
        // span of x², xy, y²
        let f = s.field();
        let expected = FMatrix::from_rows(
            f,
            6,
            &[
                vec![1, 0, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0],
            ],
        );
        let target = LinearSystem::new(2, expected).unwrap();
        assert!(sys.same_span(&target).unwrap());
    }

    #[test]
    fn points_off_the_affine_chart() {
        // (1:0:0) doubled: forms in (y,z)^2
        let ps = points_of(&[[1, 0, 0]]);
        let s = FatIdealSpec::new(ps, vec![2]).unwrap();
        let sys = linear_system(&s, 2).unwrap();
        let f = s.field();
        let yz = FMatrix::from_rows(
            f,
            6,
            &[
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ],
        );
        assert!(sys.same_span(&LinearSystem::new(2, yz).unwrap()).unwrap());
    }

    #[test]
    fn six_simple_points_in_cubics() {
        let s = spec("3;1^6", 0);
        let m = conditions_matrix(&s, 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 10));
        assert_eq!(m.rank(), 6);
        assert_eq!(m.rows() as u64, s.scheme_degree());
    }

    #[test]
    fn linear_system_dimensions() {
        assert_eq!(linear_system(&spec("3;1^6", 1), 3).unwrap().dim(), 4);
        let s = spec("5;2^4,1^4", 1);
        assert_eq!(linear_system(&s, 5).unwrap().dim(), 5);
        assert_eq!(linear_system(&s, 4).unwrap().dim(), 0);
    }

    #[test]
    fn small_modulus_is_rejected() {
        let t = parse_literal("3;1^3").unwrap();
        let fc = FieldConfig::new(101, 0).unwrap();
        let s = FatIdealSpec::general(&t, fc, false).unwrap();
        assert!(linear_system(&s, 50).is_ok());
        assert!(matches!(
            conditions_matrix(&s, 51),
            Err(EngineError::ModulusTooSmall { modulus: 101, .. })
        ));
    }

    #[test]
    fn hilbert_values_certify() {
        let h = hilbert_value(&spec("3;1^6", 2), 3, DEFAULT_RETRIES).unwrap();
        assert_eq!((h.sampled_dim, h.expected, h.certified), (4, 4, true));
        let h = hilbert_value(&spec("5;3,2,2,2,1,1,1,1", 2), 5, DEFAULT_RETRIES).unwrap();
        assert_eq!((h.sampled_dim, h.certified), (2, true));
        let h = hilbert_value(&spec("5;1,2,2,2,1,1,1,1", 2), 4, DEFAULT_RETRIES).unwrap();
        assert_eq!((h.sampled_dim, h.certified), (1, true));
        assert_eq!(
            hilbert_value(&spec("3;1^6", 2), 3, 0),
            Err(EngineError::NoRetries)
        );
    }

    #[test]
    fn special_system_stays_uncertified() {
        // two double points: the line through them, squared, lives in degree 2
        let h = hilbert_value(&spec("2;2,2", 3), 2, 3).unwrap();
        assert_eq!(h.expected, 0);
        assert_eq!(h.sampled_dim, 1);
        assert!(!h.certified);
        assert_eq!(h.samples_used, 3);
    }

    #[test]
    fn initial_degrees() {
        let s = spec("5;2^4,1^4", 4);
        assert_eq!(initial_degree(&s, 10, 5).unwrap().degree, 5);
        let s = spec("4;2,1^7", 4);
        let id = initial_degree(&s, 10, 5).unwrap();
        assert_eq!(
            id,
            InitialDegree {
                degree: 4,
                certified: true
            }
        );
        let s = spec("9;4^4,2^4", 4);
        assert_eq!(hilbert_value(&s, 8, 5).unwrap().sampled_dim, 0);
        assert_eq!(initial_degree(&s, 12, 5).unwrap().degree, 9);
        assert_eq!(initial_degree(&s, 8, 5), Err(EngineError::NoFormsUpTo(8)));
    }

    #[test]
    fn multiplication_map_of_quintics() {
        let s = spec("5;2^4,1^4", 6);
        let sys = linear_system(&s, 5).unwrap();
        let mm = mult_map(&sys, &s, 6).unwrap();
        assert_eq!(mm.source_dim, 5);
        assert_eq!(mm.image_rank, 12);
        assert_eq!(mm.target_dim, 12);
        assert_eq!(mm.kernel_dim, 3);
        assert!(mm.surjective && mm.surjective_certified);
        assert!(matches!(
            mult_map(&sys, &s, 7),
            Err(EngineError::DegreeMismatch {
                expected: 6,
                got: 7
            })
        ));
    }

    #[test]
    fn one_dimensional_system_has_no_linear_syzygy() {
        let s = spec("5;2^5", 1);
        let sys = linear_system(&s, 4).unwrap();
        assert_eq!(sys.dim(), 1);
        let mm = mult_map(&sys, &s, 5).unwrap();
        assert_eq!(mm.kernel_dim, 0);
        assert_eq!(mm.image_rank, 3);
    }

    #[test]
    fn quintic_net_syzygies_sit_in_degree_eight() {
        let s = spec("5;2^6", 2);
        let net = linear_system(&s, 5).unwrap();
        assert_eq!(net.dim(), 3);
        assert_eq!(multiplier_kernel(&net, 1), 0);
        assert_eq!(multiplier_kernel(&net, 2), 0);
        assert_eq!(multiplier_kernel(&net, 3), 3);
        let mm = mult_map(&net, &s, 6).unwrap();
        assert_eq!(mm.kernel_dim, multiplier_kernel(&net, 1));
    }

    #[test]
    fn powers_match_the_closed_form() {
        let s = spec("5;2^4,1^4", 7);
        let p = power_dim(&s, 2).unwrap();
        assert_eq!(
            (p.base_degree, p.degree, p.products, p.dim),
            (5, 10, 15, 14)
        );
        assert_eq!(power_dim(&s, 3).unwrap().dim, 28);
        assert_eq!(power_dim(&spec("3;1^6", 7), 2).unwrap().dim, 10);
        assert_eq!(power_dim(&s, 1).unwrap().dim, 5);
    }

    #[test]
    fn product_guard() {
        assert_eq!(multiset_count(5, 2), Some(15));
        assert_eq!(multiset_count(5, 3), Some(35));
        let s = spec("1;1", 0);
        let sys = linear_system(&s, 12).unwrap();
        // 90-dimensional system, 7th power: far over the guard
        assert!(matches!(
            power_dim_of_system(&sys, s.field(), 7),
            Err(EngineError::TooManyProducts { .. })
        ));
    }

    #[test]
    fn symbolic_squares() {
        let s = spec("4;2,1^7", 8);
        assert_eq!(symbolic_dim(&s, 2, 7, 5).unwrap().sampled_dim, 5);
        assert_eq!(symbolic_dim(&s, 2, 6, 5).unwrap().sampled_dim, 0);
        let s = spec("5;2^4,1^4", 8);
        assert_eq!(symbolic_dim(&s, 2, 9, 5).unwrap().sampled_dim, 3);
    }

    #[test]
    fn betti_tables() {
        let b = betti_table(&spec("5;2^4,1^4", 9), DEFAULT_BETTI_WINDOW, 5).unwrap();
        assert_eq!(b.generators, BTreeMap::from([(5, 5)]));
        assert_eq!(b.syzygies, BTreeMap::from([(6, 3), (7, 1)]));
        let b = betti_table(&spec("4;2,1^7", 9), DEFAULT_BETTI_WINDOW, 5).unwrap();
        assert_eq!(b.generators, BTreeMap::from([(4, 5)]));
        assert_eq!(b.syzygies, BTreeMap::from([(5, 4)]));
        let b = betti_table(&spec("3;1^6", 9), DEFAULT_BETTI_WINDOW, 5).unwrap();
        assert_eq!(b.generators, BTreeMap::from([(3, 4)]));
        assert_eq!(b.syzygies, BTreeMap::from([(4, 3)]));
    }

    #[test]
    fn betti_refuses_special_systems() {
        assert!(matches!(
            betti_table(&spec("2;2,2", 3), 3, 2),
            Err(EngineError::Uncertified(_))
        ));
    }

    fn framed(lit: &str, seed: u64) -> FatIdealSpec {
        let t = parse_literal(lit).unwrap();
        FatIdealSpec::general(&t, FieldConfig::default().with_seed(seed), true).unwrap()
    }

    #[test]
    fn eta_maps_into_the_transformed_system() {
        let s = framed("5;2^4,1^4", 11);
        let js = linear_system(&s, 5).unwrap();
        let eta = eta_transform(&js, [2, 2, 2]).unwrap();
        assert_eq!(eta.degree(), 4);
        assert_eq!(eta.dim(), 5);
        assert_eq!(eta.basis().rank(), 5);

        let t = s.as_type(5);
        let tilde_type = typecalc::quad_transform(&t, 0, 1, 2).unwrap();
        let tilde_pts = quad_transform_points(s.points(), 0, 1, 2).unwrap();
        let tilde = FatIdealSpec::from_type(tilde_pts, &tilde_type).unwrap();
        let target = linear_system(&tilde, 4).unwrap();
        assert_eq!(target.dim(), 5);
        assert!(target.contains(&eta).unwrap());

        let back = zeta_transform(&eta, 5, [2, 2, 2]).unwrap();
        assert_eq!(back.degree(), 5);
        assert!(back.same_span(&js).unwrap());
    }

    #[test]
    fn eta_self_similar_cubics() {
        let s = framed("3;1^6", 12);
        let js = linear_system(&s, 3).unwrap();
        let eta = eta_transform(&js, [1, 1, 1]).unwrap();
        assert_eq!((eta.degree(), eta.dim()), (3, 4));
    }

    #[test]
    fn eta_detects_non_divisibility() {
        // general points: the coordinate points are not base points
        let s = spec("5;2^4,1^4", 13);
        let js = linear_system(&s, 5).unwrap();
        assert!(matches!(
            eta_transform(&js, [2, 2, 2]),
            Err(EngineError::NotDivisible { .. })
        ));
        assert!(matches!(
            eta_transform(&js, [6, 6, 0]),
            Err(EngineError::NegativeDegree { .. })
        ));
    }
}
