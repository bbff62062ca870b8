//! Dense linear algebra over a prime field `F_p` with `p < 2^32`.
//!
//! Elimination is deterministic: pivots are taken in the leftmost column
//! that still has a nonzero entry, from the topmost candidate row.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 2^31 − 1.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} must be below 2^32")]
    TooLarge(u64),
    #[error("column counts differ: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("matrices live over different fields ({0} vs {1})")]
    FieldMismatch(u64, u64),
    #[error("inner dimensions differ: {0} vs {1}")]
    ShapeMismatch(usize, usize),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field `F_p`. Residues are stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 32 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    #[inline]
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }
}

/// Modulus and seed shared by every randomized computation of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub modulus: u64,
    pub seed: u64,
}

impl FieldConfig {
    pub fn new(modulus: u64, seed: u64) -> Result<Self, FieldError> {
        PrimeField::new(modulus)?;
        Ok(Self { modulus, seed })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self {
            modulus: DEFAULT_MODULUS,
            seed: 0,
        }
    }
}

/// Row-major dense matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Entries are reduced modulo p.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row width");
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_flat(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count");
        let data = data.into_iter().map(|v| field.reduce(v)).collect();
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        // chunks_exact panics on zero width
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "row width");
        self.data.extend(row.iter().map(|&v| self.field.reduce(v)));
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FMatrix) -> Result<FMatrix, FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.cols != other.rows {
            return Err(FieldError::ShapeMismatch(self.cols, other.rows));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let Some(piv) = (next_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(piv, next_row);
            let inv = f.inv(m.get(next_row, col));
            for c in col..m.cols {
                let idx = next_row * m.cols + c;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            for r in 0..m.rows {
                if r == next_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let sub = f.mul(factor, m.data[next_row * m.cols + c]);
                    let idx = r * m.cols + c;
                    m.data[idx] = f.sub(m.data[idx], sub);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(piv, rank);
            let inv = f.inv(m.get(rank, col));
            for r in rank + 1..m.rows {
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                let factor = f.mul(factor, inv);
                for c in col..m.cols {
                    let sub = f.mul(factor, m.data[rank * m.cols + c]);
                    let idx = r * m.cols + c;
                    m.data[idx] = f.sub(m.data[idx], sub);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rows form a basis of the right kernel `{v : M v = 0}`, one per free
    /// column, each with a 1 in its free column.
    pub fn kernel_basis(&self) -> FMatrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = FMatrix::zeros(f, 0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push_row(&v);
        }
        basis
    }

    /// Vertical concatenation.
    pub fn stack(parts: &[&FMatrix]) -> Result<FMatrix, FieldError> {
        let first = parts.first().expect("at least one matrix");
        let mut out = FMatrix::zeros(first.field, 0, first.cols);
        for m in parts {
            if m.cols != first.cols {
                return Err(FieldError::WidthMismatch(first.cols, m.cols));
            }
            if m.field != first.field {
                return Err(FieldError::FieldMismatch(
                    first.field.modulus(),
                    m.field.modulus(),
                ));
            }
            out.data.extend_from_slice(&m.data);
            out.rows += m.rows;
        }
        Ok(out)
    }
}

pub fn rank(m: &FMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &FMatrix) -> FMatrix {
    m.kernel_basis()
}

/// Rank of the vertical concatenation of `stack`.
pub fn row_space_rank(stack: &[&FMatrix]) -> Result<usize, FieldError> {
    if stack.is_empty() {
        return Ok(0);
    }
    Ok(FMatrix::stack(stack)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field() -> PrimeField {
        PrimeField::new(DEFAULT_MODULUS).unwrap()
    }

    fn random(f: PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> FMatrix {
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..f.modulus()))
            .collect();
        FMatrix::from_flat(f, rows, cols, data)
    }

    fn planted() -> FMatrix {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = random(f, 10, 6, &mut rng);
        let b = random(f, 6, 10, &mut rng);
        assert_eq!(a.rank(), 6);
        assert_eq!(b.rank(), 6);
        a.mul(&b).unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(PrimeField::new(15), Err(FieldError::NotPrime(15)));
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
        assert!(matches!(
            PrimeField::new(1 << 33),
            Err(FieldError::TooLarge(_))
        ));
        assert!(PrimeField::new(4_294_967_291).is_ok());
    }

    #[test]
    fn field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.from_i64(-1), 6);
        let big = field();
        let a = big.modulus() - 1;
        assert_eq!(big.mul(a, a), 1);
    }

    #[test]
    fn rank_examples() {
        let f = field();
        assert_eq!(rank(&FMatrix::identity(f, 3)), 3);
        assert_eq!(rank(&FMatrix::zeros(f, 4, 7)), 0);
        assert_eq!(rank(&planted()), 6);
    }

    #[test]
    fn kernel_examples() {
        let f = field();
        assert_eq!(kernel_basis(&FMatrix::identity(f, 4)).rows(), 0);

        let f7 = PrimeField::new(7).unwrap();
        let m = FMatrix::from_rows(f7, 3, &[vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.rows(), 2);
        assert_eq!(k.rank(), 2);
        for row in k.row_iter() {
            assert_eq!(row.iter().sum::<u64>() % 7, 0);
        }

        let m = planted();
        let k = kernel_basis(&m);
        assert_eq!(k.rows(), 4);
        assert!(m.mul(&k.transpose()).unwrap().is_zero());
    }

    #[test]
    fn stacked_ranks() {
        let f = field();
        let m = planted();
        assert_eq!(row_space_rank(&[&m, &m]).unwrap(), 6);
        let id = FMatrix::identity(f, 5);
        let z = FMatrix::zeros(f, 3, 5);
        assert_eq!(row_space_rank(&[&id, &z]).unwrap(), 5);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b2 = random(f, 6, 10, &mut rng);
        let a2 = random(f, 10, 6, &mut rng);
        let other = a2.mul(&b2).unwrap();
        assert_eq!(row_space_rank(&[&m, &other]).unwrap(), 10);
        assert_eq!(
            row_space_rank(&[&m, &id]),
            Err(FieldError::WidthMismatch(10, 5))
        );
    }

    #[test]
    fn zero_width_and_empty() {
        let f = field();
        let m = FMatrix::zeros(f, 3, 0);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().rows(), 0);
        let e = FMatrix::zeros(f, 0, 4);
        assert_eq!(e.kernel_basis().rows(), 4);
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(
            seed in any::<u64>(),
            rows in 1usize..9,
            cols in 1usize..9,
            planted_rank in 0usize..9,
        ) {
            let f = PrimeField::new(101).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = planted_rank.min(rows).min(cols);
            let a = random(f, rows, k, &mut rng);
            let b = random(f, k, cols, &mut rng);
            let m = a.mul(&b).unwrap();
            let r = m.rank();
            prop_assert_eq!(r, m.transpose().rank());
            prop_assert!(r <= k);
            let ker = m.kernel_basis();
            prop_assert_eq!(r + ker.rows(), cols);
            prop_assert_eq!(ker.rank(), ker.rows());
            if ker.rows() > 0 {
                prop_assert!(m.mul(&ker.transpose()).unwrap().is_zero());
            }
        }
    }
}
