use crate::ffla::{FieldConfig, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const MAX_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("no valid configuration of {r} points after {attempts} attempts over F_{modulus}")]
    SamplingFailed {
        r: usize,
        attempts: usize,
        modulus: u64,
    },
    #[error("point {} is (0:0:0)", .0 + 1)]
    ZeroPoint(usize),
    #[error("points {} and {} coincide", .0 + 1, .1 + 1)]
    Coincident(usize, usize),
    #[error("points {}, {} and {} are collinear", .0 + 1, .1 + 1, .2 + 1)]
    Collinear(usize, usize, usize),
    #[error("point {} is not the coordinate point e{}", .index + 1, .axis + 1)]
    NotFrameNormalized { index: usize, axis: usize },
    #[error("point {} lies on a coordinate line, where the quadratic map is undefined", .0 + 1)]
    Indeterminacy(usize),
    #[error("base indices must be distinct and below {arity}")]
    BadIndices { arity: usize },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}

/// Homogeneous coordinates over `F_p`, scaled so the last nonzero
/// coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjPoint(pub [u64; 3]);

impl ProjPoint {
    pub fn new(field: PrimeField, coords: [u64; 3]) -> Self {
        let mut c = coords.map(|v| field.reduce(v));
        if let Some(&last) = c.iter().rev().find(|&&v| v != 0) {
            let inv = field.inv(last);
            for v in &mut c {
                *v = field.mul(*v, inv);
            }
        }
        ProjPoint(c)
    }

    pub fn coordinate(axis: usize) -> Self {
        let mut c = [0; 3];
        c[axis] = 1;
        ProjPoint(c)
    }

    pub fn coords(&self) -> [u64; 3] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn same_class(&self, other: &ProjPoint, field: PrimeField) -> bool {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = other.0;
        let f = field;
        f.sub(f.mul(a1, b2), f.mul(a2, b1)) == 0
            && f.sub(f.mul(a2, b0), f.mul(a0, b2)) == 0
            && f.sub(f.mul(a0, b1), f.mul(a1, b0)) == 0
    }
}

fn det3(f: PrimeField, m: [[u64; 3]; 3]) -> u64 {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][c], m[2][d]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 2, 1));
    let t1 = f.mul(m[0][1], minor(0, 2, 2, 0));
    let t2 = f.mul(m[0][2], minor(0, 1, 1, 0));
    f.add(f.sub(t0, t1), t2)
}

fn inverse3(f: PrimeField, m: [[u64; 3]; 3]) -> Option<[[u64; 3]; 3]> {
    let d = det3(f, m);
    if d == 0 {
        return None;
    }
    let inv = f.inv(d);
    let mut out = [[0u64; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // cofactor of m[j][i]
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
            let signed = if (i + j) % 2 == 0 {
                minor
            } else {
                f.neg(minor)
            };
            *entry = f.mul(signed, inv);
        }
    }
    Some(out)
}

fn apply3(f: PrimeField, m: &[[u64; 3]; 3], v: [u64; 3]) -> [u64; 3] {
    let mut out = [0u64; 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = (0..3).fold(0, |acc, j| f.add(acc, f.mul(row[j], v[j])));
    }
    out
}

/// How a point set came to be, enough to resample a replacement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub attempts: usize,
    /// Positions sent to `e1, e2, e3` (and the fourth to `(1:1:1)`).
    pub frame: Option<Vec<usize>>,
    /// Set when the points are the image of a quadratic map based at
    /// these positions.
    pub quad_transformed_at: Option<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<ProjPoint>,
    field: FieldConfig,
    provenance: Provenance,
}

impl PointSet {
    /// Checks nonzero, pairwise distinct, and no three collinear.
    pub fn from_points(
        points: Vec<ProjPoint>,
        field: FieldConfig,
        provenance: Provenance,
    ) -> Result<Self, PointError> {
        let set = Self {
            points,
            field,
            provenance,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn field_config(&self) -> FieldConfig {
        self.field
    }

    pub fn field(&self) -> PrimeField {
        self.field.field()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn validate(&self) -> Result<(), PointError> {
        let f = self.field();
        let n = self.points.len();
        for (i, p) in self.points.iter().enumerate() {
            if p.is_zero() {
                return Err(PointError::ZeroPoint(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.points[i].same_class(&self.points[j], f) {
                    return Err(PointError::Coincident(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let m = [self.points[i].0, self.points[j].0, self.points[k].0];
                    if det3(f, m) == 0 {
                        return Err(PointError::Collinear(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies the projectivity sending `p_j, p_k, p_l` to the coordinate
    /// points and the lowest-index remaining point to `(1:1:1)`.
    pub fn frame_normalized(&self, j: usize, k: usize, l: usize) -> Result<Self, PointError> {
        let n = self.points.len();
        if j == k || k == l || j == l || j >= n || k >= n || l >= n {
            return Err(PointError::BadIndices { arity: n });
        }
        let f = self.field();
        let base = [self.points[j].0, self.points[k].0, self.points[l].0];
        // columns are the base points
        let cols = [
            [base[0][0], base[1][0], base[2][0]],
            [base[0][1], base[1][1], base[2][1]],
            [base[0][2], base[1][2], base[2][2]],
        ];
        let inv = inverse3(f, cols).ok_or(PointError::Collinear(j, k, l))?;
        let fourth = (0..n).find(|i| ![j, k, l].contains(i));
        let lambda = match fourth {
            Some(m) => apply3(f, &inv, self.points[m].0),
            None => [1, 1, 1],
        };
        if lambda.contains(&0) {
            let m = fourth.expect("lambda is 1 without a fourth point");
            let pair = match lambda.iter().position(|&v| v == 0) {
                Some(0) => (k, l),
                Some(1) => (j, l),
                _ => (j, k),
            };
            return Err(PointError::Collinear(pair.0, pair.1, m));
        }
        // A = diag(λ)^{-1} · [p_j p_k p_l]^{-1}
        let mut a = inv;
        for (row, &lam) in a.iter_mut().zip(lambda.iter()) {
            let li = f.inv(lam);
            for v in row.iter_mut() {
                *v = f.mul(*v, li);
            }
        }
        let points = self
            .points
            .iter()
            .map(|p| ProjPoint::new(f, apply3(f, &a, p.0)))
            .collect();
        let mut provenance = self.provenance.clone();
        let mut frame = vec![j, k, l];
        frame.extend(fourth);
        provenance.frame = Some(frame);
        PointSet::from_points(points, self.field, provenance)
    }

    /// A fresh general configuration of the same size drawn from a seed
    /// derived from this set's seed and `attempt`.
    pub fn resampled(&self, attempt: u64) -> Result<Self, PointError> {
        let seed = derive_seed(self.provenance.seed, attempt);
        sample_points(
            self.points.len(),
            self.field.with_seed(seed),
            self.provenance.frame.is_some(),
        )
    }
}

/// SplitMix64 finalizer over `(seed, attempt)`; attempt 0 keeps the seed.
pub fn derive_seed(seed: u64, attempt: u64) -> u64 {
    if attempt == 0 {
        return seed;
    }
    let mut z = seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws `r` points uniformly from the chart `z = 1`, resampling until they
/// are in general position. With `frame`, the first three become the
/// coordinate points and the fourth `(1:1:1)`.
pub fn sample_points(r: usize, field: FieldConfig, frame: bool) -> Result<PointSet, PointError> {
    if r == 0 {
        return Err(PointError::TooFewPoints { needed: 1, got: 0 });
    }
    let f = field.field();
    let mut rng = ChaCha8Rng::seed_from_u64(field.seed);
    if frame && r <= 3 {
        let points = (0..r).map(ProjPoint::coordinate).collect();
        let provenance = Provenance {
            seed: field.seed,
            attempts: 0,
            frame: Some((0..r).collect()),
            quad_transformed_at: None,
        };
        return PointSet::from_points(points, field, provenance);
    }
    for attempt in 1..=MAX_ATTEMPTS {
        let points = (0..r)
            .map(|_| {
                let x = rng.gen_range(0..f.modulus());
                let y = rng.gen_range(0..f.modulus());
                ProjPoint::new(f, [x, y, 1])
            })
            .collect();
        let provenance = Provenance {
            seed: field.seed,
            attempts: attempt,
            frame: None,
            quad_transformed_at: None,
        };
        let Ok(set) = PointSet::from_points(points, field, provenance) else {
            continue;
        };
        if !frame {
            return Ok(set);
        }
        if let Ok(normal) = set.frame_normalized(0, 1, 2) {
            return Ok(normal);
        }
    }
    Err(PointError::SamplingFailed {
        r,
        attempts: MAX_ATTEMPTS,
        modulus: f.modulus(),
    })
}

/// Images of the points under `(x:y:z) ↦ (yz : xz : xy)`, with the base
/// points `p_j = e1, p_k = e2, p_l = e3` kept in place.
pub fn quad_transform_points(
    ps: &PointSet,
    j: usize,
    k: usize,
    l: usize,
) -> Result<PointSet, PointError> {
    let n = ps.len();
    if j == k || k == l || j == l || j >= n || k >= n || l >= n {
        return Err(PointError::BadIndices { arity: n });
    }
    let f = ps.field();
    for (axis, &index) in [j, k, l].iter().enumerate() {
        if !ps.points[index].same_class(&ProjPoint::coordinate(axis), f) {
            return Err(PointError::NotFrameNormalized { index, axis });
        }
    }
    let mut points = Vec::with_capacity(n);
    for (i, p) in ps.points.iter().enumerate() {
        if [j, k, l].contains(&i) {
            points.push(*p);
            continue;
        }
        let [x, y, z] = p.0;
        if x == 0 || y == 0 || z == 0 {
            return Err(PointError::Indeterminacy(i));
        }
        points.push(ProjPoint::new(f, [f.mul(y, z), f.mul(x, z), f.mul(x, y)]));
    }
    let mut provenance = ps.provenance.clone();
    provenance.quad_transformed_at = Some([j, k, l]);
    PointSet::from_points(points, ps.field, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64) -> FieldConfig {
        FieldConfig::default().with_seed(seed)
    }

    #[test]
    fn sampling_is_deterministic_and_general() {
        let a = sample_points(6, cfg(0), false).unwrap();
        let b = sample_points(6, cfg(0), false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        a.validate().unwrap();
        let c = sample_points(6, cfg(1), false).unwrap();
        assert_ne!(a.points(), c.points());
    }

    #[test]
    fn single_point() {
        let s = sample_points(1, cfg(5), false).unwrap();
        assert_eq!(s.len(), 1);
        assert!(!s.points()[0].is_zero());
    }

    #[test]
    fn frame_with_three_points_is_the_coordinate_triangle() {
        let s = sample_points(3, cfg(9), true).unwrap();
        for axis in 0..3 {
            assert_eq!(s.points()[axis], ProjPoint::coordinate(axis));
        }
    }

    #[test]
    fn frame_normalization_sends_fourth_to_unit_point() {
        let f = cfg(2).field();
        let s = sample_points(8, cfg(2), true).unwrap();
        for axis in 0..3 {
            assert_eq!(s.points()[axis], ProjPoint::coordinate(axis));
        }
        assert!(s.points()[3].same_class(&ProjPoint::new(f, [1, 1, 1]), f));
        s.validate().unwrap();
        assert_eq!(s.provenance().frame, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn frame_at_other_indices() {
        let f = cfg(4).field();
        let s = sample_points(6, cfg(4), false).unwrap();
        let n = s.frame_normalized(2, 4, 5).unwrap();
        assert_eq!(n.points()[2], ProjPoint::coordinate(0));
        assert_eq!(n.points()[4], ProjPoint::coordinate(1));
        assert_eq!(n.points()[5], ProjPoint::coordinate(2));
        assert!(n.points()[0].same_class(&ProjPoint::new(f, [1, 1, 1]), f));
    }

    #[test]
    fn validation_catches_degenerate_sets() {
        let f = FieldConfig::default();
        let field = f.field();
        let prov = Provenance {
            seed: 0,
            attempts: 0,
            frame: None,
            quad_transformed_at: None,
        };
        let p = |c: [u64; 3]| ProjPoint::new(field, c);
        let col = PointSet::from_points(
            vec![p([1, 0, 1]), p([2, 0, 1]), p([5, 0, 1])],
            f,
            prov.clone(),
        );
        assert_eq!(col.unwrap_err(), PointError::Collinear(0, 1, 2));
        let dup = PointSet::from_points(vec![p([1, 2, 1]), p([2, 4, 2])], f, prov.clone());
        assert_eq!(dup.unwrap_err(), PointError::Coincident(0, 1));
        let zero = PointSet::from_points(vec![ProjPoint([0, 0, 0])], f, prov);
        assert_eq!(zero.unwrap_err(), PointError::ZeroPoint(0));
    }

    #[test]
    fn tiny_field_gives_up() {
        let f = FieldConfig::new(3, 0).unwrap();
        // F_3 has no 10 points with no three collinear
        assert!(matches!(
            sample_points(10, f, false),
            Err(PointError::SamplingFailed { attempts: 100, .. })
        ));
    }

    #[test]
    fn quadratic_map_on_points() {
        let fc = FieldConfig::default();
        let f = fc.field();
        let prov = Provenance {
            seed: 0,
            attempts: 0,
            frame: Some(vec![0, 1, 2, 3]),
            quad_transformed_at: None,
        };
        let pts = vec![
            ProjPoint::coordinate(0),
            ProjPoint::coordinate(1),
            ProjPoint::coordinate(2),
            ProjPoint::new(f, [1, 1, 1]),
            ProjPoint::new(f, [1, 2, 3]),
        ];
        let ps = PointSet::from_points(pts, fc, prov).unwrap();
        let q = quad_transform_points(&ps, 0, 1, 2).unwrap();
        for axis in 0..3 {
            assert_eq!(q.points()[axis], ProjPoint::coordinate(axis));
        }
        assert!(q.points()[3].same_class(&ProjPoint::new(f, [1, 1, 1]), f));
        assert!(q.points()[4].same_class(&ProjPoint::new(f, [6, 3, 2]), f));
        assert_eq!(q.provenance().quad_transformed_at, Some([0, 1, 2]));
    }

    #[test]
    fn quadratic_map_requires_frame_and_avoids_lines() {
        let s = sample_points(6, cfg(3), false).unwrap();
        assert!(matches!(
            quad_transform_points(&s, 0, 1, 2),
            Err(PointError::NotFrameNormalized { .. })
        ));
        let fc = FieldConfig::default();
        let f = fc.field();
        let prov = Provenance {
            seed: 0,
            attempts: 0,
            frame: None,
            quad_transformed_at: None,
        };
        // (0:1:1) with e1 and... lies on x = 0; build without validation of that line
        let pts = vec![
            ProjPoint::coordinate(0),
            ProjPoint::coordinate(1),
            ProjPoint::coordinate(2),
            ProjPoint::new(f, [0, 1, 1]),
        ];
        let ps = PointSet {
            points: pts,
            field: fc,
            provenance: prov,
        };
        assert_eq!(
            quad_transform_points(&ps, 0, 1, 2).unwrap_err(),
            PointError::Indeterminacy(3)
        );
    }

    #[test]
    fn seeds_derive_deterministically() {
        assert_eq!(derive_seed(7, 0), 7);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
        assert_ne!(derive_seed(7, 1), derive_seed(7, 2));
    }
}
