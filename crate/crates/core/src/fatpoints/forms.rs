//! Homogeneous forms in `x, y, z` as dense coefficient vectors.
//!
//! Degree-`t` monomials are ordered graded-lexicographically with
//! `x > y > z`: `x^t, x^{t-1}y, x^{t-1}z, x^{t-2}y^2, ...`.

use crate::ffla::PrimeField;

pub fn monomial_count(t: u32) -> usize {
    let t = t as usize;
    (t + 1) * (t + 2) / 2
}

/// Position of `x^a y^b z^(t-a-b)`.
#[inline]
pub fn monomial_index(t: u32, a: u32, b: u32) -> usize {
    debug_assert!(a + b <= t);
    let rest = (t - a) as usize;
    rest * (rest + 1) / 2 + (t - a - b) as usize
}

/// Exponent triples of degree `t` in basis order.
pub fn monomials(t: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(monomial_count(t));
    for a in (0..=t).rev() {
        for b in (0..=t - a).rev() {
            out.push([a, b, t - a - b]);
        }
    }
    out
}

/// Product of a degree-`tf` form and a degree-`tg` form.
pub fn multiply(field: PrimeField, f: &[u64], tf: u32, g: &[u64], tg: u32) -> Vec<u64> {
    let t = tf + tg;
    let mf = monomials(tf);
    let mg = monomials(tg);
    let mut out = vec![0u64; monomial_count(t)];
    for (i, &cf) in f.iter().enumerate() {
        if cf == 0 {
            continue;
        }
        let [a1, b1, _] = mf[i];
        for (j, &cg) in g.iter().enumerate() {
            if cg == 0 {
                continue;
            }
            let [a2, b2, _] = mg[j];
            let idx = monomial_index(t, a1 + a2, b1 + b2);
            out[idx] = field.add(out[idx], field.mul(cf, cg));
        }
    }
    out
}

/// `x·f`, `y·f` or `z·f` (`var` = 0, 1, 2).
pub fn times_variable(f: &[u64], t: u32, var: usize) -> Vec<u64> {
    let mut out = vec![0u64; monomial_count(t + 1)];
    for (i, [a, b, _]) in monomials(t).into_iter().enumerate() {
        if f[i] == 0 {
            continue;
        }
        let (a, b) = match var {
            0 => (a + 1, b),
            1 => (a, b + 1),
            _ => (a, b),
        };
        out[monomial_index(t + 1, a, b)] = f[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::DEFAULT_MODULUS;

    #[test]
    fn ordering_is_graded_lex() {
        assert_eq!(
            monomials(2),
            vec![
                [2, 0, 0],
                [1, 1, 0],
                [1, 0, 1],
                [0, 2, 0],
                [0, 1, 1],
                [0, 0, 2]
            ]
        );
        for t in 0..8 {
            for (i, [a, b, _]) in monomials(t).into_iter().enumerate() {
                assert_eq!(monomial_index(t, a, b), i);
            }
            assert_eq!(monomials(t).len(), monomial_count(t));
        }
    }

    #[test]
    fn products() {
        let f = PrimeField::new(DEFAULT_MODULUS).unwrap();
        // (x + y)(x − y) = x² − y²
        let p = [1, 1, 0];
        let m = [1, f.neg(1), 0];
        let prod = multiply(f, &p, 1, &m, 1);
        assert_eq!(prod, vec![1, 0, 0, f.neg(1), 0, 0]);
        let z = times_variable(&[0, 0, 1], 1, 2);
        assert_eq!(z, vec![0, 0, 0, 0, 0, 1]);
        assert_eq!(times_variable(&[1, 0, 0], 1, 1), vec![0, 1, 0, 0, 0, 0]);
    }
}
