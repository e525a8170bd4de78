use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{det_bareiss, IntMatrix};
use crate::error::{Error, Result};
use crate::fp_linalg::FpMatrix;
use crate::modmath::is_prime;

/// `U * A * V = diag(s)` with `U`, `V` unimodular and `s_i | s_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Invariant factors, nonnegative, zeros at the tail.
    pub s: Vec<BigInt>,
}

impl SnfResult {
    /// Checks every structural invariant against the original matrix.
    pub fn is_valid_for(&self, a: &IntMatrix) -> bool {
        let n = a.dim();
        if self.s.len() != n || self.u.dim() != n || self.v.dim() != n {
            return false;
        }
        let unimodular = |m: &IntMatrix| det_bareiss(m).abs().is_one();
        let chain = self.s.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        let product = &(&self.u * a) * &self.v;
        self.s.iter().all(|x| !x.is_negative())
            && chain
            && product.is_diagonal()
            && product.diagonal() == self.s
            && unimodular(&self.u)
            && unimodular(&self.v)
    }

    /// Number of invariant factors not divisible by `p`.
    pub fn units_mod(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.s.iter().filter(|x| !x.is_multiple_of(&p)).count()
    }
}

fn min_nonzero(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let n = d.dim();
    let mut best: Option<(usize, usize)> = None;
    for i in k..n {
        for j in k..n {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `row[target] -= q * row[src]`
fn row_sub(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..m.dim() {
        let delta = q * &m[(src, j)];
        m[(target, j)] -= delta;
    }
}

/// `col[target] -= q * col[src]`
fn col_sub(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for i in 0..m.dim() {
        let delta = q * &m[(i, src)];
        m[(i, target)] -= delta;
    }
}

/// Smith normal form with transforms, pivoting on the entry of smallest
/// absolute value in the remaining block.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let n = a.dim();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    'outer: for k in 0..n {
        loop {
            let Some((pi, pj)) = min_nonzero(&d, k) else {
                break 'outer;
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let pivot = d[(k, k)].clone();
            let mut cleared = true;
            for i in k + 1..n {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = &d[(i, k)] / &pivot;
                row_sub(&mut d, i, k, &q);
                row_sub(&mut u, i, k, &q);
                cleared &= d[(i, k)].is_zero();
            }
            for j in k + 1..n {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = &d[(k, j)] / &pivot;
                col_sub(&mut d, j, k, &q);
                col_sub(&mut v, j, k, &q);
                cleared &= d[(k, j)].is_zero();
            }
            if !cleared {
                continue;
            }

            // The pivot must divide the whole trailing block; otherwise fold an
            // offending row into row k and reduce again with a smaller remainder.
            let offending = (k + 1..n)
                .find(|&i| (k + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_sub(&mut d, k, i, &minus_one);
                    row_sub(&mut u, k, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            for j in 0..n {
                d[(k, j)] = -std::mem::take(&mut d[(k, j)]);
                u[(k, j)] = -std::mem::take(&mut u[(k, j)]);
            }
        }
    }

    SnfResult { s: d.diagonal(), u, v }
}

/// Outcome of [`rank_defect_divisibility_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankDefect {
    /// Rank of `A mod p` over `F_p`.
    pub rank: usize,
    /// `N - rank`.
    pub defect: usize,
    /// Whether `p^defect` divides `det A`.
    pub holds: bool,
}

/// If `rank(A mod p) = N - r` then `p^r | det A`. Computes both sides
/// independently and reports whether the divisibility holds.
pub fn rank_defect_divisibility_check(a: &IntMatrix, p: u64) -> Result<RankDefect> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let rank = FpMatrix::reduce_mod(a, p)?.rank();
    let defect = a.dim() - rank;
    let det = det_bareiss(a);
    let holds = det.is_multiple_of(&BigInt::from(p).pow(defect as u32));
    Ok(RankDefect { rank, defect, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn diag(entries: &[i64]) -> IntMatrix {
        IntMatrix::from_fn(entries.len(), |i, j| {
            if i == j {
                BigInt::from(entries[i])
            } else {
                BigInt::zero()
            }
        })
    }

    fn s_of(a: &IntMatrix) -> Vec<i64> {
        let r = smith_normal_form(a);
        assert!(r.is_valid_for(a), "{a:?} -> {r:?}");
        r.s.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn diagonal_inputs() {
        assert_eq!(s_of(&diag(&[5, 5])), vec![5, 5]);
        assert_eq!(s_of(&IntMatrix::zeros(2)), vec![0, 0]);
        assert_eq!(s_of(&diag(&[2, 3])), vec![1, 6]);
        assert_eq!(s_of(&diag(&[0, -4, 6])), vec![2, 12, 0]);
        assert_eq!(s_of(&IntMatrix::from_rows(&[vec![-3]]).unwrap()), vec![3]);
    }

    #[test]
    fn classic_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(s_of(&a), vec![2, 6, 12]);
    }

    #[test]
    fn random_product_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let a = IntMatrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(-5..=5)));
            let r = smith_normal_form(&a);
            assert!(r.is_valid_for(&a));
            let prod: BigInt = r.s.iter().product();
            assert_eq!(prod, det_bareiss(&a).abs());
        }
    }

    #[test]
    fn rank_defect_examples() {
        let r = rank_defect_divisibility_check(&diag(&[2, 2]), 2).unwrap();
        assert_eq!(r, RankDefect { rank: 0, defect: 2, holds: true });
        for p in [2, 3, 5, 7] {
            let r = rank_defect_divisibility_check(&IntMatrix::identity(4), p).unwrap();
            assert_eq!(r, RankDefect { rank: 4, defect: 0, holds: true });
        }
        assert!(rank_defect_divisibility_check(&IntMatrix::identity(2), 4).is_err());
    }

    #[test]
    fn rank_defect_holds_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = IntMatrix::from_fn(4, |_, _| BigInt::from(3 * rng.gen_range(-3..=3) + rng.gen_range(0..=1)));
            let r = rank_defect_divisibility_check(&a, 3).unwrap();
            assert!(r.holds);
            assert_eq!(r.rank, smith_normal_form(&a).units_mod(3));
        }
    }
}
