use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;

/// Exact determinant by Bareiss fraction-free elimination.
///
/// After step `k` every entry of the trailing block is a `(k+1)`-minor of the
/// input, so the division by the previous pivot is always exact.
pub fn det_bareiss(a: &IntMatrix) -> BigInt {
    let n = a.dim();
    let mut rows: Vec<Vec<BigInt>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();

    for k in 0..n - 1 {
        if rows[k][k].is_zero() {
            match (k + 1..n).find(|&i| !rows[i][k].is_zero()) {
                Some(i) => {
                    rows.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
    }

    let det = std::mem::take(&mut rows[n - 1][n - 1]);
    if negate {
        -det
    } else {
        det
    }
}
