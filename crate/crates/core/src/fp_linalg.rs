//! Dense linear algebra over a prime field `F_p`.
//!
//! Elimination pivots on the first nonzero entry of a column; over a field
//! there is no numerical reason to prefer any other choice.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::modmath::{add_mod, inv_mod, is_prime, mul_mod, pow_mod, sub_mod};

/// Row-major matrix of residues modulo a prime.
///
/// The modulus is assumed prime; it is not re-checked here because the CRT
/// determinant feeds in 62-bit primes from a verified pool.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn from_residues(rows: usize, cols: usize, modulus: u64, data: Vec<u64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Domain(format!("modulus must be at least 2, got {modulus}")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&x| x >= modulus) {
            return Err(Error::Domain(format!("entry {bad} is not reduced modulo {modulus}")));
        }
        Ok(Self { rows, cols, modulus, data })
    }

    /// Entries are reduced modulo `modulus` as they are produced.
    pub fn from_fn(rows: usize, cols: usize, modulus: u64, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        assert!(modulus >= 2);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % modulus);
            }
        }
        Self { rows, cols, modulus, data }
    }

    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Self::from_fn(rows, cols, modulus, |_, _| 0)
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        Self::from_fn(n, n, modulus, |i, j| u64::from(i == j))
    }

    /// Entrywise canonical residues of an integer matrix.
    pub fn reduce_mod(a: &IntMatrix, p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("modulus must be at least 2, got {p}")));
        }
        let q = BigInt::from(p);
        let n = a.dim();
        let data = a
            .entries()
            .iter()
            .map(|x| x.mod_floor(&q).to_u64().expect("residue fits the modulus"))
            .collect();
        Ok(Self { rows: n, cols: n, modulus: p, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = value % self.modulus;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.modulus, |i, j| self[(j, i)])
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|&x| x == 0)
    }

    /// Nonzero positions, row-major.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| self[(i, j)] != 0)
            .collect()
    }

    pub fn matmul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: rhs.modulus });
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.modulus;
        let mut out = FpMatrix::zeros(self.rows, rhs.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = add_mod(out.data[idx], mul_mod(a, rhs[(k, j)], p), p);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn row_echelon(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.modulus;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m[(i, col)] != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = inv_mod(m[(r, col)], p).expect("nonzero element of a prime field");
            for j in col..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = mul_mod(m.data[idx], inv, p);
            }
            for i in 0..m.rows {
                let factor = m[(i, col)];
                if i == r || factor == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let sub = mul_mod(factor, m[(r, j)], p);
                    let idx = i * m.cols + j;
                    m.data[idx] = sub_mod(m.data[idx], sub, p);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Determinant by Gaussian elimination over `F_p`.
    pub fn det(&self) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let p = self.modulus;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1 % p;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&i| m[(i, col)] != 0) else {
                return Ok(0);
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = sub_mod(0, det, p);
            }
            let pivot = m[(col, col)];
            det = mul_mod(det, pivot, p);
            let inv = inv_mod(pivot, p).expect("nonzero element of a prime field");
            for i in col + 1..n {
                let factor = mul_mod(m[(i, col)], inv, p);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = mul_mod(factor, m[(col, j)], p);
                    let idx = i * n + j;
                    m.data[idx] = sub_mod(m.data[idx], sub, p);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for FpMatrix {
    type Output = u64;

    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {} [", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub fn reduce_mod(a: &IntMatrix, p: u64) -> Result<FpMatrix> {
    FpMatrix::reduce_mod(a, p)
}

pub fn rank_fp(a: &FpMatrix) -> usize {
    a.rank()
}

pub fn matmul_fp(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix> {
    a.matmul(b)
}

/// The `p x p` node matrix `(a_i^r)` with nodes `a_i = i` and `0^0 = 1`.
pub fn vandermonde_fp(p: u64) -> Result<FpMatrix> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let n = p as usize;
    Ok(FpMatrix::from_fn(n, n, p, |i, r| pow_mod(i as u64, r as u64, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmath::mod_pow;
    use crate::sun::{build_sun_matrix, SunParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut impl Rng, rows: usize, cols: usize, p: u64) -> FpMatrix {
        FpMatrix::from_fn(rows, cols, p, |_, _| rng.gen_range(0..p))
    }

    /// Rank by greedy insertion into a basis kept in echelon form by leading
    /// index; shares nothing with `row_echelon`.
    fn rank_by_basis_insertion(a: &FpMatrix) -> usize {
        let p = a.modulus();
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for i in 0..a.rows() {
            let mut v = a.row(i).to_vec();
            for b in &basis {
                let lead = b.iter().position(|&x| x != 0).unwrap();
                if v[lead] != 0 {
                    let f = v[lead] * inv_mod(b[lead], p).unwrap() % p;
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            if v.iter().any(|&x| x != 0) {
                basis.push(v);
                basis.sort_by_key(|b| b.iter().position(|&x| x != 0));
            }
        }
        basis.len()
    }

    #[test]
    fn reduce_examples() {
        let i = IntMatrix::identity(3);
        assert_eq!(reduce_mod(&i, 7).unwrap(), FpMatrix::identity(3, 7));
        let neg = IntMatrix::from_rows(&[vec![-1]]).unwrap();
        assert_eq!(reduce_mod(&neg, 5).unwrap()[(0, 0)], 4);
    }

    #[test]
    fn reduce_sun_matrix_matches_scalar_powers() {
        let a = build_sun_matrix(&SunParams::new(5, 0, 2).unwrap());
        let m = reduce_mod(&a, 5).unwrap();
        for i in 0..5i64 {
            for j in 0..5i64 {
                let expected = mod_pow(i * i + 2 * j * j, 3, 5).unwrap().value();
                assert_eq!(m[(i as usize, j as usize)], expected);
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_fp(&FpMatrix::identity(7, 7)), 7);
        assert_eq!(rank_fp(&FpMatrix::zeros(4, 6, 7)), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = if rng.gen_bool(0.5) {
                random(&mut rng, 6, 6, 7)
            } else {
                // low rank product
                let k = rng.gen_range(1..6);
                random(&mut rng, 6, k, 7).matmul(&random(&mut rng, k, 6, 7)).unwrap()
            };
            assert_eq!(rank_fp(&a), rank_by_basis_insertion(&a));
        }
    }

    #[test]
    fn rank_counts_nonzero_rows_of_echelon_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = random(&mut rng, 5, 3, 3);
            let (e, pivots) = a.row_echelon();
            let zero_rows = (0..5).filter(|&i| e.is_zero_row(i)).count();
            assert_eq!(pivots.len(), 5 - zero_rows);
        }
    }

    #[test]
    fn matmul_examples_and_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let a = random(&mut rng, 3, 3, 5);
            let b = random(&mut rng, 3, 3, 5);
            let i = FpMatrix::identity(3, 5);
            assert_eq!(matmul_fp(&a, &i).unwrap(), a);
            assert_eq!(matmul_fp(&i, &b).unwrap(), b);
            let ab = matmul_fp(&a, &b).unwrap();
            for r in 0..3 {
                for c in 0..3 {
                    let mut s = 0;
                    for k in 0..3 {
                        s += a[(r, k)] * b[(k, c)];
                    }
                    assert_eq!(ab[(r, c)], s % 5);
                }
            }
        }
        let a = FpMatrix::zeros(2, 3, 5);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            a.matmul(&FpMatrix::zeros(3, 2, 7)),
            Err(Error::ModulusMismatch { left: 5, right: 7 })
        ));
    }

    #[test]
    fn det_matches_leibniz_on_3x3() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random(&mut rng, 3, 3, 11);
            let e = |i, j| a[(i, j)] as i64;
            let leibniz = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
            assert_eq!(a.det().unwrap() as i64, leibniz.rem_euclid(11));
        }
        assert!(FpMatrix::zeros(2, 3, 5).det().is_err());
    }

    #[test]
    fn vandermonde_examples() {
        let v = vandermonde_fp(3).unwrap();
        assert_eq!(v, FpMatrix::from_residues(3, 3, 3, vec![1, 0, 0, 1, 1, 1, 1, 2, 1]).unwrap());
        for p in [3, 5, 7, 11, 13] {
            let v = vandermonde_fp(p).unwrap();
            let n = p as usize;
            assert!((0..n).all(|i| v[(i, 0)] == 1));
            assert!((0..n).all(|r| v[(1, r)] == 1));
            // prod_{i<j} (a_j - a_i)
            let mut expected = 1;
            for i in 0..p {
                for j in i + 1..p {
                    expected = expected * (j - i) % p;
                }
            }
            assert_eq!(v.det().unwrap(), expected);
            assert_ne!(expected, 0);
        }
        assert!(vandermonde_fp(9).is_err());
    }
}
