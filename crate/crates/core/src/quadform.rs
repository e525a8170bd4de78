//! The binary quadratic form `X^2 + cXY + dY^2` over `F_p`.
//!
//! Everything here is built from the coefficient vector
//!
//! ```text
//! (T^2 + cT + d)^(p-2) = sum_{a=0}^{2p-4} alpha_a T^a      (in F_p[T])
//! ```
//!
//! which also gives the homogeneous expansion
//! `(X^2 + cXY + dY^2)^(p-2) = sum_a alpha_a X^a Y^(2p-4-a)`. Reducing each
//! exponent into `{0} U {1..p-1}` yields the reduced representative `R(X, Y)`
//! with degree at most `p - 1` in each variable, and its coefficient matrix `C`.
//! Under `(d/p) = -1` the critical coefficient `alpha_m + alpha_{m+p-1}`
//! (`m = (p-3)/2`) vanishes, so row `m` of `C` is zero and `rank C <= p - 2`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp_linalg::FpMatrix;
use crate::modmath::{add_mod, canonical, inv_mod, is_prime, jacobi_symbol, mul_mod, pow_mod, sub_mod};

/// Univariate polynomial over `F_p`, coefficients indexed by degree, trailing
/// zeros trimmed (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(modulus: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        assert!(modulus >= 2);
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(modulus, [1])
    }

    /// `T^2 + cT + d`.
    pub fn quadratic(c: i64, d: i64, p: u64) -> Self {
        Self::new(p, [canonical(d, p), canonical(c, p), 1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> u64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    pub fn mul(&self, rhs: &FpPoly) -> FpPoly {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let p = self.modulus;
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return FpPoly::new(p, []);
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        FpPoly::new(p, out)
    }
}

/// `f^e` over `F_p` by square-and-multiply.
pub fn poly_pow_mod_p(f: &FpPoly, mut e: u64) -> FpPoly {
    let mut result = FpPoly::one(f.modulus);
    let mut base = f.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    result
}

fn check_prime_above_three(p: u64) -> Result<()> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::Domain(format!("expected a prime p > 3, got {p}")));
    }
    Ok(())
}

/// Coefficients `alpha_0 .. alpha_{2p-4}` of `(T^2 + cT + d)^(p-2)` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaCoeffs {
    pub p: u64,
    pub c: u64,
    pub d: u64,
    /// Length exactly `2p - 3`; the last entry is 1.
    pub alpha: Vec<u64>,
    /// The critical index `(p - 3) / 2`.
    pub m: usize,
}

impl AlphaCoeffs {
    /// `alpha_m + alpha_{m+p-1}` in `F_p`.
    pub fn critical_sum(&self) -> u64 {
        let shift = self.p as usize - 1;
        add_mod(self.alpha[self.m], self.alpha[self.m + shift], self.p)
    }
}

pub fn alpha_coeffs(c: i64, d: i64, p: u64) -> Result<AlphaCoeffs> {
    check_prime_above_three(p)?;
    let f = FpPoly::quadratic(c, d, p);
    let len = 2 * p as usize - 3;
    let power = poly_pow_mod_p(&f, p - 2);
    let alpha: Vec<u64> = (0..len).map(|a| power.coeff(a)).collect();
    debug_assert_eq!(power.degree(), Some(len - 1));
    Ok(AlphaCoeffs {
        p,
        c: canonical(c, p),
        d: canonical(d, p),
        alpha,
        m: (p as usize - 3) / 2,
    })
}

/// `alpha_m + alpha_{m+p-1}` mod `p`. Zero whenever `(d/p) = -1`; no claim
/// otherwise, and no assertion is made here.
pub fn critical_cancellation(c: i64, d: i64, p: u64) -> Result<u64> {
    Ok(alpha_coeffs(c, d, p)?.critical_sum())
}

fn require_unit(x: i64, p: u64, what: &str) -> Result<u64> {
    let r = canonical(x, p);
    if r == 0 {
        return Err(Error::Domain(format!("{what} must be nonzero modulo {p}")));
    }
    Ok(r)
}

/// Evaluates both sides of `f(d/t) = d * t^(-2) * f(t)` in `F_p`.
pub fn involution_identity_check(c: i64, d: i64, p: u64, t: i64) -> Result<bool> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Domain(format!("expected an odd prime, got {p}")));
    }
    let d_r = require_unit(d, p, "d")?;
    let t_r = require_unit(t, p, "t")?;
    let f = FpPoly::quadratic(c, d, p);
    let t_inv = inv_mod(t_r, p).expect("unit");
    let lhs = f.eval(mul_mod(d_r, t_inv, p));
    let rhs = mul_mod(mul_mod(d_r, mul_mod(t_inv, t_inv, p), p), f.eval(t_r), p);
    Ok(lhs == rhs)
}

/// `S = sum_{t in F_p^x} f(t)^(p-2) t^(-m)` by direct summation.
///
/// Always `S = -(alpha_m + alpha_{m+p-1})`; under `(d/p) = -1` the involution
/// `t -> d/t` gives `S = -S`, hence `S = 0`.
pub fn weighted_power_sum(c: i64, d: i64, p: u64) -> Result<u64> {
    check_prime_above_three(p)?;
    require_unit(d, p, "d")?;
    let f = FpPoly::quadratic(c, d, p);
    let m = (p - 3) / 2;
    let sum = (1..p).fold(0, |acc, t| {
        let t_inv = inv_mod(t, p).expect("unit");
        let term = mul_mod(pow_mod(f.eval(t), p - 2, p), pow_mod(t_inv, m, p), p);
        add_mod(acc, term, p)
    });
    Ok(sum)
}

/// `0` for `e = 0`, otherwise the representative of `e` modulo `p - 1` in
/// `{1, .., p-1}`. Then `z^e = z^ebar` for every `z` in `F_p`.
pub fn exponent_reduce(e: u64, p: u64) -> u64 {
    if e == 0 {
        0
    } else {
        (e - 1) % (p - 1) + 1
    }
}

/// Coefficient matrix `C` of the reduced representative:
/// `C[(r, s)]` is the coefficient of `X^r Y^s` in `R(X, Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffMatrixC {
    pub p: u64,
    pub matrix: FpMatrix,
}

impl CoeffMatrixC {
    /// `R(x, y)` with `0^0 = 1`.
    pub fn evaluate(&self, x: u64, y: u64) -> u64 {
        let p = self.p;
        let n = p as usize;
        let xs: Vec<u64> = (0..n).map(|r| pow_mod(x, r as u64, p)).collect();
        let ys: Vec<u64> = (0..n).map(|s| pow_mod(y, s as u64, p)).collect();
        let mut acc = 0;
        for r in 0..n {
            for s in 0..n {
                let c = self.matrix[(r, s)];
                if c != 0 {
                    acc = add_mod(acc, mul_mod(c, mul_mod(xs[r], ys[s], p), p), p);
                }
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Builds `C` directly from the alpha coefficients:
///
/// ```text
/// R = alpha_0 Y^(p-3) + sum_{r=1}^{p-4} (alpha_r + alpha_{r+p-1}) X^r Y^(p-3-r) + X^(p-3)
///   + alpha_{p-3} X^(p-3) Y^(p-1) + alpha_{p-2} X^(p-2) Y^(p-2) + alpha_{p-1} X^(p-1) Y^(p-3)
/// ```
///
/// The six index groups are pairwise disjoint for `p > 3`.
pub fn reduced_coeff_matrix(c: i64, d: i64, p: u64) -> Result<CoeffMatrixC> {
    let alpha = alpha_coeffs(c, d, p)?.alpha;
    let n = p as usize;
    let mut m = FpMatrix::zeros(n, n, p);
    m.set(0, n - 3, alpha[0]);
    for r in 1..=n - 4 {
        m.set(r, n - 3 - r, add_mod(alpha[r], alpha[r + n - 1], p));
    }
    m.set(n - 3, 0, alpha[2 * n - 4]);
    m.set(n - 3, n - 1, alpha[n - 3]);
    m.set(n - 2, n - 2, alpha[n - 2]);
    m.set(n - 1, n - 3, alpha[n - 1]);
    Ok(CoeffMatrixC { p, matrix: m })
}

/// Coefficient vectors of the Lagrange basis on the nodes `0, 1, .., p-1`.
fn lagrange_basis(p: u64) -> Vec<Vec<u64>> {
    let n = p as usize;
    (0..p)
        .map(|i| {
            let mut numer = FpPoly::one(p);
            let mut denom = 1;
            for j in (0..p).filter(|&j| j != i) {
                numer = numer.mul(&FpPoly::new(p, [p - j, 1]));
                denom = mul_mod(denom, sub_mod(i, j, p), p);
            }
            let scale = inv_mod(denom, p).expect("distinct nodes");
            (0..n).map(|k| mul_mod(numer.coeff(k), scale, p)).collect()
        })
        .collect()
}

fn interpolate(values: &[u64], basis: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = basis.len();
    let mut out = vec![0; n];
    for (&v, poly) in values.iter().zip(basis) {
        if v == 0 {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(poly) {
            *o = add_mod(*o, mul_mod(v, b, p), p);
        }
    }
    out
}

/// Recovers `C` from the values of `(x^2 + cxy + dy^2)^(p-2)` on all of `F_p^2`:
/// interpolate in `x` for each fixed `y`, then interpolate each resulting
/// coefficient function in `y`.
pub fn interpolate_representative(c: i64, d: i64, p: u64) -> Result<CoeffMatrixC> {
    check_prime_above_three(p)?;
    let n = p as usize;
    let (c, d) = (canonical(c, p), canonical(d, p));
    let basis = lagrange_basis(p);

    // by_y[y][r]: coefficient of X^r in the section at Y = y
    let by_y: Vec<Vec<u64>> = (0..p)
        .into_par_iter()
        .map(|y| {
            let column: Vec<u64> = (0..p)
                .map(|x| {
                    let q = add_mod(
                        add_mod(mul_mod(x, x, p), mul_mod(c, mul_mod(x, y, p), p), p),
                        mul_mod(d, mul_mod(y, y, p), p),
                        p,
                    );
                    pow_mod(q, p - 2, p)
                })
                .collect();
            interpolate(&column, &basis, p)
        })
        .collect();

    let mut m = FpMatrix::zeros(n, n, p);
    for r in 0..n {
        let section: Vec<u64> = by_y.iter().map(|coeffs| coeffs[r]).collect();
        for (s, v) in interpolate(&section, &basis, p).into_iter().enumerate() {
            m.set(r, s, v);
        }
    }
    Ok(CoeffMatrixC { p, matrix: m })
}

/// `rank_{F_p} C`, refusing inputs with `(d/p) != -1`. An Ok result always
/// satisfies `rank <= p - 2`.
pub fn rank_bound_c(c: i64, d: i64, p: u64) -> Result<usize> {
    check_prime_above_three(p)?;
    let symbol = jacobi_symbol(d, p)?;
    if symbol != -1 {
        return Err(Error::HypothesisNotMet(format!(
            "({d}/{p}) = {symbol}, need a quadratic non-residue"
        )));
    }
    let rank = reduced_coeff_matrix(c, d, p)?.rank();
    if rank > p as usize - 2 {
        return Err(Error::Inconsistency(format!(
            "rank C = {rank} exceeds p - 2 for (c, d, p) = ({c}, {d}, {p})"
        )));
    }
    Ok(rank)
}
