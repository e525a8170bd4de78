//! End-to-end assembly: the matrix `[(i^2 + cij + dj^2)^(n-2)]`, its exact
//! determinant `D_n(c, d)`, the Vandermonde product `V_n`, the composite and
//! prime verifications, and the factorization `M = V C V^T` over `F_p`.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{det_bareiss, det_crt, IntMatrix};
use crate::fp_linalg::{vandermonde_fp, FpMatrix};
use crate::modmath::{factorize, is_prime, jacobi_symbol, valuation};
use crate::quadform::reduced_coeff_matrix;

/// Parameters `(n, c, d)` with `n > 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SunParams {
    n: u32,
    c: i64,
    d: i64,
}

impl SunParams {
    pub fn new(n: u32, c: i64, d: i64) -> Result<Self> {
        if n <= 3 {
            return Err(Error::Domain(format!("n must exceed 3, got {n}")));
        }
        Ok(Self { n, c, d })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }
}

/// `[(x_i^2 + c x_i y_j + d y_j^2)^exponent]`.
fn form_power_matrix(x: &[i64], y: &[i64], c: i64, d: i64, exponent: u32) -> IntMatrix {
    let (c, d) = (BigInt::from(c), BigInt::from(d));
    IntMatrix::from_fn(x.len(), |i, j| {
        let (xi, yj) = (BigInt::from(x[i]), BigInt::from(y[j]));
        let base = &xi * &xi + &c * &xi * &yj + &d * &yj * &yj;
        base.pow(exponent)
    })
}

pub fn build_sun_matrix(params: &SunParams) -> IntMatrix {
    let nodes: Vec<i64> = (0..params.n as i64).collect();
    form_power_matrix(&nodes, &nodes, params.c, params.d, params.n - 2)
}

/// Determinant by Bareiss and by CRT; the two must agree.
pub fn det_cross_checked(a: &IntMatrix) -> Result<BigInt> {
    let bareiss = det_bareiss(a);
    let crt = det_crt(a);
    if bareiss != crt {
        return Err(Error::Inconsistency(format!(
            "Bareiss determinant {bareiss} disagrees with CRT determinant {crt}"
        )));
    }
    Ok(bareiss)
}

/// `D_n(c, d)`, exact.
pub fn compute_dn(params: &SunParams) -> Result<BigInt> {
    det_cross_checked(&build_sun_matrix(params))
}

/// `prod_{0 <= r < s <= n-1} (s - r)`.
pub fn vn_product_pairwise(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for s in 0..n {
        for r in 0..s {
            acc *= s - r;
        }
    }
    acc
}

/// `prod_{k=1}^{n-1} k^(n-k)`.
pub fn vn_product_powers(n: u64) -> BigInt {
    (1..n).map(|k| BigInt::from(k).pow((n - k) as u32)).product()
}

/// `V_n`, by both product formulas.
///
/// Panics if the two formulas disagree.
pub fn vn_product(n: u64) -> BigInt {
    let pairwise = vn_product_pairwise(n);
    assert_eq!(pairwise, vn_product_powers(n), "V_{n} formulas disagree");
    pairwise
}

/// `nu_p(V_n) = sum_{k=1}^{n-1} (n - k) nu_p(k)`.
pub fn vn_valuation(n: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok((1..n).map(|k| (n - k) * u64::from(valuation(k, p))).sum())
}

/// One prime power `p^alpha || n` of a composite `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePowerAudit {
    pub p: u64,
    pub alpha: u32,
    pub valuation: u64,
    /// `n - p`, a lower bound for `valuation`.
    pub bound: u64,
}

impl PrimePowerAudit {
    pub fn holds(&self) -> bool {
        self.valuation >= u64::from(self.alpha) && self.valuation >= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeAudit {
    pub n: u64,
    pub factors: Vec<PrimePowerAudit>,
}

impl CompositeAudit {
    /// `n | V_n`, read off the valuations.
    pub fn n_divides_vn(&self) -> bool {
        self.factors.iter().all(|f| f.valuation >= u64::from(f.alpha))
    }

    pub fn holds(&self) -> bool {
        self.factors.iter().all(PrimePowerAudit::holds)
    }
}

fn require_composite(n: u64) -> Result<()> {
    if n <= 3 || is_prime(n) {
        return Err(Error::Domain(format!("expected a composite n > 3, got {n}")));
    }
    Ok(())
}

/// Valuation audit of `V_n` at every prime dividing a composite `n`.
pub fn audit_composite(n: u64) -> Result<CompositeAudit> {
    require_composite(n)?;
    let factors = factorize(n)
        .into_iter()
        .map(|(p, alpha)| {
            Ok(PrimePowerAudit {
                p,
                alpha,
                valuation: vn_valuation(n, p)?,
                bound: n - p,
            })
        })
        .collect::<Result<_>>()?;
    Ok(CompositeAudit { n, factors })
}

/// `n | V_n` for composite `n`, via valuations only.
pub fn check_composite_case(n: u64) -> Result<bool> {
    Ok(audit_composite(n)?.n_divides_vn())
}

/// `prod_{r < s} (v_s - v_r)`.
pub fn vandermonde_product(v: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    for s in 0..v.len() {
        for r in 0..s {
            acc *= BigInt::from(v[s]) - v[r];
        }
    }
    acc
}

/// Whether `V(x) V(y)` divides `det[(x_i^2 + c x_i y_j + d y_j^2)^(n-2)]`.
/// Repeated nodes are rejected rather than reported as vacuously true.
pub fn specialization_divisibility(n: usize, c: i64, d: i64, x: &[i64], y: &[i64]) -> Result<bool> {
    if n < 2 || x.len() != n || y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "need two node vectors of length n = {n} >= 2, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let divisor = vandermonde_product(x) * vandermonde_product(y);
    if divisor.is_zero() {
        return Err(Error::Domain("node vectors must have pairwise distinct entries".into()));
    }
    let phi = det_cross_checked(&form_power_matrix(x, y, c, d, n as u32 - 2))?;
    Ok(phi.is_multiple_of(&divisor))
}

/// Outcome of [`prime_decomposition_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub rank_m: usize,
    pub rank_c: usize,
    /// `M = V C V^T`; an `Ok` result always has this set.
    pub factorization_ok: bool,
}

/// Checks `M = V C V^T` over `F_p`, where `M` is the Sun matrix mod `p`, `V`
/// the node matrix and `C` the reduced coefficient matrix.
pub fn prime_decomposition_check(p: u64, c: i64, d: i64) -> Result<Decomposition> {
    let n = u32::try_from(p).map_err(|_| Error::Domain(format!("{p} is too large")))?;
    let params = SunParams::new(n, c, d)?;
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let m = FpMatrix::reduce_mod(&build_sun_matrix(&params), p)?;
    let v = vandermonde_fp(p)?;
    let coeffs = reduced_coeff_matrix(c, d, p)?;
    let product = v.matmul(&coeffs.matrix)?.matmul(&v.transpose())?;
    if product != m {
        return Err(Error::Inconsistency(format!(
            "M != V C V^T for (p, c, d) = ({p}, {c}, {d})"
        )));
    }
    Ok(Decomposition {
        rank_m: m.rank(),
        rank_c: coeffs.rank(),
        factorization_ok: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NClass {
    Composite,
    Prime,
}

impl NClass {
    pub fn of(n: u64) -> Self {
        if is_prime(n) {
            NClass::Prime
        } else {
            NClass::Composite
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            NClass::Composite => "composite",
            NClass::Prime => "prime",
        }
    }
}

/// Outcome of evaluating one `(n, c, d)` cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRecord {
    pub params: SunParams,
    pub n_class: NClass,
    /// `(d/n)` for prime `n`; `None` (not applicable) for composite `n`.
    pub symbol_d: Option<i8>,
    pub hypothesis_met: bool,
    /// `D_n(c, d) mod n^2`, in `[0, n^2)`.
    pub d_mod_n2: u64,
    pub theorem_holds: bool,
    pub decomposition_rank: Option<usize>,
    pub elapsed_ms: Option<u64>,
}

impl VerificationRecord {
    /// `hypothesis_met` without `theorem_holds`: a counterexample.
    pub fn violates_theorem(&self) -> bool {
        self.hypothesis_met && !self.theorem_holds
    }
}

/// Classifies `n`, evaluates the hypothesis, and reduces the exact
/// determinant modulo `n^2`. Never asserts; callers decide what a
/// violation means.
pub fn verify_theorem(params: &SunParams) -> Result<VerificationRecord> {
    let start = Instant::now();
    let n = u64::from(params.n);
    let n_class = NClass::of(n);
    let symbol_d = match n_class {
        NClass::Prime => Some(jacobi_symbol(params.d, n)?),
        NClass::Composite => None,
    };
    let hypothesis_met = match symbol_d {
        None => true,
        Some(s) => s == -1,
    };
    let det = compute_dn(params)?;
    let d_mod_n2 = det
        .mod_floor(&BigInt::from(n * n))
        .to_u64()
        .expect("residue below n^2");
    Ok(VerificationRecord {
        params: *params,
        n_class,
        symbol_d,
        hypothesis_met,
        d_mod_n2,
        theorem_holds: d_mod_n2 == 0,
        decomposition_rank: None,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}
