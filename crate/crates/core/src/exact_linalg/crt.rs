use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::IntMatrix;
use crate::fp_linalg::FpMatrix;
use crate::modmath::{inv_mod, mul_mod, pow_mod, sub_mod};

/// Every pool prime lies in `(2^61, 2^62)`.
const POOL_START: u64 = (1 << 62) - 1;
const POOL_PRIME_BITS: u64 = 61;

static PRIME_POOL: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// Miller-Rabin with the first twelve prime bases, which is exact for all
/// 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes below `2^62`, in descending order.
///
/// The list is fixed; it is grown lazily and shared across threads.
pub fn crt_primes(count: usize) -> Vec<u64> {
    let mut pool = PRIME_POOL.lock().unwrap_or_else(|e| e.into_inner());
    let mut candidate = pool.last().map_or(POOL_START, |&p| p - 2);
    while pool.len() < count {
        if is_prime_u64(candidate) {
            pool.push(candidate);
        }
        candidate -= 2;
    }
    pool[..count].to_vec()
}

/// `ceil(prod_i ||row_i||_2)`, an upper bound on `|det A|`.
pub fn hadamard_bound(a: &IntMatrix) -> BigInt {
    let squared: BigInt = (0..a.dim())
        .map(|i| a.row(i).iter().map(|x| x * x).sum::<BigInt>())
        .product();
    let root = squared.sqrt();
    if &root * &root == squared {
        root
    } else {
        root + 1
    }
}

fn residue_of(x: &BigInt, q: &BigInt) -> u64 {
    x.mod_floor(q).to_u64().expect("residue below a 64-bit modulus")
}

/// Exact determinant from determinants modulo word-size primes, recombined
/// by the Chinese remainder theorem and lifted into `(-P/2, P/2]`.
///
/// The primes are consumed from [`crt_primes`] until their product `P`
/// exceeds `2 * hadamard_bound(A) + 1`. The per-prime determinants run in
/// parallel; the recombination order is fixed, so the result is deterministic.
pub fn det_crt(a: &IntMatrix) -> BigInt {
    let bound = hadamard_bound(a);
    if bound.is_zero() {
        return BigInt::zero();
    }
    let target: BigInt = 2 * bound + 1;
    let count = target.bits().div_ceil(POOL_PRIME_BITS) as usize;
    let primes = crt_primes(count);

    let residues: Vec<u64> = primes
        .par_iter()
        .map(|&q| {
            let q_big = BigInt::from(q);
            let entries = a.entries().iter().map(|x| residue_of(x, &q_big)).collect();
            FpMatrix::from_residues(a.dim(), a.dim(), q, entries)
                .and_then(|m| m.det())
                .expect("square matrix over a pool prime")
        })
        .collect();

    // Garner-style incremental recombination.
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for (&q, &r) in primes.iter().zip(&residues) {
        let q_big = BigInt::from(q);
        let current = residue_of(&value, &q_big);
        let m_inv = inv_mod(residue_of(&modulus, &q_big), q).expect("pool primes are distinct");
        let t = mul_mod(sub_mod(r, current, q), m_inv, q);
        value += &modulus * t;
        modulus *= q;
    }
    debug_assert!(modulus > target);

    if (&value * 2u32) > modulus {
        value - modulus
    } else {
        value
    }
}
