//! Scalar modular arithmetic and quadratic-residue symbols.
//!
//! Moduli are machine words. Products go through `u128`, so every modulus
//! below `2^64` is handled without overflow. Negative inputs are first
//! mapped to their canonical residue in `[0, m)`.

use std::fmt;

use crate::error::{Error, Result};

/// A residue class `value mod modulus`, stored canonically in `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(a: i64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Domain(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(Self {
            value: canonical(a, modulus),
            modulus,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Canonical representative of `a` in `[0, m)`.
#[inline]
pub fn canonical(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    add_mod(a, m - b % m, m)
}

/// `base^exp mod m` for an already reduced base; `0^0 = 1`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `base^exp` reduced modulo `modulus`. The empty product convention gives
/// `x^0 = 1` for every `x`, zero included.
pub fn mod_pow(base: i64, exp: u64, modulus: u64) -> Result<Residue> {
    let r = Residue::new(base, modulus)?;
    Ok(Residue {
        value: pow_mod(r.value, exp, modulus),
        modulus,
    })
}

/// Multiplicative inverse of `a` modulo `p`.
pub fn mod_inverse(a: i64, p: u64) -> Result<Residue> {
    let r = Residue::new(a, p)?;
    match inv_mod(r.value, p) {
        Some(value) => Ok(Residue { value, modulus: p }),
        None => Err(Error::NotInvertible { value: a, modulus: p }),
    }
}

fn check_odd_modulus(n: u64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Domain(format!(
            "symbol modulus must be odd and at least 3, got {n}"
        )));
    }
    Ok(())
}

/// Jacobi symbol `(a / n)` for odd `n >= 3`, by the binary reciprocity loop.
pub fn jacobi_symbol(a: i64, n: u64) -> Result<i8> {
    check_odd_modulus(n)?;
    let mut a = canonical(a, n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// `d^((p-1)/2) mod p` mapped to `{-1, 0, 1}`.
pub fn euler_criterion(d: i64, p: u64) -> Result<i8> {
    check_odd_modulus(p)?;
    let v = pow_mod(canonical(d, p), (p - 1) / 2, p);
    Ok(match v {
        0 => 0,
        1 => 1,
        v if v == p - 1 => -1,
        // p is not prime
        v => {
            return Err(Error::Domain(format!(
                "Euler's criterion produced {v} modulo {p}; modulus is not prime"
            )))
        }
    })
}

/// `sum_{t in F_p^x} t^k` in closed form: `-1` when `(p - 1) | k`, else `0`.
pub fn power_sum(k: i64, p: u64) -> Result<Residue> {
    check_odd_modulus(p)?;
    let value = if k.rem_euclid((p - 1) as i64) == 0 { p - 1 } else { 0 };
    Ok(Residue { value, modulus: p })
}

/// Deterministic primality by trial division. Intended for small `n`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Prime factorization `[(p, e)]` with `p` ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            let mut e = 0;
            while n % f == 0 {
                n /= f;
                e += 1;
            }
            out.push((f, e));
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `nu_p(n)` for `n >= 1`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL_PRIMES: [u64; 24] = [
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    ];

    #[test]
    fn mod_pow_examples() {
        for p in [2, 5, 7, 101] {
            for x in -3..10 {
                assert_eq!(mod_pow(x, 0, p).unwrap().value(), 1);
            }
        }
        assert_eq!(mod_pow(2, 3, 5).unwrap().value(), 3);
        assert_eq!(mod_pow(3, 4, 7).unwrap().value(), 4);
        assert_eq!(mod_pow(-2, 3, 5).unwrap().value(), 2);
        assert_eq!(mod_pow(0, 0, 5).unwrap().value(), 1);
        assert_eq!(mod_pow(0, 3, 5).unwrap().value(), 0);
    }

    #[test]
    fn mod_pow_matches_repeated_multiplication() {
        for m in 2..40u64 {
            for b in -5..20i64 {
                let mut acc = 1 % m;
                for e in 0..25 {
                    assert_eq!(mod_pow(b, e, m).unwrap().value(), acc, "{b}^{e} mod {m}");
                    acc = acc * canonical(b, m) % m;
                }
            }
        }
    }

    #[test]
    fn small_modulus_is_rejected() {
        assert!(matches!(mod_pow(3, 2, 1), Err(Error::Domain(_))));
        assert!(matches!(mod_pow(3, 2, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 7).unwrap().value(), 1);
        assert_eq!(mod_inverse(2, 5).unwrap().value(), 3);
        assert_eq!(mod_inverse(3, 7).unwrap().value(), 5);
        assert_eq!(mod_inverse(-1, 7).unwrap().value(), 6);
        assert_eq!(
            mod_inverse(14, 7),
            Err(Error::NotInvertible { value: 14, modulus: 7 })
        );
    }

    #[test]
    fn mod_inverse_all_units() {
        for &p in &SMALL_PRIMES {
            for a in 1..p {
                let b = mod_inverse(a as i64, p).unwrap().value();
                assert_eq!(a * b % p, 1);
                // exhaustive search agrees
                assert_eq!((1..p).find(|x| a * x % p == 1), Some(b));
            }
        }
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(2, 5).unwrap(), -1);
        assert_eq!(jacobi_symbol(2, 7).unwrap(), 1);
        assert_eq!(jacobi_symbol(6, 9).unwrap(), 0);
        assert_eq!(jacobi_symbol(10, 15).unwrap(), 0);
        assert_eq!(jacobi_symbol(0, 3).unwrap(), 0);
        assert_eq!(jacobi_symbol(-1, 5).unwrap(), 1);
        assert_eq!(jacobi_symbol(-1, 7).unwrap(), -1);
        // (2/15) = (2/3)(2/5) = (-1)(-1)
        assert_eq!(jacobi_symbol(2, 15).unwrap(), 1);
        assert!(matches!(jacobi_symbol(3, 8), Err(Error::Domain(_))));
        assert!(matches!(jacobi_symbol(3, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn jacobi_is_product_of_legendre_over_factors() {
        for n in (3..300u64).step_by(2) {
            for a in -20..60i64 {
                let expected: i8 = factorize(n)
                    .into_iter()
                    .map(|(p, e)| {
                        let leg = if p == 2 { unreachable!() } else { euler_criterion(a, p).unwrap() };
                        leg.pow(e)
                    })
                    .product();
                assert_eq!(jacobi_symbol(a, n).unwrap(), expected, "({a}/{n})");
            }
        }
    }

    #[test]
    fn euler_criterion_agrees_with_jacobi() {
        for &p in &SMALL_PRIMES {
            for d in 0..p as i64 {
                assert_eq!(euler_criterion(d, p).unwrap(), jacobi_symbol(d, p).unwrap());
            }
        }
        assert_eq!(euler_criterion(0, 11).unwrap(), 0);
        assert_eq!(euler_criterion(2, 5).unwrap(), -1);
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(1, 5).unwrap().value(), 0);
        assert_eq!(power_sum(0, 5).unwrap().value(), 4);
        assert_eq!(power_sum(4, 5).unwrap().value(), 4);
        assert_eq!(power_sum(-4, 5).unwrap().value(), 4);
    }

    #[test]
    fn power_sum_matches_brute_force() {
        for &p in SMALL_PRIMES.iter().take_while(|&&p| p <= 31) {
            for k in -2 * p as i64..=2 * p as i64 {
                let mut sum = 0;
                for t in 1..p {
                    let term = if k >= 0 {
                        pow_mod(t, k as u64, p)
                    } else {
                        pow_mod(inv_mod(t, p).unwrap(), k.unsigned_abs(), p)
                    };
                    sum = (sum + term) % p;
                }
                assert_eq!(power_sum(k, p).unwrap().value(), sum, "k={k} p={p}");
            }
        }
    }

    #[test]
    fn primality_and_factorization() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes.len(), 25);
        assert_eq!(primes[..5], [2, 3, 5, 7, 11]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(valuation(48, 2), 4);
        assert_eq!(valuation(48, 5), 0);
    }
}
