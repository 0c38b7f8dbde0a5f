//! Exact integer helpers: primality, modular powers, binomial coefficients.
//!
//! Everything here is deterministic and overflow-checked; the generalized
//! binomial coefficient (negative upper argument via falling factorials) is
//! the backbone of every closed-form coefficient formula in the crate.

use num_bigint::BigUint;
use num_traits::{One, Zero};

// ---- Primality ----

/// Deterministic primality test by trial division (adequate for the word-size
/// inputs this crate handles: field moduli, trial-division cofactors).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d: u64 = 3;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---- Modular arithmetic ----

/// `base^exp mod modulus` by square-and-multiply, all in u128 intermediates.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus > 1, "modulus must exceed 1");
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b: u128 = (base as u128) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

// ---- Binomial coefficients ----

/// Exact binomial coefficient `C(n, k)` as an arbitrary-precision integer.
pub fn binom_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc = acc * BigUint::from(n - k + j) / BigUint::from(j);
    }
    acc
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n`, defined by
/// the falling factorial `n (n-1) ... (n-k+1) / k!`.
///
/// For `n >= 0` this is the usual binomial coefficient (zero when `k > n`);
/// for `n < 0` it equals `(-1)^k C(-n+k-1, k)`.
///
/// Panics if the exact value does not fit in `i64` (the crate only evaluates
/// it at desk-scale arguments).
pub fn binom_gen(n: i64, k: u32) -> i64 {
    let k64 = k as i64;
    if n >= 0 {
        if k64 > n {
            return 0;
        }
        let mut acc: i128 = 1;
        let k64 = k64.min(n - k64);
        for j in 1..=k64 {
            acc = acc
                .checked_mul((n - k64 + j) as i128)
                .expect("binomial overflow")
                / j as i128;
        }
        i64::try_from(acc).expect("binomial exceeds i64")
    } else {
        let flipped = binom_gen(-n + k64 - 1, k);
        if k % 2 == 0 {
            flipped
        } else {
            -flipped
        }
    }
}
