//! Primality testing.
//!
//! Below 2^64 the answer is exact: Miller-Rabin with the first twelve prime
//! bases has no pseudoprimes in that range. Above it we run a Baillie-PSW
//! combination (strong base-2 test plus strong Lucas test with Selfridge
//! parameters) followed by extra Miller-Rabin rounds on pseudo-random bases.
//! A "composite" answer is always correct.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use super::arith::is_perfect_square;
use super::factor::small_primes;
use super::kronecker::jacobi_symbol;

const U64_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// How much work to spend on candidates beyond the deterministic range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityPolicy {
    /// Miller-Rabin rounds with pseudo-random bases after Baillie-PSW.
    pub random_rounds: u32,
    /// Seed for the base generator, so verdicts are reproducible.
    pub seed: u64,
}

impl Default for PrimalityPolicy {
    fn default() -> Self {
        PrimalityPolicy {
            random_rounds: 32,
            seed: 0x5eed_ba5e,
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for machine-sized integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &U64_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &U64_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality under `policy`; exact for `n < 2^64`.
pub fn is_prime(n: &BigUint, policy: &PrimalityPolicy) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for &p in small_primes().iter().take(168) {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !strong_probable_prime(n, &BigUint::from(2u8)) || !strong_lucas_probable_prime(n) {
        return false;
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(policy.seed);
    let span = n - 3u8;
    for _ in 0..policy.random_rounds {
        let base = random_below(&mut rng, &span) + 2u8;
        if !strong_probable_prime(n, &base) {
            return false;
        }
    }
    true
}

fn random_below(rng: &mut Xoshiro256PlusPlus, bound: &BigUint) -> BigUint {
    let words = bound.bits().div_ceil(32) as usize + 2;
    let raw: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
    BigUint::from_slice(&raw) % bound
}

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let n_minus_one = n - 1u8;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

/// Reduces a signed value into `[0, n)`.
fn residue(v: &BigInt, n: &BigUint) -> BigUint {
    let n_int = BigInt::from(n.clone());
    v.mod_floor(&n_int)
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative")
}

fn half_mod(v: BigUint, n: &BigUint) -> BigUint {
    if v.is_even() {
        v >> 1
    } else {
        (v + n) >> 1
    }
}

/// Strong Lucas probable-prime test with Selfridge's method A (P = 1).
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    if is_perfect_square(n) {
        return false;
    }
    let mut d_val: i64 = 5;
    loop {
        let j = jacobi_symbol(&BigInt::from(d_val), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigUint::from(d_val.unsigned_abs()) != *n {
            return false;
        }
        d_val = if d_val > 0 { -(d_val + 2) } else { -d_val + 2 };
    }
    let d = residue(&BigInt::from(d_val), n);
    let q_signed = BigInt::from((1 - d_val) / 4);
    let q = residue(&q_signed, n);

    let n_plus_one = n + 1u8;
    let s = n_plus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_plus_one >> s;

    // U_1 = 1, V_1 = P = 1, Q^1 = Q.
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = q.clone();
    let two_n = n << 1;
    for bit in (0..odd.bits() - 1).rev() {
        u = (&u * &v) % n;
        v = (&v * &v + &two_n - ((&qk << 1) % n)) % n;
        qk = (&qk * &qk) % n;
        if odd.bit(bit) {
            let next_u = half_mod((&u + &v) % n, n);
            let next_v = half_mod((&d * &u + &v) % n, n);
            u = next_u;
            v = next_v;
            qk = (&qk * &q) % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v + &two_n - ((&qk << 1) % n)) % n;
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk) % n;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn spec_examples() {
        let policy = PrimalityPolicy::default();
        assert!(is_prime(&BigUint::from(59u8), &policy));
        assert!(!is_prime(&BigUint::from(1u8), &policy));
        assert!(!is_prime(&BigUint::from(36u8), &policy));
    }

    #[test]
    fn agrees_with_trial_division_below_ten_thousand() {
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_to_base_two_are_rejected() {
        for n in [2047u64, 3277, 4033, 4681, 8321, 3_215_031_751, 3_825_123_056_546_413_051] {
            assert!(!is_prime_u64(n), "n = {n}");
        }
    }

    #[test]
    fn lucas_accepts_known_primes_and_rejects_lucas_pseudoprimes() {
        for p in [101u64, 7919, 1_000_000_007] {
            assert!(strong_lucas_probable_prime(&BigUint::from(p)), "p = {p}");
        }
        // The first strong Lucas pseudoprimes pass the Lucas half alone but
        // fail the base-2 half.
        for c in [5459u64, 5777, 10877, 16109, 18971] {
            let c_big = BigUint::from(c);
            assert!(strong_lucas_probable_prime(&c_big), "c = {c}");
            assert!(!strong_probable_prime(&c_big, &BigUint::from(2u8)), "c = {c}");
            assert!(!is_prime_u64(c));
        }
        for c in [15u64, 21, 25, 1001] {
            assert!(!strong_lucas_probable_prime(&BigUint::from(c)), "c = {c}");
        }
    }

    #[test]
    fn large_values() {
        let policy = PrimalityPolicy::default();
        let m127 = (BigUint::one() << 127) - 1u8;
        assert!(is_prime(&m127, &policy));
        let m128 = (BigUint::one() << 128) - 1u8;
        assert!(!is_prime(&m128, &policy));
        // 2^89 - 1 squared is a perfect square above 2^64.
        let m89 = (BigUint::one() << 89) - 1u8;
        assert!(is_prime(&m89, &policy));
        assert!(!is_prime(&(&m89 * &m89), &policy));
        // Product of two 40-bit primes.
        let p = BigUint::from(1_099_511_627_791u64);
        let q = BigUint::from(1_099_511_627_803u64);
        assert!(is_prime(&p, &policy) && is_prime(&q, &policy));
        assert!(!is_prime(&(&p * &q), &policy));
    }
}
