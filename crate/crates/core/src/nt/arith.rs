use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

/// `base^exp mod modulus` by windowed square-and-multiply.
pub fn mod_pow(base: &BigUint, exp: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    if *modulus < BigUint::from(2u8) {
        return Err(Error::domain(format!("modulus {modulus} must be at least 2")));
    }
    Ok(base.modpow(exp, modulus))
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// True when `n = m^k` for some natural `m`.
pub fn is_perfect_power(n: &BigUint, k: u32) -> bool {
    if k <= 1 || n.is_zero() || n.is_one() {
        return true;
    }
    let r = n.nth_root(k);
    num_traits::pow(r, k as usize) == *n
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_zero() {
        return None;
    }
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let a = BigInt::from_biguint(Sign::Plus, a % m);
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let egcd = a.extended_gcd(&m_int);
    if !egcd.gcd.is_one() {
        return None;
    }
    egcd.x.mod_floor(&m_int).to_biguint()
}
