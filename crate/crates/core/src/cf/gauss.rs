//! `μ([lo, hi]) = log₂((1 + hi)/(1 + lo))` in binary fixed point.

use std::cell::RefCell;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CylinderInterval, Rational};
use crate::{Error, Result};

pub const DEFAULT_FRACTION_BITS: u32 = 64;
const GUARD_BITS: u32 = 32;

/// `value / 2^frac_bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedReal {
    pub value: BigInt,
    pub frac_bits: u32,
}

impl FixedReal {
    pub fn zero(frac_bits: u32) -> Self {
        FixedReal {
            value: BigInt::zero(),
            frac_bits,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.value.bits();
        // Keep 64 significant bits before the lossy conversion.
        let shift = bits.saturating_sub(64);
        let top = (&self.value >> shift).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - self.frac_bits as i32)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.value.clone(), BigInt::one() << self.frac_bits)
    }

    pub fn add(&self, other: &FixedReal) -> FixedReal {
        assert_eq!(self.frac_bits, other.frac_bits, "mismatched precision");
        FixedReal {
            value: &self.value + &other.value,
            frac_bits: self.frac_bits,
        }
    }
}

impl fmt::Display for FixedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// Gauss measure of a cylinder at the default precision.
pub fn gauss_measure(iv: &CylinderInterval) -> Result<FixedReal> {
    gauss_measure_with(&iv.lo, &iv.hi, DEFAULT_FRACTION_BITS)
}

pub fn gauss_measure_with(lo: &Rational, hi: &Rational, frac_bits: u32) -> Result<FixedReal> {
    if lo.is_negative() || hi > &Rational::one() || lo >= hi {
        return Err(Error::domain(format!("[{lo}, {hi}] is not a subinterval of [0, 1]")));
    }
    // (1 + hi)/(1 + lo) = num/den with num > den > 0.
    let num = (hi.numer() + hi.denom()) * lo.denom();
    let den = (lo.numer() + lo.denom()) * hi.denom();
    let num = num.magnitude().clone();
    let den = den.magnitude().clone();
    let prec = frac_bits + GUARD_BITS;
    let value = log2_fixed(&num, &den, prec) >> GUARD_BITS;
    Ok(FixedReal { value, frac_bits })
}

/// `log₂(num/den)` for `num ≥ den`, scaled by `2^prec` and truncated.
pub(crate) fn log2_fixed(num: &BigUint, den: &BigUint, prec: u32) -> BigInt {
    let mut e = num.bits() - den.bits();
    if (den << e) > *num {
        e -= 1;
    }
    // num/den = 2^e · m with m ∈ [1, 2); ln m = 2 atanh((m − 1)/(m + 1)).
    let scaled = den << e;
    let ln_m: BigUint = atanh_fixed(&(num - &scaled), &(num + &scaled), prec) << 1u32;
    let frac = (BigInt::from(ln_m) << prec) / BigInt::from(ln2_fixed(prec));
    (BigInt::from(e) << prec) + frac
}

/// `atanh(a/b)` for `0 ≤ a/b ≤ 1/3`, scaled by `2^prec`.
fn atanh_fixed(a: &BigUint, b: &BigUint, prec: u32) -> BigUint {
    if a.is_zero() {
        return BigUint::zero();
    }
    // Work with a reduced ratio so the series terms stay small.
    let g = a.gcd(b);
    let (a, b) = (a / &g, b / &g);
    let a2 = &a * &a;
    let b2 = &b * &b;
    let mut power = (BigUint::one() << prec) * &a / &b;
    let mut sum = BigUint::zero();
    let mut k = 1u32;
    while !power.is_zero() {
        sum += &power / k;
        power = power * &a2 / &b2;
        k += 2;
    }
    sum
}

thread_local! {
    static LN2: RefCell<Option<(u32, BigUint)>> = const { RefCell::new(None) };
}

fn ln2_fixed(prec: u32) -> BigUint {
    LN2.with(|cell| {
        let mut cache = cell.borrow_mut();
        if let Some((p, v)) = cache.as_ref() {
            if *p == prec {
                return v.clone();
            }
        }
        let v: BigUint = atanh_fixed(&BigUint::one(), &BigUint::from(3u8), prec) << 1u32;
        *cache = Some((prec, v.clone()));
        v
    })
}
