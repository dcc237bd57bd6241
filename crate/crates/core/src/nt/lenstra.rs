//! Finiteness of `P(g, f, a)`: the primes `p ≡ a (mod f)` having `g` as a
//! primitive root. Under GRH the set is finite exactly when one of Lenstra's
//! three conditions holds; this module evaluates those conditions literally.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{gcd, is_perfect_power, is_perfect_square};
use super::factor::factorize;
use super::kronecker::kronecker_symbol;
use crate::{Error, Result};

/// Which of Lenstra's conditions forced finiteness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum LenstraCondition {
    /// A prime `q | f` with `a ≡ 1 (mod q)` and `g` a perfect `q`-th power.
    Cond1 {
        #[serde(with = "crate::decimal")]
        q: BigUint,
    },
    /// `d | f` and `(d / a) = 1`.
    Cond2,
    /// `d | 3f`, `3 | d`, `(−d/3 / a) = −1` and `g` a perfect cube.
    Cond3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LenstraVerdict {
    pub finite: bool,
    pub triggered: Option<LenstraCondition>,
    #[serde(with = "crate::decimal_signed")]
    pub discriminant: BigInt,
    /// False when `gcd(a, f) > 1`, in which case the class holds at most one prime
    /// regardless of the three conditions.
    pub residue_class_coprime: bool,
}

/// Product of the distinct primes dividing `g` (its largest squarefree divisor).
pub fn squarefree_kernel(g: &BigUint) -> Result<BigUint> {
    if *g < BigUint::from(2u8) {
        return Err(Error::domain(format!("squarefree kernel needs g ≥ 2, got {g}")));
    }
    Ok(factorize(g)?.primes().product())
}

/// `g'` if `g' ≡ 1 (mod 4)`, else `4g'`, where `g'` is the squarefree kernel of `g`.
pub fn field_discriminant(g: &BigUint) -> Result<BigUint> {
    if *g < BigUint::from(2u8) {
        return Err(Error::domain(format!("discriminant needs g ≥ 2, got {g}")));
    }
    if is_perfect_square(g) {
        return Err(Error::domain(format!("{g} is a perfect square; Q(√g) = Q")));
    }
    let kernel = squarefree_kernel(g)?;
    if (&kernel % 4u8).is_one() {
        Ok(kernel)
    } else {
        Ok(kernel << 2)
    }
}

pub fn lenstra_finiteness(g: &BigUint, f: &BigUint, a: &BigUint) -> Result<LenstraVerdict> {
    if g.is_zero() || f.is_zero() || a.is_zero() {
        return Err(Error::domain("g, f and a must be positive"));
    }
    let d = field_discriminant(g)?;
    let d_signed = BigInt::from(d.clone());
    let residue_class_coprime = gcd(a, f).is_one();

    let mut triggered = None;
    for q in factorize(f)?.primes() {
        if (a % q).is_one() {
            let exponent = u32::try_from(q.clone()).unwrap_or(u32::MAX);
            // g ≥ 2 cannot be a q-th power once q exceeds its bit length.
            if u64::from(exponent) <= g.bits() && is_perfect_power(g, exponent) {
                triggered = Some(LenstraCondition::Cond1 { q: q.clone() });
                break;
            }
        }
    }
    if triggered.is_none() && (f % &d).is_zero() && kronecker_symbol(&d_signed, a) == 1 {
        triggered = Some(LenstraCondition::Cond2);
    }
    if triggered.is_none() {
        let three = BigUint::from(3u8);
        if ((f * 3u8) % &d).is_zero()
            && (&d % &three).is_zero()
            && kronecker_symbol(&-(&d_signed / BigInt::from(3)), a) == -1
            && is_perfect_power(g, 3)
        {
            triggered = Some(LenstraCondition::Cond3);
        }
    }
    Ok(LenstraVerdict {
        finite: triggered.is_some(),
        triggered,
        discriminant: d_signed,
        residue_class_coprime,
    })
}

/// `gcd(f, g) = 1`, `gcd(f, a − 1) = 1`, `g ≥ 2` and `g` not a perfect square.
pub fn corollary_hypotheses(g: &BigUint, f: &BigUint, a: &BigUint) -> bool {
    if *g < BigUint::from(2u8) || a.is_zero() || is_perfect_square(g) {
        return false;
    }
    gcd(f, g).is_one() && gcd(f, &(a - 1u8)).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(squarefree_kernel(&n(12)).unwrap(), n(6));
        assert_eq!(squarefree_kernel(&n(5)).unwrap(), n(5));
        assert_eq!(squarefree_kernel(&n(8)).unwrap(), n(2));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(field_discriminant(&n(5)).unwrap(), n(5));
        assert_eq!(field_discriminant(&n(2)).unwrap(), n(8));
        assert_eq!(field_discriminant(&n(12)).unwrap(), n(24));
        assert!(matches!(field_discriminant(&n(9)), Err(Error::Domain(_))));
    }

    #[test]
    fn lenstra_examples() {
        let v = lenstra_finiteness(&n(8), &n(3), &n(1)).unwrap();
        assert!(v.finite);
        assert_eq!(v.triggered, Some(LenstraCondition::Cond1 { q: n(3) }));

        let v = lenstra_finiteness(&n(5), &n(5), &n(4)).unwrap();
        assert!(v.finite);
        assert_eq!(v.triggered, Some(LenstraCondition::Cond2));

        let v = lenstra_finiteness(&n(2), &n(23), &n(13)).unwrap();
        assert!(!v.finite);
        assert_eq!(v.triggered, None);
        assert_eq!(v.discriminant.to_i64(), Some(8));
    }

    #[test]
    fn lenstra_third_condition() {
        // g = 216 = 6^3 has kernel 6 and d = 24. With f = 8, d | 3f and 3 | d,
        // and (−8 / 5) = −1.
        let v = lenstra_finiteness(&n(216), &n(8), &n(5)).unwrap();
        assert_eq!(v.discriminant.to_i64(), Some(24));
        assert_eq!(kronecker_symbol(&BigInt::from(-8), &n(5)), -1);
        assert_eq!(v.triggered, Some(LenstraCondition::Cond3));
    }

    #[test]
    fn square_g_is_rejected() {
        assert!(matches!(lenstra_finiteness(&n(4), &n(3), &n(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn non_coprime_class_is_flagged() {
        let v = lenstra_finiteness(&n(3), &n(4), &n(2)).unwrap();
        assert!(!v.residue_class_coprime);
    }

    #[test]
    fn corollary_examples() {
        assert!(corollary_hypotheses(&n(2), &n(23), &n(13)));
        assert!(!corollary_hypotheses(&n(4), &n(3), &n(2)));
        assert!(!corollary_hypotheses(&n(2), &n(6), &n(3)));
    }
}
