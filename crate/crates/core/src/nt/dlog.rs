//! Baby-step giant-step discrete logarithms in `(Z/pZ)*`.
//!
//! `h = g^(i·m + j)` with `m = ⌈√(p−1)⌉`: the table stores `g^j` for
//! `0 ≤ j < m`, and the giant steps walk `h·g^(−m·i)` until they land in it.
//! Moduli below 2^32 use machine arithmetic; larger ones use big integers.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::limits::Limits;
use crate::{Error, Result};

enum Table {
    Small {
        p: u64,
        baby: HashMap<u64, u64>,
        giant: u64,
    },
    Big {
        p: BigUint,
        baby: HashMap<BigUint, u64>,
        giant: BigUint,
    },
}

/// Precomputed baby steps for repeated logarithms to one base.
pub struct DlogTable {
    g: BigUint,
    p: BigUint,
    m: u64,
    table: Table,
}

const SMALL_ENTRY_BYTES: u64 = 32;

impl DlogTable {
    /// Builds the table for base `g` modulo the prime `p`.
    ///
    /// `g` is expected to be a primitive root; this is not re-checked here.
    /// Returns a resource error when the table would exceed `mem_budget` bytes.
    pub fn new(g: &BigUint, p: &BigUint, mem_budget: u64) -> Result<Self> {
        if *p < BigUint::from(2u8) {
            return Err(Error::domain(format!("modulus {p} must be prime")));
        }
        let g_red = g % p;
        if g_red.is_zero() {
            return Err(Error::domain(format!("base {g} vanishes modulo {p}")));
        }
        let order = p - 1u8;
        let mut m_big = order.sqrt();
        if &m_big * &m_big < order {
            m_big += 1u8;
        }
        let m_big = m_big.max(BigUint::one());
        let entry_bytes = SMALL_ENTRY_BYTES + 2 * p.bits().div_ceil(8);
        let m = m_big
            .to_u64()
            .filter(|m| m.saturating_mul(entry_bytes) <= mem_budget)
            .ok_or_else(|| {
                Error::resource(format!(
                    "baby-step table for a {}-bit modulus exceeds the {mem_budget} byte budget",
                    p.bits()
                ))
            })?;
        // g^(−m) = g^(p − 1 − m).
        let giant_exp = &order - (&m_big % &order);
        let table = match (p.to_u64(), g_red.to_u64()) {
            (Some(ps), Some(gs)) if ps < 1 << 32 => {
                let mut baby = HashMap::with_capacity(m as usize);
                let mut e = 1u64;
                for j in 0..m {
                    baby.entry(e).or_insert(j);
                    e = e * gs % ps;
                }
                let giant = g_red.modpow(&giant_exp, p).to_u64().expect("reduced below p");
                Table::Small { p: ps, baby, giant }
            }
            _ => {
                let mut baby = HashMap::with_capacity(m as usize);
                let mut e = BigUint::one();
                for j in 0..m {
                    let next = &e * &g_red % p;
                    baby.entry(e).or_insert(j);
                    e = next;
                }
                let giant = g_red.modpow(&giant_exp, p);
                Table::Big {
                    p: p.clone(),
                    baby,
                    giant,
                }
            }
        };
        Ok(DlogTable {
            g: g_red,
            p: p.clone(),
            m,
            table,
        })
    }

    /// The unique `k` in `[0, p − 2]` with `g^k ≡ h (mod p)`, checked by exponentiation.
    pub fn log(&self, h: &BigUint) -> Result<BigUint> {
        let h_red = h % &self.p;
        if h_red.is_zero() {
            return Err(Error::domain(format!("{h} is divisible by {}", self.p)));
        }
        let found = match &self.table {
            Table::Small { p, baby, giant } => {
                let mut e = h_red.to_u64().expect("reduced below p");
                let mut hit = None;
                for i in 0..self.m {
                    if let Some(&j) = baby.get(&e) {
                        hit = Some(BigUint::from(i) * self.m + j);
                        break;
                    }
                    e = e * giant % p;
                }
                hit
            }
            Table::Big { p, baby, giant } => {
                let mut e = h_red.clone();
                let mut hit = None;
                for i in 0..self.m {
                    if let Some(&j) = baby.get(&e) {
                        hit = Some(BigUint::from(i) * self.m + j);
                        break;
                    }
                    e = &e * giant % p;
                }
                hit
            }
        };
        let order = &self.p - 1u8;
        let k = found
            .map(|k| if order.is_zero() { k } else { k % &order })
            .ok_or_else(|| Error::domain(format!("{h} is not a power of {} modulo {}", self.g, self.p)))?;
        if self.g.modpow(&k, &self.p) != h_red {
            return Err(Error::domain(format!("logarithm check failed for {h} modulo {}", self.p)));
        }
        Ok(k)
    }
}

/// `log_g h` modulo the prime `p`, with the default memory budget.
pub fn discrete_log(g: &BigUint, h: &BigUint, p: &BigUint) -> Result<BigUint> {
    discrete_log_with(g, h, p, &Limits::default())
}

pub fn discrete_log_with(g: &BigUint, h: &BigUint, p: &BigUint, limits: &Limits) -> Result<BigUint> {
    if (h % p).is_zero() {
        return Err(Error::domain(format!("{h} is divisible by {p}")));
    }
    DlogTable::new(g, p, limits.mem_budget)?.log(h)
}

/// Least `k' ≡ k (mod p − 1)` with `k' ≥ 1` and `g^k' > bound`.
pub fn lift_exponent(g: &BigUint, p: &BigUint, k: &BigUint, bound: &BigUint) -> Result<BigUint> {
    if *g < BigUint::from(2u8) {
        return Err(Error::domain("lift base must be at least 2"));
    }
    if *p < BigUint::from(2u8) {
        return Err(Error::domain(format!("modulus {p} must be prime")));
    }
    let period = p - 1u8;
    let threshold = min_exponent_exceeding(g, bound).max(BigUint::one());
    if period.is_zero() {
        return Ok(threshold);
    }
    // threshold + ((k − threshold) mod period)
    let k_red = k % &period;
    let t_red = &threshold % &period;
    let offset = (k_red + &period - t_red) % &period;
    Ok(threshold + offset)
}

/// Smallest `e` with `g^e > bound`.
fn min_exponent_exceeding(g: &BigUint, bound: &BigUint) -> BigUint {
    if bound.is_zero() {
        return BigUint::zero();
    }
    // Start from a floating estimate known to undershoot, then step up exactly.
    let log_bound = bit_log2(bound);
    let log_g = bit_log2(g);
    let mut e = ((log_bound / log_g).floor() as u64).saturating_sub(1);
    let mut power = num_traits::pow(g.clone(), e as usize);
    while power > *bound && e > 0 {
        e -= 1;
        power /= g;
    }
    while power <= *bound {
        power *= g;
        e += 1;
    }
    BigUint::from(e)
}

fn bit_log2(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().unwrap_or(1.0).log2();
    }
    let shift = bits - 53;
    (n >> shift).to_f64().unwrap_or(1.0).log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(discrete_log(&n(2), &n(3), &n(11)).unwrap(), n(8));
        assert_eq!(discrete_log(&n(2), &n(23), &n(59)).unwrap(), n(15));
        assert_eq!(discrete_log(&n(2), &n(1), &n(11)).unwrap(), n(0));
    }

    #[test]
    fn zero_target_is_a_domain_error() {
        assert!(matches!(discrete_log(&n(2), &n(0), &n(11)), Err(Error::Domain(_))));
        assert!(matches!(discrete_log(&n(2), &n(22), &n(11)), Err(Error::Domain(_))));
    }

    #[test]
    fn big_path_matches_small_path() {
        // A 61-bit modulus needs a 2^30.5-entry table: over the default budget.
        let p = (BigUint::one() << 61) - 1u8;
        let g = n(37);
        let h = g.modpow(&n(123_456_789), &p);
        assert!(discrete_log_with(&g, &h, &p, &Limits::default())
            .unwrap_err()
            .is_resource());

        let p = n(1_000_003);
        let g = n(2);
        for k in [0u64, 1, 17, 999_999, 500_000] {
            let h = g.modpow(&n(k), &p);
            assert_eq!(discrete_log(&g, &h, &p).unwrap(), n(k));
        }
    }

    #[test]
    fn big_table_above_two_to_the_32() {
        // 4294967311 is the least prime above 2^32; 3 is a primitive root.
        let p = n(4_294_967_311);
        let g = n(3);
        assert!(super::super::is_primitive_root(&g, &p).unwrap());
        let k = n(3_000_000_001);
        let h = g.modpow(&k, &p);
        assert_eq!(discrete_log(&g, &h, &p).unwrap(), k);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_exponent(&n(2), &n(59), &n(15), &n(118)).unwrap(), n(15));
        assert_eq!(lift_exponent(&n(2), &n(11), &n(8), &n(1000)).unwrap(), n(18));
        assert_eq!(lift_exponent(&n(2), &n(11), &n(0), &n(1)).unwrap(), n(10));
        assert_eq!(lift_exponent(&n(3), &n(7), &n(5), &n(14)).unwrap(), n(5));
    }

    #[test]
    fn min_exponent_is_exact() {
        for g in 2u64..12 {
            for bound in 0u64..5000 {
                let e = min_exponent_exceeding(&n(g), &n(bound)).to_u32().unwrap();
                assert!(g.pow(e) > bound);
                assert!(e == 0 || g.pow(e - 1) <= bound);
            }
        }
        let huge = BigUint::one() << 10_000u32;
        assert_eq!(min_exponent_exceeding(&n(2), &huge), n(10_001));
    }
}
