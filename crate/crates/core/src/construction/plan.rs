use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::limits::Limits;
use crate::nt::{
    coprimizing_multiplier, discrete_log_with, find_artin_prime_with, gcd, is_perfect_square, lift_exponent,
};
use crate::{Error, Result};

/// How large the fourth inserted digit is made.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMode {
    /// `b^{k²} + 1`, enough for the digit-agreement argument.
    Paper,
    /// `b^{⌈c·k⌉} + 1` with `c = num/den`.
    Relaxed { num: u64, den: u64 },
    /// The constant 2.
    Toy,
}

impl TailMode {
    pub fn is_paper(&self) -> bool {
        matches!(self, TailMode::Paper)
    }
}

impl fmt::Display for TailMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailMode::Paper => write!(f, "paper"),
            TailMode::Toy => write!(f, "toy"),
            TailMode::Relaxed { num, den: 1 } => write!(f, "relaxed:{num}"),
            TailMode::Relaxed { num, den } => write!(f, "relaxed:{num}/{den}"),
        }
    }
}

impl FromStr for TailMode {
    type Err = Error;

    /// `paper`, `toy`, or `relaxed:<c>` with `c` a positive decimal or fraction.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper" => return Ok(TailMode::Paper),
            "toy" => return Ok(TailMode::Toy),
            _ => {}
        }
        let c = s
            .trim()
            .strip_prefix("relaxed:")
            .ok_or_else(|| Error::domain(format!("unknown mode `{s}` (expected paper, relaxed:<c> or toy)")))?;
        let bad = || Error::domain(format!("tail exponent `{c}` must be a positive rational"));
        let (num, den) = if let Some((n, d)) = c.split_once('/') {
            (n.parse::<u64>().map_err(|_| bad())?, d.parse::<u64>().map_err(|_| bad())?)
        } else if let Some((int, frac)) = c.split_once('.') {
            let scale = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            (int.checked_mul(scale).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?, scale)
        } else {
            (c.parse::<u64>().map_err(|_| bad())?, 1)
        };
        if num == 0 || den == 0 {
            return Err(bad());
        }
        let g = num.gcd(&den);
        Ok(TailMode::Relaxed { num: num / g, den: den / g })
    }
}

impl serde::Serialize for TailMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for TailMode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The three patch digits and the convergent denominators they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPlan {
    pub ell1: BigUint,
    pub ell2: BigUint,
    pub ell3: BigUint,
    pub k: BigUint,
    pub q1: BigUint,
    pub q2: BigUint,
    pub q3: BigUint,
    /// Candidates examined by the Artin prime search.
    pub artin_tested: u64,
}

/// Chooses `ℓ₁, ℓ₂, ℓ₃` so that, after a block ending in denominators
/// `q_prev, q_cur`, the third new denominator is an exact power of `b`.
///
/// 1. `ℓ₁` makes `q₁ = ℓ₁ q_cur + q_prev` coprime to `b` and to `q_cur − 1`.
/// 2. `q₂ = ℓ₂ q₁ + q_cur` is the least prime in that progression with `b` as
///    a primitive root.
/// 3. `b` generates `(Z/q₂)*`, so some `b^k ≡ q₁ (mod q₂)` with `b^k > 2q₂`,
///    and `ℓ₃ = (b^k − q₁)/q₂` makes `q₃ = b^k`.
pub fn plan_block(q_prev: &BigUint, q_cur: &BigUint, b: &BigUint, limits: &Limits) -> Result<BlockPlan> {
    if *b < BigUint::from(2u8) || is_perfect_square(b) {
        return Err(Error::domain(format!("base {b} must be at least 2 and not a perfect square")));
    }
    if *q_cur < BigUint::from(2u8) {
        return Err(Error::domain(format!("q_n = {q_cur} must be at least 2")));
    }
    if !gcd(q_prev, q_cur).is_one() {
        return Err(Error::domain(format!("{q_prev} and {q_cur} are not coprime")));
    }

    let avoid = b * (q_cur - 1u8);
    let ell1 = coprimizing_multiplier(q_cur, q_prev, &avoid, &limits.factor, &limits.primality)?;
    let q1 = &ell1 * q_cur + q_prev;

    // Any prime found below will exceed q1, so its baby-step table needs at least
    // √q1 entries. Refuse before a long search that could not be finished.
    let entry_bytes = 32 + 2 * q1.bits().div_ceil(8);
    let min_entries = q1.sqrt();
    if min_entries * entry_bytes > BigUint::from(limits.mem_budget) {
        return Err(Error::resource(format!(
            "a discrete logarithm modulo a prime above the {}-bit q_(n+1) needs a baby-step table over the {} byte budget",
            q1.bits(),
            limits.mem_budget
        )));
    }
    let hit = find_artin_prime_with(b, &q1, &(q_cur % &q1), limits)?;
    let q2 = hit.prime;

    let k0 = discrete_log_with(b, &(&q1 % &q2), &q2, limits)?;
    let k = lift_exponent(b, &q2, &k0, &(&q2 << 1u32))?;
    let k_small = k
        .to_u64()
        .ok_or_else(|| Error::resource(format!("exponent {k} does not fit a machine word")))?;
    limits.check_bits(power_bits(b, k_small), "q_(n+3) = b^k")?;
    let q3 = num_traits::pow(b.clone(), k_small as usize);
    let (ell3, rem) = (&q3 - &q1).div_rem(&q2);
    if !rem.is_zero() {
        return Err(Error::Infeasible(format!(
            "b^k − q_(n+1) leaves remainder {rem} modulo {q2}; the discrete logarithm is wrong"
        )));
    }
    debug_assert_eq!(&ell3 * &q2 + &q1, q3);
    if exact_power_exponent(&q3, b) != Some(k_small) {
        return Err(Error::Infeasible(format!("q_(n+3) is not {b}^{k}")));
    }
    Ok(BlockPlan {
        ell1,
        ell2: hit.ell,
        ell3,
        k,
        q1,
        q2,
        q3,
        artin_tested: hit.tested,
    })
}

/// Upper estimate of the bit length of `b^e`.
pub(crate) fn power_bits(b: &BigUint, e: u64) -> u64 {
    let log_b = if b.bits() <= 53 {
        b.to_f64().unwrap_or(2.0).log2()
    } else {
        b.bits() as f64
    };
    (e as f64 * log_b).ceil() as u64 + 1
}

/// `e` with `b^e = n`, found by dividing out `b` until a non-multiple remains.
pub fn exact_power_exponent(n: &BigUint, b: &BigUint) -> Option<u64> {
    if n.is_zero() || *b < BigUint::from(2u8) {
        return None;
    }
    if b.count_ones() == 1 {
        // b = 2^s: strip whole chunks of zero bits.
        let s = b.trailing_zeros()?;
        let tz = n.trailing_zeros().unwrap_or(0);
        return ((n >> tz).is_one() && tz % s == 0).then_some(tz / s);
    }
    let mut e = 0;
    let mut rest = n.clone();
    // Divide by b^(2^j) blocks to keep the number of big divisions logarithmic.
    let mut powers = vec![b.clone()];
    while powers.last().map_or(false, |p| p.bits() * 2 <= n.bits() + 1) {
        let last = powers.last().unwrap();
        powers.push(last * last);
    }
    for (j, p) in powers.iter().enumerate().rev() {
        loop {
            let (q, r) = rest.div_rem(p);
            if !r.is_zero() || q.is_zero() {
                break;
            }
            rest = q;
            e += 1u64 << j;
        }
    }
    rest.is_one().then_some(e)
}

/// `k_i`: the exponent `k` with `q₃ = b^k`, bounding the digit count of `p/b^k`.
pub fn digit_count_bound(q3: &BigUint, b: &BigUint) -> Result<u64> {
    exact_power_exponent(q3, b).ok_or_else(|| Error::domain(format!("{q3} is not a power of {b}")))
}

/// The fourth inserted digit for a block with exponent `k_i`.
pub fn tail_digit(k_i: u64, b: &BigUint, mode: TailMode, limits: &Limits) -> Result<BigUint> {
    if k_i == 0 {
        return Err(Error::domain("digit bound must be at least 1"));
    }
    let exponent = match mode {
        TailMode::Toy => return Ok(BigUint::from(2u8)),
        TailMode::Paper => k_i
            .checked_mul(k_i)
            .ok_or_else(|| Error::resource(format!("k² overflows for k = {k_i}")))?,
        TailMode::Relaxed { num, den } => {
            let p = u128::from(num) * u128::from(k_i);
            u64::try_from(p.div_ceil(u128::from(den)))
                .map_err(|_| Error::resource("relaxed tail exponent overflows"))?
        }
    };
    limits.check_bits(power_bits(b, exponent), "the tail digit").map_err(|e| match (e, mode) {
        (Error::Resource(msg), TailMode::Paper) => Error::Resource(format!("{msg}; relaxed mode keeps it smaller")),
        (e, _) => e,
    })?;
    Ok(num_traits::pow(b.clone(), exponent as usize) + 1u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn worked_block() {
        let plan = plan_block(&n(10), &n(13), &n(2), &Limits::default()).unwrap();
        assert_eq!(plan.ell1, n(1));
        assert_eq!(plan.q1, n(23));
        assert_eq!(plan.ell2, n(2));
        assert_eq!(plan.q2, n(59));
        assert_eq!(plan.k, n(15));
        assert_eq!(plan.ell3, n(555));
        assert_eq!(plan.q3, n(32768));
    }

    #[test]
    fn base_three_block() {
        let plan = plan_block(&n(1), &n(2), &n(3), &Limits::default()).unwrap();
        assert_eq!((plan.ell1, plan.q1), (n(2), n(5)));
        assert_eq!(plan.q2, n(7));
        assert_eq!(plan.k, n(5));
        assert_eq!(plan.ell3, n(34));
        assert_eq!(plan.q3, n(243));
    }

    #[test]
    fn square_base_is_rejected() {
        assert!(matches!(plan_block(&n(10), &n(13), &n(4), &Limits::default()), Err(Error::Domain(_))));
        assert!(matches!(plan_block(&n(10), &n(13), &n(9), &Limits::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn digit_bound_examples() {
        assert_eq!(digit_count_bound(&n(32768), &n(2)).unwrap(), 15);
        assert_eq!(digit_count_bound(&n(243), &n(3)).unwrap(), 5);
        assert_eq!(digit_count_bound(&n(2), &n(2)).unwrap(), 1);
        assert!(digit_count_bound(&n(244), &n(3)).is_err());
        assert!(digit_count_bound(&n(48), &n(2)).is_err());
        assert_eq!(exact_power_exponent(&num_traits::pow(n(6), 1000), &n(6)), Some(1000));
        assert_eq!(exact_power_exponent(&num_traits::pow(n(8), 7), &n(8)), Some(7));
        assert_eq!(exact_power_exponent(&n(4), &n(8)), None);
    }

    #[test]
    fn tail_examples() {
        let l = Limits::default();
        assert_eq!(tail_digit(3, &n(2), TailMode::Paper, &l).unwrap(), n(513));
        assert_eq!(tail_digit(15, &n(2), TailMode::Paper, &l).unwrap(), (n(1) << 225u32) + 1u8);
        assert_eq!(tail_digit(15, &n(2), TailMode::Toy, &l).unwrap(), n(2));
        let relaxed: TailMode = "relaxed:1.5".parse().unwrap();
        assert_eq!(relaxed, TailMode::Relaxed { num: 3, den: 2 });
        assert_eq!(tail_digit(3, &n(2), relaxed, &l).unwrap(), n(33));
        let tight = Limits { mem_budget: 16, ..l };
        assert!(tail_digit(15, &n(2), TailMode::Paper, &tight).unwrap_err().is_resource());
    }

    #[test]
    fn mode_round_trip() {
        for s in ["paper", "toy", "relaxed:2", "relaxed:3/2"] {
            assert_eq!(s.parse::<TailMode>().unwrap().to_string(), s);
        }
        for bad in ["relaxed:0", "relaxed:-1", "relaxed:x", "exact"] {
            assert!(bad.parse::<TailMode>().is_err(), "{bad}");
        }
    }
}
