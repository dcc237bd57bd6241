//! Builds `y = ⟨X_1, ℓ_1, ℓ_2, ℓ_3, ℓ_4, X_2, ℓ_5, …⟩` from a seed expansion.
//!
//! `X_1` is the first `N` seed digits and `X_i` the next `2^{i−2}N`, so
//! `X_i` ends at index `n_i = 2^{i−1}N + 4(i − 1)` of `y`. After each block
//! the three patch digits make `q_{n_i+3}` a power of the scheduled base
//! `b_i`, and the tail digit `ℓ_{4i}` pushes `y` so close to the convergent
//! `r_i = p_{n_i+3}/b_i^k` that their base-`b_i` expansions agree for about
//! `k²` places. Since `r_i` ends in repeated `b_i − 1`, `y` carries longer and
//! longer runs of that digit in every base.

mod certificate;
mod plan;
mod schedule;
mod verify;

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cf::{CfDigits, ConvergentState};
use crate::limits::Limits;
use crate::seed::SeedSource;
use crate::{Error, Result};

pub use certificate::{BlockCertificate, CertificateFile, RunHeader, CERTIFICATE_FORMAT, FORMAT_VERSION};
pub use plan::{digit_count_bound, exact_power_exponent, plan_block, tail_digit, BlockPlan, TailMode};
pub use schedule::{
    base_schedule, block_boundary, insertion_density, insertion_positions, nth_non_square, seed_block, seed_range,
    InsertionDensity,
};
pub use verify::{
    verify_certificate, verify_run, BlockReport, Check, CheckStatus, DigitEvidence, VerificationReport, VerifyOptions,
    DEFAULT_SAMPLE_WINDOW,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionConfig {
    /// `N`, the even length of the first block.
    pub block_size: u64,
    pub blocks: u64,
    pub mode: TailMode,
    /// Added to every tail digit; each value gives a different `y`.
    #[serde(with = "crate::decimal")]
    pub tail_offset: BigUint,
    /// Seed digits appended after the last block.
    pub extra_seed_digits: u64,
    pub limits: Limits,
}

impl ConstructionConfig {
    pub fn new(block_size: u64, blocks: u64, mode: TailMode) -> Self {
        ConstructionConfig {
            block_size,
            blocks,
            mode,
            tail_offset: BigUint::zero(),
            extra_seed_digits: 0,
            limits: Limits::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_size < 2 || self.block_size % 2 != 0 {
            return Err(Error::domain(format!(
                "block size must be even and at least 2, got {}",
                self.block_size
            )));
        }
        if self.blocks > 40 {
            return Err(Error::domain(format!("{} blocks would need over 2^40 seed digits", self.blocks)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructedNumber {
    /// The partial quotients of `y`.
    pub digits: CfDigits,
    pub certificates: Vec<BlockCertificate>,
    /// 1-based indices of the inserted digits.
    pub insertion_positions: Vec<u64>,
}

impl ConstructedNumber {
    /// `y` with the inserted digits removed, which is the seed prefix that was consumed.
    pub fn seed_digits(&self) -> Vec<BigUint> {
        let mut inserted = self.insertion_positions.iter().peekable();
        let mut out = Vec::with_capacity(self.digits.len());
        for (idx, d) in self.digits.iter().enumerate() {
            if inserted.peek() == Some(&&(idx as u64 + 1)) {
                inserted.next();
            } else {
                out.push(d.clone());
            }
        }
        out
    }
}

/// A failed construction, with whatever was built before the failure.
#[derive(Debug)]
pub struct ConstructFailure {
    pub error: Error,
    pub partial: ConstructedNumber,
}

impl fmt::Display for ConstructFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} complete blocks, {} digits kept)",
            self.error,
            self.partial.certificates.len(),
            self.partial.digits.len()
        )
    }
}

impl std::error::Error for ConstructFailure {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

pub fn construct(config: &ConstructionConfig, source: &mut SeedSource) -> std::result::Result<ConstructedNumber, ConstructFailure> {
    let mut out = ConstructedNumber::default();
    match build(config, source, &mut out) {
        Ok(()) => Ok(out),
        Err(error) => Err(ConstructFailure { error, partial: out }),
    }
}

fn build(config: &ConstructionConfig, source: &mut SeedSource, out: &mut ConstructedNumber) -> Result<()> {
    config.validate()?;
    let n_size = config.block_size;
    let limits = &config.limits;
    let mut state = ConvergentState::new();

    for i in 1..=config.blocks {
        let block = seed_block(source, i, n_size)?;
        for a in block.iter() {
            state.push(a);
        }
        out.digits.extend_from(&block);
        let n_i = block_boundary(n_size, i);
        if out.digits.len() as u64 != n_i || state.index as u64 != n_i {
            return Err(Error::Infeasible(format!(
                "block {i} ends at index {}, expected {n_i}",
                out.digits.len()
            )));
        }

        let b = BigUint::from(base_schedule(i));
        let q_before = vec![state.q_prev.clone(), state.q.clone()];
        let plan = plan_block(&state.q_prev, &state.q, &b, limits)?;
        let k_i = digit_count_bound(&plan.q3, &b)?;
        let ell4 = tail_digit(k_i, &b, config.mode, limits)? + &config.tail_offset;
        let tail_bound_met = exceeds_power(&ell4, &b, u128::from(k_i) * u128::from(k_i));

        let ell = vec![plan.ell1.clone(), plan.ell2.clone(), plan.ell3.clone(), ell4];
        let mut q_after = Vec::with_capacity(3);
        for (j, a) in ell.iter().enumerate() {
            state.push(a);
            if j < 3 {
                q_after.push(state.q.clone());
            }
        }
        if q_after != [plan.q1.clone(), plan.q2.clone(), plan.q3.clone()] {
            return Err(Error::Infeasible(format!("block {i}: recurrence disagrees with the plan")));
        }
        for a in &ell {
            out.digits.push(a.clone())?;
        }
        out.insertion_positions.extend(n_i + 1..=n_i + 4);
        out.certificates.push(BlockCertificate {
            i,
            b,
            n: n_i,
            ell,
            q_before,
            q_after,
            artin_prime: plan.q2,
            k: plan.k,
            k_i: BigUint::from(k_i),
            mode: config.mode,
            tail_offset: config.tail_offset.clone(),
            tail_bound_met,
            artin_candidates: plan.artin_tested,
        });
    }

    if config.extra_seed_digits > 0 {
        let extra = source.next_digits(config.extra_seed_digits as usize)?;
        out.digits.extend_from(&extra);
    }
    Ok(())
}

/// Whether `x > b^e`, computing the power only when bit lengths cannot decide.
pub(crate) fn exceeds_power(x: &BigUint, b: &BigUint, e: u128) -> bool {
    use num_traits::ToPrimitive;
    let log_b = if b.bits() <= 53 {
        b.to_f64().unwrap_or(2.0).log2()
    } else {
        b.bits() as f64
    };
    let estimate = e as f64 * log_b;
    let bits = x.bits() as f64;
    // b^e has floor(e·log₂b) + 1 bits; allow slack for rounding.
    if bits < estimate - 2.0 {
        return false;
    }
    if bits > estimate + 3.0 {
        return true;
    }
    let e = usize::try_from(e).expect("exponent within a few bits of an existing integer");
    *x > num_traits::pow(b.clone(), e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn worked() -> ConstructedNumber {
        let mut src = SeedSource::digits(CfDigits::from_u64s(&[1, 2, 3, 1]).unwrap());
        construct(&ConstructionConfig::new(4, 1, TailMode::Paper), &mut src).unwrap()
    }

    #[test]
    fn worked_block_digits() {
        let y = worked();
        let expected: Vec<BigUint> = vec![n(1), n(2), n(3), n(1), n(1), n(2), n(555), (n(1) << 225u32) + 1u8];
        assert_eq!(&y.digits[..], &expected[..]);
        let c = &y.certificates[0];
        assert_eq!(c.q_before, [n(10), n(13)]);
        assert_eq!(c.q_after, [n(23), n(59), n(32768)]);
        assert!(c.tail_bound_met);
        assert_eq!(y.insertion_positions, [5, 6, 7, 8]);
        assert_eq!(y.seed_digits(), [n(1), n(2), n(3), n(1)]);
    }

    #[test]
    fn zero_blocks_is_the_seed() {
        let mut src = SeedSource::rng(5);
        let mut cfg = ConstructionConfig::new(4, 0, TailMode::Toy);
        cfg.extra_seed_digits = 20;
        let y = construct(&cfg, &mut src).unwrap();
        let mut again = SeedSource::rng(5);
        assert_eq!(y.digits, again.next_digits(20).unwrap());
        assert!(y.certificates.is_empty());
    }

    #[test]
    fn odd_block_size_is_rejected() {
        let mut src = SeedSource::rng(1);
        let err = construct(&ConstructionConfig::new(5, 1, TailMode::Toy), &mut src).unwrap_err();
        assert!(matches!(err.error, Error::Domain(_)));
        assert!(err.partial.digits.is_empty());
    }

    #[test]
    fn exceeds_power_is_exact() {
        assert!(exceeds_power(&n(9), &n(2), 3));
        assert!(!exceeds_power(&n(8), &n(2), 3));
        assert!(exceeds_power(&n(244), &n(3), 5));
        assert!(!exceeds_power(&n(243), &n(3), 5));
        assert!(!exceeds_power(&n(2), &n(2), 225));
    }
}
