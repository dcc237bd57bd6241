//! Seed digit sources standing in for a CF-normal number.
//!
//! The pseudo-random source draws i.i.d. Gauss–Kuzmin digits: a 64-bit word
//! `r` from xoshiro256++ (state expanded from the seed with SplitMix64) gives
//! `u = (r + ½)/2^64 ∈ (0, 1)`, then `x = 2^u − 1` has the Gauss-measure law
//! and the digit is `⌊1/x⌋`. Since `⌊1/x⌋ ≥ k` exactly when
//! `u ≤ log₂(1 + 1/k)`, the sampler compares `2r + 1` against integer
//! thresholds `⌊2^65 log₂(1 + 1/k)⌋`, so streams never depend on the
//! platform's floating-point library.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::cf::{log2_fixed, CfDigits, DigitReader};
use crate::{Error, Result};

pub const DEFAULT_DIGIT_CAP: u64 = 1_000_000;
pub const GENERATOR_NAME: &str = "xoshiro256++/splitmix64-v1";

/// The digit `⌊1/(2^u − 1)⌋` for `u ∈ (0, 1)`, clamped to `[1, cap]`.
pub fn gauss_kuzmin_digit(u: f64, cap: u64) -> u64 {
    let x = (u * std::f64::consts::LN_2).exp_m1();
    let a = (1.0 / x).floor();
    if !a.is_finite() || a >= cap as f64 {
        cap.max(1)
    } else {
        (a as u64).max(1)
    }
}

const TABLE_SIZE: u64 = 4096;

/// `⌊2^65 log₂(1 + 1/k)⌋`.
fn threshold(k: u64) -> u128 {
    let v = log2_fixed(&BigUint::from(k + 1), &BigUint::from(k), 65 + 32) >> 32u32;
    v.to_u128().expect("log₂ 2 · 2^65 fits in 128 bits")
}

fn table() -> &'static [u128] {
    static TABLE: OnceLock<Vec<u128>> = OnceLock::new();
    // TABLE[k] for 1 ≤ k ≤ TABLE_SIZE + 1; slot 0 unused.
    TABLE.get_or_init(|| (0..=TABLE_SIZE + 1).map(|k| if k == 0 { u128::MAX } else { threshold(k) }).collect())
}

/// The digit selected by one raw 64-bit draw.
pub fn digit_from_bits(r: u64, cap: u64) -> u64 {
    let t = 2 * r as u128 + 1;
    let tab = table();
    // a = max { k : t ≤ S_k }; S_k decreases in k.
    let a = if t > tab[TABLE_SIZE as usize + 1] {
        let mut lo = 1usize;
        let mut hi = TABLE_SIZE as usize + 1;
        // invariant: t ≤ S_lo, t > S_hi
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if t <= tab[mid] {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo as u64
    } else {
        let u = (r as f64 + 0.5) / 2f64.powi(64);
        let mut k = gauss_kuzmin_digit(u, u64::MAX).max(TABLE_SIZE + 1);
        if k > cap {
            return cap;
        }
        while t > threshold(k) {
            k -= 1;
        }
        while t <= threshold(k + 1) {
            k += 1;
        }
        k
    };
    a.min(cap).max(1)
}

/// Reproducible stream of Gauss–Kuzmin digits.
#[derive(Clone, Debug)]
pub struct GaussKuzmin {
    rng: Xoshiro256PlusPlus,
    cap: u64,
}

impl GaussKuzmin {
    pub fn new(seed: u64, cap: u64) -> Self {
        GaussKuzmin {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
            cap,
        }
    }

    pub fn next_digit(&mut self) -> u64 {
        digit_from_bits(self.rng.next_u64(), self.cap)
    }
}

impl Iterator for GaussKuzmin {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        Some(self.next_digit())
    }
}

/// What a run was seeded with, recorded in output headers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeedDescriptor {
    Rng { seed: u64, cap: u64, generator: String },
    File { path: PathBuf },
    Inline { length: u64 },
}

enum Kind {
    Rng(GaussKuzmin),
    File(DigitReader<BufReader<File>>),
    Inline(std::vec::IntoIter<BigUint>),
}

pub struct SeedSource {
    kind: Kind,
    descriptor: SeedDescriptor,
    position: u64,
}

impl SeedSource {
    pub fn rng(seed: u64) -> Self {
        Self::rng_with_cap(seed, DEFAULT_DIGIT_CAP)
    }

    pub fn rng_with_cap(seed: u64, cap: u64) -> Self {
        SeedSource {
            kind: Kind::Rng(GaussKuzmin::new(seed, cap)),
            descriptor: SeedDescriptor::Rng {
                seed,
                cap,
                generator: GENERATOR_NAME.into(),
            },
            position: 0,
        }
    }

    pub fn file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Ok(SeedSource {
            kind: Kind::File(DigitReader::open(path)?),
            descriptor: SeedDescriptor::File { path: path.to_path_buf() },
            position: 0,
        })
    }

    pub fn digits(digits: CfDigits) -> Self {
        SeedSource {
            descriptor: SeedDescriptor::Inline {
                length: digits.len() as u64,
            },
            kind: Kind::Inline(digits.into_inner().into_iter()),
            position: 0,
        }
    }

    pub fn descriptor(&self) -> &SeedDescriptor {
        &self.descriptor
    }

    /// Number of digits delivered so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn next_digits(&mut self, count: usize) -> Result<CfDigits> {
        let mut out = Vec::with_capacity(count.min(1 << 20));
        for _ in 0..count {
            let digit = match &mut self.kind {
                Kind::Rng(g) => Some(BigUint::from(g.next_digit())),
                Kind::File(r) => r.next().transpose()?,
                Kind::Inline(it) => it.next(),
            };
            match digit {
                Some(d) => out.push(d),
                None => {
                    return Err(Error::input(
                        None,
                        format!("seed source exhausted after {} digits", self.position),
                    ))
                }
            }
            self.position += 1;
        }
        CfDigits::new(out)
    }
}
