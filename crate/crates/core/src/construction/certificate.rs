use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{ConstructionConfig, TailMode};
use crate::seed::SeedDescriptor;
use crate::Result;

pub const CERTIFICATE_FORMAT: &str = "abnormal-forge-certificate";
pub const FORMAT_VERSION: u32 = 1;

/// Everything needed to reproduce a run bit for bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunHeader {
    pub format: String,
    pub version: u32,
    pub tool_version: String,
    /// Seconds since the Unix epoch; omitted for reproducible output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub partial: bool,
    pub config: ConstructionConfig,
    pub seed: SeedDescriptor,
}

impl RunHeader {
    pub fn new(config: ConstructionConfig, seed: SeedDescriptor) -> Self {
        RunHeader {
            format: CERTIFICATE_FORMAT.into(),
            version: FORMAT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp: None,
            partial: false,
            config,
            seed,
        }
    }
}

/// Record of one block's four inserted digits and the facts they establish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCertificate {
    pub i: u64,
    #[serde(with = "crate::decimal")]
    pub b: BigUint,
    /// Index in `y` of the last digit of `X_i`.
    pub n: u64,
    /// `ℓ₁ … ℓ₄`, at indices `n + 1 … n + 4`.
    #[serde(with = "crate::decimal::seq")]
    pub ell: Vec<BigUint>,
    /// `(q_{n−1}, q_n)`.
    #[serde(with = "crate::decimal::seq")]
    pub q_before: Vec<BigUint>,
    /// `(q_{n+1}, q_{n+2}, q_{n+3})`.
    #[serde(with = "crate::decimal::seq")]
    pub q_after: Vec<BigUint>,
    #[serde(with = "crate::decimal")]
    pub artin_prime: BigUint,
    #[serde(with = "crate::decimal")]
    pub k: BigUint,
    #[serde(with = "crate::decimal")]
    pub k_i: BigUint,
    pub mode: TailMode,
    #[serde(with = "crate::decimal")]
    pub tail_offset: BigUint,
    /// Whether `ℓ₄ > b^{k_i²}`.
    pub tail_bound_met: bool,
    pub artin_candidates: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub header: RunHeader,
    pub blocks: Vec<BlockCertificate>,
}

impl CertificateFile {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)?;
        out.flush()?;
        Ok(())
    }
}
