//! Effort and memory budgets threaded through the searches.

use serde::{Deserialize, Serialize};

use crate::nt::{FactorBudget, PrimalityPolicy};

/// Environment variable holding the big-integer memory budget in bytes.
pub const MEM_BUDGET_ENV: &str = "ABNORMAL_FORGE_MEM_BUDGET";

pub const DEFAULT_MEM_BUDGET: u64 = 256 << 20;
pub const DEFAULT_SEARCH_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of candidates tried by the Artin prime search.
    pub search_limit: u64,
    /// Cap in bytes for any single big integer or lookup table we materialize.
    pub mem_budget: u64,
    pub factor: FactorBudget,
    pub primality: PrimalityPolicy,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            search_limit: DEFAULT_SEARCH_LIMIT,
            mem_budget: DEFAULT_MEM_BUDGET,
            factor: FactorBudget::default(),
            primality: PrimalityPolicy::default(),
        }
    }
}

impl Limits {
    /// Defaults, with the memory budget overridden from the environment when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(budget) = std::env::var(MEM_BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            limits.mem_budget = budget;
        }
        limits
    }

    pub fn mem_budget_bits(&self) -> u64 {
        self.mem_budget.saturating_mul(8)
    }

    /// Rejects an integer of `bits` bits that would not fit the budget.
    pub fn check_bits(&self, bits: u64, what: &str) -> crate::Result<()> {
        if bits > self.mem_budget_bits() {
            return Err(crate::Error::resource(format!(
                "{what} needs {bits} bits, over the {} byte budget (set {MEM_BUDGET_ENV} to raise it)",
                self.mem_budget
            )));
        }
        Ok(())
    }
}
