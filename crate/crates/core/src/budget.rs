//! Enumeration limits shared by the brute-force oracles.

use crate::field::IrreducibilityBudget;

pub const DEFAULT_MAX_ENUM: u64 = 1 << 16;
pub const ENV_MAX_ENUM: &str = "WEYLMOD_MAX_ENUM";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Cap on any single exhaustive enumeration (vectors, tuples, group elements).
    pub max_enum: u64,
    pub irreducibility: IrreducibilityBudget,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_enum: DEFAULT_MAX_ENUM, irreducibility: IrreducibilityBudget::default() }
    }
}

impl Budget {
    /// Default budget with `WEYLMOD_MAX_ENUM` applied when set and parseable.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var(ENV_MAX_ENUM).ok().and_then(|s| s.trim().parse::<u64>().ok()) {
            b.max_enum = v;
        }
        b
    }

    pub fn with_max_enum(mut self, n: u64) -> Self {
        self.max_enum = n;
        self
    }
}
