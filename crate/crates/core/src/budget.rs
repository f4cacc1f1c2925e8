//! Node budget for exhaustive enumerations.

use crate::error::{Error, Result};

/// Default cap on enumerated nodes.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_VAR: &str = "GARSIDE_BUDGET";

/// Reads the budget from `GARSIDE_BUDGET`, falling back to the default when
/// the variable is unset or unparsable.
pub fn budget_from_env() -> usize {
    std::env::var(BUDGET_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Counts enumerated nodes against a fixed limit.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: usize,
    used: usize,
}

impl Budget {
    pub fn new(limit: usize) -> Budget {
        Budget { limit, used: 0 }
    }

    pub fn from_env() -> Budget {
        Budget::new(budget_from_env())
    }

    pub fn unlimited() -> Budget {
        Budget::new(usize::MAX)
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn used(&self) -> usize {
        self.used
    }

    pub fn remaining(&self) -> usize {
        self.limit.saturating_sub(self.used)
    }

    /// Charges `n` nodes, failing once the limit is passed.
    pub fn spend(&mut self, n: usize) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}
