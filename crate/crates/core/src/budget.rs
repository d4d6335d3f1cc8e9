//! Cooperative resource limits.
//!
//! Long-running searches (factorization, subgroup enumeration) take a
//! [`Budget`] and poll it. Running out is reported as [`BudgetExceeded`],
//! never as a mathematical answer.

use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("budget exceeded: {0}")]
pub struct BudgetExceeded(pub String);

#[derive(Debug, Clone)]
pub struct Budget {
    deadline: Option<Instant>,
    /// Largest total degree (after unit normalization) `factor` will attempt.
    pub max_total_degree: u32,
    /// Largest number of variables the full factorization path handles.
    /// Beyond this only content and square-free splitting run.
    pub max_vars: usize,
    /// Largest group order for exhaustive subgroup and character searches.
    pub max_group_order: u64,
    /// Cap on candidate subsets tried while recombining modular factors.
    pub max_recombinations: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            deadline: None,
            max_total_degree: 24,
            max_vars: 2,
            max_group_order: 4096,
            max_recombinations: 1 << 20,
        }
    }
}

impl Budget {
    pub fn with_millis(ms: u64) -> Self {
        Budget::default().deadline_in(Duration::from_millis(ms))
    }

    pub fn deadline_in(mut self, d: Duration) -> Self {
        self.deadline = Some(Instant::now() + d);
        self
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    pub fn check(&self, what: &str) -> Result<(), BudgetExceeded> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(BudgetExceeded(format!("time limit reached during {what}"))),
            _ => Ok(()),
        }
    }
}
