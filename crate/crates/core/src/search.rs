//! Candidate budgets and worker pools shared by the exhaustive searches.

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cap on candidate subsets a search may examine.
    pub budget: u64,
    /// Worker threads; 1 forces sequential execution.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
        }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig {
            budget,
            ..Self::default()
        }
    }

    pub fn sequential(mut self) -> Self {
        self.workers = 1;
        self
    }

    /// Runs `f` inside a pool of `workers` threads.
    pub fn install<R, F>(&self, f: F) -> R
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }

    pub fn meter(&self) -> BudgetMeter {
        BudgetMeter {
            budget: self.budget,
            charged: 0,
        }
    }
}

/// Accumulates a priori candidate counts, one search level at a time, so the
/// decision to abort never depends on worker scheduling.
#[derive(Debug, Clone)]
pub struct BudgetMeter {
    budget: u64,
    charged: u128,
}

impl BudgetMeter {
    pub fn charge(&mut self, amount: u128) -> Result<()> {
        let next = self.charged.saturating_add(amount);
        if next > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: next,
                budget: self.budget,
            });
        }
        self.charged = next;
        Ok(())
    }

    pub fn charged(&self) -> u128 {
        self.charged
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
