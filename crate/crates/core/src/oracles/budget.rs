use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Limits on a search. Hitting either one yields a budget-exhausted outcome.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<f64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            node_limit: Some(limit),
            time_limit: None,
        }
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            nodes: 0,
            node_limit: self.node_limit,
            deadline: self.time_limit.map(|s| Instant::now() + Duration::from_secs_f64(s)),
            tripped: false,
        }
    }
}

/// Running node count against a budget.
#[derive(Debug)]
pub(crate) struct Meter {
    pub nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    pub tripped: bool,
}

impl Meter {
    /// Counts one node; returns true once the budget is spent.
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            self.tripped = true;
        }
        // the clock is only consulted every 1024 nodes
        if !self.tripped && self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d) {
            self.tripped = true;
        }
        self.tripped
    }
}
