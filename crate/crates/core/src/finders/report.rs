use serde::{Deserialize, Serialize};

use crate::constructions::{star_pattern, sunflower_pattern};
use crate::embedding::{validate_disjoint, Embedding};
use crate::hypergraph::Hypergraph;
use crate::shapes::{StarShape, SunflowerShape};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Found { copies: Vec<Embedding> },
    /// The strategy ran out of moves. This is never a claim that no copy exists.
    Exhausted { phase: String, reason: String },
}

/// A set is `threshold`-expanding when it lies in at least that many edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionThreshold {
    pub set_size: usize,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseCount {
    pub phase: String,
    pub edges: usize,
}

/// The density hypothesis under which the strategy is guaranteed to succeed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub statement: String,
    pub required_edges: f64,
    pub edges: usize,
    pub met: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FinderStats {
    pub deleted: Vec<PhaseCount>,
    pub expanding_sets: usize,
    pub greedy_steps: usize,
    pub thresholds: Vec<ExpansionThreshold>,
    pub hypothesis: Option<Hypothesis>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinderReport {
    pub pattern: String,
    pub outcome: Outcome,
    pub stats: FinderStats,
    pub trace: Vec<String>,
}

impl FinderReport {
    pub fn is_found(&self) -> bool {
        matches!(self.outcome, Outcome::Found { .. })
    }

    pub fn copies(&self) -> &[Embedding] {
        match &self.outcome {
            Outcome::Found { copies } => copies,
            Outcome::Exhausted { .. } => &[],
        }
    }

    pub fn failing_phase(&self) -> Option<&str> {
        match &self.outcome {
            Outcome::Exhausted { phase, .. } => Some(phase),
            Outcome::Found { .. } => None,
        }
    }
}

/// Bookkeeping shared by the finders while a strategy runs.
pub(crate) struct Run {
    pattern: String,
    stats: FinderStats,
    trace: Vec<String>,
}

impl Run {
    pub fn new(pattern: impl ToString) -> Self {
        Run {
            pattern: pattern.to_string(),
            stats: FinderStats::default(),
            trace: Vec::new(),
        }
    }

    pub fn phase(&mut self, name: &str) {
        self.trace.push(name.to_string());
    }

    pub fn last_phase(&self) -> Option<&str> {
        self.trace.last().map(String::as_str)
    }

    pub fn deleted(&mut self, phase: &str, edges: usize) {
        self.stats.deleted.push(PhaseCount {
            phase: phase.to_string(),
            edges,
        });
    }

    pub fn expanding(&mut self, count: usize) {
        self.stats.expanding_sets += count;
    }

    pub fn steps(&mut self, count: usize) {
        self.stats.greedy_steps += count;
    }

    pub fn threshold(&mut self, set_size: usize, threshold: f64) {
        self.stats.thresholds.push(ExpansionThreshold { set_size, threshold });
    }

    pub fn hypothesis(&mut self, statement: impl ToString, required: f64, edges: usize) {
        self.stats.hypothesis = Some(Hypothesis {
            statement: statement.to_string(),
            required_edges: required,
            edges,
            met: edges as f64 >= required,
        });
    }

    /// As [`hypothesis`](Self::hypothesis), also requiring a side condition on the parameters.
    pub fn hypothesis_if(&mut self, statement: impl ToString, required: f64, edges: usize, side: bool) {
        self.hypothesis(statement, required, edges);
        if let Some(h) = &mut self.stats.hypothesis {
            h.met &= side;
        }
    }

    pub fn hypothesis_met(&self) -> bool {
        self.stats.hypothesis.as_ref().is_some_and(|h| h.met)
    }

    /// Certificates are checked before they leave the finder; a rejected one
    /// is reported as exhaustion rather than returned.
    pub fn found(mut self, host: &Hypergraph, copies: Vec<Embedding>) -> FinderReport {
        if let Err(e) = validate_disjoint(&copies, host) {
            debug_assert!(false, "finder produced a bad certificate: {e}");
            self.phase("certificate-check");
            return self.exhausted("certificate-check", format!("rejected certificate: {e}"));
        }
        FinderReport {
            pattern: self.pattern,
            outcome: Outcome::Found { copies },
            stats: self.stats,
            trace: self.trace,
        }
    }

    pub fn exhausted(self, phase: &str, reason: impl ToString) -> FinderReport {
        FinderReport {
            pattern: self.pattern,
            outcome: Outcome::Exhausted {
                phase: phase.to_string(),
                reason: reason.to_string(),
            },
            stats: self.stats,
            trace: self.trace,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Sunflower {
    pub kernel: Vec<usize>,
    pub petals: Vec<Vec<usize>>,
}

impl Sunflower {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.kernel.iter().chain(self.petals.iter().flatten()).copied()
    }

    pub fn embedding(&self) -> Embedding {
        let r = self.kernel.len() + self.petals[0].len();
        let shape = SunflowerShape {
            r,
            t: self.kernel.len(),
            k: self.petals.len(),
        };
        let mut map = self.kernel.clone();
        for p in &self.petals {
            let mut p = p.clone();
            p.sort_unstable();
            map.extend(p);
        }
        Embedding::new(sunflower_pattern(shape), map)
    }
}

/// A generalised star as a rooted tree; leaves have no children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Star {
    pub root: usize,
    pub children: Vec<Star>,
}

impl Star {
    pub fn leaf(v: usize) -> Self {
        Star {
            root: v,
            children: Vec::new(),
        }
    }

    pub fn new(root: usize, children: Vec<Star>) -> Self {
        Star { root, children }
    }

    /// Centre with plain leaves.
    pub fn flat(root: usize, leaves: &[usize]) -> Self {
        Star::new(root, leaves.iter().map(|&v| Star::leaf(v)).collect())
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut out = vec![self.root];
        for c in &self.children {
            out.extend(c.vertices());
        }
        out
    }

    /// Vertices by layer, breadth first.
    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut layers = vec![vec![self.root]];
        let mut frontier: Vec<&Star> = vec![self];
        while frontier.iter().any(|s| !s.children.is_empty()) {
            let next: Vec<&Star> = frontier.iter().flat_map(|s| s.children.iter()).collect();
            layers.push(next.iter().map(|s| s.root).collect());
            frontier = next;
        }
        layers
    }

    pub fn shape(&self) -> StarShape {
        let mut degrees = Vec::new();
        let mut s = self;
        while !s.children.is_empty() {
            degrees.push(s.children.len());
            s = &s.children[0];
        }
        StarShape { degrees }
    }

    /// Layered labelling: breadth-first order matches the pattern's
    /// "vertex j of layer i hangs below vertex j / d_i" convention.
    pub fn embedding(&self) -> Embedding {
        let shape = self.shape();
        let map = self.layers().concat();
        Embedding::new(star_pattern(&shape), map)
    }
}
