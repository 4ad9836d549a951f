//! Exact Turán numbers at desk scale.
//!
//! The primary solver enumerates every copy of the pattern inside the
//! complete r-graph (each copy stored once, as a set of potential-edge
//! indices) and finds a maximum set of potential edges containing no copy
//! entirely: a maximum independent set in the conflict hypergraph. The
//! search is include-first over edges in lexicographic order, so the first
//! optimum it meets is the lexicographically least optimal edge list.
//!
//! An independent second solver grows edge sets directly and tests each
//! new edge for completing a copy by comparing canonical forms.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::budget::{Meter, SearchBudget};
use super::contains::for_each_embedding;
use super::OracleError;
use crate::canon::canonical_form;
use crate::hypergraph::Hypergraph;
use crate::util::{binomial, for_each_subset, subsets_of_range};

/// `ex(n, H)` or, when the budget ran out, an interval containing it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuranResult {
    pub n: usize,
    pub lower: usize,
    pub upper: usize,
    /// An H-free graph with `lower` edges.
    pub witness: Hypergraph,
    pub nodes: u64,
}

impl TuranResult {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }
}

/// The potential edges of `K_n^(r)` and every copy of a pattern among them.
pub(crate) struct ConflictSystem {
    pub n: usize,
    pub r: usize,
    pub potential: Vec<Vec<usize>>,
    pub copies: Vec<Vec<u32>>,
    pub edge_copies: Vec<Vec<u32>>,
    /// Edges per copy (the pattern's edge count).
    pub q: usize,
}

impl ConflictSystem {
    pub fn new(n: usize, pattern: &Hypergraph) -> Result<Self, OracleError> {
        let (p, _) = pattern.strip_isolated();
        let r = p.r();
        let total = binomial(n, r);
        if total > 4096 {
            return Err(OracleError::TooLarge(format!("C({n},{r}) = {total} potential edges")));
        }
        let potential = subsets_of_range(n, r);
        let index: HashMap<&[usize], u32> = potential.iter().enumerate().map(|(i, e)| (e.as_slice(), i as u32)).collect();
        let complete = Hypergraph::from_sorted_edges(r, n, potential.clone());
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let summary = for_each_embedding(&complete, &p, SearchBudget::unlimited(), |map| {
            let mut copy: Vec<u32> = p
                .edges()
                .iter()
                .map(|e| {
                    let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                    img.sort_unstable();
                    index[img.as_slice()]
                })
                .collect();
            copy.sort_unstable();
            seen.insert(copy);
            ControlFlow::Continue(())
        })?;
        debug_assert!(!summary.exhausted);
        let mut copies: Vec<Vec<u32>> = seen.into_iter().collect();
        copies.sort_unstable();
        let mut edge_copies = vec![Vec::new(); potential.len()];
        for (ci, c) in copies.iter().enumerate() {
            for &e in c {
                edge_copies[e as usize].push(ci as u32);
            }
        }
        Ok(ConflictSystem {
            n,
            r,
            q: p.edge_count(),
            potential,
            copies,
            edge_copies,
        })
    }

    fn graph(&self, chosen: &[usize]) -> Hypergraph {
        Hypergraph::from_sorted_edges(self.r, self.n, chosen.iter().map(|&i| self.potential[i].clone()).collect())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Open,
    In,
    Out,
}

/// Include-first branch and bound over the conflict system.
struct Packer<'a> {
    sys: &'a ConflictSystem,
    status: Vec<Status>,
    in_count: Vec<u32>,
    has_out: Vec<u32>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    /// Stop as soon as this many edges are chosen (decision mode).
    target: Option<usize>,
    pending_upper: usize,
}

struct Abort;

impl<'a> Packer<'a> {
    fn new(sys: &'a ConflictSystem, target: Option<usize>) -> Self {
        Packer {
            sys,
            status: vec![Status::Open; sys.potential.len()],
            in_count: vec![0; sys.copies.len()],
            has_out: vec![0; sys.copies.len()],
            chosen: Vec::new(),
            best: Vec::new(),
            target,
            pending_upper: 0,
        }
    }

    fn addable(&self, i: usize) -> bool {
        let q = self.sys.q as u32;
        self.sys.edge_copies[i]
            .iter()
            .all(|&c| self.has_out[c as usize] > 0 || self.in_count[c as usize] + 1 < q)
    }

    fn set(&mut self, i: usize, s: Status) {
        self.status[i] = s;
        for &c in &self.sys.edge_copies[i] {
            match s {
                Status::In => self.in_count[c as usize] += 1,
                Status::Out => self.has_out[c as usize] += 1,
                Status::Open => {}
            }
        }
        if s == Status::In {
            self.chosen.push(i);
        }
    }

    fn unset(&mut self, i: usize) {
        let s = self.status[i];
        for &c in &self.sys.edge_copies[i] {
            match s {
                Status::In => self.in_count[c as usize] -= 1,
                Status::Out => self.has_out[c as usize] -= 1,
                Status::Open => {}
            }
        }
        if s == Status::In {
            self.chosen.pop();
        }
        self.status[i] = Status::Open;
    }

    /// Chosen + addable open edges, minus a greedy packing of live copies
    /// with pairwise disjoint open parts (each must lose an edge).
    fn bound(&self) -> usize {
        let open: Vec<bool> = (0..self.status.len())
            .map(|i| self.status[i] == Status::Open && self.addable(i))
            .collect();
        let free = open.iter().filter(|&&o| o).count();
        let mut live: Vec<(usize, usize)> = Vec::new();
        for (ci, c) in self.sys.copies.iter().enumerate() {
            if self.has_out[ci] > 0 {
                continue;
            }
            let mut size = 0;
            let mut dead = false;
            for &e in c {
                match self.status[e as usize] {
                    Status::In => {}
                    Status::Out => dead = true,
                    Status::Open if open[e as usize] => size += 1,
                    Status::Open => dead = true,
                }
            }
            if !dead && size > 0 {
                live.push((size, ci));
            }
        }
        live.sort_unstable();
        let mut taken = vec![false; self.status.len()];
        let mut packing = 0;
        for (_, ci) in live {
            let open_part: Vec<usize> = self.sys.copies[ci]
                .iter()
                .map(|&e| e as usize)
                .filter(|&e| self.status[e] == Status::Open)
                .collect();
            if open_part.iter().all(|&e| !taken[e]) {
                for e in open_part {
                    taken[e] = true;
                }
                packing += 1;
            }
        }
        self.chosen.len() + free - packing
    }

    fn good_enough(&self, bound: usize) -> bool {
        match self.target {
            Some(t) => bound >= t,
            None => bound > self.best.len(),
        }
    }

    fn done(&self) -> bool {
        self.target.is_some_and(|t| self.best.len() >= t)
    }

    fn search(&mut self, meter: &mut Meter) -> Result<(), Abort> {
        if meter.tick() {
            self.pending_upper = self.pending_upper.max(self.bound());
            return Err(Abort);
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            if self.done() {
                return Ok(());
            }
        }
        if !self.good_enough(self.bound()) {
            return Ok(());
        }
        let Some(i) = (0..self.status.len()).find(|&i| self.status[i] == Status::Open && self.addable(i)) else {
            return Ok(());
        };
        self.set(i, Status::In);
        let res = self.search(meter);
        self.unset(i);
        if res.is_err() {
            self.set(i, Status::Out);
            self.pending_upper = self.pending_upper.max(self.bound());
            self.unset(i);
            return res;
        }
        if self.done() {
            return Ok(());
        }
        self.set(i, Status::Out);
        let res = self.search(meter);
        self.unset(i);
        res
    }
}

fn trivial_result(n: usize, pattern: &Hypergraph) -> Result<Option<TuranResult>, OracleError> {
    let (p, _) = pattern.strip_isolated();
    if p.edge_count() == 0 {
        return Err(OracleError::InvalidArgument("pattern has no edges".into()));
    }
    if p.n() > n {
        let g = Hypergraph::from_sorted_edges(p.r(), n, subsets_of_range(n, p.r()));
        let e = g.edge_count();
        return Ok(Some(TuranResult {
            n,
            lower: e,
            upper: e,
            witness: g,
            nodes: 0,
        }));
    }
    if p.edge_count() == 1 {
        return Ok(Some(TuranResult {
            n,
            lower: 0,
            upper: 0,
            witness: Hypergraph::empty(p.r(), n),
            nodes: 0,
        }));
    }
    Ok(None)
}

/// `ex(n, H)` via the conflict independent-set formulation.
pub fn ex_exact(n: usize, pattern: &Hypergraph, budget: SearchBudget) -> Result<TuranResult, OracleError> {
    if let Some(res) = trivial_result(n, pattern)? {
        return Ok(res);
    }
    let sys = ConflictSystem::new(n, pattern)?;
    let mut meter = budget.meter();
    let mut packer = Packer::new(&sys, None);
    // any nonempty H-free graph can be relabelled to contain edge 0 = {0..r-1}
    packer.set(0, Status::In);
    let res = packer.search(&mut meter);
    let lower = packer.best.len();
    let upper = if res.is_err() {
        packer.pending_upper.max(lower)
    } else {
        lower
    };
    Ok(TuranResult {
        n,
        lower,
        upper,
        witness: sys.graph(&packer.best),
        nodes: meter.nodes,
    })
}

/// Searches for an H-free graph with at least `e` edges.
pub(crate) enum Decision {
    Exists(Hypergraph),
    None,
    Unknown,
}

pub(crate) fn free_graph_with_edges(
    n: usize,
    pattern: &Hypergraph,
    e: usize,
    meter: &mut Meter,
) -> Result<Decision, OracleError> {
    if let Some(res) = trivial_result(n, pattern)? {
        return Ok(if res.lower >= e {
            Decision::Exists(trim(&res.witness, e))
        } else {
            Decision::None
        });
    }
    let sys = ConflictSystem::new(n, pattern)?;
    if e == 0 {
        return Ok(Decision::Exists(Hypergraph::empty(sys.r, n)));
    }
    let mut packer = Packer::new(&sys, Some(e));
    packer.set(0, Status::In);
    let res = packer.search(meter);
    if packer.best.len() >= e {
        Ok(Decision::Exists(trim(&sys.graph(&packer.best), e)))
    } else if res.is_err() {
        Ok(Decision::Unknown)
    } else {
        Ok(Decision::None)
    }
}

fn trim(g: &Hypergraph, e: usize) -> Hypergraph {
    Hypergraph::from_sorted_edges(g.r(), g.n(), g.edges()[..e.min(g.edge_count())].to_vec())
}

/// Above this many candidate edge sets the local copy table is not built.
const LOCAL_TABLE_LIMIT: u128 = 2_000_000;

/// `ex(n, H)` by a direct search over edge sets. The labelled copies of H
/// on its own vertex set are found once by comparing canonical forms; an
/// edge is then blocked as soon as it would complete one of them on some
/// vertex set of the host, and the bound counts unblocked edges only.
pub fn ex_exact_dfs(n: usize, pattern: &Hypergraph, budget: SearchBudget) -> Result<TuranResult, OracleError> {
    if let Some(res) = trivial_result(n, pattern)? {
        return Ok(res);
    }
    let (p, _) = pattern.strip_isolated();
    let (r, v) = (p.r(), p.n());
    let local = subsets_of_range(v, r);
    if local.len() > 128 || binomial(local.len(), p.edge_count()) > LOCAL_TABLE_LIMIT {
        return Err(OracleError::TooLarge(format!(
            "{} edge sets of size {} on {v} vertices",
            binomial(local.len(), p.edge_count()),
            p.edge_count()
        )));
    }
    let key = canonical_form(&p)?;
    let mut copies = Vec::new();
    let mut err = None;
    for_each_subset(&(0..local.len()).collect::<Vec<_>>(), p.edge_count(), |pick| {
        if err.is_some() {
            return;
        }
        let g = Hypergraph::from_sorted_edges(r, v, pick.iter().map(|&i| local[i].clone()).collect());
        match canonical_form(&g) {
            Ok(k) if k == key => copies.push(pick.iter().fold(0u128, |m, &i| m | 1 << i)),
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let potential = subsets_of_range(n, r);
    let mut index = vec![usize::MAX; n.pow(r as u32)];
    for (i, e) in potential.iter().enumerate() {
        index[e.iter().fold(0, |k, &x| k * n + x)] = i;
    }
    let mut dfs = DirectSearch {
        n,
        potential: &potential,
        index,
        local,
        copies,
        v,
        chosen: vec![false; potential.len()],
        blocked: vec![0; potential.len()],
        stack: Vec::new(),
        best: Vec::new(),
        pending_upper: 0,
    };
    let mut meter = budget.meter();
    // every nonempty H-free graph has a relabelling containing edge 0
    dfs.push(0);
    let res = dfs.search(1, &mut meter);
    let lower = dfs.best.len();
    let upper = if res.is_err() { dfs.pending_upper.max(lower) } else { lower };
    let witness = Hypergraph::from_sorted_edges(r, n, dfs.best.iter().map(|&i| potential[i].clone()).collect());
    Ok(TuranResult {
        n,
        lower,
        upper,
        witness,
        nodes: meter.nodes,
    })
}

struct DirectSearch<'a> {
    n: usize,
    potential: &'a [Vec<usize>],
    /// Potential-edge index by the base-n encoding of its vertices.
    index: Vec<usize>,
    local: Vec<Vec<usize>>,
    /// Labelled copies of the pattern as bitmasks over `local`.
    copies: Vec<u128>,
    v: usize,
    chosen: Vec<bool>,
    blocked: Vec<u32>,
    /// Chosen edges in order, each with the edges its addition blocked.
    stack: Vec<(usize, Vec<usize>)>,
    best: Vec<usize>,
    pending_upper: usize,
}

impl DirectSearch<'_> {
    /// Whether adding `new` to the chosen edges creates a copy of the pattern.
    fn completes_copy(&self, new: usize) -> bool {
        let edge = &self.potential[new];
        let others: Vec<usize> = (0..self.n).filter(|x| !edge.contains(x)).collect();
        let mut hit = false;
        for_each_subset(&others, self.v - edge.len(), |extra| {
            if hit {
                return;
            }
            let mut verts: Vec<usize> = edge.iter().chain(extra).copied().collect();
            verts.sort_unstable();
            let (mut have, mut bit) = (0u128, 0u128);
            for (li, le) in self.local.iter().enumerate() {
                let g = self.index[le.iter().fold(0, |k, &x| k * self.n + verts[x])];
                if g == new {
                    bit = 1 << li;
                } else if self.chosen[g] {
                    have |= 1 << li;
                }
            }
            let all = have | bit;
            hit = self.copies.iter().any(|&c| c & bit != 0 && c & !all == 0);
        });
        hit
    }

    fn push(&mut self, i: usize) {
        self.chosen[i] = true;
        let edge = &self.potential[i];
        let near: Vec<usize> = (i + 1..self.potential.len())
            .filter(|&j| self.blocked[j] == 0 && !self.chosen[j])
            .filter(|&j| edge.len() + self.potential[j].iter().filter(|x| !edge.contains(x)).count() <= self.v)
            .collect();
        let newly: Vec<usize> = near.into_iter().filter(|&j| self.completes_copy(j)).collect();
        for &j in &newly {
            self.blocked[j] += 1;
        }
        self.stack.push((i, newly));
    }

    fn pop(&mut self) {
        let (i, newly) = self.stack.pop().expect("pop without push");
        for j in newly {
            self.blocked[j] -= 1;
        }
        self.chosen[i] = false;
    }

    fn search(&mut self, next: usize, meter: &mut Meter) -> Result<(), Abort> {
        let open: Vec<usize> = (next..self.potential.len()).filter(|&j| self.blocked[j] == 0).collect();
        let depth = self.stack.len();
        if meter.tick() {
            self.pending_upper = self.pending_upper.max(depth + open.len());
            return Err(Abort);
        }
        if depth > self.best.len() {
            self.best = self.stack.iter().map(|(i, _)| *i).collect();
        }
        for (pos, &i) in open.iter().enumerate() {
            if depth + open.len() - pos <= self.best.len() {
                return Ok(());
            }
            self.push(i);
            let res = self.search(i + 1, meter);
            self.pop();
            if res.is_err() {
                // the untried siblings are bounded by their count
                self.pending_upper = self.pending_upper.max(depth + open.len() - pos - 1);
                return res;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sunflower_pattern;
    use crate::shapes::SunflowerShape;

    fn sf(r: usize, t: usize, k: usize) -> Hypergraph {
        sunflower_pattern(SunflowerShape::new(r, t, k).unwrap())
    }

    #[test]
    fn single_edge_pattern() {
        let edge = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let res = ex_exact(6, &edge, SearchBudget::unlimited()).unwrap();
        assert_eq!(res.value(), Some(0));
        assert_eq!(res.witness.edge_count(), 0);
    }

    #[test]
    fn linear_triple_systems_on_seven_points() {
        let res = ex_exact(7, &sf(3, 2, 2), SearchBudget::unlimited()).unwrap();
        assert_eq!(res.value(), Some(7));
        assert!(res.witness.codegree_table(2).values().all(|&c| c == 1));
        let dfs = ex_exact_dfs(7, &sf(3, 2, 2), SearchBudget::unlimited()).unwrap();
        assert_eq!(dfs.value(), Some(7));
        assert_eq!(dfs.witness, res.witness);
    }

    #[test]
    fn intersecting_triples_on_six_points() {
        // two disjoint triples forbidden: the maximum intersecting family has 10 members
        let res = ex_exact(6, &sf(3, 0, 2), SearchBudget::unlimited()).unwrap();
        assert_eq!(res.value(), Some(10));
        assert_eq!(ex_exact_dfs(6, &sf(3, 0, 2), SearchBudget::unlimited()).unwrap().value(), Some(10));
    }

    #[test]
    fn graphs_without_triangles() {
        let tri = Hypergraph::new(2, 3, [[0, 1], [1, 2], [0, 2]]).unwrap();
        for n in 3..=6 {
            let res = ex_exact(n, &tri, SearchBudget::unlimited()).unwrap();
            assert_eq!(res.value(), Some(n * n / 4), "n={n}");
        }
    }

    #[test]
    fn budget_gives_sound_interval() {
        let res = ex_exact(7, &sf(3, 2, 2), SearchBudget::nodes(5)).unwrap();
        assert!(res.lower <= 7 && 7 <= res.upper);
        let res = ex_exact_dfs(7, &sf(3, 2, 2), SearchBudget::nodes(5)).unwrap();
        assert!(res.lower <= 7 && 7 <= res.upper);
    }

    #[test]
    fn pattern_larger_than_host() {
        let res = ex_exact(5, &sf(3, 1, 3), SearchBudget::unlimited()).unwrap();
        assert_eq!(res.value(), Some(10));
    }
}
