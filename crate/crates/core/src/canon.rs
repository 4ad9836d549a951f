//! Canonical forms by individualization-refinement.
//!
//! The search tree branches on the vertices of the first non-singleton cell
//! of an equitable-style partition. Each discrete leaf gives a relabelling;
//! the canonical form is the lexicographically least relabelled edge list.
//! Leaves with equal certificates yield automorphisms, which prune siblings
//! lying in a common orbit of the pointwise stabiliser of the current prefix.

use serde::{Deserialize, Serialize};

use crate::error::HypergraphError;
use crate::hypergraph::Hypergraph;

pub const CANONICAL_VERTEX_LIMIT: usize = 12;
pub const DEFAULT_CANONICAL_BUDGET: u64 = 5_000_000;

/// Isomorphism-class key: equal iff the hypergraphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds the canonically labelled representative.
    pub fn decode(&self) -> Hypergraph {
        let b = &self.0;
        let (r, n) = (b[0] as usize, b[1] as usize);
        let edges: Vec<Vec<usize>> = b[2..]
            .chunks(r)
            .map(|c| c.iter().map(|&x| x as usize).collect())
            .collect();
        Hypergraph::from_sorted_edges(r, n, edges)
    }
}

pub fn canonical_form(g: &Hypergraph) -> Result<CanonicalForm, HypergraphError> {
    canonical_labeling(g, DEFAULT_CANONICAL_BUDGET).map(|(_, f)| f)
}

/// The canonical form plus a relabelling `old -> new` realising it.
pub fn canonical_labeling(g: &Hypergraph, budget: u64) -> Result<(Vec<usize>, CanonicalForm), HypergraphError> {
    if g.n() > CANONICAL_VERTEX_LIMIT {
        return Err(HypergraphError::CanonicalTooLarge {
            n: g.n(),
            limit: CANONICAL_VERTEX_LIMIT,
        });
    }
    let mut search = Search {
        g,
        budget,
        nodes: 0,
        best: None,
        first: None,
        automorphisms: Vec::new(),
    };
    let root = refine(g, vec![(0..g.n()).collect()]);
    search.explore(root, &mut Vec::new())?;
    let (cert, perm) = search.best.expect("search visits at least one leaf");
    Ok((perm, encode(g, &cert)))
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool, HypergraphError> {
    if a.r() != b.r() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

fn encode(g: &Hypergraph, cert: &[Vec<u8>]) -> CanonicalForm {
    let mut bytes = Vec::with_capacity(2 + cert.len() * g.r());
    bytes.push(g.r() as u8);
    bytes.push(g.n() as u8);
    for e in cert {
        bytes.extend_from_slice(e);
    }
    CanonicalForm(bytes)
}

type Partition = Vec<Vec<usize>>;

fn cell_index(p: &Partition, n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, cell) in p.iter().enumerate() {
        for &v in cell {
            idx[v] = i;
        }
    }
    idx
}

/// Splits cells by the multiset of cell-index tuples seen along incident
/// edges, until no cell splits. Subcells are ordered by signature, so the
/// result is equivariant under relabelling.
fn refine(g: &Hypergraph, mut p: Partition) -> Partition {
    loop {
        let idx = cell_index(&p, g.n());
        let mut next: Partition = Vec::with_capacity(p.len());
        for cell in &p {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<Vec<usize>>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig: Vec<Vec<usize>> = g
                        .incident(v)
                        .iter()
                        .map(|&ei| {
                            let mut t: Vec<usize> =
                                g.edges()[ei].iter().filter(|&&u| u != v).map(|&u| idx[u]).collect();
                            t.sort_unstable();
                            t
                        })
                        .collect();
                    sig.sort_unstable();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut sub: Vec<usize> = keyed[start..i].iter().map(|x| x.1).collect();
                    sub.sort_unstable();
                    next.push(sub);
                    start = i;
                }
            }
        }
        if next.len() == p.len() {
            return next;
        }
        p = next;
    }
}

struct Search<'a> {
    g: &'a Hypergraph,
    budget: u64,
    nodes: u64,
    best: Option<(Vec<Vec<u8>>, Vec<usize>)>,
    first: Option<(Vec<Vec<u8>>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn certificate(&self, perm: &[usize]) -> Vec<Vec<u8>> {
        let mut edges: Vec<Vec<u8>> = self
            .g
            .edges()
            .iter()
            .map(|e| {
                let mut m: Vec<u8> = e.iter().map(|&v| perm[v] as u8).collect();
                m.sort_unstable();
                m
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    fn record_automorphism(&mut self, a: &[usize], b: &[usize]) {
        // a, b: old -> new with equal certificates; b^{-1} ∘ a is an automorphism
        let n = a.len();
        let mut b_inv = vec![0; n];
        for v in 0..n {
            b_inv[b[v]] = v;
        }
        let aut: Vec<usize> = (0..n).map(|v| b_inv[a[v]]).collect();
        if aut.iter().enumerate().any(|(i, &x)| i != x) && !self.automorphisms.contains(&aut) {
            self.automorphisms.push(aut);
        }
    }

    fn explore(&mut self, p: Partition, prefix: &mut Vec<usize>) -> Result<(), HypergraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(HypergraphError::CanonicalBudget(self.budget));
        }
        let target = match p.iter().position(|c| c.len() > 1) {
            None => {
                let perm = cell_index(&p, self.g.n());
                let cert = self.certificate(&perm);
                match &self.first {
                    None => self.first = Some((cert.clone(), perm.clone())),
                    Some((fc, fp)) if *fc == cert => {
                        let fp = fp.clone();
                        self.record_automorphism(&perm, &fp);
                    }
                    _ => {}
                }
                match &self.best {
                    Some((bc, bp)) if *bc == cert => {
                        let bp = bp.clone();
                        self.record_automorphism(&perm, &bp);
                    }
                    Some((bc, _)) if *bc < cert => {}
                    _ => self.best = Some((cert, perm)),
                }
                return Ok(());
            }
            Some(t) => t,
        };
        let cell = p[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit_as_explored(prefix, v, &explored) {
                continue;
            }
            let mut child: Partition = Vec::with_capacity(p.len() + 1);
            child.extend_from_slice(&p[..target]);
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&p[target + 1..]);
            let child = refine(self.g, child);
            prefix.push(v);
            self.explore(child, prefix)?;
            prefix.pop();
            explored.push(v);
        }
        Ok(())
    }

    fn same_orbit_as_explored(&self, prefix: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for aut in &self.automorphisms {
            if prefix.iter().all(|&u| aut[u] == u) {
                any = true;
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, aut[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}
