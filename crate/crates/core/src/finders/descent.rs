//! Budgeted backtracking over root-to-leaf paths, the last resort of every
//! finder. A generalised star is a tree whose root-to-leaf paths are edges,
//! so the search fills one tree slot at a time, deepest first, and prunes a
//! candidate whose path codegree cannot host the leaves still needed below.
//! Nothing here is backed by a density guarantee.

use std::collections::HashMap;
use std::rc::Rc;

use super::report::{Star, Sunflower};
use crate::hypergraph::Hypergraph;

/// Restricts which host vertices may occupy a layer (0 is the apex).
pub(crate) type LayerFilter<'a> = &'a dyn Fn(usize, usize) -> bool;

struct Slot {
    parent: Option<usize>,
    layer: usize,
    remaining: usize,
    min_pos: usize,
}

struct Node {
    v: usize,
    parent: Option<usize>,
}

struct Search<'a> {
    g: &'a Hypergraph,
    degrees: &'a [usize],
    /// `below[i]`: leaves under a layer-i vertex.
    below: Vec<usize>,
    layer_ok: LayerFilter<'a>,
    used: Vec<bool>,
    tree: Vec<Node>,
    cache: HashMap<Vec<usize>, Rc<Vec<usize>>>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    fn path(&self, mut at: Option<usize>) -> Vec<usize> {
        let mut p = Vec::new();
        while let Some(i) = at {
            p.push(self.tree[i].v);
            at = self.tree[i].parent;
        }
        p.sort_unstable();
        p
    }

    fn candidates(&mut self, parent: Option<usize>, layer: usize) -> Rc<Vec<usize>> {
        let path = self.path(parent);
        if let Some(c) = self.cache.get(&path) {
            return c.clone();
        }
        let need = self.below[layer];
        let mut count = vec![0usize; self.g.n()];
        for i in self.g.edges_containing(&path) {
            for &v in &self.g.edges()[i] {
                count[v] += 1;
            }
        }
        for &v in &path {
            count[v] = 0;
        }
        let mut c: Vec<usize> = (0..self.g.n()).filter(|&v| count[v] >= need.max(1)).collect();
        c.sort_by_key(|&v| (std::cmp::Reverse(count[v]), v));
        let c = Rc::new(c);
        self.cache.insert(path, c.clone());
        c
    }

    fn solve(&mut self, stack: &mut Vec<Slot>) -> bool {
        let Some(slot) = stack.pop() else {
            return true;
        };
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            stack.push(slot);
            return false;
        }
        let cands = self.candidates(slot.parent, slot.layer);
        for pos in slot.min_pos..cands.len() {
            let v = cands[pos];
            if self.used[v] || !(self.layer_ok)(slot.layer, v) {
                continue;
            }
            self.used[v] = true;
            let id = self.tree.len();
            self.tree.push(Node { v, parent: slot.parent });
            let base = stack.len();
            if slot.remaining > 1 {
                stack.push(Slot {
                    parent: slot.parent,
                    layer: slot.layer,
                    remaining: slot.remaining - 1,
                    min_pos: pos + 1,
                });
            }
            if slot.layer < self.degrees.len() {
                stack.push(Slot {
                    parent: Some(id),
                    layer: slot.layer + 1,
                    remaining: self.degrees[slot.layer],
                    min_pos: 0,
                });
            }
            if self.solve(stack) {
                return true;
            }
            stack.truncate(base);
            self.tree.pop();
            self.used[v] = false;
            if self.aborted {
                break;
            }
        }
        stack.push(slot);
        false
    }

    fn star(&self, at: usize) -> Star {
        let children = (0..self.tree.len())
            .filter(|&i| self.tree[i].parent == Some(at))
            .map(|i| self.star(i))
            .collect();
        Star::new(self.tree[at].v, children)
    }
}

/// One `St_r(degrees)` avoiding `used`, with layer `i` restricted by `layer_ok`.
/// Returns the star (if any) and the nodes spent.
pub(crate) fn star_descent(
    g: &Hypergraph,
    degrees: &[usize],
    used: &[bool],
    layer_ok: LayerFilter<'_>,
    budget: u64,
) -> (Option<Star>, u64) {
    debug_assert_eq!(degrees.len() + 1, g.r());
    let mut below = vec![1; g.r()];
    for i in (0..degrees.len()).rev() {
        below[i] = below[i + 1] * degrees[i];
    }
    let mut s = Search {
        g,
        degrees,
        below,
        layer_ok,
        used: used.to_vec(),
        tree: Vec::new(),
        cache: HashMap::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    let mut stack = vec![Slot {
        parent: None,
        layer: 0,
        remaining: 1,
        min_pos: 0,
    }];
    let found = s.solve(&mut stack);
    (found.then(|| s.star(0)), s.nodes.min(budget))
}

/// Up to `count` vertex-disjoint stars, one descent after another. `used`
/// gains the vertices of every star returned.
pub(crate) fn disjoint_star_descent(
    g: &Hypergraph,
    degrees: &[usize],
    count: usize,
    used: &mut [bool],
    layer_ok: LayerFilter<'_>,
    budget: u64,
) -> (Vec<Star>, u64) {
    let mut out = Vec::new();
    let mut spent = 0;
    while out.len() < count && spent < budget {
        let (star, nodes) = star_descent(g, degrees, used, layer_ok, budget - spent);
        spent += nodes;
        let Some(star) = star else { break };
        for v in star.vertices() {
            used[v] = true;
        }
        out.push(star);
    }
    (out, spent)
}

/// A sunflower with a `t`-set kernel and `k` petals avoiding `used`: kernels
/// by decreasing codegree, then backtracking for disjoint petals.
pub(crate) fn sunflower_descent(g: &Hypergraph, t: usize, k: usize, used: &[bool], budget: u64) -> (Option<Sunflower>, u64) {
    let mut kernels: Vec<(Vec<usize>, usize)> = g
        .codegree_table(t)
        .into_iter()
        .filter(|(s, c)| *c >= k && s.iter().all(|&v| !used[v]))
        .collect();
    kernels.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let mut nodes = 0u64;
    for (kernel, _) in kernels {
        let petals: Vec<Vec<usize>> = g
            .edges_containing(&kernel)
            .into_iter()
            .map(|i| crate::util::sorted_minus(&g.edges()[i], &kernel))
            .filter(|p| p.iter().all(|&v| !used[v]))
            .collect();
        let mut dead = used.to_vec();
        let mut chosen = Vec::new();
        if pack(&petals, 0, k, &mut dead, &mut chosen, &mut nodes, budget) {
            return (
                Some(Sunflower {
                    kernel,
                    petals: chosen.into_iter().map(|i| petals[i].clone()).collect(),
                }),
                nodes,
            );
        }
        if nodes >= budget {
            break;
        }
    }
    (None, nodes.min(budget))
}

fn pack(
    sets: &[Vec<usize>],
    from: usize,
    k: usize,
    dead: &mut [bool],
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> bool {
    if chosen.len() == k {
        return true;
    }
    for i in from..sets.len() {
        if sets.len() - i < k - chosen.len() {
            break;
        }
        *nodes += 1;
        if *nodes >= budget {
            return false;
        }
        if sets[i].iter().any(|&v| dead[v]) {
            continue;
        }
        for &v in &sets[i] {
            dead[v] = true;
        }
        chosen.push(i);
        if pack(sets, i + 1, k, dead, chosen, nodes, budget) {
            return true;
        }
        chosen.pop();
        for &v in &sets[i] {
            dead[v] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn any_layer(_: usize, _: usize) -> bool {
        true
    }
    use crate::constructions::{star_pattern, sunflower_pattern};
    use crate::shapes::{StarShape, SunflowerShape};

    #[test]
    fn finds_pattern_in_itself() {
        for degrees in [vec![3], vec![2, 2], vec![2, 1, 2], vec![1, 3, 1]] {
            let shape = StarShape::new(degrees.clone()).unwrap();
            let p = star_pattern(&shape);
            let (star, _) = star_descent(&p, &degrees, &vec![false; p.n()], &any_layer, 10_000);
            let star = star.expect("pattern contains itself");
            star.embedding().validate(&p).unwrap();
            assert_eq!(star.shape(), shape);
        }
    }

    #[test]
    fn respects_layers_and_budget() {
        let shape = StarShape::new(vec![2, 2]).unwrap();
        let p = star_pattern(&shape);
        // the apex may not be vertex 0, and no other vertex can be an apex
        let (star, _) = star_descent(&p, &[2, 2], &vec![false; p.n()], &|layer, v| layer != 0 || v != 0, 10_000);
        assert!(star.is_none());
        let (star, nodes) = star_descent(&p, &[2, 2], &vec![false; p.n()], &any_layer, 1);
        assert!(star.is_none());
        assert!(nodes <= 1);
    }

    #[test]
    fn sunflower_search() {
        let p = sunflower_pattern(SunflowerShape::new(4, 2, 3).unwrap());
        let (f, _) = sunflower_descent(&p, 2, 3, &vec![false; p.n()], 1000);
        f.unwrap().embedding().validate(&p).unwrap();
        let (f, _) = sunflower_descent(&p, 1, 3, &vec![false; p.n()], 1000);
        assert!(f.is_none());
    }
}
