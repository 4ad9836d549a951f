//! Kővári–Sós–Turán counting: complete bipartite graphs by tallying common
//! neighbourhoods, its r-partite induction, and disjoint complete 4-partite
//! 4-graphs built on top of it.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::config::FinderConfig;
use super::report::{FinderReport, Run};
use super::FinderError;
use crate::constructions::complete_multipartite;
use crate::embedding::Embedding;
use crate::hypergraph::Hypergraph;
use crate::util::{binomial_f64, for_each_subset, isqrt};

/// `K_{s,t}` with `a` inside the first class and `b` inside the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Biclique {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartiteOutcome {
    pub biclique: Option<Biclique>,
    /// `t C(|A|,s) < |B| C(floor(|E|/|B|), s)`, under which success is certain.
    pub hypothesis: bool,
    pub subsets_tallied: usize,
}

/// Tallies the s-subsets of every B-vertex's neighbourhood and returns the
/// lexicographically smallest subset shared by at least t of them.
pub fn kst_bipartite(
    a_size: usize,
    b_size: usize,
    edges: &[(usize, usize)],
    s: usize,
    t: usize,
) -> Result<BipartiteOutcome, FinderError> {
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= a_size || b >= b_size) {
        return Err(FinderError::NotBipartite(format!(
            "edge ({a}, {b}) leaves the classes of sizes {a_size} and {b_size}"
        )));
    }
    if s == 0 || t == 0 || s > a_size || t > b_size {
        return Err(FinderError::InvalidArgument(format!(
            "need 1 <= s <= |A| and 1 <= t <= |B| (s={s}, t={t}, |A|={a_size}, |B|={b_size})"
        )));
    }
    let mut nbhd = vec![Vec::new(); b_size];
    for &(a, b) in edges {
        nbhd[b].push(a);
    }
    for l in &mut nbhd {
        l.sort_unstable();
        l.dedup();
    }
    let m: usize = nbhd.iter().map(Vec::len).sum();
    let hypothesis =
        (t as f64) * binomial_f64(a_size, s) < b_size as f64 * binomial_f64(m / b_size, s);
    let mut tally: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (b, l) in nbhd.iter().enumerate() {
        for_each_subset(l, s, |sub| tally.entry(sub.to_vec()).or_default().push(b));
    }
    let subsets_tallied = tally.len();
    let biclique = tally.into_iter().find(|(_, bs)| bs.len() >= t).map(|(a, bs)| Biclique {
        a,
        b: bs[..t].to_vec(),
    });
    Ok(BipartiteOutcome {
        biclique,
        hypothesis,
        subsets_tallied,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RpartiteOutcome {
    /// `A_1, ..., A_r` with `A_1 × ... × A_r ⊆ M`.
    pub blocks: Option<Vec<Vec<usize>>>,
    /// `|M| >= n^{r - 1/(4s)^{r-1}}` and `n >= 2^{(4s)^{r-1}}`.
    pub hypothesis: bool,
}

/// Blocks of sizes `s, ..., s, floor(sqrt n)` whose product lies in `M`.
pub fn kst_rpartite(n: usize, r: usize, tuples: &[Vec<usize>], s: usize) -> Result<RpartiteOutcome, FinderError> {
    kst_rpartite_with_last(n, r, tuples, s, isqrt(n).max(1))
}

/// As [`kst_rpartite`] with the size of the last block chosen by the caller.
pub fn kst_rpartite_with_last(
    n: usize,
    r: usize,
    tuples: &[Vec<usize>],
    s: usize,
    last: usize,
) -> Result<RpartiteOutcome, FinderError> {
    if r < 2 || s == 0 || last == 0 {
        return Err(FinderError::InvalidArgument(format!(
            "need r >= 2 and positive block sizes (r={r}, s={s}, last={last})"
        )));
    }
    let mut flat = Vec::with_capacity(tuples.len() * r);
    for (index, tup) in tuples.iter().enumerate() {
        if tup.len() != r {
            return Err(FinderError::TupleArity {
                index,
                expected: r,
                found: tup.len(),
            });
        }
        if let Some(&v) = tup.iter().find(|&&v| v >= n) {
            return Err(FinderError::InvalidArgument(format!("coordinate {v} outside 0..{n}")));
        }
        flat.extend(tup.iter().map(|&v| v as u32));
    }
    let exponent = (4.0 * s as f64).powi(r as i32 - 1);
    let hypothesis = (tuples.len() as f64) >= (n as f64).powf(r as f64 - 1.0 / exponent)
        && (n as f64).log2() >= exponent;
    let blocks = if r == 2 {
        let pairs: Vec<(usize, usize)> = tuples.iter().map(|p| (p[0], p[1])).collect();
        if s > n || last > n {
            None
        } else {
            kst_bipartite(n, n, &pairs, s, last)?.biclique.map(|b| vec![b.a, b.b])
        }
    } else {
        rpartite(r, &flat, s, last)
    };
    if let Some(bl) = &blocks {
        let members: std::collections::HashSet<&[usize]> = tuples.iter().map(Vec::as_slice).collect();
        let mut ok = true;
        product(bl, &mut Vec::new(), &mut |t| ok &= members.contains(t));
        if !ok {
            return Err(FinderError::InvalidArgument("internal: block product left M".into()));
        }
    }
    Ok(RpartiteOutcome { blocks, hypothesis })
}

fn product(blocks: &[Vec<usize>], prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if prefix.len() == blocks.len() {
        f(prefix);
        return;
    }
    for &v in &blocks[prefix.len()] {
        prefix.push(v);
        product(blocks, prefix, f);
        prefix.pop();
    }
}

/// Candidate s-subsets of the first class tried per level.
const CANDIDATES: usize = 64;

/// `flat` holds tuples of arity `r`. Splits off the first coordinate as one
/// class of a bipartite graph against the tails, takes s-subsets with the
/// largest common tail sets and recurses on those tails.
fn rpartite(r: usize, flat: &[u32], s: usize, last: usize) -> Option<Vec<Vec<usize>>> {
    if r == 1 {
        let mut vals: Vec<usize> = flat.iter().map(|&v| v as usize).collect();
        vals.sort_unstable();
        vals.dedup();
        return (vals.len() >= last).then(|| vec![vals[..last].to_vec()]);
    }
    let mut heads: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for tup in flat.chunks_exact(r) {
        heads.entry(&tup[1..]).or_default().push(tup[0] as usize);
    }
    let mut tails: Vec<(&[u32], Vec<usize>)> = heads.into_iter().collect();
    tails.sort_unstable();
    let mut tally: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, (_, hs)) in tails.iter_mut().enumerate() {
        hs.sort_unstable();
        hs.dedup();
        for_each_subset(hs, s, |sub| tally.entry(sub.to_vec()).or_default().push(i));
    }
    let need = s.pow(r as u32 - 2) * last;
    let mut cands: Vec<(Vec<usize>, Vec<usize>)> = tally.into_iter().filter(|(_, ts)| ts.len() >= need).collect();
    cands.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(&b.0)));
    for (head, ts) in cands.into_iter().take(CANDIDATES) {
        let sub: Vec<u32> = ts.iter().flat_map(|&i| tails[i].0.iter().copied()).collect();
        if let Some(mut rest) = rpartite(r - 1, &sub, s, last) {
            rest.insert(0, head);
            return Some(rest);
        }
    }
    None
}

/// `target` vertex-disjoint `K_4(s,s,s,t)`, each with its last class among
/// the non-expanding vertices (degree below `4 e^{3/4}`).
pub fn find_disjoint_4partite(
    g: &Hypergraph,
    s: usize,
    t: usize,
    target: usize,
    _cfg: &FinderConfig,
) -> Result<FinderReport, FinderError> {
    super::check_arity(g, 4)?;
    if s == 0 || t == 0 {
        return Err(FinderError::InvalidArgument("class sizes must be positive".into()));
    }
    let mut run = Run::new(format!("{target} x K4({s},{s},{s},{t})"));
    let (n, e) = (g.n(), g.edge_count());
    let promised = (e as f64 / n.max(1) as f64).powf(0.25) / 24.0;
    run.hypothesis_if(
        format!("e >= n^(4 - 1/216) and target <= (e/n)^(1/4)/24 = {promised:.3}"),
        (n as f64).powf(4.0 - 1.0 / 216.0),
        e,
        target as f64 <= promised,
    );
    let cut = 4.0 * (e as f64).powf(0.75);
    run.threshold(1, cut);
    let expanding: Vec<bool> = (0..n).map(|v| g.degree(v) as f64 >= cut).collect();
    run.expanding(expanding.iter().filter(|&&x| x).count());
    let pattern = complete_multipartite(&[s, s, s, t]);
    let mut used = vec![false; n];
    let mut copies = Vec::new();
    run.phase("4partite:kst");
    while copies.len() < target {
        let mut flat: Vec<u32> = Vec::new();
        let mut skipped = 0;
        for edge in g.edges() {
            if edge.iter().any(|&v| used[v]) || edge.iter().all(|&v| expanding[v]) {
                skipped += 1;
                continue;
            }
            for p in ORDERINGS {
                if !expanding[edge[p[3]]] {
                    flat.extend(p.iter().map(|&i| edge[i] as u32));
                }
            }
        }
        run.deleted("4partite:kst", skipped);
        run.steps(1);
        let Some(blocks) = rpartite(4, &flat, s, t) else {
            return Ok(run.exhausted(
                "4partite:kst",
                format!("found {} of {target} copies", copies.len()),
            ));
        };
        let map: Vec<usize> = blocks.concat();
        for &v in &map {
            used[v] = true;
        }
        copies.push(Embedding::new(pattern.clone(), map));
    }
    Ok(run.found(g, copies))
}

const ORDERINGS: [[usize; 4]; 24] = [
    [0, 1, 2, 3],
    [0, 1, 3, 2],
    [0, 2, 1, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [0, 3, 2, 1],
    [1, 0, 2, 3],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 2, 3, 0],
    [1, 3, 0, 2],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 0, 3, 1],
    [2, 1, 0, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [2, 3, 1, 0],
    [3, 0, 1, 2],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 1, 2, 0],
    [3, 2, 0, 1],
    [3, 2, 1, 0],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::subsets_of_range;

    #[test]
    fn complete_and_matching_bipartite() {
        let full: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
        let out = kst_bipartite(4, 4, &full, 2, 2).unwrap();
        assert!(out.hypothesis);
        assert_eq!(
            out.biclique,
            Some(Biclique {
                a: vec![0, 1],
                b: vec![0, 1]
            })
        );
        let matching: Vec<(usize, usize)> = (0..4).map(|i| (i, i)).collect();
        assert_eq!(kst_bipartite(4, 4, &matching, 2, 1).unwrap().biclique, None);
        assert!(matches!(
            kst_bipartite(2, 2, &[(0, 5)], 1, 1),
            Err(FinderError::NotBipartite(_))
        ));
    }

    #[test]
    fn full_product_blocks() {
        let n = 4;
        let tuples: Vec<Vec<usize>> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| vec![a, b, c])))
            .collect();
        let out = kst_rpartite(n, 3, &tuples, 1).unwrap();
        let blocks = out.blocks.unwrap();
        assert_eq!(blocks.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 2]);
        assert!(matches!(
            kst_rpartite(n, 3, &[vec![0, 1]], 1),
            Err(FinderError::TupleArity { index: 0, .. })
        ));
    }

    #[test]
    fn two_parts_match_bipartite() {
        let pairs: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 1), (1, 2), (3, 0)];
        let tuples: Vec<Vec<usize>> = pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        let via_r = kst_rpartite_with_last(4, 2, &tuples, 2, 2).unwrap().blocks.unwrap();
        let via_b = kst_bipartite(4, 4, &pairs, 2, 2).unwrap().biclique.unwrap();
        assert_eq!(via_r, vec![via_b.a, via_b.b]);
    }

    #[test]
    fn matching_gives_every_edge() {
        let g = Hypergraph::new(4, 12, [[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11]]).unwrap();
        let rep = find_disjoint_4partite(&g, 1, 1, 3, &FinderConfig::default()).unwrap();
        assert_eq!(rep.copies().len(), 3);
    }

    #[test]
    fn disjoint_complete_components() {
        let k8 = Hypergraph::new(4, 8, subsets_of_range(8, 4)).unwrap();
        let g = k8.disjoint_union(&k8);
        let rep = find_disjoint_4partite(&g, 1, 2, 2, &FinderConfig::default()).unwrap();
        assert_eq!(rep.copies().len(), 2);
        let rep = find_disjoint_4partite(&g, 1, 2, 3, &FinderConfig::default()).unwrap();
        assert!(!rep.is_found());
    }
}
