use crate::hypergraph::Hypergraph;
use crate::shapes::{Shape, StarShape, SunflowerShape};

/// Kernel `0..t`, then the petals as consecutive blocks of `r - t` vertices.
pub fn sunflower_pattern(shape: SunflowerShape) -> Hypergraph {
    let SunflowerShape { r, t, k } = shape;
    let petal = r - t;
    let edges = (0..k)
        .map(|i| (0..t).chain(t + i * petal..t + (i + 1) * petal).collect())
        .collect();
    Hypergraph::from_sorted_edges(r, shape.vertex_count(), edges)
}

/// Layered labelling (see [`StarShape`]); edges are the root-to-leaf paths.
pub fn star_pattern(shape: &StarShape) -> Hypergraph {
    let off = shape.layer_offsets();
    let depth = shape.degrees.len();
    let leaves = shape.edge_count();
    let edges = (0..leaves)
        .map(|leaf| {
            let mut e = vec![0; depth + 1];
            let mut j = leaf;
            for layer in (1..=depth).rev() {
                e[layer] = off[layer] + j;
                j /= shape.degrees[layer - 1];
            }
            e
        })
        .collect();
    Hypergraph::from_sorted_edges(shape.r(), shape.vertex_count(), edges)
}

pub fn pattern(shape: impl Into<Shape>) -> Hypergraph {
    match shape.into() {
        Shape::Sunflower(s) => sunflower_pattern(s),
        Shape::Star(s) => star_pattern(&s),
    }
}

/// All transversals of consecutive parts of the given sizes.
pub fn complete_multipartite(sizes: &[usize]) -> Hypergraph {
    assert!(!sizes.is_empty(), "need at least one part");
    let mut starts = vec![0];
    for s in sizes {
        starts.push(starts.last().unwrap() + s);
    }
    let mut edges: Vec<Vec<usize>> = vec![Vec::new()];
    for (i, &s) in sizes.iter().enumerate() {
        let start = starts[i];
        edges = edges
            .into_iter()
            .flat_map(|e| {
                (0..s).map(move |j| {
                    let mut f = e.clone();
                    f.push(start + j);
                    f
                })
            })
            .collect();
    }
    Hypergraph::from_sorted_edges(sizes.len(), starts[sizes.len()], edges)
}

/// The `(k-1)^r` transversals of `r` blocks of size `k - 1`: a family of
/// r-sets with no sunflower of k petals.
pub fn er_lower(r: usize, k: usize) -> Hypergraph {
    assert!(r >= 1 && k >= 2, "need r >= 1 and k >= 2");
    complete_multipartite(&vec![k - 1; r])
}
