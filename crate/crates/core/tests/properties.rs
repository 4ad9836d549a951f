use proptest::prelude::*;

use unavoid_core::constructions::{random_hypergraph, sf_free, sf_free_edge_bound};
use unavoid_core::finders::{kst_bipartite, kst_rpartite};
use unavoid_core::harness::{derive_parameters, parse_pattern, Regime};
use unavoid_core::oracles::{ex_exact, ex_exact_dfs, max_sunflower_exact, SearchBudget};
use unavoid_core::util::binomial;
use unavoid_core::{Hypergraph, SunflowerShape};

fn graph_pattern(bits: u8) -> Option<Hypergraph> {
    // edges of K4 selected by the low six bits
    let pairs = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let edges: Vec<[usize; 2]> = (0..6).filter(|i| bits >> i & 1 == 1).map(|i| pairs[i]).collect();
    (!edges.is_empty()).then(|| Hypergraph::new(2, 4, edges).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn turan_solvers_agree_on_small_graph_patterns(bits in 1u8..64, n in 2usize..7) {
        let p = graph_pattern(bits).unwrap();
        let a = ex_exact(n, &p, SearchBudget::unlimited()).unwrap();
        let b = ex_exact_dfs(n, &p, SearchBudget::unlimited()).unwrap();
        prop_assert_eq!(a.value(), b.value());
        prop_assert_eq!(a.witness.edge_count(), a.lower);
        prop_assert_eq!(b.witness.edge_count(), b.lower);
    }

    #[test]
    fn sunflower_free_constructions_hold(
        shape in prop::sample::select(vec![(3usize, 1usize), (3, 2), (4, 1), (4, 3)]),
        k in 2usize..4,
        extra in 0usize..6,
        seed in any::<u64>(),
    ) {
        let (r, t) = shape;
        let n = 2 * k + extra;
        let sh = SunflowerShape::new(r, t, k).unwrap();
        let g = sf_free(sh, n, seed).unwrap();
        prop_assert!(g.edge_count() as f64 + 1e-9 >= sf_free_edge_bound(sh, n).unwrap());
        let best = max_sunflower_exact(&g, t, SearchBudget::unlimited()).unwrap();
        prop_assert!(!best.exhausted);
        prop_assert!(best.k < k, "{} petals in {}", best.k, sh);
    }

    #[test]
    fn bicliques_are_real(a in 2usize..7, b in 2usize..7, density in 0.2f64..1.0, seed in any::<u64>(), s in 1usize..3, t in 1usize..3) {
        prop_assume!(s <= a && t <= b);
        let mut edges = Vec::new();
        let mut x = seed | 1;
        for i in 0..a {
            for j in 0..b {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                if (x % 1000) as f64 / 1000.0 < density {
                    edges.push((i, j));
                }
            }
        }
        let out = kst_bipartite(a, b, &edges, s, t).unwrap();
        if let Some(bc) = &out.biclique {
            prop_assert_eq!(bc.a.len(), s);
            prop_assert_eq!(bc.b.len(), t);
            for &u in &bc.a {
                for &v in &bc.b {
                    prop_assert!(edges.contains(&(u, v)));
                }
            }
        }
        if out.hypothesis {
            prop_assert!(out.biclique.is_some());
        }
    }

    #[test]
    fn rpartite_blocks_lie_inside_the_tuples(n in 4usize..8, e in 1usize..30, seed in any::<u64>()) {
        let g = random_hypergraph(3, n, e.min(binomial(n, 3) as usize), seed).unwrap();
        let tuples: Vec<Vec<usize>> = g.edges().to_vec();
        let out = kst_rpartite(n, 3, &tuples, 1).unwrap();
        if let Some(blocks) = out.blocks {
            let mut idx = vec![0; blocks.len()];
            loop {
                let tuple: Vec<usize> = idx.iter().zip(&blocks).map(|(&i, b)| b[i]).collect();
                prop_assert!(tuples.contains(&tuple));
                let mut c = 0;
                while c < idx.len() && idx[c] + 1 == blocks[c].len() {
                    idx[c] = 0;
                    c += 1;
                }
                if c == idx.len() {
                    break;
                }
                idx[c] += 1;
            }
        }
    }

    #[test]
    fn patterns_have_the_stated_edge_counts(r in 2usize..5, t in 0usize..4, k in 1usize..5, ds in prop::collection::vec(1usize..4, 1..4)) {
        prop_assume!(t < r);
        let sf = parse_pattern(&format!("sf:{r},{t},{k}")).unwrap();
        prop_assert_eq!(sf.hypergraph().edge_count(), k);
        prop_assert_eq!(sf.r(), r);
        let text = ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        let st = parse_pattern(&format!("st:{text}")).unwrap();
        prop_assert_eq!(st.hypergraph().edge_count(), ds.iter().product::<usize>());
        prop_assert_eq!(st.r(), ds.len() + 1);
    }

    #[test]
    fn regimes_partition_the_edge_range(n in 8usize..400, frac in 0.0f64..1.0) {
        let top = binomial(n, 4) as f64;
        let e = (1.0 + frac * (top - 2.0)).floor().max(1.0);
        let regime = Regime::classify(n, e).unwrap();
        let (lo, hi) = regime.bounds(n);
        prop_assert!(regime == Regime::Sparse || e > lo);
        prop_assert!(matches!(regime, Regime::Dense | Regime::VeryDense) || e <= hi);
        prop_assert!(derive_parameters(regime, n, e).is_ok());
    }
}
