use super::FinderError;
use crate::util::binomial_f64;

/// `p ln n / ln(C(n,r) / e)`: any (n,e)-unavoidable r-graph on p vertices has
/// fewer edges than this. The ratio does not depend on the log base.
pub fn unavoidable_edge_bound(p: usize, n: usize, r: usize, e: usize) -> Result<f64, FinderError> {
    if p == 0 || r == 0 || n < 2 {
        return Err(FinderError::InvalidArgument(format!(
            "need p, r positive and n >= 2 (p={p}, n={n}, r={r})"
        )));
    }
    let total = binomial_f64(n, r);
    if e == 0 || e as f64 >= total {
        return Err(FinderError::InvalidArgument(format!("edge count {e} outside 1..C({n},{r})")));
    }
    Ok(p as f64 * (n as f64).ln() / (total / e as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::binomial;

    #[test]
    fn arithmetic_identity() {
        // n = 9, r = 2: C = 36 and e = 12 gives ln 9 / ln 3 = 2
        assert!((unavoidable_edge_bound(12, 9, 2, 12).unwrap() - 24.0).abs() < 1e-9);
    }

    #[test]
    fn monotone_and_rejects_full() {
        let (n, r) = (10, 3);
        let total = binomial(n, r) as usize;
        let mut prev = 0.0;
        for e in 1..total {
            let b = unavoidable_edge_bound(5, n, r, e).unwrap();
            assert!(b > prev);
            prev = b;
        }
        assert!(unavoidable_edge_bound(5, n, r, total).is_err());
        assert!(unavoidable_edge_bound(5, n, r, 0).is_err());
    }

    #[test]
    fn single_edge_consistency() {
        // e = C(n,r)/n gives bound r
        let (n, r) = (10, 3);
        let e = binomial(n, r) as usize / n;
        assert!((unavoidable_edge_bound(r, n, r, e).unwrap() - r as f64).abs() < 1e-9);
    }
}
