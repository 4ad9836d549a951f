//! Pattern grammar shared by the CLI and the table runner:
//! `sf:r,t,k`, `st:d1,...,d_{r-1}`, `k4p:s,s,s,t`, `kp:a1,...,ar`,
//! `matching:k`, `star:k`, `edge:r`.

use std::fmt;
use std::str::FromStr;

use super::HarnessError;
use crate::constructions::{complete_multipartite, star_pattern, sunflower_pattern};
use crate::hypergraph::Hypergraph;
use crate::shapes::{StarShape, SunflowerShape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSpec {
    Sunflower(SunflowerShape),
    Star(StarShape),
    /// Complete r-partite r-graph with the given class sizes.
    Multipartite(Vec<usize>),
    Edge(usize),
}

impl PatternSpec {
    pub fn hypergraph(&self) -> Hypergraph {
        match self {
            PatternSpec::Sunflower(s) => sunflower_pattern(*s),
            PatternSpec::Star(s) => star_pattern(s),
            PatternSpec::Multipartite(sizes) => complete_multipartite(sizes),
            PatternSpec::Edge(r) => complete_multipartite(&vec![1; *r]),
        }
    }

    pub fn r(&self) -> usize {
        match self {
            PatternSpec::Sunflower(s) => s.r,
            PatternSpec::Star(s) => s.r(),
            PatternSpec::Multipartite(sizes) => sizes.len(),
            PatternSpec::Edge(r) => *r,
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Sunflower(s) => write!(f, "{s}"),
            PatternSpec::Star(s) => write!(f, "{s}"),
            PatternSpec::Multipartite(sizes) => {
                let parts: Vec<String> = sizes.iter().map(ToString::to_string).collect();
                write!(f, "K{}({})", sizes.len(), parts.join(","))
            }
            PatternSpec::Edge(r) => write!(f, "edge{r}"),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

pub fn parse_pattern(text: &str) -> Result<PatternSpec, HarnessError> {
    let bad = || HarnessError::Pattern(text.to_string());
    let (kind, args) = text.trim().split_once(':').ok_or_else(bad)?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|a| a.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let sunflower = |r, t, k| SunflowerShape::new(r, t, k).map(PatternSpec::Sunflower).map_err(|_| bad());
    match (kind.trim(), nums.as_slice()) {
        ("sf", &[r, t, k]) => sunflower(r, t, k),
        ("st", ds) if !ds.is_empty() => StarShape::new(ds.to_vec()).map(PatternSpec::Star).map_err(|_| bad()),
        ("k4p", &[a, b, c, d]) if a.min(b).min(c).min(d) > 0 => Ok(PatternSpec::Multipartite(vec![a, b, c, d])),
        ("kp", sizes) if sizes.len() >= 2 && sizes.iter().all(|&x| x > 0) => Ok(PatternSpec::Multipartite(sizes.to_vec())),
        ("matching", &[k]) => sunflower(2, 0, k),
        ("star", &[k]) => sunflower(2, 1, k),
        ("edge", &[r]) if r > 0 => Ok(PatternSpec::Edge(r)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_pattern("sf:3,1,2").unwrap().hypergraph().edge_count(), 2);
        let st = parse_pattern("st:2,2,1").unwrap();
        assert_eq!((st.r(), st.hypergraph().edge_count()), (4, 4));
        let k = parse_pattern("k4p:1,1,1,2").unwrap();
        assert_eq!((k.r(), k.hypergraph().n(), k.hypergraph().edge_count()), (4, 5, 2));
        assert_eq!(parse_pattern("star:3").unwrap().hypergraph().edge_count(), 3);
        assert_eq!(parse_pattern("matching:2").unwrap().hypergraph().n(), 4);
        assert_eq!(parse_pattern("edge:3").unwrap().hypergraph().edge_count(), 1);
        for bad in ["sf:3,3,2", "st:", "k4p:1,1,1", "nope:1", "sf3,1,2", "edge:0"] {
            assert!(parse_pattern(bad).is_err(), "{bad}");
        }
    }
}
