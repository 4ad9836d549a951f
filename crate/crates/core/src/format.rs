//! The `.hg` text format.
//!
//! ```text
//! r=3 n=7
//! # comment
//! 0 1 2
//! 0 3 4
//! ```

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::hypergraph::Hypergraph;

/// Header, then one edge per line in lexicographic order.
pub fn serialize(g: &Hypergraph) -> String {
    let mut out = format!("r={} n={}\n", g.r(), g.n());
    for e in g.edges() {
        let line: Vec<String> = e.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse(text: &str) -> Result<Hypergraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((r, n)) = header else {
            header = Some(parse_header(line).map_err(|c| ParseError::at(line_no, c))?);
            continue;
        };
        let edge: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| ParseError::at(line_no, format!("`{tok}` is not a vertex index")))
            })
            .collect::<Result<_, _>>()?;
        if edge.len() != r {
            return Err(ParseError::at(
                line_no,
                format!("edge has {} vertices, expected {r}", edge.len()),
            ));
        }
        if let Some(&v) = edge.iter().find(|&&v| v >= n) {
            return Err(ParseError::at(line_no, format!("vertex {v} outside 0..{n}")));
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(ParseError::at(line_no, "edge repeats a vertex"));
        }
        edges.push(sorted);
    }
    let (r, n) = header.ok_or(ParseError::MissingHeader)?;
    if r == 0 {
        return Err(ParseError::at(1, "uniformity must be at least 1"));
    }
    Ok(Hypergraph::from_sorted_edges(r, n, edges))
}

fn parse_header(line: &str) -> Result<(usize, usize), String> {
    let mut r = None;
    let mut n = None;
    for tok in line.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| format!("expected header `r=<int> n=<int>`, found `{line}`"))?;
        let value: usize = value.parse().map_err(|_| format!("header value `{value}` is not an integer"))?;
        match key {
            "r" => r = Some(value),
            "n" => n = Some(value),
            other => return Err(format!("unknown header key `{other}`")),
        }
    }
    match (r, n) {
        (Some(r), Some(n)) => Ok((r, n)),
        _ => Err("header must set both r and n".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_determinism() {
        let a = Hypergraph::new(3, 6, [[3, 4, 5], [0, 1, 2], [0, 2, 4]]).unwrap();
        let b = Hypergraph::new(3, 6, [[0, 2, 4], [5, 4, 3], [2, 1, 0]]).unwrap();
        assert_eq!(serialize(&a), serialize(&b));
        assert_eq!(serialize(&a), "r=3 n=6\n0 1 2\n0 2 4\n3 4 5\n");
        assert_eq!(parse(&serialize(&a)).unwrap(), a);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse("# a triangle\n\nr=2 n=3\n0 1\n# mid\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse("r=3 n=7\n0 1 2\n0 1 2 3\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Malformed {
                line: 3,
                cause: "edge has 4 vertices, expected 3".into()
            }
        );
        assert!(matches!(parse("r=3 n=7\n0 1 9\n"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(parse("r=3 n=7\n0 x 2\n"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(parse("3 7\n"), Err(ParseError::Malformed { line: 1, .. })));
        assert_eq!(parse("# nothing\n"), Err(ParseError::MissingHeader));
    }
}
