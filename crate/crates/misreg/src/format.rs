//! Text graph formats.
//!
//! * DIMACS `.col`: a `p edge <n> <m>` header followed by `e <u> <v>` lines,
//!   vertices numbered from 1. Lines starting with `c` are comments.
//! * Edge list: one `u v` pair per line, numbered from 0. A `# n=<n>` line
//!   declares the vertex count when trailing vertices are isolated; other
//!   `#` lines are comments.
//!
//! Serialization sorts edges lexicographically, so equal graphs produce
//! identical bytes. Duplicate edges on input are dropped with a warning.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use misreg_core::{Graph, GraphBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[value(name = "dimacs-col")]
    DimacsCol,
    #[value(name = "edge-list")]
    EdgeList,
}

impl Format {
    /// `.col`, `.dimacs` and `.clq` files are DIMACS, anything else an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("col" | "dimacs" | "clq") => Format::DimacsCol,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        source: misreg_core::Error,
    },
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("input is not valid UTF-8")]
    Encoding,
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T, FormatError> {
    token
        .ok_or_else(|| malformed(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| malformed(line, format!("{what} is not a non-negative integer")))
}

pub fn parse_graph(bytes: &[u8], format: Format) -> Result<Graph, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|_| FormatError::Encoding)?;
    match format {
        Format::DimacsCol => parse_dimacs(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

fn parse_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut builder: Option<(GraphBuilder, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some(t) if t.starts_with('c') => {}
            Some("p") => {
                if builder.is_some() {
                    return Err(malformed(line, "second problem line"));
                }
                match tokens.next() {
                    Some("edge" | "edges" | "col") => {}
                    _ => return Err(malformed(line, "expected `p edge <n> <m>`")),
                }
                let n: usize = number(tokens.next(), line, "vertex count")?;
                let m: usize = number(tokens.next(), line, "edge count")?;
                builder = Some((GraphBuilder::new(n), m));
            }
            Some("e") => {
                let (b, _) = builder.as_mut().ok_or(FormatError::MissingHeader)?;
                let u: usize = number(tokens.next(), line, "endpoint")?;
                let v: usize = number(tokens.next(), line, "endpoint")?;
                let n = b.vertex_count();
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(malformed(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                b.add_edge(u - 1, v - 1)
                    .map_err(|source| FormatError::Graph { line, source })?;
            }
            Some(other) => return Err(malformed(line, format!("unknown line type `{other}`"))),
        }
    }
    let (b, declared) = builder.ok_or(FormatError::MissingHeader)?;
    warn_duplicates(&b);
    let g = b.build();
    if g.edge_count() != declared {
        log::warn!(
            "header declares {declared} edges, found {} distinct",
            g.edge_count()
        );
    }
    Ok(g)
}

fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("n=") {
                if declared.is_some() || !edges.is_empty() {
                    return Err(malformed(line, "`# n=` must come once, before any edge"));
                }
                declared = Some(number(Some(n.trim()), line, "vertex count")?);
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let u: usize = number(tokens.next(), line, "endpoint")?;
        let v: usize = number(tokens.next(), line, "endpoint")?;
        if tokens.next().is_some() {
            return Err(malformed(line, "expected exactly two vertex ids"));
        }
        edges.push((line, u, v));
    }
    let implied = edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(implied);
    let mut b = GraphBuilder::new(n);
    for (line, u, v) in edges {
        b.add_edge(u, v)
            .map_err(|source| FormatError::Graph { line, source })?;
    }
    warn_duplicates(&b);
    Ok(b.build())
}

fn warn_duplicates(b: &GraphBuilder) {
    if b.duplicate_count() > 0 {
        log::warn!("dropped {} duplicate edge(s)", b.duplicate_count());
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::DimacsCol => {
            let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "e {} {}", u + 1, v + 1);
            }
        }
        Format::EdgeList => {
            let implied = g.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
            if implied != g.vertex_count() {
                let _ = writeln!(out, "# n={}", g.vertex_count());
            }
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_as_edge_list() {
        let text = serialize_graph(&Graph::complete(3), Format::EdgeList);
        assert_eq!(text, "0 1\n0 2\n1 2\n");
    }

    #[test]
    fn dimacs_examples() {
        let g = parse_graph(b"c demo\np edge 3 2\ne 1 2\ne 2 3\n", Format::DimacsCol).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(serialize_graph(&g, Format::DimacsCol), "p edge 3 2\ne 1 2\ne 2 3\n");
        assert!(matches!(
            parse_graph(b"p edge 2 1\ne 1 3\n", Format::DimacsCol),
            Err(FormatError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph(b"e 1 2\n", Format::DimacsCol),
            Err(FormatError::MissingHeader)
        ));
        assert!(parse_graph(b"p edge 2 1\ne 1 1\n", Format::DimacsCol).is_err());
        assert!(parse_graph(b"p edge x 1\n", Format::DimacsCol).is_err());
        assert!(parse_graph(b"p edge 2 1\nq 1 2\n", Format::DimacsCol).is_err());
    }

    #[test]
    fn duplicates_are_dropped() {
        let g = parse_graph(b"p edge 2 2\ne 1 2\ne 2 1\n", Format::DimacsCol).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = parse_graph(b"0 1\n1 0\n0 1\n", Format::EdgeList).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_header() {
        let g = parse_graph(b"# n=5\n0 1\n", Format::EdgeList).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 1));
        assert_eq!(serialize_graph(&g, Format::EdgeList), "# n=5\n0 1\n");
        assert_eq!(serialize_graph(&Graph::empty(0), Format::EdgeList), "");
        assert_eq!(serialize_graph(&Graph::empty(1), Format::EdgeList), "# n=1\n");
        assert!(parse_graph(b"# n=2\n0 2\n", Format::EdgeList).is_err());
        assert!(parse_graph(b"0 1 2\n", Format::EdgeList).is_err());
        assert!(parse_graph(b"0 -1\n", Format::EdgeList).is_err());
        assert!(parse_graph(b"0 1\n# n=4\n", Format::EdgeList).is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(Format::from_path(Path::new("a/b.col")), Format::DimacsCol);
        assert_eq!(Format::from_path(Path::new("b.txt")), Format::EdgeList);
        assert_eq!(Format::from_path(Path::new("b")), Format::EdgeList);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..30).prop_flat_map(|n| {
            let pairs = if n < 2 { 0 } else { 60 };
            proptest::collection::vec((0..n.max(1), 0..n.max(1)), 0..=pairs).prop_map(move |es| {
                Graph::from_edges(n, es.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip(g in arb_graph()) {
            for format in [Format::DimacsCol, Format::EdgeList] {
                let text = serialize_graph(&g, format);
                let back = parse_graph(text.as_bytes(), format).unwrap();
                prop_assert_eq!(&back, &g);
                prop_assert_eq!(serialize_graph(&back, format), text);
            }
        }
    }
}
