//! Plain-text graph format.
//!
//! ```text
//! n=<count>
//! <u> <v>
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Edges may be given in
//! either orientation; the writer emits `u < v` sorted lexicographically.

use std::fmt::Write as _;

use super::{Graph, GraphError};

pub fn read_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        message: "missing `n=<count>` header".into(),
    })?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| GraphError::Parse {
            line: header_line,
            message: format!("expected `n=<count>`, found `{header}`"),
        })?;

    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, content) in lines {
        let parse_err = |message: String| GraphError::Parse { line, message };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(format!("expected `<u> <v>`, found `{content}`")));
        }
        let mut ends = [0usize; 2];
        for (slot, field) in ends.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| parse_err(format!("invalid vertex id `{field}`")))?;
            if *slot >= n {
                return Err(parse_err(format!("vertex {slot} out of range (n={n})")));
            }
        }
        let [u, v] = ends;
        if u == v {
            return Err(parse_err(format!("self-loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(parse_err(format!("duplicate edge {} {}", key.0, key.1)));
        }
        edges.push(key);
    }
    Graph::from_edges(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}
