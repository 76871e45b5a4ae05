//! PACE `.gr` format: a `p tw n m` header, one `u v` line per edge with
//! 1-based ids, `c` comment lines.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_gr(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "p" {
            if graph.is_some() {
                return Err(Error::parse(line_no, "second problem line"));
            }
            if fields.len() != 4 || fields[1] != "tw" {
                return Err(Error::parse(line_no, "expected `p tw <n> <m>`"));
            }
            let n = parse_num(fields[2], line_no)?;
            declared_m = parse_num(fields[3], line_no)?;
            graph = Some(Graph::new(n));
            continue;
        }
        let g = graph
            .as_mut()
            .ok_or_else(|| Error::parse(line_no, "edge before the problem line"))?;
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "expected two vertex ids"));
        }
        let u = parse_num(fields[0], line_no)?;
        let v = parse_num(fields[1], line_no)?;
        if u == 0 || v == 0 || u > g.n() || v > g.n() {
            return Err(Error::parse(line_no, format!("vertex id out of range 1..={}", g.n())));
        }
        g.add_edge(u - 1, v - 1)
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
    }
    let g = graph.ok_or_else(|| Error::parse(0, "missing `p tw` line"))?;
    if g.m() != declared_m {
        return Err(Error::parse(
            0,
            format!("header declares {declared_m} edges, found {}", g.m()),
        ));
    }
    Ok(g)
}

pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

fn parse_num(field: &str, line: usize) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("`{field}` is not a non-negative integer")))
}
