//! The shared text formats.
//!
//! Polytopes:
//!
//! ```text
//! begin h              begin v
//! dim 3                dim 3
//! <= -5 4 0 | 0        vertex 8 10 6
//! =   0 3 -5 | 0       ray 0 0 1
//! end                  lineality 1 0 0
//!                      end
//! ```
//!
//! Entries are rationals (`p`, `p/q`, or exact decimals), whitespace
//! separated; `#` starts a comment. `>=` rows are accepted on input and
//! normalized to `<=`. An empty set is written as a V-file containing the
//! single marker line `empty`. Maps and coupling relations have analogous
//! `begin map` / `begin graph` blocks.

use crate::bridge::GraphL;
use crate::ef::LinearMap;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::poly::{Generators, HPolyhedron, LinRow, Polyhedron, Rel, VPolyhedron};
use crate::rat::Rat;

/// A parsed polytope file: outer description or generator description.
#[derive(Clone, Debug)]
pub enum PolyFile {
    H(HPolyhedron),
    V(Generators),
}

impl PolyFile {
    pub fn dim(&self) -> usize {
        match self {
            PolyFile::H(h) => h.dim,
            PolyFile::V(g) => g.dim(),
        }
    }

    /// View as a set in either representation; an explicit empty generator
    /// file becomes the canonical empty outer description.
    pub fn into_polyhedron(self) -> Polyhedron {
        match self {
            PolyFile::H(h) => Polyhedron::H(h),
            PolyFile::V(Generators::NonEmpty(v)) => Polyhedron::V(v),
            PolyFile::V(Generators::Empty { dim }) => Polyhedron::H(HPolyhedron::empty(dim)),
        }
    }
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
        }
    }

    /// Next non-blank line with comments stripped, as (1-based number, text).
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.iter.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((idx + 1, line));
            }
        }
        None
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_rat(line: usize, token: &str) -> Result<Rat> {
    token
        .parse()
        .map_err(|_| err(line, format!("invalid rational literal {token:?}")))
}

fn parse_rat_list(line: usize, tokens: &[&str], expected: usize, what: &str) -> Result<Vec<Rat>> {
    if tokens.len() != expected {
        return Err(err(
            line,
            format!("{what} needs {expected} entries, got {}", tokens.len()),
        ));
    }
    tokens.iter().map(|t| parse_rat(line, t)).collect()
}

fn expect_header<'a>(lines: &mut Lines<'a>, text: &str) -> Result<(usize, Vec<&'a str>)> {
    let Some((no, line)) = lines.next_content() else {
        return Err(err(0, format!("missing `begin {text}` header")));
    };
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.first() != Some(&"begin") || tokens.get(1) != Some(&text) {
        return Err(err(no, format!("expected `begin {text}`, found {line:?}")));
    }
    Ok((no, tokens))
}

fn expect_dim(lines: &mut Lines<'_>, keyword: &str, count: usize) -> Result<(usize, Vec<usize>)> {
    let Some((no, line)) = lines.next_content() else {
        return Err(err(0, format!("missing `{keyword}` line")));
    };
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.first() != Some(&keyword) || tokens.len() != count + 1 {
        return Err(err(
            no,
            format!("expected `{keyword}` with {count} value(s), found {line:?}"),
        ));
    }
    let values = tokens[1..]
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| err(no, format!("invalid count {t:?}")))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok((no, values))
}

/// Parse a polytope file in either representation.
pub fn parse_polyhedron(text: &str) -> Result<PolyFile> {
    let mut probe = Lines::new(text);
    let Some((no, first)) = probe.next_content() else {
        return Err(err(0, "empty input"));
    };
    let tokens: Vec<&str> = first.split_whitespace().collect();
    match (tokens.first(), tokens.get(1)) {
        (Some(&"begin"), Some(&"h")) => parse_h(text).map(PolyFile::H),
        (Some(&"begin"), Some(&"v")) => parse_v(text).map(PolyFile::V),
        _ => Err(err(
            no,
            format!("expected `begin h` or `begin v`, found {first:?}"),
        )),
    }
}

/// Parse an outer-description file.
pub fn parse_h(text: &str) -> Result<HPolyhedron> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "h")?;
    let (_, dims) = expect_dim(&mut lines, "dim", 1)?;
    let dim = dims[0];
    let mut rows = Vec::new();
    loop {
        let Some((no, line)) = lines.next_content() else {
            return Err(err(0, "missing `end`"));
        };
        if line == "end" {
            break;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (rel, negate) = match tokens.first() {
            Some(&"<=") => (Rel::Le, false),
            Some(&">=") => (Rel::Le, true),
            Some(&"=") => (Rel::Eq, false),
            _ => {
                return Err(err(
                    no,
                    format!("row must start with `<=`, `>=`, or `=`: {line:?}"),
                ))
            }
        };
        let Some(bar) = tokens.iter().position(|&t| t == "|") else {
            return Err(err(no, "row is missing the `|` separator"));
        };
        let coeffs = parse_rat_list(no, &tokens[1..bar], dim, "coefficient list")?;
        if tokens.len() != bar + 2 {
            return Err(err(no, "expected exactly one entry after `|`"));
        }
        let rhs = parse_rat(no, tokens[bar + 1])?;
        let row = if negate {
            LinRow {
                coeffs: coeffs.iter().map(|c| -c).collect(),
                rel,
                rhs: -rhs,
            }
        } else {
            LinRow { coeffs, rel, rhs }
        };
        rows.push(row);
    }
    HPolyhedron::new(dim, rows)
}

/// Parse a generator-description file (`empty` marks the empty set).
pub fn parse_v(text: &str) -> Result<Generators> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "v")?;
    let (_, dims) = expect_dim(&mut lines, "dim", 1)?;
    let dim = dims[0];
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    let mut lineality = Vec::new();
    let mut empty = false;
    loop {
        let Some((no, line)) = lines.next_content() else {
            return Err(err(0, "missing `end`"));
        };
        if line == "end" {
            break;
        }
        if line == "empty" {
            empty = true;
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let target = match tokens.first() {
            Some(&"vertex") => &mut vertices,
            Some(&"ray") => &mut rays,
            Some(&"lineality") => &mut lineality,
            _ => {
                return Err(err(
                    no,
                    format!("generator must start with `vertex`, `ray`, or `lineality`: {line:?}"),
                ))
            }
        };
        target.push(parse_rat_list(no, &tokens[1..], dim, "generator")?);
    }
    if empty {
        if !vertices.is_empty() || !rays.is_empty() || !lineality.is_empty() {
            return Err(err(0, "`empty` cannot be combined with generators"));
        }
        return Ok(Generators::Empty { dim });
    }
    if vertices.is_empty() {
        return Err(err(
            0,
            "a nonempty generator file needs at least one vertex",
        ));
    }
    Ok(Generators::NonEmpty(VPolyhedron::new(
        dim, vertices, rays, lineality,
    )?))
}

fn join(values: &[Rat]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_h(h: &HPolyhedron) -> String {
    let mut out = String::from("begin h\n");
    out.push_str(&format!("dim {}\n", h.dim));
    for row in &h.rows {
        let rel = match row.rel {
            Rel::Le => "<=",
            Rel::Eq => "=",
        };
        out.push_str(&format!("{} {} | {}\n", rel, join(&row.coeffs), row.rhs));
    }
    out.push_str("end\n");
    out
}

pub fn write_v(g: &Generators) -> String {
    let mut out = String::from("begin v\n");
    out.push_str(&format!("dim {}\n", g.dim()));
    match g {
        Generators::Empty { .. } => out.push_str("empty\n"),
        Generators::NonEmpty(v) => {
            for vertex in &v.vertices {
                out.push_str(&format!("vertex {}\n", join(vertex)));
            }
            for ray in &v.rays {
                out.push_str(&format!("ray {}\n", join(ray)));
            }
            for line in &v.lineality {
                out.push_str(&format!("lineality {}\n", join(line)));
            }
        }
    }
    out.push_str("end\n");
    out
}

/// Parse a map file: `begin map / dims <target> <source> / row ... /
/// offset ... (optional) / end`.
pub fn parse_map(text: &str) -> Result<LinearMap> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "map")?;
    let (_, dims) = expect_dim(&mut lines, "dims", 2)?;
    let (target, source) = (dims[0], dims[1]);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut offset: Option<Vec<Rat>> = None;
    loop {
        let Some((no, line)) = lines.next_content() else {
            return Err(err(0, "missing `end`"));
        };
        if line == "end" {
            break;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            Some(&"row") => rows.push(parse_rat_list(no, &tokens[1..], source, "map row")?),
            Some(&"offset") => offset = Some(parse_rat_list(no, &tokens[1..], target, "offset")?),
            _ => {
                return Err(err(
                    no,
                    format!("expected `row` or `offset`, found {line:?}"),
                ))
            }
        }
    }
    if rows.len() != target {
        return Err(err(
            0,
            format!("map declares {target} rows but lists {}", rows.len()),
        ));
    }
    let matrix = RatMatrix::from_rows(rows).expect("rows checked against source dim");
    match offset {
        Some(off) => LinearMap::affine(matrix, off),
        None => Ok(LinearMap::linear(matrix)),
    }
}

pub fn write_map(map: &LinearMap) -> String {
    let mut out = String::from("begin map\n");
    out.push_str(&format!("dims {} {}\n", map.target_dim(), map.source_dim()));
    for i in 0..map.target_dim() {
        out.push_str(&format!("row {}\n", join(map.matrix.row(i))));
    }
    if let Some(off) = &map.offset {
        out.push_str(&format!("offset {}\n", join(off)));
    }
    out.push_str("end\n");
    out
}

/// Parse a coupling-relation file: `begin graph / dims <m> <p> <q> /
/// B-row ... / C-row ... / b ... / end`.
pub fn parse_graph(text: &str) -> Result<GraphL> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "graph")?;
    let (_, dims) = expect_dim(&mut lines, "dims", 3)?;
    let (m, p, q) = (dims[0], dims[1], dims[2]);
    let mut x_rows: Vec<Vec<Rat>> = Vec::new();
    let mut y_rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Option<Vec<Rat>> = None;
    loop {
        let Some((no, line)) = lines.next_content() else {
            return Err(err(0, "missing `end`"));
        };
        if line == "end" {
            break;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            Some(&"B-row") => x_rows.push(parse_rat_list(no, &tokens[1..], p, "B-row")?),
            Some(&"C-row") => y_rows.push(parse_rat_list(no, &tokens[1..], q, "C-row")?),
            Some(&"b") => rhs = Some(parse_rat_list(no, &tokens[1..], m, "b")?),
            _ => {
                return Err(err(
                    no,
                    format!("expected `B-row`, `C-row`, or `b`, found {line:?}"),
                ))
            }
        }
    }
    if x_rows.len() != m || y_rows.len() != m {
        return Err(err(
            0,
            format!(
                "relation declares {m} rows but lists {} B-rows and {} C-rows",
                x_rows.len(),
                y_rows.len()
            ),
        ));
    }
    let Some(rhs) = rhs else {
        return Err(err(0, "missing `b` line"));
    };
    GraphL::new(
        RatMatrix::from_rows(x_rows).expect("checked width"),
        RatMatrix::from_rows(y_rows).expect("checked width"),
        rhs,
    )
}

pub fn write_graph(l: &GraphL) -> String {
    let mut out = String::from("begin graph\n");
    out.push_str(&format!(
        "dims {} {} {}\n",
        l.rhs.len(),
        l.x_dim(),
        l.y_dim()
    ));
    for i in 0..l.x_coeffs.rows() {
        out.push_str(&format!("B-row {}\n", join(l.x_coeffs.row(i))));
    }
    for i in 0..l.y_coeffs.rows() {
        out.push_str(&format!("C-row {}\n", join(l.y_coeffs.row(i))));
    }
    out.push_str(&format!("b {}\n", join(&l.rhs)));
    out.push_str("end\n");
    out
}
