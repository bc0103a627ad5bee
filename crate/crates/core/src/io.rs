//! Plain-text file formats for matrices, graphs and hypergraphs, plus JSON sidecars
//! for supplies and blocking sets.
//!
//! Matrix file:
//! ```text
//! field <p> <m> <c_0> ... <c_m>
//! dims <rows> <cols>
//! <row of space-separated scalars>
//! ...
//! ```
//! Graph file: `graph <n> <m>` followed by `m` lines `u v`.
//! Hypergraph file: `hypergraph <n> <m>` followed by `m` lines of vertex indices.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construct::{BlockingSet, Provenance};
use crate::error::{Error, Result};
use crate::expander::Graph;
use crate::gf::FieldSpec;
use crate::linalg::Matrix;
use crate::lincomb::Hypergraph;
use crate::supply::{GeneralPositionReport, PointSupply, SupplyProvenance};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    fn next_line(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i + 1, t.split_whitespace().collect()));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_line().ok_or_else(|| Error::Parse { line: 0, msg: format!("unexpected end of input, expected {what}") })
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_line() {
            None => Ok(()),
            Some((line, _)) => Err(Error::Parse { line, msg: "trailing content".into() }),
        }
    }
}

fn num<T: FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("expected a number, found {tok:?}") })
}

fn header<'a>(lines: &mut Lines<'a>, keyword: &str, arity: usize) -> Result<(usize, Vec<&'a str>)> {
    let (line, toks) = lines.expect(keyword)?;
    if toks[0] != keyword || (arity != usize::MAX && toks.len() != arity + 1) {
        return Err(Error::Parse { line, msg: format!("expected `{keyword}` header") });
    }
    Ok((line, toks))
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    writeln!(out, "{}", m.field().header()).unwrap();
    writeln!(out, "dims {} {}", m.rows(), m.cols()).unwrap();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = Lines::new(text);
    let (line, toks) = header(&mut lines, "field", usize::MAX)?;
    if toks.len() < 4 {
        return Err(Error::Parse { line, msg: "field line needs p, m and the modulus coefficients".into() });
    }
    let p: u32 = num(line, toks[1])?;
    let m: u32 = num(line, toks[2])?;
    let modulus: Vec<u32> = toks[3..].iter().map(|t| num(line, t)).collect::<Result<_>>()?;
    let field = FieldSpec::new(p, m, Some(&modulus))?;
    let (line, toks) = header(&mut lines, "dims", 2)?;
    let rows: usize = num(line, toks[1])?;
    let cols: usize = num(line, toks[2])?;
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line, toks) = lines.expect("a matrix row")?;
        if toks.len() != cols {
            return Err(Error::Parse { line, msg: format!("expected {cols} entries, found {}", toks.len()) });
        }
        for t in toks {
            let x: u32 = num(line, t)?;
            if !field.contains(x) {
                return Err(Error::Parse { line, msg: format!("{x} is not an element of GF({})", field.q()) });
            }
            data.push(x);
        }
    }
    lines.finish()?;
    Matrix::from_vec(&field, rows, cols, data)
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = Lines::new(text);
    let (line, toks) = header(&mut lines, "graph", 2)?;
    let n: usize = num(line, toks[1])?;
    let m: usize = num(line, toks[2])?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, toks) = lines.expect("an edge")?;
        if toks.len() != 2 {
            return Err(Error::Parse { line, msg: "an edge line holds two vertices".into() });
        }
        edges.push((num(line, toks[0])?, num(line, toks[1])?));
    }
    lines.finish()?;
    Graph::from_edges(n, &edges)
}

pub fn format_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("hypergraph {} {}\n", h.n(), h.edges().len());
    for e in h.edges() {
        let e: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", e.join(" ")).unwrap();
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = Lines::new(text);
    let (line, toks) = header(&mut lines, "hypergraph", 2)?;
    let n: usize = num(line, toks[1])?;
    let m: usize = num(line, toks[2])?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, toks) = lines.expect("a hyperedge")?;
        edges.push(toks.iter().map(|t| num(line, t)).collect::<Result<Vec<usize>>>()?);
    }
    lines.finish()?;
    let max = edges.iter().map(Vec::len).max().unwrap_or(1);
    Hypergraph::new(n, edges, max)
}

/// `<path>.json`
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupplySidecar {
    pub provenance: SupplyProvenance,
    pub report: Option<GeneralPositionReport>,
}

pub fn supply_sidecar(w: &PointSupply) -> SupplySidecar {
    SupplySidecar { provenance: w.provenance(), report: w.report().cloned() }
}

/// Builds a supply from matrix text and an optional sidecar.
pub fn supply_from_parts(matrix: &str, sidecar: Option<&str>) -> Result<PointSupply> {
    let m = parse_matrix(matrix)?;
    let side: Option<SupplySidecar> = sidecar.map(serde_json::from_str).transpose()?;
    let provenance = side.as_ref().map_or(SupplyProvenance::File, |s| s.provenance);
    let w = PointSupply::new(m, provenance)?;
    Ok(match side.and_then(|s| s.report) {
        Some(r) => w.with_report(r),
        None => w,
    })
}

pub fn write_supply(path: &Path, w: &PointSupply) -> Result<()> {
    std::fs::write(path, format_matrix(w.points()))?;
    std::fs::write(sidecar_path(path), to_json_pretty(&supply_sidecar(w))? + "\n")?;
    Ok(())
}

pub fn read_supply(path: &Path) -> Result<PointSupply> {
    let text = std::fs::read_to_string(path)?;
    let side = std::fs::read_to_string(sidecar_path(path)).ok();
    supply_from_parts(&text, side.as_deref())
}

/// Builds a blocking set from matrix text (one point per row) and an optional sidecar.
pub fn blocking_set_from_parts(matrix: &str, sidecar: Option<&str>) -> Result<BlockingSet> {
    let m = parse_matrix(matrix)?;
    let provenance = match sidecar {
        Some(s) => serde_json::from_str(s)?,
        None => Provenance::new("file", serde_json::Value::Null),
    };
    BlockingSet::from_matrix(&m, provenance)
}

pub fn write_blocking_set(path: &Path, b: &BlockingSet) -> Result<()> {
    std::fs::write(path, format_matrix(&b.to_matrix()))?;
    std::fs::write(sidecar_path(path), to_json_pretty(b.provenance())? + "\n")?;
    Ok(())
}

pub fn read_blocking_set(path: &Path) -> Result<BlockingSet> {
    let text = std::fs::read_to_string(path)?;
    let side = std::fs::read_to_string(sidecar_path(path)).ok();
    blocking_set_from_parts(&text, side.as_deref())
}

pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}
